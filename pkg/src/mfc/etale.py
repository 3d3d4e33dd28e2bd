"""Connected étale algebra candidates and the filter chain that classifies them.

A candidate is a multiplicity vector ``n`` for ``A = 1 + sum_j n_j b_j``. The
chain applies, in order: the FPdim bound, self-duality, the double-braiding
phase on pairing components, the boson criterion for invertible constituents,
feasibility of the quotient dimensions, NIM-rep identification of the module
category, and separability through module quantum dimensions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from .fusion_ring import FusionRing, fpdim
from .modular_data import ModularData
from .nimrep import (MAX_NIMREP_DIM, IdentificationError, ModuleIdentification, identify_modules, regular_nimrep,
                     search_nimreps)

__all__ = [
    "Verdict",
    "Reason",
    "BosonVerdict",
    "AlgebraCandidate",
    "QuotientData",
    "AlgebraRow",
    "ClassificationRecord",
    "FP_TOL",
    "enumerate_candidates",
    "filter_self_dual",
    "filter_pairing_phase",
    "filter_invertible_boson",
    "quotient_feasibility",
    "identify_quotient",
    "filter_separability",
    "name_module_category",
    "algebra_label",
    "classify",
]

FP_TOL = 1e-6


class Verdict(str, enum.Enum):
    TRIVIAL = "trivial"
    ETALE = "etale"
    RULED_OUT = "ruled_out"
    NEEDS_CONFIRMATION = "needs_confirmation"


class Reason(str, enum.Enum):
    NOT_SELF_DUAL = "not_self_dual"
    PAIRING_PHASE = "pairing_phase"
    BOSON_CRITERION = "boson_criterion"
    SEPARABILITY = "separability"
    QUOTIENT_INFEASIBLE = "quotient_infeasible"


class BosonVerdict(str, enum.Enum):
    COMMUTATIVE = "commutative"
    NOT_COMMUTATIVE = "not_commutative"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class QuotientData:
    """Dimensions of the module categories ``B_A`` and ``B_A^0``."""

    fpdim_BA: float
    fpdim_BA0: float
    lagrangian: bool
    rank_BA: int | None = None
    BA_name: str | None = None


@dataclass(frozen=True)
class AlgebraCandidate:
    n: tuple[int, ...]
    fpdim_A: float
    verdict: Verdict | None = None
    ruled_out_reason: Reason | None = None
    confirmation_source: str | None = None
    quotient: QuotientData | None = None
    modules: ModuleIdentification | None = None
    # reserved for non-commutative algebras; only commutative ones are classified
    noncommutative: bool = False

    @property
    def is_trivial(self) -> bool:
        return not any(self.n[1:])

    def support(self) -> tuple[int, ...]:
        return tuple(j for j in range(1, len(self.n)) if self.n[j])


def _ring(obj: ModularData | FusionRing) -> FusionRing:
    return obj.ring if isinstance(obj, ModularData) else obj


def algebra_label(ring: FusionRing, n: Sequence[int]) -> str:
    """Human-readable ``1⊕2X⊕Y`` form of a multiplicity vector."""
    parts = [ring.labels[0]]
    for j in range(1, ring.rank):
        if n[j] == 1:
            parts.append(ring.labels[j])
        elif n[j] > 1:
            parts.append(f"{n[j]}{ring.labels[j]}")
    return "⊕".join(parts)


def enumerate_candidates(md: ModularData | FusionRing, tol: float = FP_TOL) -> list[AlgebraCandidate]:
    """All ``n`` with ``n_0 = 1`` and ``FPdim(A)^2 <= FPdim(B)``, lexicographically sorted.

    The first entry is the trivial algebra, already marked ``trivial``.
    """
    ring = _ring(md)
    fp = fpdim(ring)
    bound = math.sqrt(fp.fpdim_total) + tol
    out: list[AlgebraCandidate] = []

    def rec(j: int, prefix: list[int], total: float):
        if j == ring.rank:
            n = tuple(prefix)
            verdict = Verdict.TRIVIAL if not any(n[1:]) else None
            out.append(AlgebraCandidate(n, total, verdict))
            return
        k = 0
        while total + k * fp.fpdim_simple[j] <= bound:
            rec(j + 1, prefix + [k], total + k * fp.fpdim_simple[j])
            k += 1

    rec(1, [1], 1.0)
    return out


def filter_self_dual(md: ModularData | FusionRing, cand: AlgebraCandidate) -> bool:
    """``A`` must be isomorphic to its dual: ``n_j = n_(j*)``."""
    dual = _ring(md).dual
    return all(cand.n[j] == cand.n[dual[j]] for j in range(len(cand.n)))


def filter_pairing_phase(md: ModularData, cand: AlgebraCandidate) -> bool:
    """Trivial double braiding on every pairing component ``b_j ⊗ b_(j*) -> 1``.

    That component of the multiplication is nonzero for every constituent,
    and its double-braiding phase is ``exp(-2 pi i (h_j + h_(j*)))``.
    """
    dual = md.ring.dual
    return all((md.h[j] + md.h[dual[j]]) % 1 == 0 for j in cand.support())


def filter_invertible_boson(md: ModularData, cand: AlgebraCandidate, tol: float = FP_TOL) -> BosonVerdict:
    """Decide commutativity when every constituent is an invertible object with multiplicity one.

    Such an algebra is a group algebra of a subgroup of invertibles, and it is
    commutative iff every element has ``(d, h) = (1, 0)`` or ``(-1, 1/2)``.
    """
    ring = md.ring
    fp = fpdim(ring).fpdim_simple
    supp = cand.support()
    if not supp or any(abs(fp[j] - 1) > tol or cand.n[j] != 1 for j in supp):
        return BosonVerdict.NOT_APPLICABLE
    members = {0, *supp}
    for a in members:
        for b in members:
            if not set(ring.product(a, b)) <= members:
                return BosonVerdict.NOT_COMMUTATIVE
    for j in supp:
        d, h = md.d[j], md.h[j]
        if not ((abs(d - 1) < tol and h == 0) or (abs(d + 1) < tol and h == Fraction(1, 2))):
            return BosonVerdict.NOT_COMMUTATIVE
    return BosonVerdict.COMMUTATIVE


def quotient_feasibility(md: ModularData | FusionRing, cand: AlgebraCandidate,
                         tol: float = FP_TOL) -> QuotientData | None:
    """Quotient dimensions, or None if no fusion category could have them.

    ``FPdim(B_A^0) = FPdim(B) / FPdim(A)^2`` must be 1 or at least 2, since
    every fusion category of rank two or more has total dimension >= 2.
    """
    total = fpdim(_ring(md)).fpdim_total
    ba = total / cand.fpdim_A
    ba0 = ba / cand.fpdim_A
    if ba0 < 1 - tol or (1 + tol < ba0 < 2 - tol):
        return None
    return QuotientData(ba, ba0, abs(ba0 - 1) < tol)


_PHI = (1 + math.sqrt(5)) / 2
_NAMED = (
    ((1.0, 1.0), "Vec_{Z/2Z}^alpha"),
    ((1.0, _PHI), "Fib"),
    ((1.0, 1.0, 1.0), "Vec_{Z/3Z}^alpha"),
    ((1.0, 1.0, 1.0, math.sqrt(3)), "TY(Z/3Z)"),
)


def name_module_category(fpdims: Sequence[float], tol: float = FP_TOL) -> str | None:
    """Name a module category by its sorted simple FPdims, when it is one we recognize."""
    key = sorted(fpdims)
    for dims, name in _NAMED:
        if len(dims) == len(key) and all(abs(a - b) < tol for a, b in zip(dims, key)):
            return name
    return None


@lru_cache(maxsize=None)
def _indecomposable_nimreps(ring: FusionRing, r: int, max_dim: int):
    return tuple(search_nimreps(ring, r, max_dim=max_dim, indecomposable=True))


def identify_quotient(md: ModularData, cand: AlgebraCandidate, quotient: QuotientData,
                      max_dim: int = MAX_NIMREP_DIM, tol: float = FP_TOL
                      ) -> tuple[QuotientData, ModuleIdentification | None]:
    """Find ``rank(B_A)`` from indecomposable NIM-reps containing ``A`` as an internal End.

    A NIM-rep qualifies when some basis element ``m`` has ``(n_i)[m, m] = n_i(A)``,
    every ``F(m_a)`` is at least as large as ``A``, and the resulting module
    FPdims square-sum to ``FPdim(B_A)``. The rank is reported only when all
    qualifying NIM-reps agree on it.
    """
    ring = md.ring
    if cand.is_trivial:
        ident = identify_modules(ring, md.d, cand.n, regular_nimrep(ring))
        return replace(quotient, rank_BA=ring.rank, BA_name="B"), ident
    r_max = min(int(math.floor(quotient.fpdim_BA + tol)), max_dim)
    matches: list[tuple[int, ModuleIdentification]] = []
    for r in range(1, r_max + 1):
        for rep in _indecomposable_nimreps(ring, r, max_dim):
            try:
                ident = identify_modules(ring, md.d, cand.n, rep)
            except IdentificationError:
                continue
            if abs(sum(x * x for x in ident.module_fpdims) - quotient.fpdim_BA) < tol * max(1.0, quotient.fpdim_BA):
                matches.append((r, ident))
    ranks = {r for r, _ in matches}
    if len(ranks) != 1:
        return quotient, None
    r, ident = matches[0]
    return replace(quotient, rank_BA=r, BA_name=name_module_category(ident.module_fpdims, tol)), ident


def filter_separability(md: ModularData, cand: AlgebraCandidate, ident: ModuleIdentification | None,
                        tol: float = FP_TOL) -> bool | None:
    """Separability through module quantum dimensions ``d(F(m)) / d(A)``.

    Fails when ``d(A) = 0``; with an identification, every module quantum
    dimension must be nonzero and modules of FPdim one must have quantum
    dimension ``+-1``. Returns None (deferred) when no identification is known.
    """
    d_A = sum(c * x for c, x in zip(cand.n, md.d))
    if abs(d_A) < tol:
        return False
    if ident is None:
        return None
    assert ident.module_qdims is not None
    for q, f in zip(ident.module_qdims, ident.module_fpdims):
        if abs(q) < tol:
            return False
        if abs(f - 1) < tol and abs(abs(q) - 1) > tol:
            return False
    return True


@dataclass(frozen=True)
class AlgebraRow:
    """One surviving algebra as it appears in a classification table."""

    n: tuple[int, ...]
    label: str
    fpdim_A: float
    BA_name: str | None
    rank_BA: int | None
    lagrangian: bool
    verdict: str
    confirmation_source: str | None = None
    module_images: tuple[tuple[int, ...], ...] | None = None
    module_qdims: tuple[float, ...] | None = None

    @property
    def confirmed(self) -> bool:
        return self.verdict in (Verdict.TRIVIAL.value, Verdict.ETALE.value) or self.confirmation_source is not None

    def to_dict(self) -> dict:
        return {
            "n": list(self.n),
            "label": self.label,
            "fpdim_A": self.fpdim_A,
            "BA_name": self.BA_name,
            "rank_BA": self.rank_BA,
            "lagrangian": self.lagrangian,
            "verdict": self.verdict,
            "confirmation_source": self.confirmation_source,
            "module_images": None if self.module_images is None else [list(x) for x in self.module_images],
            "module_qdims": None if self.module_qdims is None else list(self.module_qdims),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AlgebraRow":
        images = data.get("module_images")
        qdims = data.get("module_qdims")
        return cls(
            tuple(data["n"]), data["label"], float(data["fpdim_A"]), data.get("BA_name"), data.get("rank_BA"),
            bool(data["lagrangian"]), data["verdict"], data.get("confirmation_source"),
            None if images is None else tuple(tuple(x) for x in images),
            None if qdims is None else tuple(float(x) for x in qdims),
        )


@dataclass(frozen=True)
class ClassificationRecord:
    """Classification outcome for one modular category.

    ``gsd_set`` collects ``rank(B_A)`` over confirmed algebras; ``gsd_partial``
    flags algebras whose rank or étaleness could not be settled.
    """

    mfc_id: str
    labels: tuple[str, ...]
    d: tuple[float, ...]
    h: tuple[str, ...]
    D_sign: int
    algebras: tuple[AlgebraRow, ...]
    rejected: tuple[tuple[tuple[int, ...], str], ...]
    anisotropic: bool
    gsd_set: tuple[int, ...]
    gsd_partial: bool
    ssb: bool
    error: str | None = None

    def to_dict(self) -> dict:
        return {
            "mfc_id": self.mfc_id,
            "labels": list(self.labels),
            "d": list(self.d),
            "h": list(self.h),
            "D_sign": self.D_sign,
            "algebras": [a.to_dict() for a in self.algebras],
            "rejected": [{"n": list(n), "reason": reason} for n, reason in self.rejected],
            "anisotropic": self.anisotropic,
            "gsd_set": list(self.gsd_set),
            "gsd_partial": self.gsd_partial,
            "ssb": self.ssb,
            "error": self.error,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ClassificationRecord":
        return cls(
            data["mfc_id"], tuple(data["labels"]), tuple(float(x) for x in data["d"]), tuple(data["h"]),
            int(data["D_sign"]), tuple(AlgebraRow.from_dict(a) for a in data["algebras"]),
            tuple((tuple(x["n"]), x["reason"]) for x in data["rejected"]),
            bool(data["anisotropic"]), tuple(data["gsd_set"]), bool(data["gsd_partial"]), bool(data["ssb"]),
            data.get("error"),
        )


Confirmer = Callable[[ModularData, Sequence[int]], "str | None"]


def _default_confirmer(md: ModularData, n: Sequence[int]) -> str | None:
    from .catalog import literature_confirmation

    return literature_confirmation(md, n)


def _run_chain(md: ModularData, cand: AlgebraCandidate, confirm: Confirmer, max_dim: int) -> AlgebraCandidate:
    if cand.is_trivial:
        q = quotient_feasibility(md, cand)
        q, ident = identify_quotient(md, cand, q, max_dim=max_dim)
        return replace(cand, verdict=Verdict.TRIVIAL, quotient=q, modules=ident)

    def out(reason: Reason, **kw) -> AlgebraCandidate:
        return replace(cand, verdict=Verdict.RULED_OUT, ruled_out_reason=reason, **kw)

    if not filter_self_dual(md, cand):
        return out(Reason.NOT_SELF_DUAL)
    if not filter_pairing_phase(md, cand):
        return out(Reason.PAIRING_PHASE)
    boson = filter_invertible_boson(md, cand)
    if boson is BosonVerdict.NOT_COMMUTATIVE:
        return out(Reason.BOSON_CRITERION)
    q = quotient_feasibility(md, cand)
    if q is None:
        return out(Reason.QUOTIENT_INFEASIBLE)
    q, ident = identify_quotient(md, cand, q, max_dim=max_dim)
    sep = filter_separability(md, cand, ident)
    if sep is False:
        return out(Reason.SEPARABILITY, quotient=q, modules=ident)
    if boson is BosonVerdict.COMMUTATIVE and sep:
        return replace(cand, verdict=Verdict.ETALE, quotient=q, modules=ident)
    return replace(cand, verdict=Verdict.NEEDS_CONFIRMATION, quotient=q, modules=ident,
                   confirmation_source=confirm(md, cand.n))


def classify(md: ModularData, mfc_id: str = "", confirm: Confirmer | None = None,
             max_dim: int = MAX_NIMREP_DIM) -> ClassificationRecord:
    """Run the full filter chain and summarize the surviving algebras."""
    confirm = confirm or _default_confirmer
    ring = md.ring
    results = [_run_chain(md, c, confirm, max_dim) for c in enumerate_candidates(md)]
    rows = []
    rejected = []
    for c in results:
        if c.verdict is Verdict.RULED_OUT:
            rejected.append((c.n, c.ruled_out_reason.value))
            continue
        q = c.quotient
        rows.append(AlgebraRow(
            n=c.n, label=algebra_label(ring, c.n), fpdim_A=c.fpdim_A, BA_name=q.BA_name, rank_BA=q.rank_BA,
            lagrangian=q.lagrangian, verdict=c.verdict.value, confirmation_source=c.confirmation_source,
            module_images=None if c.modules is None else c.modules.images,
            module_qdims=None if c.modules is None else c.modules.module_qdims,
        ))
    confirmed = [r for r in rows if r.confirmed]
    gsd = tuple(sorted({r.rank_BA for r in confirmed if r.rank_BA is not None}))
    partial = any(not r.confirmed or r.rank_BA is None for r in rows)
    return ClassificationRecord(
        mfc_id=mfc_id, labels=ring.labels, d=md.d, h=tuple(str(x) for x in md.h), D_sign=md.D_sign,
        algebras=tuple(rows), rejected=tuple(rejected),
        anisotropic=not any(not _is_trivial(r.n) for r in confirmed),
        gsd_set=gsd, gsd_partial=partial, ssb=bool(gsd) and all(g > 1 for g in gsd),
    )


def _is_trivial(n: Sequence[int]) -> bool:
    return not any(n[1:])
