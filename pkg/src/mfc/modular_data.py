"""Modular data on a fusion ring: quantum dimensions, twists, S and T.

Conformal dimensions are kept as exact ``Fraction`` values mod 1; phases
are only exponentiated after the rational combination is reduced.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .fusion_ring import TOL, FusionRing, automorphisms, fpdim, load_ring, ring_from_dict

__all__ = [
    "ModularData",
    "ModularVerdict",
    "CentralChargeClass",
    "NotACharacterError",
    "NumericalInconsistencyError",
    "quantum_dim_solutions",
    "build_modular",
    "is_modular",
    "central_charge",
    "enumerate_modular_data",
    "enumerate_labeled",
    "search_twists",
    "group_orbits",
    "canonical_key",
    "farey",
    "frobenius_schur_indicators",
    "modular_from_dict",
    "load_modular",
]

MAX_DEN = 48


class NotACharacterError(ValueError):
    """The proposed quantum dimensions violate ``d_i d_j = sum_k N_ij^k d_k``."""


class NumericalInconsistencyError(ArithmeticError):
    """No rational central charge matches the modular data."""


def frac_mod1(x) -> Fraction:
    f = Fraction(x)
    return f - math.floor(f)


def phase(h: Fraction) -> complex:
    return cmath.exp(2j * math.pi * float(frac_mod1(h)))


def _real_characters(ring: FusionRing, tol: float = 1e-7) -> list[np.ndarray]:
    # A generic combination of the commuting fusion matrices has simple spectrum,
    # so its eigenvectors are exactly the common eigenvectors.
    r = ring.rank
    weights = np.sqrt(np.array([2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37][:r], dtype=float)) + 1
    if r > len(weights):
        weights = np.sqrt(np.arange(2, r + 2, dtype=float)) + 1
    M = sum(w * ring.matrix(i).astype(float) for i, w in zip(range(r), weights))
    _, vecs = np.linalg.eig(M)
    out = []
    for v in vecs.T:
        if abs(v[0]) < 1e-12:
            continue
        chi = v / v[0]
        # refine against every fusion matrix: chi_i = (L_i chi)_0
        chi = np.array([(ring.matrix(i) @ chi)[0] for i in range(r)])
        if np.max(np.abs(chi.imag)) < tol:
            out.append(chi.real)
    return out


def is_character(ring: FusionRing, d: Sequence[float], tol: float = TOL) -> bool:
    d = np.asarray(d, dtype=float)
    if abs(d[0] - 1) > tol:
        return False
    lhs = np.outer(d, d)
    rhs = np.einsum("ijk,k->ij", ring.N, d)
    return bool(np.max(np.abs(lhs - rhs)) < tol * max(1.0, np.max(np.abs(lhs))))


def quantum_dim_solutions(ring: FusionRing, tol: float = TOL) -> list[tuple[float, ...]]:
    """All real, nowhere-zero characters of a commutative fusion ring, sorted (d_0 = 1)."""
    if not ring.is_commutative():
        raise NotImplementedError("quantum dimensions are only solved for commutative rings")
    sols: list[tuple[float, ...]] = []
    for chi in _real_characters(ring):
        if np.min(np.abs(chi)) < 1e-9:
            continue
        if not is_character(ring, chi, tol=1e-7):
            continue
        if any(np.max(np.abs(np.array(s) - chi)) < 1e-7 for s in sols):
            continue
        sols.append(tuple(float(x) for x in chi))
    return sorted(sols)


@dataclass(frozen=True)
class CentralChargeClass:
    c_mod_8: Fraction

    def __str__(self):
        return f"c ≡ {self.c_mod_8} (mod 8)"


@dataclass(frozen=True)
class ModularVerdict:
    status: str  # "modular" | "degenerate" | "inconsistent"
    diagnostics: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.status == "modular"


@dataclass(frozen=True, eq=False)
class ModularData:
    """Braided data on a ring: quantum dimensions ``d``, twists ``h`` (mod 1), sign of D."""

    ring: FusionRing
    d: tuple[float, ...]
    h: tuple[Fraction, ...]
    D_sign: int
    checks: Mapping[str, bool] = field(default_factory=dict)

    @cached_property
    def D_squared(self) -> float:
        return float(sum(x * x for x in self.d))

    @property
    def D(self) -> float:
        return self.D_sign * math.sqrt(self.D_squared)

    @cached_property
    def S_unnorm(self) -> np.ndarray:
        r = self.ring.rank
        N = self.ring.N
        S = np.zeros((r, r), dtype=complex)
        for i in range(r):
            for j in range(r):
                S[i, j] = sum(N[i, j, k] * self.d[k] * phase(self.h[k] - self.h[i] - self.h[j])
                              for k in range(r) if N[i, j, k])
        S.setflags(write=False)
        return S

    @property
    def S(self) -> np.ndarray:
        return self.S_unnorm / self.D

    @cached_property
    def T(self) -> np.ndarray:
        return np.diag([phase(x) for x in self.h])

    @cached_property
    def charge_conjugation(self) -> np.ndarray:
        r = self.ring.rank
        C = np.zeros((r, r))
        for i, j in enumerate(self.ring.dual):
            C[i, j] = 1
        return C

    @property
    def rank(self) -> int:
        return self.ring.rank

    def is_unitary(self, tol: float = 1e-6) -> bool:
        fp = fpdim(self.ring).fpdim_simple
        return all(abs(a - b) < tol for a, b in zip(self.d, fp))

    def is_pseudo_unitary(self, tol: float = 1e-6) -> bool:
        return abs(self.D_squared - fpdim(self.ring).fpdim_total) < tol

    def key(self, ndigits: int = 8) -> tuple:
        return (tuple(round(x, ndigits) + 0.0 for x in self.d), tuple(self.h), self.D_sign)

    def permuted(self, perm: Sequence[int]) -> "ModularData":
        """Relabel by a ring automorphism: object ``i`` becomes ``perm[i]``."""
        inv = np.argsort(perm)
        return build_modular(self.ring, [self.d[k] for k in inv], [self.h[k] for k in inv], self.D_sign)

    def to_dict(self, inline_ring: bool = True) -> dict:
        return {
            "ring": self.ring.to_dict() if inline_ring else self.ring.name,
            "d": list(self.d),
            "h": [[x.numerator, x.denominator] for x in self.h],
            "D_sign": self.D_sign,
        }

    def __repr__(self):
        hs = ", ".join(str(x) for x in self.h[1:])
        ds = ", ".join(f"{x:.4g}" for x in self.d[1:])
        return f"<ModularData {self.ring.name or 'ring'} d=({ds}) h=({hs}) D_sign={self.D_sign:+d}>"


def build_modular(ring: FusionRing, d: Sequence[float], h: Sequence, D_sign: int = 1,
                  tol: float = TOL) -> ModularData:
    """Assemble modular data and record every invariant check.

    Raises :class:`NotACharacterError` if ``d`` is not a real character.
    """
    d = tuple(float(x) for x in d)
    if len(d) != ring.rank or len(h) != ring.rank:
        raise ValueError(f"need {ring.rank} quantum and conformal dimensions")
    if not is_character(ring, d, tol=max(tol, 1e-9)):
        raise NotACharacterError(f"d={d} is not a character of the fusion ring")
    if any(abs(x) < tol for x in d):
        raise NotACharacterError("quantum dimensions must be nonzero")
    if D_sign not in (1, -1):
        raise ValueError("D_sign must be +1 or -1")
    hs = tuple(frac_mod1(x) for x in h)
    md = ModularData(ring, d, hs, int(D_sign))
    object.__setattr__(md, "checks", _run_checks(md, tol))
    return md


def _run_checks(md: ModularData, tol: float) -> dict[str, bool]:
    ring = md.ring
    S = md.S_unnorm
    dual = ring.dual
    r = ring.rank
    scale = max(1.0, md.D_squared)
    checks = {}
    checks["unit_twist"] = md.h[0] == 0
    checks["dual_twist"] = all(md.h[i] == md.h[dual[i]] for i in range(r))
    checks["symmetric"] = bool(np.allclose(S, S.T, atol=tol * scale, rtol=0))
    checks["dual_conjugate"] = all(
        abs(S[i, dual[j]] - np.conj(S[i, j])) < tol * scale for i in range(r) for j in range(r))
    checks["self_dual_real"] = all(
        abs(S[i, j].imag) < tol * scale for j in range(r) if dual[j] == j for i in range(r))
    Sn = S / md.D
    checks["nondegenerate"] = bool(abs(np.linalg.det(Sn)) > 1e-6)
    checks["S_squared"] = bool(np.allclose(S @ S, md.D_squared * md.charge_conjugation, atol=tol * scale ** 2, rtol=0))
    lam = _gauss_phase(md)
    checks["gauss"] = lam is not None
    nu = frobenius_schur_indicators(md)
    checks["fs_indicator"] = all(
        abs(nu[k] - round(nu[k].real)) < 1e-6 and round(nu[k].real) in ((-1, 1) if dual[k] == k else (0,))
        for k in range(r))
    return checks


def frobenius_schur_indicators(md: ModularData) -> np.ndarray:
    """Second indicators ``nu_k = D^-2 sum_ij N_ij^k d_i d_j (theta_i / theta_j)^2``.

    In a modular category ``nu_k`` is ``+-1`` for self-dual ``b_k`` and 0 otherwise.
    """
    d = np.asarray(md.d)
    theta2 = np.array([phase(2 * x) for x in md.h])
    weight = np.outer(d * theta2, d / theta2)
    return np.einsum("ijk,ij->k", md.ring.N, weight) / md.D_squared


def _gauss_phase(md: ModularData, tol: float = 1e-8) -> complex | None:
    """``lambda`` with ``(ST)^3 = lambda S^2`` and ``|lambda| = 1``, else None.

    ``S_unnorm`` pairs ``b_i`` with ``b_j`` (no dual), which is the usual
    S-matrix times charge conjugation; the relation is evaluated on ``S C``.
    """
    Sn = md.S @ md.charge_conjugation
    ST = Sn @ md.T
    lhs = ST @ ST @ ST
    rhs = Sn @ Sn
    k = np.unravel_index(np.argmax(np.abs(rhs)), rhs.shape)
    if abs(rhs[k]) < tol:
        return None
    lam = lhs[k] / rhs[k]
    if abs(abs(lam) - 1) > tol or not np.allclose(lhs, lam * rhs, atol=tol, rtol=0):
        return None
    return complex(lam)


_CONSISTENCY = ("unit_twist", "dual_twist", "symmetric", "dual_conjugate", "self_dual_real")
_DESCRIPTIONS = {
    "unit_twist": "h_0 must be 0",
    "dual_twist": "h_i != h_(i*) for some object",
    "symmetric": "S is not symmetric",
    "dual_conjugate": "S[i][j*] != conj(S[i][j])",
    "self_dual_real": "S has a non-real entry in a self-dual column",
    "nondegenerate": "S is singular",
    "S_squared": "S^2 != D^2 C",
    "gauss": "(ST)^3 is not a phase times S^2",
    "fs_indicator": "a Frobenius-Schur indicator is not +-1 (self-dual) or 0",
}


def is_modular(md: ModularData) -> ModularVerdict:
    """Classify the data as modular, degenerate (singular S), or inconsistent."""
    failed = [name for name, ok in md.checks.items() if not ok]
    diags = tuple(_DESCRIPTIONS[n] for n in failed)
    if any(n in _CONSISTENCY for n in failed):
        return ModularVerdict("inconsistent", diags)
    if "nondegenerate" in failed:
        return ModularVerdict("degenerate", diags)
    if failed:
        return ModularVerdict("inconsistent", diags)
    return ModularVerdict("modular")


def central_charge(md: ModularData, max_den: int = MAX_DEN, tol: float = 1e-8) -> CentralChargeClass:
    """Additive central charge mod 8 from ``(ST)^3 = exp(2 pi i c / 8) S^2``."""
    lam = _gauss_phase(md)
    if lam is None:
        raise NumericalInconsistencyError("(ST)^3 is not proportional to S^2")
    c = (cmath.phase(lam) / (2 * math.pi) * 8) % 8
    for q in range(1, max_den + 1):
        p = round(c * q)
        if abs(p / q - c) < tol:
            return CentralChargeClass(Fraction(p, q) % 8)
    raise NumericalInconsistencyError(f"central charge {c} has no rational match with denominator <= {max_den}")


# enumeration


def farey(max_den: int) -> list[Fraction]:
    """All rationals in [0, 1) with denominator at most ``max_den``."""
    return sorted({Fraction(p, q) for q in range(1, max_den + 1) for p in range(q)})


@dataclass
class _Constraint:
    kind: str  # "real" or "conj"
    i: int
    j: int
    objects: frozenset


def _constraints(ring: FusionRing) -> list[_Constraint]:
    r = ring.rank
    dual = ring.dual
    out = []
    for i in range(1, r):
        for j in range(i, r):
            supp = set(np.flatnonzero(ring.N[i, j]))
            if dual[j] == j or dual[i] == i:
                out.append(_Constraint("real", i, j, frozenset({i, j} | supp)))
            js = dual[j]
            supp2 = set(np.flatnonzero(ring.N[i, js]))
            out.append(_Constraint("conj", i, j, frozenset({i, j, js} | supp | supp2)))
    return out


def _eval_S(ring: FusionRing, d, H: np.ndarray, i: int, j: int) -> np.ndarray:
    acc = np.zeros(H.shape[0], dtype=complex)
    for k in np.flatnonzero(ring.N[i, j]):
        acc += ring.N[i, j, k] * d[k] * np.exp(2j * np.pi * (H[:, k] - H[:, i] - H[:, j]))
    return acc


def search_twists(ring: FusionRing, d: Sequence[float], max_den: int = MAX_DEN,
                  tol: float = TOL, chunk: int = 1_000_000) -> list[tuple[Fraction, ...]]:
    """All twist vectors (denominators <= ``max_den``) making ``(ring, d, h)`` modular.

    Twists are searched per dual pair (``h_i = h_i*``). Partial assignments are
    pruned with the reality and conjugation conditions on S as soon as every
    twist they involve is fixed; survivors get the full modularity battery.
    """
    r = ring.rank
    dual = ring.dual
    d = np.asarray(d, dtype=float)
    classes = sorted({tuple(sorted({i, dual[i]})) for i in range(1, r)})
    cls_of = {i: c for c in classes for i in c}
    cons = _constraints(ring)
    cons_classes = [frozenset(cls_of[o] for o in c.objects if o != 0) for c in cons]

    # greedy variable order: complete as many constraints as early as possible
    order: list[tuple[int, ...]] = []
    remaining = list(classes)
    while remaining:
        done = set(order)

        def gain(c):
            s = done | {c}
            return sum(1 for cc in cons_classes if cc <= s and not cc <= done)

        best = max(remaining, key=lambda c: (gain(c), -classes.index(c)))
        order.append(best)
        remaining.remove(best)

    fr = farey(max_den)
    vals = np.array([float(x) for x in fr])
    idx = np.zeros((1, 0), dtype=np.int32)  # rows: partial assignments as indices into fr
    scale = 1.0 + float(np.sum(np.abs(d))) ** 2
    for level, cls in enumerate(order):
        done = set(order[:level + 1])
        prev = set(order[:level])
        active = [c for c, cc in zip(cons, cons_classes) if cc <= done and not cc <= prev]
        survivors = []
        for start in range(0, idx.shape[0], max(1, chunk // len(fr))):
            block = idx[start:start + max(1, chunk // len(fr))]
            m = block.shape[0]
            new = np.concatenate([np.repeat(block, len(fr), axis=0),
                                  np.tile(np.arange(len(fr), dtype=np.int32), m)[:, None]], axis=1)
            H = np.zeros((new.shape[0], r))
            for pos, c in enumerate(order[:level + 1]):
                for o in c:
                    H[:, o] = vals[new[:, pos]]
            keep = np.ones(new.shape[0], dtype=bool)
            for c in active:
                if c.kind == "real":
                    keep &= np.abs(_eval_S(ring, d, H, c.i, c.j).imag) < 1e-7 * scale
                else:
                    a = _eval_S(ring, d, H, c.i, dual[c.j])
                    b = _eval_S(ring, d, H, c.i, c.j)
                    keep &= np.abs(a - np.conj(b)) < 1e-7 * scale
            survivors.append(new[keep])
        idx = np.concatenate(survivors, axis=0) if survivors else np.zeros((0, level + 1), dtype=np.int32)
        if idx.shape[0] == 0:
            return []

    out = []
    for row in idx:
        h = [Fraction(0)] * r
        for pos, c in enumerate(order):
            for o in c:
                h[o] = fr[row[pos]]
        md = build_modular(ring, d, h, 1, tol=tol)
        if is_modular(md).ok:
            out.append(tuple(h))
    return sorted(out)


def enumerate_labeled(ring: FusionRing, max_den: int = MAX_DEN, tol: float = TOL) -> list[ModularData]:
    """Every modular (d, h, D_sign) on the ring, without identifying relabelings."""
    out = []
    for d in quantum_dim_solutions(ring):
        for h in search_twists(ring, d, max_den=max_den, tol=tol):
            for sign in (1, -1):
                out.append(build_modular(ring, d, h, sign, tol=tol))
    return out


def canonical_key(md: ModularData, autos: Iterable[Sequence[int]]) -> tuple:
    """Smallest relabeled key over the given automorphisms."""
    best = None
    for perm in autos:
        inv = np.argsort(perm)
        k = (tuple(round(md.d[i], 8) + 0.0 for i in inv), tuple(md.h[i] for i in inv), md.D_sign)
        if best is None or k < best:
            best = k
    return best


def group_orbits(mds: Sequence[ModularData], autos: Sequence[Sequence[int]] | None = None
                 ) -> list[list[ModularData]]:
    """Group modular data into orbits of the ring automorphism group."""
    if not mds:
        return []
    if autos is None:
        autos = automorphisms(mds[0].ring)
    groups: dict[tuple, list[ModularData]] = {}
    for md in mds:
        groups.setdefault(canonical_key(md, autos), []).append(md)
    return [sorted(groups[k], key=lambda m: m.key()) for k in sorted(groups)]


def enumerate_modular_data(ring: FusionRing, max_den: int = MAX_DEN, tol: float = TOL) -> list[ModularData]:
    """One representative per automorphism orbit of modular data on ``ring``.

    The representative is the orbit member with the smallest ``(d, h, D_sign)`` key.
    """
    orbits = group_orbits(enumerate_labeled(ring, max_den=max_den, tol=tol))
    if not orbits:
        warnings.warn(f"no modular data found with denominators <= {max_den}", stacklevel=2)
    return [orb[0] for orb in orbits]


# json


def modular_from_dict(data: Mapping, base: Path | None = None, tol: float = TOL) -> ModularData:
    """Parse ``{"ring": <file or inline>, "d": [...], "h": [[num, den], ...], "D_sign": ±1}``."""
    ring_spec = data["ring"]
    if isinstance(ring_spec, Mapping):
        ring = ring_from_dict(ring_spec)
    else:
        path = Path(ring_spec)
        if base is not None and not path.is_absolute():
            path = base / path
        ring = load_ring(path)
    h = []
    for x in data["h"]:
        if isinstance(x, (list, tuple)):
            h.append(Fraction(int(x[0]), int(x[1])))
        else:
            h.append(Fraction(str(x)))
    return build_modular(ring, data["d"], h, int(data.get("D_sign", 1)), tol=tol)


def load_modular(path: str | Path, tol: float = TOL) -> ModularData:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        return modular_from_dict(json.load(fh), base=path.parent, tol=tol)
