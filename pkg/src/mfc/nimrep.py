"""NIM-rep search and identification of right A-modules.

A NIM-rep of dimension r assigns to every simple ``b_i`` a non-negative
integer r x r matrix ``n_i`` with ``n_0 = 1``, ``n_i n_j = sum_k N_ij^k n_k``
and ``n_(i*) = n_i^T``.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .fusion_ring import FusionRing, fpdim

__all__ = [
    "NimRep",
    "ModuleIdentification",
    "SearchSpaceError",
    "IdentificationError",
    "MAX_NIMREP_DIM",
    "search_nimreps",
    "regular_nimrep",
    "check_nimrep",
    "canonical_form",
    "identify_modules",
    "perron_vector",
]

MAX_NIMREP_DIM = 8


class SearchSpaceError(ValueError):
    """Requested NIM-rep dimension exceeds the configured cap."""


class IdentificationError(ValueError):
    """A NIM-rep does not contain the algebra as the internal End of a basis module."""


@dataclass(frozen=True, eq=False)
class NimRep:
    dim: int
    matrices: tuple[np.ndarray, ...]

    def __post_init__(self):
        mats = []
        for m in self.matrices:
            m = np.array(m, dtype=np.int64)
            m.setflags(write=False)
            mats.append(m)
        object.__setattr__(self, "matrices", tuple(mats))

    def __getitem__(self, i: int) -> np.ndarray:
        return self.matrices[i]

    def __eq__(self, other):
        if not isinstance(other, NimRep):
            return NotImplemented
        return self.dim == other.dim and all(np.array_equal(a, b) for a, b in zip(self.matrices, other.matrices))

    def __hash__(self):
        return hash(tuple(m.tobytes() for m in self.matrices))

    def is_indecomposable(self) -> bool:
        adj = sum(self.matrices) + sum(m.T for m in self.matrices)
        seen = {0}
        stack = [0]
        while stack:
            a = stack.pop()
            for b in np.flatnonzero(adj[a]):
                if b not in seen:
                    seen.add(int(b))
                    stack.append(int(b))
        return len(seen) == self.dim

    def permuted(self, perm: Sequence[int]) -> "NimRep":
        """Relabel basis element ``a`` as ``perm[a]``."""
        inv = np.argsort(perm)
        return NimRep(self.dim, tuple(m[np.ix_(inv, inv)] for m in self.matrices))

    def to_dict(self) -> dict:
        return {"dim": self.dim, "matrices": [m.tolist() for m in self.matrices]}


def check_nimrep(ring: FusionRing, rep: NimRep) -> list[str]:
    """Violated NIM-rep identities (exact integer arithmetic)."""
    problems = []
    mats = rep.matrices
    if len(mats) != ring.rank:
        return [f"expected {ring.rank} matrices, got {len(mats)}"]
    if any(np.any(m < 0) for m in mats):
        problems.append("negative entry")
    if not np.array_equal(mats[0], np.eye(rep.dim, dtype=np.int64)):
        problems.append("n_0 is not the identity")
    for i, j in enumerate(ring.dual):
        if not np.array_equal(mats[j], mats[i].T):
            problems.append(f"n_{ring.labels[j]} != transpose of n_{ring.labels[i]}")
    for i in range(ring.rank):
        for j in range(ring.rank):
            rhs = sum(int(ring.N[i, j, k]) * mats[k] for k in range(ring.rank))
            if not np.array_equal(mats[i] @ mats[j], rhs):
                problems.append(f"n_{ring.labels[i]} n_{ring.labels[j]} != sum_k N n_k")
    return problems


def regular_nimrep(ring: FusionRing) -> NimRep:
    """The ring acting on itself: ``(n_i)[a, b] = N_{i,a}^b``."""
    return NimRep(ring.rank, tuple(ring.N[i] for i in range(ring.rank)))


def canonical_form(rep: NimRep) -> NimRep:
    """Lexicographically smallest relabeling over all basis permutations."""
    best = None
    best_key = None
    for perm in itertools.permutations(range(rep.dim)):
        cand = rep.permuted(perm)
        key = tuple(np.concatenate([m.ravel() for m in cand.matrices[1:]]).tolist()) if len(cand.matrices) > 1 else ()
        if best_key is None or key < best_key:
            best, best_key = cand, key
    return best


def perron_vector(rep: NimRep) -> np.ndarray:
    """Positive common eigenvector of an indecomposable NIM-rep, normalized to max 1."""
    total = sum(m.astype(float) for m in rep.matrices)
    vals, vecs = np.linalg.eig(total + total.T)
    v = np.abs(vecs[:, np.argmax(vals.real)].real)
    return v / v.max()


@lru_cache(maxsize=None)
def _row_choices(length: int, hi: int, budget: int) -> tuple[tuple[int, ...], ...]:
    """Non-negative integer vectors with entries <= hi and squared norm <= budget."""
    if budget < 0:
        return ()
    if length == 0:
        return ((),)
    out = []
    for x in range(min(hi, math.isqrt(budget)) + 1):
        out.extend((x,) + rest for rest in _row_choices(length - 1, hi, budget - x * x))
    return tuple(out)


@njit(cache=True)
def _propagate(n, known, N, dual, his):
    """Fix entries forced by ``n_i n_j = sum_k N_ij^k n_k``; False on contradiction.

    Entry ``[p, q]`` of a relation is usable once row ``p`` of ``n_i`` and
    column ``q`` of ``n_j`` are known. With every target entry known it is
    checked; with exactly one unknown target matrix it is solved for.
    """
    rank = n.shape[0]
    r = n.shape[1]
    changed = True
    while changed:
        changed = False
        for i in range(1, rank):
            for p in range(r):
                row_ok = True
                for b in range(r):
                    if not known[i, p, b]:
                        row_ok = False
                        break
                if not row_ok:
                    continue
                for j in range(1, rank):
                    for q in range(r):
                        col_ok = True
                        for b in range(r):
                            if not known[j, b, q]:
                                col_ok = False
                                break
                        if not col_ok:
                            continue
                        lhs = 0
                        for b in range(r):
                            lhs += n[i, p, b] * n[j, b, q]
                        rhs = 0
                        missing = -1
                        count = 0
                        for k in range(rank):
                            c = N[i, j, k]
                            if c == 0:
                                continue
                            if known[k, p, q]:
                                rhs += c * n[k, p, q]
                            else:
                                count += 1
                                missing = k
                        if count == 0:
                            if lhs != rhs:
                                return False
                        elif count == 1:
                            diff = lhs - rhs
                            c = N[i, j, missing]
                            if diff < 0 or diff % c != 0:
                                return False
                            v = diff // c
                            if v > his[missing]:
                                return False
                            kd = dual[missing]
                            if known[kd, q, p] and n[kd, q, p] != v:
                                return False
                            n[missing, p, q] = v
                            n[kd, q, p] = v
                            known[missing, p, q] = True
                            known[kd, q, p] = True
                            changed = True
    return True


def search_nimreps(ring: FusionRing, r: int, max_dim: int = MAX_NIMREP_DIM,
                   indecomposable: bool = False) -> list[NimRep]:
    """All r-dimensional NIM-reps of ``ring`` up to simultaneous basis permutation.

    Branching happens row by row on the unfixed object of smallest FPdim,
    with ``n_(i*) = n_i^T`` fixing transposed entries. Each row of ``n_i``
    obeys ``sum_b n_i[a, b]^2 <= FPdim(b_i)^2`` (the diagonal of
    ``n_i n_i^T = sum_k N_(i,i*)^k n_k``). Whenever a product ``n_i n_j`` has a
    single unknown matrix in its decomposition, that matrix is solved for;
    every relation entry is checked as soon as its inputs are fixed.
    """
    if r < 1:
        raise ValueError("dimension must be positive")
    if r > max_dim:
        raise SearchSpaceError(f"NIM-rep dimension {r} exceeds the cap of {max_dim}")
    rank = ring.rank
    dual = ring.dual
    fp = fpdim(ring).fpdim_simple
    budgets = [x * x + 1e-9 for x in fp]
    his = [int(math.floor(x + 1e-9)) for x in fp]
    N = ring.N
    supp = (N > 0).astype(np.int64)

    dual_arr = np.asarray(dual, dtype=np.int64)
    his_arr = np.asarray(his, dtype=np.int64)

    def propagate(n: np.ndarray, known: np.ndarray) -> bool:
        return _propagate(n, known, N, dual_arr, his_arr)

    results: set[NimRep] = set()

    def row_options(n: np.ndarray, known: np.ndarray, i: int, a: int):
        free = tuple(b for b in range(r) if not known[i, a, b])
        budget = int(math.floor(budgets[i] - int(np.sum(n[i, a][known[i, a]] ** 2)) + 1e-9))
        return free, _row_choices(len(free), his[i], budget)

    def dfs(n: np.ndarray, known: np.ndarray):
        # branch on the incomplete row with the fewest completions
        best = None
        for i in range(1, rank):
            for a in np.flatnonzero(~known[i].all(axis=1)):
                free, opts = row_options(n, known, i, int(a))
                if best is None or len(opts) < len(best[3]):
                    best = (i, int(a), free, opts)
        if best is None:
            rep = canonical_form(NimRep(r, tuple(n)))
            if not indecomposable or rep.is_indecomposable():
                results.add(rep)
            return
        i, a, free, opts = best
        j = dual[i]
        for vals in opts:
            n2, k2 = n.copy(), known.copy()
            for b, v in zip(free, vals):
                n2[i, a, b] = n2[j, b, a] = v
                k2[i, a, b] = k2[j, b, a] = True
            if not n2[i, a].any():
                continue  # row of n_i n_i* on the diagonal contains the unit
            if propagate(n2, k2):
                dfs(n2, k2)

    n0 = np.zeros((rank, r, r), dtype=np.int64)
    known0 = np.zeros((rank, r, r), dtype=bool)
    n0[0] = np.eye(r, dtype=np.int64)
    known0[0] = True
    dfs(n0, known0)
    return sorted(results, key=lambda rep: tuple(np.concatenate([m.ravel() for m in rep.matrices]).tolist()))


@dataclass(frozen=True)
class ModuleIdentification:
    """Underlying objects ``F(m_a)`` of the simple right A-modules.

    ``images[a][i]`` is the multiplicity of ``b_i`` in ``F(m_a)``; ``module_qdims``
    is ``None`` when the algebra has vanishing quantum dimension.
    """

    images: tuple[tuple[int, ...], ...]
    module_qdims: tuple[float, ...] | None
    module_fpdims: tuple[float, ...]
    base_index: int
    nimrep: NimRep

    @property
    def rank(self) -> int:
        return len(self.images)


def identify_modules(ring: FusionRing, d: Sequence[float], algebra: Sequence[int], rep: NimRep,
                     tol: float = 1e-9) -> ModuleIdentification:
    """Match a NIM-rep to the module category of right modules over ``algebra``.

    A basis element ``m`` is the algebra itself iff ``(n_i)[m, m]`` equals the
    multiplicity of ``b_i`` in the algebra; then ``F(m_a)`` has ``b_i``
    multiplicity ``(n_i)[m, a]``.
    """
    algebra = tuple(int(x) for x in algebra)
    fp = fpdim(ring).fpdim_simple
    fp_A = sum(c * x for c, x in zip(algebra, fp))
    for m in range(rep.dim):
        if tuple(int(rep[i][m, m]) for i in range(ring.rank)) != algebra:
            continue
        images = tuple(tuple(int(rep[i][m, a]) for i in range(ring.rank)) for a in range(rep.dim))
        fpdims = tuple(sum(c * x for c, x in zip(img, fp)) / fp_A for img in images)
        if min(fpdims) < 1 - 1e-6:
            continue
        d_A = sum(c * x for c, x in zip(algebra, d))
        qdims = None
        if abs(d_A) > tol:
            qdims = tuple(sum(c * x for c, x in zip(img, d)) / d_A for img in images)
        return ModuleIdentification(images, qdims, fpdims, m, rep)
    raise IdentificationError("no basis module has the algebra as its internal End")
