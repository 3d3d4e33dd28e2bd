"""Fusion rings: integer fusion tensors, Frobenius-Perron data, automorphisms."""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

TOL = 1e-9

__all__ = [
    "FusionRing",
    "FPData",
    "RingStructureError",
    "validate_ring",
    "fpdim",
    "perron_eigenvalue",
    "automorphisms",
    "tensor_product",
    "find_isomorphism",
    "load_ring",
    "ring_from_dict",
]


class RingStructureError(ValueError):
    """Malformed ring data (shape mismatch, negative entries, bad labels)."""


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Based ring with simple objects ``0..rank-1``; index 0 is the unit.

    ``N[i, j, k]`` is the multiplicity of ``b_k`` in ``b_i ⊗ b_j``.
    """

    labels: tuple[str, ...]
    N: np.ndarray
    name: str = ""

    def __post_init__(self):
        N = np.asarray(self.N)
        if N.ndim != 3 or len(set(N.shape)) != 1:
            raise RingStructureError(f"fusion tensor must be rank x rank x rank, got shape {N.shape}")
        if N.shape[0] != len(self.labels):
            raise RingStructureError(
                f"{len(self.labels)} labels for a rank-{N.shape[0]} tensor")
        if not np.all(np.equal(np.mod(N, 1), 0)):
            raise RingStructureError("fusion coefficients must be integers")
        if np.any(N < 0):
            raise RingStructureError("fusion coefficients must be non-negative")
        N = N.astype(np.int64)
        N.setflags(write=False)
        object.__setattr__(self, "N", N)
        object.__setattr__(self, "labels", tuple(str(x) for x in self.labels))

    @property
    def rank(self) -> int:
        return self.N.shape[0]

    @property
    def unit_index(self) -> int:
        return 0

    @cached_property
    def dual(self) -> tuple[int, ...]:
        """``dual[i]`` is the index of ``b_i*``; raises if some object has no unique dual."""
        out = []
        for i in range(self.rank):
            js = [j for j in range(self.rank) if self.N[i, j, 0] > 0]
            if len(js) != 1 or self.N[i, js[0], 0] != 1:
                raise RingStructureError(f"object {self.labels[i]!r} has no unique dual")
            out.append(js[0])
        return tuple(out)

    def matrix(self, i: int) -> np.ndarray:
        """Left multiplication matrix ``L_i[j, k] = N[i, j, k]``."""
        return self.N[i]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.N, self.N.transpose(1, 0, 2)))

    def is_self_dual(self, i: int) -> bool:
        return self.dual[i] == i

    def product(self, i: int, j: int) -> dict[int, int]:
        """Decomposition of ``b_i ⊗ b_j`` as ``{k: N_ij^k}`` (nonzero entries only)."""
        return {int(k): int(self.N[i, j, k]) for k in np.flatnonzero(self.N[i, j])}

    def format_product(self, i: int, j: int) -> str:
        return " ⊕ ".join(
            (f"{m}{self.labels[k]}" if m > 1 else self.labels[k]) for k, m in self.product(i, j).items())

    def __eq__(self, other):
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.N, other.N)

    def __hash__(self):
        return hash((self.labels, self.N.tobytes()))

    def __repr__(self):
        name = f" {self.name!r}" if self.name else ""
        return f"<FusionRing{name} rank={self.rank} labels={list(self.labels)}>"

    # construction helpers

    @classmethod
    def from_products(cls, labels: Sequence[str], products: Mapping[tuple[str, str], str],
                      name: str = "", symmetric: bool = True) -> "FusionRing":
        """Build from a multiplication table like ``{("X", "X"): "1+X"}``.

        Products with the unit are filled in automatically. With ``symmetric``
        each entry also defines the transposed product.
        """
        labels = list(labels)
        r = len(labels)
        N = np.zeros((r, r, r), dtype=np.int64)
        for j in range(r):
            N[0, j, j] = N[j, 0, j] = 1
        for (a, b), rhs in products.items():
            i, j = labels.index(a), labels.index(b)
            vec = np.zeros(r, dtype=np.int64)
            for mult, lab in _parse_sum(rhs):
                vec[labels.index(lab)] += mult
            N[i, j] = vec
            if symmetric:
                N[j, i] = vec
        return cls(tuple(labels), N, name)

    def to_dict(self) -> dict:
        return {"rank": self.rank, "labels": list(self.labels), "N": self.N.tolist()}


_TERM = re.compile(r"^\s*(\d*)\s*(\S+)\s*$")


def _parse_sum(expr: str) -> list[tuple[int, str]]:
    out = []
    for term in re.split(r"\+|⊕", expr):
        m = _TERM.match(term)
        if not m:
            raise RingStructureError(f"cannot parse fusion term {term!r}")
        out.append((int(m.group(1) or 1), m.group(2)))
    return out


def ring_from_dict(data: Mapping) -> FusionRing:
    """Parse the fusion-ring JSON schema ``{"rank", "labels", "N"}``."""
    try:
        rank = int(data["rank"])
        N = np.asarray(data["N"])
    except (KeyError, TypeError, ValueError) as exc:
        raise RingStructureError(f"malformed ring data: {exc}") from exc
    labels = data.get("labels") or [str(i) for i in range(rank)]
    if N.shape != (rank, rank, rank):
        raise RingStructureError(f"declared rank {rank} but N has shape {N.shape}")
    return FusionRing(tuple(labels), N, str(data.get("name", "")))


def load_ring(path: str | Path) -> FusionRing:
    with open(path, encoding="utf-8") as fh:
        return ring_from_dict(json.load(fh))


def validate_ring(ring: FusionRing) -> list[str]:
    """Return the violated fusion-ring axioms; an empty list means the ring is valid."""
    N = ring.N
    r = ring.rank
    problems = []
    eye = np.eye(r, dtype=np.int64)
    if not np.array_equal(N[0], eye):
        problems.append("unit: N[0][j][k] != delta_jk")
    if not np.array_equal(N[:, 0, :], eye):
        problems.append("unit: N[i][0][k] != delta_ik")
    # (b_i b_j) b_k = b_i (b_j b_k)
    lhs = np.einsum("ijm,mkl->ijkl", N, N)
    rhs = np.einsum("jkm,iml->ijkl", N, N)
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        i, j, k, l = bad[0]
        problems.append(f"associativity fails at (i,j,k,l)=({i},{j},{k},{l}) "
                        f"and {len(bad) - 1} other places")
    duals = []
    for i in range(r):
        col = N[i, :, 0]
        js = np.flatnonzero(col)
        if len(js) != 1 or col[js[0]] != 1:
            problems.append(f"duality: {ring.labels[i]} has {len(js)} partners with unit in the product")
            duals.append(None)
        else:
            duals.append(int(js[0]))
    if None not in duals:
        for i, j in enumerate(duals):
            if duals[j] != i:
                problems.append(f"duality: dual map is not an involution at {ring.labels[i]}")
            if N[j, i, 0] != 1:
                problems.append(f"duality: {ring.labels[j]} x {ring.labels[i]} lacks the unit")
    return problems


@dataclass(frozen=True)
class FPData:
    fpdim_simple: tuple[float, ...]
    fpdim_total: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "fpdim_total", float(sum(x * x for x in self.fpdim_simple)))


def perron_eigenvalue(M: np.ndarray, tol: float = 1e-12, max_iter: int = 200_000) -> float:
    """Largest real eigenvalue of a non-negative matrix by power iteration.

    Iterates on ``M + I`` so periodic matrices (permutations) still converge;
    the start vector is all ones.
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    shifted = M + np.eye(n)
    v = np.ones(n) / np.sqrt(n)
    lam = 0.0
    for _ in range(max_iter):
        w = shifted @ v
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        w /= norm
        lam = float(w @ (M @ w))
        if np.linalg.norm(M @ w - lam * w) < tol * max(1.0, abs(lam)):
            return lam
        v = w
    raise ArithmeticError(f"power iteration did not converge (last estimate {lam})")


def fpdim(ring: FusionRing) -> FPData:
    return FPData((1.0,) + tuple(perron_eigenvalue(ring.matrix(i)) for i in range(1, ring.rank)))


def _permute(N: np.ndarray, perm: Sequence[int]) -> np.ndarray:
    # result[p[i], p[j], p[k]] = N[i, j, k]
    inv = np.argsort(perm)
    return N[np.ix_(inv, inv, inv)]


def automorphisms(ring: FusionRing) -> list[tuple[int, ...]]:
    """All permutations fixing the unit that preserve the fusion tensor."""
    r = ring.rank
    out = []
    for tail in itertools.permutations(range(1, r)):
        perm = (0,) + tail
        if np.array_equal(_permute(ring.N, perm), ring.N):
            out.append(perm)
    return out


def find_isomorphism(a: FusionRing, b: FusionRing) -> tuple[int, ...] | None:
    """A permutation ``p`` with ``b.N[p[i], p[j], p[k]] == a.N[i, j, k]``, if any."""
    if a.rank != b.rank:
        return None
    for tail in itertools.permutations(range(1, a.rank)):
        perm = (0,) + tail
        if np.array_equal(_permute(a.N, perm), b.N):
            return perm
    return None


def tensor_product(a: FusionRing, b: FusionRing) -> FusionRing:
    """Deligne product ring; object ``(i, j)`` sits at index ``i * b.rank + j``."""
    N = np.einsum("ikm,jln->ijklmn", a.N, b.N).reshape(a.rank * b.rank, a.rank * b.rank, a.rank * b.rank)
    labels = []
    for la, lb in itertools.product(a.labels, b.labels):
        if la == a.labels[0]:
            labels.append(lb)
        elif lb == b.labels[0]:
            labels.append(la)
        else:
            labels.append(f"{la}⊠{lb}")
    if len(set(labels)) != len(labels):
        labels = [f"{la}⊠{lb}" for la, lb in itertools.product(a.labels, b.labels)]
    name = f"{a.name}⊠{b.name}" if a.name and b.name else ""
    return FusionRing(tuple(labels), N, name)
