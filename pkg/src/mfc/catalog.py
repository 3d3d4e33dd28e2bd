"""Built-in modular fusion categories up to rank five with their known classification.

Each entry stores the fusion ring, every modular-data variant as closed-form
quantum dimensions and exact conformal dimensions, and the connected étale
algebras each variant is known to carry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction as F
from typing import Mapping, Sequence

import numpy as np

from .fusion_ring import FusionRing, _permute, fpdim
from .modular_data import ModularData, build_modular

__all__ = [
    "CatalogEntry",
    "Variant",
    "ExpectedAlgebra",
    "UnknownEntryError",
    "ENTRY_IDS",
    "load_builtin",
    "all_entries",
    "list_entries",
    "entries_for",
    "EntrySummary",
    "literature_confirmation",
]

sin, cos, pi = math.sin, math.cos, math.pi
ZETA = (1 + math.sqrt(5)) / 2


class UnknownEntryError(KeyError):
    """No built-in entry with the requested id."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else ""


@dataclass(frozen=True)
class Variant:
    d: tuple[float, ...]
    h: tuple[F, ...]
    D_sign: int
    unitary: bool

    def modular_data(self, ring: FusionRing) -> ModularData:
        return build_modular(ring, self.d, self.h, self.D_sign)


@dataclass(frozen=True)
class ExpectedAlgebra:
    n: tuple[int, ...]
    BA_name: str
    rank_BA: int
    lagrangian: bool


@dataclass(frozen=True)
class _Rule:
    """An algebra present exactly for the variants matching one of ``when``.

    Each condition maps ``"d_X"``/``"h_X"`` style keys to values.
    """

    n: tuple[int, ...]
    BA_name: str
    rank_BA: int
    lagrangian: bool
    when: tuple[Mapping[str, object], ...]
    confirmed_by: str | None = None


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    name: str
    ring: FusionRing
    variants: tuple[Variant, ...]
    expected_mfc_count: int
    rules: tuple[_Rule, ...] = ()
    references: tuple[str, ...] = ()
    confirmed_by: tuple[str, ...] = ()
    cases_label: str = ""

    @property
    def rank(self) -> int:
        return self.ring.rank

    def modular_data(self, k: int) -> ModularData:
        return self.variants[k].modular_data(self.ring)

    def expected_algebras(self, k: int) -> list[ExpectedAlgebra]:
        """Known connected étale algebras of variant ``k``, trivial algebra first."""
        v = self.variants[k]
        out = [ExpectedAlgebra((1,) + (0,) * (self.rank - 1), "B", self.rank, self.rank == 1)]
        for rule in self.rules:
            if any(_matches(self.ring, v.d, v.h, cond) for cond in rule.when):
                out.append(ExpectedAlgebra(rule.n, rule.BA_name, rule.rank_BA, rule.lagrangian))
        return out

    def anisotropic(self, k: int) -> bool:
        return len(self.expected_algebras(k)) == 1

    def expected_gsd(self, k: int) -> tuple[int, ...]:
        return tuple(sorted({a.rank_BA for a in self.expected_algebras(k)}))

    def unitary_count(self) -> int:
        return sum(v.unitary for v in self.variants)

    def to_dict(self) -> dict:
        """Ring and variants in the standard ring / modular-data JSON formats."""
        variants = []
        for k, v in enumerate(self.variants):
            md = self.modular_data(k).to_dict(inline_ring=False)
            md.pop("ring")
            md["unitary"] = v.unitary
            md["expected_algebras"] = [
                {"n": list(a.n), "BA_name": a.BA_name, "rank_BA": a.rank_BA, "lagrangian": a.lagrangian}
                for a in self.expected_algebras(k)]
            md["anisotropic"] = self.anisotropic(k)
            variants.append(md)
        return {
            "id": self.id,
            "name": self.name,
            "ring": self.ring.to_dict(),
            "expected_mfc_count": self.expected_mfc_count,
            "confirmed_by": list(self.confirmed_by),
            "references": list(self.references),
            "variants": variants,
        }

    def variant_dict(self, k: int) -> dict:
        """Variant ``k`` as a self-contained modular-data document."""
        return self.modular_data(k).to_dict()


def _matches(ring: FusionRing, d: Sequence[float], h: Sequence[F], cond: Mapping[str, object]) -> bool:
    for key, val in cond.items():
        kind, label = key.split("_", 1)
        i = ring.index(label)
        if kind == "d":
            if abs(d[i] - float(val)) > 1e-7:
                return False
        elif F(val) % 1 != h[i] % 1:
            return False
    return True


def _ring(labels: str, products: Mapping[tuple[str, str], str], name: str) -> FusionRing:
    return FusionRing.from_products(labels.split(), products, name=name)


def _variants(ring: FusionRing, blocks, signs=(1, -1)) -> tuple[Variant, ...]:
    """``blocks`` is a list of ``(d_nontrivial, [h_nontrivial, ...])``."""
    fp = fpdim(ring).fpdim_simple
    out = []
    for d, hs in blocks:
        d = (1.0,) + tuple(float(x) for x in d)
        unitary = all(abs(a - b) < 1e-6 for a, b in zip(d, fp))
        for h in hs:
            h = (F(0),) + tuple(F(x) % 1 for x in h)
            for s in signs:
                out.append(Variant(d, h, s, unitary))
    return tuple(out)


# rings

_VECT = FusionRing(("1",), np.ones((1, 1, 1), dtype=np.int64), name="Vect_C")
_Z2 = _ring("1 X", {("X", "X"): "1"}, "Vec_{Z/2Z}^{-1}")
_FIB = _ring("1 X", {("X", "X"): "1+X"}, "Fib")
_Z3 = _ring("1 X Y", {("X", "X"): "Y", ("X", "Y"): "1", ("Y", "Y"): "X"}, "Vec_{Z/3Z}^1")
_ISING = _ring("1 ψ σ", {("ψ", "ψ"): "1", ("ψ", "σ"): "σ", ("σ", "σ"): "1+ψ"}, "Ising")
_PSU25 = _ring("1 X Y", {("X", "X"): "1+X+Y", ("X", "Y"): "X+Y", ("Y", "Y"): "1+X"}, "psu(2)_5")
_Z2Z2 = _ring("1 X Y Z", {("X", "X"): "1", ("X", "Y"): "Z", ("X", "Z"): "Y", ("Y", "Y"): "1", ("Y", "Z"): "X",
                          ("Z", "Z"): "1"}, "Z/2Z x Z/2Z")
_Z4 = _ring("1 X Y Z", {("X", "X"): "Y", ("X", "Y"): "Z", ("X", "Z"): "1", ("Y", "Y"): "1", ("Y", "Z"): "X",
                        ("Z", "Z"): "Y"}, "Vec_{Z/4Z}^alpha")
_SU23 = _ring("1 X Y Z", {("X", "X"): "1", ("X", "Y"): "Z", ("X", "Z"): "Y", ("Y", "Y"): "1+Y", ("Y", "Z"): "X+Z",
                          ("Z", "Z"): "1+Y"}, "su(2)_3")
_FIBFIB = _ring("1 X Y Z", {("X", "X"): "1+X", ("X", "Y"): "Z", ("X", "Z"): "Y+Z", ("Y", "Y"): "1+Y",
                            ("Y", "Z"): "X+Z", ("Z", "Z"): "1+X+Y+Z"}, "Fib x Fib")
_PSU27 = _ring("1 X Y Z", {("X", "X"): "1+Y", ("X", "Y"): "X+Z", ("X", "Z"): "Y+Z", ("Y", "Y"): "1+Y+Z",
                           ("Y", "Z"): "X+Y+Z", ("Z", "Z"): "1+X+Y+Z"}, "psu(2)_7")
_SU51 = _ring("1 X Y Z W", {("X", "X"): "W", ("X", "Y"): "1", ("X", "Z"): "Y", ("X", "W"): "Z", ("Y", "Y"): "Z",
                            ("Y", "Z"): "W", ("Y", "W"): "X", ("Z", "Z"): "X", ("Z", "W"): "1", ("W", "W"): "Y"},
              "su(5)_1")
_SU24 = _ring("1 X Y Z W", {("X", "X"): "1", ("X", "Y"): "Z", ("X", "Z"): "Y", ("X", "W"): "W", ("Y", "Y"): "1+W",
                            ("Y", "Z"): "X+W", ("Y", "W"): "Y+Z", ("Z", "Z"): "1+W", ("Z", "W"): "Y+Z",
                            ("W", "W"): "1+X+W"}, "su(2)_4")
_PSU29 = _ring("1 X Y Z W", {("X", "X"): "1+Y", ("X", "Y"): "X+Z", ("X", "Z"): "Y+W", ("X", "W"): "Z+W",
                             ("Y", "Y"): "1+Y+W", ("Y", "Z"): "X+Z+W", ("Y", "W"): "Y+Z+W",
                             ("Z", "Z"): "1+Y+Z+W", ("Z", "W"): "X+Y+Z+W", ("W", "W"): "1+X+Y+Z+W"}, "psu(2)_9")
_PSU34 = _ring("1 X Y Z W", {("X", "X"): "1+X+Y", ("X", "Y"): "X+Y+Z+W", ("X", "Z"): "Y+W", ("X", "W"): "Y+Z",
                             ("Y", "Y"): "1+X+2Y+Z+W", ("Y", "Z"): "X+Y+Z", ("Y", "W"): "X+Y+W",
                             ("Z", "Z"): "X+W", ("Z", "W"): "1+Y", ("W", "W"): "X+Z"}, "psu(3)_4")


# variant data

def _z2z2_product() -> tuple[Variant, ...]:
    quarter = [(F(1, 4), F(1, 4)), (F(1, 4), F(3, 4)), (F(3, 4), F(3, 4))]
    classes = [((1, 1), quarter),
               ((1, -1), quarter[:2] + [(F(3, 4), F(1, 4))] + quarter[2:]),
               ((-1, -1), quarter)]
    blocks = [((dx, dy, dx * dy), [(hx, hy, hx + hy) for hx, hy in hs]) for (dx, dy), hs in classes]
    return _variants(_Z2Z2, blocks)


def _fib_fib() -> tuple[Variant, ...]:
    z, zi = ZETA, -1 / ZETA
    classes = [((z, z), [(F(2, 5), F(2, 5)), (F(2, 5), F(3, 5)), (F(3, 5), F(3, 5))]),
               ((z, zi), [(F(2, 5), F(1, 5)), (F(2, 5), F(4, 5)), (F(3, 5), F(1, 5)), (F(3, 5), F(4, 5))]),
               ((zi, zi), [(F(1, 5), F(1, 5)), (F(1, 5), F(4, 5)), (F(4, 5), F(4, 5))])]
    blocks = [((dx, dy, dx * dy), [(hx, hy, hx + hy) for hx, hy in hs]) for (dx, dy), hs in classes]
    return _variants(_FIBFIB, blocks)


def _sine_ratio(m: int, k: int, N: int) -> float:
    return sin(m * k * pi / N) / sin(k * pi / N)


_ENTRIES: dict[str, CatalogEntry] = {}


def _register(entry: CatalogEntry) -> None:
    if entry.expected_mfc_count != len(entry.variants):
        raise AssertionError(f"{entry.id}: count {entry.expected_mfc_count} != {len(entry.variants)} variants")
    _ENTRIES[entry.id] = entry


_register(CatalogEntry(
    "vect_c", "Vect_C", _VECT, _variants(_VECT, [((), [()])], signs=(1,)), 1,
    references=("KK23etale",), confirmed_by=("KK23etale",)))

_register(CatalogEntry(
    "vec_z2", "Vec_{Z/2Z}^{-1}", _Z2,
    _variants(_Z2, [((1,), [(F(1, 4),), (F(3, 4),)]), ((-1,), [(F(1, 4),), (F(3, 4),)])]), 8,
    references=("KO01", "KK23etale"), confirmed_by=("KO01", "KK23etale")))

_register(CatalogEntry(
    "fib", "Fib", _FIB,
    _variants(_FIB, [((ZETA,), [(F(2, 5),), (F(3, 5),)]), ((-1 / ZETA,), [(F(1, 5),), (F(4, 5),)])]), 8,
    references=("BD11", "KK23etale"), confirmed_by=("BD11", "KK23etale")))

_register(CatalogEntry(
    "vec_z3", "Vec_{Z/3Z}^1", _Z3,
    _variants(_Z3, [((1, 1), [(F(1, 3), F(1, 3)), (F(2, 3), F(2, 3))])]), 4,
    references=("EP09", "KK23etale"), confirmed_by=("EP09", "KK23etale")))

_register(CatalogEntry(
    "ising", "Ising", _ISING,
    _variants(_ISING, [((1, s * math.sqrt(2)), [(F(1, 2), F(k, 16)) for k in range(1, 16, 2)]) for s in (1, -1)]),
    32, references=("KO01", "KL02", "EM21", "G23", "KK23etale"),
    confirmed_by=("KO01", "KL02", "EM21", "G23", "KK23etale")))

_register(CatalogEntry(
    "psu2_5", "psu(2)_5", _PSU25,
    _variants(_PSU25, [
        ((_sine_ratio(3, 1, 7), _sine_ratio(5, 1, 7)), [(F(2, 7), F(6, 7)), (F(5, 7), F(1, 7))]),
        ((_sine_ratio(3, 2, 7), _sine_ratio(5, 2, 7)), [(F(3, 7), F(2, 7)), (F(4, 7), F(5, 7))]),
        ((_sine_ratio(3, 3, 7), _sine_ratio(5, 3, 7)), [(F(1, 7), F(3, 7)), (F(6, 7), F(4, 7))]),
    ]), 12, references=("KK23etale",), confirmed_by=("KK23etale",)))

_register(CatalogEntry(
    "z2z2_product", "Vec_{Z/2Z}^{-1} ⊠ Vec_{Z/2Z}^{-1}", _Z2Z2, _z2z2_product(), 20,
    rules=(_Rule((1, 0, 0, 1), "Vec_{Z/2Z}^alpha", 2, True,
                 ({"d_X": 1, "d_Y": 1, "h_X": "1/4", "h_Y": "3/4"},
                  {"d_X": -1, "d_Y": -1, "h_X": "1/4", "h_Y": "3/4"})),),
    references=("KK23etale",), cases_label="1⊕Z"))

_register(CatalogEntry(
    "toric_code", "ToricCode", _Z2Z2,
    _variants(_Z2Z2, [((1, 1, 1), [(F(1, 2), 0, 0), (F(1, 2), F(1, 2), F(1, 2))]),
                      ((1, -1, -1), [(F(1, 2), 0, 0), (0, F(1, 2), 0), (F(1, 2), F(1, 2), F(1, 2))])]), 10,
    rules=(
        _Rule((1, 1, 0, 0), "Vec_{Z/2Z}^alpha", 2, True,
              ({"d_X": 1, "d_Y": -1, "d_Z": -1, "h_X": 0, "h_Y": "1/2", "h_Z": 0},)),
        _Rule((1, 0, 1, 0), "Vec_{Z/2Z}^alpha", 2, True,
              ({"d_X": 1, "d_Y": 1, "d_Z": 1, "h_X": "1/2", "h_Y": 0, "h_Z": 0},)),
        _Rule((1, 0, 0, 1), "Vec_{Z/2Z}^alpha", 2, True,
              ({"d_X": 1, "d_Y": 1, "d_Z": 1, "h_X": "1/2", "h_Y": 0, "h_Z": 0},)),
    ), references=("KK23etale",), cases_label="1⊕X, 1⊕Y, 1⊕Z"))

_register(CatalogEntry(
    "vec_z4", "Vec_{Z/4Z}^alpha", _Z4,
    _variants(_Z4, [(d, [(F(k, 8), F(1, 2), F(k, 8)) for k in (1, 3, 5, 7)]) for d in ((1, 1, 1), (-1, 1, -1))]),
    16, references=("CEM23",)))

_SU23_H = {
    ZETA: [(F(1, 4), F(2, 5), F(13, 20)), (F(1, 4), F(3, 5), F(17, 20)),
           (F(3, 4), F(2, 5), F(3, 20)), (F(3, 4), F(3, 5), F(7, 20))],
    -1 / ZETA: [(F(1, 4), F(1, 5), F(9, 20)), (F(1, 4), F(4, 5), F(1, 20)),
                (F(3, 4), F(1, 5), F(19, 20)), (F(3, 4), F(4, 5), F(11, 20))],
}
_register(CatalogEntry(
    "su2_3", "su(2)_3", _SU23,
    _variants(_SU23, [((dx, dy, dx * dy), _SU23_H[dy]) for dx, dy in
                      ((1, ZETA), (-1, ZETA), (1, -1 / ZETA), (-1, -1 / ZETA))]),
    32, references=("KO01",)))

_register(CatalogEntry(
    "fib_fib", "Fib ⊠ Fib", _FIBFIB, _fib_fib(), 20,
    rules=(_Rule((1, 0, 0, 1), "Fib", 2, True,
                 ({"d_X": ZETA, "d_Y": ZETA, "h_X": "2/5", "h_Y": "3/5"},
                  {"d_X": ZETA, "d_Y": ZETA, "h_X": "3/5", "h_Y": "2/5"},
                  {"d_X": -1 / ZETA, "d_Y": -1 / ZETA, "h_X": "1/5", "h_Y": "4/5"},
                  {"d_X": -1 / ZETA, "d_Y": -1 / ZETA, "h_X": "4/5", "h_Y": "1/5"}),
                 confirmed_by="BD11"),),
    references=("BD11",), confirmed_by=("BD11",), cases_label="1⊕Z"))

_c18, _s29, _s9 = cos(pi / 18), sin(2 * pi / 9), sin(pi / 9)
_register(CatalogEntry(
    "psu2_7", "psu(2)_7", _PSU27,
    _variants(_PSU27, [
        ((-_s9 / _c18, -sin(pi / 3) / _c18, 1 - _s9 / _c18),
         [(F(1, 3), F(8, 9), F(2, 3)), (F(2, 3), F(1, 9), F(1, 3))]),
        ((-_c18 / _s29, sin(pi / 3) / _s29, 1 - _c18 / _s29),
         [(F(1, 3), F(5, 9), F(2, 3)), (F(2, 3), F(4, 9), F(1, 3))]),
        ((_s29 / _s9, sin(3 * pi / 9) / _s9, sin(4 * pi / 9) / _s9),
         [(F(1, 3), F(2, 9), F(2, 3)), (F(2, 3), F(7, 9), F(1, 3))]),
    ]), 12))

_register(CatalogEntry(
    "su5_1", "su(5)_1", _SU51,
    _variants(_SU51, [((1, 1, 1, 1), [(F(1, 5), F(1, 5), F(4, 5), F(4, 5)), (F(2, 5), F(2, 5), F(3, 5), F(3, 5))])]),
    4, references=("G23",)))

_SU24_H = [(0, F(1, 8), F(5, 8), F(1, 3)), (0, F(1, 8), F(5, 8), F(2, 3)),
           (0, F(3, 8), F(7, 8), F(1, 3)), (0, F(3, 8), F(7, 8), F(2, 3))]
_r3 = math.sqrt(3)
_register(CatalogEntry(
    "su2_4", "su(2)_4", _SU24,
    _variants(_SU24, [((1, -_r3, -_r3, 2), _SU24_H), ((1, _r3, _r3, 2), _SU24_H)]), 16,
    rules=(_Rule((1, 1, 0, 0, 0), "TY(Z/3Z)", 4, False, ({},)),),
    references=("KO01",), cases_label="1⊕X"))

_s11 = [sin(k * pi / 11) for k in range(6)]
_c22, _c322 = cos(pi / 22), cos(3 * pi / 22)
_register(CatalogEntry(
    "psu2_9", "psu(2)_9", _PSU29,
    _variants(_PSU29, [
        ((_s11[1] / _c22, -_s11[4] / _c22, -_s11[2] / _c22, _s11[3] / _c22),
         [(F(1, 11), F(10, 11), F(5, 11), F(8, 11)), (F(10, 11), F(1, 11), F(6, 11), F(3, 11))]),
        ((-_s11[3] / _c322, -_s11[1] / _c322, _s11[5] / _c322, -_s11[2] / _c322),
         [(F(3, 11), F(8, 11), F(4, 11), F(2, 11)), (F(8, 11), F(3, 11), F(7, 11), F(9, 11))]),
        ((_s11[5] / _s11[3], _s11[2] / _s11[3], -_s11[1] / _s11[3], -_s11[4] / _s11[3]),
         [(F(5, 11), F(6, 11), F(3, 11), F(7, 11)), (F(6, 11), F(5, 11), F(8, 11), F(4, 11))]),
        ((-_s11[4] / _s11[2], _s11[5] / _s11[2], -_s11[3] / _s11[2], _s11[1] / _s11[2]),
         [(F(4, 11), F(7, 11), F(9, 11), F(10, 11)), (F(7, 11), F(4, 11), F(2, 11), F(1, 11))]),
        ((_s11[2] / _s11[1], _s11[3] / _s11[1], _s11[4] / _s11[1], _s11[5] / _s11[1]),
         [(F(2, 11), F(9, 11), F(10, 11), F(5, 11)), (F(9, 11), F(2, 11), F(1, 11), F(6, 11))]),
    ]), 20))

_s14 = [sin(k * pi / 14) for k in range(6)]
_c27 = cos(2 * pi / 7)
_register(CatalogEntry(
    "psu3_4", "psu(3)_4", _PSU34,
    _variants(_PSU34, [
        ((-_s14[1] / _s14[5], -_s14[3] / _s14[5], 1 / (2 * _s14[5]), 1 / (2 * _s14[5])),
         [(F(2, 7), F(6, 7), F(5, 7), F(5, 7)), (F(5, 7), F(1, 7), F(2, 7), F(2, 7))]),
        ((_s14[5] / _c27, -_s14[1] / _c27, -1 / (2 * _c27), -1 / (2 * _c27)),
         [(F(3, 7), F(2, 7), F(4, 7), F(4, 7)), (F(4, 7), F(5, 7), F(3, 7), F(3, 7))]),
        ((_s14[3] / _s14[1], _s14[5] / _s14[1], 1 / (2 * _s14[1]), 1 / (2 * _s14[1])),
         [(F(1, 7), F(3, 7), F(6, 7), F(6, 7)), (F(6, 7), F(4, 7), F(1, 7), F(1, 7))]),
    ]), 12))

ENTRY_IDS: tuple[str, ...] = tuple(_ENTRIES)


def load_builtin(entry_id: str) -> CatalogEntry:
    try:
        return _ENTRIES[entry_id]
    except KeyError:
        raise UnknownEntryError(f"unknown catalog entry {entry_id!r}; valid ids: {', '.join(ENTRY_IDS)}") from None


def all_entries() -> list[CatalogEntry]:
    return list(_ENTRIES.values())


_WORDS = "zero one two three four five six seven eight nine ten".split()


def _word(k: int) -> str:
    return _WORDS[k] if k < len(_WORDS) else str(k)


@dataclass(frozen=True)
class EntrySummary:
    """One row of the overview table; the two Z/2 x Z/2 classes share a row."""

    id: str
    name: str
    rank: int
    mfc_count: int
    unitary_count: int
    anisotropic: str
    entry_ids: tuple[str, ...]


_ROW_GROUPS = {"z2z2": ("z2z2_product", "toric_code")}


def _anisotropy_summary(e: CatalogEntry) -> str:
    flags = [e.anisotropic(k) for k in range(len(e.variants))]
    yes, no = sum(flags), len(flags) - sum(flags)
    if no == 0:
        return "Yes"
    if yes == 0:
        return "No"
    return f"No ({_word(no)} with d,h admitting {e.cases_label})/Yes (the other {_word(yes)})"


def entries_for(row_id: str) -> list[CatalogEntry]:
    """Entries behind an overview row id or a single entry id."""
    if row_id in _ROW_GROUPS:
        return [_ENTRIES[i] for i in _ROW_GROUPS[row_id]]
    return [load_builtin(row_id)]


def list_entries() -> list[EntrySummary]:
    """The overview table, one row per fusion ring with its anisotropy verdict."""
    grouped = {i: g for g, ids in _ROW_GROUPS.items() for i in ids}
    rows = []
    seen = set()
    for e in _ENTRIES.values():
        gid = grouped.get(e.id, e.id)
        if gid in seen:
            continue
        seen.add(gid)
        members = entries_for(gid)
        rows.append(EntrySummary(
            id=gid,
            name=" / ".join(m.name for m in members) if len(members) > 1 else e.name,
            rank=e.rank,
            mfc_count=sum(len(m.variants) for m in members),
            unitary_count=sum(m.unitary_count() for m in members),
            anisotropic="; ".join(f"{m.id}: {_anisotropy_summary(m)}" for m in members)
            if len(members) > 1 else _anisotropy_summary(e),
            entry_ids=tuple(m.id for m in members),
        ))
    return rows


def literature_confirmation(md: ModularData, n: Sequence[int]) -> str | None:
    """Citation tag if ``A = n`` in ``md`` is a known étale algebra not decidable by the filters.

    The ring of ``md`` is matched to catalog rings up to relabeling, so user
    supplied data with permuted labels is recognized too.
    """
    for e in _ENTRIES.values():
        tagged = [r for r in e.rules if r.confirmed_by]
        if not tagged or e.rank != md.ring.rank:
            continue
        for perm in _isomorphisms(md.ring, e.ring):
            # perm[i] is the entry index of md's object i
            d = [0.0] * e.rank
            h = [F(0)] * e.rank
            m = [0] * e.rank
            for i, p in enumerate(perm):
                d[p], h[p], m[p] = md.d[i], md.h[i], n[i]
            for rule in tagged:
                if tuple(m) == rule.n and any(_matches(e.ring, d, h, c) for c in rule.when):
                    return rule.confirmed_by
    return None


def _isomorphisms(a: FusionRing, b: FusionRing):
    for tail in itertools.permutations(range(1, a.rank)):
        perm = (0,) + tail
        if np.array_equal(_permute(a.N, perm), b.N):
            yield perm
