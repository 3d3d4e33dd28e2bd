from __future__ import annotations

import itertools
import math
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mfc.catalog import all_entries, literature_confirmation, load_builtin
from mfc.etale import (AlgebraCandidate, BosonVerdict, ClassificationRecord, Reason, Verdict, algebra_label,
                       classify, enumerate_candidates, filter_invertible_boson, filter_pairing_phase,
                       filter_self_dual, filter_separability, identify_quotient, name_module_category,
                       quotient_feasibility)
from mfc.fusion_ring import FusionRing, fpdim
from mfc.modular_data import build_modular

from conftest import FIB, VECT

ZETA = (1 + math.sqrt(5)) / 2


def cand(md_or_ring, n):
    return next(c for c in enumerate_candidates(md_or_ring) if c.n == tuple(n))


def variant(entry_id, d=None, h=None, D_sign=1):
    e = load_builtin(entry_id)
    for k, v in enumerate(e.variants):
        if (d is None or np.allclose(v.d[1:], d)) and (h is None or v.h[1:] == tuple(F(x) for x in h)) \
                and v.D_sign == D_sign:
            return e.modular_data(k)
    raise LookupError((entry_id, d, h))


def brute_candidates(ring: FusionRing) -> list[tuple[int, ...]]:
    fp = [max(np.linalg.eigvals(ring.N[i].astype(float)).real) for i in range(ring.rank)]
    total = sum(x * x for x in fp)
    cap = int(math.isqrt(int(math.floor(total + 1e-9))))
    out = []
    for tail in itertools.product(range(cap + 1), repeat=ring.rank - 1):
        n = (1, *tail)
        if sum(a * b for a, b in zip(n, fp)) ** 2 <= total + 1e-6:
            out.append(n)
    return sorted(out)


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.id)
def test_candidates_match_brute_force(entry):
    got = [c.n for c in enumerate_candidates(entry.ring)]
    assert got == brute_candidates(entry.ring)
    assert got[0] == (1,) + (0,) * (entry.rank - 1)
    assert got == sorted(got)


def test_candidate_counts(rings):
    counts = {"z2z2": 4, "vec_z4": 4, "su2_3": 4, "fib_fib": 4, "psu2_7": 4, "su5_1": 5, "su2_4": 6,
              "psu2_9": 7, "psu3_4": 8}
    assert {k: len(enumerate_candidates(rings[k])) for k in counts} == counts
    assert (1, 2, 0, 0, 0) in [c.n for c in enumerate_candidates(rings["su2_4"])]
    psu29 = [c.n for c in enumerate_candidates(rings["psu2_9"])]
    assert (1, 1, 0, 0, 0) in psu29 and (1, 1, 1, 0, 0) in psu29
    psu34 = [c.n for c in enumerate_candidates(rings["psu3_4"])]
    assert (1, 0, 0, 2, 0) in psu34 and (1, 0, 0, 1, 1) in psu34


def test_candidate_invariants(rings):
    for ring in rings.values():
        cands = enumerate_candidates(ring)
        assert cands[0].verdict is Verdict.TRIVIAL
        assert all(c.verdict is None for c in cands[1:])
        for c in cands:
            assert c.n[0] == 1 and 1 <= c.fpdim_A ** 2


def test_self_dual_filter(rings):
    assert not filter_self_dual(rings["su5_1"], cand(rings["su5_1"], (1, 1, 0, 0, 0)))
    assert all(filter_self_dual(r, enumerate_candidates(r)[0]) for r in rings.values())
    assert filter_self_dual(rings["z2z2"], cand(rings["z2z2"], (1, 0, 0, 1)))
    su51 = enumerate_candidates(rings["su5_1"])
    assert sum(not filter_self_dual(rings["su5_1"], c) for c in su51) == 4


def test_pairing_phase_filter():
    for md in (load_builtin("psu2_7").modular_data(k) for k in range(12)):
        c = cand(md, (1, 1, 0, 0))
        assert filter_pairing_phase(md, c) == (md.h[1] == 0)
        assert md.h[1] in (F(1, 3), F(2, 3)) and not filter_pairing_phase(md, c)
    fibfib = variant("fib_fib", (ZETA, ZETA, ZETA ** 2), (F(2, 5), F(3, 5), 0))
    assert fibfib.h[3] == 0
    assert filter_pairing_phase(fibfib, cand(fibfib, (1, 0, 0, 1)))
    assert filter_pairing_phase(fibfib, enumerate_candidates(fibfib)[0])


def test_invertible_boson_filter():
    tc = variant("toric_code", (1, 1, 1), (F(1, 2), 0, 0))
    assert filter_invertible_boson(tc, cand(tc, (1, 0, 1, 0))) is BosonVerdict.COMMUTATIVE
    prod = variant("z2z2_product", (1, 1, 1), (F(1, 4), F(1, 4), F(1, 2)))
    assert filter_invertible_boson(prod, cand(prod, (1, 0, 0, 1))) is BosonVerdict.NOT_COMMUTATIVE
    fibfib = variant("fib_fib", (ZETA, ZETA, ZETA ** 2), (F(2, 5), F(3, 5), 0))
    assert filter_invertible_boson(fibfib, cand(fibfib, (1, 0, 0, 1))) is BosonVerdict.NOT_APPLICABLE
    # support {Y, Z} is not closed under fusion: Y x Z = X
    assert filter_invertible_boson(tc, AlgebraCandidate((1, 0, 1, 1), 3.0)) is BosonVerdict.NOT_COMMUTATIVE


def test_separability_filter():
    # d_Z = -1 with h_Z = 0 gives d(A) = 0 for A = 1 + Z
    prod = variant("z2z2_product", (1, -1, -1), (F(1, 4), F(3, 4), 0))
    c = cand(prod, (1, 0, 0, 1))
    q, ident = identify_quotient(prod, c, quotient_feasibility(prod, c))
    assert filter_separability(prod, c, ident) is False
    tc = variant("toric_code", (1, 1, 1), (F(1, 2), 0, 0))
    c = cand(tc, (1, 0, 1, 0))
    q, ident = identify_quotient(tc, c, quotient_feasibility(tc, c))
    assert filter_separability(tc, c, ident) is True
    triv = enumerate_candidates(tc)[0]
    q, ident = identify_quotient(tc, triv, quotient_feasibility(tc, triv))
    assert filter_separability(tc, triv, ident) is True
    assert filter_separability(tc, c, None) is None


def test_quotient_feasibility(rings):
    su24 = rings["su2_4"]
    assert quotient_feasibility(su24, cand(su24, (1, 2, 0, 0, 0))) is None
    q = quotient_feasibility(su24, cand(su24, (1, 1, 0, 0, 0)))
    assert q.fpdim_BA == pytest.approx(6) and q.fpdim_BA0 == pytest.approx(3) and not q.lagrangian
    q = quotient_feasibility(rings["z2z2"], cand(rings["z2z2"], (1, 0, 1, 0)))
    assert q.fpdim_BA0 == pytest.approx(1) and q.lagrangian
    q = quotient_feasibility(FIB, enumerate_candidates(FIB)[0])
    assert not q.lagrangian and q.fpdim_BA0 == pytest.approx(q.fpdim_BA)


def test_module_category_names():
    assert name_module_category((1, 1)) == "Vec_{Z/2Z}^alpha"
    assert name_module_category((ZETA, 1)) == "Fib"
    assert name_module_category((1, 1, 1, math.sqrt(3))) == "TY(Z/3Z)"
    assert name_module_category((1, 2)) is None


def test_label(rings):
    assert algebra_label(rings["su2_4"], (1, 2, 0, 1, 0)) == "1⊕2X⊕Z"
    assert algebra_label(FIB, (1, 0)) == "1"


def _nontrivial(rec: ClassificationRecord):
    return [(a.label, a.BA_name, a.rank_BA, a.lagrangian) for a in rec.algebras if any(a.n[1:])]


def test_classify_fibfib():
    md = variant("fib_fib", (ZETA, ZETA, ZETA ** 2), (F(2, 5), F(3, 5), 0))
    rec = classify(md)
    assert _nontrivial(rec) == [("1⊕Z", "Fib", 2, True)]
    row = rec.algebras[1]
    assert row.verdict == "needs_confirmation" and row.confirmation_source == "BD11"
    assert row.module_images == ((1, 0, 0, 1), (0, 1, 1, 1))
    assert row.module_qdims == pytest.approx((1, ZETA))
    assert rec.gsd_set == (2, 4) and rec.ssb and not rec.anisotropic


def test_unconfirmed_algebra_marks_gsd_partial():
    md = variant("fib_fib", (ZETA, ZETA, ZETA ** 2), (F(2, 5), F(3, 5), 0))
    rec = classify(md, confirm=lambda md, n: None)
    assert rec.gsd_partial and rec.gsd_set == (4,) and rec.anisotropic


def test_classify_psu27_anisotropic():
    e = load_builtin("psu2_7")
    for k in range(len(e.variants)):
        rec = classify(e.modular_data(k))
        assert [a.n for a in rec.algebras] == [(1, 0, 0, 0)] and rec.anisotropic
        assert dict(rec.rejected)[(1, 1, 0, 0)] == Reason.PAIRING_PHASE.value


def test_classify_su24():
    e = load_builtin("su2_4")
    for k in range(len(e.variants)):
        rec = classify(e.modular_data(k))
        assert _nontrivial(rec) == [("1⊕X", "TY(Z/3Z)", 4, False)]
        assert rec.algebras[1].verdict == "etale"
        assert dict(rec.rejected)[(1, 2, 0, 0, 0)] == Reason.QUOTIENT_INFEASIBLE.value
        assert rec.gsd_set == (4, 5)


def test_classify_su51_reasons():
    rec = classify(load_builtin("su5_1").modular_data(0))
    assert sorted(r for _, r in rec.rejected) == [Reason.NOT_SELF_DUAL.value] * 4


def test_vect_c():
    rec = classify(build_modular(VECT, [1], [0]))
    assert rec.gsd_set == (1,) and not rec.ssb and rec.algebras[0].lagrangian


def test_confirmation_survives_relabeling():
    md = variant("fib_fib", (ZETA, ZETA, ZETA ** 2), (F(2, 5), F(3, 5), 0))
    perm = (0, 3, 1, 2)  # X -> Z, Y -> X, Z -> Y
    inv = np.argsort(perm)
    ring = md.ring
    moved_ring = FusionRing(tuple(ring.labels[i] for i in inv), ring.N[np.ix_(inv, inv, inv)])
    moved = build_modular(moved_ring, [md.d[i] for i in inv], [md.h[i] for i in inv], md.D_sign)
    n = [0] * 4
    n[0], n[perm[3]] = 1, 1
    assert literature_confirmation(moved, n) == "BD11"
    assert literature_confirmation(moved, (1, 1, 0, 0)) is None
    rec = classify(moved)
    assert rec.gsd_set == (2, 4)


CHAIN = [
    (Reason.NOT_SELF_DUAL, lambda md, c: filter_self_dual(md, c)),
    (Reason.PAIRING_PHASE, lambda md, c: filter_pairing_phase(md, c)),
    (Reason.BOSON_CRITERION, lambda md, c: filter_invertible_boson(md, c) is not BosonVerdict.NOT_COMMUTATIVE),
    (Reason.QUOTIENT_INFEASIBLE, lambda md, c: quotient_feasibility(md, c) is not None),
]

VARIANTS = [(e.id, k) for e in all_entries() for k in range(len(e.variants))]


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(VARIANTS))
def test_chain_is_monotone(v):
    e = load_builtin(v[0])
    md = e.modular_data(v[1])
    rec = classify(md)
    rejected = dict(rec.rejected)
    for c in enumerate_candidates(md)[1:]:
        reason = rejected.get(c.n)
        first_fail = next((r for r, f in CHAIN if not f(md, c)), None)
        if first_fail is not None:
            assert reason == first_fail.value
        else:
            assert reason in (None, Reason.SEPARABILITY.value)
    total = fpdim(md.ring).fpdim_total
    for a in rec.algebras:
        assert a.lagrangian == (abs(a.fpdim_A ** 2 - total) < 1e-6)
    assert rec.algebras[0].n[1:] == (0,) * (md.ring.rank - 1)
    assert not rec.algebras[0].lagrangian or md.ring.rank == 1
