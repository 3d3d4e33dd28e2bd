from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mfc.fusion_ring import fpdim
from mfc.nimrep import (IdentificationError, NimRep, SearchSpaceError, canonical_form, check_nimrep,
                        identify_modules, perron_vector, regular_nimrep, search_nimreps)

from conftest import FIB, ISING, VECT

ZETA = (1 + math.sqrt(5)) / 2
ROOT3 = math.sqrt(3)

FIBFIB_REP = NimRep(2, ([[1, 0], [0, 1]], [[0, 1], [1, 1]], [[0, 1], [1, 1]], [[1, 1], [1, 2]]))
SU24_REP = NimRep(4, (
    np.eye(4, dtype=int),
    np.eye(4, dtype=int),
    [[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 0]],
    [[0, 0, 0, 1], [0, 0, 0, 1], [0, 0, 0, 1], [1, 1, 1, 0]],
    [[0, 1, 1, 0], [1, 0, 1, 0], [1, 1, 0, 0], [0, 0, 0, 2]],
))


def _contains_up_to_relabeling(reps, rep):
    return canonical_form(rep) in reps


def test_fibfib_two_dimensional(rings):
    ring = rings["fib_fib"]
    assert check_nimrep(ring, FIBFIB_REP) == []
    reps = search_nimreps(ring, 2)
    assert _contains_up_to_relabeling(reps, FIBFIB_REP)


def test_su24_four_dimensional(rings):
    ring = rings["su2_4"]
    assert check_nimrep(ring, SU24_REP) == []
    reps = search_nimreps(ring, 4, indecomposable=True)
    assert _contains_up_to_relabeling(reps, SU24_REP)


def test_fibfib_identification(rings):
    ring = rings["fib_fib"]
    d = (1, ZETA, ZETA, ZETA ** 2)
    ident = identify_modules(ring, d, (1, 0, 0, 1), FIBFIB_REP)
    assert ident.images == ((1, 0, 0, 1), (0, 1, 1, 1))
    assert ident.module_qdims == pytest.approx((1, ZETA), abs=1e-9)
    assert sum(x * x for x in ident.module_fpdims) == pytest.approx(fpdim(ring).fpdim_total / (1 + ZETA ** 2))


@pytest.mark.parametrize("sign", [1, -1])
def test_su24_identification(rings, sign):
    ring = rings["su2_4"]
    d = (1, 1, sign * ROOT3, sign * ROOT3, 2)
    ident = identify_modules(ring, d, (1, 1, 0, 0, 0), SU24_REP)
    assert ident.images == ((1, 1, 0, 0, 0), (0, 0, 0, 0, 1), (0, 0, 0, 0, 1), (0, 0, 1, 1, 0))
    assert ident.module_qdims == pytest.approx((1, 1, 1, sign * ROOT3), abs=1e-9)
    assert sum(x * x for x in ident.module_fpdims) == pytest.approx(6)


def test_trivial_algebra_regular_rep(rings):
    ring = rings["psu2_7"]
    d = fpdim(ring).fpdim_simple
    ident = identify_modules(ring, d, (1, 0, 0, 0), regular_nimrep(ring))
    assert ident.images == tuple(tuple(int(i == a) for i in range(4)) for a in range(4))
    assert ident.module_qdims == pytest.approx(d)


def test_identification_failure(rings):
    with pytest.raises(IdentificationError):
        identify_modules(rings["fib_fib"], (1, ZETA, ZETA, ZETA ** 2), (1, 1, 0, 0), FIBFIB_REP)


@pytest.mark.parametrize("name", ["z2z2", "vec_z4", "su2_3", "fib_fib", "psu2_7", "su5_1", "su2_4", "psu2_9"])
def test_regular_rep_found(rings, name):
    ring = rings[name]
    reps = search_nimreps(ring, ring.rank)
    assert canonical_form(regular_nimrep(ring)) in reps


def test_small_rings():
    assert search_nimreps(VECT, 1) == [NimRep(1, ([[1]],))]
    assert len(search_nimreps(FIB, 2, indecomposable=True)) == 1
    assert search_nimreps(FIB, 1) == []
    ising = search_nimreps(ISING, 3, indecomposable=True)
    assert len(ising) == 1 and canonical_form(regular_nimrep(ISING)) in ising


def test_cap_and_bad_dimension(rings):
    with pytest.raises(SearchSpaceError):
        search_nimreps(rings["fib_fib"], 9)
    with pytest.raises(SearchSpaceError):
        search_nimreps(rings["fib_fib"], 3, max_dim=2)
    with pytest.raises(ValueError):
        search_nimreps(rings["fib_fib"], 0)


@pytest.mark.parametrize("name,r", [("fib_fib", 2), ("fib_fib", 4), ("su2_4", 4), ("psu2_7", 4), ("z2z2", 4),
                                    ("psu3_4", 5), ("su5_1", 5)])
def test_returned_reps_are_sound(rings, name, r):
    ring = rings[name]
    fp = fpdim(ring).fpdim_simple
    reps = search_nimreps(ring, r)
    assert len(set(reps)) == len(reps)
    for rep in reps:
        assert check_nimrep(ring, rep) == []
        assert rep == canonical_form(rep)
        for i, m in enumerate(rep.matrices):
            assert np.all((m * m).sum(axis=1) <= fp[i] ** 2 + 1e-9)
        if rep.is_indecomposable():
            v = perron_vector(rep)
            for i, m in enumerate(rep.matrices):
                # Perron-Frobenius: the common positive eigenvector has eigenvalue FPdim
                assert np.allclose(m @ v, fp[i] * v, atol=1e-8)


def test_z2z2_rank_four(rings):
    reps = search_nimreps(rings["z2z2"], 4)
    assert sum(r.is_indecomposable() for r in reps) == 1


def test_decomposable_sums_found(rings):
    # two copies of the 2-dim Fib x Fib NIM-rep
    reps = search_nimreps(rings["fib_fib"], 4)
    block = NimRep(4, tuple(np.kron(np.eye(2, dtype=int), m) for m in FIBFIB_REP.matrices))
    assert canonical_form(block) in reps


def test_check_nimrep_detects_errors(rings):
    broken = NimRep(2, ([[1, 0], [0, 1]], [[0, 1], [1, 1]], [[0, 1], [1, 0]], [[1, 1], [1, 2]]))
    assert check_nimrep(rings["fib_fib"], broken)


@settings(max_examples=40, deadline=None)
@given(st.permutations(range(4)))
def test_canonical_form_is_permutation_invariant(perm):
    assert canonical_form(SU24_REP.permuted(perm)) == canonical_form(SU24_REP)
    assert SU24_REP.permuted(perm).is_indecomposable()


def test_nimrep_json():
    data = SU24_REP.to_dict()
    assert NimRep(data["dim"], tuple(np.array(m) for m in data["matrices"])) == SU24_REP
