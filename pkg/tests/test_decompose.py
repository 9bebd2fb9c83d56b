from itertools import combinations_with_replacement

import pytest
from hypothesis import given, settings, strategies as st

from ncomplexes import (
    NComplex,
    PrimeField,
    SummandMultiset,
    assemble,
    direct_sum,
    indecomposable,
    random_ncomplex,
)
from ncomplexes.cohomology import AHTable, ah_table
from ncomplexes.decompose import InconsistentTableError, decompose, iso, peel_nonprojectives, stably_equal


def test_peel_examples():
    assert peel_nonprojectives(AHTable(3), 3) == SummandMultiset()
    t = AHTable(3, {(4, 2): 1, (5, 1): 1})
    assert peel_nonprojectives(t, 3) == {(4, 1): 1}


def test_peel_rejects_inconsistent_table():
    # M_0^0 at N=3 needs both amplitudes at degree 0
    with pytest.raises(InconsistentTableError):
        peel_nonprojectives(AHTable(3, {(0, 1): 1}), 3)
    with pytest.raises(ValueError):
        peel_nonprojectives(AHTable(4), 3)


@pytest.mark.parametrize("N", range(2, 7))
def test_peel_recovers_nonprojective_part(N):
    f = PrimeField(7)
    for seed in range(15):
        M, ms = random_ncomplex(f, N, (-2, 3), 6, seed, lengths=range(N - 1))
        assert peel_nonprojectives(ah_table(M), N) == ms


def test_decompose_examples(F5):
    assert decompose(NComplex.zero(F5, 3)) == SummandMultiset()
    for N in range(2, 7):
        P = indecomposable(F5, N, 0, N - 1)
        assert not ah_table(P)
        assert decompose(P) == {(0, N - 1): 1}


@pytest.mark.parametrize("N", range(2, 7))
def test_round_trip_with_basis_change(N):
    f = PrimeField(5)
    for seed in range(20):
        M, ms = random_ncomplex(f, N, (-1, 4), 8, seed)
        assert decompose(M) == ms
        assert decompose(assemble(ms, f, N)) == ms


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(0, 3)), st.integers(1, 3), max_size=5),
       st.integers(0, 2**32))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(raw, seed):
    f = PrimeField(11)
    ms = SummandMultiset(raw)
    assert decompose(assemble(ms, f, 4, seed=seed)) == ms


def test_decomposition_is_injective_on_small_family():
    # every multiset of at most two summands from a small pool gives a distinct complex
    f = PrimeField(3)
    N = 3
    pool = [(i, l) for i in range(0, 3) for l in range(N)]
    seen = {}
    for k in range(3):
        for combo in combinations_with_replacement(pool, k):
            ms = SummandMultiset((c, 1) for c in combo)
            got = decompose(assemble(ms, f, N, seed=k))
            assert got == ms
            assert got not in seen
            seen[got] = ms


def test_iso_and_stable_equality(F5):
    N = 4
    A, _ = random_ncomplex(F5, N, (0, 3), 6, 8)
    assert iso(A, A)
    S = indecomposable(F5, N, 0, 0)
    big = direct_sum(S, indecomposable(F5, N, 0, N - 1))
    assert not iso(big, S)
    assert stably_equal(big, S)
    ms = {(0, 1): 2, (2, 3): 1}
    assert iso(assemble(ms, F5, N, seed=1), assemble(ms, F5, N, seed=2))
    with pytest.raises(ValueError):
        iso(A, indecomposable(F5, 3, 0, 0))


def test_window_counterexample(F5):
    N, K = 3, 8
    A = assemble({(i, 0): 1 for i in range(K + 1)}, F5, N)
    B = assemble({(i, 1): 1 for i in range(K)}, F5, N)
    ta, tb = ah_table(A), ah_table(B)
    assert ta.restrict(1, K - 1) == tb.restrict(1, K - 1)
    assert not iso(A, B)
    assert not stably_equal(A, B)
    # the two tables only differ at the boundary degrees
    diff = {k for k in set(ta) | set(tb) if ta[k] != tb[k]}
    assert diff == {(0, 1), (K, 2)}
