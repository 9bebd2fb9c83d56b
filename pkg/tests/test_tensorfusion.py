import pytest
from hypothesis import given, settings, strategies as st

from ncomplexes import (
    ComplexError,
    Matrix,
    NComplex,
    PrimeField,
    dimension_vector,
    indecomposable,
    random_ncomplex,
    validate,
)
from ncomplexes.decompose import decompose
from ncomplexes.tensorfusion import RootOfUnity, clebsch_gordan, fusion_check, nilpotency_failures, tensor


def test_root_of_unity_requires_exact_order():
    f = PrimeField(7)
    assert RootOfUnity(f, 2, 3).q == 2
    assert RootOfUnity.primitive(f, 6).q == 3
    with pytest.raises(ComplexError):
        RootOfUnity(f, 6, 3)  # order 2
    with pytest.raises(ComplexError):
        RootOfUnity(f, 0, 3)


def test_tensor_of_two_length_one_pieces_by_hand():
    # basis: degree 0 {e0 x e0}; degree 1 {e0 x e1, e1 x e0}; degree 2 {e1 x e1}
    f = PrimeField(7)
    q = RootOfUnity(f, 2, 3)
    M = indecomposable(f, 3, 0, 1)
    T = tensor(M, M, q)
    assert T.lo == 0 and T.dims == (1, 2, 1)
    # d(e0 x e0) = e0 x e1 + q^0 e1 x e0
    assert T.maps[0].tolist() == [[1], [1]]
    # d(e0 x e1) = q^1 e1 x e1 ;  d(e1 x e0) = e1 x e1
    assert T.maps[1].tolist() == [[2, 1]]
    assert validate(T) is None
    assert decompose(T) == {(0, 2): 1, (1, 0): 1}


def test_simple_times_simple(F7):
    q = RootOfUnity.primitive(F7, 3)
    for i in range(-2, 3):
        for j in range(-2, 3):
            T = tensor(indecomposable(F7, 3, i, 0), indecomposable(F7, 3, j, 0), q)
            assert decompose(T) == {(i + j, 0): 1}


@pytest.mark.parametrize("N, p", [(2, 5), (3, 7), (4, 13), (5, 11), (6, 7)])
def test_gunnlaugsdottir_axioms(N, p):
    f = PrimeField(p)
    q = RootOfUnity.primitive(f, N)
    step = indecomposable(f, N, 0, 1)
    for j in range(-1, 3):
        for u in range(N - 1):
            got = decompose(tensor(step, indecomposable(f, N, j, u), q))
            want = {(j, u + 1): 1}
            if u >= 1:
                want[(j + 1, u - 1)] = 1
            assert got == want
        got = decompose(tensor(step, indecomposable(f, N, j, N - 1), q))
        assert got == {(j, N - 1): 1, (j + 1, N - 1): 1}


def test_clebsch_gordan_examples():
    for N in range(2, 7):
        assert clebsch_gordan(N, 2, 0, -1, 0) == {(1, 0): 1}
    assert clebsch_gordan(3, 0, 1, 0, 1) == {(0, 2): 1, (1, 0): 1}
    with pytest.raises(ValueError):
        clebsch_gordan(3, 0, 3, 0, 0)


def test_clebsch_gordan_dimension_identity():
    for N in range(2, 7):
        for u in range(N):
            for v in range(N):
                ms = clebsch_gordan(N, 0, u, 0, v)
                assert ms.total_dim() == (u + 1) * (v + 1)
                assert all(n == 1 for n in ms.values())


@pytest.mark.parametrize("N, p, window, cases", [(2, 5, range(2), 16), (3, 7, range(3), 81), (5, 11, range(2), 100)])
def test_fusion_check(N, p, window, cases):
    report = fusion_check(N, p, window)
    assert report.cases == cases
    assert report.ok, report.mismatches


@given(st.integers(0, 10**6), st.integers(0, 10**6), st.sampled_from([(2, 5), (3, 7), (4, 5), (5, 11)]))
@settings(max_examples=40, deadline=None)
def test_tensor_validity_and_dimensions(s1, s2, Np):
    N, p = Np
    f = PrimeField(p)
    q = RootOfUnity.primitive(f, N)
    A, _ = random_ncomplex(f, N, (-1, 2), 4, s1)
    B, _ = random_ncomplex(f, N, (0, 2), 4, s2)
    T = tensor(A, B, q)
    assert validate(T) is None
    da, db, dt = dimension_vector(A), dimension_vector(B), dimension_vector(T)
    for i in set(dt) | {x + y for x in da for y in db}:
        assert dt.get(i, 0) == sum(da[x] * db.get(i - x, 0) for x in da)


@pytest.mark.parametrize("N, p", [(3, 7), (4, 5)])
def test_fusion_associative(N, p):
    f = PrimeField(p)
    q = RootOfUnity.primitive(f, N)
    pieces = [indecomposable(f, N, i, l) for i in range(2) for l in range(N)]
    for A in pieces[::2]:
        for B in pieces[1::2]:
            for C in pieces[::3]:
                left = decompose(tensor(tensor(A, B, q), C, q))
                right = decompose(tensor(A, tensor(B, C, q), q))
                assert left == right


def test_tensor_rejects_mismatches(F7):
    q = RootOfUnity.primitive(F7, 3)
    with pytest.raises(ComplexError):
        tensor(indecomposable(F7, 3, 0, 0), indecomposable(F7, 2, 0, 0), q)
    with pytest.raises(ComplexError):
        tensor(indecomposable(F7, 2, 0, 0), indecomposable(F7, 2, 0, 0), q)


def test_tensor_with_zero(F7):
    q = RootOfUnity.primitive(F7, 3)
    assert tensor(indecomposable(F7, 3, 0, 2), NComplex.zero(F7, 3), q).is_zero()


def test_non_primitive_root_breaks_nilpotency():
    # q = -1 has order 2 in F_5, not 4
    bad = nilpotency_failures(4, 5, 4)
    assert bad
    assert nilpotency_failures(4, 5, 2) == []
    # the trivial root gives the untwisted product, which fails too
    assert nilpotency_failures(3, 7, 1)
