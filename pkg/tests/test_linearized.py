import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minvalset.errors import (
    BadIndex,
    BaseMismatch,
    DependentBasis,
    Inseparable,
    NotBinomial,
    NotDividing,
    NotLinearized,
    NotMonic,
)
from minvalset.gf import make_field, subfield_elements
from minvalset.linearized import (
    LinearizedPoly,
    SubspaceBasis,
    annihilator,
    binomial_data,
    binomial_reduce,
    cofactor,
    kernel,
    lin_compose,
    lin_evaluate,
    lin_evaluate_all,
    recognize,
    right_cofactor,
)
from minvalset.polyring import compose, divrem, evaluate_all, parse_poly

F9 = make_field(3, 2)
F81 = make_field(3, 4)
F16 = make_field(2, 4)


def lin(ctx, k, coeffs):
    return LinearizedPoly(ctx, k, coeffs)


def test_recognize_and_expand():
    L = recognize(parse_poly(F81, "x^9 + g*x^3 + 2*x"), 1)
    assert L.lcoeffs == (2, F81.generator, 1)
    assert L.degree == 9 and L.qdegree == 2
    assert L.to_poly() == parse_poly(F81, "x^9 + g*x^3 + 2*x")
    assert recognize(parse_poly(F81, "x^9 + x"), 2).lcoeffs == (1, 1)
    with pytest.raises(NotLinearized):
        recognize(parse_poly(F9, "x^2 + x"), 1)
    with pytest.raises(NotLinearized):
        recognize(parse_poly(F81, "x^3"), 2)
    with pytest.raises(BaseMismatch):
        LinearizedPoly.x(F81, 3)
    with pytest.raises(BaseMismatch):
        lin_compose(LinearizedPoly.x(F81, 1), LinearizedPoly.x(F81, 2))


def test_lin_compose_matches_compose():
    rng = random.Random(1)
    for _ in range(200):
        k = rng.choice([1, 2])
        top = 2 if k == 1 else 1
        L1 = lin(F81, k, [rng.randrange(81) for _ in range(rng.randint(1, top + 1))])
        L2 = lin(F81, k, [rng.randrange(81) for _ in range(rng.randint(1, top + 1))])
        comp = lin_compose(L1, L2)
        assert comp.to_poly() == compose(L1.to_poly(), L2.to_poly())
        assert lin_evaluate_all(comp).tolist() == evaluate_all(comp.to_poly()).tolist()


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 80), min_size=1, max_size=4), st.integers(0, 80), st.integers(0, 80))
def test_linearity(coeffs, a, b):
    L = lin(F81, 1, coeffs)
    assert lin_evaluate(L, F81.add(a, b)) == F81.add(lin_evaluate(L, a), lin_evaluate(L, b))
    for c in subfield_elements(F81, 1):
        assert lin_evaluate(L, F81.mul(c, a)) == F81.mul(c, lin_evaluate(L, a))


def _random_subspace(rng, ctx, k, m):
    while True:
        try:
            return SubspaceBasis(ctx, k, tuple(rng.randrange(1, ctx.q) for _ in range(m)))
        except DependentBasis:
            continue


def test_annihilator_kernel_is_span():
    rng = random.Random(2)
    for ctx, k in ((F81, 1), (F81, 2), (F16, 1), (F16, 2), (F9, 1)):
        for m in range(1, ctx.n // k + 1):
            for _ in range(5):
                U = _random_subspace(rng, ctx, k, m)
                A = annihilator(U)
                assert A.is_monic() and A.degree == U.size
                assert kernel(A) == U.span()
                assert all(u in U for u in U.span())
                assert SubspaceBasis.from_elements(ctx, k, U.span()).span() == U.span()


def test_dependent_basis():
    with pytest.raises(DependentBasis):
        SubspaceBasis(F81, 1, (1, 2))
    with pytest.raises(DependentBasis):
        SubspaceBasis(F81, 2, (1, 1))
    g = F81.generator
    b = F81.pow(g, 10)  # in F_9
    with pytest.raises(DependentBasis):
        SubspaceBasis(F81, 2, (1, b))


def _rand_lin(rng, ctx, k, top, separable=True):
    c = [rng.randrange(ctx.q) for _ in range(top + 1)]
    if separable and c[0] == 0:
        c[0] = 1
    if c[-1] == 0:
        c[-1] = 1
    return lin(ctx, k, c)


def test_cofactor_iff_polynomial_division():
    rng = random.Random(3)
    hits = 0
    for _ in range(200):
        L = _rand_lin(rng, F81, 1, rng.randint(0, 2))
        if rng.random() < 0.5:
            M = _rand_lin(rng, F81, 1, rng.randint(0, 2), separable=False)
            L1 = lin_compose(M, L)
        else:
            L1 = _rand_lin(rng, F81, 1, rng.randint(0, 3), separable=False)
        res = cofactor(L, L1)
        _, r = divrem(L1.to_poly(), L.to_poly())
        assert (res is not None) == r.is_zero()
        if res is not None:
            hits += 1
            assert lin_compose(res, L) == L1
        rc = right_cofactor(L, L1)
        if rc is not None:
            assert lin_compose(L, rc) == L1
    assert hits >= 80


def test_subspace_cofactor_commutes():
    rng = random.Random(4)
    for k in (1, 2):
        full = LinearizedPoly.binomial(F81, k, 4 // k, 1)
        for m in range(1, 4 // k + 1):
            U = _random_subspace(rng, F81, k, m)
            A = annihilator(U)
            M = cofactor(A, full)
            assert lin_compose(M, A) == full == lin_compose(A, M)


def test_binomial_reduce_all_m():
    rng = random.Random(5)
    for ctx, k in ((F81, 1), (F81, 2), (F16, 1)):
        n = ctx.n // k
        for _ in range(10):
            j = rng.randrange(0, n)
            i = rng.randrange(j + 1, n + 1)
            c = [0] * (i + 1)
            c[i] = rng.randrange(1, ctx.q)
            c[j] = rng.randrange(1, ctx.q)
            B = lin(ctx, k, c)
            for m in range(i, 2 * n + 1):
                T, cm, s = binomial_reduce(B, m)
                assert s < i
                rhs = lin_compose(B, T) + LinearizedPoly.monomial(ctx, k, cm, s)
                assert rhs == LinearizedPoly.monomial(ctx, k, 1, m)
    B = lin(F81, 1, (1, 0, 1))
    with pytest.raises(BadIndex):
        binomial_reduce(B, 1)
    with pytest.raises(NotBinomial):
        binomial_reduce(lin(F81, 1, (1, 1, 1)), 3)


def test_binomial_data_over_f81():
    g = F81.generator
    F9_codes = set(subfield_elements(F81, 2))
    seen_d = set()
    for beta in range(2, 81):
        if beta in F9_codes:
            continue
        U = SubspaceBasis(F81, 1, (1, beta))
        A = annihilator(U)
        bd = binomial_data(A)
        target = LinearizedPoly.binomial(F81, 1, bd.d_A, bd.alpha_A)
        assert lin_compose(A, bd.M_A) == target
        assert 2 <= bd.d_A <= 4
        seen_d.add(bd.d_A)
    assert 4 in seen_d
    # A = x: M = x^3 - x
    bd = binomial_data(LinearizedPoly.x(F81, 1))
    assert bd.d_A == 1 and bd.M_A == LinearizedPoly.binomial(F81, 1, 1, 1)
    # the subfield F_9 itself: A = x^9 - x, d = 2, alpha = 1
    A = annihilator(SubspaceBasis(F81, 1, (1, F81.pow(g, 10))))
    bd = binomial_data(A)
    assert bd.d_A == 2 and bd.alpha_A == 1


def test_binomial_data_minimal():
    rng = random.Random(6)
    for _ in range(15):
        U = _random_subspace(rng, F81, 1, 2)
        A = annihilator(U)
        bd = binomial_data(A)
        # no binomial multiple of smaller q-degree: try every alpha
        for d in range(A.qdegree, bd.d_A):
            for alpha in range(81):
                assert right_cofactor(A, LinearizedPoly.binomial(F81, 1, d, alpha)) is None


def test_binomial_data_errors():
    g = F81.generator
    with pytest.raises(NotMonic):
        binomial_data(lin(F81, 1, (1, 2)))
    with pytest.raises(Inseparable):
        binomial_data(lin(F81, 1, (0, 1)))
    # x^3 - g x has only the root 0 in F_81 since g is not a square
    with pytest.raises(NotDividing):
        binomial_data(lin(F81, 1, (F81.neg(g), 1)))


def test_binomial_reduce_examples():
    B = lin(F81, 1, (1, 0, 1))  # x^9 + x
    T, c, s = binomial_reduce(B, 2)
    assert T == LinearizedPoly.x(F81, 1) and s == 0 and c == F81.neg(1)
    T, c, s = binomial_reduce(B, 3)
    assert lin_compose(B, T) + LinearizedPoly.monomial(F81, 1, c, s) == LinearizedPoly.monomial(F81, 1, 1, 3)
    with pytest.raises(BadIndex):
        binomial_reduce(lin(F81, 1, (1, 1)), 0)
    # base coefficient carries a negative Frobenius exponent: c = -b * a^(-q0^(j-i))
    g = F81.generator
    B = lin(F81, 1, (g, 0, F81.pow(g, 7)))
    _, c, _ = binomial_reduce(B, 2)
    assert c == F81.neg(F81.mul(g, F81.inv(F81.frob(F81.pow(g, 7), -2))))
