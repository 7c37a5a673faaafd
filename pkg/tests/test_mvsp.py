import random

import numpy as np
import pytest

from minvalset import fplinalg
from minvalset.errors import (
    BadHypotheses,
    BadParams,
    BadSelector,
    BadSubspace,
    ConstraintViolated,
    InnerNotMvsp,
    NotCertified,
    NotInW,
    TooFewValues,
)
from minvalset.gf import make_field, subfield_elements
from minvalset.linearized import LinearizedPoly, SubspaceBasis, annihilator, binomial_data, lin_compose
from minvalset.mvsp import (
    SELECTORS,
    affine_transform,
    conjecture_params,
    construct_power,
    construct_subspace_family,
    in_w,
    lin_compose_poly,
    mills_decompose,
    millsbor_check,
    p4_families,
    power_contract,
    predicted_value_set,
    small_valueset_poly,
    subspace_cofactor,
    w_decompose,
    w_elements,
    w_space,
)
from minvalset.polyring import Poly, compose, parse_poly
from minvalset.valueset import fiber_sizes, is_mvsp, value_set

F9 = make_field(3, 2)
F16 = make_field(2, 4)
F25 = make_field(5, 2)
F81 = make_field(3, 4)


def P(text, ctx=F9):
    return parse_poly(ctx, text)


def test_millsbor_matches_minimality():
    rng = random.Random(10)
    seen = {True: 0, False: 0}
    for ctx in (F9, F16, F25):
        for _ in range(400):
            deg = rng.randint(1, 6)
            c = [rng.randrange(ctx.q) for _ in range(deg)] + [rng.randrange(1, ctx.q)]
            f = Poly(ctx, c)
            if len(value_set(f)) <= 2:
                with pytest.raises(TooFewValues):
                    millsbor_check(f)
                continue
            res = millsbor_check(f)
            assert (res is not None) == is_mvsp(f)
            seen[res is not None] += 1
    assert seen[True] >= 20 and seen[False] >= 100


def test_mills_decompose_squares():
    cert = mills_decompose(P("x^2"))
    assert (cert.k, cert.m, cert.v, cert.gamma0) == (1, 2, 2, 0)
    assert cert.audit["alternatives"] == [[2, 1, 2]]
    assert cert.check() == []
    assert cert.r == 4


def test_mills_decompose_power_of_trace_like():
    cert = mills_decompose(P("x^6 + x^4 + x^2", F81))  # (x^3 - x)^2
    assert (cert.gamma0, cert.v, cert.m, cert.k) == (0, 2, 3, 1)
    assert cert.check() == []
    with pytest.raises(TooFewValues):
        mills_decompose(P("x^6 + x^4 + x^2"))
    with pytest.raises(NotCertified):
        mills_decompose(P("x^4 + x"))


def test_certificates_over_all_small_mvsps():
    # every MVSP of degree <= 4 over F_9 with more than two values certifies
    from minvalset.search import SearchTask, enumerate_mvsps

    report = enumerate_mvsps(SearchTask(F9, 1, 4))
    assert report.violations == []
    for hit in report.hits:
        f = Poly(F9, hit["coeffs"])
        if len(value_set(f)) > 2:
            cert = mills_decompose(f)
            assert cert.check() == []
            # the fibre over gamma0 is the smallest one
            assert fiber_sizes(f)[cert.gamma0] == min(cert.fibers.values())


def test_power_contract():
    # an MVSP whose value set is the F_3-span of 1 and g
    U = SubspaceBasis(F81, 1, (1, F81.generator))
    f = construct_subspace_family(U, P("x", F81))
    res = power_contract(f, 2)
    assert res["within_hypotheses"] and res["ok"]
    # x^3 - x maps onto the trace-zero hyperplane, which misses 1
    assert not power_contract(P("x^3 - x", F81), 2)["within_hypotheses"]
    assert not power_contract(P("x^4 + x"), 2)["within_hypotheses"]
    with pytest.raises(BadParams):
        construct_power(P("x"), 0)


def test_subspace_cofactor_and_family():
    g = F81.generator
    U = SubspaceBasis(F81, 1, (1, g))
    d, A, M = subspace_cofactor(U)
    assert d == 4
    full = LinearizedPoly.binomial(F81, 1, 4, 1)
    assert lin_compose(A, M) == full == lin_compose(M, A)
    F = construct_subspace_family(U, P("g*x + 1", F81))
    assert is_mvsp(F) and value_set(F) == U.span()
    # U = F_9 needs an inner MVSP onto F_9
    U9 = SubspaceBasis(F81, 1, (1, F81.pow(g, 10)))
    F = construct_subspace_family(U9, P("x^10", F81))
    assert is_mvsp(F) and value_set(F) == U9.span()
    with pytest.raises(InnerNotMvsp):
        construct_subspace_family(U9, P("x", F81))
    with pytest.raises(BadSubspace):
        subspace_cofactor(SubspaceBasis(F81, 1, (g,)))
    with pytest.raises(BadSubspace):
        subspace_cofactor(SubspaceBasis(F16, 1, (1,)))
    d, A, M = subspace_cofactor(SubspaceBasis(F81, 1, (1,)))
    assert d == 1 and M == LinearizedPoly.x(F81, 1)


def _family_params(rng, ctx, selector):
    Fp, Fp2 = subfield_elements(ctx, 1), subfield_elements(ctx, 2)
    q = ctx.q
    if selector == "monomial":
        return {"v": rng.choice([v for v in range(1, q - 1) if (q - 1) % v == 0])}
    if selector == "subfield_p":
        return {"t": 1, "a": rng.choice(Fp), "f": rng.choice(Fp), "d": rng.choice(Fp2),
                "b": rng.randrange(q), "c": rng.randrange(q), "e": rng.randrange(q)}
    if selector == "subfield_p2":
        return {"t": rng.choice([1, 2, 4]), "a": rng.choice(Fp2), "b": rng.randrange(q),
                "c": rng.choice(Fp2)}
    if selector == "dim2":
        return {"v": rng.choice([1, 2]), "beta": rng.choice([b for b in range(q) if b not in Fp])}
    return {"v": rng.choice([1, 2])}


@pytest.mark.parametrize("selector", SELECTORS)
def test_families(selector):
    rng = random.Random(hash(selector) % 1000)
    done = 0
    while done < 15:
        params = _family_params(rng, F81, selector)
        try:
            F = p4_families(F81, selector, **params)
        except ConstraintViolated as exc:
            assert str(exc) == "nonconstant"
            continue
        assert is_mvsp(F), params
        assert value_set(F) == predicted_value_set(F81, selector, **params)
        if len(value_set(F)) > 2:
            assert millsbor_check(F) is not None
        done += 1


def test_family_constraints():
    g = F81.generator
    with pytest.raises(ConstraintViolated, match="a_in_Fp"):
        p4_families(F81, "subfield_p", a=g, b=1)
    with pytest.raises(ConstraintViolated, match="t_proper"):
        p4_families(F81, "subfield_p2", t=8, b=1)
    with pytest.raises(ConstraintViolated, match="beta_not_in_Fp"):
        p4_families(F81, "dim2", beta=2)
    with pytest.raises(ConstraintViolated, match="n_is_4"):
        p4_families(F9, "monomial", v=2)
    with pytest.raises(BadSelector):
        p4_families(F81, "dim4")


def test_affine_transform():
    rng = random.Random(11)
    F = p4_families(F81, "dim3", v=2)
    V = value_set(F)
    for _ in range(10):
        a, u = rng.randrange(1, 81), rng.randrange(1, 81)
        b, w = rng.randrange(81), rng.randrange(81)
        G = affine_transform(F, a, b, u, w)
        assert value_set(G) == sorted({F81.add(F81.mul(a, y), b) for y in V})
        assert is_mvsp(G)
    with pytest.raises(BadParams):
        affine_transform(F, 0, 1, 1, 0)


def test_w_space_and_decompose():
    rng = random.Random(12)
    g = F81.generator
    U = SubspaceBasis(F81, 1, (1, g))
    A = annihilator(U)
    basis = w_space(A, 80)
    for row in basis:
        f = Poly(F81, [int(c) for c in row])
        assert in_w(A, f)
    for _ in range(100):
        coeffs = np.zeros(81, dtype=np.int64)
        for row in basis:
            s = rng.randrange(3)
            for _ in range(s):
                coeffs = np.array([F81.add(int(x), int(y)) for x, y in zip(coeffs, row)])
        F = Poly(F81, [int(c) for c in coeffs])
        assert in_w(A, F)
        G = w_decompose(A, F)
        bd = binomial_data(A)
        assert lin_compose_poly(bd.M_A, G) == F
        assert in_w(LinearizedPoly.binomial(F81, 1, bd.d_A, bd.alpha_A), G)
    assert len(list(w_elements(A, 80))) == 3 ** len(basis)
    with pytest.raises(NotInW):
        w_decompose(A, P("x^2", F81))


def test_w_space_contains_the_mvsps():
    # nonconstant members of W(A) of degree <= q - 1 map into ker A
    g = F81.generator
    U = SubspaceBasis(F81, 1, (1, g))
    A = annihilator(U)
    span = set(U.span())
    for F in w_elements(A, 80):
        if not F.is_constant():
            assert set(value_set(F)) <= span


def test_conjecture_params():
    g = F81.generator
    U9 = SubspaceBasis(F81, 1, (1, F81.pow(g, 10)))
    info = conjecture_params(U9, 2)
    assert info["is_field"] and info["e"] == 2 and info["t"] == 2
    info = conjecture_params(SubspaceBasis(F81, 1, (1, g)), 1)
    assert not info["is_field"] and info["d"] == 4
    with pytest.raises(BadHypotheses):
        conjecture_params(U9, 3)
    with pytest.raises(BadHypotheses):
        conjecture_params(SubspaceBasis(F81, 1, (g,)), 1)


def test_small_valueset_poly():
    f = small_valueset_poly(F9, "one", alpha=4, G=P("x^2 + 1"))
    assert value_set(f) == [4]
    subset = [0, 3, 7]
    f = small_valueset_poly(F9, "two", alpha=2, beta=5, subset=subset)
    assert all(f(a) == (2 if a in subset else 5) for a in range(9))
    with pytest.raises(BadParams):
        small_valueset_poly(F9, "two", alpha=2, beta=2, subset=subset)
    with pytest.raises(BadParams):
        small_valueset_poly(F9, "one", alpha=1, G=Poly.zero(F9))
    with pytest.raises(BadParams):
        small_valueset_poly(F9, "three")
