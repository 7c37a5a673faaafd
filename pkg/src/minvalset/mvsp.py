"""Certificates and constructions for minimal value set polynomials.

Certification uses the functional equation T(F) = theta*(x^q - x)*F' where T
vanishes exactly on the value set; the structural decomposition writes an MVSP
as F = L^v * N^{p^{mk}} + gamma0. Constructions cover powers, compositions
M(f) with subspace cofactors, the explicit families over F_{p^4}, the
W(A) spaces of linearized-annihilator solutions and the one/two-value forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import fplinalg
from .errors import (
    BadHypotheses,
    BadParams,
    BadSelector,
    BadSubspace,
    BudgetExceeded,
    ConstraintViolated,
    InnerNotMvsp,
    InternalConsistencyError,
    NoConsistentTriple,
    NoSolution,
    NotCertified,
    NotInW,
    TooFewValues,
    UnsupportedInnerSource,
)
from .gf import FieldContext, divisors, format_element, smallest_subfield_degree
from .linearized import (
    LinearizedPoly,
    SubspaceBasis,
    annihilator,
    binomial_data,
    cofactor,
    lin_compose,
    lin_evaluate_all,
)
from .polyring import (
    Poly,
    compose,
    derivative,
    divrem,
    format_poly,
    frobenius_power,
    gcd_with_xq_minus_x,
    mul_xq_minus_x,
    nth_root,
    pth_root,
)
from .valueset import _check_degree, _subfield, fiber_sizes, is_mvsp, value_set, vec_pow

# -- Mills-Borges certification ----------------------------------------------------


def millsbor_check(F: Poly):
    """(T, theta) with T(F) = theta*(x^q - x)*F', or None when F is not an MVSP."""
    d = _check_degree(F)
    ctx = F.ctx
    V = value_set(F)
    if len(V) <= 2:
        raise TooFewValues(f"value set has {len(V)} elements; need more than 2")
    dF = derivative(F)
    # T monic of degree #V, so deg T(F) = #V * deg F; compare with the right side first
    if dF.is_zero() or len(V) * d != ctx.q + dF.degree:
        return None
    T = Poly.from_roots(ctx, V)
    rhs = mul_xq_minus_x(dF)
    lhs = compose(T, F)
    theta = ctx.div(lhs.lead, rhs.lead)
    if lhs != rhs.scale(theta):
        return None
    return T, theta


@dataclass
class MvspCertificate:
    F: Poly
    gamma0: int
    T: Poly
    theta: int
    L: Poly
    N: Poly
    v: int
    m: int
    k: int
    w: list
    fibers: dict
    audit: dict = field(default_factory=dict)

    @property
    def r(self) -> int:
        return len(self.fibers) - 1

    def check(self) -> list[str]:
        """Names of the invariants that fail (empty when the certificate is sound)."""
        F, ctx = self.F, self.F.ctx
        p = ctx.p
        bad = []
        if compose(self.T, F) != mul_xq_minus_x(derivative(F)).scale(self.theta):
            bad.append("functional_equation")
        pmk = p ** (self.m * self.k)
        if self.L**self.v * frobenius_power(self.N, self.m * self.k) + Poly.const(ctx, self.gamma0) != F:
            bad.append("decomposition")
        if (p**self.k - 1) % self.v or self.v * self.r + 1 != pmk:
            bad.append("parameters")
        if divrem(self.N, self.L)[1].is_zero():
            bad.append("L_divides_N")
        dT = derivative(self.T)
        if any(ctx.neg(dT(g)) != self.theta for g in self.fibers if g != self.gamma0):
            bad.append("theta")
        if _w_vector(self.T, self.gamma0, self.v, self.m, self.k) != self.w:
            bad.append("w_shape")
        return bad

    def to_json(self) -> dict:
        return {
            "gamma0": self.gamma0,
            "theta": self.theta,
            "v": self.v,
            "m": self.m,
            "k": self.k,
            "T": format_poly(self.T),
            "L": format_poly(self.L),
            "N": format_poly(self.N),
            "w": list(self.w),
            "fibers": {str(g): c for g, c in sorted(self.fibers.items())},
            "audit": self.audit,
        }


def _w_vector(T: Poly, gamma0: int, v: int, m: int, k: int):
    """w_0..w_m with T(x + gamma0)/x = sum w_i x^{(p^{ki}-1)/v}, or None."""
    ctx = T.ctx
    p = ctx.p
    shifted = compose(T, Poly(ctx, (gamma0, 1)))
    if shifted[0] != 0:
        return None
    inner = Poly(ctx, shifted.coeffs[1:])
    exps = [(p ** (k * i) - 1) // v for i in range(m + 1)]
    w = [inner[e] for e in exps]
    if any(c and e not in exps for e, c in enumerate(inner.coeffs)):
        return None
    if w[m] != 1 or w[0] == 0:
        return None
    return w


def _pk_root(f: Poly, s: int):
    """f^{1/p^s} by repeated coefficient-wise p-th roots, or None."""
    try:
        for _ in range(s):
            f = pth_root(f)
    except ValueError:
        return None
    return f


def _ab_shape(L: Poly, pmk: int):
    """A, B with L = A^{p^{mk}} x + B^p, when the exponents of L allow it."""
    ctx = L.ctx
    p = ctx.p
    a_terms, b_terms = {}, {}
    for e, c in enumerate(L.coeffs):
        if not c:
            continue
        if e % p == 0:
            b_terms[e // p] = ctx.frob(c, -1)
        elif (e - 1) % pmk == 0:
            s = 0
            while p**s < pmk:
                s += 1
            a_terms[(e - 1) // pmk] = ctx.frob(c, -s)
        else:
            return None
    return Poly.from_terms(ctx, a_terms), Poly.from_terms(ctx, b_terms)


def _triples(ctx: FieldContext, r: int):
    p = ctx.p
    for k in divisors(ctx.n):
        for m in range(1, ctx.n // k + 1):
            pmk = p ** (m * k)
            if (pmk - 1) % r:
                continue
            v = (pmk - 1) // r
            if (p**k - 1) % v == 0:
                yield k, m, v


def mills_decompose(F: Poly) -> MvspCertificate:
    """Certificate F = L^v N^{p^{mk}} + gamma0 with all invariants re-checked."""
    res = millsbor_check(F)
    if res is None:
        raise NotCertified("polynomial is not an MVSP")
    T, theta = res
    ctx = F.ctx
    fibers = fiber_sizes(F)
    r = len(fibers) - 1
    low = min(fibers.values())
    gamma0 = min(g for g, c in fibers.items() if c == low)
    G = F - Poly.const(ctx, gamma0)
    L = gcd_with_xq_minus_x(G)
    valid = []
    for k, m, v in _triples(ctx, r):
        Q, R = divrem(G, L**v)
        if not R.is_zero():
            continue
        N = _pk_root(Q, m * k)
        if N is None or divrem(N, L)[1].is_zero():
            continue
        w = _w_vector(T, gamma0, v, m, k)
        if w is None:
            continue
        valid.append((k, m, v, N, w))
    if not valid:
        raise NoConsistentTriple("no (k, m, v) fits a certified MVSP")
    k, m, v, N, w = valid[0]
    shape = _ab_shape(L, ctx.p ** (m * k))
    audit = {
        "alternatives": [[kk, mm, vv] for kk, mm, vv, _, _ in valid[1:]],
        "min_fiber": low,
        "L_shape": None if shape is None else {"A": format_poly(shape[0]), "B": format_poly(shape[1])},
    }
    cert = MvspCertificate(F, gamma0, T, theta, L, N, v, m, k, w, fibers, audit)
    bad = cert.check()
    if bad:
        raise InternalConsistencyError(f"certificate invariants failed: {bad}")
    return cert


# -- powers ------------------------------------------------------------------------


def construct_power(f: Poly, v: int) -> Poly:
    if v < 1:
        raise BadParams("v must be positive")
    return f**v


def power_contract(f: Poly, v: int) -> dict:
    """Check the power rule for f^v; reports whether f meets its hypotheses."""
    ctx = f.ctx
    p = ctx.p
    F = construct_power(f, v)
    Vf = value_set(f)
    hyp = None
    if is_mvsp(f) and 1 in Vf:
        for k in divisors(ctx.n):
            if (p**k - 1) % v:
                continue
            U = SubspaceBasis.from_elements(ctx, k, Vf)
            if U.size != len(Vf):
                continue
            if (U.size - 1) // v + 1 > 2:
                hyp = k
                break
    out = {"within_hypotheses": hyp is not None, "k": hyp}
    if hyp is None:
        return out
    predicted = sorted({ctx.pow(u, v) for u in Vf})
    ok_deg = 1 <= F.degree <= ctx.q - 1
    out["is_mvsp"] = ok_deg and is_mvsp(F)
    out["value_set_matches"] = value_set(F) == predicted
    out["ok"] = out["is_mvsp"] and out["value_set_matches"]
    return out


# -- subspace families ----------------------------------------------------------


def subspace_cofactor(U: SubspaceBasis):
    """(d, A, M) with A = annihilator(U) and A(M) = M(A) = x^{p^{dk}} - x."""
    ctx, k = U.ctx, U.k
    span = U.span()
    if 1 not in span:
        raise BadSubspace("1 is not in the subspace")
    if len(span) <= 2:
        raise BadSubspace("subspace has at most two elements")
    e = smallest_subfield_degree(ctx, span)
    d = e // k
    A = annihilator(U)
    target = LinearizedPoly.binomial(ctx, k, d, 1)
    M = cofactor(A, target)
    if M is None or lin_compose(A, M) != target:
        raise InternalConsistencyError("annihilator does not divide x^{p^{dk}} - x")
    return d, A, M


def construct_subspace_family(U: SubspaceBasis, inner: Poly) -> Poly:
    """M(inner), an MVSP with value set span(U) when inner maps onto F_{p^{dk}}."""
    d, _, M = subspace_cofactor(U)
    ctx = U.ctx
    if inner.is_constant() or inner.degree >= ctx.q:
        raise InnerNotMvsp("inner polynomial must have degree 1..q-1")
    if value_set(inner) != _subfield(ctx, d * U.k) or not is_mvsp(inner):
        raise InnerNotMvsp(f"inner polynomial is not an MVSP onto F_(p^{d * U.k})")
    return lin_compose_poly(M, inner)


def lin_compose_poly(M: LinearizedPoly, f: Poly) -> Poly:
    """M(f(x)) for a linearized M and an ordinary polynomial f."""
    res = Poly.zero(f.ctx)
    for i, c in enumerate(M.lcoeffs):
        if c:
            res = res + frobenius_power(f, M.k * i).scale(c)
    return res


# -- the explicit families over F_{p^4} ---------------------------------------------

SELECTORS = ("monomial", "subfield_p", "subfield_p2", "dim2", "dim3")


def _in_subfield(ctx, a, e) -> bool:
    return ctx.frob(a, e) == a


def _require(cond: bool, name: str) -> None:
    if not cond:
        raise ConstraintViolated(name)


def family_g_p(ctx, a=0, b=0, c=0, d=0, e=0, f=0) -> Poly:
    """The F_p-valued form with a, f in F_p, d in F_{p^2}, b, c, e in F_q."""
    _require(ctx.n == 4, "n_is_4")
    p = ctx.p
    _require(_in_subfield(ctx, a, 1), "a_in_Fp")
    _require(_in_subfield(ctx, f, 1), "f_in_Fp")
    _require(_in_subfield(ctx, d, 2), "d_in_Fp2")
    fr = ctx.frob
    p1, p2, p3 = p, p**2, p**3
    terms = [
        (p3 + p2 + p1 + 1, a),
        (p3 + p2 + p1, b), (p3 + p2 + 1, fr(b, 1)), (p3 + p1 + 1, fr(b, 2)), (p2 + p1 + 1, fr(b, 3)),
        (p3 + p2, c), (p3 + 1, fr(c, 1)), (p1 + 1, fr(c, 2)), (p2 + p1, fr(c, 3)),
        (p3 + p1, d), (p2 + 1, fr(d, 1)),
        (p3, e), (1, fr(e, 1)), (p1, fr(e, 2)), (p2, fr(e, 3)),
        (0, f),
    ]
    g = Poly.from_terms(ctx, terms)
    _require(not g.is_constant(), "nonconstant")
    return g


def family_g_p2(ctx, a=0, b=0, c=0) -> Poly:
    """a x^{p^2+1} + b x^{p^2} + b^{p^2} x + c with a, c in F_{p^2}."""
    _require(ctx.n == 4, "n_is_4")
    p = ctx.p
    _require(_in_subfield(ctx, a, 2), "a_in_Fp2")
    _require(_in_subfield(ctx, c, 2), "c_in_Fp2")
    g = Poly.from_terms(ctx, [(p * p + 1, a), (p * p, b), (1, ctx.frob(b, 2)), (0, c)])
    _require(not g.is_constant(), "nonconstant")
    return g


def family_dim2_inner(ctx, beta) -> Poly:
    """x^{p^2} + (1 + (beta^{p^3} - beta^{p^2})^{p-1}) x^p - (beta^p - beta)^{1-p} x."""
    _require(ctx.n == 4, "n_is_4")
    p = ctx.p
    fr = ctx.frob
    _require(not _in_subfield(ctx, beta, 1), "beta_not_in_Fp")
    c1 = ctx.add(1, ctx.pow(ctx.sub(fr(beta, 3), fr(beta, 2)), p - 1))
    c0 = ctx.neg(ctx.inv(ctx.pow(ctx.sub(fr(beta, 1), beta), p - 1)))
    return Poly.from_terms(ctx, [(p * p, 1), (p, c1), (1, c0)])


def p4_families(ctx: FieldContext, selector: str, **params) -> Poly:
    """Members of the five families over F_{p^4}.

    monomial: v; subfield_p: t, a..f; subfield_p2: t, a, b, c; dim2: beta, v;
    dim3: v. Exponents t, v must satisfy the family's divisibility rule.
    """
    if selector not in SELECTORS:
        raise BadSelector(f"unknown family {selector!r}; choose from {', '.join(SELECTORS)}")
    _require(ctx.n == 4, "n_is_4")
    p, q = ctx.p, ctx.q
    x = Poly.x(ctx)
    if selector == "monomial":
        v = params.get("v", 1)
        _require(v >= 1 and (q - 1) % v == 0 and v < q - 1, "v_proper_divisor_of_q_minus_1")
        return x**v
    if selector == "subfield_p":
        t = params.get("t", 1)
        _require(t >= 1 and (p - 1) % t == 0 and (t < p - 1 or t == 1), "t_proper_divisor_of_p_minus_1")
        g = family_g_p(ctx, **{k: params.get(k, 0) for k in "abcdef"})
        return g**t
    if selector == "subfield_p2":
        t = params.get("t", 1)
        _require(t >= 1 and (p * p - 1) % t == 0 and t < p * p - 1, "t_proper_divisor_of_p2_minus_1")
        g = family_g_p2(ctx, **{k: params.get(k, 0) for k in "abc"})
        return g**t
    v = params.get("v", 1)
    _require(v >= 1 and (p - 1) % v == 0, "v_divides_p_minus_1")
    if selector == "dim2":
        return family_dim2_inner(ctx, params["beta"]) ** v
    return (x**p - x) ** v


def predicted_value_set(ctx: FieldContext, selector: str, **params) -> list[int]:
    """Value set each family is stated to have, built from its subspace data."""
    p = ctx.p
    xs = np.arange(ctx.q, dtype=np.int64)
    if selector == "monomial":
        pts, e = xs, params.get("v", 1)
    elif selector == "subfield_p":
        pts, e = np.array(_subfield(ctx, 1)), params.get("t", 1)
    elif selector == "subfield_p2":
        pts, e = np.array(_subfield(ctx, 2)), params.get("t", 1)
    elif selector == "dim2":
        pts = np.array(SubspaceBasis(ctx, 1, (1, params["beta"])).span())
        e = params.get("v", 1)
    elif selector == "dim3":
        # image of x^p - x is the kernel of the absolute trace
        tr = xs
        for i in range(1, ctx.n):
            tr = ctx.vec_add(tr, lin_evaluate_all(LinearizedPoly.monomial(ctx, 1, 1, i)))
        pts, e = xs[tr == 0], params.get("v", 1)
    else:
        raise BadSelector(selector)
    return sorted(int(a) for a in np.unique(vec_pow(ctx, pts, e)))


def affine_transform(F: Poly, a: int, b: int, u: int, w: int) -> Poly:
    """a*F(u*x + w) + b; value set becomes a*V + b."""
    if a == 0 or u == 0:
        raise BadParams("a and u must be nonzero")
    ctx = F.ctx
    return compose(F, Poly(ctx, (w, u))).scale(a) + Poly.const(ctx, b)


# -- W(A) ---------------------------------------------------------------------------


def lin_apply(A: LinearizedPoly, F: Poly) -> Poly:
    return lin_compose_poly(A, F)


def in_w(A: LinearizedPoly, F: Poly) -> bool:
    """A(F) = -a_0 (x^q - x) F'."""
    rhs = mul_xq_minus_x(derivative(F)).scale(A.ctx.neg(A[0]))
    return lin_apply(A, F) == rhs


def _w_kernel(A: LinearizedPoly, max_degree: int) -> np.ndarray:
    """Null space, in base-p digits of the coefficients, of F -> A(F) + a_0 (x^q - x) F'.

    The map is additive in F, so its kernel is an F_p-space.
    """
    ctx = A.ctx
    p, n, q, k = ctx.p, ctx.n, ctx.q, A.k
    D = max_degree
    units = [p**t for t in range(n)]
    na0 = ctx.neg(A[0])
    out_deg = max(D * A.degree, D - 1 + q) + 1
    cols = []
    for e in range(D + 1):
        for u in units:
            img = {}
            for i, a in enumerate(A.lcoeffs):
                if a:
                    ex = e * ctx.p ** (k * i)
                    img[ex] = ctx.add(img.get(ex, 0), ctx.mul(a, ctx.frob(u, k * i)))
            c = ctx.mul(e % p, u)
            if e and c:
                cc = ctx.mul(na0, c)
                # subtract -a0*(x^q - x)*e*u*x^{e-1}
                img[e - 1 + q] = ctx.sub(img.get(e - 1 + q, 0), cc)
                img[e] = ctx.add(img.get(e, 0), cc)
            col = np.zeros(out_deg * n, dtype=np.int64)
            for ex, val in img.items():
                for t, w in enumerate(units):
                    col[ex * n + t] = (val // w) % p
            cols.append(col)
    mat = np.array(cols, dtype=np.int64).T
    mat = mat[np.any(mat != 0, axis=1)]
    return fplinalg.nullspace(mat, p)


def w_space(A: LinearizedPoly, max_degree: int) -> np.ndarray:
    """F_p-basis of {F in W(A) : deg F <= max_degree} as rows of coefficient codes."""
    ctx = A.ctx
    ker = _w_kernel(A, max_degree)
    weights = np.array([ctx.p**t for t in range(ctx.n)], dtype=np.int64)
    return (ker.reshape(len(ker), max_degree + 1, ctx.n) * weights).sum(axis=2)


def w_elements(A: LinearizedPoly, max_degree: int, budget: int | None = None):
    """Every polynomial of W(A) of degree <= max_degree."""
    ctx = A.ctx
    digits = _w_kernel(A, max_degree)
    if budget is not None and ctx.p ** len(digits) > budget:
        raise BudgetExceeded(f"W space has {ctx.p}^{len(digits)} elements, over budget {budget}")
    weights = np.array([ctx.p**t for t in range(ctx.n)], dtype=np.int64)
    for vec in fplinalg.span_vectors(digits, ctx.p):
        coeffs = (vec.reshape(max_degree + 1, ctx.n) * weights).sum(axis=1)
        yield Poly(ctx, [int(c) for c in coeffs])


def w_decompose(A: LinearizedPoly, F: Poly) -> Poly:
    """G with F = M_A(G) and G in W(x^{q0^{d_A}} - alpha_A x)."""
    if not in_w(A, F):
        raise NotInW("F does not satisfy A(F) = -a_0 (x^q - x) F'")
    ctx = F.ctx
    bd = binomial_data(A)
    if F.is_zero():
        return F
    M = bd.M_A
    q0 = ctx.p**A.k
    m0inv = ctx.inv(M[0])
    g = [0] * (F.degree + 1)
    # every term lands on the constant, so (M(G))_0 = M(g_0): invert M on F_q
    pre = np.nonzero(lin_evaluate_all(M) == F[0])[0]
    if pre.size == 0:
        raise NoSolution("constant term is not in the image of M_A")
    g[0] = int(pre[0])
    # for e > 0, (M(G))_e = sum_i m_i g_{e/q0^i}^{q0^i}; the i = 0 term isolates g_e
    for e in range(1, F.degree + 1):
        acc = F[e]
        step, i = q0, 1
        while step <= e and i < len(M.lcoeffs):
            if e % step == 0 and M[i]:
                acc = ctx.sub(acc, ctx.mul(M[i], ctx.frob(g[e // step], A.k * i)))
            step *= q0
            i += 1
        g[e] = ctx.mul(acc, m0inv)
    G = Poly(ctx, g)
    if lin_compose_poly(M, G) != F:
        raise NoSolution("M_A(G) = F has no solution")
    if not in_w(LinearizedPoly.binomial(ctx, A.k, bd.d_A, bd.alpha_A), G):
        raise NoSolution("recovered G is not in W of the binomial")
    return G


# -- conjecture right-hand side -----------------------------------------------------


def power_set(ctx: FieldContext, elements, v: int) -> list[int]:
    return sorted({ctx.pow(a, v) if a else 0 for a in elements})


def conjecture_params(U: SubspaceBasis, v: int) -> dict:
    """Branch data: whether span(U) is a field, and (e, t) in the field branch."""
    ctx = U.ctx
    p = ctx.p
    k, m = U.k, U.m
    span = U.span()
    if 1 not in span:
        raise BadHypotheses("1 is not in the subspace")
    if v < 1 or (p**k - 1) % v:
        raise BadHypotheses(f"v={v} does not divide p^k - 1 = {p**k - 1}")
    target = power_set(ctx, span, v)
    if len(target) <= 2:
        raise BadHypotheses("U^v has at most two elements")
    mk = m * k
    is_field = ctx.n % mk == 0 and span == _subfield(ctx, mk)
    out = {"is_field": is_field, "target": target, "r": len(target) - 1}
    if is_field:
        e = smallest_subfield_degree(ctx, target)
        out["e"] = e
        out["t"] = v * (p**e - 1) // (p**mk - 1)
    else:
        out["d"] = smallest_subfield_degree(ctx, span) // k
    return out


def _degree_window(q: int, size: int) -> range:
    """Degrees D with floor((q-1)/D) + 1 == size."""
    r = size - 1
    return range((q - 1) // (r + 1) + 1, (q - 1) // r + 1)


def subfield_mvsps(ctx: FieldContext, e: int, budget: int | None = None):
    """Stream of P(F_{p^e}, q) for the supported (e, q) combinations."""
    p, n, q = ctx.p, ctx.n, ctx.q
    if e == n:
        for a in range(1, q):
            for b in range(q):
                yield Poly(ctx, (b, a))
        return
    if n == 4 and e == 2:
        Fp2 = _subfield(ctx, 2)
        for a in Fp2:
            for b in range(q):
                for c in Fp2:
                    if a == 0 and b == 0:
                        continue
                    yield family_g_p2(ctx, a, b, c)
        return
    if n == 4 and e == 1:
        count = p * p * (p * p) * q**3
        if budget is not None and count > budget:
            raise BudgetExceeded(f"{count} parameter choices exceed budget {budget}")
        Fp, Fp2 = _subfield(ctx, 1), _subfield(ctx, 2)
        for a, f, d in itertools.product(Fp, Fp, Fp2):
            for b, c, ee in itertools.product(range(q), repeat=3):
                if not (a or b or c or d or ee):
                    continue
                yield family_g_p(ctx, a, b, c, d, ee, f)
        return
    if q <= 9:
        from .search import scan_value_set

        yield from scan_value_set(ctx, _subfield(ctx, e))
        return
    raise UnsupportedInnerSource(f"no source for P(F_{p}^{e}, {q})")


def conjecture_rhs(U: SubspaceBasis, v: int, budget: int | None = None):
    """Stream of the predicted members of P(U^v, q)."""
    info = conjecture_params(U, v)
    ctx = U.ctx
    if info["is_field"]:
        t = info["t"]
        for f in subfield_mvsps(ctx, info["e"], budget):
            yield f**t
    else:
        d, _, M = subspace_cofactor(U)
        for h in subfield_mvsps(ctx, d * U.k, budget):
            yield lin_compose_poly(M, h) ** v


# -- at most two values -------------------------------------------------------------


def small_valueset_poly(ctx: FieldContext, kind: str, alpha: int = 0, G: Poly | None = None,
                        beta: int | None = None, subset=()) -> Poly:
    """alpha + (x^q - x) G for one value; the Lagrange form for two."""
    if kind == "one":
        if G is None or G.is_zero():
            raise BadParams("G must be a nonzero polynomial")
        return Poly.const(ctx, alpha) + mul_xq_minus_x(G)
    if kind == "two":
        subset = sorted(set(subset))
        if beta is None or alpha == beta:
            raise BadParams("alpha and beta must differ")
        if not subset or len(subset) >= ctx.q:
            raise BadParams("subset must be nonempty and proper")
        # indicator of the subset, scaled to map it to alpha and the rest to beta
        ind = Poly.zero(ctx)
        one = Poly.one(ctx)
        for g in subset:
            ind = ind + (one - Poly(ctx, (ctx.neg(g), 1)) ** (ctx.q - 1))
        return Poly.const(ctx, beta) + ind.scale(ctx.sub(alpha, beta))
    raise BadParams(f"unknown kind {kind!r}")
