"""p^k-linearized polynomials kept in coefficient form.

A q0-linearized polynomial (q0 = p^k) is sum_i a_i x^{q0^i}; we store the list
``[a_0, a_1, ...]``. Composition, annihilators of subspaces and the cofactor
computations all work on that list, so large degrees never get expanded.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import fplinalg
from .errors import (
    BadIndex,
    BaseMismatch,
    CtxMismatch,
    DependentBasis,
    Inseparable,
    InternalConsistencyError,
    NotBinomial,
    NotDividing,
    NotLinearized,
    NotMonic,
    ZeroPolynomial,
)
from .gf import FieldContext, format_element, subfield_elements
from .polyring import Poly

# expanding to a dense Poly beyond this degree is refused
MAX_EXPAND_DEGREE = 1 << 22


def _check_k(ctx: FieldContext, k: int) -> None:
    if k < 1 or ctx.n % k:
        raise BaseMismatch(f"k={k} must be a positive divisor of n={ctx.n}")


def vec_frob(ctx: FieldContext, a: np.ndarray, e: int) -> np.ndarray:
    """Elementwise a^{p^e} on an array of codes (negative e allowed)."""
    a = np.asarray(a, dtype=np.int64)
    qm1 = ctx.q - 1
    t = pow(ctx.p, e % ctx.n, qm1) if qm1 > 1 else 1
    res = ctx._np_exp[(ctx._np_log[a] * t) % qm1]
    return np.where(a == 0, 0, res)


class LinearizedPoly:
    """Immutable q0-linearized polynomial, q0 = p^k."""

    __slots__ = ("ctx", "k", "lcoeffs")

    def __init__(self, ctx: FieldContext, k: int, lcoeffs=()):
        _check_k(ctx, k)
        c = [int(v) for v in lcoeffs]
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.k = k
        self.lcoeffs = tuple(c)

    @classmethod
    def x(cls, ctx, k):
        return cls(ctx, k, (1,))

    @classmethod
    def monomial(cls, ctx, k, c, i):
        """c * x^{q0^i}."""
        return cls(ctx, k, [0] * i + [c])

    @classmethod
    def binomial(cls, ctx, k, d, alpha):
        """x^{q0^d} - alpha*x."""
        c = [0] * (d + 1)
        c[d] = 1
        c[0] = ctx.add(c[0], ctx.neg(alpha))
        return cls(ctx, k, c)

    @property
    def q0(self) -> int:
        return self.ctx.p ** self.k

    @property
    def qdegree(self) -> int:
        """Index of the top term, -1 for the zero polynomial."""
        return len(self.lcoeffs) - 1

    @property
    def degree(self):
        if not self.lcoeffs:
            return Poly.zero(self.ctx).degree
        return self.q0 ** self.qdegree

    def is_zero(self) -> bool:
        return not self.lcoeffs

    def is_monic(self) -> bool:
        return bool(self.lcoeffs) and self.lcoeffs[-1] == 1

    def is_separable(self) -> bool:
        return bool(self.lcoeffs) and self.lcoeffs[0] != 0

    def support(self) -> list[int]:
        return [i for i, c in enumerate(self.lcoeffs) if c]

    def __getitem__(self, i: int) -> int:
        return self.lcoeffs[i] if 0 <= i < len(self.lcoeffs) else 0

    def _same(self, other) -> None:
        if self.ctx != other.ctx:
            raise CtxMismatch("linearized polynomials over different fields")
        if self.k != other.k:
            raise BaseMismatch(f"bases p^{self.k} and p^{other.k} differ")

    def __eq__(self, other):
        if not isinstance(other, LinearizedPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.k == other.k and self.lcoeffs == other.lcoeffs

    def __hash__(self):
        return hash((self.k, self.lcoeffs))

    def __add__(self, other):
        self._same(other)
        n = max(len(self.lcoeffs), len(other.lcoeffs))
        add = self.ctx.add
        return LinearizedPoly(self.ctx, self.k, [add(self[i], other[i]) for i in range(n)])

    def __neg__(self):
        return LinearizedPoly(self.ctx, self.k, [self.ctx.neg(c) for c in self.lcoeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> LinearizedPoly:
        mul = self.ctx.mul
        return LinearizedPoly(self.ctx, self.k, [mul(c, a) for a in self.lcoeffs])

    def shift(self, s: int = 1) -> LinearizedPoly:
        """self(x^{q0^s})."""
        return LinearizedPoly(self.ctx, self.k, [0] * s + list(self.lcoeffs))

    def __call__(self, a: int) -> int:
        return lin_evaluate(self, a)

    def to_poly(self) -> Poly:
        if self.lcoeffs and self.degree > MAX_EXPAND_DEGREE:
            raise OverflowError(f"degree {self.degree} too large to expand")
        q0 = self.q0
        return Poly.from_terms(self.ctx, [(q0**i, c) for i, c in enumerate(self.lcoeffs) if c])

    def format(self, style: str = "code") -> str:
        if not self.lcoeffs:
            return "0"
        parts = []
        q0 = self.q0
        for i in range(len(self.lcoeffs) - 1, -1, -1):
            c = self.lcoeffs[i]
            if not c:
                continue
            e = q0**i
            xs = "x" if e == 1 else f"x^{e}"
            parts.append(xs if c == 1 else f"{format_element(self.ctx, c, style)}*{xs}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"LinearizedPoly(k={self.k}, {self.format()})"


def recognize(f: Poly, k: int) -> LinearizedPoly:
    """Read a Poly as a p^k-linearized polynomial; raise NotLinearized otherwise."""
    ctx = f.ctx
    _check_k(ctx, k)
    q0 = ctx.p**k
    lc = []
    for e, c in enumerate(f.coeffs):
        if not c:
            continue
        i, t = 0, 1
        while t < e:
            t *= q0
            i += 1
        if t != e:
            raise NotLinearized(f"exponent {e} is not a power of {q0}")
        lc += [0] * (i + 1 - len(lc))
        lc[i] = c
    return LinearizedPoly(ctx, k, lc)


def lin_evaluate(L: LinearizedPoly, a: int) -> int:
    ctx = L.ctx
    acc = 0
    for i, c in enumerate(L.lcoeffs):
        if c:
            acc = ctx.add(acc, ctx.mul(c, ctx.frob(a, L.k * i)))
    return acc


def lin_evaluate_all(L: LinearizedPoly, xs=None) -> np.ndarray:
    """Values of L at every code (or at the given array of codes)."""
    ctx = L.ctx
    xs = np.arange(ctx.q, dtype=np.int64) if xs is None else np.asarray(xs, dtype=np.int64)
    acc = np.zeros(xs.shape, dtype=np.int64)
    for i, c in enumerate(L.lcoeffs):
        if c:
            acc = ctx.vec_add(acc, ctx.vec_mul(vec_frob(ctx, xs, L.k * i), c))
    return acc


def lin_compose(L1: LinearizedPoly, L2: LinearizedPoly) -> LinearizedPoly:
    """L1(L2(x)) computed on coefficient lists."""
    L1._same(L2)
    ctx, k = L1.ctx, L1.k
    if L1.is_zero() or L2.is_zero():
        return LinearizedPoly(ctx, k)
    out = [0] * (len(L1.lcoeffs) + len(L2.lcoeffs) - 1)
    add, mul, frob = ctx.add, ctx.mul, ctx.frob
    for i, a in enumerate(L1.lcoeffs):
        if not a:
            continue
        for j, b in enumerate(L2.lcoeffs):
            if b:
                out[i + j] = add(out[i + j], mul(a, frob(b, k * i)))
    return LinearizedPoly(ctx, k, out)


# -- subspaces -----------------------------------------------------------------


@dataclass(frozen=True)
class SubspaceBasis:
    """F_{p^k}-linearly independent elements of F_q."""

    ctx: FieldContext
    k: int
    basis: tuple
    _ann: LinearizedPoly = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_k(self.ctx, self.k)
        object.__setattr__(self, "basis", tuple(int(b) for b in self.basis))
        # raises DependentBasis when the elements are not independent
        A = LinearizedPoly.x(self.ctx, self.k)
        for b in self.basis:
            A = _moore_step(A, b)
        object.__setattr__(self, "_ann", A)

    @property
    def m(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.ctx.p ** (self.k * self.m)

    def span(self) -> list[int]:
        ctx = self.ctx
        pts = np.zeros(1, dtype=np.int64)
        scalars = np.array(subfield_elements(ctx, self.k), dtype=np.int64)
        for b in self.basis:
            multiples = ctx.vec_mul(scalars, b)
            pts = ctx.vec_add(pts[:, None], multiples[None, :]).ravel()
        return sorted(int(v) for v in np.unique(pts))

    def __contains__(self, a: int) -> bool:
        return lin_evaluate(self._ann, a) == 0

    def to_json(self) -> dict:
        return {"k": self.k, "m": self.m, "basis": list(self.basis)}

    @classmethod
    def from_elements(cls, ctx: FieldContext, k: int, elements) -> SubspaceBasis:
        """Greedy basis of the F_{p^k}-span of the given elements."""
        _check_k(ctx, k)
        basis: list[int] = []
        A = LinearizedPoly.x(ctx, k)
        for e in sorted(set(int(v) for v in elements)):
            if lin_evaluate(A, e) != 0:
                basis.append(e)
                A = _moore_step(A, e)
        return cls(ctx, k, tuple(basis))


def _moore_step(A: LinearizedPoly, b: int) -> LinearizedPoly:
    """(y^{q0} - delta^{q0-1} y) o A with delta = A(b); kills A's roots plus b."""
    ctx, k = A.ctx, A.k
    delta = lin_evaluate(A, b)
    if delta == 0:
        raise DependentBasis(f"element {b} lies in the span of the previous ones")
    q0 = ctx.p**k
    outer = LinearizedPoly(ctx, k, (ctx.neg(ctx.pow(delta, q0 - 1)), 1))
    return lin_compose(outer, A)


def annihilator(U: SubspaceBasis) -> LinearizedPoly:
    """Monic q0-linearized polynomial whose roots are exactly span(U)."""
    return U._ann


def kernel(L: LinearizedPoly) -> list[int]:
    """Roots of L in F_q, sorted by code."""
    vals = lin_evaluate_all(L)
    roots = [int(a) for a in np.nonzero(vals == 0)[0]]
    if L.is_zero():
        return roots
    size, q0 = len(roots), L.q0
    while size % q0 == 0 and size > 1:
        size //= q0
    if size != 1:
        raise InternalConsistencyError(f"kernel of size {len(roots)} is not a power of {q0}")
    return roots


# -- cofactors -----------------------------------------------------------------


def _require_separable(L: LinearizedPoly) -> None:
    if L.is_zero():
        raise ZeroPolynomial("linearized polynomial is zero")
    if not L.is_separable():
        raise Inseparable("coefficient of x is zero")


def cofactor(L: LinearizedPoly, L1: LinearizedPoly) -> LinearizedPoly | None:
    """M with M(L(x)) = L1(x), or None when L does not divide L1."""
    L._same(L1)
    _require_separable(L)
    ctx, k = L.ctx, L.k
    if L1.is_zero():
        return LinearizedPoly(ctx, k)
    s, s1 = L.qdegree, L1.qdegree
    t = s1 - s
    if t < 0:
        return None
    add, sub, mul, div, frob = ctx.add, ctx.sub, ctx.mul, ctx.div, ctx.frob
    m = [0] * (t + 1)
    # (M o L)_r = sum_i m_i l_{r-i}^{q0^i}; the term i = r - s fixes m_{r-s}
    for i in range(t, -1, -1):
        r = i + s
        acc = L1[r]
        for i2 in range(i + 1, min(t, r) + 1):
            acc = sub(acc, mul(m[i2], frob(L[r - i2], k * i2)))
        m[i] = div(acc, frob(L[s], k * i))
    M = LinearizedPoly(ctx, k, m)
    if lin_compose(M, L) != L1:
        return None
    if _is_field_binomial(L1) and lin_compose(L, M) != L1:
        raise InternalConsistencyError("cofactor of x^{q^d} - x does not commute")
    return M


def _is_field_binomial(L: LinearizedPoly) -> bool:
    """L = x^{q0^d} - x with k*d a multiple of n (coefficients fixed by x^{q0^d})."""
    ctx = L.ctx
    d = L.qdegree
    if d < 1 or (L.k * d) % ctx.n:
        return False
    return L.support() == [0, d] and L[d] == 1 and L[0] == ctx.neg(1)


def right_cofactor(A: LinearizedPoly, target: LinearizedPoly) -> LinearizedPoly | None:
    """M with A(M(x)) = target(x), or None."""
    A._same(target)
    _require_separable(A)
    ctx, k = A.ctx, A.k
    if target.is_zero():
        return LinearizedPoly(ctx, k)
    s, d = A.qdegree, target.qdegree
    t = d - s
    if t < 0:
        return None
    sub, mul, div, frob = ctx.sub, ctx.mul, ctx.div, ctx.frob
    m = [0] * (t + 1)
    # (A o M)_r = sum_i a_i m_{r-i}^{q0^i}; the term i = s fixes m_{r-s}
    for j in range(t, -1, -1):
        r = j + s
        acc = target[r]
        for i in range(max(0, r - t), s):
            acc = sub(acc, mul(A[i], frob(m[r - i], k * i)))
        m[j] = frob(div(acc, A[s]), -k * s)
    M = LinearizedPoly(ctx, k, m)
    if lin_compose(A, M) != target:
        return None
    return M


@dataclass(frozen=True)
class BinomialData:
    A: LinearizedPoly
    d_A: int
    alpha_A: int
    M_A: LinearizedPoly

    def to_json(self) -> dict:
        return {"A": str(self.A), "d_A": self.d_A, "alpha_A": self.alpha_A, "M_A": str(self.M_A)}


def _top_down(A: LinearizedPoly, d: int, c: int) -> LinearizedPoly:
    """The unique M of q-degree d - s with (A o M)_r = 0 for s <= r < d and (A o M)_d = c."""
    ctx, k = A.ctx, A.k
    s = A.qdegree
    t = d - s
    sub, mul, div, frob = ctx.sub, ctx.mul, ctx.div, ctx.frob
    m = [0] * (t + 1)
    for j in range(t, -1, -1):
        r = j + s
        acc = c if r == d else 0
        for i in range(max(0, r - t), s):
            acc = sub(acc, mul(A[i], frob(m[r - i], k * i)))
        m[j] = frob(div(acc, A[s]), -k * s)
    return LinearizedPoly(ctx, k, m)


def binomial_data(A: LinearizedPoly) -> BinomialData:
    """Least d with A(M(x)) = x^{q0^d} - alpha*x for some q0-linearized M."""
    ctx, k = A.ctx, A.k
    _require_separable(A)
    if not A.is_monic():
        raise NotMonic("A must be monic")
    top = ctx.n // k
    if cofactor(A, LinearizedPoly.binomial(ctx, k, top, 1)) is None:
        raise NotDividing(f"A does not divide x^{ctx.q} - x")
    s = A.qdegree
    if s == 0:
        # A = x, so M = x^{q0} - x already gives a binomial
        return BinomialData(A, 1, 1, LinearizedPoly.binomial(ctx, k, 1, 1))
    n, p = ctx.n, ctx.p
    units = [p**t for t in range(n)]  # F_p-basis of F_q as codes
    for d in range(s, top + 1):
        # c -> (rows 1..s-1 of A o M_c) is F_p-linear; we need a nonzero c in its kernel
        if s > 1:
            cols = []
            for u in units:
                comp = lin_compose(A, _top_down(A, d, u))
                digits = []
                for r in range(1, s):
                    v = comp[r]
                    digits += [(v // w) % p for w in units]
                cols.append(digits)
            ker = fplinalg.nullspace(np.array(cols, dtype=np.int64).T, p)
            if len(ker) == 0:
                continue
            c = int(sum(int(ker[0][i]) * units[i] for i in range(n)))
        else:
            c = 1
        M = _top_down(A, d, c)
        comp = lin_compose(A, M)
        if comp.support() != [0, d]:
            raise InternalConsistencyError("binomial solve produced extra terms")
        # rescale x -> lam*x so the top coefficient becomes 1
        lam = ctx.frob(ctx.inv(c), -k * d)
        M = lin_compose(M, LinearizedPoly(ctx, k, (lam,)))
        comp = lin_compose(A, M)
        alpha = ctx.neg(comp[0])
        if comp != LinearizedPoly.binomial(ctx, k, d, alpha):
            raise InternalConsistencyError("normalization of binomial failed")
        return BinomialData(A, d, alpha, M)
    raise InternalConsistencyError("no binomial multiple found below x^q - x")


def binomial_reduce(B: LinearizedPoly, m: int) -> tuple[LinearizedPoly, int, int]:
    """(T_m, c_m, s_m) with x^{q0^m} = B(T_m(x)) + c_m x^{q0^{s_m}} and s_m < i."""
    supp = B.support()
    if len(supp) != 2:
        raise NotBinomial(f"expected two terms, got {len(supp)}")
    ctx, k = B.ctx, B.k
    j, i = supp
    if m < i:
        raise BadIndex(f"m={m} is below the top index {i}")
    a, b = B[i], B[j]
    Ti = LinearizedPoly(ctx, k, (ctx.frob(ctx.inv(a), -k * i),))
    ci = ctx.neg(ctx.mul(b, ctx.frob(ctx.inv(a), k * j - k * i)))
    T, c, s = Ti, ci, j
    for _ in range(i, m):
        T = T.shift(1)
        s += 1
        if s == i:
            eps = ctx.frob(c, -k * i)
            T = T + lin_compose(Ti, LinearizedPoly(ctx, k, (eps,)))
            c = ctx.mul(ci, ctx.frob(eps, k * j))
            s = j
    return T, c, s
