"""Dense univariate polynomials over a :class:`~minvalset.gf.FieldContext`.

Coefficients are element codes stored ascending, with no trailing zeros; the
zero polynomial has an empty coefficient tuple and degree ``NEG_INF``.
"""

from __future__ import annotations

import math
import re

import numpy as np

from .errors import (
    AllDerivativesZero,
    BothZero,
    CommonFactor,
    CtxMismatch,
    DivisionByZero,
    ParseError,
    SumMismatch,
    ZeroPolynomial,
)
from .gf import FieldContext, format_element, parse_element

NEG_INF = -math.inf


def _trim(c: list) -> list:
    while c and c[-1] == 0:
        c.pop()
    return c


class Poly:
    """Immutable polynomial; supports ``+ - * ** divmod // %`` and call-evaluation."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldContext, coeffs=()):
        self.ctx = ctx
        self.coeffs = tuple(_trim([int(c) for c in coeffs]))

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, ())

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (1,))

    @classmethod
    def const(cls, ctx, c: int):
        return cls(ctx, (c,))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (0, 1))

    @classmethod
    def monomial(cls, ctx, c: int, e: int):
        if c == 0:
            return cls(ctx, ())
        return cls(ctx, [0] * e + [c])

    @classmethod
    def from_terms(cls, ctx, terms):
        """Build from ``{exponent: coefficient}`` or (exponent, coefficient) pairs."""
        items = terms.items() if isinstance(terms, dict) else terms
        items = list(items)
        if not items:
            return cls(ctx, ())
        top = max(e for e, _ in items)
        c = [0] * (top + 1)
        add = ctx.add
        for e, v in items:
            c[e] = add(c[e], v)
        return cls(ctx, c)

    @classmethod
    def from_roots(cls, ctx, roots):
        """Monic polynomial prod (x - r)."""
        res = [1]
        neg, mul, add = ctx.neg, ctx.mul, ctx.add
        for r in roots:
            nr = neg(r)
            new = [0] * (len(res) + 1)
            for i, c in enumerate(res):
                new[i + 1] = add(new[i + 1], c)
                new[i] = add(new[i], mul(c, nr))
            res = new
        return cls(ctx, res)

    # -- basic properties --------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __getitem__(self, e: int) -> int:
        return self.coeffs[e] if 0 <= e < len(self.coeffs) else 0

    def terms(self):
        """Nonzero (exponent, coefficient) pairs, ascending."""
        return [(e, c) for e, c in enumerate(self.coeffs) if c]

    def _same(self, other: Poly) -> None:
        if self.ctx is not other.ctx and self.ctx != other.ctx:
            raise CtxMismatch("polynomials over different fields")

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs and (self.ctx is other.ctx or self.ctx == other.ctx)

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"

    def __str__(self):
        return format_poly(self)

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        self._same(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        add = self.ctx.add
        res = list(a)
        for i, c in enumerate(b):
            if c:
                res[i] = add(res[i], c)
        return Poly(self.ctx, res)

    def __neg__(self):
        neg = self.ctx.neg
        return Poly(self.ctx, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        self._same(other)
        a, b = self.coeffs, other.coeffs
        sub, neg = self.ctx.sub, self.ctx.neg
        n = max(len(a), len(b))
        res = list(a) + [0] * (n - len(a))
        for i, c in enumerate(b):
            if c:
                res[i] = sub(res[i], c)
        return Poly(self.ctx, res)

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        self._same(other)
        return Poly(self.ctx, _mul_coeffs(self.ctx, self.coeffs, other.coeffs))

    def scale(self, c: int) -> Poly:
        if c == 0:
            return Poly(self.ctx, ())
        mul = self.ctx.mul
        return Poly(self.ctx, [mul(c, a) for a in self.coeffs])

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly(self.ctx, (0,) * k + self.coeffs)

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative polynomial power")
        result = Poly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        return divrem(self, other)

    def __floordiv__(self, other):
        return divrem(self, other)[0]

    def __mod__(self, other):
        return divrem(self, other)[1]

    def __call__(self, a: int) -> int:
        return evaluate(self, a)

    def monic(self) -> Poly:
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.ctx.inv(self.coeffs[-1]))


def _mul_coeffs(ctx: FieldContext, a, b) -> list:
    if not a or not b:
        return []
    if len(a) < len(b):
        a, b = b, a
    log, exp, add = ctx._log, ctx._exp, ctx.add
    res = [0] * (len(a) + len(b) - 1)
    bl = [(j, log[c]) for j, c in enumerate(b) if c]
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        la = log[ai]
        for j, lb in bl:
            k = i + j
            res[k] = add(res[k], exp[la + lb])
    return res


# -- arithmetic dispatch ---------------------------------------------------


def poly_arith(op: str, *operands):
    """Dispatch ``op`` in {add, sub, mul, divrem, pow}."""
    if op == "add":
        return operands[0] + operands[1]
    if op == "sub":
        return operands[0] - operands[1]
    if op == "mul":
        return operands[0] * operands[1]
    if op == "divrem":
        return divrem(operands[0], operands[1])
    if op == "pow":
        return operands[0] ** int(operands[1])
    raise ValueError(f"unknown polynomial operation {op!r}")


def divrem(f: Poly, g: Poly) -> tuple[Poly, Poly]:
    f._same(g)
    if g.is_zero():
        raise DivisionByZero("polynomial division by zero")
    ctx = f.ctx
    r = list(f.coeffs)
    dg = len(g.coeffs) - 1
    if len(r) - 1 < dg:
        return Poly(ctx, ()), f
    log, exp, sub = ctx._log, ctx._exp, ctx.sub
    inv_lead = ctx.inv(g.coeffs[-1])
    gl = [(j, log[c]) for j, c in enumerate(g.coeffs[:-1]) if c]
    quot = [0] * (len(r) - dg)
    for k in range(len(r) - 1 - dg, -1, -1):
        c = r[k + dg]
        if c == 0:
            continue
        qc = ctx.mul(c, inv_lead)
        quot[k] = qc
        lq = log[qc]
        for j, lj in gl:
            r[k + j] = sub(r[k + j], exp[lq + lj])
        r[k + dg] = 0
    return Poly(ctx, quot), Poly(ctx, r[:dg])


def evaluate(f: Poly, a: int) -> int:
    """Horner evaluation at an element code."""
    ctx = f.ctx
    mul, add = ctx.mul, ctx.add
    acc = 0
    for c in reversed(f.coeffs):
        acc = add(mul(acc, a), c)
    return acc


def evaluate_all(f: Poly) -> np.ndarray:
    """Values f(a) for every code a in [0, q), as a numpy array indexed by a."""
    ctx = f.ctx
    xs = np.arange(ctx.q, dtype=np.int64)
    acc = np.zeros(ctx.q, dtype=np.int64)
    for c in reversed(f.coeffs):
        acc = ctx.vec_add(ctx.vec_mul(acc, xs), c)
    return acc


def derivative(f: Poly) -> Poly:
    ctx = f.ctx
    p = ctx.p
    add = ctx.add
    res = []
    for e in range(1, len(f.coeffs)):
        c = f.coeffs[e]
        k = e % p
        if c == 0 or k == 0:
            res.append(0)
            continue
        # k * c via repeated addition (k < p)
        acc = 0
        for _ in range(k):
            acc = add(acc, c)
        res.append(acc)
    return Poly(ctx, res)


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by Euclid's algorithm."""
    f._same(g)
    if f.is_zero() and g.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    a, b = f, g
    while not b.is_zero():
        a, b = b, divrem(a, b)[1]
    return a.monic()


def compose(f: Poly, g: Poly) -> Poly:
    """f(g(x)) by Horner's rule."""
    f._same(g)
    ctx = f.ctx
    acc = Poly(ctx, ())
    for c in reversed(f.coeffs):
        acc = acc * g
        if c:
            acc = acc + Poly(ctx, (c,))
    return acc


def frobenius_power(f: Poly, s: int) -> Poly:
    """f(x)^{p^s}, computed coefficient-wise (characteristic p)."""
    ctx = f.ctx
    step = ctx.p**s
    if not f.coeffs:
        return f
    res = [0] * ((len(f.coeffs) - 1) * step + 1)
    frob = ctx.frob
    for e, c in enumerate(f.coeffs):
        if c:
            res[e * step] = frob(c, s)
    return Poly(ctx, res)


def mul_xq_minus_x(g: Poly) -> Poly:
    """(x^q - x) * g without a general multiplication."""
    ctx = g.ctx
    if g.is_zero():
        return g
    q = ctx.q
    res = [0] * (len(g.coeffs) + q)
    for e, c in enumerate(g.coeffs):
        if c:
            res[e + q] = c
    sub = ctx.sub
    for e, c in enumerate(g.coeffs):
        if c:
            res[e + 1] = sub(res[e + 1], c)
    return Poly(ctx, res)


def powmod(f: Poly, e: int, m: Poly) -> Poly:
    result = Poly.one(f.ctx) % m
    base = f % m
    while e:
        if e & 1:
            result = (result * base) % m
        e >>= 1
        if e:
            base = (base * base) % m
    return result


def gcd_with_xq_minus_x(f: Poly) -> Poly:
    """gcd(f, x^q - x), reducing x^q modulo f first."""
    ctx = f.ctx
    if f.is_zero():
        xq = [0] * (ctx.q + 1)
        xq[ctx.q] = 1
        xq[1] = ctx.neg(1)
        return Poly(ctx, xq)
    if f.is_constant():
        return Poly.one(ctx)
    r = powmod(Poly.x(ctx), ctx.q, f) - Poly.x(ctx)
    return poly_gcd(f, r)


def pth_root(f: Poly) -> Poly:
    """g with g^p = f; requires f' = 0."""
    ctx = f.ctx
    p = ctx.p
    res = []
    for e, c in enumerate(f.coeffs):
        if c and e % p:
            raise ValueError("polynomial is not a p-th power")
        if e % p == 0:
            res.append(ctx.frob(c, -1))
    return Poly(ctx, res)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Pairs (g_i, i) with f = lead * prod g_i^i, g_i squarefree, monic and
    pairwise coprime. Handles inseparable parts through p-th roots."""
    if f.is_zero():
        raise ZeroPolynomial("squarefree decomposition of 0")
    f = f.monic()
    if f.is_constant():
        return []
    p = f.ctx.p
    out: list[tuple[Poly, int]] = []
    df = derivative(f)
    c = poly_gcd(f, df)
    w = f // c
    i = 1
    while not w.is_constant():
        y = poly_gcd(w, c)
        fac = w // y
        if not fac.is_constant():
            out.append((fac.monic(), i))
        w = y
        c = c // y
        i += 1
    if not c.is_constant():
        for g, m in squarefree_decomposition(pth_root(c)):
            out.append((g, m * p))
    out.sort(key=lambda t: t[1])
    return out


def radical(f: Poly) -> Poly:
    """Monic squarefree part: product of the distinct irreducible factors."""
    if f.is_zero():
        raise ZeroPolynomial("radical of 0")
    res = Poly.one(f.ctx)
    for g, _ in squarefree_decomposition(f):
        res = res * g
    return res


def root_multiplicities(f: Poly) -> list[int]:
    """Multiplicities of the roots of f in its splitting field, one entry per
    squarefree layer (each layer's roots share a multiplicity)."""
    return [m for _, m in squarefree_decomposition(f)]


def is_perfect_power(f: Poly, r: int) -> bool:
    """True iff f = a * g^r with a in F_q and g in F_q[x]."""
    if f.is_zero():
        raise ZeroPolynomial("perfect-power test of 0")
    return all(m % r == 0 for _, m in squarefree_decomposition(f))


def nth_root(f: Poly, r: int) -> Poly | None:
    """A polynomial g with g^r = f, or None. Other roots differ from g by an
    r-th root of unity."""
    ctx = f.ctx
    if f.is_zero():
        return f
    if r == 1:
        return f
    if f.degree % r:
        return None
    lead = f.lead
    lr = None
    for c in range(1, ctx.q):
        if ctx.pow(c, r) == lead:
            lr = c
            break
    if lr is None:
        return None
    layers = squarefree_decomposition(f)
    if any(m % r for _, m in layers):
        return None
    g = Poly.one(ctx)
    for fac, m in layers:
        g = g * fac ** (m // r)
    g = g.scale(lr)
    return g if g**r == f else None


def mason_stothers_check(a: Poly, b: Poly, c: Poly) -> dict:
    """Compare max degree of a, b, c against deg rad(abc) - 1."""
    a._same(b)
    a._same(c)
    if a + b != c:
        raise SumMismatch("a + b != c")
    for x, y, name in ((a, b, "a,b"), (a, c, "a,c"), (b, c, "b,c")):
        if x.is_zero() or y.is_zero() or not poly_gcd(x, y).is_constant():
            raise CommonFactor(f"{name} are not coprime")
    if derivative(a).is_zero() and derivative(b).is_zero() and derivative(c).is_zero():
        raise AllDerivativesZero("a', b', c' all vanish")
    lhs = max(a.degree, b.degree, c.degree)
    rhs = radical(a * b * c).degree - 1
    return {"holds": lhs <= rhs, "lhs": lhs, "rhs": rhs}


# -- text format ---------------------------------------------------------------
#
#   poly  := ['-'] term (('+' | '-') term)*
#   term  := coeff [['*'] xpow] | xpow      (3x and 3*x both parse)
#   coeff := INT | 'g' ['^' INT]
#   xpow  := 'x' ['^' INT]

_TOKEN = re.compile(r"\s*(?:(\d+)|(g)|(x)|(\^)|(\*)|(\+)|(-))")


class _Parser:
    def __init__(self, ctx: FieldContext, text: str):
        self.ctx = ctx
        self.text = text
        self.pos = 0

    def _peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            if self.text[self.pos:].strip():
                raise ParseError("unexpected character", self.text, self.pos)
            return None, None
        kinds = ("int", "g", "x", "^", "*", "+", "-")
        for k, grp in zip(kinds, m.groups()):
            if grp is not None:
                return k, m
        return None, None  # pragma: no cover

    def _take(self, kind):
        k, m = self._peek()
        if k != kind:
            raise ParseError(f"expected {kind!r}", self.text, self.pos)
        self.pos = m.end()
        return m

    def _int(self) -> int:
        neg = False
        k, m = self._peek()
        if k == "-":
            self.pos = m.end()
            neg = True
        v = int(self._take("int").group(1))
        return -v if neg else v

    def parse(self) -> Poly:
        ctx = self.ctx
        terms: dict[int, int] = {}
        sign = 1
        k, m = self._peek()
        if k == "-":
            sign = -1
            self.pos = m.end()
        while True:
            e, c = self._term()
            if sign < 0:
                c = ctx.neg(c)
            terms[e] = ctx.add(terms.get(e, 0), c)
            k, m = self._peek()
            if k is None:
                break
            if k not in ("+", "-"):
                raise ParseError("expected '+' or '-'", self.text, self.pos)
            sign = 1 if k == "+" else -1
            self.pos = m.end()
        return Poly.from_terms(ctx, terms)

    def _term(self) -> tuple[int, int]:
        k, m = self._peek()
        if k == "x":
            return self._xpow(), 1
        if k in ("int", "g"):
            start = self.pos
            if k == "int":
                self.pos = m.end()
                code = int(m.group(1))
                if code >= self.ctx.q:
                    raise ParseError(f"element code {code} >= q = {self.ctx.q}", self.text, start)
                c = code
            else:
                self.pos = m.end()
                k2, m2 = self._peek()
                if k2 == "^":
                    self.pos = m2.end()
                    c = self.ctx.exp(self._int())
                else:
                    c = self.ctx.generator
            k3, m3 = self._peek()
            if k3 == "*":
                self.pos = m3.end()
                return self._xpow(), c
            if k3 == "x":
                return self._xpow(), c
            return 0, c
        raise ParseError("expected a term", self.text, self.pos)

    def _xpow(self) -> int:
        self._take("x")
        k, m = self._peek()
        if k == "^":
            self.pos = m.end()
            e = int(self._take("int").group(1))
            return e
        return 1


def parse_poly(ctx: FieldContext, text: str) -> Poly:
    """Parse the polynomial text format (e.g. ``x^9 - x``, ``g^3*x^2 + 1``)."""
    if not text or not text.strip():
        raise ParseError("empty polynomial", text or "", 0)
    return _Parser(ctx, text).parse()


def format_poly(f: Poly, style: str = "code") -> str:
    """Canonical text: descending exponents, no zero terms, coefficient 1 omitted."""
    if f.is_zero():
        return "0"
    parts = []
    for e in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[e]
        if not c:
            continue
        cs = format_element(f.ctx, c, style)
        if e == 0:
            parts.append(cs)
            continue
        xs = "x" if e == 1 else f"x^{e}"
        parts.append(xs if c == 1 else f"{cs}*{xs}")
    return " + ".join(parts)
