"""Finite fields F_{p^n} with integer element codes.

An element is an ``int`` in ``[0, q)``. Its base-p digits, least significant
first, are the coordinates in the polynomial basis ``1, x, ..., x^{n-1}``
modulo the field's defining polynomial. Multiplication goes through
exp/log tables built once per context; addition uses XOR (p = 2), a full
addition table (small q) or Zech logarithms.
"""

from __future__ import annotations

import itertools
import operator
import re
from functools import lru_cache

import numpy as np

from .errors import (
    DivisionByZero,
    FieldOverflow,
    NotDivisor,
    NotIrreducible,
    NotPrime,
    ParseError,
    ZeroElement,
)

DEFAULT_MAX_Q = 1 << 20

# largest q for which a python list-of-lists addition table is kept
_LIST_ADD_MAX_Q = 256
# largest q for which a numpy addition table is kept (vectorized paths)
_NP_ADD_MAX_Q = 1024


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of a positive integer by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of ``n``."""
    divs = [1]
    for prime, mult in factorize(n).items():
        divs = [d * prime**e for d in divs for e in range(mult + 1)]
    return sorted(divs)


# -- small helpers for polynomials over F_p (ascending int lists) ----------


def _fp_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_rem(a, m, p):
    a = list(a)
    inv_lead = pow(m[-1], p - 2, p) if p > 2 else 1
    dm = len(m) - 1
    while len(_fp_trim(a)) - 1 >= dm:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
    return a


def _fp_mulmod(a, b, m, p):
    if not a or not b:
        return []
    res = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                res[i + j] = (res[i + j] + ai * bj) % p
    return _fp_rem(res, m, p)


def _fp_gcd(a, b, p):
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        a, b = b, _fp_rem(a, b, p)
    return a


def is_irreducible_over_fp(modulus, p: int) -> bool:
    """Ben-Or test: monic m of degree n is irreducible iff
    gcd(x^{p^i} - x, m) = 1 for every 1 <= i <= n/2."""
    m = _fp_trim([c % p for c in modulus])
    n = len(m) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    if m[0] == 0:
        return False
    h = [0, 1]
    for _ in range(n // 2):
        # h <- h^p mod m
        acc = [1]
        base = h
        e = p
        while e:
            if e & 1:
                acc = _fp_mulmod(acc, base, m, p)
            base = _fp_mulmod(base, base, m, p)
            e >>= 1
        h = acc
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _fp_gcd(m, _fp_trim(diff), p)
        if len(g) > 1:
            return False
    return True


def first_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically-first monic irreducible of degree n over F_p,
    comparing ascending coefficient tuples from the constant term."""
    for low in itertools.product(range(p), repeat=n):
        cand = list(low) + [1]
        if is_irreducible_over_fp(cand, p):
            return tuple(cand)
    raise NotIrreducible(f"no irreducible polynomial of degree {n} over F_{p}")  # unreachable


class FieldContext:
    """Immutable description of F_{p^n}.

    Build instances with :func:`make_field`; equal inputs yield the same
    cached object. Attributes ``p, n, q, modulus, generator`` are public; the
    lookup tables are internal.
    """

    __slots__ = (
        "p", "n", "q", "modulus", "generator", "max_q",
        "_exp", "_log", "_neg", "_np_exp", "_np_log", "_np_neg", "_np_add",
        "_zech", "_pows", "add", "sub", "__weakref__",
    )

    def __init__(self, p: int, n: int, modulus: tuple[int, ...], max_q: int = DEFAULT_MAX_Q):
        q = p**n
        self.p, self.n, self.q = p, n, q
        self.modulus = tuple(modulus)
        self.max_q = max_q
        self._pows = tuple(p**t for t in range(n))
        self._build_tables()

    # -- construction ------------------------------------------------------

    def _digits(self, codes: np.ndarray) -> np.ndarray:
        pw = np.array(self._pows, dtype=np.int64)
        return (codes[None, :] // pw[:, None]) % self.p

    def _encode(self, digits: np.ndarray) -> np.ndarray:
        pw = np.array(self._pows, dtype=np.int64)
        return (digits * pw[:, None]).sum(axis=0)

    def _build_tables(self) -> None:
        p, n, q = self.p, self.n, self.q
        codes = np.arange(q, dtype=np.int64)
        digs = self._digits(codes)
        m = np.array(self.modulus[:n], dtype=np.int64)

        # multiplication by the class of x
        top = digs[n - 1].copy()
        shifted = np.zeros_like(digs)
        shifted[1:] = digs[:-1]
        mulx = self._encode((shifted - top[None, :] * m[:, None]) % p)
        mulx_list = mulx.tolist()

        neg = self._encode((-digs) % p)
        self._np_neg = neg
        self._neg = neg.tolist()

        def slow_mul(a: int, b: int) -> int:
            acc = [0] * n
            cur = a
            for t in range(n):
                bt = (b // self._pows[t]) % p
                if bt:
                    c = cur
                    for s in range(n):
                        acc[s] = (acc[s] + bt * (c % p)) % p
                        c //= p
                cur = mulx_list[cur]
            return sum(d * w for d, w in zip(acc, self._pows))

        def slow_pow(a: int, e: int) -> int:
            acc, base = 1, a
            while e:
                if e & 1:
                    acc = slow_mul(acc, base)
                base = slow_mul(base, base)
                e >>= 1
            return acc

        qm1 = q - 1
        primes = list(factorize(qm1)) if qm1 > 1 else []
        gen = None
        for cand in range(1, q):
            if all(slow_pow(cand, qm1 // ell) != 1 for ell in primes):
                gen = cand
                break
        assert gen is not None
        self.generator = gen

        # table of multiplication by the generator, then walk its powers
        acc = np.zeros_like(digs)
        cur = codes
        for t in range(n):
            gt = (gen // self._pows[t]) % p
            if gt:
                acc = (acc + gt * self._digits(cur)) % p
            cur = mulx[cur]
        mulg = self._encode(acc).tolist()

        exp = [0] * (2 * qm1 + 1)
        log = [-1] * q
        c = 1
        for i in range(qm1):
            exp[i] = c
            log[c] = i
            c = mulg[c]
        for i in range(qm1, 2 * qm1 + 1):
            exp[i] = exp[i - qm1] if qm1 else 1
        self._exp, self._log = exp, log
        self._np_exp = np.array(exp, dtype=np.int64)
        np_log = np.array(log, dtype=np.int64)
        np_log[0] = 0
        self._np_log = np_log

        self._np_add = None
        self._zech = None
        if p == 2:
            self.add = operator.xor
            self.sub = operator.xor
        else:
            if q <= _NP_ADD_MAX_Q:
                table = self._encode_2d((digs[:, :, None] + digs[:, None, :]) % p)
                self._np_add = table
            if q <= _LIST_ADD_MAX_Q:
                tab = self._np_add.tolist()

                def add(a, b, tab=tab):
                    return tab[a][b]
            else:
                d = self._digits(self._np_exp[:qm1])
                d[0] = (d[0] + 1) % p
                one_plus = self._encode(d)
                zech = [log[c] if c else -1 for c in one_plus.tolist()]
                self._zech = zech

                def add(a, b, exp=exp, log=log, zech=zech, qm1=qm1):
                    if a == 0:
                        return b
                    if b == 0:
                        return a
                    la = log[a]
                    d = log[b] - la
                    if d < 0:
                        d += qm1
                    z = zech[d]
                    if z < 0:
                        return 0
                    return exp[la + z]

            negl = self._neg

            def sub(a, b, add=add, negl=negl):
                return add(a, negl[b])

            self.add = add
            self.sub = sub

    def _encode_2d(self, digits: np.ndarray) -> np.ndarray:
        pw = np.array(self._pows, dtype=np.int64)
        return np.tensordot(pw, digits, axes=(0, 0))

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.p, self.n, self.modulus)

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FieldContext):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __reduce__(self):
        return (make_field, (self.p, self.n, self.modulus, self.max_q))

    def __repr__(self):
        return f"FieldContext({self.spec()})"

    def spec(self) -> str:
        """Field spec string ``p^n/m0,m1,...,1``."""
        return f"{self.p}^{self.n}/" + ",".join(str(c) for c in self.modulus)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "n": self.n,
            "q": self.q,
            "modulus": list(self.modulus),
            "generator": self.generator,
            "spec": self.spec(),
        }

    # -- scalar arithmetic -------------------------------------------------

    def check(self, a: int) -> int:
        if not (isinstance(a, (int, np.integer)) and 0 <= a < self.q):
            raise ValueError(f"element code {a!r} outside [0, {self.q})")
        return int(a)

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of 0")
        return self._exp[self.q - 1 - self._log[a]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise DivisionByZero("division by 0")
        if a == 0:
            return 0
        return self._exp[self._log[a] + self.q - 1 - self._log[b]]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of 0")
            return 0
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def log(self, a: int) -> int:
        """Discrete log to the base of the context generator."""
        if a == 0:
            raise ZeroElement("log of 0")
        return self._log[a]

    def exp(self, k: int) -> int:
        """``generator ** k``."""
        return self._exp[k % (self.q - 1)]

    def frob(self, a: int, k: int = 1) -> int:
        """a^{p^k}; negative k gives the inverse Frobenius."""
        if a == 0:
            return 0
        return self._exp[(self._log[a] * self.p ** (k % self.n)) % (self.q - 1)]

    def scalar(self, c: int) -> int:
        """Code of the prime-field element c mod p."""
        return c % self.p

    def elements(self) -> range:
        return range(self.q)

    # -- vectorized arithmetic (numpy int64 arrays of codes) ---------------

    def vec_mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        res = self._np_exp[self._np_log[a] + self._np_log[b]]
        return np.where((a == 0) | (b == 0), 0, res)

    def vec_add(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self._np_add is not None:
            return self._np_add[a, b]
        out = np.zeros(np.broadcast(a, b).shape, dtype=np.int64)
        for w in self._pows:
            out += (((a // w) + (b // w)) % self.p) * w
        return out

    def vec_neg(self, a):
        return self._np_neg[np.asarray(a, dtype=np.int64)]


@lru_cache(maxsize=64)
def _make_field_cached(p: int, n: int, modulus: tuple[int, ...] | None, max_q: int) -> FieldContext:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"extension degree must be >= 1, got {n}")
    q = p**n
    if q > max_q:
        raise FieldOverflow(f"q = {p}^{n} = {q} exceeds the cap {max_q}")
    if modulus is None:
        modulus = first_irreducible(p, n)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) == n:
            modulus = modulus + (1,)
        if len(modulus) != n + 1 or modulus[-1] != 1:
            raise NotIrreducible(f"modulus {list(modulus)} is not monic of degree {n}")
        if not is_irreducible_over_fp(modulus, p):
            raise NotIrreducible(f"modulus {list(modulus)} is reducible over F_{p}")
    return FieldContext(p, n, modulus, max_q)


def make_field(p: int, n: int = 1, modulus=None, max_q: int = DEFAULT_MAX_Q) -> FieldContext:
    """Construct F_{p^n}.

    ``modulus`` is an ascending coefficient list over F_p, with or without the
    leading 1. When omitted, the lexicographically-first monic irreducible is
    used. The generator is the smallest code of multiplicative order q - 1.
    """
    mod = None if modulus is None else tuple(int(c) for c in modulus)
    return _make_field_cached(int(p), int(n), mod, int(max_q))


# -- field-level operations ------------------------------------------------

_ARITH = {
    "add": lambda ctx, a, b: ctx.add(a, b),
    "sub": lambda ctx, a, b: ctx.sub(a, b),
    "mul": lambda ctx, a, b: ctx.mul(a, b),
    "neg": lambda ctx, a: ctx.neg(a),
    "inv": lambda ctx, a: ctx.inv(a),
    "pow": lambda ctx, a, e: ctx.pow(a, e),
    "div": lambda ctx, a, b: ctx.div(a, b),
}


def arith(ctx: FieldContext, op: str, *operands) -> int:
    """Dispatch ``op`` in {add, sub, mul, div, inv, neg, pow} on element codes."""
    try:
        fn = _ARITH[op]
    except KeyError:
        raise ValueError(f"unknown field operation {op!r}") from None
    if op == "pow":
        a, e = operands
        return fn(ctx, ctx.check(a), int(e))
    return fn(ctx, *(ctx.check(a) for a in operands))


def frobenius(ctx: FieldContext, a: int, k: int) -> int:
    if k < 0:
        raise ValueError("frobenius exponent must be >= 0")
    return ctx.frob(ctx.check(a), k)


def subfield_elements(ctx: FieldContext, e: int) -> list[int]:
    """Sorted codes of the subfield F_{p^e}."""
    if e < 1 or ctx.n % e:
        raise NotDivisor(f"{e} does not divide {ctx.n}")
    return [a for a in range(ctx.q) if ctx.frob(a, e) == a]


def mult_order(ctx: FieldContext, a: int) -> int:
    a = ctx.check(a)
    if a == 0:
        raise ZeroElement("0 has no multiplicative order")
    t = ctx.q - 1
    for ell in factorize(t):
        while t % ell == 0 and ctx.pow(a, t // ell) == 1:
            t //= ell
    return t


def smallest_subfield_degree(ctx: FieldContext, elements) -> int:
    """Least e | n such that every element lies in F_{p^e}."""
    for e in divisors(ctx.n):
        if all(ctx.frob(a, e) == a for a in elements):
            return e
    return ctx.n


# -- text I/O ----------------------------------------------------------------

_ELEM_RE = re.compile(r"^\s*(?:(\d+)|g(?:\s*\^\s*(-?\d+))?)\s*$")


def parse_element(ctx: FieldContext, text: str) -> int:
    """Parse ``<decimal code>``, ``g`` or ``g^k`` (power of the generator)."""
    m = _ELEM_RE.match(str(text))
    if not m:
        raise ParseError("bad element", str(text), 0)
    if m.group(1) is not None:
        code = int(m.group(1))
        if code >= ctx.q:
            raise ParseError(f"element code {code} >= q = {ctx.q}", str(text), 0)
        return code
    k = int(m.group(2)) if m.group(2) is not None else 1
    return ctx.exp(k)


def format_element(ctx: FieldContext, a: int, style: str = "code") -> str:
    if style == "power" and a != 0:
        k = ctx.log(a)
        return "1" if k == 0 else ("g" if k == 1 else f"g^{k}")
    return str(a)


_SPEC_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?:/\s*([\d,\s]+))?$")


def parse_field_spec(text: str, max_q: int = DEFAULT_MAX_Q) -> FieldContext:
    """Parse ``p^n`` or ``p^n/m0,m1,...`` (modulus ascending over F_p)."""
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError("bad field spec (expected p^n or p^n/m0,m1,...)", text, 0)
    p, n = int(m.group(1)), int(m.group(2))
    modulus = None
    if m.group(3):
        modulus = [int(c) for c in m.group(3).split(",") if c.strip()]
    return make_field(p, n, modulus, max_q=max_q)
