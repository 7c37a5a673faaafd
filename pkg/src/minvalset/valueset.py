"""Value sets, the minimality test, and the a*U^v + b structure of value sets."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import BadOrder, DegreeOutOfRange, DependentBasis, IsPerfectPower, TooSmall
from .gf import FieldContext, divisors
from .linearized import SubspaceBasis
from .polyring import Poly, evaluate_all, is_perfect_power, radical


def value_table(f: Poly) -> np.ndarray:
    return evaluate_all(f)


def value_set(f: Poly) -> list[int]:
    """Sorted codes of {f(a) : a in F_q}."""
    return [int(v) for v in np.unique(evaluate_all(f))]


def fiber_sizes(f: Poly) -> dict[int, int]:
    vals, counts = np.unique(evaluate_all(f), return_counts=True)
    return {int(v): int(c) for v, c in zip(vals, counts)}


def minimal_size(q: int, degree: int) -> int:
    return (q - 1) // degree + 1


def _check_degree(f: Poly) -> int:
    d = f.degree
    if not (1 <= d <= f.ctx.q - 1):
        raise DegreeOutOfRange(f"degree {d} outside 1..{f.ctx.q - 1}")
    return d


def is_mvsp(f: Poly) -> bool:
    d = _check_degree(f)
    return len(value_set(f)) == minimal_size(f.ctx.q, d)


def vec_pow(ctx: FieldContext, a, e: int) -> np.ndarray:
    """Elementwise a^e for e >= 1 on an array of codes."""
    a = np.asarray(a, dtype=np.int64)
    res = ctx._np_exp[(ctx._np_log[a] * e) % (ctx.q - 1)]
    return np.where(a == 0, 0, res)


# -- structure a * U^v + b -------------------------------------------------------


@dataclass(frozen=True)
class ValueSetStructure:
    a: int
    b: int
    U: SubspaceBasis
    k: int
    m: int
    v: int

    def reconstruct(self) -> list[int]:
        ctx = self.U.ctx
        span = np.array(self.U.span(), dtype=np.int64)
        vals = ctx.vec_add(ctx.vec_mul(vec_pow(ctx, span, self.v), self.a), self.b)
        return sorted(int(x) for x in np.unique(vals))

    @property
    def size(self) -> int:
        return (self.ctx.p ** (self.m * self.k) - 1) // self.v + 1

    @property
    def ctx(self) -> FieldContext:
        return self.U.ctx

    def is_field(self) -> bool:
        """True when span(U) is a subfield of F_q."""
        mk = self.m * self.k
        return self.ctx.n % mk == 0 and self.U.span() == _subfield(self.ctx, mk)

    def to_json(self) -> dict:
        return {"a": self.a, "b": self.b, "basis": list(self.U.basis),
                "k": self.k, "m": self.m, "v": self.v}


@lru_cache(maxsize=64)
def _subfield(ctx: FieldContext, e: int) -> list[int]:
    return [a for a in range(ctx.q) if ctx.frob(a, e) == a]


def decompose_structure(ctx: FieldContext, S, all_witnesses: bool = False):
    """Witness(es) for S = a*U^v + b, or None / [] when S has no such form.

    The first witness is the smallest (b, k, v, a) in code order.
    """
    key = frozenset(int(s) for s in S)
    res = _decompose_cached(ctx, key, all_witnesses)
    return list(res) if all_witnesses else res


@lru_cache(maxsize=4096)
def _decompose_cached(ctx: FieldContext, S: frozenset, all_witnesses: bool):
    if len(S) <= 2:
        raise TooSmall(f"set of size {len(S)} has no structure to decompose")
    p, q = ctx.p, ctx.q
    Ssorted = sorted(S)
    xs = np.arange(q, dtype=np.int64)
    found = []
    for b in Ssorted:
        shifted = [ctx.sub(s, b) for s in Ssorted]
        for k in divisors(ctx.n):
            for v in divisors(p**k - 1):
                size_w = v * (len(S) - 1) + 1
                mk, t = 0, 1
                while t < size_w:
                    t *= p**k
                    mk += 1
                if t != size_w:
                    continue
                if mk == 1 and v == p**k - 1:
                    continue
                xv = vec_pow(ctx, xs, v)
                for a in sorted(s for s in shifted if s):
                    ainv = ctx.inv(a)
                    target = np.array(sorted(ctx.mul(ainv, s) for s in shifted), dtype=np.int64)
                    mask = np.isin(xv, target)
                    if int(mask.sum()) != size_w:
                        continue
                    if not np.array_equal(np.unique(xv[mask]), target):
                        continue
                    W = xs[mask]
                    try:
                        U = SubspaceBasis.from_elements(ctx, k, W.tolist())
                    except DependentBasis:
                        continue
                    if U.size != size_w:
                        continue
                    st = ValueSetStructure(a, b, U, k, U.m, v)
                    if not all_witnesses:
                        return st
                    found.append(st)
    return tuple(found) if all_witnesses else None


# -- character sums --------------------------------------------------------------


def char_sum(N: Poly, r: int) -> dict:
    """|sum_c chi(N(c))| for the order-r character with chi(generator) = e^{2 pi i / r}."""
    ctx = N.ctx
    q = ctx.q
    if r <= 1 or (q - 1) % r:
        raise BadOrder(f"order {r} must exceed 1 and divide {q - 1}")
    if N.is_constant():
        raise IsPerfectPower("N must be nonconstant")
    if is_perfect_power(N, r):
        raise IsPerfectPower(f"N is a constant times an {r}-th power")
    vals = evaluate_all(N)
    nz = vals[vals != 0]
    residues = np.bincount(ctx._np_log[nz] % r, minlength=r)
    total = sum(int(c) * cmath.exp(2j * math.pi * j / r) for j, c in enumerate(residues))
    z = radical(N).degree
    bound = (z - 1) * math.sqrt(q)
    value = abs(total)
    return {"abs_value": value, "weil_bound": bound, "within": value <= bound + 1e-9,
            "z": z, "sum": [total.real, total.imag]}
