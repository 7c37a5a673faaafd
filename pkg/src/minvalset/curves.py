"""Frobenius nonclassicality of superelliptic curves y^d = f(x).

Two deciders: a direct reduction of the tangent identity modulo y^d - f,
and the value-set criterion (d = (q-1)/(p^e-1) with f an MVSP onto F_{p^e}).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegreeOutOfRange, DTooLarge, Reducible
from .gf import divisors, factorize
from .polyring import Poly, derivative, format_poly, is_perfect_power, mul_xq_minus_x
from .valueset import _subfield, is_mvsp, value_set


def kummer_obstruction(d: int, f: Poly):
    """The prime l | d for which f is a constant times an l-th power, else None."""
    for ell in sorted(factorize(d)):
        if is_perfect_power(f, ell):
            return ell
    return None


@dataclass(frozen=True)
class CurveSpec:
    """The plane curve y^d = f(x), irreducible over the algebraic closure."""

    d: int
    f: Poly

    def __post_init__(self):
        if self.d < 1:
            raise ValueError("d must be positive")
        if self.f.is_constant():
            raise ValueError("f must be nonconstant")
        ell = kummer_obstruction(self.d, self.f)
        if ell is not None:
            raise Reducible(f"f is a constant times a power with exponent {ell} dividing d = {self.d}, "
                            "so y^d - f factors (Kummer criterion)")

    @property
    def ctx(self):
        return self.f.ctx


def _reduced_tangent(c: CurveSpec) -> dict[int, Poly]:
    """H = F_x (x^q - x) + F_y (y^q - y) mod y^d - f, as {y-exponent: coefficient}."""
    ctx, d, f = c.ctx, c.d, c.f
    q = ctx.q
    dd = Poly.const(ctx, d % ctx.p)
    terms: dict[int, Poly] = {}

    def add(e: int, coeff: Poly):
        # y^e with e = s*d + r becomes f^s y^r
        s, r = divmod(e, d)
        terms[r] = terms.get(r, Poly.zero(ctx)) + coeff * f**s

    add(0, -mul_xq_minus_x(derivative(f)))
    add(q + d - 1, dd)
    add(d, -dd)
    return {e: g for e, g in terms.items() if not g.is_zero()}


def fnc_direct(c: CurveSpec) -> bool:
    return not _reduced_tangent(c)


def fnc_by_mvsp(c: CurveSpec):
    """Value-set criterion. Returns (verdict, e) with e the matching subfield degree."""
    ctx, d, f = c.ctx, c.d, c.f
    q, p = ctx.q, ctx.p
    if d >= q - 1:
        raise DTooLarge(f"d = {d} >= q - 1; use the direct test")
    if not (1 <= f.degree <= q - 1):
        raise DegreeOutOfRange(f"deg f = {f.degree} outside 1..{q - 1}")
    for e in divisors(ctx.n):
        if (q - 1) % (p**e - 1) or d != (q - 1) // (p**e - 1):
            continue
        if is_mvsp(f) and value_set(f) == _subfield(ctx, e):
            return True, e
    return False, None


def curve_report(c: CurveSpec) -> dict:
    direct = fnc_direct(c)
    out = {"d": c.d, "f": format_poly(c.f), "irreducible": True, "fnc_direct": direct,
           "fnc_by_mvsp": None, "e": None}
    if c.d < c.ctx.q - 1 and 1 <= c.f.degree <= c.ctx.q - 1:
        out["fnc_by_mvsp"], out["e"] = fnc_by_mvsp(c)
    return out
