"""Canonical algebra for functions max{1,t^c1}^m1 * ... up to monomial factor.

Two functions f, g : R_{>0} -> R_{>=0} are identified when f(t) = t^r g(t)
for a single real r.  Every torsion this package computes lands in the
subgroup generated by the functions max{1, t^c}; that subgroup collapses
to a very small canonical form because of two pointwise identities:

    max{1,t^a} * max{1,t^b} = max{1,t^{a+b}}          (a, b >= 0)
    max{1,t^a} / max{1,t^b} = max{1,t^{a-b}}^{sign}   (a, b >= 0)

so a class is determined by one rational "net" exponent.  The exposed
factor map therefore has at most one entry {|net| -> sign(net)}, equality
is exact rational comparison, and the group is isomorphic to (Q, +).
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import ValidationError

# Relative accuracy of the decimal fallback in evaluate_representative.
EVAL_TOLERANCE = 1e-12
_DECIMAL_DIGITS = 50


@dataclass(frozen=True)
class TorsionFunction:
    """Canonical representative of a torsion class.

    ``net`` > 0 encodes max{1, t^net}; net < 0 its inverse; 0 the unit.
    """

    net: Fraction

    @staticmethod
    def unit() -> "TorsionFunction":
        return TorsionFunction(Fraction(0))

    @staticmethod
    def from_exponent(x, m: int) -> "TorsionFunction":
        """Class of max{1, t^x}^m.

        Negative x folds to |x| (max{1,t^x} and max{1,t^{|x|}} differ by
        the monomial t^x); the multiplicity keeps its sign.
        """
        x = Fraction(x)
        return TorsionFunction(abs(x) * m)

    @staticmethod
    def rational_pow(x, e) -> "TorsionFunction":
        """Class of max{1, t^x}^e for a rational exponent e."""
        x, e = Fraction(x), Fraction(e)
        return TorsionFunction(abs(x) * e)

    @property
    def factors(self) -> dict[Fraction, int]:
        """Exponent -> multiplicity map of the canonical representative."""
        if self.net > 0:
            return {self.net: 1}
        if self.net < 0:
            return {-self.net: -1}
        return {}

    def is_unit(self) -> bool:
        return self.net == 0

    def mul(self, other: "TorsionFunction") -> "TorsionFunction":
        return TorsionFunction(self.net + other.net)

    __mul__ = mul

    def pow(self, n: int) -> "TorsionFunction":
        return TorsionFunction(self.net * n)

    __pow__ = pow

    def inverse(self) -> "TorsionFunction":
        return self.pow(-1)

    def eq(self, other: "TorsionFunction") -> bool:
        return self.net == other.net

    @property
    def degree(self) -> Fraction:
        """Growth exponent as t -> oo minus as t -> 0 (sum of c*m)."""
        return self.net

    def evaluate_representative(self, t) -> Fraction:
        """Value of the canonical representative at rational t > 0.

        The representative is 1 for t <= 1 and t^net for t >= 1.  Exact
        whenever t^net is rational; otherwise computed with 50-digit
        decimals (relative error far below EVAL_TOLERANCE).
        """
        t = Fraction(t)
        if t <= 0:
            raise ValidationError("evaluation point must be positive")
        if t <= 1 or self.net == 0:
            return Fraction(1)
        exact = _rational_power(t, self.net)
        if exact is not None:
            return exact
        with localcontext() as ctx:
            ctx.prec = _DECIMAL_DIGITS
            td = Decimal(t.numerator) / Decimal(t.denominator)
            ed = Decimal(self.net.numerator) / Decimal(self.net.denominator)
            return Fraction((ed * td.ln()).exp())

    def __str__(self) -> str:
        if self.net == 0:
            return "1"
        if self.net > 0:
            return f"max{{1,t^{{{self.net}}}}}"
        return f"max{{1,t^{{{-self.net}}}}}^-1"

    def __repr__(self) -> str:
        return f"TorsionFunction({self.net!r})"


UNIT = TorsionFunction.unit()


def _iroot(value: int, n: int) -> int | None:
    """Exact integer n-th root of a positive integer, or None."""
    if value == 1:
        return 1
    lo, hi = 1, 1 << ((value.bit_length() + n - 1) // n + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        p = mid**n
        if p == value:
            return mid
        if p < value:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def _rational_power(t: Fraction, e: Fraction) -> Fraction | None:
    """t**e as an exact Fraction when it is rational, else None."""
    p, q = e.numerator, e.denominator
    base = t**p  # exact; p may be negative
    if q == 1:
        return base
    rn = _iroot(base.numerator, q)
    rd = _iroot(base.denominator, q)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)
