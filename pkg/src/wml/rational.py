"""Dense polynomials and reduced rational functions in one variable n,
with exact cyclotomic coefficients.

These carry the symbolic side of every expectation formula: falling
factorials, their ratios, and sums of such ratios scaled by character
values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .cyclotomic import Cyclotomic

_ZERO = Cyclotomic.zero()
_ONE = Cyclotomic.one()


def _as_cyclo(x) -> Cyclotomic:
    return x if isinstance(x, Cyclotomic) else Cyclotomic.from_rational(x)


class Poly:
    """Polynomial with Cyclotomic coefficients, low degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [_as_cyclo(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def constant(c) -> "Poly":
        return Poly((c,))

    @staticmethod
    def x() -> "Poly":
        return Poly((0, 1))

    @staticmethod
    def falling_factorial(t: int) -> "Poly":
        """(n)_t = n (n-1) ... (n-t+1)."""
        p = Poly((1,))
        for i in range(t):
            p = p * Poly((-i, 1))
        return p

    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Cyclotomic:
        return self.coeffs[-1] if self.coeffs else _ZERO

    def __eq__(self, other):
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(out)

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            c = _as_cyclo(other)
            return Poly(tuple(x * c for x in self.coeffs))
        if self.is_zero() or other.is_zero():
            return Poly()
        out = [_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a.is_zero():
                for j, b in enumerate(other.coeffs):
                    if not b.is_zero():
                        out[i + j] = out[i + j] + a * b
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = _ONE / other.leading()
        for i in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[i + len(other.coeffs) - 1] * inv_lead
            if not c.is_zero():
                q[i] = c
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(q), Poly(rem)

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        inv = _ONE / self.leading()
        return Poly(tuple(c * inv for c in self.coeffs))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def eval(self, n) -> Cyclotomic:
        x = _as_cyclo(n)
        out = _ZERO
        for c in reversed(self.coeffs):
            out = out * x + c
        return out

    def __repr__(self):
        if self.is_zero():
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            if j == 0:
                parts.append(f"{c}")
            else:
                xs = "n" if j == 1 else f"n^{j}"
                parts.append(xs if c == 1 else f"({c})*{xs}")
        return " + ".join(parts)

    def conductor(self) -> int:
        return lcm(*[c.conductor for c in self.coeffs]) if self.coeffs else 1

    def to_json(self, conductor: int | None = None):
        conductor = conductor or self.conductor()
        return [[str(q) for q in c.lift(conductor).coeffs] for c in self.coeffs]


@dataclass(frozen=True)
class RationalFunctionN:
    """A reduced ratio of polynomials in n; denominator is monic."""

    num: Poly
    den: Poly

    @staticmethod
    def of(num: Poly, den: Poly | None = None) -> "RationalFunctionN":
        den = den if den is not None else Poly((1,))
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return RationalFunctionN(Poly(), Poly((1,)))
        g = num.gcd(den)
        if g.degree() > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lead = den.leading()
        if lead != 1:
            inv = _ONE / lead
            num, den = num * inv, den * inv
        return RationalFunctionN(num, den)

    @staticmethod
    def zero() -> "RationalFunctionN":
        return RationalFunctionN.of(Poly())

    @staticmethod
    def constant(c) -> "RationalFunctionN":
        return RationalFunctionN.of(Poly((c,)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        return RationalFunctionN.of(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __neg__(self):
        return RationalFunctionN(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return RationalFunctionN.of(self.num * other, self.den)
        return RationalFunctionN.of(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            return RationalFunctionN.of(self.num, self.den * other)
        return RationalFunctionN.of(self.num * other.den, self.den * other.num)

    def __eq__(self, other):
        if not isinstance(other, RationalFunctionN):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def eval(self, n) -> Cyclotomic:
        d = self.den.eval(n)
        if d.is_zero():
            raise ZeroDivisionError(f"pole of the reduced rational function at n = {n}")
        return self.num.eval(n) / d

    def leading_pair(self) -> tuple[int, Cyclotomic]:
        """(exponent, coefficient) of the n -> infinity leading term."""
        if self.is_zero():
            raise ValueError("zero function has no leading term")
        return (
            self.num.degree() - self.den.degree(),
            self.num.leading() / self.den.leading(),
        )

    def __repr__(self):
        if self.den == Poly((1,)):
            return repr(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self):
        conductor = lcm(self.num.conductor(), self.den.conductor())
        return {
            "conductor": conductor,
            "num": self.num.to_json(conductor),
            "den": self.den.to_json(conductor),
        }
