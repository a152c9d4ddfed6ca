"""Exact arithmetic in cyclotomic fields Q(zeta_N).

Elements are stored as rational coefficient vectors in the power basis of
Q[x]/(Phi_N(x)), where Phi_N is the N-th cyclotomic polynomial.  Mixed
conductors are reconciled by lifting both operands into Q(zeta_lcm).
All character values and word-measure expectations in this package live
in such a field, so every computation downstream stays exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _poly_trim(c: list[Fraction]) -> list[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    # b must be non-zero; exact division over Q
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv_lead = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] * inv_lead
        if coef:
            q[i] = coef
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
    return _poly_trim(q), _poly_trim(a)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[Fraction, ...]:
    """Coefficients of Phi_n, low degree first."""
    if n == 1:
        return (Fraction(-1), Fraction(1))
    # (x^n - 1) / prod of Phi_d over proper divisors d
    poly = [Fraction(0)] * (n + 1)
    poly[0], poly[n] = Fraction(-1), Fraction(1)
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_reductions(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """x^j mod Phi_n for 0 <= j < n, as dense degree-<phi(n) vectors."""
    phi_n = list(cyclotomic_polynomial(n))
    deg = len(phi_n) - 1
    rows: list[tuple[Fraction, ...]] = []
    cur = [Fraction(0)] * deg
    if deg > 0:
        cur[0] = Fraction(1)
    rows.append(tuple(cur))
    for _ in range(1, n):
        nxt = [Fraction(0)] + cur
        if len(nxt) > deg:
            lead = nxt.pop()
            if lead:
                for i in range(deg):
                    nxt[i] -= lead * phi_n[i]
        cur = nxt
        rows.append(tuple(cur))
    return tuple(rows)


def _reduce_mod_phi(n: int, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    """Reduce a polynomial in zeta_n (any degree) to the power basis."""
    deg = euler_phi(n)
    rows = _power_reductions(n)
    out = [Fraction(0)] * deg
    for j, c in enumerate(coeffs):
        if not c:
            continue
        row = rows[j % n]  # zeta_n^n = 1
        for i, ri in enumerate(row):
            if ri:
                out[i] += c * ri
    return tuple(out)


class Cyclotomic:
    """An element of Q(zeta_N), immutable."""

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        deg = euler_phi(conductor)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) < deg:
            cs += [Fraction(0)] * (deg - len(cs))
        elif len(cs) > deg:
            cs = list(_reduce_mod_phi(conductor, cs))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *a):
        raise AttributeError("Cyclotomic is immutable")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rational(q) -> "Cyclotomic":
        return Cyclotomic(1, (Fraction(q),))

    @staticmethod
    def zero() -> "Cyclotomic":
        return _ZERO

    @staticmethod
    def one() -> "Cyclotomic":
        return _ONE

    @staticmethod
    def root_of_unity(n: int, k: int = 1) -> "Cyclotomic":
        """zeta_n^k."""
        k %= n
        coeffs = [Fraction(0)] * (k + 1)
        coeffs[k] = Fraction(1)
        return Cyclotomic(n, _reduce_mod_phi(n, coeffs))

    # -- conversions ---------------------------------------------------

    def lift(self, m: int) -> "Cyclotomic":
        """Rewrite in Q(zeta_m); requires conductor | m."""
        if m == self.conductor:
            return self
        assert m % self.conductor == 0
        step = m // self.conductor
        out: list[Fraction] = []
        for j, c in enumerate(self.coeffs):
            if c:
                idx = j * step
                if idx >= len(out):
                    out += [Fraction(0)] * (idx + 1 - len(out))
                out[idx] += c
        return Cyclotomic(m, _reduce_mod_phi(m, out))

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def to_complex(self) -> complex:
        import cmath

        z = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * z**j for j, c in enumerate(self.coeffs))

    # -- arithmetic ----------------------------------------------------

    def _pair(self, other):
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.from_rational(other)
        if self.conductor == other.conductor:
            return self, other
        m = self.conductor * other.conductor // gcd(self.conductor, other.conductor)
        return self.lift(m), other.lift(m)

    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclotomic(a.conductor, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.conductor, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other if isinstance(other, Cyclotomic) else Cyclotomic.from_rational(-Fraction(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.conductor, tuple(c * q for c in self.coeffs))
        a, b = self._pair(other)
        n = a.conductor
        prod = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1 or 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclotomic(n, _reduce_mod_phi(n, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero cyclotomic")
        n = self.conductor
        phi_n = list(cyclotomic_polynomial(n))
        # extended Euclid: s*self + t*Phi_n = 1 in Q[x]
        r0, r1 = phi_n, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        # r1 is the gcd (a non-zero constant since Phi_n is irreducible)
        assert len(r1) == 1
        c = r1[0]
        return Cyclotomic(n, tuple(x / c for x in s1))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.conductor, tuple(c / q for c in self.coeffs))
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return Cyclotomic.from_rational(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.from_rational(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "Cyclotomic":
        """Galois automorphism zeta_N -> zeta_N^(-1) (complex conjugation)."""
        n = self.conductor
        out: list[Fraction] = [Fraction(0)] * n
        for j, c in enumerate(self.coeffs):
            if c:
                out[(-j) % n] += c
        return Cyclotomic(n, _reduce_mod_phi(n, out))

    # -- comparisons / hashing -----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._pair(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal rationals at different conductors must agree
        if self.is_rational():
            return hash(self.to_fraction())
        return hash(("cyclotomic", sum(self.coeffs)))

    def __repr__(self):
        if self.is_rational():
            return str(self.to_fraction())
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                z = f"z{self.conductor}" + (f"^{j}" if j > 1 else "")
                parts.append(z if c == 1 else f"-{z}" if c == -1 else f"{c}*{z}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    # -- serialization ---------------------------------------------------

    def to_json(self):
        return {"conductor": self.conductor, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(data) -> "Cyclotomic":
        return Cyclotomic(int(data["conductor"]), [Fraction(c) for c in data["coeffs"]])


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _poly_trim(out)


_ZERO = Cyclotomic(1, (Fraction(0),))
_ONE = Cyclotomic(1, (Fraction(1),))
