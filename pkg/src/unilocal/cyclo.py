"""Exact arithmetic in Q(zeta_n) for prime-power conductors n = p^k.

Elements are rational coefficient vectors in the power basis of
Q[x]/(Phi_n(x)), Phi_{p^k}(x) = sum_{i<p} x^{i p^{k-1}}, with zeta = e^{2 pi i / n}.
Conductor 1 means the rationals.  No floating point anywhere; an optional
float embedding exists for debugging only.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from .errors import DivisionByZero, InvalidSpec


@lru_cache(maxsize=None)
def _conductor_data(n: int):
    """(prime, power, degree) with n = prime * power, degree = phi(n)."""
    if n == 1:
        return (1, 1, 1)
    p = 2
    m = n
    while m % p:
        p += 1
    power = 1
    while m % p == 0:
        m //= p
        power *= p
    if m != 1:
        raise InvalidSpec(f"conductor {n} is not a prime power")
    power //= p
    return (p, power, power * (p - 1))


def degree_of(n: int) -> int:
    return _conductor_data(n)[2]


def reduce_coeffs(n: int, coeffs):
    """Reduce a coefficient list indexed by exponent (any length) mod Phi_n."""
    p, power, deg = _conductor_data(n)
    if n == 1:
        return (sum(coeffs, Fraction(0)),)
    acc = [Fraction(0)] * n
    for e, c in enumerate(coeffs):
        if c:
            acc[e % n] += c
    for e in range(deg, n):
        c = acc[e]
        if c:
            base = e - deg
            for i in range(p - 1):
                acc[i * power + base] -= c
    return tuple(acc[:deg])


class CycNum:
    """An element of Q(zeta_n), n a prime power; equality is exact."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs):
        self.n = n
        coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        deg = degree_of(n)
        if len(coeffs) != deg:
            coeffs = list(reduce_coeffs(n, coeffs))
        self.coeffs = tuple(coeffs)

    # -- constructors -----------------------------------------------------

    @staticmethod
    def rational(value) -> "CycNum":
        return CycNum(1, [Fraction(value)])

    @staticmethod
    def zero(n: int = 1) -> "CycNum":
        return CycNum(n, [0] * degree_of(n))

    # -- conductor embedding ----------------------------------------------

    def embed(self, n: int) -> "CycNum":
        """Embed into Q(zeta_n); self.n must divide n."""
        if self.n == n:
            return self
        if n % self.n != 0:
            raise InvalidSpec(f"{self.n} does not divide {n}")
        scale = n // self.n
        out = [Fraction(0)] * n
        for e, c in enumerate(self.coeffs):
            out[e * scale] += c
        return CycNum(n, out)

    def _common(self, other: "CycNum"):
        if self.n == other.n:
            return self, other
        if self.n % other.n == 0:
            return self, other.embed(self.n)
        if other.n % self.n == 0:
            return self.embed(other.n), other
        p1 = _conductor_data(self.n)[0]
        p2 = _conductor_data(other.n)[0]
        if self.n != 1 and other.n != 1 and p1 != p2:
            raise InvalidSpec("mixed-prime conductors are not supported")
        n = max(self.n, other.n)
        return self.embed(n), other.embed(n)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        a, b = self._common(other)
        return CycNum(a.n, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        a, b = self._common(other)
        return CycNum(a.n, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return CycNum.rational(other) - self

    def __neg__(self):
        return CycNum(self.n, [-c for c in self.coeffs])

    def __mul__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        a, b = self._common(other)
        n = a.n
        deg = degree_of(n)
        raw = [Fraction(0)] * (2 * deg - 1 if deg > 1 else 1)
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        raw[i + j] += x * y
        return CycNum(n, reduce_coeffs(n, raw))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        return self * other.inv()

    def conjugate(self) -> "CycNum":
        """Complex conjugation zeta -> zeta^-1, extended linearly."""
        return self.galois(self.n - 1 if self.n > 1 else 1)

    def galois(self, a: int) -> "CycNum":
        """The automorphism zeta -> zeta^a, gcd(a, n) = 1."""
        n = self.n
        if n == 1:
            return self
        if gcd(a, n) != 1:
            raise InvalidSpec(f"{a} is not prime to the conductor {n}")
        out = [Fraction(0)] * n
        for e, c in enumerate(self.coeffs):
            if c:
                out[(e * a) % n] += c
        return CycNum(n, out)

    def inv(self) -> "CycNum":
        """Exact inverse by the norm trick: multiply the other conjugates."""
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        n = self.n
        if n == 1:
            return CycNum(1, [1 / self.coeffs[0]])
        prod = CycNum(n, [1] + [0] * (degree_of(n) - 1))
        for a in range(2, n):
            if gcd(a, n) == 1:
                prod = prod * self.galois(a)
        norm = self * prod
        assert norm.is_rational(), "norm is not rational"
        nval = norm.coeffs[0]
        if nval == 0:
            raise DivisionByZero("zero norm")
        return prod * CycNum.rational(1 / nval)

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if not isinstance(other, CycNum):
            if isinstance(other, (int, Fraction)):
                other = CycNum.rational(other)
            else:
                return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z{self.n}^{e}" for e, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"

    # -- serialization / debug -------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coeffs": [[str(c.numerator), str(c.denominator)] for c in self.coeffs],
        }

    @staticmethod
    def from_json(obj: dict) -> "CycNum":
        coeffs = [Fraction(int(num), int(den)) for num, den in obj["coeffs"]]
        return CycNum(obj["n"], coeffs)

    def to_complex(self) -> complex:
        """Float embedding; debugging aid only, never part of a contract."""
        import cmath

        z = cmath.exp(2j * cmath.pi / self.n)
        return sum(float(c) * z**e for e, c in enumerate(self.coeffs))


def root_of_unity(n: int, j: int = 1) -> CycNum:
    """zeta_n^j, reduced mod Phi_n."""
    coeffs = [0] * n if n > 1 else [1]
    if n > 1:
        coeffs[j % n] = 1
    return CycNum(n, reduce_coeffs(n, coeffs))
