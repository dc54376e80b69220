"""Finite commutative local rings with involution.

Three families, each with its canonical involution:

* ``ZmodPk``        -- Z/p^k, trivial involution.
* ``UnramifiedQuad``-- (Z/p^k)[x]/(f), f a monic degree-2 lift of a polynomial
                       irreducible mod p; the involution is the unique ring
                       involution reducing to a |-> a^q on the residue field.
* ``RamifiedDual``  -- (Z/p^k)[t]/(t^2) with (a + bt)* = a - bt.

Elements are canonical coefficient tuples of least non-negative residues, so
equality is tuple equality.  p = 2 is rejected everywhere: 2 must be a unit.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from . import _kernels
from .errors import (
    ImproperIdeal,
    InvalidSpec,
    NotAUnit,
    NotStarInvariant,
    RingMismatch,
    TooLarge,
    UnsupportedQuotient,
)

ZMOD = "ZmodPk"
UNRAMIFIED = "UnramifiedQuad"
RAMIFIED = "RamifiedDual"

_INVOLUTION_FOR_FAMILY = {
    ZMOD: "trivial",
    UNRAMIFIED: "frobenius",
    RAMIFIED: "negate-generator",
}


def max_enum() -> int:
    return int(os.environ.get("MAX_ENUM", "1000000"))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RingSpec:
    family: str
    p: int
    k: int
    modulus: tuple[int, ...] | None = None  # (c0, c1, 1) for UnramifiedQuad
    involution: str = ""

    def __post_init__(self):
        if self.involution == "":
            object.__setattr__(self, "involution", _INVOLUTION_FOR_FAMILY.get(self.family, ""))

    def to_json(self) -> dict:
        out = {"family": self.family, "p": self.p, "k": self.k, "involution": self.involution}
        if self.modulus is not None:
            out["modulus"] = list(self.modulus)
        return out

    @staticmethod
    def from_json(obj: dict) -> "RingSpec":
        modulus = tuple(obj["modulus"]) if obj.get("modulus") is not None else None
        return RingSpec(obj["family"], obj["p"], obj["k"], modulus, obj.get("involution", ""))


class RingElem:
    """A ring element: a handle to its ring plus a canonical coefficient tuple."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: "Ring", coeffs):
        self.ring = ring
        self.coeffs = tuple(coeffs)

    def _check(self, other):
        if not isinstance(other, RingElem) or other.ring.key != self.ring.key:
            raise RingMismatch(f"cannot combine {self!r} with {other!r}")

    def __add__(self, other):
        self._check(other)
        return RingElem(self.ring, self.ring.add(self.coeffs, other.coeffs))

    def __sub__(self, other):
        self._check(other)
        return RingElem(self.ring, self.ring.sub(self.coeffs, other.coeffs))

    def __mul__(self, other):
        self._check(other)
        return RingElem(self.ring, self.ring.mul(self.coeffs, other.coeffs))

    def __neg__(self):
        return RingElem(self.ring, self.ring.neg(self.coeffs))

    def star(self):
        return RingElem(self.ring, self.ring.star(self.coeffs))

    def inv(self):
        return RingElem(self.ring, self.ring.inv(self.coeffs))

    def is_unit(self):
        return self.ring.is_unit(self.coeffs)

    def is_symmetric(self):
        return self.ring.star(self.coeffs) == self.coeffs

    def is_skew(self):
        return self.ring.star(self.coeffs) == self.ring.neg(self.coeffs)

    def is_zero(self):
        return self.coeffs == self.ring.zero

    def __eq__(self, other):
        return (
            isinstance(other, RingElem)
            and other.ring.key == self.ring.key
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((self.ring.key, self.coeffs))

    def __repr__(self):
        return f"{self.ring.short_name()}{list(self.coeffs)}"

    def to_json(self):
        return list(self.coeffs)


class Ring:
    """Common interface; raw operations act on coefficient tuples."""

    spec: RingSpec
    width: int
    size: int
    pk: int  # p^k, the coefficient modulus and additive exponent
    residue_size: int  # q = |S / j|

    def __init__(self, spec: RingSpec):
        self.spec = spec
        self.p = spec.p
        self.k = spec.k
        self.pk = spec.p**spec.k
        self.key = (spec.family, spec.p, spec.k, spec.modulus)

    # -- raw arithmetic ----------------------------------------------------

    def add(self, a, b):
        m = self.pk
        return tuple((x + y) % m for x, y in zip(a, b))

    def sub(self, a, b):
        m = self.pk
        return tuple((x - y) % m for x, y in zip(a, b))

    def neg(self, a):
        m = self.pk
        return tuple((-x) % m for x in a)

    def mul(self, a, b):
        raise NotImplementedError

    def star(self, a):
        raise NotImplementedError

    def is_unit(self, a) -> bool:
        return any(self.residue(a))

    def inv(self, a):
        raise NotImplementedError

    def residue(self, a):
        """Image of a in the residue field, as a raw tuple of that ring."""
        raise NotImplementedError

    def residue_ring(self) -> "Ring":
        raise NotImplementedError

    # -- structure ---------------------------------------------------------

    @property
    def zero(self):
        return (0,) * self.width

    @property
    def one(self):
        return (1,) + (0,) * (self.width - 1)

    def from_int(self, n: int):
        return ((n % self.pk),) + (0,) * (self.width - 1)

    def elem(self, coeffs) -> RingElem:
        if isinstance(coeffs, RingElem):
            if coeffs.ring.key != self.key:
                raise RingMismatch("element from a different ring")
            return coeffs
        if isinstance(coeffs, int):
            return RingElem(self, self.from_int(coeffs))
        coeffs = tuple(int(c) % self.pk for c in coeffs)
        if len(coeffs) != self.width:
            raise InvalidSpec(f"expected {self.width} coefficients, got {len(coeffs)}")
        return RingElem(self, coeffs)

    def elements(self):
        """All raw tuples, lexicographic, cached."""
        if self.size > max_enum():
            raise TooLarge(f"|S| = {self.size} exceeds MAX_ENUM")
        return self._elements()

    @lru_cache(maxsize=None)
    def _elements(self):
        rng = range(self.pk)
        return tuple(product(rng, repeat=self.width))

    def units(self):
        return tuple(a for a in self.elements() if self.is_unit(a))

    def symmetric_elements(self):
        return tuple(a for a in self.elements() if self.star(a) == a)

    def skew_elements(self):
        return tuple(a for a in self.elements() if self.star(a) == self.neg(a))

    def radical_elements(self):
        return tuple(a for a in self.elements() if not self.is_unit(a))

    @property
    def d(self) -> int:
        """Exponent d with |S| = q^d."""

        def p_exp(n):
            e = 0
            while n > 1:
                n //= self.p
                e += 1
            return e

        return p_exp(self.size) // p_exp(self.residue_size)

    def involution_is_trivial(self) -> bool:
        return self.spec.involution == "trivial"

    def short_name(self) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Ring) and other.key == self.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return self.short_name()

    # -- ideals ------------------------------------------------------------

    def ideal_generated_by(self, gens) -> frozenset:
        """The ideal generated by raw tuples `gens`, as a frozenset (desk scale)."""
        elems = self.elements()
        span = {self.zero}
        for g in gens:
            for r in elems:
                span.add(self.mul(r, g))
        # close under addition
        frontier = list(span)
        while frontier:
            nxt = []
            for a in frontier:
                for b in list(span):
                    s = self.add(a, b)
                    if s not in span:
                        span.add(s)
                        nxt.append(s)
            frontier = nxt
        return frozenset(span)

    def minimal_ideal(self):
        """(unique, generators) for the minimal nonzero ideals; unique is a bool."""
        cyclic = {}
        for a in self.elements():
            if a == self.zero:
                continue
            ideal = self.ideal_generated_by([a])
            cyclic.setdefault(ideal, a)
        minimal = [
            (ideal, gen)
            for ideal, gen in cyclic.items()
            if not any(other < ideal for other in cyclic if other != ideal)
        ]
        return len(minimal) == 1, minimal

    def classify_ramification(self) -> str:
        """'Trivial', 'Unramified' (a skew unit exists), or 'Ramified' (a*-a in j always)."""
        if all(self.star(a) == a for a in self.elements()):
            return "Trivial"
        if any(self.star(u) == self.neg(u) for u in self.units()):
            return "Unramified"
        assert all(not self.is_unit(self.sub(self.star(a), a)) for a in self.elements())
        return "Ramified"


class ZmodRing(Ring):
    width = 1

    def __init__(self, spec: RingSpec):
        super().__init__(spec)
        self.size = self.pk
        self.residue_size = self.p

    def mul(self, a, b):
        return ((a[0] * b[0]) % self.pk,)

    def star(self, a):
        return a

    def is_unit(self, a):
        return a[0] % self.p != 0

    def inv(self, a):
        if not self.is_unit(a):
            raise NotAUnit(f"{a} is not a unit in {self}")
        return (pow(a[0], -1, self.pk),)

    def residue(self, a):
        return (a[0] % self.p,)

    def residue_ring(self):
        if self.k == 1:
            return self
        return make_ring(RingSpec(ZMOD, self.p, 1))

    def short_name(self):
        return f"Z/{self.pk}"


class QuadRing(Ring):
    """Shared machinery for both width-2 families.

    Elements a + b*g with g^2 = -c0 - c1*g; the involution is
    (a + b*g)* = (a - c1*b) - b*g, which negates g for c1 = 0 and in general
    sends g to the other root of the modulus.
    """

    width = 2

    def __init__(self, spec: RingSpec, c0: int, c1: int):
        super().__init__(spec)
        self.c0 = c0 % self.pk
        self.c1 = c1 % self.pk
        self.size = self.pk**2

    def mul(self, a, b):
        m = self.pk
        ax, ay = a
        bx, by = b
        yy = ay * by
        return ((ax * bx - self.c0 * yy) % m, (ax * by + ay * bx - self.c1 * yy) % m)

    def star(self, a):
        m = self.pk
        return ((a[0] - self.c1 * a[1]) % m, (-a[1]) % m)

    def _delta(self, a):
        # multiplicative "norm-like" determinant of multiplication by a
        ax, ay = a
        return (ax * ax - self.c1 * ax * ay + self.c0 * ay * ay) % self.pk

    def inv(self, a):
        d = self._delta(a)
        if d % self.p == 0:
            raise NotAUnit(f"{a} is not a unit in {self}")
        di = pow(d, -1, self.pk)
        m = self.pk
        return ((di * (a[0] - self.c1 * a[1])) % m, (-di * a[1]) % m)


class UnramifiedQuadRing(QuadRing):
    def __init__(self, spec: RingSpec):
        c0, c1, c2 = spec.modulus
        if c2 != 1:
            raise InvalidSpec("modulus must be monic")
        super().__init__(spec, c0, c1)
        self.residue_size = self.p**2
        # The involution must lift Frobenius on the residue field; for a monic
        # quadratic that is g |-> -c1 - g, verified in _check_involution.

    def is_unit(self, a):
        return a[0] % self.p != 0 or a[1] % self.p != 0

    def residue(self, a):
        return (a[0] % self.p, a[1] % self.p)

    def residue_ring(self):
        if self.k == 1:
            return self
        c0, c1, _ = self.spec.modulus
        return make_ring(RingSpec(UNRAMIFIED, self.p, 1, (c0 % self.p, c1 % self.p, 1)))

    def short_name(self):
        if self.k == 1:
            return f"F{self.p**2}"
        return f"(Z/{self.pk})[x]"

    def frobenius_power(self, a):
        """a^p, used to confirm that * reduces to Frobenius on the residue field."""
        out = self.one
        for _ in range(self.p):
            out = self.mul(out, a)
        return out


class RamifiedDualRing(QuadRing):
    def __init__(self, spec: RingSpec):
        super().__init__(spec, 0, 0)
        self.residue_size = self.p

    def is_unit(self, a):
        return a[0] % self.p != 0

    def residue(self, a):
        return (a[0] % self.p,)

    def residue_ring(self):
        return make_ring(RingSpec(ZMOD, self.p, 1))

    def short_name(self):
        return f"(Z/{self.pk})[t]/(t2)"


def _modulus_irreducible(p: int, c0: int, c1: int) -> bool:
    return all((r * r + c1 * r + c0) % p != 0 for r in range(p))


def default_quadratic_modulus(p: int) -> tuple[int, int, int]:
    """Lexicographically least monic irreducible x^2 + c1*x + c0 over F_p."""
    for c0, c1 in product(range(p), repeat=2):
        if _modulus_irreducible(p, c0, c1):
            return (c0, c1, 1)
    raise InvalidSpec(f"no irreducible quadratic over F_{p}")


_RING_CACHE: dict = {}


def make_ring(spec: RingSpec) -> Ring:
    """Validate a spec and return the (cached) ring handle."""
    if spec.family not in _INVOLUTION_FOR_FAMILY:
        raise InvalidSpec(f"unknown family {spec.family!r}")
    if spec.p == 2:
        raise InvalidSpec("p = 2 is not allowed: 2 must be a unit")
    if not _is_prime(spec.p):
        raise InvalidSpec(f"p = {spec.p} is not prime")
    if spec.k < 1:
        raise InvalidSpec("k must be >= 1")
    expected_inv = _INVOLUTION_FOR_FAMILY[spec.family]
    if spec.involution and spec.involution != expected_inv:
        raise InvalidSpec(
            f"family {spec.family} carries involution {expected_inv!r}, got {spec.involution!r}"
        )
    if spec.family == UNRAMIFIED:
        if spec.modulus is None:
            spec = RingSpec(spec.family, spec.p, spec.k, default_quadratic_modulus(spec.p))
        if len(spec.modulus) != 3 or spec.modulus[2] != 1:
            raise InvalidSpec("modulus must be a monic degree-2 coefficient list [c0, c1, 1]")
        if not _modulus_irreducible(spec.p, spec.modulus[0] % spec.p, spec.modulus[1] % spec.p):
            raise InvalidSpec("modulus is reducible modulo p")
    elif spec.modulus is not None:
        raise InvalidSpec(f"family {spec.family} takes no modulus")

    key = (spec.family, spec.p, spec.k, spec.modulus)
    if key not in _RING_CACHE:
        if spec.family == ZMOD:
            ring = ZmodRing(spec)
        elif spec.family == UNRAMIFIED:
            ring = UnramifiedQuadRing(spec)
            _check_involution(ring)
        else:
            ring = RamifiedDualRing(spec)
        _RING_CACHE[key] = ring
    return _RING_CACHE[key]


def _check_involution(ring: UnramifiedQuadRing):
    """The involution must be a ring map, an involution, and lift Frobenius."""
    g = (0, 1)
    sg = ring.star(g)
    # root of the modulus
    c0, c1, _ = ring.spec.modulus
    val = ring.add(ring.add(ring.mul(sg, sg), ring.mul((c1 % ring.pk, 0), sg)), (c0 % ring.pk, 0))
    assert val == ring.zero, "star(g) is not a root of the modulus"
    assert ring.star(sg) == g, "star is not an involution"
    fr = ring.residue_ring().frobenius_power(ring.residue(g))
    assert ring.residue(sg) == fr, "star does not reduce to Frobenius"


def zmod(p: int, k: int = 1) -> Ring:
    return make_ring(RingSpec(ZMOD, p, k))


def unramified_quad(p: int, k: int = 1, modulus=None) -> Ring:
    return make_ring(RingSpec(UNRAMIFIED, p, k, tuple(modulus) if modulus else None))


def ramified_dual(p: int, k: int = 1) -> Ring:
    return make_ring(RingSpec(RAMIFIED, p, k))


# ---------------------------------------------------------------------------
# Quotients


class QuotientMap:
    """A *-equivariant ring epimorphism onto a supported family, with a section."""

    def __init__(self, source: Ring, target: Ring, gens, project, section):
        self.source = source
        self.target = target
        self.generators = tuple(gens)
        self._project = project
        self._section = section

    def project(self, a):
        return self._project(a)

    def section(self, a):
        return self._section(a)

    def project_elem(self, x: RingElem) -> RingElem:
        return RingElem(self.target, self._project(x.coeffs))

    def section_elem(self, x: RingElem) -> RingElem:
        return RingElem(self.source, self._section(x.coeffs))


def quotient(ring: Ring, generators) -> QuotientMap:
    """Quotient by the ideal generated by `generators` (raw tuples or RingElems)."""
    gens = [g.coeffs if isinstance(g, RingElem) else tuple(g) for g in generators]
    ideal = ring.ideal_generated_by(gens)
    if any(ring.is_unit(a) for a in ideal):
        raise ImproperIdeal("ideal contains a unit")
    if any(ring.star(a) not in ideal for a in gens):
        raise NotStarInvariant("ideal is not *-invariant")

    p, k, pk = ring.p, ring.k, ring.pk

    def val_p(n):  # p-adic valuation of n mod p^k, with v(0) = k
        n %= pk
        if n == 0:
            return k
        v = 0
        while n % p == 0:
            n //= p
            v += 1
        return v

    if isinstance(ring, ZmodRing):
        j = min(val_p(a[0]) for a in ideal)
        if j == 0:
            raise ImproperIdeal("ideal contains a unit")
        target = make_ring(RingSpec(ZMOD, p, j))
        expect = pk // (p**j)
    elif isinstance(ring, UnramifiedQuadRing):
        j = min(min(val_p(a[0]), val_p(a[1])) for a in ideal)
        if j == 0:
            raise ImproperIdeal("ideal contains a unit")
        c0, c1, _ = ring.spec.modulus
        pj = p**j
        target = make_ring(RingSpec(UNRAMIFIED, p, j, (c0 % pj, c1 % pj, 1)))
        expect = (pk // pj) ** 2
    else:  # RamifiedDual: ideal = (p^a) + (p^b t); expressible iff b == a or b == 0
        a_val = min(val_p(x[0]) for x in ideal)
        b_val = min(val_p(x[1]) for x in ideal)
        if a_val == 0:
            raise ImproperIdeal("ideal contains a unit")
        if b_val == a_val:
            target = make_ring(RingSpec(RAMIFIED, p, a_val))
            expect = (pk // p**a_val) ** 2
        elif b_val == 0:
            target = make_ring(RingSpec(ZMOD, p, a_val))
            expect = (pk // p**a_val) * (pk // p**b_val)
        else:
            raise UnsupportedQuotient(
                "quotient is not expressible in the supported ring families"
            )
    if ring.size // len(ideal) != expect:
        raise UnsupportedQuotient("ideal shape not recognized")

    tm = target.pk

    if target.width == ring.width:

        def project(a):
            return tuple(x % tm for x in a)

        def section(a):
            return tuple(a)

    else:  # RamifiedDual -> ZmodPk (kill t)

        def project(a):
            return (a[0] % tm,)

        def section(a):
            return (a[0], 0)

    return QuotientMap(ring, target, gens, project, section)


# ---------------------------------------------------------------------------
# Shorthand parsing for the CLI


def parse_ring_shorthand(text: str) -> Ring:
    """Parse 'Z/25', 'F25', 'F5[t]', or a JSON RingSpec object."""
    import json

    text = text.strip()
    if text.startswith("{"):
        return make_ring(RingSpec.from_json(json.loads(text)))
    if text.startswith("Z/"):
        n = int(text[2:])
        for p in range(2, n + 1):
            if _is_prime(p) and n % p == 0:
                k = 0
                m = n
                while m % p == 0:
                    m //= p
                    k += 1
                if m != 1:
                    raise InvalidSpec(f"{n} is not a prime power")
                return zmod(p, k)
        raise InvalidSpec(f"cannot parse {text!r}")
    if text.startswith("F") and "[t]" in text:
        p = int(text[1 : text.index("[")])
        return ramified_dual(p, 1)
    if text.startswith("F"):
        n = int(text[1:])
        for p in range(2, n + 1):
            if _is_prime(p) and p * p == n:
                return unramified_quad(p, 1)
            if _is_prime(p) and p == n:
                return zmod(p, 1)
        raise InvalidSpec(f"cannot parse field shorthand {text!r}")
    raise InvalidSpec(f"cannot parse ring {text!r}")
