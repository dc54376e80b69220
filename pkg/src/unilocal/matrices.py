"""Exact matrices over a ring handle, the conjugate-transpose, the Gram matrix
J of the standard skew hermitian form, and the unitary-group membership tests.

Matrices are immutable; entries are stored as one flat tuple of coefficient
integers so multiplication can be routed through the hot kernels.
"""

from __future__ import annotations

from itertools import product

from . import _kernels
from .errors import DimMismatch, NotInvertible, RingMismatch, TooLarge
from .rings import Ring, RingElem, max_enum


class Mat:
    __slots__ = ("ring", "rows", "cols", "data")

    def __init__(self, ring: Ring, rows: int, cols: int, data):
        self.ring = ring
        self.rows = rows
        self.cols = cols
        self.data = tuple(data)
        assert len(self.data) == rows * cols * ring.width

    # -- constructors --------------------------------------------------

    @staticmethod
    def from_rows(ring: Ring, rows) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat = []
        for row in rows:
            if len(row) != c:
                raise DimMismatch("ragged rows")
            for e in row:
                flat.extend(ring.elem(e).coeffs)
        return Mat(ring, r, c, flat)

    @staticmethod
    def identity(ring: Ring, n: int) -> "Mat":
        w = ring.width
        flat = [0] * (n * n * w)
        for i in range(n):
            flat[(i * n + i) * w] = 1
        return Mat(ring, n, n, flat)

    @staticmethod
    def zeros(ring: Ring, r: int, c: int) -> "Mat":
        return Mat(ring, r, c, [0] * (r * c * ring.width))

    @staticmethod
    def scalar(ring: Ring, n: int, a) -> "Mat":
        a = ring.elem(a)
        m = Mat.zeros(ring, n, n)
        flat = list(m.data)
        w = ring.width
        for i in range(n):
            flat[(i * n + i) * w : (i * n + i + 1) * w] = a.coeffs
        return Mat(ring, n, n, flat)

    @staticmethod
    def block2(a: "Mat", b: "Mat", c: "Mat", d: "Mat") -> "Mat":
        """[[a, b], [c, d]] of four equally sized square blocks."""
        ring = a.ring
        m = a.rows
        w = ring.width
        n = 2 * m
        flat = [0] * (n * n * w)
        for (bi, bj), blk in (((0, 0), a), ((0, 1), b), ((1, 0), c), ((1, 1), d)):
            for i in range(m):
                for j in range(m):
                    src = (i * m + j) * w
                    dst = ((bi * m + i) * n + (bj * m + j)) * w
                    flat[dst : dst + w] = blk.data[src : src + w]
        return Mat(ring, n, n, flat)

    # -- access ---------------------------------------------------------

    def entry(self, i: int, j: int) -> RingElem:
        w = self.ring.width
        off = (i * self.cols + j) * w
        return RingElem(self.ring, self.data[off : off + w])

    def raw(self, i: int, j: int):
        w = self.ring.width
        off = (i * self.cols + j) * w
        return self.data[off : off + w]

    def to_rows(self):
        return [[list(self.raw(i, j)) for j in range(self.cols)] for i in range(self.rows)]

    def block(self, i0: int, j0: int, r: int, c: int) -> "Mat":
        w = self.ring.width
        flat = []
        for i in range(i0, i0 + r):
            for j in range(j0, j0 + c):
                flat.extend(self.raw(i, j))
        return Mat(self.ring, r, c, flat)

    def column(self, j: int):
        return tuple(self.raw(i, j) for i in range(self.rows))

    # -- arithmetic -------------------------------------------------------

    def _check_ring(self, other: "Mat"):
        if self.ring.key != other.ring.key:
            raise RingMismatch("matrices over different rings")

    def __mul__(self, other: "Mat") -> "Mat":
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimMismatch(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        ring = self.ring
        if ring.width == 1:
            data = _kernels.mat_mul_w1(
                self.data, other.data, self.rows, self.cols, other.cols, ring.pk
            )
        else:
            data = _kernels.mat_mul_w2(
                self.data, other.data, self.rows, self.cols, other.cols,
                ring.pk, ring.c0, ring.c1,
            )
        return Mat(ring, self.rows, other.cols, data)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimMismatch("shape mismatch")
        m = self.ring.pk
        return Mat(self.ring, self.rows, self.cols,
                   [(x + y) % m for x, y in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_ring(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimMismatch("shape mismatch")
        m = self.ring.pk
        return Mat(self.ring, self.rows, self.cols,
                   [(x - y) % m for x, y in zip(self.data, other.data)])

    def __neg__(self) -> "Mat":
        m = self.ring.pk
        return Mat(self.ring, self.rows, self.cols, [(-x) % m for x in self.data])

    def scalar_mul(self, a) -> "Mat":
        a = self.ring.elem(a).coeffs
        ring = self.ring
        flat = []
        for i in range(self.rows):
            for j in range(self.cols):
                flat.extend(ring.mul(a, self.raw(i, j)))
        return Mat(ring, self.rows, self.cols, flat)

    def star(self) -> "Mat":
        """Conjugate transpose: (x*)_{ij} = (x_{ji})*."""
        ring = self.ring
        flat = []
        for j in range(self.cols):
            for i in range(self.rows):
                flat.extend(ring.star(self.raw(i, j)))
        return Mat(ring, self.cols, self.rows, flat)

    def is_zero(self) -> bool:
        return not any(self.data)

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and other.ring.key == self.ring.key
            and other.rows == self.rows
            and other.cols == self.cols
            and other.data == self.data
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        return f"Mat({self.ring}, {self.to_rows()})"

    # -- determinant / inverse -------------------------------------------

    def det(self) -> RingElem:
        """Exact determinant by subset dynamic programming (no divisions)."""
        if self.rows != self.cols:
            raise DimMismatch("determinant of a non-square matrix")
        ring = self.ring
        n = self.rows
        if n == 0:
            return RingElem(ring, ring.one)
        # dp over column subsets, expanding row by row
        dp = {0: ring.one}
        for i in range(n):
            ndp = {}
            for subset, val in dp.items():
                sign_flips = 0
                for j in range(n):
                    bit = 1 << j
                    if subset & bit:
                        continue
                    e = self.raw(i, j)
                    if any(e):
                        term = ring.mul(val, e)
                        if sign_flips % 2:
                            term = ring.neg(term)
                        key = subset | bit
                        if key in ndp:
                            ndp[key] = ring.add(ndp[key], term)
                        else:
                            ndp[key] = term
                    sign_flips += 1
            dp = ndp
        full = (1 << n) - 1
        return RingElem(ring, dp.get(full, ring.zero))

    def inverse(self) -> "Mat":
        """Gauss-Jordan with the first unit pivot in scan order.

        Over a local ring an invertible matrix admits a unit pivot at every
        elimination step; failure to find one certifies non-invertibility.
        """
        if self.rows != self.cols:
            raise DimMismatch("inverse of a non-square matrix")
        ring = self.ring
        n = self.rows
        a = [[self.raw(i, j) for j in range(n)] for i in range(n)]
        inv = [[ring.one if i == j else ring.zero for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(
                (r for r in range(col, n) if ring.is_unit(a[r][col])),
                None,
            )
            if piv is None:
                raise NotInvertible("no unit pivot: residue matrix is singular")
            if piv != col:
                a[piv], a[col] = a[col], a[piv]
                inv[piv], inv[col] = inv[col], inv[piv]
            pi = ring.inv(a[col][col])
            a[col] = [ring.mul(pi, e) for e in a[col]]
            inv[col] = [ring.mul(pi, e) for e in inv[col]]
            for r in range(n):
                if r != col and any(a[r][col]):
                    f = a[r][col]
                    a[r] = [ring.sub(e, ring.mul(f, g)) for e, g in zip(a[r], a[col])]
                    inv[r] = [ring.sub(e, ring.mul(f, g)) for e, g in zip(inv[r], inv[col])]
        flat = []
        for row in inv:
            for e in row:
                flat.extend(e)
        return Mat(ring, n, n, flat)

    def is_invertible(self) -> bool:
        """Invertible iff the residue matrix is invertible over the residue field."""
        try:
            self.inverse()
            return True
        except NotInvertible:
            return False

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "ring": self.ring.spec.to_json(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": self.to_rows(),
        }


class FormSpace:
    """The rank-2m form space with skew hermitian Gram matrix J = [[0, 1], [-1, 0]]."""

    def __init__(self, ring: Ring, m: int):
        self.ring = ring
        self.m = m
        self.dim = 2 * m
        one = Mat.identity(ring, m)
        self.J = Mat.block2(Mat.zeros(ring, m, m), one, -one, Mat.zeros(ring, m, m))

    def __repr__(self):
        return f"FormSpace({self.ring}, m={self.m})"


def is_unitary(x: Mat, space: FormSpace) -> bool:
    """x in U(2m, S): invertible and x* J x = J.

    The Gram condition alone exhibits the left inverse -J x* J, and a one-sided
    inverse over a commutative base ring is two-sided, so no separate
    invertibility probe is needed.
    """
    if x.rows != space.dim or x.cols != space.dim:
        raise DimMismatch(f"expected a {space.dim}x{space.dim} matrix")
    return x.star() * space.J * x == space.J


def is_special_unitary(x: Mat, space: FormSpace) -> bool:
    return is_unitary(x, space) and x.det() == RingElem(x.ring, x.ring.one)


def mulclose(seed, mults=None, cap=None):
    """Closure of `seed` under left multiplication by `mults` (default: seed).

    Deterministic BFS; raises TooLarge past `cap` (default MAX_ENUM).
    """
    if cap is None:
        cap = max_enum()
    mults = list(mults) if mults is not None else list(seed)
    seen = {}
    frontier = []
    for s in seed:
        if s not in seen:
            seen[s] = True
            frontier.append(s)
    while frontier:
        new = []
        for g in mults:
            for h in frontier:
                gh = g * h
                if gh not in seen:
                    seen[gh] = True
                    new.append(gh)
                    if len(seen) > cap:
                        raise TooLarge(f"closure exceeded cap {cap}")
        frontier = new
    return list(seen)


def enumerate_matrices(ring: Ring, rows: int, cols: int):
    """All rows x cols matrices over the ring, lexicographic by flat entries."""
    count = ring.size ** (rows * cols)
    if count > max_enum():
        raise TooLarge(f"{count} matrices exceeds MAX_ENUM")
    for entries in product(ring.elements(), repeat=rows * cols):
        flat = []
        for e in entries:
            flat.extend(e)
        yield Mat(ring, rows, cols, flat)


def enumerate_symmetric(ring: Ring, m: int):
    """All r = r* in M(m, S), lexicographic in the free parameters
    (diagonal from the symmetric elements, strict upper triangle free)."""
    positions = [(i, j) for i in range(m) for j in range(i, m)]
    choices = [
        ring.symmetric_elements() if i == j else ring.elements() for (i, j) in positions
    ]
    total = 1
    for c in choices:
        total *= len(c)
    if total > max_enum():
        raise TooLarge(f"{total} symmetric matrices exceeds MAX_ENUM")
    w = ring.width
    for vals in product(*choices):
        flat = [0] * (m * m * w)
        for (i, j), v in zip(positions, vals):
            flat[(i * m + j) * w : (i * m + j + 1) * w] = v
            if i != j:
                flat[(j * m + i) * w : (j * m + i + 1) * w] = ring.star(v)
        yield Mat(ring, m, m, flat)
