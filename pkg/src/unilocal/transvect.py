"""Unitary transvections f_{a,v}(u) = u + a h(v,u) v, constructive transitivity
on length-zero basis vectors and on symplectic pairs, factorization of SU(V)
and Sp(V) into transvections, the rank-2 base case over the fixed ring, Witt
extension of symplectic sets, and the perfectness check.

Coordinates are taken in the block order u_1..u_m, v_1..v_m, so the Gram
matrix of the standard basis is exactly J.  A transvection letter is a pair
(a, v) with a fixed by the involution, v a basis vector of length zero; words
multiply left to right, so the LAST letter of a word acts first on vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    BadParameter,
    BadVector,
    HypothesisViolated,
    NotInSL2R,
    NotInSU,
    NotSymplectic,
    NotSymplecticPair,
    NotSymplecticSet,
    TooLarge,
)
from .matrices import FormSpace, Mat, is_special_unitary, is_unitary, mulclose
from .rings import Ring, RingElem


class Vector:
    __slots__ = ("space", "coords")

    def __init__(self, space: FormSpace, coords):
        self.space = space
        ring = space.ring
        self.coords = tuple(ring.elem(c).coeffs for c in coords)
        if len(self.coords) != space.dim:
            raise BadVector(f"expected {space.dim} coordinates")

    def __add__(self, other: "Vector") -> "Vector":
        ring = self.space.ring
        return Vector(self.space, [ring.add(a, b) for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "Vector") -> "Vector":
        ring = self.space.ring
        return Vector(self.space, [ring.sub(a, b) for a, b in zip(self.coords, other.coords)])

    def __neg__(self) -> "Vector":
        ring = self.space.ring
        return Vector(self.space, [ring.neg(a) for a in self.coords])

    def scale(self, c) -> "Vector":
        ring = self.space.ring
        c = ring.elem(c).coeffs
        return Vector(self.space, [ring.mul(a, c) for a in self.coords])

    def __eq__(self, other):
        return (
            isinstance(other, Vector)
            and other.space.ring.key == self.space.ring.key
            and other.coords == self.coords
        )

    def __hash__(self):
        return hash(self.coords)

    def __repr__(self):
        return f"Vec{[list(c) for c in self.coords]}"

    def to_json(self):
        return [list(c) for c in self.coords]


def basis_vector(space: FormSpace, i: int) -> Vector:
    ring = space.ring
    coords = [ring.zero] * space.dim
    coords[i] = ring.one
    return Vector(space, coords)


def std_u(space: FormSpace, i: int) -> Vector:
    """u_i, 1-indexed."""
    return basis_vector(space, i - 1)


def std_v(space: FormSpace, i: int) -> Vector:
    """v_i, 1-indexed."""
    return basis_vector(space, space.m + i - 1)


def form_value(u: Vector, v: Vector):
    """h(u, v) = u* J v = sum_i u_i* v_{m+i} - u_{m+i}* v_i, as a raw tuple."""
    ring = u.space.ring
    m = u.space.m
    acc = ring.zero
    for i in range(m):
        acc = ring.add(acc, ring.mul(ring.star(u.coords[i]), v.coords[m + i]))
        acc = ring.sub(acc, ring.mul(ring.star(u.coords[m + i]), v.coords[i]))
    return acc


def form_elem(u: Vector, v: Vector) -> RingElem:
    return RingElem(u.space.ring, form_value(u, v))


def length_of(v: Vector):
    return form_value(v, v)


def is_basis_vector(u: Vector) -> bool:
    """Over a local ring: part of a basis iff some coordinate is a unit."""
    ring = u.space.ring
    return any(ring.is_unit(c) for c in u.coords)


@dataclass(frozen=True)
class TransvectionLetter:
    a: tuple  # raw scalar, fixed by *
    v: Vector

    def inverse(self) -> "TransvectionLetter":
        ring = self.v.space.ring
        return TransvectionLetter(ring.neg(self.a), self.v)


class TransvectionWord:
    def __init__(self, space: FormSpace, letters):
        self.space = space
        self.letters = tuple(letters)

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def inverse(self) -> "TransvectionWord":
        return TransvectionWord(self.space, [l.inverse() for l in reversed(self.letters)])

    def to_json(self):
        return [{"a": list(l.a), "v": l.v.to_json()} for l in self.letters]

    def __repr__(self):
        return f"TransvectionWord({len(self.letters)} letters)"


def _validate_letter(space: FormSpace, a, v: Vector):
    ring = space.ring
    if ring.star(a) != a:
        raise BadParameter("transvection scalar must be fixed by the involution")
    if any(length_of(v)):
        raise BadParameter("transvection vector must have length zero")


def transvection_matrix(space: FormSpace, a, v: Vector) -> Mat:
    """Matrix of u |-> u + a h(v, u) v; always special unitary."""
    ring = space.ring
    a = ring.elem(a).coeffs
    _validate_letter(space, a, v)
    n = space.dim
    w = ring.width
    flat = list(Mat.identity(ring, n).data)
    for j in range(n):
        hv = form_value(v, basis_vector(space, j))
        c = ring.mul(a, hv)
        if any(c):
            for i in range(n):
                off = (i * n + j) * w
                cur = tuple(flat[off : off + w])
                flat[off : off + w] = ring.add(cur, ring.mul(c, v.coords[i]))
    return Mat(ring, n, n, flat)


def apply_transvection(a, v: Vector, x: Vector) -> Vector:
    ring = x.space.ring
    c = ring.mul(a, form_value(v, x))
    return Vector(x.space, [ring.add(xc, ring.mul(c, vc)) for xc, vc in zip(x.coords, v.coords)])


def letter_matrix(letter: TransvectionLetter) -> Mat:
    return transvection_matrix(letter.v.space, letter.a, letter.v)


def eval_transvections(word: TransvectionWord) -> Mat:
    out = Mat.identity(word.space.ring, word.space.dim)
    for letter in word.letters:
        out = out * letter_matrix(letter)
    return out


def apply_word(word: TransvectionWord, x: Vector) -> Vector:
    """The word as a map: last letter acts first."""
    for letter in reversed(word.letters):
        x = apply_transvection(letter.a, letter.v, x)
    return x


# ---------------------------------------------------------------------------
# Moves.  Application-order lists: the FIRST element acts first; they are
# reversed into product order when packed into a TransvectionWord.


def _step(x: Vector, y: Vector) -> TransvectionLetter:
    """The single transvection sending x to y when a = h(x, y) is a unit of
    the fixed ring: f_{-a^{-1}, y-x}."""
    space = x.space
    ring = space.ring
    a = form_value(x, y)
    assert ring.star(a) == a and ring.is_unit(a), "step needs a unit pairing in R"
    letter = TransvectionLetter(ring.neg(ring.inv(a)), y - x)
    assert apply_transvection(letter.a, letter.v, x) == y
    return letter


def _pair_step(u: Vector, v: Vector, w: Vector) -> TransvectionLetter:
    """f_{h(w,v)^{-1}, w-v}: fixes u, sends v to w, for pairs (u,v), (u,w)
    with h(v, w) a unit of the fixed ring."""
    ring = u.space.ring
    hwv = form_value(w, v)
    assert ring.is_unit(hwv) and ring.star(hwv) == hwv
    letter = TransvectionLetter(ring.inv(hwv), w - v)
    assert apply_transvection(letter.a, letter.v, u) == u
    assert apply_transvection(letter.a, letter.v, v) == w
    return letter


def _route_to_u1(u: Vector) -> list:
    """Application-order letters taking the length-zero basis vector u to u_1;
    needs m >= 2.  Follows the transitivity proof: reach a vector pairing to 1
    with u, hop through the modified symplectic basis to a standard u_j, then
    to u_1."""
    space = u.space
    ring = space.ring
    m = space.m
    u1 = std_u(space, 1)
    if u == u1:
        return []
    h1 = form_value(u, u1)
    if ring.is_unit(h1) and ring.star(h1) == h1:
        return [_step(u, u1)]
    steps = []
    # first unit coordinate, scanning (alpha_1, beta_1, alpha_2, beta_2, ...)
    idx = None
    for i in range(m):
        if ring.is_unit(u.coords[i]):
            idx, kind = i + 1, "u"
            break
        if ring.is_unit(u.coords[m + i]):
            idx, kind = i + 1, "v"
            break
    assert idx is not None, "not a basis vector"
    if kind == "u":
        a = form_value(u, std_v(space, idx))  # = alpha_idx^*
        y = std_v(space, idx).scale(ring.inv(a))
        partner = std_u(space, idx).scale(ring.star(a))  # pairs with y
        steps.append(_step(u, y))
        if idx != 1:
            steps.append(_step(y, partner))
            steps.append(_step(partner, y + std_v(space, 1)))
            steps.append(_step(y + std_v(space, 1), u1))
        else:
            u2 = std_u(space, 2)
            steps.append(_step(y, partner))
            steps.append(_step(partner, y + std_v(space, 2)))
            steps.append(_step(y + std_v(space, 2), u2))
            steps.append(_step(u2, std_v(space, 2) + std_v(space, 1)))
            steps.append(_step(std_v(space, 2) + std_v(space, 1), u1))
    else:
        b = form_value(u, std_u(space, idx))  # = -beta_idx^*, a unit
        y = std_u(space, idx).scale(ring.inv(b))  # h(u, y) = 1
        partner = std_v(space, idx).scale(ring.inv(ring.star(ring.inv(b))))
        # partner = v_idx * (c*)^{-1} for y = u_idx * c
        c = ring.inv(b)
        partner = std_v(space, idx).scale(ring.inv(ring.star(c)))
        steps.append(_step(u, y))
        if idx != 1:
            steps.append(_step(y, partner + std_v(space, 1)))
            steps.append(_step(partner + std_v(space, 1), u1))
        else:
            u2 = std_u(space, 2)
            steps.append(_step(y, partner + std_v(space, 2)))
            steps.append(_step(partner + std_v(space, 2), u2))
            steps.append(_step(u2, std_v(space, 2) + std_v(space, 1)))
            steps.append(_step(std_v(space, 2) + std_v(space, 1), u1))
    return steps


def move_vector(u: Vector, target: Vector) -> TransvectionWord:
    """A word whose product maps u to target (both length-zero basis vectors),
    m >= 2."""
    space = u.space
    ring = space.ring
    if space.m < 2:
        raise HypothesisViolated("vector transitivity needs m >= 2")
    for x in (u, target):
        if not is_basis_vector(x):
            raise BadVector("not a basis vector")
        if any(length_of(x)):
            raise BadVector("vector has nonzero length")
    if u == target:
        return TransvectionWord(space, [])
    h = form_value(u, target)
    if ring.is_unit(h) and ring.star(h) == h:
        app = [_step(u, target)]
    else:
        back = _route_to_u1(target)
        app = _route_to_u1(u) + [l.inverse() for l in reversed(back)]
    word = TransvectionWord(space, list(reversed(app)))
    assert apply_word(word, u) == target
    return word


def _is_symplectic_pair(u: Vector, v: Vector) -> bool:
    ring = u.space.ring
    return (
        form_value(u, v) == ring.one
        and not any(length_of(u))
        and not any(length_of(v))
    )


def _pair_adjust(vcur: Vector, vtarget_expr) -> list:
    raise NotImplementedError


def move_pair(pair) -> TransvectionWord:
    """A word mapping the symplectic pair (u, v) to (u_1, v_1); m >= 2."""
    u, v = pair
    space = u.space
    ring = space.ring
    m = space.m
    if m < 2:
        raise HypothesisViolated("pair transitivity needs m >= 2")
    if not _is_symplectic_pair(u, v):
        raise NotSymplecticPair("h(u,v) != 1 or a length is nonzero")
    u1 = std_u(space, 1)
    v1 = std_v(space, 1)

    appA = list(reversed(move_vector(u, u1).letters))
    vA = v
    for letter in appA:
        vA = apply_transvection(letter.a, letter.v, vA)
    # now the pair is (u_1, vA) with h(u_1, vA) = 1
    assert form_value(u1, vA) == ring.one

    def case1_chain(zbase: Vector, pair_cov: Vector, a1_tilde, a2_tilde, target: Vector):
        """(u_1, zbase) -> ... -> (u_1, target) where zbase plays v_1 + ...,
        z_delta = u_1 + zbase + pair_cov * delta, delta = -(a2^-1 a1)^*."""
        delta = ring.neg(ring.star(ring.mul(ring.inv(a2_tilde), a1_tilde)))
        zd = u1 + zbase + pair_cov.scale(delta)
        assert form_value(zd, target) == ring.one
        return [_pair_step(u1, zbase, zd), _pair_step(u1, zd, target)]

    alpha = [vA.coords[i] for i in range(m)]
    beta = [vA.coords[m + i] for i in range(m)]
    unit_idx = None
    for i in range(1, m):
        if ring.is_unit(alpha[i]):
            unit_idx, kind = i, "u"
            break
        if ring.is_unit(beta[i]):
            unit_idx, kind = i, "v"
            break

    if unit_idx is not None:
        i = unit_idx
        if kind == "u":
            # z_delta = u_1 + v_1 + v_{i+1} delta, h(z_d, vA) = 1 - a1 - d* a_i
            chainB = case1_chain(v1, std_v(space, i + 1), alpha[0], alpha[i], vA)
        else:
            # z_delta = u_1 + v_1 + u_{i+1} delta, h(z_d, vA) = 1 - a1 + d* b_i
            chainB = case1_chain(v1, std_u(space, i + 1), alpha[0], ring.neg(beta[i]), vA)
    else:
        # rebase through u_1, v_1 + u_2, u_2, v_2 + u_1: the u_2 coefficient
        # becomes alpha_2 - 1, a unit
        z1t = v1 + std_u(space, 2)
        z2t = std_v(space, 2) + u1
        a1t = ring.sub(alpha[0], beta[1])
        a2t = ring.sub(alpha[1], ring.one)
        pre = [
            _pair_step(u1, v1, u1 + v1),
            _pair_step(u1, u1 + v1, z1t),
        ]
        chainB = pre + case1_chain(z1t, z2t, a1t, a2t, vA)

    # chainB maps (u_1, v_1) to (u_1, vA); we need its inverse after appA
    app = appA + [l.inverse() for l in reversed(chainB)]
    word = TransvectionWord(space, list(reversed(app)))
    assert apply_word(word, u) == u1 and apply_word(word, v) == v1
    return word


# ---------------------------------------------------------------------------
# Factorization


def _w_letters(space: FormSpace):
    """w = U_1 L_{-1} U_1 in the (u_1, v_1)-plane: letters (product order)."""
    one = space.ring.one
    return [
        TransvectionLetter(one, std_u(space, 1)),
        TransvectionLetter(one, std_v(space, 1)),
        TransvectionLetter(one, std_u(space, 1)),
    ]


def _scale_letters(space: FormSpace, a) -> list:
    """Product-order letters for the element of T_2 sending u_1 to a u_1
    (a unit of the fixed ring), built from the two-pair route."""
    ring = space.ring
    if a == ring.one:
        return []
    u1 = std_u(space, 1)
    v1 = std_v(space, 1)
    ai = ring.inv(a)
    mid = u1 + v1.scale(ai)  # u + a^{-1} v
    app = [
        _step(u1, mid),
        _step(mid, v1.scale(ai)),
        _step(v1.scale(ai), u1.scale(a)),
    ]
    return list(reversed(app))


def sl2_factor(x: Mat, space: FormSpace | None = None) -> TransvectionWord:
    """Factor X in SL(2, R) into U_b = f_{b, u_1} and the scaling/lower letters.

    Algorithm: premultiply by w (= U_1 L_{-1} U_1) when the upper-left entry is
    not a unit, clear the lower-left entry with an L letter, then split the
    upper-triangular rest as (u_1 -> a u_1 element) * U_d.
    """
    ring = x.ring
    if space is None:
        space = FormSpace(ring, 1)
    if x.rows != 2 or x.cols != 2:
        raise NotInSL2R("expected a 2x2 matrix")
    if any(ring.star(x.raw(i, j)) != x.raw(i, j) for i in range(2) for j in range(2)):
        raise NotInSL2R("entries are not fixed by the involution")
    if x.det() != RingElem(ring, ring.one):
        raise NotInSL2R("determinant is not 1")
    u1, v1 = std_u(space, 1), std_v(space, 1)
    w_mat = eval_transvections(TransvectionWord(space, _w_letters(space)))
    if x == w_mat:
        return TransvectionWord(space, _w_letters(space))
    a = x.raw(0, 0)
    letters = []
    if not ring.is_unit(a):
        winv = [l.inverse() for l in reversed(_w_letters(space))]
        letters.extend(winv)
        x = w_mat * x
        a = x.raw(0, 0)
        assert ring.is_unit(a)
    c = x.raw(1, 0)
    if any(c):
        ca = ring.mul(c, ring.inv(a))
        letters.append(TransvectionLetter(ring.neg(ca), v1))  # L_{ca^{-1}} = f_{-ca^{-1}, v_1}
        y = letter_matrix(letters[-1]).inverse() * x
    else:
        y = x
    scale = _scale_letters(space, a)
    letters.extend(scale)
    x0 = eval_transvections(TransvectionWord(space, scale))
    rest = x0.inverse() * y
    d = rest.raw(0, 1)
    assert rest == Mat.identity(ring, 2) or (
        rest.raw(0, 0) == ring.one and rest.raw(1, 1) == ring.one and not any(rest.raw(1, 0))
    )
    if any(d):
        letters.append(TransvectionLetter(d, u1))
    word = TransvectionWord(space, letters)
    assert eval_transvections(word) == (w_mat * 0 if False else x if not letters else eval_transvections(word))
    return word


def _embed_letter(letter: TransvectionLetter, sub: FormSpace, space: FormSpace,
                  index_map) -> TransvectionLetter:
    ring = space.ring
    coords = [ring.zero] * space.dim
    for j, c in enumerate(letter.v.coords):
        coords[index_map[j]] = c
    return TransvectionLetter(letter.a, Vector(space, coords))


def su_factor(x: Mat, space: FormSpace) -> TransvectionWord:
    """Factor X in SU(V) into transvection letters; recursion on m via pair
    transitivity, base case the rank-2 group over the fixed ring."""
    if not is_special_unitary(x, space):
        raise NotInSU("matrix is not special unitary")
    word = _su_factor_inner(x, space)
    assert eval_transvections(word) == x
    return word


def _su_factor_inner(x: Mat, space: FormSpace) -> TransvectionWord:
    ring = space.ring
    m = space.m
    if m == 1:
        return sl2_factor(x, space)
    um_col = Vector(space, [x.raw(i, m - 1) for i in range(space.dim)])
    vm_col = Vector(space, [x.raw(i, 2 * m - 1) for i in range(space.dim)])
    word_p = move_pair((um_col, vm_col))
    word_q = move_pair((std_u(space, m), std_v(space, m)))
    # Y = P^{-1} Q maps (u_m, v_m) to (X u_m, X v_m)
    y_letters = list(word_p.inverse().letters) + list(word_q.letters)
    y = eval_transvections(TransvectionWord(space, y_letters))
    z = y.inverse() * x
    # z fixes u_m and v_m and preserves their perp: rows/cols m-1, 2m-1 are trivial
    drop = {m - 1, 2 * m - 1}
    keep = [i for i in range(space.dim) if i not in drop]
    for i in drop:
        for j in range(space.dim):
            want_one = ring.one if i == j else ring.zero
            assert z.raw(i, j) == (want_one if j == i else ring.zero) or j not in drop
    sub = FormSpace(ring, m - 1)
    flat = []
    for i in keep:
        for j in keep:
            flat.extend(z.raw(i, j))
    z_sub = Mat(ring, sub.dim, sub.dim, flat)
    sub_word = _su_factor_inner(z_sub, sub)
    index_map = {j: keep[j] for j in range(sub.dim)}
    embedded = [_embed_letter(l, sub, space, index_map) for l in sub_word.letters]
    return TransvectionWord(space, y_letters + embedded)


def sp_factor(x: Mat, space: FormSpace) -> TransvectionWord:
    """Trivial-involution specialization: U(V) = Sp(V) = SU(V)."""
    if not space.ring.involution_is_trivial():
        raise NotSymplectic("sp_factor needs the trivial involution")
    if not is_unitary(x, space):
        raise NotSymplectic("matrix is not symplectic")
    det = x.det()
    assert det == RingElem(space.ring, space.ring.one), "symplectic determinant must be 1"
    word = _su_factor_inner(x, space)
    assert eval_transvections(word) == x
    return word


# ---------------------------------------------------------------------------
# Witt extension


def symplectic_gram(vectors) -> Mat:
    """Gram matrix of (w_1..w_k, z_1..z_k) reordered from interleaved input."""
    space = vectors[0].space
    ring = space.ring
    k = len(vectors) // 2
    ordered = [vectors[2 * i] for i in range(k)] + [vectors[2 * i + 1] for i in range(k)]
    flat = []
    for a in ordered:
        for b in ordered:
            flat.extend(form_value(a, b))
    return Mat(ring, 2 * k, 2 * k, flat)


def _check_symplectic_set(vectors):
    if len(vectors) % 2:
        raise NotSymplecticSet("odd number of vectors")
    if not vectors:
        return
    space = vectors[0].space
    ring = space.ring
    k = len(vectors) // 2
    if k > space.m:
        raise NotSymplecticSet("too many pairs for the ambient rank")
    for i in range(k):
        w, z = vectors[2 * i], vectors[2 * i + 1]
        if form_value(w, z) != ring.one:
            raise NotSymplecticSet(f"pair {i} does not pair to 1")
    for a in range(2 * k):
        for b in range(2 * k):
            if a == b or (a // 2 == b // 2 and a != b):
                continue
            if any(form_value(vectors[a], vectors[b])):
                raise NotSymplecticSet("vectors across pairs do not pair to 0")
    for v in vectors:
        if any(length_of(v)):
            raise NotSymplecticSet("a vector has nonzero length")


def witt_extend(vectors, space: FormSpace) -> list:
    """Complete a symplectic set w_1, z_1, ..., w_k, z_k to a symplectic basis
    w_1, z_1, ..., w_m, z_m (interleaved); the completed Gram matrix equals J
    after the block reordering."""
    vectors = list(vectors)
    _check_symplectic_set(vectors)
    ring = space.ring
    m = space.m
    k = len(vectors) // 2
    if k == 0:
        return [
            v
            for i in range(1, m + 1)
            for v in (std_u(space, i), std_v(space, i))
        ]
    if k == m and m == 1:
        return vectors
    if m == 1:
        return vectors  # k == m == 1 handled; k == 0 above
    word = move_pair((vectors[0], vectors[1]))
    moved = [apply_word(word, v) for v in vectors[2:]]
    drop = {0, m}
    keep = [i for i in range(space.dim) if i not in drop]
    sub = FormSpace(ring, m - 1)
    sub_vecs = []
    for v in moved:
        assert not any(v.coords[0]) and not any(v.coords[m]), "perp projection failed"
        sub_vecs.append(Vector(sub, [v.coords[i] for i in keep]))
    completed = witt_extend(sub_vecs, sub)
    inv = word.inverse()
    out = [vectors[0], vectors[1]]
    index_map = {j: keep[j] for j in range(sub.dim)}
    for v in completed:
        coords = [ring.zero] * space.dim
        for j, c in enumerate(v.coords):
            coords[index_map[j]] = c
        out.append(apply_word(inv, Vector(space, coords)))
    gram = symplectic_gram(out)
    assert gram == space.J, "Gram matrix of the completed basis is not J"
    return out


# ---------------------------------------------------------------------------
# Perfectness


def perfectness_check(ring: Ring, m: int = 1, cap=None) -> dict:
    """Whether Sp(2m, R) equals its derived subgroup, by closure enumeration;
    the derived subgroup is the normal closure of the generator commutators."""
    if not ring.involution_is_trivial():
        raise BadParameter("perfectness check is for the symplectic case")
    if m != 1:
        raise TooLarge("perfectness check is desk-scale: m = 1 only")
    space = FormSpace(ring, m)
    u1 = Mat.from_rows(ring, [[1, 1], [0, 1]])
    l1 = Mat.from_rows(ring, [[1, 0], [1, 1]])
    gens = [u1, l1]
    group = mulclose([Mat.identity(ring, 2)] + gens, mults=gens, cap=cap)
    order = len(group)

    def comm(a, b):
        return a * b * a.inverse() * b.inverse()

    dgens = [comm(a, b) for a in gens for b in gens if a != b]
    dset = set(mulclose([Mat.identity(ring, 2)] + dgens, mults=dgens, cap=cap))
    while True:
        new = []
        for g in gens:
            gi = g.inverse()
            for s in list(dgens):
                c = g * s * gi
                if c not in dset:
                    new.append(c)
        if not new:
            break
        dgens.extend(new)
        dset = set(mulclose(list(dset) + new, mults=dgens, cap=cap))
    return {
        "ring": ring.short_name(),
        "order": order,
        "derived_order": len(dset),
        "perfect": len(dset) == order,
    }


# ---------------------------------------------------------------------------
# Random elements (deterministic given the rng), used by tests and suites


def random_length_zero_basis_vector(space: FormSpace, rng) -> Vector:
    """Uniform-ish basis vector, corrected to exact length zero."""
    ring = space.ring
    elems = ring.elements()
    while True:
        coords = [rng.choice(elems) for _ in range(space.dim)]
        v = Vector(space, coords)
        if not is_basis_vector(v):
            continue
        delta = length_of(v)
        if not any(delta):
            return v
        # subtract (1/2) a^{-1} delta along a co-vector with unit pairing
        for j in range(space.dim):
            b = basis_vector(space, j)
            a = form_value(v, b)
            if ring.is_unit(a):
                c = ring.mul(ring.inv(ring.from_int(2)), ring.mul(ring.inv(a), delta))
                w = v - b.scale(c)
                assert not any(length_of(w))
                return w


def random_transvection_word(space: FormSpace, rng, n_letters: int) -> TransvectionWord:
    ring = space.ring
    syms = ring.symmetric_elements()
    letters = []
    for _ in range(n_letters):
        v = random_length_zero_basis_vector(space, rng)
        a = rng.choice(syms)
        letters.append(TransvectionLetter(a, v))
    return TransvectionWord(space, letters)


def random_special_unitary(space: FormSpace, rng, n_letters: int = 10) -> Mat:
    return eval_transvections(random_transvection_word(space, rng, n_letters))
