"""Bruhat generators of SL_*(2, A) for A = M(m, S), cell classification,
constructive factorization with at most two occurrences of the long letter,
the associated presentation as a rewriting system, and the invertible-symmetric
census with its explicit q = 5 counterexample.

Letters: Z is the long element w = [[0, 1], [-1, 0]] (blocks), K(t) is the
torus element h_t = diag(t, (t*)^-1) for t in A^x, and V(r) is the unipotent
u_r = [[1, r], [0, 1]] for r = r*.

Normal forms used throughout: every word can be written
k_T v_{r0} (z v_{r1}) (z v_{r2}) ... by pushing torus letters left with
z k_t = k_{(t*)^-1} z and v_r k_t = k_t v_{t^-1 r (t*)^-1}, merging unipotents,
and collapsing z v_0 z = z^2 = k_{-1}.  Rewriting below z-length 3 uses only
the dilation relation z v_t z = v_{-t^-1} z k_{-t} v_{-t^-1} (t a symmetric
unit) and, when neither middle parameter is a unit, a shift u with
a + u and b - u^-1 invertible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .errors import (
    BadParameter,
    HypothesisViolated,
    NoSolution,
    NotInGroup,
    TooLarge,
)
from .matrices import (
    FormSpace,
    Mat,
    enumerate_matrices,
    enumerate_symmetric,
    is_unitary,
    mulclose,
)
from .rings import Ring, max_enum


@dataclass(frozen=True)
class Letter:
    op: str  # "Z" | "K" | "V"
    param: Mat | None = None

    def __repr__(self):
        if self.op == "Z":
            return "Z"
        return f"{self.op}({self.param.to_rows()})"


class BruhatWord:
    """A word in the Bruhat letters over a fixed space A = M(m, S)."""

    def __init__(self, space: FormSpace, letters):
        self.space = space
        self.letters = tuple(letters)

    def z_length(self) -> int:
        return sum(1 for l in self.letters if l.op == "Z")

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, BruhatWord)
            and other.space.m == self.space.m
            and other.space.ring.key == self.space.ring.key
            and other.letters == self.letters
        )

    def __repr__(self):
        return f"BruhatWord{list(self.letters)}"

    def to_json(self):
        out = []
        for l in self.letters:
            if l.op == "Z":
                out.append({"op": "Z"})
            elif l.op == "K":
                out.append({"op": "K", "t": l.param.to_json()})
            else:
                out.append({"op": "V", "r": l.param.to_json()})
        return out


def _is_symmetric_mat(r: Mat) -> bool:
    return r.star() == r


def generator_matrix(space: FormSpace, letter: Letter) -> Mat:
    """The 2m x 2m matrix of a single letter; always unitary."""
    ring = space.ring
    m = space.m
    if letter.op == "Z":
        return space.J  # w has the same block shape as the Gram matrix
    t = letter.param
    if t.rows != m or t.cols != m:
        raise BadParameter(f"parameter must be {m}x{m}")
    if letter.op == "K":
        try:
            ti = t.star().inverse()
        except Exception:
            raise BadParameter("K-parameter must be invertible") from None
        return Mat.block2(t, Mat.zeros(ring, m, m), Mat.zeros(ring, m, m), ti)
    if letter.op == "V":
        if not _is_symmetric_mat(t):
            raise BadParameter("V-parameter must be *-symmetric")
        one = Mat.identity(ring, m)
        return Mat.block2(one, t, Mat.zeros(ring, m, m), one)
    raise BadParameter(f"unknown letter {letter.op!r}")


def eval_word(word: BruhatWord) -> Mat:
    """Left-to-right product of the letter matrices."""
    out = Mat.identity(word.space.ring, word.space.dim)
    for letter in word.letters:
        out = out * generator_matrix(word.space, letter)
    return out


def blocks(x: Mat, m: int):
    return (x.block(0, 0, m, m), x.block(0, m, m, m),
            x.block(m, 0, m, m), x.block(m, m, m, m))


def cell_of(x: Mat, space: FormSpace) -> str:
    """'B' iff block c = 0, 'BwB' iff c is invertible, else 'BwBwB'."""
    if not is_unitary(x, space):
        raise NotInGroup("matrix is not in SL_*(2, A)")
    c = x.block(space.m, 0, space.m, space.m)
    if c.is_zero():
        return "B"
    if c.is_invertible():
        return "BwB"
    return "BwBwB"


def _require_q_gt_3(ring: Ring):
    if ring.residue_size <= 3:
        raise HypothesisViolated(f"residue field size {ring.residue_size} <= 3")


def _symmetric_residue_lifts(ring: Ring, m: int):
    """Symmetric matrices of the residue ring, lifted entrywise and then
    symmetrized via (u + u*)/2.  Scan order is the residue enumeration order."""
    res = ring.residue_ring()
    half = Mat.scalar(ring, m, ring.inv(ring.from_int(2)))
    for ubar in enumerate_symmetric(res, m):
        flat = []
        for i in range(m):
            for j in range(m):
                coeffs = ubar.raw(i, j)
                lift = coeffs + (0,) * (ring.width - len(coeffs))
                flat.extend(lift)
        u = Mat(ring, m, m, flat)
        yield (u + u.star()) * half


def find_symmetrizer(a: Mat, c: Mat, space: FormSpace) -> Mat:
    """First symmetric r in scan order with a + rc invertible.

    Scans residue-level symmetric matrices first (lifted symmetrically), then
    the full symmetric space; NoSolution only when the precondition
    Aa + Ac = A fails.
    """
    ring = space.ring
    m = space.m
    for r in _symmetric_residue_lifts(ring, m):
        if (a + r * c).is_invertible():
            return r
    for r in enumerate_symmetric(ring, m):
        if (a + r * c).is_invertible():
            return r
    raise NoSolution("no symmetric r with a + rc invertible; is (a, c) unimodular?")


def find_shift(a: Mat, b: Mat, space: FormSpace) -> Mat:
    """First symmetric unit u in scan order with a + u and b - u^-1 invertible."""
    _require_q_gt_3(space.ring)
    for u in enumerate_symmetric(space.ring, space.m):
        if not u.is_invertible():
            continue
        if (a + u).is_invertible() and (b - u.inverse()).is_invertible():
            return u
    raise NoSolution("no shift found; are a, b symmetric non-units?")


def _letters_drop_identity(space: FormSpace, letters):
    one = Mat.identity(space.ring, space.m)
    zero = Mat.zeros(space.ring, space.m, space.m)
    out = []
    for l in letters:
        if l.op == "K" and l.param == one:
            continue
        if l.op == "V" and l.param == zero:
            continue
        out.append(l)
    return out


def bruhat_factor(x: Mat, space: FormSpace) -> BruhatWord:
    """Canonical factorization with at most two Z letters.

    B cell:     k_t v_r                  (t = a, r = a^-1 b)
    BwB cell:   k_t v_{r1} z v_{r2}      (t = -(c*)^-1, r1 = c* a, r2 = c^-1 d)
    BwBwB cell: k_T v_{ra} z v_{s1} z v_{s2}, obtained by symmetrizing so that
                w u_r x lands in BwB and pulling the prefix back through the
                torus.
    """
    _require_q_gt_3(space.ring)
    if not is_unitary(x, space):
        raise NotInGroup("matrix is not in SL_*(2, A)")
    ring = space.ring
    m = space.m
    a, b, c, d = blocks(x, m)

    def b_cell_params(y: Mat):
        ya, yb, _, _ = blocks(y, m)
        t = ya
        r = ya.inverse() * yb
        return t, r

    def bwb_params(y: Mat):
        ya, _, yc, yd = blocks(y, m)
        t = -yc.star().inverse()
        r1 = yc.star() * ya
        r2 = yc.inverse() * yd
        return t, r1, r2

    if c.is_zero():
        t, r = b_cell_params(x)
        letters = [Letter("K", t), Letter("V", r)]
    elif c.is_invertible():
        t, r1, r2 = bwb_params(x)
        letters = [Letter("K", t), Letter("V", r1), Letter("Z"), Letter("V", r2)]
    else:
        r = find_symmetrizer(a, c, space)
        w = generator_matrix(space, Letter("Z"))
        u_r = generator_matrix(space, Letter("V", r))
        y = w * u_r * x  # now in BwB
        s, s1, s2 = bwb_params(y)
        # x = u_{-r} w^-1 y = u_{-r} h_{-1} w h_s u_{s1} w u_{s2}
        #   = h_T u_{ra} w u_{s1} w u_{s2} with T = -(s*)^-1, ra = -T^-1 r (T*)^-1
        t_mat = -s.star().inverse()
        ra = -(t_mat.inverse() * r * t_mat.star().inverse())
        letters = [
            Letter("K", t_mat), Letter("V", ra), Letter("Z"),
            Letter("V", s1), Letter("Z"), Letter("V", s2),
        ]
        assert not s1.is_invertible()
    word = BruhatWord(space, _letters_drop_identity(space, letters))
    return word


# ---------------------------------------------------------------------------
# Presentation-level rewriting


class _NormalForm:
    """k_T v_{r0} (z v_{r1}) ... (z v_{rj}) with T a unit and every r symmetric."""

    def __init__(self, space: FormSpace):
        self.space = space
        self.t = Mat.identity(space.ring, space.m)
        self.segs = [Mat.zeros(space.ring, space.m, space.m)]

    def z_count(self):
        return len(self.segs) - 1

    def push_v(self, r: Mat):
        if not _is_symmetric_mat(r):
            raise BadParameter("V-parameter must be *-symmetric")
        self.segs[-1] = self.segs[-1] + r

    def push_k(self, t: Mat, trace=None):
        if not t.is_invertible():
            raise BadParameter("K-parameter must be invertible")
        # carry k_t from the right end to the front:
        #   v_r k_t = k_t v_{t^-1 r (t*)^-1},   z k_t = k_{(t*)^-1} z
        for idx in range(len(self.segs) - 1, -1, -1):
            ti = t.inverse()
            self.segs[idx] = ti * self.segs[idx] * ti.star()
            if idx > 0:
                t = t.star().inverse()
        self.t = self.t * t
        if trace is not None:
            trace.append("push-k")

    def push_z(self, trace=None):
        if len(self.segs) > 1 and self.segs[-1].is_zero():
            # z v_0 z = z^2 = k_{-1}
            self.segs.pop()
            if trace is not None:
                trace.append("collapse z v_0 z -> k_{-1}")
            self.push_k(-Mat.identity(self.space.ring, self.space.m), trace)
        else:
            self.segs.append(Mat.zeros(self.space.ring, self.space.m, self.space.m))

    def push_letter(self, letter: Letter, trace=None):
        if letter.op == "V":
            self.push_v(letter.param)
        elif letter.op == "K":
            self.push_k(letter.param, trace)
        else:
            self.push_z(trace)

    def to_letters(self):
        letters = [Letter("K", self.t), Letter("V", self.segs[0])]
        for seg in self.segs[1:]:
            letters.append(Letter("Z"))
            letters.append(Letter("V", seg))
        return _letters_drop_identity(self.space, letters)


def _dilation_letters(space: FormSpace, t: Mat):
    """z v_t z = v_{-t^-1} z k_{-t} v_{-t^-1} for a symmetric unit t."""
    ti = t.inverse()
    return [Letter("V", -ti), Letter("Z"), Letter("K", -t), Letter("V", -ti)]


def reduce_word(word: BruhatWord) -> BruhatWord:
    return reduce_word_trace(word)[0]


def reduce_word_trace(word: BruhatWord) -> tuple[BruhatWord, list[str]]:
    """Rewrite to z-length <= 2 using only presentation relations.

    Returns the reduced word and a human-readable trace of the rewrites.
    """
    space = word.space
    _require_q_gt_3(space.ring)
    trace: list[str] = []

    def normalize(letters):
        nf = _NormalForm(space)
        for letter in letters:
            nf.push_letter(letter, trace)
        return nf

    nf = normalize(word.letters)
    while nf.z_count() > 2:
        r1, r2 = nf.segs[1], nf.segs[2]
        prefix = [Letter("K", nf.t), Letter("V", nf.segs[0])]
        # the word is  prefix [Z v_{r1} Z v_{r2} Z] v_{r3} (Z v_{r4}) ...
        tail = []
        for idx, seg in enumerate(nf.segs[3:]):
            if idx > 0:
                tail.append(Letter("Z"))
            tail.append(Letter("V", seg))
        if r1.is_invertible():
            trace.append("dilation on first middle parameter")
            repl = _dilation_letters(space, r1) + [Letter("V", r2), Letter("Z")]
        elif r2.is_invertible():
            trace.append("dilation on second middle parameter")
            repl = [Letter("Z"), Letter("V", r1)] + _dilation_letters(space, r2)
        else:
            x = find_shift(r2, -r1, space)
            trace.append("shift insertion")
            # z v_{r1} z v_{r2} z = (z v_{r1} z v_{-x} z)(z^-1 v_{r2+x} z)
            s = r1 + x.inverse()  # invertible: -(b - x^-1) with b = -r1
            e = r2 + x  # invertible by the choice of x
            si = s.inverse()
            ei = e.inverse()
            piece1 = [
                Letter("V", -si), Letter("Z"), Letter("K", -s), Letter("V", -si),
                Letter("K", x), Letter("V", x.inverse()),
            ]
            piece2 = [
                Letter("K", -Mat.identity(space.ring, space.m)),
                Letter("V", -ei), Letter("Z"), Letter("K", -e), Letter("V", -ei),
            ]
            repl = piece1 + piece2
        nf = normalize(prefix + repl + tail)
    # opportunistic: a z-length-2 word whose middle parameter is a unit is
    # really in BwB; one dilation exposes that
    while nf.z_count() == 2 and nf.segs[1].is_invertible():
        trace.append("dilation post-pass")
        letters = [Letter("K", nf.t), Letter("V", nf.segs[0])]
        letters += _dilation_letters(space, nf.segs[1])
        letters += [Letter("V", nf.segs[2])]
        nf = normalize(letters)
    return BruhatWord(space, nf.to_letters()), trace


# ---------------------------------------------------------------------------
# Presentation verification


def _all_units(ring: Ring, m: int):
    if m == 1:
        return [Mat(ring, 1, 1, u) for u in ring.units()]
    return [x for x in enumerate_matrices(ring, m, m) if x.is_invertible()]


def group_order_by_closure(space: FormSpace, cap=None) -> int:
    return len(sl_star_elements(space, cap))


def sl_star_elements(space: FormSpace, cap=None):
    """All of SL_*(2, A) as the closure of the Bruhat elements."""
    gens = [generator_matrix(space, Letter("Z"))]
    gens += [generator_matrix(space, Letter("K", t)) for t in _all_units(space.ring, space.m)]
    gens += [generator_matrix(space, Letter("V", r))
             for r in enumerate_symmetric(space.ring, space.m)]
    return mulclose(gens, cap=cap)


def count_unitary_by_scan(space: FormSpace) -> int:
    """Independent oracle: direct membership count over all 2m x 2m matrices."""
    return sum(1 for x in enumerate_matrices(space.ring, space.dim, space.dim)
               if is_unitary(x, space))


def verify_presentation(ring: Ring, m: int, check_scan_count: bool = False) -> dict:
    """Certify the defining relations, surjectivity by closure, and kernel
    triviality at z-length <= 2 (normal-form distinctness for the 0- and 1-z
    shapes, rewriting-to-empty for degenerate 2-z shapes)."""
    _require_q_gt_3(ring)
    space = FormSpace(ring, m)
    one = Mat.identity(ring, m)
    units = _all_units(ring, m)
    syms = list(enumerate_symmetric(ring, m))
    sym_units = [u for u in syms if u.is_invertible()]

    def K(t):
        return generator_matrix(space, Letter("K", t))

    def V(r):
        return generator_matrix(space, Letter("V", r))

    w = generator_matrix(space, Letter("Z"))

    report = {"ring": ring.short_name(), "m": m, "relations": {}, "ok": True}

    rel = {}
    rel["k_s k_t = k_st"] = all(K(s) * K(t) == K(s * t) for s in units for t in units)
    rel["v_q v_r = v_q+r"] = all(V(q) * V(r) == V(q + r) for q in syms for r in syms)
    rel["z^2 = k_-1"] = (w * w == K(-one))
    rel["k_t v_r = v_trt* k_t"] = all(
        K(t) * V(r) == V(t * r * t.star()) * K(t) for t in units for r in syms
    )
    rel["z k_t = k_t*inv z"] = all(w * K(t) == K(t.star().inverse()) * w for t in units)
    rel["v_t z v_tinv z v_t = z k_-tinv"] = all(
        V(t) * w * V(t.inverse()) * w * V(t) == w * K(-t.inverse()) for t in sym_units
    )
    rel["z v_t z = v_-tinv z k_-t v_-tinv (derived)"] = all(
        w * V(t) * w == V(-t.inverse()) * w * K(-t) * V(-t.inverse()) for t in sym_units
    )
    report["relations"] = rel
    report["ok"] &= all(rel.values())

    elements = sl_star_elements(space)
    report["generated_order"] = len(elements)
    if check_scan_count:
        report["scan_order"] = count_unitary_by_scan(space)
        report["ok"] &= report["scan_order"] == len(elements)

    # injectivity of the 0-z and 1-z normal forms
    b_cell = {K(t) * V(r) for t in units for r in syms}
    report["b_forms_distinct"] = len(b_cell) == len(units) * len(syms)
    bwb = {K(t) * V(r1) * w * V(r2) for t in units for r1 in syms for r2 in syms}
    report["bwb_forms_distinct"] = len(bwb) == len(units) * len(syms) ** 2
    report["ok"] &= report["b_forms_distinct"] and report["bwb_forms_distinct"]

    # kernel triviality at z-length <= 2: the only normal forms evaluating to
    # the identity matrix are the ones that rewrite to the empty word
    identity = Mat.identity(ring, space.dim)
    ok_kernel = True
    for t in units:
        for r in syms:
            if K(t) * V(r) == identity and not (t == one and r.is_zero()):
                ok_kernel = False
    assert identity not in bwb
    nonunits = [b for b in syms if not b.is_invertible()]
    hits = 0
    for t in units:
        kt = K(t)
        for a in syms:
            left = kt * V(a) * w
            for b in nonunits:
                mid = left * V(b) * w
                for c in syms:
                    if mid * V(c) == identity:
                        hits += 1
                        word = BruhatWord(space, [
                            Letter("K", t), Letter("V", a), Letter("Z"),
                            Letter("V", b), Letter("Z"), Letter("V", c),
                        ])
                        reduced = reduce_word(word)
                        if len(reduced.letters) != 0:
                            ok_kernel = False
    report["kernel_words_found"] = hits
    report["kernel_trivial"] = ok_kernel
    report["ok"] &= ok_kernel
    return report


# ---------------------------------------------------------------------------
# The invertible-symmetric census and the explicit counterexample


def symmetric_unit_census(ring: Ring, m: int) -> dict:
    """Exact |A^x intersect A^s| / |A^s| against the bound 1 - q/(q^2 - 1).

    q is the residue field size of the fixed subring (the census compares
    hermitian matrices over F_{q^2} and symmetric matrices over F_q on an
    equal footing).  For q = 5, m = 2, trivial involution, also reproduces the
    counterexample: M = [[1, 4], [4, 2]] is an invertible symmetric matrix
    whose inverse minus diag(1, 0) is singular.
    """
    syms = list(enumerate_symmetric(ring, m))
    units = [s for s in syms if s.is_invertible()]
    ratio = Fraction(len(units), len(syms))
    if ring.involution_is_trivial():
        q = ring.residue_size
    else:
        res = ring.residue_ring()
        fixed = sum(1 for a in res.elements() if res.star(a) == a)
        q = fixed
    bound = 1 - Fraction(q, q * q - 1)
    out = {
        "symmetric": len(syms),
        "invertible_symmetric": len(units),
        "ratio": ratio,
        "bound": bound,
        "bound_ok": ratio > bound,
    }
    if q == 5 and m == 2 and ring.involution_is_trivial() and ring.k == 1:
        M = Mat.from_rows(ring, [[1, 4], [4, 2]])
        b = Mat.from_rows(ring, [[1, 0], [0, 0]])
        in_set = M in set(units)
        inv_minus_b_singular = not (M.inverse() - b).is_invertible()
        translate_inverses = {
            (s + b).inverse() for s in units if (s + b).is_invertible()
        }
        strict = translate_inverses < set(units)
        out["counterexample_ok"] = (
            in_set and inv_minus_b_singular and strict and M not in translate_inverses
        )
    return out
