"""Points of the non-commutative Hilbert scheme.

A pointed representation is a matrix tuple plus a marked vector; it is
cyclic when the word images of the vector span the whole space.  Cyclic
points correspond to left ideals of codimension n, presented here by a
word basis of the quotient together with the generator actions in that
basis.  Ideal membership, the equivalence of pointed representations,
and triviality of stabilizers are all exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParseError, PreconditionError
from .fields import field_from_header
from .linalg import (IncrementalSpan, Matrix, matrix_inverse, nc_eval,
                     nullspace)
from .ncpoly import NCPoly, word_str
from .repvariety import (RepPoint, _int_line, _parse_word, matrix_row_text,
                         parse_matrix_rows, parse_point_body, point_text)


@dataclass(frozen=True)
class PointedRep:
    """A representation point plus a marked vector of matching length."""

    rep: RepPoint
    v: tuple

    def __post_init__(self):
        v = tuple(self.v)
        if len(v) != self.rep.n:
            raise PreconditionError(
                f"vector length {len(v)} does not match n={self.rep.n}")
        object.__setattr__(self, "v", v)

    @property
    def field(self):
        return self.rep.field

    @property
    def n(self):
        return self.rep.n

    @property
    def m(self):
        return self.rep.m

    def to_text(self):
        return point_text(self.rep.field, self.rep.mats, self.v)

    @classmethod
    def from_text(cls, text):
        fld, mats, vec = parse_point_body(text)
        if vec is None:
            raise ParseError("pointed representation needs a vec line")
        return cls(RepPoint(fld, mats), vec)


def cyclic_word_basis(pt):
    """Graded-lex-first words whose images of v are linearly independent.

    Breadth-first: level L+1 candidates are x_k * w over selected level-L
    words w, scanned in lexicographic order.  Prepending a generator to a
    word whose image is already dependent can never produce a new
    independent image, so the scan visits exactly the words it needs and
    still returns the lexicographically first independent set.
    """
    n = pt.n
    span = IncrementalSpan(n)
    words, images = [], []
    if span.add(pt.v):
        words.append(())
        images.append(pt.v)
    level = [((), pt.v)]
    while level and len(words) < n:
        nxt = []
        for k in range(pt.m):
            for w, u in level:
                w2 = (k,) + w
                u2 = pt.rep.mats[k].apply(u)
                if span.add(u2):
                    words.append(w2)
                    images.append(u2)
                    nxt.append((w2, u2))
        level = nxt
    return words, images


def span_dimension(pt):
    return len(cyclic_word_basis(pt)[0])


def is_cyclic(pt):
    """True when the word images of v span the full space."""
    return span_dimension(pt) == pt.n


@dataclass(frozen=True, eq=False)
class IdealPresentation:
    """A codimension-n left ideal, given by its cyclic quotient data:
    a word basis of the quotient, the generator actions in that basis,
    and the position of the class of 1."""

    field: object
    m: int
    n: int
    basis_words: tuple
    action_mats: tuple
    cyclic_index: int

    def __eq__(self, other):
        if not isinstance(other, IdealPresentation):
            return NotImplemented
        return (self.field == other.field and self.m == other.m
                and self.n == other.n and self.basis_words == other.basis_words
                and self.action_mats == other.action_mats
                and self.cyclic_index == other.cyclic_index)

    def to_text(self):
        lines = ["ideal-presentation", self.field.header(), f"m {self.m}",
                 f"n {self.n}",
                 "basis " + ", ".join(word_str(w) for w in self.basis_words),
                 f"cyclic-index {self.cyclic_index}"]
        for k, M in enumerate(self.action_mats):
            lines.append(f"act x{k + 1} = " + matrix_row_text(self.field, M))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "ideal-presentation":
            raise ParseError("expected ideal-presentation block")
        fld = field_from_header(lines[1])
        m = _int_line(lines[2], "m")
        n = _int_line(lines[3], "n")
        if not lines[4].startswith("basis "):
            raise ParseError("expected basis line")
        words = tuple(_parse_word(tok.strip(), fld, m)
                      for tok in lines[4][6:].split(","))
        idx = _int_line(lines[5], "cyclic-index")
        acts = {}
        for ln in lines[6:]:
            if not ln.startswith("act "):
                raise ParseError(f"unrecognized ideal-presentation line {ln!r}")
            lhs, rhs = ln[4:].split("=", 1)
            w = _parse_word(lhs.strip(), fld, m)
            if len(w) != 1:
                raise ParseError(f"act lines carry single generators: {ln!r}")
            acts[w[0]] = parse_matrix_rows(fld, rhs.strip(), n)
        mats = tuple(acts[k] for k in range(m))
        return cls(fld, m, n, words, mats, idx)


def triple_to_ideal(pt):
    """Left-ideal presentation of a cyclic pointed representation.

    The quotient basis is the graded-lex-first independent word set; the
    action matrices are the original generators rewritten in that basis.
    """
    words, images = cyclic_word_basis(pt)
    if len(words) < pt.n:
        raise PreconditionError(
            f"not cyclic: word span has dimension {len(words)} < {pt.n}")
    B = Matrix.from_columns(images)
    Binv = matrix_inverse(B)
    action = tuple(Binv * M * B for M in pt.rep.mats)
    return IdealPresentation(pt.field, pt.m, pt.n, tuple(words), action,
                             words.index(()))


def _unit_vector(field, n, i):
    return tuple(field.one if j == i else field.zero for j in range(n))


def _word_image(mats, word, vec):
    for k in reversed(word):
        vec = mats[k].apply(vec)
    return vec


def ideal_membership(ip, a, pt=None):
    """Whether a free-algebra element lies in the presented left ideal.

    Membership means the element annihilates the marked vector; when the
    originating pointed representation is supplied it is used directly,
    otherwise the action matrices stand in for it.
    """
    if not isinstance(a, NCPoly) or a.m != ip.m:
        raise PreconditionError("arity mismatch with the presentation")
    if pt is None:
        mats = ip.action_mats
        vec = _unit_vector(ip.field, ip.n, ip.cyclic_index)
    else:
        if pt.m != ip.m or pt.n != ip.n:
            raise PreconditionError("point does not match the presentation")
        mats, vec = pt.rep.mats, pt.v
    image = nc_eval(a, mats).apply(vec)
    return not any(image)


def ideal_to_triple(ip):
    """Pointed representation carried by an ideal presentation.

    The module is the quotient itself: generators act by the stored
    matrices and the marked vector is the class of 1.  The stored data
    must reproduce its own word basis (basis word w applied to the class
    of 1 must give the w-th basis vector); inconsistent matrices are
    rejected.
    """
    if not (0 <= ip.cyclic_index < ip.n):
        raise PreconditionError("cyclic index out of range")
    if len(ip.basis_words) != ip.n or len(ip.action_mats) != ip.m:
        raise PreconditionError("basis or action data of the wrong size")
    if ip.basis_words[ip.cyclic_index] != ():
        raise PreconditionError("the class of 1 must be a basis element")
    cyc = _unit_vector(ip.field, ip.n, ip.cyclic_index)
    for j, w in enumerate(ip.basis_words):
        if _word_image(ip.action_mats, w, cyc) != _unit_vector(ip.field, ip.n, j):
            raise PreconditionError(
                f"inconsistent action matrices: word {word_str(w)} does not "
                f"reproduce basis vector {j}")
    pt = PointedRep(RepPoint(ip.field, ip.action_mats), cyc)
    return pt


def triples_equivalent(p1, p2):
    """The unique change of basis carrying p1 to p2, or None.

    On cyclic points an equivalence g is pinned down by where it sends
    the word-basis images of the marked vector; the candidate built from
    those images is returned only if it intertwines every generator and
    matches the vectors.
    """
    if p1.field != p2.field or p1.m != p2.m or p1.n != p2.n:
        raise PreconditionError("points live on different spaces")
    words, images1 = cyclic_word_basis(p1)
    if len(words) < p1.n:
        raise PreconditionError("first point is not cyclic")
    if not is_cyclic(p2):
        raise PreconditionError("second point is not cyclic")
    images2 = [_word_image(p2.rep.mats, w, p2.v) for w in words]
    span = IncrementalSpan(p2.n)
    if not all(span.add(u) for u in images2):
        return None
    B1 = Matrix.from_columns(images1)
    B2 = Matrix.from_columns(images2)
    g = B2 * matrix_inverse(B1)
    if g.apply(p1.v) != p2.v:
        return None
    for M1, M2 in zip(p1.rep.mats, p2.rep.mats):
        if g * M1 != M2 * g:
            return None
    return g


def stabilizer_is_trivial(pt):
    """Whether only the identity fixes (rep, v) under g . (rep, v).

    Solves the linear system g X_k = X_k g, g v = v; its solution set is
    I plus the kernel of the homogeneous part, so triviality is exactly
    a zero-dimensional kernel.  Cyclic points always pass.
    """
    if not is_cyclic(pt):
        raise PreconditionError("stabilizer check requires a cyclic point")
    n = pt.n
    zero = pt.field.zero
    rows = []
    for X in pt.rep.mats:
        for i in range(n):
            for j in range(n):
                row = [zero] * (n * n)
                for b in range(n):
                    row[i * n + b] = row[i * n + b] + X.rows[b][j]
                for a in range(n):
                    row[a * n + j] = row[a * n + j] - X.rows[i][a]
                rows.append(row)
    for i in range(n):
        row = [zero] * (n * n)
        for b in range(n):
            row[i * n + b] = pt.v[b]
        rows.append(row)
    return not nullspace(rows, n * n)
