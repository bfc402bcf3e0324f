"""Finitely presented algebras, their representation schemes, and the
conjugation action.

A presentation is a number of generators plus a list of free-algebra
relations.  Evaluating the relations at generic matrices (entries
xi_k_i_j) yields the defining ideal of the scheme of n-dimensional
representations; concrete points are m-tuples of matrices killing every
relation.  Trace-word tables give conjugation-invariant coordinates
that separate points of the quotient by GL_n at the chosen word bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .commpoly import CommPoly
from .errors import ParseError, PreconditionError, SingularMatrixError
from .fields import field_from_header
from .linalg import (IncrementalSpan, Matrix, det, matrix_inverse, nc_eval,
                     word_matrices)
from .ncpoly import NCPoly, parse_nc_poly, word_key, word_str


def generic_var(k, i, j):
    "Name of the (i, j) entry of the k-th generic matrix; all 1-based."
    return f"xi_{k}_{i}_{j}"


@dataclass(frozen=True)
class AlgebraPresentation:
    """A = k{x1..xm} / (relations)."""

    field: object
    m: int
    relations: tuple = ()

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("a presentation needs at least one generator")
        rels = tuple(self.relations)
        for r in rels:
            if not isinstance(r, NCPoly) or r.field != self.field or r.m != self.m:
                raise PreconditionError("relation with mismatched field or arity")
        object.__setattr__(self, "relations", rels)

    @cached_property
    def is_commutative(self):
        """True when every generator commutator is a linear combination of
        the relations as given (a syntactic test, not ideal membership)."""
        if self.m == 1:
            return True
        rels = [r for r in self.relations if r]
        words = sorted({w for r in rels for w in r.terms}, key=word_key)
        index = {w: i for i, w in enumerate(words)}
        span = IncrementalSpan(len(words)) if words else None
        if span is not None:
            for r in rels:
                vec = [self.field.zero] * len(words)
                for w, c in r.terms.items():
                    vec[index[w]] = c
                span.add(vec)
        for i in range(self.m):
            for j in range(i + 1, self.m):
                xi = NCPoly.generator(self.field, self.m, i)
                xj = NCPoly.generator(self.field, self.m, j)
                comm = xi * xj - xj * xi
                if span is None:
                    return False
                if any(w not in index for w in comm.terms):
                    return False
                vec = [self.field.zero] * len(words)
                for w, c in comm.terms.items():
                    vec[index[w]] = c
                if not span.contains(vec):
                    return False
        return True

    def generator(self, k):
        return NCPoly.generator(self.field, self.m, k)

    def to_text(self):
        lines = [self.field.header(),
                 "gens " + " ".join(f"x{k + 1}" for k in range(self.m))]
        for r in self.relations:
            lines.append(f"rel {r}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ParseError("empty presentation")
        fld = field_from_header(lines[0])
        if len(lines) < 2 or not lines[1].startswith("gens"):
            raise ParseError("expected `gens x1 ... xm` after the field header")
        names = lines[1].split()[1:]
        if names != [f"x{k + 1}" for k in range(len(names))] or not names:
            raise ParseError(f"generators must be named x1..xm in order: {names}")
        m = len(names)
        rels = []
        for ln in lines[2:]:
            if not ln.startswith("rel "):
                raise ParseError(f"unrecognized presentation line {ln!r}")
            rels.append(parse_nc_poly(ln[4:], fld, m))
        return cls(fld, m, tuple(rels))


@dataclass(frozen=True)
class GenericMatrixSystem:
    n: int
    mats: tuple


def build_generic(pres, n):
    """The m generic n x n matrices with entries xi_k_i_j."""
    if n < 1:
        raise PreconditionError("dimension must be at least 1")
    mats = []
    for k in range(1, pres.m + 1):
        rows = tuple(tuple(CommPoly.variable(pres.field, generic_var(k, i, j))
                           for j in range(1, n + 1))
                     for i in range(1, n + 1))
        mats.append(Matrix(rows))
    return GenericMatrixSystem(n, tuple(mats))


@dataclass(frozen=True)
class RepIdeal:
    field: object
    m: int
    n: int
    gens: tuple

    def to_text(self):
        lines = ["rep-ideal", self.field.header(), f"m {self.m}", f"n {self.n}"]
        for g in self.gens:
            lines.append(f"gen {g}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "rep-ideal":
            raise ParseError("expected rep-ideal block")
        fld = field_from_header(lines[1])
        m = _int_line(lines[2], "m")
        n = _int_line(lines[3], "n")
        from .commpoly import parse_comm_poly
        gens = []
        for ln in lines[4:]:
            if not ln.startswith("gen "):
                raise ParseError(f"unrecognized rep-ideal line {ln!r}")
            gens.append(parse_comm_poly(ln[4:], fld))
        return cls(fld, m, n, tuple(gens))


def rep_ideal(pres, n):
    """Entries of every relation evaluated at the generic matrices.

    Zero polynomials are dropped and syntactic duplicates removed; the
    survivors are sorted in graded-lex term order.
    """
    system = build_generic(pres, n)
    gens = []
    seen = set()
    for rel in pres.relations:
        M = nc_eval(rel, system.mats)
        for i in range(n):
            for j in range(n):
                p = M.rows[i][j]
                if p and p not in seen:
                    seen.add(p)
                    gens.append(p)
    gens.sort(key=lambda p: p.sort_tuple())
    return RepIdeal(pres.field, pres.m, n, tuple(gens))


def generic_assignment(mats):
    "Substitution dict xi_k_i_j -> concrete entry, for ideal specialization."
    values = {}
    for k, M in enumerate(mats, start=1):
        for i in range(M.n):
            for j in range(M.n):
                values[generic_var(k, i + 1, j + 1)] = M.rows[i][j]
    return values


def is_representation(pres, mats):
    """True when every relation evaluates to the zero matrix."""
    if len(mats) != pres.m:
        raise PreconditionError(
            f"arity mismatch: presentation has {pres.m} generators, got {len(mats)}")
    n = mats[0].n
    for M in mats:
        if M.n != n:
            raise PreconditionError("matrices must share one dimension")
    return all(nc_eval(rel, mats).is_zero() for rel in pres.relations)


@dataclass(frozen=True)
class RepPoint:
    """An m-tuple of n x n matrices over the base field."""

    field: object
    mats: tuple

    def __post_init__(self):
        mats = tuple(self.mats)
        if not mats:
            raise PreconditionError("a point needs at least one matrix")
        n = mats[0].n
        for M in mats:
            if not isinstance(M, Matrix) or M.n != n:
                raise PreconditionError("matrices must share one dimension")
        object.__setattr__(self, "mats", mats)

    @property
    def n(self):
        return self.mats[0].n

    @property
    def m(self):
        return len(self.mats)

    def to_text(self):
        return point_text(self.field, self.mats, None)

    @classmethod
    def from_text(cls, text):
        fld, mats, vec = parse_point_body(text)
        if vec is not None:
            raise ParseError("unexpected vec line in a plain representation point")
        return cls(fld, mats)


def matrix_row_text(field, M):
    return "; ".join(" ".join(field.format(a) for a in row) for row in M.rows)


def parse_matrix_rows(field, text, n=None):
    rows = []
    for chunk in text.split(";"):
        entries = chunk.split()
        if not entries:
            raise ParseError(f"empty matrix row in {text!r}")
        rows.append(tuple(field.parse(tok) for tok in entries))
    if any(len(r) != len(rows) for r in rows):
        raise ParseError(f"matrix is not square: {text!r}")
    if n is not None and len(rows) != n:
        raise ParseError(f"expected a {n} x {n} matrix: {text!r}")
    return Matrix(rows)


def point_text(field, mats, vec):
    lines = ["point", field.header(), f"n {mats[0].n}"]
    for M in mats:
        lines.append("mat " + matrix_row_text(field, M))
    if vec is not None:
        lines.append("vec " + " ".join(field.format(a) for a in vec))
    return "\n".join(lines) + "\n"


def parse_point_body(text):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != "point":
        raise ParseError("expected point block")
    fld = field_from_header(lines[1])
    n = _int_line(lines[2], "n")
    mats = []
    vec = None
    for ln in lines[3:]:
        if ln.startswith("mat "):
            if vec is not None:
                raise ParseError("mat line after vec line")
            mats.append(parse_matrix_rows(fld, ln[4:], n))
        elif ln.startswith("vec "):
            if vec is not None:
                raise ParseError("duplicate vec line")
            vec = tuple(fld.parse(tok) for tok in ln[4:].split())
            if len(vec) != n:
                raise ParseError(f"vector length {len(vec)} does not match n={n}")
        else:
            raise ParseError(f"unrecognized point line {ln!r}")
    if not mats:
        raise ParseError("point block with no matrices")
    return fld, tuple(mats), vec


def _int_line(line, key):
    parts = line.split()
    if len(parts) != 2 or parts[0] != key:
        raise ParseError(f"expected `{key} <int>`, got {line!r}")
    try:
        return int(parts[1])
    except ValueError:
        raise ParseError(f"bad integer in {line!r}") from None


def conjugate(g, pt):
    """Simultaneous conjugation g . (M_1..M_m) = (g M_1 g^-1, ...)."""
    if g.n != pt.n:
        raise PreconditionError("conjugating matrix has the wrong dimension")
    try:
        ginv = matrix_inverse(g)
    except SingularMatrixError:
        raise SingularMatrixError("conjugation requires an invertible matrix") from None
    return RepPoint(pt.field, tuple(g * M * ginv for M in pt.mats))


@dataclass(frozen=True, eq=False)
class InvariantTable:
    """Trace-word coordinates (plus generator determinants) of a point.

    Conjugation-invariant; equal tables identify points of the quotient
    up to the chosen word bound, never asserting orbit equality.
    """

    field: object
    m: int
    n: int
    max_len: int
    traces: dict
    gen_dets: tuple

    def __eq__(self, other):
        if not isinstance(other, InvariantTable):
            return NotImplemented
        return (self.field == other.field and self.m == other.m
                and self.n == other.n and self.max_len == other.max_len
                and self.traces == other.traces and self.gen_dets == other.gen_dets)

    def to_text(self):
        lines = ["invariant-table", self.field.header(), f"m {self.m}",
                 f"n {self.n}", f"max-len {self.max_len}"]
        for w in sorted(self.traces, key=word_key):
            lines.append(f"tr {word_str(w)} = {self.field.format(self.traces[w])}")
        for k, d in enumerate(self.gen_dets):
            lines.append(f"det x{k + 1} = {self.field.format(d)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "invariant-table":
            raise ParseError("expected invariant-table block")
        fld = field_from_header(lines[1])
        m = _int_line(lines[2], "m")
        n = _int_line(lines[3], "n")
        max_len = _int_line(lines[4], "max-len")
        traces = {}
        dets = {}
        for ln in lines[5:]:
            if ln.startswith("tr "):
                lhs, rhs = _split_eq(ln[3:])
                w = _parse_word(lhs, fld, m)
                traces[w] = fld.parse(rhs)
            elif ln.startswith("det "):
                lhs, rhs = _split_eq(ln[4:])
                w = _parse_word(lhs, fld, m)
                if len(w) != 1:
                    raise ParseError(f"det lines carry single generators: {ln!r}")
                dets[w[0]] = fld.parse(rhs)
            else:
                raise ParseError(f"unrecognized invariant-table line {ln!r}")
        gen_dets = tuple(dets[k] for k in range(m))
        return cls(fld, m, n, max_len, traces, gen_dets)


def _split_eq(text):
    if "=" not in text:
        raise ParseError(f"expected `lhs = rhs` in {text!r}")
    lhs, rhs = text.split("=", 1)
    return lhs.strip(), rhs.strip()


def _parse_word(text, fld, m):
    p = parse_nc_poly(text, fld, m)
    if len(p.terms) != 1:
        raise ParseError(f"expected a single word, got {text!r}")
    (w, c), = p.terms.items()
    if c != fld.one:
        raise ParseError(f"expected a bare word, got {text!r}")
    return w


def default_table_len(n):
    "Word-length bound 2n-1 used by invariant and norm tables."
    return 2 * n - 1


def invariant_table(pt, max_len=None):
    """Traces of all word images up to the bound, plus generator dets."""
    if max_len is None:
        max_len = default_table_len(pt.n)
    if max_len < 1:
        raise PreconditionError("max_len must be at least 1")
    table = word_matrices(pt.mats, max_len)
    traces = {w: M.trace() for w, M in table.items() if w}
    dets = tuple(det(M) for M in pt.mats)
    return InvariantTable(pt.field, pt.m, pt.n, max_len, traces, dets)
