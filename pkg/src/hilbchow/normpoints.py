"""The determinant law of a representation and the Hilbert-Chow image.

Composing a representation with the determinant is a multiplicative
polynomial map homogeneous of degree n; it is pinned down by finitely
many coefficients, read off the determinant of a generic linear
combination of argument images.  A norm point packages what the toolkit
records of that map: the characteristic polynomials of the generator
images, the mixed coefficient table on the generators, and per-word
determinants up to a length bound.  The pointed version first checks
cyclicity and then forgets the vector, so it factors through the plain
representation point.  For commuting split tuples, the joint
generalized eigenvalues with multiplicities recover the classical
0-cycle of the subscheme.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .commpoly import CommPoly, parse_comm_poly
from .cyclic import span_dimension
from .errors import ParseError, PreconditionError
from .fields import PrimeField, field_from_header
from .linalg import (Matrix, charpoly, det, det_linear_combination, nc_eval,
                     nullspace, solve_columns, word_matrices)
from .ncpoly import NCPoly, parse_nc_poly, word_key, word_str
from .repvariety import _int_line, default_table_len


@dataclass(frozen=True, eq=False)
class LawCoefficientTable:
    """Coefficients of det∘rho on a finite argument list.

    Keys are exponent vectors over the arguments; homogeneity forces
    every stored vector to have weight n, which the constructor checks.
    """

    field: object
    n: int
    args: tuple
    coeffs: dict

    def __post_init__(self):
        for xi in self.coeffs:
            if len(xi) != len(self.args) or sum(xi) != self.n:
                raise PreconditionError(
                    f"exponent vector {xi} is not homogeneous of weight {self.n}")

    def __eq__(self, other):
        if not isinstance(other, LawCoefficientTable):
            return NotImplemented
        return (self.field == other.field and self.n == other.n
                and self.args == other.args and self.coeffs == other.coeffs)

    def sorted_coeffs(self):
        return sorted(self.coeffs.items())

    def to_text(self):
        lines = ["law-table", self.field.header(), f"n {self.n}",
                 "args " + "; ".join(str(a) for a in self.args)]
        for xi, c in self.sorted_coeffs():
            key = "(" + ",".join(str(e) for e in xi) + ")"
            lines.append(f"coeff {key} = {self.field.format(c)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text, m=None):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "law-table":
            raise ParseError("expected law-table block")
        fld = field_from_header(lines[1])
        n = _int_line(lines[2], "n")
        if not lines[3].startswith("args "):
            raise ParseError("expected args line")
        args = tuple(parse_nc_poly(tok.strip(), fld, m)
                     for tok in lines[3][5:].split(";"))
        if m is None:
            arity = max((a.m for a in args), default=0)
            args = tuple(NCPoly(fld, arity, a.terms) for a in args)
        coeffs = {}
        for ln in lines[4:]:
            if not ln.startswith("coeff "):
                raise ParseError(f"unrecognized law-table line {ln!r}")
            lhs, rhs = ln[6:].rsplit("=", 1)
            lhs = lhs.strip()
            if not (lhs.startswith("(") and lhs.endswith(")")):
                raise ParseError(f"expected exponent tuple: {ln!r}")
            xi = tuple(int(tok) for tok in lhs[1:-1].split(",") if tok.strip())
            coeffs[xi] = fld.parse(rhs.strip())
        return cls(fld, n, args, coeffs)


def law_coefficients(rep, args):
    """Coefficient table of det∘rho on the given free-algebra arguments.

    Computed from det(sum_s t_s * rho(a_s)) by reading off monomials in
    the t_s; only weight-n exponent vectors can occur.
    """
    args = tuple(args)
    if not args:
        raise PreconditionError("need at least one argument")
    for a in args:
        if not isinstance(a, NCPoly) or a.m != rep.m or a.field != rep.field:
            raise PreconditionError("argument with mismatched field or arity")
    images = [nc_eval(a, rep.mats) for a in args]
    names = [f"t{s + 1}" for s in range(len(args))]
    poly = det_linear_combination(images, names)
    index = {name: s for s, name in enumerate(names)}
    coeffs = {}
    for mono, c in poly.terms.items():
        xi = [0] * len(args)
        for v, e in mono:
            xi[index[v]] = e
        coeffs[tuple(xi)] = c
    return LawCoefficientTable(rep.field, rep.n, args, coeffs)


@dataclass(frozen=True, eq=False)
class NormPoint:
    """The recorded image of a representation point under det∘rho."""

    field: object
    m: int
    n: int
    max_len: int
    gen_charpolys: tuple
    mixed_table: LawCoefficientTable
    word_dets: dict

    def __eq__(self, other):
        if not isinstance(other, NormPoint):
            return NotImplemented
        return (self.field == other.field and self.m == other.m
                and self.n == other.n and self.max_len == other.max_len
                and self.gen_charpolys == other.gen_charpolys
                and self.mixed_table == other.mixed_table
                and self.word_dets == other.word_dets)

    def to_text(self):
        lines = ["norm-point", self.field.header(), f"m {self.m}",
                 f"n {self.n}", f"max-len {self.max_len}"]
        for k, cp in enumerate(self.gen_charpolys):
            lines.append(f"charpoly x{k + 1} = {cp}")
        for xi, c in self.mixed_table.sorted_coeffs():
            key = "(" + ",".join(str(e) for e in xi) + ")"
            lines.append(f"law {key} = {self.field.format(c)}")
        for w in sorted(self.word_dets, key=word_key):
            lines.append(
                f"det {word_str(w)} = {self.field.format(self.word_dets[w])}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "norm-point":
            raise ParseError("expected norm-point block")
        fld = field_from_header(lines[1])
        m = _int_line(lines[2], "m")
        n = _int_line(lines[3], "n")
        max_len = _int_line(lines[4], "max-len")
        charpolys = {}
        law = {}
        dets = {}
        for ln in lines[5:]:
            if ln.startswith("charpoly "):
                lhs, rhs = ln[9:].split("=", 1)
                name = lhs.strip()
                if not name.startswith("x"):
                    raise ParseError(f"bad charpoly line {ln!r}")
                charpolys[int(name[1:]) - 1] = parse_comm_poly(rhs.strip(), fld)
            elif ln.startswith("law "):
                lhs, rhs = ln[4:].rsplit("=", 1)
                lhs = lhs.strip()
                xi = tuple(int(tok) for tok in lhs[1:-1].split(",") if tok.strip())
                law[xi] = fld.parse(rhs.strip())
            elif ln.startswith("det "):
                lhs, rhs = ln[4:].rsplit("=", 1)
                w = _word_of(lhs.strip(), fld, m)
                dets[w] = fld.parse(rhs.strip())
            else:
                raise ParseError(f"unrecognized norm-point line {ln!r}")
        gens = tuple(NCPoly.generator(fld, m, k) for k in range(m))
        table = LawCoefficientTable(fld, n, gens, law)
        cps = tuple(charpolys[k] for k in range(m))
        return cls(fld, m, n, max_len, cps, table, dets)


def _word_of(text, fld, m):
    p = parse_nc_poly(text, fld, m)
    if len(p.terms) != 1:
        raise ParseError(f"expected a single word, got {text!r}")
    (w, c), = p.terms.items()
    if c != fld.one:
        raise ParseError(f"expected a bare word, got {text!r}")
    return w


def det_point(rep, max_len=None):
    """Norm point of a plain representation point (no cyclicity needed)."""
    if max_len is None:
        max_len = default_table_len(rep.n)
    if max_len < 1:
        raise PreconditionError("max_len must be at least 1")
    gen_charpolys = tuple(charpoly(M) for M in rep.mats)
    gens = tuple(NCPoly.generator(rep.field, rep.m, k) for k in range(rep.m))
    mixed = law_coefficients(rep, gens)
    table = word_matrices(rep.mats, max_len)
    word_dets = {w: det(M) for w, M in table.items()}
    return NormPoint(rep.field, rep.m, rep.n, max_len, gen_charpolys, mixed,
                     word_dets)


def hc_point(pt, max_len=None):
    """Norm point of a Hilbert-scheme point: check cyclicity, then forget
    the vector.  Always equal to det_point of the underlying tuple."""
    d = span_dimension(pt)
    if d < pt.n:
        raise PreconditionError(
            f"not a Hilbert-scheme point: word span has dimension {d} < {pt.n}")
    return det_point(pt.rep, max_len)


# -- 0-cycles of commuting split tuples ----------------------------------------

@dataclass(frozen=True, eq=False)
class Cycle:
    """Joint eigenvalue tuples with multiplicities summing to n."""

    field: object
    m: int
    n: int
    points: dict

    def __post_init__(self):
        if sum(self.points.values()) != self.n:
            raise PreconditionError("cycle multiplicities must sum to n")
        if any(mult < 1 for mult in self.points.values()):
            raise PreconditionError("cycle multiplicities must be positive")

    def __eq__(self, other):
        if not isinstance(other, Cycle):
            return NotImplemented
        return (self.field == other.field and self.m == other.m
                and self.n == other.n and self.points == other.points)

    def sorted_points(self):
        return sorted(self.points.items())

    def to_text(self):
        lines = ["cycle", self.field.header(), f"m {self.m}", f"n {self.n}"]
        for tup, mult in self.sorted_points():
            body = "(" + ", ".join(self.field.format(a) for a in tup) + ")"
            lines.append(f"point {body} * {mult}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "cycle":
            raise ParseError("expected cycle block")
        fld = field_from_header(lines[1])
        m = _int_line(lines[2], "m")
        n = _int_line(lines[3], "n")
        points = {}
        for ln in lines[4:]:
            if not ln.startswith("point "):
                raise ParseError(f"unrecognized cycle line {ln!r}")
            body, mult = ln[6:].rsplit("*", 1)
            body = body.strip()
            if not (body.startswith("(") and body.endswith(")")):
                raise ParseError(f"expected eigenvalue tuple: {ln!r}")
            tup = tuple(fld.parse(tok.strip())
                        for tok in body[1:-1].split(",") if tok.strip())
            points[tup] = int(mult.strip())
        return cls(fld, m, n, points)


@dataclass(frozen=True, eq=False)
class SplitFailure:
    """A characteristic polynomial without a full set of roots in the
    base field; a normal outcome of cycle extraction, not an error."""

    field: object
    charpoly: CommPoly

    def __eq__(self, other):
        if not isinstance(other, SplitFailure):
            return NotImplemented
        return self.field == other.field and self.charpoly == other.charpoly

    def to_text(self):
        return "\n".join(["split-failure", self.field.header(),
                          f"charpoly {self.charpoly}"]) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "split-failure":
            raise ParseError("expected split-failure block")
        fld = field_from_header(lines[1])
        if not lines[2].startswith("charpoly "):
            raise ParseError("expected charpoly line")
        return cls(fld, parse_comm_poly(lines[2][9:], fld))


def _synthetic_divide(coeffs, r):
    """Divide by (t - r); returns (quotient coeffs, remainder)."""
    out = [None] * (len(coeffs) - 1)
    acc = coeffs[-1]
    for i in range(len(coeffs) - 2, -1, -1):
        out[i] = acc
        acc = coeffs[i] + acc * r
    return out, acc


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_root_candidates(coeffs):
    """Possible rational roots of an exact-coefficient polynomial."""
    den_lcm = 1
    for c in coeffs:
        den_lcm = den_lcm * c.denominator // _gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in coeffs]
    while ints and ints[-1] == 0:
        ints.pop()
    lead = ints[-1]
    lowest = next((c for c in ints if c != 0), None)
    if lowest is None:
        return [Fraction(0)]
    cands = {Fraction(0)}
    for p in _divisors(lowest):
        for q in _divisors(lead):
            cands.add(Fraction(p, q))
            cands.add(Fraction(-p, q))
    return sorted(cands)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def field_roots(poly, var="t"):
    """Roots in the base field with multiplicities.

    Returns (sorted list of (root, multiplicity), fully_split flag).
    Over F_p all p candidates are tried; over Q the candidates come from
    the rational root bound.  No algebraic extensions are considered.
    """
    field = poly.field
    coeffs = poly.univar_coeffs(var)
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    if len(coeffs) <= 1:
        raise PreconditionError("root finding needs positive degree")
    degree = len(coeffs) - 1
    if isinstance(field, PrimeField):
        candidates = list(field.elements())
    else:
        candidates = [field(c) for c in _rational_root_candidates(coeffs)]
    roots = []
    for cand in candidates:
        mult = 0
        while len(coeffs) > 1:
            quot, rem = _synthetic_divide(coeffs, cand)
            if rem:
                break
            coeffs = quot
            mult += 1
        if mult:
            roots.append((cand, mult))
    found = sum(mult for _, mult in roots)
    roots.sort(key=lambda rm: rm[0])
    return roots, found == degree


def _restrict(mat, basis):
    "Action of an invariant-subspace matrix in the given column basis."
    images = [mat.apply(b) for b in basis]
    coords = solve_columns(basis, images)
    r = len(basis)
    return Matrix(tuple(tuple(coords[j][i] for j in range(r)) for i in range(r)))


def cycle_extract(rep):
    """Joint generalized eigenvalue tuples of a commuting matrix tuple.

    Splits along the first generator's generalized eigenspaces, then
    recurses on the remaining generators within each block; returns a
    Cycle, or a SplitFailure carrying the first characteristic
    polynomial that has too few roots in the base field.  Input matrices
    must commute pairwise.
    """
    mats = rep.mats
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] * mats[j] != mats[j] * mats[i]:
                raise PreconditionError(
                    f"matrices {i + 1} and {j + 1} do not commute")
    field = rep.field
    result = _split_blocks(list(mats), field)
    if isinstance(result, SplitFailure):
        return result
    return Cycle(field, rep.m, rep.n, result)


def _split_blocks(mats, field):
    if not mats:
        raise AssertionError("empty generator list")
    M = mats[0]
    dim = M.n
    cp = charpoly(M)
    roots, split = field_roots(cp)
    if not split:
        return SplitFailure(field, cp)
    out = {}
    for lam, mult in roots:
        shifted = M - Matrix.identity(dim, field.one).scale(lam)
        kernel = nullspace([list(r) for r in (shifted ** dim).rows], dim)
        if len(kernel) != mult:
            raise AssertionError("generalized eigenspace dimension mismatch")
        if len(mats) == 1:
            out[(lam,)] = mult
            continue
        rest = [_restrict(X, kernel) for X in mats[1:]]
        sub = _split_blocks(rest, field)
        if isinstance(sub, SplitFailure):
            return sub
        for tup, mm in sub.items():
            out[(lam,) + tup] = mm
    return out


def cycle_product_poly(cycle, var_names):
    """prod_P (t0 + sum_k t_k P_k)^mult as an exact polynomial.

    var_names lists m+1 indeterminates, the affine coordinate t0 first.
    Matches det(t0 I + sum t_k X_k) whenever the cycle was extracted
    from (X_1..X_m).
    """
    if len(var_names) != cycle.m + 1:
        raise PreconditionError("need one variable per generator plus one")
    field = cycle.field
    total = CommPoly.const(field, 1)
    t0 = CommPoly.variable(field, var_names[0])
    for tup, mult in cycle.sorted_points():
        factor = t0
        for name, a in zip(var_names[1:], tup):
            factor = factor + CommPoly.variable(field, name) * a
        total = total * factor ** mult
    return total
