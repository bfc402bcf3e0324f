"""Sparse multivariate polynomials with exact coefficients.

A monomial is a tuple of (variable, exponent) pairs with positive
exponents, sorted by a natural-order key on variable names (digit runs
compare numerically, so xi_2_1_1 precedes xi_10_1_1).  Terms are held in
a dict keyed by monomials; zero coefficients are never stored.  The term
order used for printing and canonical keys is graded, then
lexicographic, which keeps every serialization stable across runs.
"""

from __future__ import annotations

import re
from functools import lru_cache

from ._tokens import TokenStream
from .errors import ParseError

_DIGIT_RUN = re.compile(r"(\d+)")


@lru_cache(maxsize=None)
def var_key(name):
    return tuple(int(s) if s.isdigit() else s for s in _DIGIT_RUN.split(name))


def mono_mul(a, b):
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items(), key=lambda ve: var_key(ve[0])))


def mono_degree(mono):
    return sum(e for _, e in mono)


def mono_key(mono):
    # graded first, then lexicographic; negated so that ascending sort
    # puts the leading monomial first
    return (-mono_degree(mono), tuple((var_key(v), -e) for v, e in mono))


def mono_str(mono):
    return "*".join(v if e == 1 else f"{v}^{e}" for v, e in mono)


class CommPoly:
    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = field(c)
                if c:
                    clean[mono] = c
        self.terms = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, field):
        return cls(field)

    @classmethod
    def const(cls, field, c):
        return cls(field, {(): field(c)})

    @classmethod
    def variable(cls, field, name, exp=1):
        if exp < 0:
            raise ValueError("negative exponent")
        if exp == 0:
            return cls.const(field, 1)
        return cls(field, {((name, exp),): field.one})

    # -- basic queries -----------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def total_degree(self):
        "Degree of the zero polynomial is reported as -1."
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def coeff(self, mono):
        return self.terms.get(mono, self.field.zero)

    def constant(self):
        return self.terms.get((), self.field.zero)

    def variables(self):
        seen = {v for mono in self.terms for v, _ in mono}
        return sorted(seen, key=var_key)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: mono_key(mc[0]))

    def sort_tuple(self):
        "Total-order key; used when lists of polynomials are serialized."
        return tuple((mono_key(m), str(c)) for m, c in self.sorted_terms())

    # -- arithmetic ---------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, CommPoly):
            if other.field != self.field:
                raise ValueError("coefficient field mismatch")
            return other
        try:
            c = self.field(other)
        except (TypeError, ValueError):
            return None
        return CommPoly.const(self.field, c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for m, c in other.terms.items():
            s = terms.get(m, self.field.zero) + c
            if s:
                terms[m] = s
            else:
                terms.pop(m, None)
        out = CommPoly(self.field)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = CommPoly(self.field)
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if not isinstance(other, CommPoly):
            try:
                c = self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
            if not c:
                return CommPoly(self.field)
            out = CommPoly(self.field)
            out.terms = {m: cc * c for m, cc in self.terms.items()}
            return out
        if other.field != self.field:
            raise ValueError("coefficient field mismatch")
        acc = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                s = acc.get(m)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    acc[m] = s
                else:
                    acc.pop(m, None)
        out = CommPoly(self.field)
        out.terms = acc
        return out

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = CommPoly.const(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, CommPoly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    def __hash__(self):
        return hash((self.field, tuple(self.sorted_terms())))

    # -- evaluation ----------------------------------------------------

    def evaluate(self, values):
        """Substitute a scalar for every variable; exact throughout."""
        total = self.field.zero
        for mono, c in self.terms.items():
            term = c
            for v, e in mono:
                if v not in values:
                    raise ValueError(f"unassigned variable {v!r}")
                term = term * self.field(values[v]) ** e
            total = total + term
        return total

    def univar_coeffs(self, name):
        """Coefficients [c0, c1, ...] of a univariate polynomial in `name`."""
        deg = 0
        for mono in self.terms:
            for v, e in mono:
                if v != name:
                    raise ValueError(f"not univariate in {name!r}: found {v!r}")
                deg = max(deg, e)
        out = [self.field.zero] * (deg + 1)
        for mono, c in self.terms.items():
            e = mono[0][1] if mono else 0
            out[e] = c
        return out

    # -- text form ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        one = self.field.one
        signed = self.field.characteristic == 0
        for mono, c in self.sorted_terms():
            if not mono:
                pieces.append(self.field.format(c))
            elif c == one:
                pieces.append(mono_str(mono))
            elif signed and c == -one:
                pieces.append("-" + mono_str(mono))
            else:
                pieces.append(f"{self.field.format(c)}*{mono_str(mono)}")
        text = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"CommPoly({self})"


def parse_comm_poly(text, field):
    """Parse the `+`/`-`/`*`/`^` grammar with integer or a/b coefficients."""
    ts = TokenStream(text)
    poly = _parse_sum(ts, field)
    ts.require_done()
    return poly


def _parse_sum(ts, field):
    negate = False
    if ts.accept_op("-"):
        negate = True
    else:
        ts.accept_op("+")
    total = _parse_product(ts, field)
    if negate:
        total = -total
    while True:
        op = ts.accept_op("+", "-")
        if op is None:
            return total
        term = _parse_product(ts, field)
        total = total - term if op == "-" else total + term


def _parse_product(ts, field):
    total = _parse_power(ts, field)
    while ts.accept_op("*"):
        total = total * _parse_power(ts, field)
    return total


def _parse_power(ts, field):
    base = _parse_atom(ts, field)
    if ts.accept_op("^"):
        return base ** ts.expect_int()
    return base


def _parse_atom(ts, field):
    kind, val = ts.peek()
    if kind == "int":
        ts.next()
        num = int(val)
        if ts.accept_op("/"):
            den = ts.expect_int()
            if den == 0:
                raise ParseError("zero denominator")
            return CommPoly.const(field, field(num) / field(den))
        return CommPoly.const(field, num)
    if kind == "name":
        ts.next()
        return CommPoly.variable(field, val)
    if kind == "op" and val == "(":
        ts.next()
        inner = _parse_sum(ts, field)
        ts.expect_op(")")
        return inner
    raise ParseError(f"unexpected token in polynomial {ts.text!r}")
