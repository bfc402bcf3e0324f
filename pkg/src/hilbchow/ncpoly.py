"""Free noncommutative polynomials: finite linear combinations of words.

Words in the generators x1..xm are tuples of 0-based generator indices;
the empty tuple is the unit.  Word order is graded-lexicographic with
x1 < x2 < ... < xm, which fixes both printing and every derived
serialization.
"""

from __future__ import annotations

import itertools
import re

from ._tokens import TokenStream
from .commpoly import CommPoly, var_key
from .errors import ParseError

_GEN_NAME = re.compile(r"^x([1-9][0-9]*)$")


def word_key(word):
    return (len(word), word)


def word_str(word):
    "Canonical form with adjacent repeats collapsed: (0,0,1) -> 'x1^2*x2'."
    if not word:
        return "1"
    pieces = []
    for idx, group in itertools.groupby(word):
        e = len(list(group))
        name = f"x{idx + 1}"
        pieces.append(name if e == 1 else f"{name}^{e}")
    return "*".join(pieces)


def words_of_length(m, length):
    "All words of the given length, in lexicographic order."
    return itertools.product(range(m), repeat=length)


def words_up_to(m, max_len, start_len=0):
    for length in range(start_len, max_len + 1):
        yield from words_of_length(m, length)


class NCPoly:
    __slots__ = ("field", "m", "terms")

    def __init__(self, field, m, terms=None):
        self.field = field
        self.m = m
        clean = {}
        if terms:
            for word, c in terms.items():
                if any(k < 0 or k >= m for k in word):
                    raise ValueError(f"word {word} has generators outside 1..{m}")
                c = field(c)
                if c:
                    clean[word] = c
        self.terms = clean

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, field, m):
        return cls(field, m)

    @classmethod
    def const(cls, field, m, c):
        return cls(field, m, {(): field(c)})

    @classmethod
    def one(cls, field, m):
        return cls.const(field, m, 1)

    @classmethod
    def generator(cls, field, m, k):
        if not 0 <= k < m:
            raise ValueError(f"generator index {k} outside 0..{m - 1}")
        return cls(field, m, {(k,): field.one})

    @classmethod
    def from_word(cls, field, m, word, c=1):
        return cls(field, m, {tuple(word): field(c)})

    # -- queries ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def degree(self):
        if not self.terms:
            return -1
        return max(len(w) for w in self.terms)

    def coeff(self, word):
        return self.terms.get(tuple(word), self.field.zero)

    def support(self):
        return sorted(self.terms, key=word_key)

    def sorted_terms(self):
        # leading (highest-degree) words first, lexicographic within a degree
        return sorted(self.terms.items(), key=lambda wc: (-len(wc[0]), wc[0]))

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if other.field != self.field or other.m != self.m:
            raise ValueError("mixing free algebras with different field or arity")

    def _coerce(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        try:
            c = self.field(other)
        except (TypeError, ValueError):
            return None
        return NCPoly.const(self.field, self.m, c)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, self.field.zero) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        out = NCPoly(self.field, self.m)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = NCPoly(self.field, self.m)
        out.terms = {w: -c for w, c in self.terms.items()}
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
        if not isinstance(other, NCPoly):
            try:
                c = self.field(other)
            except (TypeError, ValueError):
                return NotImplemented
            out = NCPoly(self.field, self.m)
            if c:
                out.terms = {w: cc * c for w, cc in self.terms.items()}
            return out
        self._check(other)
        acc = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                s = acc.get(w)
                s = c1 * c2 if s is None else s + c1 * c2
                if s:
                    acc[w] = s
                else:
                    acc.pop(w, None)
        out = NCPoly(self.field, self.m)
        out.terms = acc
        return out

    def __rmul__(self, other):
        # scalars only; word order never flips
        try:
            c = self.field(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self * c

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = NCPoly.one(self.field, self.m)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return (self.field == other.field and self.m == other.m
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.m, tuple(self.sorted_terms())))

    # -- maps ---------------------------------------------------------------

    def abelianize(self):
        """Image in k[x1..xm]: each word collapses to its exponent monomial."""
        acc = {}
        for word, c in self.terms.items():
            counts = {}
            for k in word:
                counts[k] = counts.get(k, 0) + 1
            mono = tuple(sorted(((f"x{k + 1}", e) for k, e in counts.items()),
                                key=lambda ve: var_key(ve[0])))
            s = acc.get(mono, self.field.zero) + c
            if s:
                acc[mono] = s
            else:
                acc.pop(mono, None)
        return CommPoly(self.field, acc)

    # -- text form -------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        one = self.field.one
        signed = self.field.characteristic == 0
        for word, c in self.sorted_terms():
            if not word:
                pieces.append(self.field.format(c))
            elif c == one:
                pieces.append(word_str(word))
            elif signed and c == -one:
                pieces.append("-" + word_str(word))
            else:
                pieces.append(f"{self.field.format(c)}*{word_str(word)}")
        text = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                text += " - " + piece[1:]
            else:
                text += " + " + piece
        return text

    def __repr__(self):
        return f"NCPoly({self})"


def generator_index(name):
    "x7 -> 6, or None when the name is not a generator."
    m = _GEN_NAME.match(name)
    if m is None:
        return None
    return int(m.group(1)) - 1


def parse_nc_poly(text, field, m=None):
    """Parse a free-algebra element; m defaults to the largest index used."""
    ts = TokenStream(text)
    node = _parse_sum(ts)
    ts.require_done()
    used = _max_gen(node)
    if m is None:
        m = used
    elif used > m:
        raise ParseError(f"generator x{used} exceeds arity {m} in {text!r}")
    return _eval_node(node, field, m)


# The parser builds a tiny AST first so that the arity can be inferred
# before any NCPoly is constructed.

def _parse_sum(ts):
    sign = -1 if ts.accept_op("-") else 1
    if sign == 1:
        ts.accept_op("+")
    total = ("scale", sign, _parse_product(ts))
    while True:
        op = ts.accept_op("+", "-")
        if op is None:
            return total
        term = _parse_product(ts)
        if op == "-":
            term = ("scale", -1, term)
        total = ("add", total, term)


def _parse_product(ts):
    total = _parse_power(ts)
    while ts.accept_op("*"):
        total = ("mul", total, _parse_power(ts))
    return total


def _parse_power(ts):
    base = _parse_atom(ts)
    if ts.accept_op("^"):
        return ("pow", base, ts.expect_int())
    return base


def _parse_atom(ts):
    kind, val = ts.peek()
    if kind == "int":
        ts.next()
        num = int(val)
        if ts.accept_op("/"):
            den = ts.expect_int()
            if den == 0:
                raise ParseError("zero denominator")
            return ("frac", num, den)
        return ("frac", num, 1)
    if kind == "name":
        ts.next()
        idx = generator_index(val)
        if idx is None:
            raise ParseError(f"unknown generator {val!r} (expected x1, x2, ...)")
        return ("gen", idx)
    if kind == "op" and val == "(":
        ts.next()
        inner = _parse_sum(ts)
        ts.expect_op(")")
        return inner
    raise ParseError(f"unexpected token in polynomial {ts.text!r}")


def _max_gen(node):
    tag = node[0]
    if tag == "gen":
        return node[1] + 1
    if tag == "frac":
        return 0
    if tag in ("scale", "pow"):
        return _max_gen(node[2] if tag == "scale" else node[1])
    return max(_max_gen(node[1]), _max_gen(node[2]))


def _eval_node(node, field, m):
    tag = node[0]
    if tag == "gen":
        return NCPoly.generator(field, m, node[1])
    if tag == "frac":
        return NCPoly.const(field, m, field(node[1]) / field(node[2]))
    if tag == "scale":
        return _eval_node(node[2], field, m) * node[1]
    if tag == "pow":
        return _eval_node(node[1], field, m) ** node[2]
    if tag == "add":
        return _eval_node(node[1], field, m) + _eval_node(node[2], field, m)
    if tag == "mul":
        return _eval_node(node[1], field, m) * _eval_node(node[2], field, m)
    raise AssertionError(tag)
