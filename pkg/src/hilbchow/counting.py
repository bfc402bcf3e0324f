"""Exhaustive enumeration over prime fields.

Iterates every m-tuple of n x n matrices over F_q, filters by the
relations, and counts cyclic vectors.  The group order of GL_n(F_q)
must divide the cyclic-pair count exactly (the action on cyclic pairs
is free); the quotient is the number of Hilbert-scheme points.  The
tuple space is split into contiguous index ranges ("prefix" blocks of
the entry digits), so per-range counts merge by addition and the report
is identical for any worker count.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import BudgetExceededError, ParseError, PreconditionError
from .fields import PrimeField, is_prime
from .repvariety import AlgebraPresentation, _int_line

BUDGET_ENV = "HILBCHOW_BUDGET"
DEFAULT_BUDGET = 2 ** 30


def configured_budget():
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"bad {BUDGET_ENV} value {raw!r}") from None


def gl_order(n, q, budget=None):
    """|GL_n(F_q)| = prod_{i<n} (q^n - q^i) for prime q."""
    if budget is None:
        budget = configured_budget()
    if not (isinstance(q, int) and is_prime(q)):
        raise PreconditionError(f"{q} is not prime (prime powers are excluded)")
    if q > budget:
        raise BudgetExceededError(f"field size {q} exceeds budget {budget}")
    total = 1
    qn = q ** n
    for i in range(n):
        total *= qn - q ** i
    return total


@dataclass(frozen=True, eq=False)
class EnumerationReport:
    """Counts from one full sweep of the tuple space.

    Equality ignores the elapsed time, so reports are comparable across
    runs and worker counts.
    """

    q: int
    n: int
    m: int
    total_rep_points: int
    total_cyclic_pairs: int
    gl_order: int
    orbit_count: int
    elapsed_ms: int

    def __eq__(self, other):
        if not isinstance(other, EnumerationReport):
            return NotImplemented
        return (self.q, self.n, self.m, self.total_rep_points,
                self.total_cyclic_pairs, self.gl_order, self.orbit_count) == (
                    other.q, other.n, other.m, other.total_rep_points,
                    other.total_cyclic_pairs, other.gl_order, other.orbit_count)

    def to_text(self, include_elapsed=True):
        lines = ["enumeration-report", f"q {self.q}", f"n {self.n}",
                 f"m {self.m}", f"rep-points {self.total_rep_points}",
                 f"cyclic-pairs {self.total_cyclic_pairs}",
                 f"gl-order {self.gl_order}", f"orbit-count {self.orbit_count}"]
        if include_elapsed:
            lines.append(f"elapsed-ms {self.elapsed_ms}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0] != "enumeration-report":
            raise ParseError("expected enumeration-report block")
        keys = ["q", "n", "m", "rep-points", "cyclic-pairs", "gl-order",
                "orbit-count"]
        body = lines[1:]
        if len(body) < len(keys):
            raise ParseError("truncated enumeration-report block")
        vals = [_int_line(ln, key) for ln, key in zip(body, keys)]
        elapsed = 0
        if len(body) > len(keys):
            elapsed = _int_line(body[len(keys)], "elapsed-ms")
        return cls(*vals, elapsed)


def _decode_tuple(index, q, m, n):
    "Mixed-radix digits of index, row-major per matrix; index 0 is all zeros."
    digits = []
    for _ in range(m * n * n):
        digits.append(index % q)
        index //= q
    digits.reverse()
    return digits


# The sweep works on plain integer matrices mod p: the generic field-element
# objects cost too much in a loop over q^(m n^2) tuples.  Agreement of this
# fast path with is_representation / is_cyclic is itself under test.

def _int_mat_mul(a, b, p, n):
    return [[sum(a[i][l] * b[l][j] for l in range(n)) % p for j in range(n)]
            for i in range(n)]


def _int_word_matrix(word, mats, cache, p, n):
    got = cache.get(word)
    if got is None:
        got = _int_mat_mul(mats[word[0]], _int_word_matrix(word[1:], mats,
                                                           cache, p, n), p, n)
        cache[word] = got
    return got


def _int_is_rep(rel_data, mats, p, n):
    identity = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cache = {(): identity}
    for terms in rel_data:
        for i in range(n):
            for j in range(n):
                total = 0
                for coeff, word in terms:
                    total += coeff * _int_word_matrix(word, mats, cache,
                                                      p, n)[i][j]
                if total % p:
                    return False
    return True


def _int_cyclic(mats, v, p, n, m):
    "Breadth-first span growth, echelonized rows of ints mod p."
    rows = []
    pivots = []

    def add(vec):
        vec = list(vec)
        for row, pv in zip(rows, pivots):
            f = vec[pv]
            if f:
                vec = [(a - f * b) % p for a, b in zip(vec, row)]
        for idx in range(n):
            if vec[idx]:
                inv = pow(vec[idx], -1, p)
                rows.append([a * inv % p for a in vec])
                pivots.append(idx)
                return True
        return False

    if not add(v):
        return False
    level = [v]
    size = 1
    while level and size < n:
        nxt = []
        for mat in mats:
            for u in level:
                image = tuple(sum(mat[i][j] * u[j] for j in range(n)) % p
                              for i in range(n))
                if add(image):
                    nxt.append(image)
                    size += 1
        level = nxt
    return size == n


def count_range(pres_text, n, start, stop):
    """(representation tuples, cyclic pairs) for a contiguous index range."""
    pres = AlgebraPresentation.from_text(pres_text)
    p = pres.field.p
    m = pres.m
    rel_data = [[(c.v, w) for w, c in rel.terms.items()]
                for rel in pres.relations]
    vectors = [v for v in itertools.product(range(p), repeat=n) if any(v)]
    reps = 0
    pairs = 0
    for index in range(start, stop):
        digits = _decode_tuple(index, p, m, n)
        mats = [[digits[k * n * n + i * n:k * n * n + i * n + n]
                 for i in range(n)] for k in range(m)]
        if rel_data and not _int_is_rep(rel_data, mats, p, n):
            continue
        reps += 1
        for v in vectors:
            if _int_cyclic(mats, v, p, n, m):
                pairs += 1
    return reps, pairs


def enumerate_points(pres, n, budget=None, workers=1):
    """Full sweep over all m-tuples of n x n matrices over F_q.

    Requires a prime field and q^(m n^2) candidate tuples within budget.
    The divisibility of the cyclic-pair count by |GL_n| is asserted on
    every run, not assumed.
    """
    if budget is None:
        budget = configured_budget()
    if not isinstance(pres.field, PrimeField):
        raise PreconditionError("enumeration needs a prime field presentation")
    if n < 1:
        raise PreconditionError("dimension must be at least 1")
    q = pres.field.p
    m = pres.m
    candidates = q ** (m * n * n)
    if candidates > budget:
        raise BudgetExceededError(
            f"{candidates} candidate tuples exceed budget {budget}")
    started = time.monotonic_ns()
    pres_text = pres.to_text()
    if workers < 1:
        raise PreconditionError("worker count must be at least 1")
    if workers == 1:
        reps, pairs = count_range(pres_text, n, 0, candidates)
    else:
        chunks = _ranges(candidates, workers)
        reps = pairs = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(count_range, pres_text, n, a, b)
                       for a, b in chunks]
            for fut in futures:
                r, c = fut.result()
                reps += r
                pairs += c
    order = gl_order(n, q, budget)
    if pairs % order:
        raise AssertionError(
            f"freeness violated: |GL| = {order} does not divide {pairs}")
    elapsed_ms = (time.monotonic_ns() - started) // 1_000_000
    return EnumerationReport(q, n, m, reps, pairs, order, pairs // order,
                             elapsed_ms)


def _ranges(total, parts):
    "Contiguous index ranges (prefix blocks of the digit encoding)."
    base, extra = divmod(total, parts)
    out = []
    start = 0
    for i in range(parts):
        size = base + (1 if i < extra else 0)
        out.append((start, start + size))
        start += size
    return [(a, b) for a, b in out if a < b]
