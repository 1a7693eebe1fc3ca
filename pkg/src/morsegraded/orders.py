"""Monomial term orders on k[z_0..z_{n-1}] and their degree-one label order.

Monomials are exponent tuples.  All comparators return -1/0/+1.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key

from .errors import ValidationError

Monomial = tuple[int, ...]

KINDS = ("lex", "graded-lex", "graded-revlex", "weight-matrix")


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def monomial_divides(a: Monomial, b: Monomial) -> bool:
    """a | b componentwise."""
    return all(x <= y for x, y in zip(a, b))


def monomial_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def monomial_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomial_gcd(a: Monomial, b: Monomial) -> Monomial:
    return tuple(min(x, y) for x, y in zip(a, b))


def total_degree(a: Monomial) -> int:
    return sum(a)


def unit(n: int, i: int) -> Monomial:
    return tuple(1 if j == i else 0 for j in range(n))


def content_monomial(labels, n: int) -> Monomial:
    """Exponent vector of a multiset of generator indices."""
    exps = [0] * n
    for i in labels:
        exps[i] += 1
    return tuple(exps)


def _matrix_rank(rows: list[list[int]]) -> int:
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col] != 0), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


class TermOrder:
    """A total multiplicative order with 1 minimal.

    priority lists variable indices from highest to lowest and must be a
    permutation of range(n).  For weight-matrix orders the rows must have
    full rank n (totality) and every column's topmost nonzero entry must be
    positive (1 is minimal); both are checked at construction.
    """

    def __init__(self, n: int, kind: str = "lex", priority=None, rows=None):
        if kind not in KINDS:
            raise ValidationError(f"unknown term order kind {kind!r}")
        self.n = n
        self.kind = kind
        if priority is None:
            priority = tuple(range(n - 1, -1, -1))
        self.priority = tuple(priority)
        if sorted(self.priority) != list(range(n)):
            raise ValidationError("priority must be a permutation of the variables")
        self.rows = None
        if kind == "weight-matrix":
            if not rows:
                raise ValidationError("weight-matrix order needs at least one row")
            rows = [list(map(int, r)) for r in rows]
            if any(len(r) != n for r in rows):
                raise ValidationError("weight rows must have length n")
            for col in range(n):
                top = next((r[col] for r in rows if r[col] != 0), None)
                if top is None or top < 0:
                    raise ValidationError(
                        "weight matrix does not keep 1 minimal (bad column %d)" % col
                    )
            if _matrix_rank(rows) != n:
                raise ValidationError("weight matrix is rank-deficient: not a term order")
            self.rows = tuple(tuple(r) for r in rows)
        elif rows is not None:
            raise ValidationError("rows only apply to weight-matrix orders")
        # label order: the restriction to degree-one monomials, as ranks
        idx = sorted(range(n), key=cmp_to_key(lambda i, j: self.compare(unit(n, i), unit(n, j))))
        self.label_rank = tuple(idx.index(i) for i in range(n))

    def compare(self, a: Monomial, b: Monomial) -> int:
        if len(a) != self.n or len(b) != self.n:
            raise ValidationError("monomial has wrong variable count")
        if a == b:
            return 0
        if self.kind == "weight-matrix":
            for row in self.rows:
                s = sum(r * (x - y) for r, x, y in zip(row, a, b))
                if s:
                    return 1 if s > 0 else -1
            return 0
        if self.kind in ("graded-lex", "graded-revlex"):
            da, db = sum(a), sum(b)
            if da != db:
                return 1 if da > db else -1
        if self.kind == "graded-revlex":
            # among equal degrees: larger iff the lowest-priority variable
            # where they differ has the *smaller* exponent
            for v in reversed(self.priority):
                d = a[v] - b[v]
                if d:
                    return -1 if d > 0 else 1
            return 0
        for v in self.priority:
            d = a[v] - b[v]
            if d:
                return 1 if d > 0 else -1
        return 0

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.compare(a, b) < 0

    def max(self, a: Monomial, b: Monomial) -> Monomial:
        return a if self.compare(a, b) >= 0 else b

    def sort_key(self):
        return cmp_to_key(self.compare)

    def label_less(self, i: int, j: int) -> bool:
        return self.label_rank[i] < self.label_rank[j]

    def to_json(self) -> dict:
        doc = {"kind": self.kind, "priority": list(self.priority)}
        if self.rows is not None:
            doc["rows"] = [list(r) for r in self.rows]
        return doc

    @classmethod
    def from_json(cls, n: int, doc: dict | None) -> "TermOrder":
        if doc is None:
            return cls(n)
        return cls(
            n,
            kind=doc.get("kind", "lex"),
            priority=doc.get("priority"),
            rows=doc.get("rows"),
        )
