"""Affine semigroups in N^e: membership, divisibility order, finite intervals.

A presentation is a list of n distinct nonzero generator vectors.  The
divisibility order is mu <= lam iff lam - mu is an N-combination of the
generators; pointedness inside N^e keeps every interval finite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import NotComparable, ValidationError

Vector = tuple[int, ...]


def vec_add(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vec_dominates(a: Vector, b: Vector) -> bool:
    """Componentwise b <= a."""
    return all(x >= y for x, y in zip(a, b))


@dataclass(frozen=True)
class IntervalData:
    """A finite closed interval [bottom, top] of the semigroup order.

    elements are sorted by (coordinate sum, tuple) which is a linear
    extension of the order.  cover_edges[i] lists (generator index, j)
    pairs with elements[j] = elements[i] + generator.
    """

    bottom: Vector
    top: Vector
    elements: tuple[Vector, ...]
    cover_edges: tuple[tuple[tuple[int, int], ...], ...]

    def index(self, v: Vector) -> int:
        return self._index[v]

    def __post_init__(self):
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.elements)})

    def __len__(self) -> int:
        return len(self.elements)


class SemigroupPresentation:
    """n marked generators of a pointed affine semigroup in N^e.

    Validation rejects zero or repeated generators and generators that are
    not atoms of the semigroup they generate.  Atomicity is what makes
    saturated chains of an interval correspond to orderings of the
    factorizations of its top; without it single cover steps could be
    refined and the facet/fiber correspondence breaks down.
    """

    def __init__(self, dimension: int, generators: list[Vector] | tuple[Vector, ...]):
        if dimension < 1:
            raise ValidationError("dimension must be >= 1")
        gens = tuple(tuple(int(c) for c in g) for g in generators)
        if not gens:
            raise ValidationError("at least one generator required")
        for g in gens:
            if len(g) != dimension:
                raise ValidationError(f"generator {g} has wrong dimension")
            if any(c < 0 for c in g):
                raise ValidationError(f"generator {g} has a negative coordinate")
            if all(c == 0 for c in g):
                raise ValidationError("zero generator makes the order non-pointed")
        if len(set(gens)) != len(gens):
            raise ValidationError("generators must be pairwise distinct")
        self.dimension = dimension
        self.generators = gens
        self.n = len(gens)
        # Membership memo; inserts are idempotent so concurrent reads are safe.
        self._member: dict[Vector, bool] = {tuple([0] * dimension): True}
        for i, gi in enumerate(gens):
            for j, gj in enumerate(gens):
                if i != j and vec_dominates(gi, gj) and self.member(vec_sub(gi, gj)):
                    raise ValidationError(
                        f"generator {gi} is not an atom (divisible by {gj})"
                    )

    # -- membership / order ------------------------------------------------

    def member(self, v: Vector) -> bool:
        """Is v an N-combination of the generators?

        Depth-first over generator indices in fixed order with componentwise
        dominance pruning; memoized on the difference vector.
        """
        cached = self._member.get(v)
        if cached is not None:
            return cached
        if any(c < 0 for c in v):
            self._member[v] = False
            return False
        stack = [(v, iter(range(self.n)))]
        seen_on_stack = {v}
        while stack:
            target, gen_iter = stack[-1]
            advanced = False
            for i in gen_iter:
                g = self.generators[i]
                if not vec_dominates(target, g):
                    continue
                rest = vec_sub(target, g)
                known = self._member.get(rest)
                if known is True:
                    # unwind: everything on the stack is a member
                    for t, _ in stack:
                        self._member[t] = True
                    return self._member[v]
                if known is False or rest in seen_on_stack:
                    continue
                stack.append((rest, iter(range(self.n))))
                seen_on_stack.add(rest)
                advanced = True
                break
            if not advanced:
                self._member[target] = False
                seen_on_stack.discard(target)
                stack.pop()
        return self._member.setdefault(v, False)

    def leq(self, mu: Vector, lam: Vector) -> bool:
        return self.member(vec_sub(lam, mu))

    # -- fibers and degree ---------------------------------------------------

    def factorizations(self, lam: Vector) -> tuple[tuple[int, ...], ...]:
        """All multisets of generator indices summing to lam, as sorted tuples.

        Empty for lam outside the semigroup.
        """
        out: list[tuple[int, ...]] = []

        def rec(target: Vector, start: int, acc: list[int]):
            if all(c == 0 for c in target):
                out.append(tuple(acc))
                return
            for i in range(start, self.n):
                g = self.generators[i]
                if vec_dominates(target, g) and self.member(vec_sub(target, g)):
                    acc.append(i)
                    rec(vec_sub(target, g), i, acc)
                    acc.pop()

        rec(lam, 0, [])
        return tuple(sorted(out))

    def degree(self, lam: Vector) -> int:
        """Length of a shortest saturated chain from 0 to lam.

        By convention 0 for lam = 0.  Equals the standard degree when the
        generators lie on an affine hyperplane.
        """
        if all(c == 0 for c in lam):
            return 0
        facs = self.factorizations(lam)
        if not facs:
            raise ValidationError(f"{lam} is not in the semigroup")
        return min(len(f) for f in facs)

    # -- intervals -----------------------------------------------------------

    def interval(self, mu: Vector, lam: Vector) -> IntervalData:
        """All gamma with mu <= gamma <= lam plus single-generator edges."""
        if not self.leq(mu, lam):
            raise NotComparable(f"{mu} !<= {lam}")
        diff = vec_sub(lam, mu)
        zero = tuple([0] * self.dimension)
        found = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for v in frontier:
                for g in self.generators:
                    w = vec_add(v, g)
                    if w in found or not vec_dominates(diff, w):
                        continue
                    if self.member(vec_sub(diff, w)):
                        found.add(w)
                        nxt.append(w)
            frontier = nxt
        elements = tuple(
            sorted((vec_add(mu, v) for v in found), key=lambda e: (sum(e), e))
        )
        index = {e: i for i, e in enumerate(elements)}
        edges = []
        for e in elements:
            row = []
            for gi, g in enumerate(self.generators):
                j = index.get(vec_add(e, g))
                if j is not None:
                    row.append((gi, j))
            edges.append(tuple(row))
        return IntervalData(mu, lam, elements, tuple(edges))

    def degree_window(self, max_degree: int) -> dict[Vector, int]:
        """All nonzero lam with degree(lam) <= max_degree, with their degrees.

        BFS over generator sums; the level at which a multidegree first
        appears is its degree (shortest factorization).
        """
        zero = tuple([0] * self.dimension)
        out: dict[Vector, int] = {}
        level = {zero}
        for d in range(1, max_degree + 1):
            nxt = set()
            for v in level:
                for g in self.generators:
                    w = vec_add(v, g)
                    if w not in out:
                        nxt.add(w)
            for w in nxt:
                out.setdefault(w, d)
            level = nxt
        return out


def random_presentation(
    rng: random.Random,
    max_generators: int = 6,
    max_dimension: int = 5,
    max_coord: int = 3,
    face_budget: int = 150_000,
    window_degree: int = 6,
) -> SemigroupPresentation:
    """Sample a pointed presentation whose degree window stays desk-sized.

    Resamples until the generators are distinct atoms and a crude count of
    chains over the degree window fits the face budget, so downstream
    property suites stay inside their runtime budgets.
    """
    while True:
        e = rng.randint(1, max_dimension)
        n = rng.randint(1, max_generators)
        gens: list[Vector] = []
        pres = None
        for _ in range(n * 8):
            g = tuple(rng.randint(0, max_coord) for _ in range(e))
            if not any(g) or g in gens:
                continue
            try:
                candidate = SemigroupPresentation(e, gens + [g])
            except ValidationError:
                continue  # keeps every generator an atom
            gens.append(g)
            pres = candidate
            if len(gens) == n:
                break
        if pres is None:
            continue
        sums = [sum(g) for g in pres.generators]
        cap = max(2, -(-window_degree * max(sums) // min(sums)))
        monomials = 1
        for k in range(1, pres.n + 1):
            monomials = monomials * (cap + k) // k
        if monomials > face_budget:
            continue  # relation search would outgrow the budget
        work = 0
        feasible = True
        for lam in pres.degree_window(window_degree):
            facs = pres.factorizations(lam)
            for f in facs:
                count = 1
                for k in range(1, len(f) + 1):
                    count *= k
                work += count
                if work > face_budget:
                    feasible = False
                    break
            if not feasible:
                break
        if feasible:
            return pres
