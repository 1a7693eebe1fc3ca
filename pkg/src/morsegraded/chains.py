"""Saturated chains of an interval, their label sequences, and facet orders.

A facet is stored bottom-up: labels[k] is the generator applied at step k,
interior[k] the chain element reached after it (the top is not stored).
Contents compare by the term order; ties within a fiber break
lexicographically using the order's degree-one restriction.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key

from .orders import TermOrder, content_monomial
from .semigroup import IntervalData, SemigroupPresentation, Vector


@dataclass(frozen=True)
class Facet:
    labels: tuple[int, ...]
    interior: tuple[Vector, ...]

    def __len__(self) -> int:
        return len(self.labels)


@dataclass(frozen=True)
class FacetOrderConfig:
    order: TermOrder

    def content(self, facet_or_labels) -> tuple[int, ...]:
        labels = getattr(facet_or_labels, "labels", facet_or_labels)
        return content_monomial(labels, self.order.n)

    def compare_facets(self, a: Facet, b: Facet) -> int:
        c = self.order.compare(self.content(a), self.content(b))
        if c:
            return c
        ra = [self.order.label_rank[i] for i in a.labels]
        rb = [self.order.label_rank[i] for i in b.labels]
        return -1 if ra < rb else (0 if ra == rb else 1)

    def facet_key(self):
        return cmp_to_key(self.compare_facets)

    def sorted_label_word(self, labels) -> tuple[int, ...]:
        return tuple(sorted(labels, key=lambda i: self.order.label_rank[i]))


def saturated_chains(ivl: IntervalData) -> list[Facet]:
    """Every maximal chain of the interval, once, in label-index DFS order."""
    bottom_idx = ivl.index(ivl.bottom)
    top_idx = ivl.index(ivl.top)
    out: list[Facet] = []
    labels: list[int] = []
    interior: list[Vector] = []

    def walk(at: int):
        if at == top_idx:
            out.append(Facet(tuple(labels), tuple(interior[:-1])))
            return
        for gen, nxt in ivl.cover_edges[at]:
            labels.append(gen)
            interior.append(ivl.elements[nxt])
            walk(nxt)
            labels.pop()
            interior.pop()

    if bottom_idx == top_idx:
        return [Facet((), ())]
    walk(bottom_idx)
    return out


def ordered_facets(ivl: IntervalData, cfg: FacetOrderConfig) -> list[Facet]:
    return sorted(saturated_chains(ivl), key=cfg.facet_key())


@dataclass(frozen=True)
class CrossingReport:
    ok: bool
    facet: Facet | None = None
    earlier: Facet | None = None
    skipped: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def _overlap_ranks(facet: Facet, other: Facet) -> tuple[int, ...]:
    shared = set(other.interior)
    return tuple(r for r, e in enumerate(facet.interior, start=1) if e in shared)


def _is_run(ranks: tuple[int, ...]) -> bool:
    return all(b == a + 1 for a, b in zip(ranks, ranks[1:]))


def check_crossing_condition(facets: list[Facet]) -> CrossingReport:
    """Exhaustive crossing-condition check for an explicit facet order.

    For every facet F and earlier G whose shared face skips a disconnected
    rank set, some earlier G' must share strictly more of F.  Returns the
    first violation found.
    """
    for j, f in enumerate(facets):
        r = len(f.interior)
        full = set(range(1, r + 1))
        for i in range(j):
            shared = _overlap_ranks(f, facets[i])
            skipped = tuple(sorted(full - set(shared)))
            if _is_run(skipped):
                continue
            shared_set = set(shared)
            witness = False
            for k in range(j):
                if k == i:
                    continue
                bigger = set(_overlap_ranks(f, facets[k]))
                if shared_set < bigger:
                    witness = True
                    break
            if not witness:
                return CrossingReport(False, f, facets[i], skipped)
    return CrossingReport(True)


def subinterval_pairs(pres: SemigroupPresentation, ivl: IntervalData):
    for x in ivl.elements:
        for y in ivl.elements:
            if x != y and pres.leq(x, y):
                yield x, y


def is_least_content_increasing(
    pres: SemigroupPresentation, ivl: IntervalData, cfg: FacetOrderConfig
) -> bool:
    """Least chain of every subinterval weakly increasing, and its label
    sequence equal to or preceding every other chain's content."""
    for x, y in subinterval_pairs(pres, ivl):
        sub = pres.interval(x, y)
        chains = ordered_facets(sub, cfg)
        least = chains[0]
        ranks = [cfg.order.label_rank[i] for i in least.labels]
        if ranks != sorted(ranks):
            return False
        for other in chains[1:]:
            rearranged = Facet(cfg.sorted_label_word(other.labels), other.interior)
            if cfg.compare_facets(least, rearranged) > 0:
                return False
    return True
