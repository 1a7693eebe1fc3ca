"""Facet-order discrete Morse machinery on interval order complexes.

Faces of the open-interval complex are bitmasks over the interval's element
list.  Each facet owns the faces no earlier facet contains; within one
facet the matching toggles the lowest element of a distinguished skipped
interval.  Everything the theory promises (each facet's new faces are
exactly the transversals of its skipped-interval system, the matching is a
perfect acyclic matching off the critical cells) is re-verified at run time
rather than trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import Facet, FacetOrderConfig, ordered_facets
from .errors import AcyclicityFailure, CrossingViolation, InternalInvariantError
from .groebner import GroebnerBasis, leading_ideal_member
from .orders import Monomial, content_monomial
from .semigroup import IntervalData, Vector


@dataclass(frozen=True)
class RankInterval:
    """Consecutive interior ranks [lo, hi] skipped by a maximal overlap."""

    lo: int
    hi: int
    kind: str = "overlap"  # descent | syzygy | overlap
    lead: Monomial | None = None

    @property
    def height(self) -> int:
        return self.hi - self.lo + 1

    def ranks(self) -> range:
        return range(self.lo, self.hi + 1)

    def span(self) -> tuple[int, int]:
        return (self.lo, self.hi)


@dataclass(frozen=True)
class CriticalCell:
    facet: Facet
    ranks: tuple[int, ...]
    elements: tuple[Vector, ...]
    multidegree: Vector
    content: Monomial
    is_base: bool = False

    @property
    def dimension(self) -> int:
        return len(self.ranks) - 1


@dataclass(frozen=True)
class IntervalSystem:
    facet: Facet
    i_intervals: tuple[RankInterval, ...]
    j_intervals: tuple[RankInterval, ...]


def _assert_non_nested(intervals) -> None:
    spans = [iv.span() for iv in intervals]
    for a in spans:
        for b in spans:
            if a != b and a[0] >= b[0] and a[1] <= b[1]:
                raise InternalInvariantError(f"nested skipped intervals {a} in {b}")


# -- characterization from the Groebner data ---------------------------------


def _labels_of(facet_or_labels) -> tuple[int, ...]:
    return tuple(getattr(facet_or_labels, "labels", facet_or_labels))


def descent_intervals(cfg: FacetOrderConfig, facet) -> list[RankInterval]:
    labels = _labels_of(facet)
    rank = cfg.order.label_rank
    out = []
    for k in range(len(labels) - 1):
        if rank[labels[k]] > rank[labels[k + 1]]:
            out.append(RankInterval(k + 1, k + 1, "descent"))
    return out


def _lead_extremes(cfg: FacetOrderConfig, lead: Monomial) -> tuple[int, int]:
    vars_ = [i for i, e in enumerate(lead) if e > 0]
    rank = cfg.order.label_rank
    return min(vars_, key=lambda i: rank[i]), max(vars_, key=lambda i: rank[i])


def syzygy_intervals(
    gb: GroebnerBasis, cfg: FacetOrderConfig, facet
) -> list[RankInterval]:
    """Minimal weakly increasing runs whose label product carries a leading
    term with extremal divisors at the run's endpoints.

    Minimality: dropping either endpoint label leaves a product no leading
    term divides.
    """
    labels = _labels_of(facet)
    n = cfg.order.n
    rank = cfg.order.label_rank
    extremes = [(_lead_extremes(cfg, b.plus), b.plus) for b in gb.elements]
    out = []
    m = len(labels)
    for a in range(m - 1):
        for b in range(a + 1, m):
            window = labels[a : b + 1]
            if any(rank[window[t]] > rank[window[t + 1]] for t in range(len(window) - 1)):
                break  # longer windows from a are not weakly increasing either
            prod = content_monomial(window, n)
            hit = False
            for (lo_var, hi_var), lead in extremes:
                if lo_var == window[0] and hi_var == window[-1] and all(
                    e <= p for e, p in zip(lead, prod)
                ):
                    hit = True
                    break
            if not hit:
                continue
            prefix = content_monomial(window[:-1], n)
            suffix = content_monomial(window[1:], n)
            if leading_ideal_member(gb, prefix) or leading_ideal_member(gb, suffix):
                continue
            out.append(RankInterval(a + 1, b, "syzygy", lead))
    return out


def msi_characterization(
    gb: GroebnerBasis, cfg: FacetOrderConfig, facet
) -> tuple[RankInterval, ...]:
    """Skipped intervals read off the labels alone: descents plus syzygy runs."""
    out = descent_intervals(cfg, facet) + syzygy_intervals(gb, cfg, facet)
    out.sort(key=lambda iv: iv.span())
    _assert_non_nested(out)
    return tuple(out)


def label_system(gb: GroebnerBasis, cfg: FacetOrderConfig, labels) -> tuple[RankInterval, ...]:
    return msi_characterization(gb, cfg, tuple(labels))


def labels_contribute(gb: GroebnerBasis, cfg: FacetOrderConfig, labels) -> bool:
    """Would a facet with these labels contribute a critical cell?"""
    labels = tuple(labels)
    return covers_all_ranks(label_system(gb, cfg, labels), len(labels) - 1)


# -- direct computation from earlier facets -----------------------------------


def direct_interval_system(facets: list[Facet], j: int) -> tuple[RankInterval, ...]:
    """Skipped intervals of facets[j] from maximal overlaps with facets[:j].

    This is the defining computation; msi_characterization must agree with
    it.  Raises CrossingViolation when a maximal overlap face skips a
    disconnected rank set.
    """
    facet = facets[j]
    if j == 0:
        return ()
    r = len(facet.interior)
    overlaps = {frozenset(facet.interior) & frozenset(g.interior) for g in facets[:j]}
    maximal = [o for o in overlaps if not any(o < p for p in overlaps)]
    full = set(range(1, r + 1))
    rank_of = {e: i for i, e in enumerate(facet.interior, start=1)}
    out = []
    for o in maximal:
        skipped = sorted(full - {rank_of[e] for e in o})
        if not skipped:
            raise InternalInvariantError("duplicate facet in overlap computation")
        if skipped != list(range(skipped[0], skipped[-1] + 1)):
            raise CrossingViolation(
                f"facet {facet.labels} skips disconnected ranks {skipped}"
            )
        out.append(RankInterval(skipped[0], skipped[-1], "overlap"))
    out.sort(key=lambda iv: iv.span())
    _assert_non_nested(out)
    return tuple(out)


# -- truncation and critical cells --------------------------------------------


def truncate_to_j_intervals(i_intervals) -> tuple[RankInterval, ...]:
    """Disjoint intervals from possibly overlapping ones.

    Repeatedly: keep the interval of lowest rank, chop the ranks it covers
    off the rest, discard chopped intervals that became empty or now
    contain another one, re-sort, continue.
    """
    items = sorted(i_intervals, key=lambda iv: iv.span())
    out: list[RankInterval] = []
    while items:
        first = items[0]
        out.append(first)
        rest = []
        for iv in items[1:]:
            lo = max(iv.lo, first.hi + 1)
            if lo <= iv.hi:
                rest.append(RankInterval(lo, iv.hi, iv.kind, iv.lead))
        spans = {iv.span() for iv in rest}
        kept = []
        seen = set()
        for iv in rest:
            if iv.span() in seen:
                continue
            if any(s != iv.span() and iv.lo <= s[0] and s[1] <= iv.hi for s in spans):
                continue  # no longer minimal: strictly contains another
            seen.add(iv.span())
            kept.append(iv)
        items = sorted(kept, key=lambda iv: iv.span())
    return tuple(out)


def covers_all_ranks(intervals, r: int) -> bool:
    covered = set()
    for iv in intervals:
        covered.update(iv.ranks())
    return covered == set(range(1, r + 1))


def critical_cell_of(facet: Facet, i_intervals, top: Vector, n: int, is_base: bool = False):
    """The critical cell the interval system induces, if the system covers.

    Empty-interior facets (one cover step) yield the empty cell of
    dimension -1 under the reduced convention.
    """
    r = len(facet.interior)
    if not covers_all_ranks(i_intervals, r):
        return None
    j_intervals = truncate_to_j_intervals(i_intervals)
    ranks = tuple(iv.lo for iv in j_intervals)
    return CriticalCell(
        facet=facet,
        ranks=ranks,
        elements=tuple(facet.interior[k - 1] for k in ranks),
        multidegree=top,
        content=content_monomial(facet.labels, n),
        is_base=is_base,
    )


# -- the face matching ---------------------------------------------------------


@dataclass
class FaceMatching:
    """Per-interval matching state.

    faces maps every nonempty chain (as an element bitmask) to the index of
    its earliest containing facet; partner maps matched faces both ways.
    Critical masks are the unmatched ones.
    """

    ivl: IntervalData
    cfg: FacetOrderConfig
    facets: list[Facet]
    systems: list[tuple[RankInterval, ...]]
    j_systems: list[tuple[RankInterval, ...]]
    owner: dict[int, int] = field(default_factory=dict)
    partner: dict[int, int] = field(default_factory=dict)
    critical: dict[int, CriticalCell] = field(default_factory=dict)
    empty_cell: CriticalCell | None = None

    def cells(self) -> list[CriticalCell]:
        out = [] if self.empty_cell is None else [self.empty_cell]
        out.extend(self.critical.values())
        return out

    def interval_system(self, j: int) -> IntervalSystem:
        return IntervalSystem(self.facets[j], self.systems[j], self.j_systems[j])

    def face_elements(self, mask: int) -> tuple[Vector, ...]:
        return tuple(
            e for i, e in enumerate(self.ivl.elements) if mask >> i & 1
        )

    def dim(self, mask: int) -> int:
        return bin(mask).count("1") - 1


def _facet_masks(ivl: IntervalData, facet: Facet) -> list[int]:
    return [1 << ivl.index(e) for e in facet.interior]


def build_face_matching(
    ivl: IntervalData,
    cfg: FacetOrderConfig,
    gb: GroebnerBasis,
    systems: list[tuple[RankInterval, ...]] | None = None,
) -> FaceMatching:
    """The full facet-by-facet acyclic matching for one interval.

    systems defaults to the Groebner characterization; pass explicitly to
    drive the matching from directly computed overlaps instead.
    """
    facets = ordered_facets(ivl, cfg)
    if systems is None:
        systems = [msi_characterization(gb, cfg, f) for f in facets]
    j_systems = [truncate_to_j_intervals(s) for s in systems]
    fm = FaceMatching(ivl, cfg, facets, systems, j_systems)
    n = cfg.order.n

    if len(facets) == 1 and not facets[0].interior:
        fm.empty_cell = critical_cell_of(facets[0], (), ivl.top, n)
        return fm

    for j, facet in enumerate(facets):
        bits = _facet_masks(ivl, facet)
        r = len(bits)
        new_faces = []
        for sub in range(1, 1 << r):
            mask = 0
            for k in range(r):
                if sub >> k & 1:
                    mask |= bits[k]
            if mask not in fm.owner:
                fm.owner[mask] = j
                new_faces.append((sub, mask))
        _check_transversals(facet, systems[j], new_faces, r, j)
        _match_within_facet(fm, j, facet, bits, new_faces)

    _verify_matching(fm)
    return fm


def _check_transversals(facet, system, new_faces, r, j) -> None:
    got = {sub for sub, _ in new_faces}
    want = set()
    spans = [iv.span() for iv in system]
    for sub in range(1, 1 << r):
        ranks = {k + 1 for k in range(r) if sub >> k & 1}
        if all(any(lo <= q <= hi for q in ranks) for lo, hi in spans):
            want.add(sub)
    if got != want:
        raise InternalInvariantError(
            f"facet {facet.labels} (index {j}): new faces do not match the "
            f"transversals of its skipped-interval system"
        )


def _match_within_facet(fm: FaceMatching, j, facet, bits, new_faces) -> None:
    system = fm.systems[j]
    j_sys = fm.j_systems[j]
    r = len(bits)
    n = fm.cfg.order.n
    covered = covers_all_ranks(system, r)
    if not covered:
        uncovered = [q for q in range(1, r + 1) if not any(q in iv.ranks() for iv in system)]
        cone_bit = bits[uncovered[0] - 1]
        for sub, mask in new_faces:
            other = mask ^ cone_bit
            if other == 0:
                # lowest vertex of the least facet: the base critical cell
                fm.critical[mask] = CriticalCell(
                    facet,
                    (uncovered[0],),
                    (facet.interior[uncovered[0] - 1],),
                    fm.ivl.top,
                    content_monomial(facet.labels, n),
                    is_base=True,
                )
                continue
            fm.partner[mask] = other
        return
    cell = critical_cell_of(facet, system, fm.ivl.top, n)
    cell_mask = 0
    for q in cell.ranks:
        cell_mask |= bits[q - 1]
    lo_bits = [bits[iv.lo - 1] for iv in j_sys]
    span_masks = []
    for iv in j_sys:
        m = 0
        for q in iv.ranks():
            m |= bits[q - 1]
        span_masks.append(m)
    for sub, mask in new_faces:
        if mask == cell_mask:
            fm.critical[mask] = cell
            continue
        for k, span in enumerate(span_masks):
            if mask & span & ~lo_bits[k]:
                fm.partner[mask] = mask ^ lo_bits[k]
                break
        else:
            raise InternalInvariantError(
                f"facet {facet.labels}: new face differs from the critical cell "
                f"in no truncated interval"
            )


def _verify_matching(fm: FaceMatching) -> None:
    for mask, other in fm.partner.items():
        if fm.partner.get(other) != mask:
            raise InternalInvariantError("matching is not an involution")
        if abs(fm.dim(mask) - fm.dim(other)) != 1:
            raise InternalInvariantError("matched pair dimensions differ by != 1")
        if fm.owner[mask] != fm.owner[other]:
            raise InternalInvariantError("matched pair crosses facet ownership")
    for mask in fm.owner:
        if mask not in fm.partner and mask not in fm.critical:
            raise InternalInvariantError("face neither matched nor critical")
    if not verify_acyclic(fm):
        raise AcyclicityFailure("face matching has a directed cycle")


def verify_acyclic(fm: FaceMatching) -> bool:
    """Topological sort of the modified Hasse digraph (matched edges up)."""
    succ: dict[int, list[int]] = {m: [] for m in fm.owner}
    indeg = {m: 0 for m in fm.owner}
    for mask in fm.owner:
        up = fm.partner.get(mask)
        if up is not None and fm.dim(up) == fm.dim(mask) + 1:
            succ[mask].append(up)
            indeg[up] += 1
        m = mask
        while m:
            bit = m & -m
            m ^= bit
            sub = mask ^ bit
            if sub and fm.partner.get(mask) != sub:
                succ[mask].append(sub)
                indeg[sub] += 1
    queue = [m for m, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        x = queue.pop()
        seen += 1
        for y in succ[x]:
            indeg[y] -= 1
            if indeg[y] == 0:
                queue.append(y)
    return seen == len(fm.owner)


def morse_numbers(cells) -> dict[int, int]:
    out: dict[int, int] = {}
    for c in cells:
        out[c.dimension] = out.get(c.dimension, 0) + 1
    return dict(sorted(out.items()))


def euler_characteristic(fm: FaceMatching) -> int:
    """Alternating face count of the open-interval complex, dims >= 0."""
    chi = 0
    for mask in fm.owner:
        chi += -1 if fm.dim(mask) % 2 else 1
    return chi


def assert_euler(fm: FaceMatching, cells) -> None:
    m = morse_numbers(cells)
    lhs = sum((-1) ** d * k for d, k in m.items() if d >= 0)
    if lhs != euler_characteristic(fm):
        raise InternalInvariantError("Morse numbers violate the Euler identity")
