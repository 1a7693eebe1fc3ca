"""Cancelling critical cells along certified-unique gradient paths.

The matching rules follow the non-essential-set discipline: a cell's
highest syzygy window with shiftable labels picks a pivot label, and the
partner is the cell with that pivot shifted across the window boundary.
No pair is reversed on trust: every match is certified by exhaustive path
enumeration (exactly one path), the critical-cell multigraph is checked
acyclic fiber by fiber, and the reversed face matching is re-verified from
scratch.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chains import FacetOrderConfig
from .errors import (
    InternalInvariantError,
    PathCapExceeded,
    UnmatchedUnsaturatedCell,
)
from .groebner import GroebnerBasis, leading_ideal_member
from .morse import (
    CriticalCell,
    FaceMatching,
    build_face_matching,
    covers_all_ranks,
    label_system,
    labels_contribute,
    truncate_to_j_intervals,
    verify_acyclic,
)
from .orders import Monomial
from .semigroup import SemigroupPresentation, Vector

DEFAULT_PATH_CAP = 10_000


# -- gradient paths -----------------------------------------------------------


@dataclass(frozen=True)
class GradientPath:
    """Alternating cell masks tau, y1, x1, ..., ending at the lower cell."""

    cells: tuple[int, ...]


def enumerate_gradient_paths(
    fm: FaceMatching, tau_mask: int, sigma_mask: int, cap: int = DEFAULT_PATH_CAP
) -> list[GradientPath]:
    """Exhaustive DFS over the modified Hasse digraph; complete below cap."""
    if fm.dim(tau_mask) != fm.dim(sigma_mask) + 1:
        raise InternalInvariantError("gradient paths need consecutive dimensions")
    paths: list[GradientPath] = []
    stack: list[tuple[int, tuple[int, ...]]] = [(tau_mask, (tau_mask,))]
    while stack:
        x, trail = stack.pop()
        m = x
        while m:
            bit = m & -m
            m ^= bit
            y = x ^ bit
            if not y:
                continue
            if y == sigma_mask:
                paths.append(GradientPath(trail + (y,)))
                if len(paths) > cap:
                    raise PathCapExceeded(cap, tau_mask, sigma_mask)
                continue
            up = fm.partner.get(y)
            if up is not None and fm.dim(up) == fm.dim(y) + 1 and up != x:
                stack.append((up, trail + (y, up)))
    paths.sort(key=lambda p: p.cells)
    return paths


def count_gradient_paths(fm, tau_mask, sigma_mask, cap=DEFAULT_PATH_CAP) -> int:
    return len(enumerate_gradient_paths(fm, tau_mask, sigma_mask, cap))


# -- 321-avoidance and theorem-backed uniqueness -------------------------------


def transforming_permutation(src, dst) -> list[int]:
    """perm with dst[i] = src[perm[i]], matching repeated labels stably."""
    pools: dict[int, list[int]] = {}
    for i, x in enumerate(src):
        pools.setdefault(x, []).append(i)
    taken = {k: 0 for k in pools}
    perm = []
    for x in dst:
        perm.append(pools[x][taken[x]])
        taken[x] += 1
    return perm


def is_321_avoiding(perm) -> bool:
    m = len(perm)
    for j in range(m):
        if any(perm[i] > perm[j] for i in range(j)) and any(
            perm[k] < perm[j] for k in range(j + 1, m)
        ):
            return False
    return True


def _block_shifts(src, dst):
    m = len(src)
    for i in range(m):
        for length in range(1, m - i + 1):
            block = src[i : i + length]
            rest = src[:i] + src[i + length :]
            for dest in range(m - length + 1):
                if dest == i:
                    continue
                if rest[:dest] + block + rest[dest:] == dst:
                    yield i, length, dest


def check_321_uniqueness(cfg: FacetOrderConfig, tau_labels, sigma_labels) -> str:
    """unique-by-theorem when the transforming permutation is 321-avoiding
    and moves one ascending block up or one label down; else defer."""
    tau_labels, sigma_labels = tuple(tau_labels), tuple(sigma_labels)
    if sorted(tau_labels) != sorted(sigma_labels):
        return "needs-enumeration"
    if not is_321_avoiding(transforming_permutation(tau_labels, sigma_labels)):
        return "needs-enumeration"
    rank = cfg.order.label_rank
    for i, length, dest in _block_shifts(tau_labels, sigma_labels):
        block = tau_labels[i : i + length]
        ascending = all(rank[block[t]] <= rank[block[t + 1]] for t in range(length - 1))
        if dest > i and ascending:
            return "unique-by-theorem"
        if length == 1 and dest < i:
            return "unique-by-theorem"
    return "needs-enumeration"


# -- syzygy windows and non-essential sets -------------------------------------


@dataclass(frozen=True)
class Window:
    """A syzygy interval as 0-based label positions [start, end]."""

    start: int
    end: int
    lead: Monomial | None


def windows_of(gb: GroebnerBasis, cfg: FacetOrderConfig, labels) -> list[Window]:
    return [
        Window(iv.lo - 1, iv.hi, iv.lead)
        for iv in label_system(gb, cfg, tuple(labels))
        if iv.kind == "syzygy"
    ]


def commutation_table(gb: GroebnerBasis) -> list[list[bool]]:
    """labels commute iff their pair product avoids the leading ideal."""
    n = gb.order.n
    table = [[True] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            m = [0] * n
            m[a] += 1
            m[b] += 1
            if leading_ideal_member(gb, tuple(m)):
                table[a][b] = table[b][a] = False
    return table


@dataclass(frozen=True)
class ShiftMember:
    """One non-essential label of a window, with its matching partner word."""

    label: int
    kind: str  # inside | outside
    position: int
    partner_labels: tuple[int, ...]
    landing: int  # rank-side slot of the label when outside the window
    witness: "GradientPath | None" = None


@dataclass(frozen=True)
class NonEssentialSet:
    window: Window
    members: tuple[ShiftMember, ...]

    def labels(self) -> tuple[int, ...]:
        return tuple(sorted({m.label for m in self.members}))


def _not_window_interior(windows: list[Window], pos: int) -> bool:
    return all(not (w.start < pos < w.end) for w in windows)


def _down_slot(gb, cfg, commutes, labels, w: Window, p: int):
    """Shift labels[p] out of window w to the highest landing that leaves a
    critical cell with the label outside every window interior."""
    x = labels[p]
    rank = cfg.order.label_rank
    # every label passed on the way down must sort past x and commute with it
    for y in labels[w.start + 1 : p]:
        if rank[y] >= rank[x] or not commutes[x][y]:
            return None
    for q in range(w.start, -1, -1):
        y = labels[q]
        if rank[y] >= rank[x] or not commutes[x][y]:
            return None
        word = labels[:q] + (x,) + labels[q:p] + labels[p + 1 :]
        if not labels_contribute(gb, cfg, word):
            continue
        if _not_window_interior(windows_of(gb, cfg, word), q):
            return word, q
    return None


def _insert_sorted(gb, cfg, labels, w: Window, p: int):
    """Shift labels[p] (below the window) up into the window interior."""
    rank = cfg.order.label_rank
    x = labels[p]
    rest = list(labels[:p] + labels[p + 1 :])
    start = w.start - 1  # window slides down by the removed label
    offset = 0
    for k in range(start, w.end):
        if rank[rest[k]] <= rank[x]:
            offset = k - start + 1
    rest.insert(start + offset, x)
    return tuple(rest), start + offset


def _upward_shiftable(gb, cfg, commutes, labels, w: Window, p: int):
    x = labels[p]
    rank = cfg.order.label_rank
    a1, a2 = labels[w.start], labels[w.end]
    if not (rank[a1] < rank[x] < rank[a2]):
        return None
    for y in labels[p + 1 : w.start]:
        if rank[y] >= rank[x] or not commutes[x][y]:
            return None
    for y in labels[w.start : w.end + 1]:
        if not commutes[x][y]:
            return None
    # the label may not top a window whose loss breaks criticality
    for w2 in windows_of(gb, cfg, labels):
        if w2.end != p:
            continue
        if w2.end - w2.start > 1:
            return None
        mu, nu = labels[w2.start], labels[p + 1]
        descent = rank[mu] > rank[nu]
        pair_lead = rank[mu] <= rank[nu] and not commutes[mu][nu]
        if not (descent or pair_lead):
            return None
    word, at = _insert_sorted(gb, cfg, labels, w, p)
    if not labels_contribute(gb, cfg, word):
        return None
    if _not_window_interior(windows_of(gb, cfg, word), at):
        return None
    return word


def non_essential_sets(
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    labels,
    commutes=None,
) -> list[NonEssentialSet]:
    """Per-window shiftable labels of a critical cell's label sequence.

    Inside members carry the word with the label shifted out to its highest
    feasible slot; outside members the word with it shifted in.  Repeated
    label values keep a single copy, and a label below several windows
    belongs to the lowest one that accepts it.
    """
    labels = tuple(labels)
    if commutes is None:
        commutes = commutation_table(gb)
    out = []
    claimed_outside: set[int] = set()
    for w in sorted(windows_of(gb, cfg, labels), key=lambda w: (w.start, w.end)):
        members: list[ShiftMember] = []
        seen_values: set[int] = set()
        for p in range(w.start + 1, w.end):
            x = labels[p]
            if x in seen_values:
                continue
            hit = _down_slot(gb, cfg, commutes, labels, w, p)
            if hit is not None:
                word, q = hit
                members.append(ShiftMember(x, "inside", p, word, q))
                seen_values.add(x)
        for p in range(w.start):
            if p in claimed_outside:
                continue
            x = labels[p]
            if x in seen_values:
                continue
            word = _upward_shiftable(gb, cfg, commutes, labels, w, p)
            if word is not None:
                members.append(ShiftMember(x, "outside", p, word, p))
                seen_values.add(x)
                claimed_outside.add(p)
        members.sort(key=lambda m: cfg.order.label_rank[m.label])
        out.append(NonEssentialSet(w, tuple(members)))
    return out


def witnessed_non_essential_sets(
    fm: FaceMatching,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    labels,
    path_cap: int = DEFAULT_PATH_CAP,
) -> list[NonEssentialSet]:
    """Non-essential sets with each membership claim backed by the unique
    gradient path between the cell and its shift partner."""
    mask_of = {c.facet.labels: m for m, c in fm.critical.items()}
    labels = tuple(labels)
    out = []
    for nes in non_essential_sets(gb, cfg, labels):
        members = []
        for m in nes.members:
            witness = None
            if labels in mask_of and m.partner_labels in mask_of:
                a, b = mask_of[labels], mask_of[m.partner_labels]
                hi, lo = (a, b) if fm.dim(a) > fm.dim(b) else (b, a)
                paths = enumerate_gradient_paths(fm, hi, lo, path_cap)
                if len(paths) != 1:
                    raise InternalInvariantError(
                        f"membership of {m.label} lacks a unique witnessing path"
                    )
                witness = paths[0]
            members.append(
                ShiftMember(m.label, m.kind, m.position, m.partner_labels, m.landing, witness)
            )
        out.append(NonEssentialSet(nes.window, tuple(members)))
    return out


def expanding_interval(sets: list[NonEssentialSet]) -> NonEssentialSet | None:
    """The highest window with a nonempty non-essential set."""
    live = [s for s in sets if s.members]
    if not live:
        return None
    return max(live, key=lambda s: (s.window.start, s.window.end))


def pivot_member(nes: NonEssentialSet, cfg: FacetOrderConfig) -> ShiftMember:
    # smallest label sits highest among the stacked-out positions
    return min(nes.members, key=lambda m: cfg.order.label_rank[m.label])


# -- label-level critical cells -------------------------------------------------


@dataclass(frozen=True)
class LabelCell:
    labels: tuple[int, ...]
    ranks: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.ranks) - 1

    @property
    def saturated(self) -> bool:
        return len(self.ranks) == len(self.labels) - 1


def label_cell(gb, cfg, labels) -> LabelCell | None:
    labels = tuple(labels)
    system = label_system(gb, cfg, labels)
    if not covers_all_ranks(system, len(labels) - 1):
        return None
    ranks = tuple(iv.lo for iv in truncate_to_j_intervals(system))
    return LabelCell(labels, ranks)


def _has_interior_window(gb, cfg, labels) -> bool:
    return any(w.end - w.start > 1 for w in windows_of(gb, cfg, labels))


def _distinct_permutations(items):
    items = sorted(items)
    n = len(items)
    used = [False] * n
    word: list[int] = []

    def rec():
        if len(word) == n:
            yield tuple(word)
            return
        prev = None
        for i in range(n):
            if used[i] or items[i] == prev:
                continue
            prev = items[i]
            used[i] = True
            word.append(items[i])
            yield from rec()
            word.pop()
            used[i] = False

    yield from rec()


# -- cancellation over a built face matching -----------------------------------


@dataclass(frozen=True)
class MatchedPair:
    high_labels: tuple[int, ...]
    low_labels: tuple[int, ...]
    rule: str
    path_count: int
    theorem_status: str
    path: GradientPath | None = None


@dataclass
class CancellationResult:
    matching: FaceMatching
    survivors: list[CriticalCell]
    pairs: list[MatchedPair]
    residual_low_cells: list[CriticalCell]
    notes: list[str] = field(default_factory=list)

    def survivor_words(self) -> list[tuple[int, ...]]:
        """Top-down label sequences of non-base survivors."""
        out = []
        for c in self.survivors:
            if c.is_base:
                continue
            out.append(tuple(reversed(c.facet.labels)))
        return sorted(out)

    def morse_numbers(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for c in self.survivors:
            out[c.dimension] = out.get(c.dimension, 0) + 1
        return dict(sorted(out.items()))


def _cell_sort_key(cfg: FacetOrderConfig):
    rank = cfg.order.label_rank

    def key(cell: CriticalCell):
        return (
            tuple(sorted(rank[i] for i in cell.facet.labels)),
            tuple(rank[i] for i in cell.facet.labels),
        )

    return key


def _fiber_acyclic(matched: dict, edges: dict) -> bool:
    """Toposort the critical multigraph with matched edges reversed."""
    nodes = set()
    for hi, lo in edges:
        nodes.add(hi)
        nodes.add(lo)
    succ = {v: [] for v in nodes}
    indeg = {v: 0 for v in nodes}
    for (hi, lo), count in edges.items():
        if count == 0:
            continue
        if matched.get(lo) == hi:
            succ[lo].append(hi)
            indeg[hi] += 1
        else:
            succ[hi].append(lo)
            indeg[lo] += 1
    queue = [v for v in nodes if indeg[v] == 0]
    seen = 0
    while queue:
        v = queue.pop()
        seen += 1
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(nodes)


def _apply_reversals(fm: FaceMatching, chosen: list[tuple[int, int, GradientPath]]):
    partner = dict(fm.partner)
    removed: set[tuple[int, int]] = set()
    added: dict[int, int] = {}

    def drop(a, b):
        if (a, b) in removed or partner.get(a) != b:
            raise InternalInvariantError("reversed paths are not edge-disjoint")
        removed.add((a, b))
        removed.add((b, a))
        del partner[a]
        del partner[b]

    def add(a, b):
        if a in partner or b in partner or a in added or b in added:
            raise InternalInvariantError("reversed paths collide")
        added[a] = b
        added[b] = a

    for tau, sigma, path in chosen:
        cells = path.cells
        k = len(cells) // 2
        for i in range(1, k):
            drop(cells[2 * i - 1], cells[2 * i])
        for i in range(1, k + 1):
            add(cells[2 * i - 2], cells[2 * i - 1])
    partner.update(added)
    out = FaceMatching(
        fm.ivl, fm.cfg, fm.facets, fm.systems, fm.j_systems, dict(fm.owner), partner,
        dict(fm.critical), fm.empty_cell,
    )
    cancelled = {c[0] for c in chosen} | {c[1] for c in chosen}
    out.critical = {m: c for m, c in fm.critical.items() if m not in cancelled}
    return out


def cancel_cells(
    fm: FaceMatching,
    gb: GroebnerBasis,
    path_cap: int = DEFAULT_PATH_CAP,
    dim_bound_num: tuple[int, int] | None = None,
    require_complete: bool = False,
) -> CancellationResult:
    """Shared cancellation engine over a built face matching.

    dim_bound_num carries (deg(lambda) - 1, d - 1) so the degree-d residual
    test 'dimension < -1 + (deg-1)/(d-1)' stays in exact arithmetic; the
    quadratic caller instead sets require_complete and expects no
    unsaturated survivor at all.
    """
    cfg = fm.cfg
    commutes = commutation_table(gb)
    notes: list[str] = []
    cells = [c for c in fm.critical.values() if not c.is_base and c.dimension >= 0]
    cells.sort(key=_cell_sort_key(cfg))
    mask_of = {c.facet.labels: m for m, c in fm.critical.items()}
    by_labels = {c.facet.labels: c for c in cells}
    matched: dict[tuple[int, ...], tuple[int, ...]] = {}
    chosen: list[tuple[int, int, GradientPath]] = []
    pairs: list[MatchedPair] = []

    def certify(hi: CriticalCell, lo: CriticalCell, rule: str):
        hm, lm = mask_of[hi.facet.labels], mask_of[lo.facet.labels]
        found = enumerate_gradient_paths(fm, hm, lm, path_cap)
        if len(found) != 1:
            raise InternalInvariantError(
                f"matched pair {hi.facet.labels} / {lo.facet.labels} has "
                f"{len(found)} gradient paths, expected exactly 1"
            )
        status = check_321_uniqueness(cfg, hi.facet.labels, lo.facet.labels)
        matched[hi.facet.labels] = lo.facet.labels
        matched[lo.facet.labels] = hi.facet.labels
        chosen.append((hm, lm, found[0]))
        pairs.append(
            MatchedPair(hi.facet.labels, lo.facet.labels, rule, 1, status, found[0])
        )

    # primary pass: pivot of the expanding interval
    for cell in cells:
        if cell.facet.labels in matched:
            continue
        nes = non_essential_sets(gb, cfg, cell.facet.labels, commutes)
        target = expanding_interval(nes)
        if target is None:
            continue
        pivot = pivot_member(target, cfg)
        partner = by_labels.get(pivot.partner_labels)
        if partner is None or partner.facet.labels in matched:
            notes.append(f"pivot partner unavailable for {cell.facet.labels}")
            continue
        back = expanding_interval(non_essential_sets(gb, cfg, partner.facet.labels, commutes))
        if back is None or pivot_member(back, cfg).partner_labels != cell.facet.labels:
            notes.append(f"pivot not mutual for {cell.facet.labels}")
            continue
        if abs(cell.dimension - partner.dimension) != 1:
            raise InternalInvariantError(
                "matched cells must differ in dimension by exactly one"
            )
        hi, lo = (cell, partner) if cell.dimension > partner.dimension else (partner, cell)
        certify(hi, lo, "expanding-interval pivot")

    # fallback: certified greedy pairing for whatever the rules left behind
    def wanted(cell: CriticalCell) -> bool:
        if require_complete:
            return _has_interior_window(gb, cfg, cell.facet.labels)
        if dim_bound_num is None:
            return False
        num, den = dim_bound_num
        return (cell.dimension + 1) * den < num

    for cell in cells:
        if cell.facet.labels in matched or not wanted(cell):
            continue
        for partner in cells:
            if (
                partner.facet.labels in matched
                or partner is cell
                or abs(partner.dimension - cell.dimension) != 1
                or sorted(partner.facet.labels) != sorted(cell.facet.labels)
            ):
                continue
            hi, lo = (cell, partner) if cell.dimension > partner.dimension else (partner, cell)
            found = enumerate_gradient_paths(
                fm, mask_of[hi.facet.labels], mask_of[lo.facet.labels], path_cap
            )
            if len(found) != 1:
                continue
            trial = dict(matched)
            trial[lo.facet.labels] = hi.facet.labels
            if not _fiber_acyclic(trial, _fiber_edges(fm, cells, mask_of, path_cap)):
                continue
            certify(hi, lo, "greedy certified")
            break

    edges = _fiber_edges(fm, cells, mask_of, path_cap)
    low_matched = {
        lo: hi for lo, hi in matched.items() if by_labels[lo].dimension < by_labels[hi].dimension
    }
    if not _fiber_acyclic(low_matched, edges):
        raise InternalInvariantError("critical multigraph matching has a cycle")

    new_fm = _apply_reversals(fm, chosen)
    if not verify_acyclic(new_fm):
        raise InternalInvariantError("reversed matching is not acyclic")
    survivors = new_fm.cells()

    residual = []
    for c in survivors:
        if c.is_base or c.dimension < 0:
            continue
        if require_complete and _has_interior_window(gb, cfg, c.facet.labels):
            raise UnmatchedUnsaturatedCell(
                f"cell {c.facet.labels} kept a syzygy interval with interior"
            )
        if dim_bound_num is not None:
            num, den = dim_bound_num
            if (c.dimension + 1) * den < num:
                residual.append(c)
    return CancellationResult(new_fm, survivors, pairs, residual, notes)


@dataclass(frozen=True)
class CriticalMultigraph:
    """Critical cells with one edge per gradient path between consecutive
    dimensions of equal content."""

    vertices: tuple[tuple[int, ...], ...]
    edges: dict[tuple[tuple[int, ...], tuple[int, ...]], int]

    def multiplicity(self, hi, lo) -> int:
        return self.edges.get((tuple(hi), tuple(lo)), 0)


def critical_multigraph(fm: FaceMatching, path_cap: int = DEFAULT_PATH_CAP) -> CriticalMultigraph:
    cells = [c for c in fm.critical.values() if not c.is_base and c.dimension >= 0]
    mask_of = {c.facet.labels: m for m, c in fm.critical.items()}
    edges = _fiber_edges(fm, cells, mask_of, path_cap)
    return CriticalMultigraph(tuple(sorted(c.facet.labels for c in cells)), dict(edges))


def _fiber_edges(fm, cells, mask_of, path_cap):
    """Path counts between same-content consecutive-dimension cells."""
    key = "_fiber_edge_cache"
    cached = getattr(fm, key, None)
    if cached is not None:
        return cached
    edges: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
    by_content: dict[tuple[int, ...], list[CriticalCell]] = {}
    for c in cells:
        by_content.setdefault(tuple(sorted(c.facet.labels)), []).append(c)
    for group in by_content.values():
        for hi in group:
            for lo in group:
                if hi.dimension != lo.dimension + 1:
                    continue
                count = count_gradient_paths(
                    fm, mask_of[hi.facet.labels], mask_of[lo.facet.labels], path_cap
                )
                if count:
                    edges[(hi.facet.labels, lo.facet.labels)] = count
    setattr(fm, key, edges)
    return edges


def cancel_quadratic(
    fm: FaceMatching, gb: GroebnerBasis, path_cap: int = DEFAULT_PATH_CAP
) -> CancellationResult:
    if gb.degree > 2:
        raise InternalInvariantError("cancel_quadratic needs a basis of degree <= 2")
    return cancel_cells(fm, gb, path_cap, require_complete=True)


def cancel_degree_d(
    fm: FaceMatching,
    gb: GroebnerBasis,
    pres: SemigroupPresentation,
    path_cap: int = DEFAULT_PATH_CAP,
) -> CancellationResult:
    d = max(2, gb.degree)
    deg = pres.degree(fm.ivl.top) if fm.ivl.top != fm.ivl.bottom else 0
    return cancel_cells(fm, gb, path_cap, dim_bound_num=(deg - 1, d - 1))


def cancel_interval(
    pres: SemigroupPresentation,
    lam: Vector,
    cfg: FacetOrderConfig,
    gb: GroebnerBasis,
    path_cap: int = DEFAULT_PATH_CAP,
) -> CancellationResult:
    zero = tuple([0] * pres.dimension)
    ivl = pres.interval(zero, lam)
    fm = build_face_matching(ivl, cfg, gb)
    if gb.degree <= 2:
        return cancel_quadratic(fm, gb, path_cap)
    return cancel_degree_d(fm, gb, pres, path_cap)


# -- fiber-local survivors (fast path for wide windows) -------------------------


def fiber_survivor_words(
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    content,
    commutes=None,
) -> list[tuple[int, ...]]:
    """Bottom-up label sequences of surviving cells of one content class.

    Uses only label arithmetic (no face complex): the matching is the pivot
    rule, and uniqueness of each reversed path is by the 321 theorem.  The
    face-level engine must agree on bounded intervals; tests enforce that.
    """
    content = tuple(sorted(content))
    if commutes is None:
        commutes = commutation_table(gb)
    cells: dict[tuple[int, ...], LabelCell] = {}
    for word in _distinct_permutations(content):
        c = label_cell(gb, cfg, word)
        if c is not None:
            cells[word] = c
    matched: set[tuple[int, ...]] = set()
    for word in sorted(cells):
        if word in matched:
            continue
        target = expanding_interval(non_essential_sets(gb, cfg, word, commutes))
        if target is None:
            continue
        pivot = pivot_member(target, cfg)
        other = pivot.partner_labels
        if other not in cells or other in matched:
            continue
        back = expanding_interval(non_essential_sets(gb, cfg, other, commutes))
        if back is None or pivot_member(back, cfg).partner_labels != word:
            continue
        if abs(cells[word].dimension - cells[other].dimension) != 1:
            raise InternalInvariantError("fiber pivot pair dimensions differ by != 1")
        status = check_321_uniqueness(cfg, word, other)
        if status != "unique-by-theorem":
            continue
        matched.add(word)
        matched.add(other)
    out = []
    for word, cell in cells.items():
        if word in matched:
            continue
        if gb.degree <= 2 and _has_interior_window(gb, cfg, word):
            raise UnmatchedUnsaturatedCell(
                f"fiber-local cancellation stranded {word}"
            )
        out.append(word)
    return sorted(out)


def face_level_survivor_words(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    content,
    path_cap: int = DEFAULT_PATH_CAP,
) -> list[tuple[int, ...]]:
    """Survivors of one content via the full face-level engine."""
    lam = tuple([0] * pres.dimension)
    for i in content:
        lam = tuple(a + b for a, b in zip(lam, pres.generators[i]))
    res = cancel_interval(pres, lam, cfg, gb, path_cap)
    want = tuple(sorted(content))
    return sorted(
        c.facet.labels
        for c in res.survivors
        if not c.is_base and tuple(sorted(c.facet.labels)) == want
    )


def survivor_words_by_content(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    max_degree: int,
) -> dict[tuple[int, ...], list[tuple[int, ...]]]:
    """Fiber-local survivors for every content in the degree window.

    Contents are multisets of generator indices of size <= max_degree;
    every such multiset is a factorization of its own multidegree.  When
    the label-level matching rules strand a cell (interacting relations),
    that content falls back to the face-level engine, whose greedy pass
    certifies pairs by explicit path enumeration.
    """
    commutes = commutation_table(gb)
    out: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_degree):
        nxt = []
        for c in frontier:
            lo = c[-1] if c else 0
            for i in range(lo, pres.n):
                nxt.append(c + (i,))
        for c in nxt:
            try:
                out[c] = fiber_survivor_words(gb, cfg, c, commutes)
            except UnmatchedUnsaturatedCell:
                out[c] = face_level_survivor_words(pres, gb, cfg, c)
        frontier = nxt
    return out
