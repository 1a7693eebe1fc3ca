"""Minimal-resolution witness: boundary maps between surviving cells.

Cells of the ambient chain complex are finite chains in the semigroup
(tuples of multidegrees, ascending), graded by their top element.  The
per-interval matchings glue into one grade-preserving acyclic matching; the
boundary of a survivor is computed by flowing its simplicial boundary
through the matching.  Minimality (no equal-grade incidences) and
boundary-squared-zero are asserted, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cancellation import CancellationResult, cancel_interval
from .chains import FacetOrderConfig
from .errors import InternalInvariantError
from .groebner import GroebnerBasis
from .morse import FaceMatching
from .semigroup import SemigroupPresentation, Vector

Chain = tuple[Vector, ...]


@dataclass
class ResolutionData:
    """Surviving cells of a degree window plus their signed incidences.

    differentials[i] maps (cell of homological index i, cell of index i-1)
    to a nonzero integer coefficient; the monomial factor is recovered from
    the grade difference.  unit_incidences lists entries between cells of
    equal grade: provably empty for quadratic bases, possible beyond.
    """

    critical: dict[Chain, Vector]
    differentials: dict[int, dict[tuple[Chain, Chain], int]]
    tor: dict[tuple[int, Vector], int]
    unit_incidences: list[tuple[Chain, Chain, int]]

    def tor_rank(self, i: int, lam: Vector) -> int:
        return self.tor.get((i, lam), 0)

    @property
    def minimal(self) -> bool:
        return not self.unit_incidences


def _grade(chain: Chain, zero: Vector) -> Vector:
    return chain[-1] if chain else zero


def morse_boundary(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    window: dict[Vector, int],
    results: dict[Vector, CancellationResult] | None = None,
    path_cap: int = 10_000,
    expect_minimal: bool | None = None,
) -> ResolutionData:
    """Assemble the window's cellular resolution from cancelled intervals.

    results may carry precomputed per-interval cancellations; missing
    entries are computed here.  Unit incidences are a hard error exactly
    when minimality is promised (quadratic bases) and a recorded finding
    otherwise.
    """
    if expect_minimal is None:
        expect_minimal = gb.degree <= 2
    zero = tuple([0] * pres.dimension)
    partner: dict[Chain, Chain] = {}
    critical: dict[Chain, Vector] = {(): zero}
    results = dict(results or {})

    for lam in sorted(window):
        if lam not in results:
            results[lam] = cancel_interval(pres, lam, cfg, gb, path_cap)
        res = results[lam]
        fm: FaceMatching = res.matching
        for mask, other in fm.partner.items():
            chain = fm.face_elements(mask) + (lam,)
            partner[chain] = fm.face_elements(other) + (lam,)
        for cell in res.survivors:
            if cell.is_base:
                # reduced convention: the base vertex absorbs the 0-cell {lam}
                chain = (lam,)
                up = cell.elements + (lam,)
                partner[chain] = up
                partner[up] = chain
                continue
            critical[cell.elements + (lam,)] = lam

    flows: dict[Chain, dict[Chain, int]] = {}

    def boundary(chain: Chain):
        for j in range(len(chain)):
            yield (1 if j % 2 == 0 else -1), chain[:j] + chain[j + 1 :]

    def flow(chain: Chain) -> dict[Chain, int]:
        cached = flows.get(chain)
        if cached is not None:
            return cached
        stack = [chain]
        while stack:
            cur = stack[-1]
            if cur in flows:
                stack.pop()
                continue
            if cur in critical:
                flows[cur] = {cur: 1}
                stack.pop()
                continue
            up = partner.get(cur)
            if up is None:
                raise InternalInvariantError(f"chain {cur} neither matched nor critical")
            if len(up) < len(cur):
                flows[cur] = {}
                stack.pop()
                continue
            sign_cur = None
            pending = []
            ready = True
            for sgn, face in boundary(up):
                if face == cur:
                    sign_cur = sgn
                    continue
                if face not in flows:
                    pending.append(face)
                    ready = False
                else:
                    pending.append(face)
            if not ready:
                for face in pending:
                    if face not in flows:
                        stack.append(face)
                continue
            acc: dict[Chain, int] = {}
            for sgn, face in boundary(up):
                if face == cur:
                    continue
                for tgt, coeff in flows[face].items():
                    acc[tgt] = acc.get(tgt, 0) + (-sign_cur) * sgn * coeff
            flows[cur] = {k: v for k, v in acc.items() if v}
            stack.pop()
        return flows[chain]

    differentials: dict[int, dict[tuple[Chain, Chain], int]] = {}
    for chain in sorted(critical, key=lambda c: (len(c), c)):
        if not chain:
            continue
        i = len(chain)  # homological index: Tor_i basis element
        row: dict[Chain, int] = {}
        for sgn, face in boundary(chain):
            for tgt, coeff in flow(face).items():
                row[tgt] = row.get(tgt, 0) + sgn * coeff
        for tgt, coeff in row.items():
            if coeff:
                differentials.setdefault(i, {})[(chain, tgt)] = coeff

    units = _unit_incidences(differentials, zero)
    if units and expect_minimal:
        raise InternalInvariantError(
            f"unit incidence between equal multidegrees: {units[0][0]} -> {units[0][1]}"
        )
    _assert_square_zero(differentials)
    tor: dict[tuple[int, Vector], int] = {}
    for chain, grade in critical.items():
        key = (len(chain), grade)
        tor[key] = tor.get(key, 0) + 1
    return ResolutionData(critical, differentials, tor, units)


def _unit_incidences(differentials, zero) -> list[tuple[Chain, Chain, int]]:
    out = []
    for rows in differentials.values():
        for (hi, lo), coeff in rows.items():
            if coeff and _grade(hi, zero) == _grade(lo, zero):
                out.append((hi, lo, coeff))
    return sorted(out)


def _assert_square_zero(differentials) -> None:
    for i, rows in differentials.items():
        lower = differentials.get(i - 1, {})
        acc: dict[tuple, int] = {}
        for (hi, mid), c1 in rows.items():
            for (mid2, lo), c2 in lower.items():
                if mid2 == mid:
                    key = (hi, lo)
                    acc[key] = acc.get(key, 0) + c1 * c2
        bad = {k: v for k, v in acc.items() if v}
        if bad:
            raise InternalInvariantError(f"boundary squared is nonzero: {bad}")
