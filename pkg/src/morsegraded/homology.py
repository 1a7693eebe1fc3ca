"""Independent ground truth: reduced simplicial homology in exact arithmetic.

The oracle builds order complexes straight from interval data and computes
boundary-matrix ranks by fraction-free elimination over Q or modular
elimination over F_p; Smith normal form (torsion) only on demand.  Nothing
here touches the Morse pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .semigroup import IntervalData, SemigroupPresentation, Vector


@dataclass(frozen=True)
class OrderComplex:
    """All chains of the open interval, grouped by dimension.

    Faces are tuples of vertex indices, increasing along the chain; the
    empty face is implicit (reduced convention).
    """

    vertices: tuple[Vector, ...]
    faces: tuple[tuple[tuple[int, ...], ...], ...]  # faces[d] lists d-faces

    @property
    def dim(self) -> int:
        return len(self.faces) - 1

    def face_count(self, d: int) -> int:
        if d == -1:
            return 1
        if 0 <= d < len(self.faces):
            return len(self.faces[d])
        return 0

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * len(fs) for d, fs in enumerate(self.faces))


def order_complex(pres: SemigroupPresentation, ivl: IntervalData) -> OrderComplex:
    vertices = tuple(e for e in ivl.elements if e not in (ivl.bottom, ivl.top))
    above = []
    for i, v in enumerate(vertices):
        above.append([j for j in range(i + 1, len(vertices)) if pres.leq(v, vertices[j])])
    by_dim: list[list[tuple[int, ...]]] = []
    chain: list[int] = []

    def extend(last: int):
        d = len(chain) - 1
        while len(by_dim) <= d:
            by_dim.append([])
        by_dim[d].append(tuple(chain))
        for j in above[last]:
            chain.append(j)
            extend(j)
            chain.pop()

    for i in range(len(vertices)):
        chain.append(i)
        extend(i)
        chain.pop()
    return OrderComplex(vertices, tuple(tuple(fs) for fs in by_dim))


def boundary_matrix(cx: OrderComplex, d: int) -> tuple[int, int, list[dict[int, int]]]:
    """Sparse columns of the boundary map C_d -> C_{d-1}.

    Returns (rows, cols, columns); row index -1 never appears because the
    d = 0 matrix is the augmentation (single row of ones).
    """
    if d < 0 or d > cx.dim:
        return (cx.face_count(d - 1), 0, [])
    if d == 0:
        return (1, len(cx.faces[0]), [{0: 1} for _ in cx.faces[0]])
    index = {f: i for i, f in enumerate(cx.faces[d - 1])}
    cols = []
    for f in cx.faces[d]:
        col: dict[int, int] = {}
        for j in range(len(f)):
            sub = f[:j] + f[j + 1 :]
            col[index[sub]] = 1 if j % 2 == 0 else -1
        cols.append(col)
    return (len(cx.faces[d - 1]), len(cx.faces[d]), cols)


def _rank_rational(columns: list[dict[int, int]]) -> int:
    """Fraction-free sparse elimination; rank over Q equals rank over Z."""
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in sorted(columns, key=len):
        col = dict(col)
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                pivots[lead] = {k: v // g for k, v in col.items()}
                rank += 1
                break
            a, b = piv[lead], col[lead]
            merged: dict[int, int] = {}
            for k, v in col.items():
                merged[k] = a * v
            for k, v in piv.items():
                merged[k] = merged.get(k, 0) - b * v
            col = {k: v for k, v in merged.items() if v}
            if col:
                g = 0
                for v in col.values():
                    g = gcd(g, v)
                col = {k: v // g for k, v in col.items()}
    return rank


def _rank_mod_2(columns: list[dict[int, int]]) -> int:
    """Bitset elimination: each column is one integer, rows are bit indexes."""
    vecs = []
    for col in columns:
        v = 0
        for k, val in col.items():
            if val % 2:
                v |= 1 << k
        if v:
            vecs.append(v)
    vecs.sort(key=lambda v: v.bit_count() if hasattr(v, "bit_count") else bin(v).count("1"))
    pivots: dict[int, int] = {}
    rank = 0
    for v in vecs:
        while v:
            lead = v.bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                pivots[lead] = v
                rank += 1
                break
            v ^= piv
    return rank


def _rank_mod_3(columns: list[dict[int, int]]) -> int:
    """Bitsliced GF(3) elimination: a column is a (ones, twos) bit pair."""

    def add(a, b):
        a1, a2 = a
        b1, b2 = b
        s1 = (a1 & ~b1 & ~b2) | (~a1 & ~a2 & b1) | (a2 & b2)
        s2 = (a2 & ~b1 & ~b2) | (~a1 & ~a2 & b2) | (a1 & b1)
        mask = a1 | a2 | b1 | b2
        return (s1 & mask, s2 & mask)

    vecs = []
    for col in columns:
        lo = hi = 0
        for k, val in col.items():
            r = val % 3
            if r == 1:
                lo |= 1 << k
            elif r == 2:
                hi |= 1 << k
        if lo | hi:
            vecs.append((lo, hi))
    pivots: dict[int, tuple[int, int]] = {}
    rank = 0
    for v in vecs:
        while v[0] | v[1]:
            lead = (v[0] | v[1]).bit_length() - 1
            piv = pivots.get(lead)
            if piv is None:
                if v[1] >> lead & 1:
                    v = (v[1], v[0])  # normalize lead coefficient to 1
                pivots[lead] = v
                rank += 1
                break
            # subtract coeff * pivot: -1 == +2 swaps the trit planes
            if v[0] >> lead & 1:
                v = add(v, (piv[1], piv[0]))
            else:
                v = add(v, piv)
    return rank


def _rank_mod_p(columns: list[dict[int, int]], p: int) -> int:
    if p == 2:
        return _rank_mod_2(columns)
    if p == 3:
        return _rank_mod_3(columns)
    cols = [c for c in ({k: v % p for k, v in col.items() if v % p} for col in columns) if c]
    cols.sort(key=len)
    pivots: dict[int, dict[int, int]] = {}
    rank = 0
    for col in cols:
        while col:
            lead = min(col)
            piv = pivots.get(lead)
            if piv is None:
                inv = pow(col[lead], -1, p)
                pivots[lead] = {k: v * inv % p for k, v in col.items()}
                rank += 1
                break
            b = col[lead]
            col = {
                k: v
                for k in set(col) | set(piv)
                if (v := (col.get(k, 0) - b * piv.get(k, 0)) % p)
            }
    return rank


def matrix_rank(columns: list[dict[int, int]], characteristic: int) -> int:
    if characteristic == 0:
        return _rank_rational(columns)
    return _rank_mod_p(columns, characteristic)


def reduced_betti(cx: OrderComplex, characteristic: int = 0) -> tuple[int, ...]:
    """Reduced Betti numbers b~_{-1} .. b~_dim over the requested field."""
    top = cx.dim
    if top < 0:
        return (1,)
    ranks = []
    for d in range(0, top + 2):
        _, _, cols = boundary_matrix(cx, d)
        ranks.append(matrix_rank(cols, characteristic))
    out = [1 - ranks[0]]
    for d in range(0, top + 1):
        nxt = ranks[d + 1] if d + 1 <= top else 0
        out.append(cx.face_count(d) - ranks[d] - nxt)
    return tuple(out)


def smith_normal_form(rows: list[list[int]]) -> list[int]:
    """Diagonal of the Smith normal form of an integer matrix."""
    m = [row[:] for row in rows]
    if not m or not m[0]:
        return []
    nr, nc = len(m), len(m[0])
    diag = []
    r = c = 0
    while r < nr and c < nc:
        pr, pc, best = -1, -1, 0
        for i in range(r, nr):
            for j in range(c, nc):
                v = abs(m[i][j])
                if v and (best == 0 or v < best):
                    pr, pc, best = i, j, v
        if best == 0:
            break
        m[r], m[pr] = m[pr], m[r]
        for row in m:
            row[c], row[pc] = row[pc], row[c]
        while True:
            done = True
            for i in range(r + 1, nr):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    if m[i][c]:
                        m[r], m[i] = m[i], m[r]
                        done = False
            for j in range(c + 1, nc):
                if m[r][j]:
                    q = m[r][j] // m[r][c]
                    for row in m:
                        row[j] -= q * row[c]
                    if m[r][j]:
                        for row in m:
                            row[c], row[j] = row[j], row[c]
                        done = False
            if done:
                break
        diag.append(abs(m[r][c]))
        r += 1
        c += 1
    # enforce divisibility d1 | d2 | ...
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g if g else 0
    return diag


def integral_homology(cx: OrderComplex) -> list[tuple[int, list[int]]]:
    """(rank, torsion coefficients) of reduced homology per dimension >= -1."""
    out = []
    top = cx.dim
    snf_cache: dict[int, list[int]] = {}

    def snf_of(d: int) -> list[int]:
        if d not in snf_cache:
            nrows, ncols, cols = boundary_matrix(cx, d)
            dense = [[0] * ncols for _ in range(nrows)]
            for j, col in enumerate(cols):
                for i, v in col.items():
                    dense[i][j] = v
            snf_cache[d] = smith_normal_form(dense)
        return snf_cache[d]

    for d in range(-1, top + 1):
        rank_d = len([x for x in snf_of(d)]) if d >= 0 else 0
        rank_next = len(snf_of(d + 1)) if d + 1 <= top else 0
        free = cx.face_count(d) - rank_d - rank_next
        torsion = [x for x in snf_of(d + 1)] if d + 1 <= top else []
        out.append((free, [t for t in torsion if t > 1]))
    return out


@dataclass
class BettiTable:
    """Tor ranks per (homological index, multidegree)."""

    characteristic: int
    ranks: dict[tuple[int, Vector], int]
    interval_betti: dict[Vector, tuple[int, ...]]

    def total(self, i: int) -> int:
        return sum(v for (k, _), v in self.ranks.items() if k == i)

    def rank(self, i: int, lam: Vector) -> int:
        return self.ranks.get((i, lam), 0)

    def to_rows(self):
        rows = []
        for (i, lam), v in sorted(self.ranks.items(), key=lambda kv: (kv[0][1], kv[0][0])):
            rows.append((list(lam), i, v))
        return rows


def tor_ranks(
    pres: SemigroupPresentation,
    window: dict[Vector, int],
    characteristic: int = 0,
    complexes: dict[Vector, OrderComplex] | None = None,
) -> BettiTable:
    """Tor_i ranks at every multidegree of the window via interval homology.

    The index correspondence Tor_i <-> b~_{i-2} is validated by tests on
    generator and relation multidegrees before anything else trusts it.
    """
    zero = tuple([0] * pres.dimension)
    ranks: dict[tuple[int, Vector], int] = {(0, zero): 1}
    interval_betti: dict[Vector, tuple[int, ...]] = {}
    for lam in sorted(window):
        cx = complexes[lam] if complexes is not None else order_complex(pres, pres.interval(zero, lam))
        betti = reduced_betti(cx, characteristic)
        interval_betti[lam] = betti
        for d, b in enumerate(betti, start=-1):
            if b:
                ranks[(d + 2, lam)] = b
    return BettiTable(characteristic, ranks, interval_betti)


def below_vanishing_bound(i: int, degree: int, d: int) -> bool:
    """i < -1 + (degree - 1)/(d - 1), kept in integer arithmetic."""
    return (i + 1) * (d - 1) < degree - 1


def verify_vanishing(
    pres: SemigroupPresentation,
    gb_degree: int,
    window: dict[Vector, int],
    characteristics=(0, 2, 3),
    complexes: dict[Vector, OrderComplex] | None = None,
) -> dict:
    """Check reduced homology vanishes below the degree bound, every field.

    Violations land in the report; an empty violation list is the claim.
    Characteristic-zero entries are certified through a prime field where
    possible: universal coefficients give b_Q <= b_{F_p}, so prime-field
    vanishing already settles the rational case.
    """
    d = max(2, gb_degree)
    zero = tuple([0] * pres.dimension)
    primes = [c for c in characteristics if c != 0]
    want_rational = 0 in characteristics
    checks = 0
    certified = 0
    violations = []
    for lam in sorted(window):
        degree = window[lam]
        cx = complexes[lam] if complexes is not None else order_complex(pres, pres.interval(zero, lam))
        prime_ok = bool(primes)
        for char in primes:
            betti = reduced_betti(cx, char)
            for i, b in enumerate(betti, start=-1):
                if below_vanishing_bound(i, degree, d):
                    checks += 1
                    if b != 0:
                        prime_ok = False
                        violations.append(
                            {"multidegree": list(lam), "i": i, "characteristic": char, "betti": b}
                        )
        if want_rational:
            if prime_ok:
                for i in range(-1, cx.dim + 1):
                    if below_vanishing_bound(i, degree, d):
                        checks += 1
                        certified += 1
            else:
                betti = reduced_betti(cx, 0)
                for i, b in enumerate(betti, start=-1):
                    if below_vanishing_bound(i, degree, d):
                        checks += 1
                        if b != 0:
                            violations.append(
                                {"multidegree": list(lam), "i": i, "characteristic": 0, "betti": b}
                            )
    return {
        "groebner_degree": d,
        "multidegrees": len(window),
        "characteristics": list(characteristics),
        "checks": checks,
        "rational_certified_via_prime": certified,
        "violations": violations,
        "ok": not violations,
    }


def standard_grading_functional(pres: SemigroupPresentation) -> tuple[Fraction, ...] | None:
    """Rational w with w . generator = 1 for all generators, if one exists."""
    rows = [[Fraction(c) for c in g] + [Fraction(1)] for g in pres.generators]
    cols = pres.dimension
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rows[i][cols] != 0:
            return None
    w = [Fraction(0)] * cols
    for k, c in enumerate(pivots):
        w[c] = rows[k][cols]
    if any(sum(wc * gc for wc, gc in zip(w, g)) != 1 for g in pres.generators):
        return None
    return tuple(w)
