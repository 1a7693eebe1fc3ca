"""Finite-state recognition of surviving-cell label sequences.

Words are label sequences read from the top of the chain down.  States
remember previously seen pair-leads and letters in order of most recent
occurrence; that bounded history is enough to decide whether a new letter
lands in some earlier window's non-essential set.  The length generating
series of the language comes out of the transfer matrix as a ratio of
integer polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .chains import FacetOrderConfig
from .errors import CollectionEnumerationOverflow, MorsegradedError
from .groebner import GroebnerBasis, leading_ideal_member
from .orders import content_monomial

INIT = ("init",)


def _pair_in_ideal(gb: GroebnerBasis, a: int, b: int) -> bool:
    m = [0] * gb.order.n
    m[a] += 1
    m[b] += 1
    return leading_ideal_member(gb, tuple(m))


@dataclass
class MorseAutomaton:
    """Deterministic automaton over generator-index letters."""

    n_labels: int
    states: list
    initial: int
    finals: set[int]
    transitions: dict[tuple[int, int], int]

    def accepts(self, word) -> bool:
        at = self.initial
        for letter in word:
            at = self.transitions.get((at, letter))
            if at is None:
                return False
        return at in self.finals

    def words_up_to(self, max_len: int) -> dict[int, list[tuple[int, ...]]]:
        """All accepted words by length, enumerated by walking the graph."""
        out: dict[int, list[tuple[int, ...]]] = {k: [] for k in range(1, max_len + 1)}
        stack = [(self.initial, ())]
        while stack:
            at, word = stack.pop()
            if len(word) == max_len:
                continue
            for letter in range(self.n_labels):
                nxt = self.transitions.get((at, letter))
                if nxt is None:
                    continue
                w = word + (letter,)
                if nxt in self.finals:
                    out[len(w)].append(w)
                stack.append((nxt, w))
        for k in out:
            out[k].sort()
        return out

    def count_words(self, max_len: int) -> list[int]:
        """Word counts per length 0..max_len by dynamic programming."""
        vec = {self.initial: 1}
        counts = [1 if self.initial in self.finals else 0]
        for _ in range(max_len):
            nxt: dict[int, int] = {}
            for at, mult in vec.items():
                for letter in range(self.n_labels):
                    to = self.transitions.get((at, letter))
                    if to is not None:
                        nxt[to] = nxt.get(to, 0) + mult
            vec = nxt
            counts.append(sum(m for s, m in vec.items() if s in self.finals))
        return counts

    def to_json(self) -> dict:
        return {
            "alphabet": self.n_labels,
            "initial": self.initial,
            "finals": sorted(self.finals),
            "n_states": len(self.states),
            "transitions": [
                [s, letter, t] for (s, letter), t in sorted(self.transitions.items())
            ],
        }


# -- quadratic construction -----------------------------------------------------


class _QuadraticRules:
    """Transition logic for a fixed degree-2 basis."""

    def __init__(self, gb: GroebnerBasis, cfg: FacetOrderConfig):
        self.gb = gb
        self.cfg = cfg
        self.rank = cfg.order.label_rank
        self.n = cfg.order.n

    def pair_kind(self, lam: int, mu: int) -> str | None:
        # mu was read first (sits above lam in the chain)
        if self.rank[lam] > self.rank[mu]:
            return "descent"
        if _pair_in_ideal(self.gb, lam, mu):
            return "lead"
        return None

    def _labels_after(self, items, pos) -> list[int]:
        return [it[1] for it in items[pos + 1 :] if it[0] == "L"]

    def in_nes(self, items, window_pos: int, lam: int) -> bool:
        """Is lam in the non-essential set of the window at window_pos?"""
        a1, a2 = items[window_pos][1]
        if not (self.rank[a1] < self.rank[lam] < self.rank[a2]):
            return False
        if _pair_in_ideal(self.gb, lam, a1) or _pair_in_ideal(self.gb, lam, a2):
            return False
        for nu in self._labels_after(items, window_pos):
            if _pair_in_ideal(self.gb, lam, nu):
                return False  # blocked by a non-commuting label
            if self.rank[nu] >= self.rank[lam]:
                return False  # cannot sort past a larger label
        return True

    def nes_violation(self, items, lam: int) -> bool:
        return any(
            it[0] == "I" and self.in_nes(items, pos, lam)
            for pos, it in enumerate(items)
        )

    def letter_can_drop_into(self, items, lam: int, mu: int) -> bool:
        """Condition blocking a pair-lead transition: some earlier letter could
        drop into the new window I(lam, mu)."""
        for q, it in enumerate(items):
            if it[0] != "L":
                continue
            mu_p = it[1]
            if not (self.rank[lam] < self.rank[mu_p] < self.rank[mu]):
                continue
            later = self._labels_after(items, q)
            if any(self.rank[x] <= self.rank[mu_p] for x in later):
                continue
            if any(_pair_in_ideal(self.gb, mu_p, x) for x in later):
                continue
            pruned = items[:q] + items[q + 1 :]
            if any(
                jt[0] == "I" and self.in_nes(pruned, r, mu)
                for r, jt in enumerate(pruned)
            ):
                return True
        return False

    def append(self, items, new_items):
        out = [it for it in items if it not in new_items]
        out.extend(new_items)
        return tuple(out)

    def step(self, state, letter: int):
        """Next state or None; states are hashable description tuples."""
        if state == INIT:
            return ("F", (("L", letter),), letter)
        kind_tag = state[0]
        if kind_tag == "F":
            _, items, last = state
            kind = self.pair_kind(letter, last)
            if kind is None:
                return None
            if kind == "lead":
                if self.letter_can_drop_into(items, letter, last):
                    return None
                new = self.append(items, (("L", letter), ("I", (letter, last))))
                if self.nes_violation(items, letter):
                    return ("U", new, letter, last)
                return ("F", new, letter)
            if self.nes_violation(items, letter):
                return ("U", self.append(items, (("L", letter),)), letter, last)
            return ("F", self.append(items, (("L", letter),)), letter)
        # non-final: only rescue letters forming a window under the pending label
        _, items, lam, mu = state
        if self.rank[letter] > self.rank[lam] or not _pair_in_ideal(self.gb, letter, lam):
            return None
        rescue = (
            self.rank[letter] < self.rank[mu]
            and not _pair_in_ideal(self.gb, letter, mu)
            and not self._shift_stays_critical(items, lam, letter)
        )
        if not rescue:
            pruned = tuple(it for it in items if it != ("L", lam))
            rescue = self.nes_violation(pruned, letter)
        if not rescue:
            return None
        new = self.append(items, (("L", letter), ("I", (letter, lam))))
        return ("F", new, letter)

    def _shift_stays_critical(self, items, lam: int, lam2: int) -> bool:
        """Would the cell stay critical after lam climbs into its window?

        The abandoned gap between lam2 and the letters above it can only be
        covered by a syzygy window running from lam2 up to lam's landing
        spot; the window exists exactly when that run is weakly increasing
        and carries no pair-lead other than (lam2, lam) itself.
        """
        before = tuple(it for it in items if it != ("L", lam))
        target = None
        for pos in range(len(before) - 1, -1, -1):
            if before[pos][0] == "I" and self.in_nes(before, pos, lam):
                target = pos
                break
        if target is None:
            return False
        a1 = before[target][1][0]
        segment = [it[1] for it in before[target + 1 :] if it[0] == "L"]
        run = [lam2] + list(reversed(segment)) + [a1, lam]
        if any(self.rank[a] > self.rank[b] for a, b in zip(run, run[1:])):
            return False
        last = len(run) - 1
        for i in range(len(run)):
            for j in range(i + 1, len(run)):
                if (i, j) != (0, last) and _pair_in_ideal(self.gb, run[i], run[j]):
                    return False
        return True


def _explore(rules, n_labels: int, state_budget: int) -> MorseAutomaton:
    index = {INIT: 0}
    states = [INIT]
    transitions: dict[tuple[int, int], int] = {}
    finals: set[int] = set()
    stack = [INIT]
    while stack:
        st = stack.pop()
        i = index[st]
        if st[0] == "F":
            finals.add(i)
        for letter in range(n_labels):
            nxt = rules.step(st, letter)
            if nxt is None:
                continue
            j = index.get(nxt)
            if j is None:
                j = len(states)
                if j >= state_budget:
                    raise CollectionEnumerationOverflow(
                        f"automaton construction exceeded {state_budget} states"
                    )
                index[nxt] = j
                states.append(nxt)
                stack.append(nxt)
            transitions[(i, letter)] = j
    return MorseAutomaton(n_labels, states, 0, finals, transitions)


def build_quadratic_automaton(
    gb: GroebnerBasis, cfg: FacetOrderConfig, state_budget: int = 1_000_000
) -> MorseAutomaton:
    if gb.degree > 2:
        raise MorsegradedError("quadratic automaton needs a basis of degree <= 2")
    return _explore(_QuadraticRules(gb, cfg), cfg.order.n, state_budget)


# -- degree-d construction -------------------------------------------------------


class _DegreeRules(_QuadraticRules):
    """General-degree transitions: pair logic plus collection completions.

    A collection transition consumes the remaining labels of a high-degree
    leading term in descending order through intermediate states, so words
    stay plain letter strings.
    """

    def __init__(self, gb: GroebnerBasis, cfg: FacetOrderConfig):
        super().__init__(gb, cfg)
        self.high_leads: list[tuple[int, ...]] = []
        for b in gb.elements:
            labels = []
            for i, e in enumerate(b.plus):
                labels.extend([i] * e)
            if len(labels) > 2:
                labels.sort(key=lambda i: self.rank[i])
                self.high_leads.append(tuple(labels))

    def in_nes_window(self, items, pos, window, lam: int) -> bool:
        a1, a2 = window[0], window[-1]
        if not (self.rank[a1] < self.rank[lam] < self.rank[a2]):
            return False
        n = self.n
        without_last = content_monomial(window[:-1] + (lam,), n)
        without_first = content_monomial(window[1:] + (lam,), n)
        if leading_ideal_member(self.gb, without_last) or leading_ideal_member(
            self.gb, without_first
        ):
            return False
        for nu in self._labels_after(items, pos):
            if _pair_in_ideal(self.gb, lam, nu) or self.rank[nu] >= self.rank[lam]:
                return False
        return True

    def in_nes(self, items, window_pos: int, lam: int) -> bool:
        window = items[window_pos][1]
        if len(window) == 2:
            return super().in_nes(items, window_pos, lam)
        return self.in_nes_window(items, window_pos, window, lam)

    def collection_starts(self, items, last: int):
        """Leads of degree > 2 completable below the last-read letter."""
        out = []
        for lead in self.high_leads:
            if lead[-1] != last:
                continue
            rest = tuple(reversed(lead[:-1]))  # read descending, top-down
            if self.letter_can_drop_into(items, lead[0], last):
                continue
            out.append((lead, rest))
        return out

    def step(self, state, letter: int):
        if state and state[0] == "C":
            _, base, lead, consumed = state
            rest = tuple(reversed(lead[:-1]))
            want = rest[consumed]
            if letter != want:
                return None
            consumed += 1
            if consumed < len(rest):
                return ("C", base, lead, consumed)
            _, items, last = base
            new = self.append(items, (("L", letter), ("I", lead)))
            return ("F", new, letter)
        nxt = super().step(state, letter)
        if nxt is not None or state == INIT or state[0] != "F":
            return nxt
        _, items, last = state
        candidates = []
        for lead, rest in self.collection_starts(items, last):
            if rest[0] == letter:
                candidates.append(lead)
        if not candidates:
            return None
        if len(candidates) > 1:
            raise CollectionEnumerationOverflow(
                "ambiguous overlapping collection transitions; basis not supported"
            )
        lead = candidates[0]
        rest = tuple(reversed(lead[:-1]))
        if len(rest) == 1:
            _, items, last = state
            new = self.append(items, (("L", letter), ("I", lead)))
            return ("F", new, letter)
        return ("C", state, lead, 1)


def build_degree_d_automaton(
    gb: GroebnerBasis, cfg: FacetOrderConfig, state_budget: int = 1_000_000
) -> MorseAutomaton:
    return _explore(_DegreeRules(gb, cfg), cfg.order.n, state_budget)


# -- rational generating series ---------------------------------------------------


@dataclass(frozen=True)
class RationalSeries:
    """numerator / denominator as integer coefficient lists, low degree first."""

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]

    def coefficients(self, count: int) -> list[int]:
        den = list(self.denominator)
        num = list(self.numerator)
        if not den or den[0] == 0:
            raise MorsegradedError("denominator has zero constant term")
        out = []
        for k in range(count):
            acc = num[k] if k < len(num) else 0
            for j in range(1, min(k, len(den) - 1) + 1):
                acc -= den[j] * out[k - j]
            if acc % den[0]:
                raise MorsegradedError("series expansion is not integral")
            out.append(acc // den[0])
        return out

    def render(self) -> str:
        def poly(cs):
            terms = []
            for k, c in enumerate(cs):
                if c == 0:
                    continue
                if k == 0:
                    terms.append(str(c))
                elif k == 1:
                    terms.append(f"{c}*t")
                else:
                    terms.append(f"{c}*t^{k}")
            return " + ".join(terms).replace("+ -", "- ") if terms else "0"

        return f"({poly(self.numerator)}) / ({poly(self.denominator)})"


def _trim(auto: MorseAutomaton):
    """Restrict to states both reachable and co-reachable."""
    fwd: dict[int, list[tuple[int, int]]] = {}
    back: dict[int, list[int]] = {}
    for (s, letter), t in auto.transitions.items():
        fwd.setdefault(s, []).append((letter, t))
        back.setdefault(t, []).append(s)
    reach = {auto.initial}
    stack = [auto.initial]
    while stack:
        s = stack.pop()
        for _, t in fwd.get(s, []):
            if t not in reach:
                reach.add(t)
                stack.append(t)
    core = set(auto.finals) & reach
    stack = list(core)
    while stack:
        t = stack.pop()
        for s in back.get(t, []):
            if s in reach and s not in core:
                core.add(s)
                stack.append(s)
    if auto.initial not in core:
        return [], {}, set()
    order = sorted(core)
    idx = {s: i for i, s in enumerate(order)}
    edges = {
        (idx[s], letter): idx[t]
        for (s, letter), t in auto.transitions.items()
        if s in core and t in core
    }
    finals = {idx[s] for s in auto.finals if s in core}
    return order, edges, finals


def _minimize(n_states, n_labels, edges, finals, initial):
    """Partition refinement with an implicit dead state."""
    dead = n_states
    classes = [0] * (n_states + 1)
    for s in finals:
        classes[s] = 1
    while True:
        signatures = {}
        new_classes = [0] * (n_states + 1)
        for s in range(n_states + 1):
            if s == dead:
                sig = (classes[dead], tuple([classes[dead]] * n_labels))
            else:
                sig = (
                    classes[s],
                    tuple(classes[edges.get((s, a), dead)] for a in range(n_labels)),
                )
            if sig not in signatures:
                signatures[sig] = len(signatures)
            new_classes[s] = signatures[sig]
        if new_classes == classes:
            break
        classes = new_classes
    kept = sorted({classes[s] for s in range(n_states)} - {classes[dead]})
    remap = {c: i for i, c in enumerate(kept)}
    m_edges: dict[tuple[int, int], int] = {}
    for (s, a), t in edges.items():
        cs, ct = classes[s], classes[t]
        if cs in remap and ct in remap:
            m_edges[(remap[cs], a)] = remap[ct]
    m_finals = {remap[classes[s]] for s in finals if classes[s] in remap}
    return len(kept), m_edges, m_finals, remap.get(classes[initial])


def _int_det(matrix: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant."""
    m = [row[:] for row in matrix]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _interpolate_integer_poly(points: list[tuple[int, int]]) -> list[int]:
    n = len(points)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(points):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, (xj, _) in enumerate(points):
            if i == j:
                continue
            denom *= xi - xj
            basis = [Fraction(0)] + basis  # multiply by t
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
        scale = Fraction(yi) / denom
        for k, c in enumerate(basis):
            coeffs[k] += c * scale
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise MorsegradedError("interpolated polynomial is not integral")
        out.append(int(c))
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def rational_series(auto: MorseAutomaton, verify_len: int = 8) -> RationalSeries:
    """Transfer-matrix generating series, verified against direct counting."""
    order, edges, finals = _trim(auto)
    direct = auto.count_words(verify_len)
    if not order:
        series = RationalSeries((0,), (1,))
        if direct != [0] * (verify_len + 1):
            raise MorsegradedError("empty trimmed automaton but words exist")
        return series
    n, m_edges, m_finals, initial = _minimize(
        len(order), auto.n_labels, edges, finals, 0
    )
    mat = [[0] * n for _ in range(n)]
    for (s, _a), t in m_edges.items():
        mat[s][t] += 1
    # denominator det(I - tM) by interpolation at integer points
    points = []
    for k in range(n + 1):
        mk = [
            [(1 if i == j else 0) - k * mat[i][j] for j in range(n)] for i in range(n)
        ]
        points.append((k, _int_det(mk)))
    den = _interpolate_integer_poly(points)
    # coefficients by iterating the initial vector
    need = 2 * n + max(verify_len, len(den)) + 1
    vec = [0] * n
    vec[initial] = 1
    coeffs = [1 if initial in m_finals else 0]
    for _ in range(need):
        nxt = [0] * n
        for (s, _a), t in m_edges.items():
            if vec[s]:
                nxt[t] += vec[s]
        vec = nxt
        coeffs.append(sum(vec[s] for s in m_finals))
    num = []
    for k in range(len(coeffs)):
        acc = 0
        for j in range(min(k, len(den) - 1) + 1):
            acc += den[j] * coeffs[k - j]
        num.append(acc)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    if len(num) > 2 * n + 1:
        raise MorsegradedError("numerator degree exceeds transfer-matrix bound")
    # verify the closed form reproduces the full computed prefix
    series = RationalSeries(tuple(num), tuple(den))
    expanded = series.coefficients(len(coeffs))
    if expanded != coeffs:
        raise MorsegradedError("rational series failed self-verification")
    if direct != coeffs[: verify_len + 1]:
        raise MorsegradedError("transfer-matrix counts disagree with direct counting")
    g = 0
    for c in list(num) + list(den):
        g = gcd(g, c)
    if g > 1:
        series = RationalSeries(
            tuple(c // g for c in num), tuple(c // g for c in den)
        )
    return series


# -- commutation classes -----------------------------------------------------------


@dataclass(frozen=True)
class CommutationClass:
    """Words of one content equal up to swapping adjacent commuting letters."""

    content: tuple[int, ...]
    representative: tuple[int, ...]
    size: int
    stuttering: bool


def commutation_classes(
    gb: GroebnerBasis, cfg: FacetOrderConfig, content
) -> list[CommutationClass]:
    """Non-stuttering commutation classes of the given content.

    Letters commute when their pair product avoids the leading ideal; a
    class is stuttering if any member repeats a letter whose square also
    avoids the leading ideal.  Representatives are the lexicographically
    least members under the label order.
    """
    from .cancellation import _distinct_permutations

    rank = cfg.order.label_rank
    content = tuple(sorted(content, key=lambda i: rank[i]))
    words = set(_distinct_permutations(list(content)))
    out = []
    seen: set[tuple[int, ...]] = set()
    for word in sorted(words, key=lambda w: [rank[i] for i in w]):
        if word in seen:
            continue
        cls = {word}
        stack = [word]
        stutter = False
        while stack:
            w = stack.pop()
            for k in range(len(w) - 1):
                a, b = w[k], w[k + 1]
                if a == b:
                    if not _pair_in_ideal(gb, a, a):
                        stutter = True
                    continue
                if not _pair_in_ideal(gb, a, b):
                    s = w[:k] + (b, a) + w[k + 2 :]
                    if s not in cls:
                        cls.add(s)
                        stack.append(s)
        seen |= cls
        rep = min(cls, key=lambda w: [rank[i] for i in w])
        if not stutter:
            out.append(CommutationClass(content, rep, len(cls), stutter))
    return out
