"""Cross-module orchestration: consistency suites and composite reports.

Everything here ties the independent routes together: characterization
against direct overlaps, Morse numbers against oracle Betti numbers,
survivors against automaton language and commutation classes.
"""

from __future__ import annotations

from .automaton import (
    build_degree_d_automaton,
    build_quadratic_automaton,
    commutation_classes,
    rational_series,
)
from .cancellation import CancellationResult, cancel_interval, survivor_words_by_content
from .chains import FacetOrderConfig, check_crossing_condition, ordered_facets
from .groebner import GroebnerBasis
from .homology import (
    order_complex,
    reduced_betti,
    standard_grading_functional,
    tor_ranks,
    verify_vanishing,
)
from .morse import direct_interval_system, msi_characterization
from .resolution import morse_boundary
from .semigroup import SemigroupPresentation, Vector


def interval_pipeline(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    lam: Vector,
    path_cap: int = 10_000,
) -> CancellationResult:
    return cancel_interval(pres, lam, cfg, gb, path_cap)


def characterization_matches_direct(
    pres: SemigroupPresentation, gb: GroebnerBasis, cfg: FacetOrderConfig, lam: Vector
) -> bool:
    zero = tuple([0] * pres.dimension)
    facets = ordered_facets(pres.interval(zero, lam), cfg)
    for j, facet in enumerate(facets):
        direct = tuple(iv.span() for iv in direct_interval_system(facets, j))
        implied = tuple(iv.span() for iv in msi_characterization(gb, cfg, facet))
        if direct != implied:
            return False
    return True


def reduced_survivor_counts(res: CancellationResult) -> dict[int, int]:
    """Survivor counts with the base vertex folded away (resolution view)."""
    out: dict[int, int] = {}
    for c in res.survivors:
        if c.is_base:
            continue
        out[c.dimension] = out.get(c.dimension, 0) + 1
    return dict(sorted(out.items()))


def morse_vs_betti(res: CancellationResult, betti: tuple[int, ...]) -> dict:
    """Morse inequality and Euler identity data for one interval."""
    m = res.morse_numbers()
    padded = {i: b for i, b in enumerate(betti, start=-1)}
    nonreduced = dict(padded)
    if any(d >= 0 for d in m) or sum(betti):
        nonreduced[0] = padded.get(0, 0) + (1 if padded.get(-1, 0) == 0 else 0)
    top = max(set(m) | set(nonreduced), default=-1)
    ok_ineq = all(m.get(i, 0) >= nonreduced.get(i, 0) for i in range(0, top + 1))
    ok_ineq = ok_ineq and m.get(-1, 0) >= padded.get(-1, 0)
    euler_m = sum((-1) ** i * k for i, k in m.items() if i >= 0)
    euler_b = sum((-1) ** i * k for i, k in nonreduced.items() if i >= 0)
    return {
        "morse_numbers": m,
        "betti": {i: b for i, b in padded.items() if b},
        "inequality_ok": ok_ineq,
        "euler_morse": euler_m,
        "euler_betti": euler_b,
        "euler_ok": euler_m == euler_b,
    }


def cm_koszul_witness(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    window: dict[Vector, int],
    characteristic: int = 0,
    results: dict[Vector, CancellationResult] | None = None,
) -> dict:
    """Cohen-Macaulay witnesses per interval plus the Koszul diagonal check.

    An interval passes when homology is concentrated in top dimension and
    the cancelled Morse data kept one base vertex plus top cells only.
    """
    zero = tuple([0] * pres.dimension)
    results = dict(results or {})
    entries = []
    all_ok = True
    for lam in sorted(window):
        cx = order_complex(pres, pres.interval(zero, lam))
        betti = reduced_betti(cx, characteristic)
        top = cx.dim
        concentrated = all(b == 0 for i, b in enumerate(betti, start=-1) if i < top)
        if lam not in results:
            results[lam] = cancel_interval(pres, lam, cfg, gb)
        m = results[lam].morse_numbers()
        if top <= 0:
            witness = True  # zero-dimensional or empty: nothing to collapse
        else:
            witness = m.get(0, 0) == 1 and all(
                k == 0 for i, k in m.items() if 0 < i < top
            )
        entries.append(
            {
                "multidegree": list(lam),
                "top_dimension": top,
                "homology_concentrated": concentrated,
                "morse_witness": witness,
            }
        )
        all_ok = all_ok and concentrated and witness
    grading = standard_grading_functional(pres)
    koszul = None
    notice = None
    if grading is None:
        notice = "NotStandardGraded: Koszul diagonal check skipped"
    else:
        table = tor_ranks(pres, window, characteristic)
        koszul = all(
            window[lam] == i for (i, lam), v in table.ranks.items() if v and i >= 1
        )
    return {
        "characteristic": characteristic,
        "intervals": entries,
        "cm_ok": all_ok,
        "koszul_diagonal": koszul,
        "notice": notice,
    }


def sharpness_report(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    window: dict[Vector, int],
    characteristic: int = 0,
) -> list[dict]:
    """Multidegrees at the Groebner degree whose interval is disconnected."""
    zero = tuple([0] * pres.dimension)
    d = max(2, gb.degree)
    out = []
    for lam in sorted(window):
        if window[lam] != d:
            continue
        betti = reduced_betti(order_complex(pres, pres.interval(zero, lam)), characteristic)
        b0 = betti[1] if len(betti) > 1 else 0
        if b0 > 0:
            out.append({"multidegree": list(lam), "reduced_b0": b0})
    return out


def full_consistency_suite(
    pres: SemigroupPresentation,
    gb: GroebnerBasis,
    cfg: FacetOrderConfig,
    max_degree: int,
    characteristics=(0, 2, 3),
    path_cap: int = 10_000,
    state_budget: int = 1_000_000,
    deep_degree: int | None = None,
) -> dict:
    """Run every cross-check the package knows on one presentation.

    Face-level work (matchings, cancellation, path certificates) runs on
    intervals up to deep_degree (default max_degree capped at 4); label and
    homology level checks cover the whole window.
    """
    zero = tuple([0] * pres.dimension)
    window = pres.degree_window(max_degree)
    deep = deep_degree if deep_degree is not None else min(max_degree, 4)
    deep_window = {lam: d for lam, d in window.items() if d <= deep}
    checks: dict[str, bool] = {}
    details: dict[str, object] = {}

    results: dict[Vector, CancellationResult] = {}
    crossing_ok = True
    charact_ok = True
    ineq_ok = True
    euler_ok = True
    for lam in sorted(deep_window):
        ivl = pres.interval(zero, lam)
        facets = ordered_facets(ivl, cfg)
        crossing_ok = crossing_ok and bool(check_crossing_condition(facets))
        charact_ok = charact_ok and characterization_matches_direct(pres, gb, cfg, lam)
        res = cancel_interval(pres, lam, cfg, gb, path_cap)
        results[lam] = res
        cmp = morse_vs_betti(res, reduced_betti(order_complex(pres, ivl), 0))
        ineq_ok = ineq_ok and cmp["inequality_ok"]
        euler_ok = euler_ok and cmp["euler_ok"]
    checks["crossing_condition"] = crossing_ok
    checks["characterization_equals_direct"] = charact_ok
    checks["morse_inequalities"] = ineq_ok
    checks["euler_identity"] = euler_ok

    vanishing = verify_vanishing(pres, gb.degree, window, characteristics)
    checks["vanishing_bound"] = vanishing["ok"]
    details["vanishing"] = vanishing

    if gb.degree <= 2:
        auto = build_quadratic_automaton(gb, cfg, state_budget)
    else:
        auto = build_degree_d_automaton(gb, cfg, state_budget)
    accepted = {
        w for ws in auto.words_up_to(max_degree).values() for w in ws
    }
    survivor_words: set[tuple[int, ...]] = set()
    bijection_ok = True
    by_content = survivor_words_by_content(pres, gb, cfg, max_degree)
    for content, words in by_content.items():
        survivor_words.update(tuple(reversed(w)) for w in words)
        if gb.degree <= 2:
            if len(commutation_classes(gb, cfg, content)) != len(words):
                bijection_ok = False
    checks["language_equals_survivors"] = accepted == survivor_words
    if gb.degree <= 2:
        checks["class_bijection"] = bijection_ok
    series = rational_series(auto, verify_len=min(8, max_degree + 2))
    details["series"] = {
        "numerator": list(series.numerator),
        "denominator": list(series.denominator),
        "coefficients": series.coefficients(max_degree + 1),
    }

    deep_survivors = {
        tuple(reversed(c.facet.labels))
        for res in results.values()
        for c in res.survivors
        if not c.is_base
    }
    deep_fiber = {w for w in survivor_words if len(w) <= deep}
    if gb.degree <= 2:
        # quadratic survivors are canonical: the engines must coincide
        checks["face_level_agrees_with_fiber_level"] = deep_survivors == deep_fiber
    else:
        # high-degree cancellation is matching-order dependent, so the two
        # engines may legitimately keep different cells; both sides are
        # held to the oracle instead (inequalities above, bounds below)
        details["face_level_survivors"] = len(deep_survivors)
        details["fiber_level_survivors"] = len(deep_fiber)
    details["deep_accepted_words"] = len({w for w in accepted if len(w) <= deep})

    resolution_ok = True
    try:
        data = morse_boundary(pres, gb, cfg, deep_window, results, path_cap)
        table = tor_ranks(pres, deep_window, 0)
        morse_side = {k: v for k, v in data.tor.items() if k[0] >= 1}
        oracle_side = {k: v for k, v in table.ranks.items() if k[0] >= 1}
        if gb.degree <= 2:
            resolution_ok = morse_side == oracle_side
        else:
            resolution_ok = all(
                morse_side.get(k, 0) >= v for k, v in oracle_side.items()
            )
    except Exception:  # pragma: no cover - surfaced as a failed check
        resolution_ok = False
        raise
    checks["resolution_" + ("minimal" if gb.degree <= 2 else "bounds")] = resolution_ok

    details["sharpness_witnesses"] = sharpness_report(pres, gb, window)
    return {"checks": checks, "ok": all(checks.values()), "details": details}


