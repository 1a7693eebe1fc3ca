"""Input documents, run configuration, and deterministic serialization.

One wire format: JSON with multidegrees and monomials as plain integer
arrays.  Reports serialize with sorted keys and canonical list orders so
identical configurations produce byte-identical output.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from . import __version__
from .errors import ParseError, ValidationError
from .groebner import Binomial, GroebnerBasis, verify_groebner
from .orders import TermOrder
from .semigroup import SemigroupPresentation, Vector

COMMANDS = (
    "gb",
    "interval",
    "chains",
    "morse",
    "cancel",
    "betti",
    "automaton",
    "series",
    "verify-bounds",
    "full",
)


@dataclass
class InputDocument:
    presentation: SemigroupPresentation
    order: TermOrder
    supplied_basis: GroebnerBasis | None
    targets: tuple[Vector, ...]

    @property
    def dimension(self) -> int:
        return self.presentation.dimension


def parse_input(text: str) -> InputDocument:
    """Validated input document; a supplied basis is re-verified, not trusted."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("input document must be a JSON object")
    try:
        dimension = int(doc["dimension"])
        generators = doc["generators"]
    except KeyError as exc:
        raise ParseError(f"missing required field {exc}") from exc
    if not isinstance(generators, list) or not generators:
        raise ParseError("generators must be a nonempty list of integer vectors")
    try:
        pres = SemigroupPresentation(dimension, [tuple(g) for g in generators])
    except (TypeError, ValidationError) as exc:
        raise ParseError(str(exc)) from exc
    try:
        order = TermOrder.from_json(pres.n, doc.get("term_order"))
    except ValidationError as exc:
        raise ParseError(str(exc)) from exc
    basis = None
    if doc.get("groebner_basis") is not None:
        elements = []
        for entry in doc["groebner_basis"]:
            try:
                plus = tuple(int(x) for x in entry["plus"])
                minus = tuple(int(x) for x in entry["minus"])
            except (KeyError, TypeError) as exc:
                raise ParseError(f"bad basis element {entry!r}") from exc
            if len(plus) != pres.n or len(minus) != pres.n:
                raise ParseError("basis exponent vectors must have one entry per generator")
            elements.append(Binomial(plus, minus))
        basis = GroebnerBasis(order, tuple(elements))
        verify_groebner(basis, pres, completeness_cap=max(2, basis.degree))
    targets = tuple(tuple(int(c) for c in t) for t in doc.get("targets", []))
    for t in targets:
        if len(t) != dimension:
            raise ParseError(f"target {t} has wrong dimension")
        if not pres.member(t):
            raise ParseError(f"target {t} is not in the semigroup")
    return InputDocument(pres, order, basis, targets)


@dataclass
class RunConfig:
    input_path: str
    command: str
    degree_window: int = 4
    characteristics: tuple[int, ...] = (0, 2, 3)
    path_cap: int = 10_000
    state_budget: int = 1_000_000
    output_format: str = "json"
    out_path: str | None = None
    seed: int = 0
    cap: int | None = None
    timing: bool = False
    threads: int = field(default=1)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValidationError(f"unknown command {self.command!r}")
        if self.degree_window < 1:
            raise ValidationError("degree window must be >= 1")
        if self.path_cap <= 0 or self.state_budget <= 0:
            raise ValidationError("caps must be positive")
        if self.output_format not in ("json", "tsv"):
            raise ValidationError("format must be json or tsv")
        for p in self.characteristics:
            if p != 0 and p < 2:
                raise ValidationError("characteristics are 0 or primes >= 2")

    def echo(self) -> dict:
        return {
            "input": self.input_path,
            "command": self.command,
            "degree_window": self.degree_window,
            "fields": list(self.characteristics),
            "path_cap": self.path_cap,
            "state_budget": self.state_budget,
            "format": self.output_format,
            "seed": self.seed,
            "cap": self.cap,
            "threads": self.threads,
        }


def thread_cap_from_env() -> int:
    raw = os.environ.get("MORSEGRADED_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError as exc:
        raise ValidationError("MORSEGRADED_THREADS must be an integer") from exc
    if value < 1:
        raise ValidationError("MORSEGRADED_THREADS must be >= 1")
    return value


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "), indent=1)


def report_envelope(cfg: RunConfig, payload: dict, elapsed_ms: int | None) -> dict:
    return {
        "config": cfg.echo(),
        "version": __version__,
        "timing_ms": elapsed_ms if cfg.timing else None,
        "report": payload,
    }


def betti_tsv(rows) -> str:
    """Tor table as TSV: one row per multidegree, one column per index."""
    by_lam: dict[tuple, dict[int, int]] = {}
    top = 0
    for lam, i, rank in rows:
        by_lam.setdefault(tuple(lam), {})[i] = rank
        top = max(top, i)
    lines = ["multidegree\t" + "\t".join(f"i={i}" for i in range(top + 1))]
    for lam in sorted(by_lam):
        cells = [str(by_lam[lam].get(i, 0)) for i in range(top + 1)]
        lines.append(",".join(map(str, lam)) + "\t" + "\t".join(cells))
    return "\n".join(lines) + "\n"
