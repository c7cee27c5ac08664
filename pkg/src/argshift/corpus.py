"""Bundled example algebras and a golden-fact regression over them.

Each ``<name>.facts.json`` names an algebra file, a distinguished point, an
optional invariants file and a list of facts.  Every fact records how its
expected value was obtained (``published``, ``derived`` or ``trivial``).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import formal, lie, linalg, pencil, shifts
from .errors import InputError
from .io import parse_algebra, parse_invariants, parse_point, read_text
from .lie import DEFAULT_SEED, LieAlgebra
from .poly import Poly, format_poly, parse_poly, substitute

CORPUS_DIR = Path(__file__).parent / "corpus"
PROVENANCE = ("published", "derived", "trivial")
LOCUS_SAMPLES = 5


def resolve(path: str | Path) -> Path:
    """Find a file on disk, falling back to the bundled corpus (``corpus/x.alg`` or ``x.alg``)."""
    p = Path(path)
    if p.exists():
        return p
    parts = p.parts
    if parts and parts[0] == "corpus":
        p = CORPUS_DIR.joinpath(*parts[1:])
    else:
        p = CORPUS_DIR / p
    if p.exists():
        return p
    raise InputError(f"no such file: {path}")


def load_algebra(path) -> LieAlgebra:
    try:
        p = resolve(path)
    except InputError:
        if Path(path).suffix:
            raise
        p = resolve(f"{path}.alg")
    return parse_algebra(read_text(p), name=p.stem)


@dataclass
class CorpusEntry:
    name: str
    algebra: LieAlgebra
    point: tuple[Fraction, ...] | None
    invariants: list[tuple[str, Poly]] | None
    known_facts: list[dict] = field(default_factory=list)


def load_entry(path) -> CorpusEntry:
    path = resolve(path)
    try:
        data = json.loads(read_text(path))
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: {exc}") from None
    base = path.parent
    alg = parse_algebra(read_text(base / data["algebra"]), name=data["algebra"].rsplit(".", 1)[0])
    point = parse_point(read_text(base / data["point"]), alg.dim) if data.get("point") else None
    invs = None
    if data.get("invariants"):
        invs = parse_invariants(read_text(base / data["invariants"]), alg.labels)
    facts = data.get("facts", [])
    for fact in facts:
        if fact.get("provenance") not in PROVENANCE:
            raise InputError(f"{path}: fact {fact.get('fact')!r} lacks a provenance tag")
    return CorpusEntry(path.name.split(".")[0], alg, point, invs, facts)


def load_corpus(directory: Path | None = None) -> list[CorpusEntry]:
    directory = Path(directory) if directory else CORPUS_DIR
    return [load_entry(p) for p in sorted(directory.glob("*.facts.json"))]


def _unit_span(alg: LieAlgebra, names) -> list[list[Fraction]]:
    idx = {lab: i for i, lab in enumerate(alg.labels)}
    return linalg.span_basis([lie.unit(alg.dim, idx[nm]) for nm in names], alg.dim)


def _points_on_locus(alg: LieAlgebra, zero, rng) -> list:
    idx = {alg.labels.index(nm) for nm in zero}
    out = []
    for _ in range(LOCUS_SAMPLES):
        y = lie.random_point(alg.dim, rng)
        out.append(tuple(Fraction(0) if i in idx else v for i, v in enumerate(y)))
    return out


def _fact_point(entry: CorpusEntry, fact: dict):
    if "point" in fact:
        return tuple(Fraction(v) for v in fact["point"])
    return entry.point


def _invs(entry: CorpusEntry) -> list[Poly]:
    return [p for _, p in entry.invariants or []]


def _eval_fact(entry: CorpusEntry, fact: dict, seed: int) -> Any:
    alg = entry.algebra
    kind = fact["fact"]
    a = _fact_point(entry, fact)
    rng = random.Random(seed)
    if kind == "validate":
        return "ok" if not lie.validate(alg) else "violated"
    if kind == "index":
        return lie.index(alg, seed).index
    if kind == "ann":
        basis = lie.annihilator(alg, a)
        return fact["expected"] if basis == _unit_span(alg, fact["expected"]) else \
            [[str(v) for v in row] for row in basis]
    if kind == "regular":
        return lie.is_regular(alg, a, seed=seed)
    if kind == "singular_locus":
        ind = lie.index(alg, seed).index
        on = all(lie.ann_dim(alg, y) > ind for y in _points_on_locus(alg, fact["zero"], rng))
        off = all(lie.ann_dim(alg, lie.random_point(alg.dim, rng)) == ind for _ in range(LOCUS_SAMPLES))
        return on and off
    if kind == "shift_basis":
        basis = formal.build_basis(alg, a, fact["order"], seed=seed)
        return [format_poly(t, alg.labels) for m in basis.members for t in m.terms if t]
    if kind == "commute_Fa":
        return shifts.commutativity_check(alg, a, shifts.build_Fa(alg, a, fact["order"], seed=seed)).ok
    if kind == "trdeg_Fa":
        return shifts.trdeg(alg, shifts.build_Fa(alg, a, fact["order"], seed=seed), seed=seed).trdeg
    if kind == "trdeg_Ya":
        return shifts.trdeg(alg, shifts.build_Ya(alg, a, _invs(entry)), seed=seed).trdeg
    if kind == "linear_Ya":
        return [format_poly(g, alg.labels) for g in shifts.build_Ya(alg, a, _invs(entry)).linear()]
    if kind == "linear_Fa":
        gens = shifts.build_Fa(alg, a, fact["order"], seed=seed).linear()
        span = linalg.span_basis([[g.coeff(tuple(int(j == i) for j in range(alg.dim))) for i in range(alg.dim)] for g in gens], alg.dim)
        return fact["expected"] if span == _unit_span(alg, fact["expected"]) else \
            [format_poly(g, alg.labels) for g in gens]
    if kind == "semiinv_degree":
        return pencil.semiinvariant_degree(alg, seed=seed).degree
    if kind == "complete":
        return pencil.completeness_test(alg, seed=seed)
    if kind == "dim_dfa_generic":
        x = lie.random_regular_point(alg, rng)
        b = lie.random_regular_point(alg, rng)
        return pencil.dim_dFa(alg, x, b, seed=seed)
    if kind == "sing1":
        return pencil.sing1_test(alg, a, seed=seed).in_sing1
    if kind == "invariants_central":
        return all(shifts.invariance_check(alg, p) is None for p in _invs(entry))
    if kind == "relation":
        names = [nm for nm, _ in entry.invariants]
        rel = parse_poly(fact["expr"], names)
        return format_poly(substitute(rel, _invs(entry)), alg.labels)
    if kind == "crit_locus":
        invs = _invs(entry)
        on = all(shifts.crit_test(alg, invs, y, seed=seed) for y in _points_on_locus(alg, fact["zero"], rng))
        off = not any(shifts.crit_test(alg, invs, lie.random_point(alg.dim, rng), seed=seed)
                      for _ in range(LOCUS_SAMPLES))
        return on and off
    if kind == "prop1_condition1":
        return shifts.prop1_test(alg, a, _invs(entry), seed=seed).condition1
    raise InputError(f"unknown fact kind {kind!r}")


@dataclass(frozen=True)
class FactResult:
    entry: str
    fact: str
    expected: Any
    actual: Any
    provenance: str

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


def verify_corpus(entries: list[CorpusEntry] | None = None, *, seed: int = DEFAULT_SEED,
                  progress: Callable[[FactResult], None] | None = None) -> list[FactResult]:
    """Recompute every known fact; callers compare ``expected`` with ``actual``."""
    if entries is None:
        entries = load_corpus()
    results = []
    for entry in entries:
        for fact in entry.known_facts:
            try:
                actual = _eval_fact(entry, fact, seed)
            except InputError:
                raise
            except Exception as exc:  # a failing computation is a failed fact, not a crash
                actual = f"error: {type(exc).__name__}: {exc}"
            res = FactResult(entry.name, fact["fact"], fact["expected"], actual, fact["provenance"])
            results.append(res)
            if progress:
                progress(res)
    return results
