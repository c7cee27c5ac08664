"""Text formats for algebras, points and invariant lists.

Algebra file::

    dim 3
    labels x1 x2 x3          # optional
    1 2 3 1                  # [e1, e2] = 1*e3 ; 1-based, i < j

Point file: ``point v1 v2 ... vn`` with entries like ``-3/4``.
Invariants file: one polynomial per line, optionally prefixed ``name:``.
``#`` starts a comment everywhere.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import InputError
from .lie import LieAlgebra
from .poly import Poly, format_poly, parse_poly


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _rational(tok: str) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"not a rational number: {tok!r}") from None


def parse_algebra(text: str, name: str = "") -> LieAlgebra:
    dim = None
    labels: tuple[str, ...] = ()
    structure: dict[tuple[int, int, int], Fraction] = {}
    for lineno, line in _lines(text):
        toks = line.split()
        if toks[0] == "dim":
            if dim is not None or len(toks) != 2:
                raise InputError(f"line {lineno}: malformed or repeated 'dim'")
            try:
                dim = int(toks[1])
            except ValueError:
                raise InputError(f"line {lineno}: dimension must be an integer") from None
            if dim < 1:
                raise InputError(f"line {lineno}: dimension must be positive")
            continue
        if dim is None:
            raise InputError(f"line {lineno}: 'dim n' must come first")
        if toks[0] == "labels":
            labels = tuple(toks[1:])
            if len(labels) != dim:
                raise InputError(f"line {lineno}: expected {dim} labels")
            continue
        if len(toks) != 4:
            raise InputError(f"line {lineno}: expected 'i j k c'")
        try:
            i, j, k = (int(t) for t in toks[:3])
        except ValueError:
            raise InputError(f"line {lineno}: indices must be integers") from None
        for idx in (i, j, k):
            if not 1 <= idx <= dim:
                raise InputError(f"line {lineno}: index {idx} out of range 1..{dim}")
        if not i < j:
            raise InputError(f"line {lineno}: brackets must be listed with i < j")
        key = (i - 1, j - 1, k - 1)
        if key in structure:
            raise InputError(f"line {lineno}: duplicate entry ({i}, {j}, {k})")
        structure[key] = _rational(toks[3])
    if dim is None:
        raise InputError("missing 'dim' line")
    return LieAlgebra(dim, structure, labels, name)


def format_algebra(alg: LieAlgebra) -> str:
    out = [f"dim {alg.dim}", "labels " + " ".join(alg.labels)]
    for (i, j, k), c in sorted(alg.structure.items()):
        out.append(f"{i + 1} {j + 1} {k + 1} {c}")
    return "\n".join(out) + "\n"


def parse_point(text: str, n: int | None = None) -> tuple[Fraction, ...]:
    """Parse ``point v1 ... vn``; a bare comma/space separated list is also accepted."""
    body = " ".join(line for _, line in _lines(text))
    toks = body.replace(",", " ").split()
    if toks and toks[0] == "point":
        toks = toks[1:]
    if not toks:
        raise InputError("empty point")
    pt = tuple(_rational(t) for t in toks)
    if n is not None and len(pt) != n:
        raise InputError(f"point has {len(pt)} coordinates, expected {n}")
    return pt


def format_point(pt: Sequence[Fraction]) -> str:
    return "point " + " ".join(str(Fraction(v)) for v in pt)


def parse_invariants(text: str, labels: Sequence[str]) -> list[tuple[str, Poly]]:
    out = []
    for lineno, line in _lines(text):
        name = f"inv{len(out) + 1}"
        if ":" in line:
            name, line = (part.strip() for part in line.split(":", 1))
        try:
            out.append((name, parse_poly(line, labels)))
        except InputError as exc:
            raise InputError(f"line {lineno}: {exc}") from None
    return out


def format_invariants(invs: Sequence[tuple[str, Poly]], labels: Sequence[str]) -> str:
    return "".join(f"{name}: {format_poly(p, labels)}\n" for name, p in invs)


def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
