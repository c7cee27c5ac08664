"""Sparse multivariate polynomials over Q on g*, and dense univariate ones.

A :class:`Poly` in ``n`` variables maps exponent tuples to nonzero
``Fraction`` coefficients.  Terms are listed in graded lexicographic order
with x1 > x2 > ... > xn.  Values are immutable: every operation returns a
fresh polynomial.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from .errors import InputError
from .lie import LieAlgebra, as_point


def _grlex_key(exps: tuple[int, ...]):
    return (sum(exps), exps)


class Poly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != nvars:
                    raise InputError(f"exponent {exps} has wrong length for {nvars} variables")
                c = Fraction(c)
                if c:
                    clean[tuple(exps)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars: int, terms: dict) -> "Poly":
        # terms already clean; skips validation in hot loops
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, n: int) -> "Poly":
        return cls._raw(n, {})

    @classmethod
    def const(cls, n: int, c) -> "Poly":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Poly":
        if not 0 <= i < n:
            raise InputError(f"variable index {i} out of range")
        e = [0] * n
        e[i] = 1
        return cls._raw(n, {tuple(e): Fraction(1)})

    @classmethod
    def linear(cls, coeffs: Sequence) -> "Poly":
        """The linear function sum_i coeffs[i] x_i (an element of g)."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(n, terms)

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[tuple[int, ...], Fraction]:
        return dict(self._terms)

    def items(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms in decreasing graded lexicographic order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def coeff(self, exps: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exps), Fraction(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def homogeneous(self, k: int) -> "Poly":
        return Poly._raw(self.nvars, {e: c for e, c in self._terms.items() if sum(e) == k})

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self._terms.items(), key=lambda t: _grlex_key(t[0]))

    def monic(self) -> "Poly":
        return self * (1 / self.leading()[1])

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def variables(self) -> set[int]:
        return {i for e in self._terms for i, k in enumerate(e) if k}

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if other.nvars != self.nvars:
            raise InputError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Poly._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            if not other:
                return Poly.zero(self.nvars)
            return Poly._raw(self.nvars, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly._raw(self.nvars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        result = Poly.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"

    # -- calculus -----------------------------------------------------------

    def diff(self, i: int) -> "Poly":
        out = {}
        for e, c in self._terms.items():
            k = e[i]
            if k:
                ne = e[:i] + (k - 1,) + e[i + 1:]
                out[ne] = c * k
        return Poly._raw(self.nvars, out)

    def __call__(self, point: Sequence) -> Fraction:
        return evaluate(self, point)


def evaluate(p: Poly, point: Sequence) -> Fraction:
    point = as_point(point, p.nvars)
    total = Fraction(0)
    for e, c in p._terms.items():
        v = c
        for xi, k in zip(point, e):
            if k:
                v *= xi ** k
        total += v
    return total


def differential(p: Poly) -> list[Poly]:
    """Gradient (dp/dx_1, ..., dp/dx_n); a g-valued polynomial map on g*."""
    return [p.diff(i) for i in range(p.nvars)]


def gradient_at(p: Poly, x: Sequence) -> list[Fraction]:
    return [evaluate(d, x) for d in differential(p)]


def _structure_forms(alg: LieAlgebra) -> dict[tuple[int, int], dict[int, Fraction]]:
    forms: dict[tuple[int, int], dict[int, Fraction]] = {}
    for (i, j, k), c in alg.structure.items():
        forms.setdefault((i, j), {})[k] = c
    return forms


def _bracket(alg: LieAlgebra, p: Poly, q: Poly, coeff_of) -> Poly:
    if p.nvars != alg.dim or q.nvars != alg.dim:
        raise InputError("polynomial and algebra dimensions differ")
    n = alg.dim
    dp = differential(p)
    dq = differential(q)
    result = Poly.zero(n)
    for (i, j), terms in _structure_forms(alg).items():
        cross = dp[i] * dq[j] - dp[j] * dq[i]
        if not cross:
            continue
        weight = Poly.zero(n)
        for k, c in terms.items():
            weight = weight + coeff_of(k) * c
        result = result + weight * cross
    return result


def poisson_bracket(alg: LieAlgebra, p: Poly, q: Poly) -> Poly:
    """Lie-Poisson bracket {p, q}(x) = <x, [dp(x), dq(x)]>."""
    n = alg.dim
    return _bracket(alg, p, q, lambda k: Poly.var(n, k))


def frozen_bracket(alg: LieAlgebra, a: Sequence, p: Poly, q: Poly) -> Poly:
    """The a-bracket {p, q}_a(x) = <a, [dp(x), dq(x)]>."""
    a = as_point(a, alg.dim)
    n = alg.dim
    return _bracket(alg, p, q, lambda k: Poly.const(n, a[k]))


def taylor_components(p: Poly, a: Sequence) -> list[Poly]:
    """Homogeneous components f^(0), ..., f^(d) of x -> p(a + x).

    Computed from derivatives at ``a``: the coefficient of x^alpha in f^(m)
    is (d^alpha p)(a) / alpha!.
    """
    n = p.nvars
    a = as_point(a, n)
    d = max(p.degree, 0)
    comps = [dict() for _ in range(d + 1)]
    # every monomial x^alpha dividing some monomial of p
    seen = set()
    for e in p._terms:
        stack = [e]
        while stack:
            cur = stack.pop()
            if cur in seen:
                continue
            seen.add(cur)
            for i, k in enumerate(cur):
                if k:
                    stack.append(cur[:i] + (k - 1,) + cur[i + 1:])
    for alpha in seen:
        q = p
        denom = 1
        for i, k in enumerate(alpha):
            for _ in range(k):
                q = q.diff(i)
            denom *= factorial(k)
        val = evaluate(q, a) / denom
        if val:
            comps[sum(alpha)][alpha] = val
    return [Poly._raw(n, c) for c in comps]


def shift_expansion(p: Poly, a: Sequence) -> list[Poly]:
    """a-shifts: the coefficients f_{a,0}, ..., f_{a,d} of t^m in p(x + t a)."""
    n = p.nvars
    a = as_point(a, n)
    d = max(p.degree, 0)
    out = [dict() for _ in range(d + 1)]
    for e, c in p._terms.items():
        # expand prod_i (x_i + t a_i)^{e_i}; partial: {(t-degree, x-exponent): coeff}
        partial = {(0, ()): c}
        for i, k in enumerate(e):
            nxt: dict = {}
            for (tdeg, xe), v in partial.items():
                for j in range(k + 1):
                    if j and not a[i]:
                        break
                    w = v * comb(k, j) * a[i] ** j
                    key = (tdeg + j, xe + (k - j,))
                    nxt[key] = nxt.get(key, 0) + w
            partial = nxt
        for (tdeg, xe), v in partial.items():
            if v:
                bucket = out[tdeg]
                nv = bucket.get(xe, 0) + v
                if nv:
                    bucket[xe] = nv
                else:
                    bucket.pop(xe, None)
    return [Poly._raw(n, b) for b in out]


def restrict_to_line(p: Poly, x: Sequence, a: Sequence) -> "UniPoly":
    """lambda -> p(x + lambda a)."""
    n = p.nvars
    x = as_point(x, n)
    a = as_point(a, n)
    lines = [UniPoly([x[i], a[i]]) for i in range(n)]
    total = UniPoly([])
    for e, c in p._terms.items():
        term = UniPoly([c])
        for i, k in enumerate(e):
            if k:
                term = term * lines[i] ** k
        total = total + term
    return total


def homogeneous_monomials(n: int, k: int) -> list[tuple[int, ...]]:
    """All exponent vectors of total degree k in n variables, decreasing grlex."""
    out = []

    def rec(prefix, left, remaining):
        if remaining == 1:
            out.append(prefix + (left,))
            return
        for e in range(left, -1, -1):
            rec(prefix + (e,), left - e, remaining - 1)

    if n == 0:
        return [()] if k == 0 else []
    rec((), k, n)
    return out


def substitute(p: Poly, values: Sequence[Poly]) -> Poly:
    """p(values[0], ..., values[m-1]) for polynomials ``values`` in a common ring."""
    if len(values) != p.nvars:
        raise InputError("wrong number of substituted values")
    if not values:
        raise InputError("cannot substitute into a polynomial in zero variables")
    n = values[0].nvars
    total = Poly.zero(n)
    powers: dict[tuple[int, int], Poly] = {}
    for e, c in p._terms.items():
        term = Poly.const(n, c)
        for i, k in enumerate(e):
            if k:
                if (i, k) not in powers:
                    powers[(i, k)] = values[i] ** k
                term = term * powers[(i, k)]
        total = total + term
    return total


# -- text syntax ------------------------------------------------------------

def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def format_poly(p: Poly, labels: Sequence[str] | None = None) -> str:
    """Canonical text: terms in decreasing grlex order, e.g. ``-13/7*x3*x7 + x4*x6``."""
    labels = labels or default_labels(p.nvars)
    if not p._terms:
        return "0"
    parts = []
    for e, c in p.items():
        factors = []
        for i, k in enumerate(e):
            if k == 1:
                factors.append(labels[i])
            elif k > 1:
                factors.append(f"{labels[i]}^{k}")
        mono = "*".join(factors)
        mag = abs(c)
        if not mono:
            body = _fmt_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_fmt_rational(mag)}*{mono}"
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|\^)|([*+\-]))")


def parse_poly(text: str, labels: Sequence[str]) -> Poly:
    """Inverse of :func:`format_poly`; also accepts ``**`` and explicit ``c * x`` spacing."""
    n = len(labels)
    index = {lab: i for i, lab in enumerate(labels)}
    tokens = []
    pos = 0
    text = text.strip()
    if not text:
        raise InputError("empty polynomial")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse polynomial near {text[pos:]!r}")
        num, name, power, op = m.groups()
        if num is not None:
            try:
                tokens.append(("num", Fraction(num)))
            except ZeroDivisionError:
                raise InputError(f"zero denominator in {num!r}") from None
        elif name is not None:
            if name not in index:
                raise InputError(f"unknown variable {name!r}")
            tokens.append(("var", index[name]))
        elif power is not None:
            tokens.append(("pow", None))
        else:
            tokens.append((op, None))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1

    total = Poly.zero(n)
    i = 0
    expect_term = True
    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] in "+-":
            if tokens[i][0] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps = [0] * n
        got_factor = False
        while i < len(tokens):
            kind, val = tokens[i]
            if kind == "num":
                coeff *= val
                i += 1
            elif kind == "var":
                i += 1
                k = 1
                if i < len(tokens) and tokens[i][0] == "pow":
                    if i + 1 >= len(tokens) or tokens[i + 1][0] != "num" or tokens[i + 1][1].denominator != 1:
                        raise InputError("exponent must be a nonnegative integer")
                    k = int(tokens[i + 1][1])
                    i += 2
                exps[val] += k
            else:
                raise InputError(f"unexpected token {kind!r}")
            got_factor = True
            if i < len(tokens) and tokens[i][0] == "*":
                i += 1
                if i >= len(tokens) or tokens[i][0] not in ("num", "var"):
                    raise InputError("dangling '*'")
                continue
            break
        if not got_factor:
            raise InputError("missing term")
        total = total + Poly(n, {tuple(exps): coeff})
        expect_term = False
        if i < len(tokens) and tokens[i][0] not in "+-":
            raise InputError(f"unexpected token {tokens[i][0]!r}")
    if expect_term:
        raise InputError("empty polynomial")
    return total


# -- univariate -------------------------------------------------------------

class UniPoly:
    """Dense univariate polynomial in lambda, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = _as_uni(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return UniPoly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-_as_uni(other))

    def __rsub__(self, other):
        return _as_uni(other) - self

    def __mul__(self, other):
        other = _as_uni(other)
        if not self.coeffs or not other.coeffs:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = UniPoly([1])
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = UniPoly([other])
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, lam) -> Fraction:
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * lam + c
        return total

    def __repr__(self):
        return f"UniPoly({format_unipoly(self)!r})"

    def monic(self) -> "UniPoly":
        if not self.coeffs:
            raise ValueError("zero polynomial cannot be made monic")
        lead = self.coeffs[-1]
        return UniPoly([c / lead for c in self.coeffs])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dq = other.degree
        lead = other.coeffs[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dq] = c
                for j, oc in enumerate(other.coeffs):
                    rem[i - dq + j] -= c * oc
        return UniPoly(quot), UniPoly(rem[:dq] if dq > 0 else [])

    def __mod__(self, other):
        return self.divmod(other)[1]


def _as_uni(x) -> UniPoly:
    if isinstance(x, UniPoly):
        return x
    return UniPoly([x])


def unipoly_gcd(u: UniPoly, v: UniPoly) -> UniPoly:
    """Monic gcd by the Euclidean algorithm over Q."""
    if u.is_zero() and v.is_zero():
        raise InputError("gcd of two zero polynomials is undefined")
    while not v.is_zero():
        u, v = v, u % v
    return u.monic()


def format_unipoly(u: UniPoly, var: str = "lambda") -> str:
    if u.is_zero():
        return "0"
    p = Poly(1, {(k,): c for k, c in enumerate(u.coeffs)})
    return format_poly(p, [var])
