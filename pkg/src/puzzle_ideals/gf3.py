"""Arithmetic over F3, dense F3 linear algebra and sparse polynomials.

Polynomials live in F3[x1..xN] modulo the field equations x^3 = x, so every
stored exponent is 1 or 2.  Monomials are tuples of (variable, exponent)
pairs sorted by variable index.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[tuple[int, int], ...]

ONE: Monomial = ()


class Inconsistent(ValueError):
    """Raised when a linear system over F3 has no solution."""


class MissingVariable(KeyError):
    """Raised when an evaluation point does not bind a needed variable."""


def reduce_exponent(e: int) -> int:
    if e <= 2:
        return e
    return (e - 1) % 2 + 1


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = reduce_exponent(exps.get(v, 0) + e)
    return tuple(sorted(exps.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _glex_key(m: Monomial):
    # descending graded lex with x1 > x2 > ...: compare degree, then the
    # exponent vector read from the smallest variable index upwards
    return (mono_degree(m), [(-v, e) for v, e in m])


class Poly:
    """Immutable sparse polynomial over F3 reduced modulo field equations."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, int] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c %= 3
                if c:
                    clean[m] = c
        self.terms = clean
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def const(cls, c: int) -> "Poly":
        return cls({ONE: c})

    @classmethod
    def var(cls, i: int) -> "Poly":
        return cls({((i, 1),): 1})

    @classmethod
    def from_raw(cls, raw: Iterable[tuple[Mapping[int, int], int]]) -> "Poly":
        """Build from (exponent map, coefficient) pairs with arbitrary exponents."""
        acc: dict[Monomial, int] = {}
        for exps, c in raw:
            m = tuple(sorted((v, reduce_exponent(e)) for v, e in exps.items() if e))
            acc[m] = (acc.get(m, 0) + c) % 3
        return cls(acc)

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return parse_poly(text)

    # algebra ----------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = (out.get(m, 0) + c) % 3
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: 3 - c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        out: dict[Monomial, int] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                out[m] = (out.get(m, 0) + c1 * c2) % 3
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    # queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not m for m in self.terms)

    def variables(self) -> set[int]:
        return {v for m in self.terms for v, _ in m}

    def degree(self) -> int:
        return max((mono_degree(m) for m in self.terms), default=-1)

    def eval(self, point: Mapping[int, int] | Sequence[int]) -> int:
        """Evaluate at a point.  Sequences are indexed so that x_i is point[i-1]."""
        get = _binder(point)
        total = 0
        for m, c in self.terms.items():
            t = c
            for v, e in m:
                t *= get(v) ** e
            total += t
        return total % 3

    def substitute(self, values: Mapping[int, int]) -> "Poly":
        """Specialize the variables in ``values``; others stay symbolic."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            rest = []
            for v, e in m:
                if v in values:
                    c = c * values[v] ** e % 3
                    if not c:
                        break
                else:
                    rest.append((v, e))
            if c:
                key = tuple(rest)
                out[key] = (out.get(key, 0) + c) % 3
        return Poly(out)

    def rename(self, mapping: Mapping[int, int]) -> "Poly":
        """Rename variables; the map must be injective on the support."""
        out: dict[Monomial, int] = {}
        for m, c in self.terms.items():
            key = tuple(sorted((mapping[v], e) for v, e in m))
            out[key] = (out.get(key, 0) + c) % 3
        return Poly(out)

    def sorted_terms(self) -> list[tuple[Monomial, int]]:
        return sorted(self.terms.items(), key=lambda t: _glex_key(t[0]), reverse=True)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _coerce(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, int):
        return Poly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a polynomial over F3")


def _binder(point):
    if isinstance(point, Mapping):
        def get(v):
            try:
                return point[v]
            except KeyError:
                raise MissingVariable(v) from None
    else:
        def get(v):
            if not 1 <= v <= len(point):
                raise MissingVariable(v)
            return point[v - 1]
    return get


def normalize(raw: Mapping[Monomial, int]) -> Poly:
    """Reduce a monomial->coefficient map with arbitrary exponents."""
    return Poly.from_raw((dict(m), c) for m, c in raw.items())


def format_mono(m: Monomial) -> str:
    return "*".join(f"x{v}" if e == 1 else f"x{v}^{e}" for v, e in m)


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for m, c in p.sorted_terms():
        if not m:
            parts.append(str(c))
        elif c == 1:
            parts.append(format_mono(m))
        else:
            parts.append(f"{c}*{format_mono(m)}")
    return " + ".join(parts)


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_poly(text: str) -> Poly:
    """Parse the textual format, e.g. ``x1^2*x2 + 2*x1*x2^2 - x3 + 1``."""
    text = text.strip()
    if not text or text == "0":
        return Poly()
    raw = []
    pos = 0
    while pos < len(text):
        match = _TERM.match(text, pos)
        if not match or match.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign, body = match.groups()
        pos = match.end()
        coeff = -1 if sign == "-" else 1
        exps: dict[int, int] = {}
        for factor in body.strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {body!r}")
            if factor[0] in "xz":
                name, _, power = factor.partition("^")
                v = int(name[1:])
                exps[v] = exps.get(v, 0) + (int(power) if power else 1)
            else:
                coeff *= int(factor)
        raw.append((exps, coeff))
    return Poly.from_raw(raw)


# dense linear algebra ------------------------------------------------------

def rref(rows: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F3; returns (matrix, pivot columns)."""
    m = [[x % 3 for x in row] for row in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        if m[r][col] == 2:
            m[r] = [2 * x % 3 for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col]
                m[i] = [(a - f * b) % 3 for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(A: Sequence[Sequence[int]], b: Sequence[int]) -> list[int]:
    """Canonical solution of A x = b over F3: RREF with free variables zero."""
    if not A:
        return []
    ncols = len(A[0])
    aug = [list(row) + [rhs] for row, rhs in zip(A, b)]
    m, pivots = rref(aug)
    if ncols in pivots:
        raise Inconsistent("constraint rows contradict")
    x = [0] * ncols
    for row, col in zip(m, pivots):
        x[col] = row[ncols]
    return x


def matvec(A: Sequence[Sequence[int]], x: Sequence[int]) -> list[int]:
    return [sum(a * b for a, b in zip(row, x)) % 3 for row in A]
