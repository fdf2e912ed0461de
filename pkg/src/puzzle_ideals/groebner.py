"""Buchberger's algorithm over F3 modulo the field equations.

Monomials are packed into integers with two bits per variable, the most
significant field holding the largest variable of the order.  Integer
comparison of keys is then exactly the lex (or block-lex) order, divisibility
and lcm are mask operations, and the field equations x^3 = x are applied by
``kernels.mono_mul``.  The field equations enter Buchberger's algorithm as
the S-pairs x^(3-e) * g for every variable of LM(g), which is what pairing g
with the generator x^3 - x produces.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

from . import kernels
from .gf3 import Poly


class WrongOrder(ValueError):
    """The basis was not computed under an order eliminating the right block."""


@dataclass(frozen=True)
class MonomialOrder:
    """Lex order on ``variables`` (largest first); block-lex keeps a tail block."""

    variables: tuple[int, ...]
    kind: str = "lex"
    keep: tuple[int, ...] = ()

    @classmethod
    def lex(cls, variables: Iterable[int]) -> "MonomialOrder":
        return cls(tuple(variables))

    @classmethod
    def block(cls, eliminate: Iterable[int], keep: Iterable[int]) -> "MonomialOrder":
        keep = tuple(keep)
        return cls(tuple(eliminate) + keep, "block-lex", keep)

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("repeated variable in order")


class Ring:
    """Key encoding of monomials for one order."""

    def __init__(self, order: MonomialOrder):
        self.order = order
        nv = len(order.variables)
        self.nv = nv
        self.shift = {v: 2 * (nv - 1 - p) for p, v in enumerate(order.variables)}
        self.var_at = {2 * (nv - 1 - p): v for p, v in enumerate(order.variables)}
        self.LO = int("01" * nv, 2) if nv else 0

    def encode_mono(self, m) -> int:
        key = 0
        shift = self.shift
        for v, e in m:
            key |= e << shift[v]
        return key

    def decode_mono(self, key: int) -> tuple:
        out = []
        s = 0
        while key:
            e = key & 3
            if e:
                out.append((self.var_at[s], e))
            key >>= 2
            s += 2
        return tuple(sorted(out))

    def encode(self, p: Poly) -> dict[int, int]:
        missing = p.variables() - set(self.shift)
        if missing:
            raise ValueError(f"variables {sorted(missing)} are not in the order")
        return {self.encode_mono(m): c for m, c in p.terms.items()}

    def decode(self, terms: dict[int, int]) -> Poly:
        return Poly({self.decode_mono(k): c for k, c in terms.items()})

    def var_key(self, v: int, e: int = 1) -> int:
        return e << self.shift[v]

    def degree(self, key: int) -> int:
        lo = key & self.LO
        hi = (key >> 1) & self.LO
        return bin(lo).count("1") + 2 * bin(hi).count("1")


class Element:
    """A monic polynomial with its leading monomial split into masks."""

    __slots__ = ("lm", "a", "b", "terms", "tail", "lead_var")

    def __init__(self, ring: Ring, terms: dict[int, int]):
        lm = max(terms)
        inv = terms[lm]  # 1 or 2, its own inverse mod 3
        if inv != 1:
            terms = {k: c * inv % 3 for k, c in terms.items()}
        self.lm = lm
        self.b = (lm >> 1) & ring.LO
        self.a = (lm & ring.LO) | self.b
        self.terms = terms
        self.tail = sorted(((k, c) for k, c in terms.items() if k != lm), reverse=True)
        self.lead_var = lm.bit_length() - 1 & ~1


@dataclass
class GroebnerBasis:
    order: MonomialOrder
    elements: list[Poly]
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self._ring = Ring(self.order)
        self._elems = [Element(self._ring, self._ring.encode(g)) for g in self.elements]
        self._index = _Index(self._ring, self._elems)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def is_unit(self) -> bool:
        return any(g.is_constant() and not g.is_zero() for g in self.elements)

    def reduce(self, p: Poly) -> Poly:
        terms = self._ring.encode(p)
        return self._ring.decode(kernels.normal_form(terms, self._index))

    def contains(self, p: Poly) -> bool:
        return self.reduce(p).is_zero()

    def dump(self) -> str:
        return "\n".join(str(g) for g in self.elements) + "\n"


def _Index(ring: Ring, elems=()):
    index = kernels.Reducers(ring.LO)
    for e in elems:
        index.add(e.lm, e.tail)
    return index


def _lcm(ring: Ring, x: Element, y: Element) -> int:
    b = x.b | y.b
    return (b << 1) | ((x.a | y.a) & ~b)


def _divides(a1, b1, a2, b2) -> bool:
    return not (a1 & ~a2) and not (b1 & ~b2)


def _masks(ring: Ring, key: int):
    b = (key >> 1) & ring.LO
    return (key & ring.LO) | b, b


def _spoly(ring: Ring, x: Element, y: Element) -> dict[int, int]:
    lcm = _lcm(ring, x, y)
    mx = lcm - x.lm
    my = lcm - y.lm
    mul = kernels.mono_mul
    LO = ring.LO
    out: dict[int, int] = {}
    for k, c in x.tail:
        kk = mul(mx, k, LO)
        out[kk] = (out.get(kk, 0) + c) % 3
    for k, c in y.tail:
        kk = mul(my, k, LO)
        out[kk] = (out.get(kk, 0) - c) % 3
    return {k: c for k, c in out.items() if c}


def _field_spoly(ring: Ring, x: Element, shift: int) -> dict[int, int]:
    e = (x.lm >> shift) & 3
    m = (3 - e) << shift
    mul = kernels.mono_mul
    out: dict[int, int] = {}
    for k, c in x.terms.items():
        kk = mul(m, k, ring.LO)
        out[kk] = (out.get(kk, 0) + c) % 3
    return {k: c for k, c in out.items() if c}


def _lm_shifts(lm: int):
    s = 0
    while lm:
        if lm & 3:
            yield s
        lm >>= 2
        s += 2


def buchberger(polys: Sequence[Poly], order: MonomialOrder) -> GroebnerBasis:
    """Reduced Gröbner basis of ⟨polys⟩ + field equations under ``order``."""
    ring = Ring(order)
    LO = ring.LO
    G: list[Element] = []
    alive: list[bool] = []
    index = _Index(ring)
    pairs: list = []   # heap of (degree, lcm, i, j); j = -1 - shift for field pairs
    stats = {"pairs": 0, "reductions": 0, "zero": 0}

    def insert(terms):
        e = Element(ring, terms)
        h = len(G)
        # Gebauer-Moeller update
        cand = {}
        for i, g in enumerate(G):
            if not alive[i]:
                continue
            lcm = _lcm(ring, g, e)
            cand.setdefault(lcm, []).append(i)
        keep = []
        for lcm in sorted(cand, key=lambda k: (ring.degree(k), k)):
            la, lb = _masks(ring, lcm)
            if any(_divides(*_masks(ring, l2), la, lb) for l2 in keep):
                continue
            keep.append(lcm)
        new_pairs = []
        for lcm in keep:
            ids = cand[lcm]
            if any(not (G[i].a & e.a) for i in ids):
                continue  # coprime leading monomials
            new_pairs.append((ring.degree(lcm), lcm, min(ids), h))
        # drop old pairs whose lcm is strictly divisible by LM(e)
        survivors = []
        for deg, lcm, i, j in pairs:
            if j >= 0:
                la, lb = _masks(ring, lcm)
                if _divides(e.a, e.b, la, lb):
                    l1 = _lcm(ring, G[i], e)
                    l2 = _lcm(ring, G[j], e)
                    if l1 != lcm and l2 != lcm:
                        continue
            survivors.append((deg, lcm, i, j))
        if len(survivors) != len(pairs):
            pairs[:] = survivors
            heapq.heapify(pairs)
        for p in new_pairs:
            heapq.heappush(pairs, p)
        for s in _lm_shifts(e.lm):
            lex = e.lm | (3 << s)
            heapq.heappush(pairs, (ring.degree(e.lm) + 3 - ((e.lm >> s) & 3), lex, h, -1 - s))
        # retire elements made redundant as reducers
        for i, g in enumerate(G):
            if alive[i] and _divides(e.a, e.b, g.a, g.b):
                alive[i] = False
                index.remove(g.lm)
        G.append(e)
        alive.append(True)
        index.add(e.lm, e.tail)

    inputs = []
    for p in polys:
        t = ring.encode(p)
        if t:
            inputs.append(t)
    inputs.sort(key=lambda t: max(t))
    for t in inputs:
        r = kernels.normal_form(t, index)
        stats["reductions"] += 1
        if r:
            if max(r) == 0:
                return GroebnerBasis(order, [Poly.const(1)], stats)
            insert(r)

    while pairs:
        deg, lcm, i, j = heapq.heappop(pairs)
        stats["pairs"] += 1
        if j < 0:
            if not alive[i] and False:
                continue
            s = _field_spoly(ring, G[i], -1 - j)
        else:
            s = _spoly(ring, G[i], G[j])
        r = kernels.normal_form(s, index)
        stats["reductions"] += 1
        if not r:
            stats["zero"] += 1
            continue
        if max(r) == 0:
            return GroebnerBasis(order, [Poly.const(1)], stats)
        insert(r)

    basis = [g for g, ok in zip(G, alive) if ok]
    basis = _interreduce(ring, basis)
    basis.sort(key=lambda e: e.lm)
    return GroebnerBasis(order, [ring.decode(e.terms) for e in basis], stats)


def _interreduce(ring: Ring, basis: list[Element]) -> list[Element]:
    basis = sorted(basis, key=lambda e: e.lm)
    out: list[Element] = []
    index = _Index(ring, basis)
    for e in basis:
        index.remove(e.lm)
        rest = kernels.normal_form(dict(e.tail), index)
        rest[e.lm] = 1
        ne = Element(ring, rest)
        index.add(ne.lm, ne.tail)
        out.append(ne)
    return out


# certification -------------------------------------------------------------------

def certify(gb: GroebnerBasis) -> bool:
    """Check every S-pair, including field-equation pairs, reduces to 0."""
    ring = gb._ring
    elems = gb._elems
    if gb.is_unit:
        return True
    for x, y in ((x, y) for i, x in enumerate(elems) for y in elems[i + 1:]):
        if not (x.a & y.a):
            # coprime leading monomials: product criterion, still verify cheaply
            pass
        s = _spoly(ring, x, y)
        if kernels.normal_form(s, gb._index):
            return False
    for x in elems:
        for s in _lm_shifts(x.lm):
            if kernels.normal_form(_field_spoly(ring, x, s), gb._index):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    ring = gb._ring
    for e in gb._elems:
        if e.terms[e.lm] != 1:
            return False
        for f in gb._elems:
            if f is e:
                continue
            for k in e.terms:
                if _divides(f.a, f.b, *_masks(ring, k)):
                    return False
    return True


# elimination and varieties -----------------------------------------------------------

def eliminate(gb: GroebnerBasis, keep: Iterable[int]) -> GroebnerBasis:
    """Basis elements supported on ``keep``; needs keep to be the smallest block."""
    keep = tuple(keep)
    tail = gb.order.variables[len(gb.order.variables) - len(keep):]
    if set(tail) != set(keep):
        raise WrongOrder("the kept variables must be the smallest block of the order")
    ks = set(keep)
    elems = [g for g in gb.elements if g.variables() <= ks]
    return GroebnerBasis(MonomialOrder.lex(tail), elems)


def enumerate_variety(gb: GroebnerBasis, variables: Sequence[int] | None = None) -> list[tuple[int, ...]]:
    """All F3 points, as tuples over ``variables`` (default: the order's, sorted).

    Variables are specialized from the smallest in the order upwards; the
    elements whose leading variable is the current one are then fully
    evaluated, so a dead branch is cut as soon as it appears.
    """
    order_vars = gb.order.variables
    if variables is None:
        variables = tuple(sorted(order_vars))
    if gb.is_unit:
        return []
    ring = gb._ring
    by_var: dict[int, list[Poly]] = {v: [] for v in order_vars}
    for g in gb.elements:
        e = Element(ring, ring.encode(g))
        lead = ring.var_at[e.lead_var]
        by_var[lead].append(_compile(g))
    seq = list(reversed(order_vars))
    assign: dict[int, int] = {}
    out = []

    def rec(k):
        if k == len(seq):
            out.append(tuple(assign[v] for v in variables))
            return
        v = seq[k]
        for val in (0, 1, 2):
            assign[v] = val
            if all(_eval(f, assign) == 0 for f in by_var[v]):
                rec(k + 1)
        del assign[v]

    rec(0)
    out.sort()
    return out


def _compile(p: Poly):
    return [(c, m) for m, c in p.terms.items()]


def _eval(f, assign) -> int:
    total = 0
    for c, m in f:
        t = c
        for v, e in m:
            t *= assign[v] ** e
            if not t:
                break
        total += t
    return total % 3


def point_decomposition(elim: GroebnerBasis) -> list[tuple[tuple[int, ...], list[Poly]]]:
    """Each variety point with its maximal ideal ⟨x_i - v_i⟩, variables in order."""
    variables = elim.order.variables
    for v in variables:
        sq = Poly.var(v) * Poly.var(v) - Poly.var(v)
        if not elim.contains(sq):
            raise ValueError(f"x{v}^2 - x{v} is not in the elimination ideal")
    out = []
    for pt in enumerate_variety(elim, variables):
        prime = [Poly.var(v) - c for v, c in zip(variables, pt)]
        out.append((pt, prime))
    return out


def intersect(ideals: Sequence[Sequence[Poly]], variables: Sequence[int]) -> GroebnerBasis:
    """Intersection of ideals (each containing the field equations implicitly).

    Uses I ∩ J = (t I + (1 - t) J) ∩ R with a fresh variable t eliminated.
    """
    variables = tuple(variables)
    order = MonomialOrder.lex(variables)
    acc = buchberger(list(ideals[0]), order)
    t = max(variables) + 1
    tv = Poly.var(t)
    for J in ideals[1:]:
        gens = [tv * f for f in acc.elements] + [(1 - tv) * g for g in J]
        gb = buchberger(gens, MonomialOrder.block((t,), variables))
        acc = GroebnerBasis(order, [g for g in gb.elements if t not in g.variables()])
    return acc


def brute_force_variety(polys: Sequence[Poly], variables: Sequence[int]) -> list[tuple[int, ...]]:
    """Reference variety by exhaustive evaluation, for small variable counts."""
    out = []
    for pt in product((0, 1, 2), repeat=len(variables)):
        assign = dict(zip(variables, pt))
        if all(p.eval(assign) == 0 for p in polys):
            out.append(pt)
    return out
