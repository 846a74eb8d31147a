"""Gauges: symmetric, subadditive assignments of a finite subset of X to pairs of W.

A :class:`Gauge` is evaluated on pairs. An :class:`InvariantGauge` is given by
a one-argument support function ``psi`` on a group and induces the
left-invariant gauge ``phi(w, w') = psi(w^-1 w')``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .errors import InputError
from .groups import FiniteGroup, GAction
from .walls import HalfSpace


@dataclass(frozen=True)
class Gauge:
    evaluate: Callable[[Hashable, Hashable], frozenset]
    left_invariant: bool = False
    equivariant: bool = False
    name: str = "gauge"

    def __call__(self, w, v) -> frozenset:
        return self.evaluate(w, v)


@dataclass(frozen=True)
class InvariantGauge:
    psi: Callable[[Hashable], frozenset]
    group: object
    equivariant: bool = False
    name: str = "invariant gauge"

    def __call__(self, w) -> frozenset:
        return self.psi(w)

    def as_gauge(self) -> Gauge:
        g, psi = self.group, self.psi
        return Gauge(lambda w, v: psi(g.mul(g.inv(w), v)), left_invariant=True,
                     equivariant=self.equivariant, name=self.name)


# ---------------------------------------------------------------------------
# W = H^X for a finite X, configurations stored densely

class ConfigurationGroup:
    """The direct sum H^X of copies of a finite group over ``X = {0..n-1}``."""

    def __init__(self, H: FiniteGroup, n: int):
        self.H = H
        self.n = n
        self.identity = (H.identity,) * n

    def mul(self, a, b):
        m = self.H.mul
        return tuple(m(x, y) for x, y in zip(a, b))

    def inv(self, a):
        return tuple(self.H.inv(x) for x in a)

    def sort_key(self, a):
        return a

    def elements(self):
        return itertools.product(range(self.H.order), repeat=self.n)

    def shift(self, action: GAction, g: int, w):
        """``(g.w)_{g.x} = w_x``."""
        out = [self.H.identity] * self.n
        p = action.perms[g]
        for x, h in enumerate(w):
            out[p[x]] = h
        return tuple(out)

    def support(self, w) -> frozenset:
        e = self.H.identity
        return frozenset(x for x, h in enumerate(w) if h != e)


def pair_gauge() -> Gauge:
    return Gauge(lambda w, v: frozenset((w, v)), name="pair")


def support_gauge(H: FiniteGroup, n: int) -> InvariantGauge:
    """``psi(w) = Supp(w)`` on H^X; left-invariant and shift-equivariant."""
    W = ConfigurationGroup(H, n)
    return InvariantGauge(W.support, W, equivariant=True, name="support")


def difference_gauge(H: FiniteGroup, n: int) -> Gauge:
    """``phi(w, w') = {x : w_x != w'_x}``, computed without group operations."""
    return Gauge(lambda w, v: frozenset(x for x in range(n) if w[x] != v[x]),
                 left_invariant=True, equivariant=True, name="difference")


# ---------------------------------------------------------------------------
# finitary permutations

class PermutationGroup:
    """Sym(n) with elements as image tuples and ``(p*q)(x) = p(q(x))``."""

    def __init__(self, n: int):
        self.n = n
        self.identity = tuple(range(n))

    def mul(self, p, q):
        return tuple(p[x] for x in q)

    def inv(self, p):
        out = [0] * self.n
        for x, px in enumerate(p):
            out[px] = x
        return tuple(out)

    def sort_key(self, p):
        return p


def perm_support_gauge(n: int) -> InvariantGauge:
    W = PermutationGroup(n)
    return InvariantGauge(lambda p: frozenset(x for x in range(n) if p[x] != x), W, name="permutation support")


# ---------------------------------------------------------------------------
# free products of finite groups

class FreeProduct:
    """Free product of finite groups; elements are normal forms
    ``((i1, h1), (i2, h2), ...)`` with nontrivial syllables and no repeated
    adjacent factor."""

    def __init__(self, factors: Sequence[FiniteGroup]):
        self.factors = list(factors)
        self.identity = ()

    def normalize(self, syllables: Iterable[tuple[int, int]]):
        out: list[tuple[int, int]] = []
        for i, h in syllables:
            if not 0 <= i < len(self.factors):
                raise InputError(f"no factor with index {i}")
            G = self.factors[i]
            if not 0 <= h < G.order:
                raise InputError(f"element {h} not in factor {i}")
            if out and out[-1][0] == i:
                h = G.mul(out.pop()[1], h)
            if h != G.identity:
                out.append((i, h))
        return tuple(out)

    def mul(self, a, b):
        return self.normalize(a + b)

    def inv(self, a):
        return tuple((i, self.factors[i].inv(h)) for i, h in reversed(a))

    def sort_key(self, a):
        return (len(a), a)

    def random(self, rng, syllables: int):
        out = []
        for _ in range(syllables):
            i = rng.randrange(len(self.factors))
            out.append((i, rng.randrange(self.factors[i].order)))
        return self.normalize(out)


def free_product_gauge(factors: Sequence[FiniteGroup]) -> InvariantGauge:
    W = FreeProduct(factors)
    return InvariantGauge(lambda w: frozenset(i for i, _ in W.normalize(w)), W, name="free product support")


# ---------------------------------------------------------------------------

def cut_pseudometric(a: HalfSpace, gauge: Gauge, y, y2) -> int:
    """1 if the half-space ``a`` cuts ``gauge(y, y2)``, else 0.

    Requires ``gauge(y, y)`` and ``gauge(y2, y2)`` to be singletons.
    """
    for z in (y, y2):
        if len(gauge(z, z)) != 1:
            raise InputError(f"gauge({z!r}, {z!r}) is not a singleton")
    inside = outside = False
    for x in gauge(y, y2):
        if a >> x & 1:
            inside = True
        else:
            outside = True
    return int(inside and outside)


@dataclass(frozen=True)
class GaugeViolation:
    kind: str
    points: tuple

    def __str__(self):
        return f"{self.kind} at {self.points}"


def check_gauge_axioms(gauge: Gauge, triples: Iterable[tuple]) -> list[GaugeViolation]:
    """Symmetry and subadditivity on the supplied triples."""
    report = []
    for u, v, w in triples:
        if gauge(u, v) != gauge(v, u):
            report.append(GaugeViolation("symmetry", (u, v)))
        if not gauge(u, w) <= gauge(u, v) | gauge(v, w):
            report.append(GaugeViolation("subadditivity", (u, v, w)))
    return report


def check_invariant_gauge_axioms(gauge: InvariantGauge, pairs: Iterable[tuple]) -> list[GaugeViolation]:
    """``psi(w) = psi(w^-1)`` and ``psi(ww') <= psi(w) | psi(w')`` on the supplied pairs."""
    g = gauge.group
    report = []
    for u, v in pairs:
        if gauge(u) != gauge(g.inv(u)):
            report.append(GaugeViolation("inverse symmetry", (u,)))
        if not gauge(g.mul(u, v)) <= gauge(u) | gauge(v):
            report.append(GaugeViolation("subadditivity", (u, v)))
    return report


def mask_support_gauge() -> Gauge:
    """Support gauge on (Z/2)^X with configurations encoded as bit masks."""
    def phi(w, v):
        d = w ^ v
        out = []
        x = 0
        while d:
            if d & 1:
                out.append(x)
            d >>= 1
            x += 1
        return frozenset(out)
    return Gauge(phi, left_invariant=True, equivariant=True, name="mask support")
