"""The lifted walls structure on W x X.

Given walls ``mu`` on X and a gauge ``phi`` on W, the distance between the
points ``(w1, x1)`` and ``(w2, x2)`` of W x X is the mu-weight of the
half-spaces of X cutting ``phi(w1, w2) | {x1, x2}``. The lifted measure itself
lives on subsets of W x X and is only ever materialised on a finite window,
as a cross-check of that formula.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import InputError
from .gauges import ConfigurationGroup, Gauge
from .groups import FiniteGroup, GAction
from .walls import KernelTable, WallsStructure, mask_of, points_of

Point = tuple  # (w, x)


def lift_cut_set(phi: Gauge, p: Point, q: Point) -> int:
    return mask_of(phi(p[0], q[0])) | (1 << p[1]) | (1 << q[1])


def lift_distance(mu: WallsStructure, phi: Gauge, p: Point, q: Point) -> Fraction:
    return mu.cut_weight(lift_cut_set(phi, p, q))


@dataclass(frozen=True)
class LiftedWalls:
    mu: WallsStructure
    gauge: Gauge
    window: tuple = ()

    def distance(self, p: Point, q: Point) -> Fraction:
        return lift_distance(self.mu, self.gauge, p, q)

    def table(self, window: Sequence[Point] | None = None) -> KernelTable:
        window = list(self.window if window is None else window)
        n = len(window)
        m = np.empty((n, n), dtype=object)
        for i in range(n):
            m[i, i] = self.distance(window[i], window[i])
            for j in range(i + 1, n):
                m[i, j] = m[j, i] = self.distance(window[i], window[j])
        return KernelTable(m, tuple(window))

    def explicit(self, window: Sequence[Point] | None = None) -> WallsStructure:
        return lift_walls_explicit(self.mu, self.gauge, self.window if window is None else window)


def _zero_classes(n: int, related: Callable[[int, int], bool]) -> list[list[int]]:
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if related(i, j):
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[rj] = ri
    classes: dict[int, list[int]] = {}
    for i in range(n):
        classes.setdefault(find(i), []).append(i)
    return list(classes.values())


def lift_walls_explicit(mu: WallsStructure, phi: Gauge, window: Sequence[Point]) -> WallsStructure:
    """Materialise the lifted measure on a finite window.

    Each wall ``(A, m)`` of ``mu`` partitions the window into the classes of
    ``d_A = 0`` (``d_A(p, q) = 1`` iff A cuts ``phi'(p, q)``); every class is
    emitted as a half-space of weight ``m/2``.
    """
    window = list(dict.fromkeys(window))
    n = len(window)
    cut_sets = {}
    for i in range(n):
        for j in range(i + 1, n):
            cut_sets[i, j] = lift_cut_set(phi, window[i], window[j])
    walls = []
    for a, m in mu.walls:
        classes = _zero_classes(n, lambda i, j: not (cut_sets[i, j] & a and cut_sets[i, j] & ~a))
        for cls in classes:
            walls.append((mask_of(cls), m / 2))
    return WallsStructure.collect(n, walls, window)


# ---------------------------------------------------------------------------
# semidirect products W x| G acting on W x X

class Semidirect:
    """``W x| G`` for W = H^X with G acting on X; elements are pairs ``(w, g)``."""

    def __init__(self, W: ConfigurationGroup, action: GAction):
        self.W = W
        self.G = action.group
        self.action = action
        self.identity = (W.identity, self.G.identity)

    def mul(self, a, b):
        v, g = a
        w, h = b
        return (self.W.mul(v, self.W.shift(self.action, g, w)), self.G.mul(g, h))

    def inv(self, a):
        v, g = a
        gi = self.G.inv(g)
        return (self.W.shift(self.action, gi, self.W.inv(v)), gi)

    def sort_key(self, a):
        return a

    def elements(self):
        return itertools.product(self.W.elements(), self.G.elements)

    def act(self, s, p: Point) -> Point:
        """``vg . (w, x) = (v (g.w), g.x)``."""
        v, g = s
        w, x = p
        return (self.W.mul(v, self.W.shift(self.action, g, w)), self.action.act(g, x))


@dataclass(frozen=True)
class EquivarianceViolation:
    element: object
    p: Point
    q: Point
    before: Fraction
    after: Fraction


def check_lift_equivariance(mu: WallsStructure, phi: Gauge, act: Callable, elements: Iterable,
                            window: Sequence[Point]) -> list[EquivarianceViolation]:
    """Compare ``d(s.p, s.q)`` with ``d(p, q)`` for every element and every window pair."""
    window = list(window)
    base = {}
    for i, p in enumerate(window):
        for q in window[i:]:
            base[p, q] = lift_distance(mu, phi, p, q)
    report = []
    for s in elements:
        for (p, q), d in base.items():
            d2 = lift_distance(mu, phi, act(s, p), act(s, q))
            if d2 != d:
                report.append(EquivarianceViolation(s, p, q, d, d2))
    return report


# -- the lamplighter case, vectorised ------------------------------------------

def lamplighter_lift_table(mu: WallsStructure) -> np.ndarray:
    """Lifted distances on (Z/2)^X x X for the support gauge, X = ground set of ``mu``.

    Point ``(w, x)`` (``w`` a bit mask) has index ``w * n + x``. Entries are
    integers over the common denominator returned by ``mu.scaled_weights()``.
    """
    n = mu.size
    _, den = mu.scaled_weights()
    cut_value = np.zeros(1 << n, dtype=np.int64)
    for f in range(1 << n):
        cut_value[f] = int(mu.cut_weight(f) * den)
    idx = np.arange((1 << n) * n)
    w = idx // n
    xbit = 1 << (idx % n)
    f = (w[:, None] ^ w[None, :]) | xbit[:, None] | xbit[None, :]
    # the narrowest integer type keeps the exhaustive comparisons cheap
    return cut_value.astype(np.min_scalar_type(int(cut_value.max())))[f]


def lamplighter_images(action: GAction) -> list[tuple[tuple[int, int], np.ndarray]]:
    """For every element ``(v, g)`` of (Z/2)^X x| G, the permutation it induces on point indices."""
    n = action.size
    idx = np.arange((1 << n) * n)
    w = idx // n
    x = idx % n
    out = []
    for g in action.group.elements:
        shifted = np.array([action.act_mask(g, m) for m in range(1 << n)], dtype=np.int64)
        gx = np.array(action.perms[g], dtype=np.int64)[x]
        gw = shifted[w]
        for v in range(1 << n):
            out.append(((v, g), (v ^ gw) * n + gx))
    return out


def check_lamplighter_equivariance(mu: WallsStructure, action: GAction) -> list[tuple[int, int]]:
    """Exhaustive invariance of the lifted distance under all of (Z/2)^X x| G.

    Returns the elements ``(v, g)`` that move some distance.
    """
    table = lamplighter_lift_table(mu)
    bad = []
    for s, img in lamplighter_images(action):
        if not np.array_equal(table[np.ix_(img, img)], table):
            bad.append(s)
    return bad


# ---------------------------------------------------------------------------
# uniformity, boundedness, properness

@dataclass(frozen=True)
class UniformityRow:
    p: Point
    q: Point
    sup: Fraction
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.sup <= self.bound


def check_lift_uniformity(mu: WallsStructure, phi: Gauge, act: Callable, act_x: Callable,
                          elements: Sequence, pairs: Iterable[tuple[Point, Point]]) -> list[UniformityRow]:
    """For each pair, the sup over ``elements`` of ``d(g.p, g.q)`` against
    ``sum_{y,z in F} sup_g d_mu(gy, gz)`` with ``F = phi(w, w') | {x, x'}``."""
    elements = list(elements)
    rows = []
    for p, q in pairs:
        sup = max(lift_distance(mu, phi, act(g, p), act(g, q)) for g in elements)
        F = set(phi(p[0], q[0])) | {p[1], q[1]}
        bound = Fraction(0)
        for y in F:
            for z in F:
                bound += max(mu.distance(act_x(g, y), act_x(g, z)) for g in elements)
        rows.append(UniformityRow(p, q, sup, bound))
    return rows


def closed_ball(mu: WallsStructure, center: int, radius) -> frozenset[int]:
    return frozenset(y for y in range(mu.size) if mu.distance(center, y) <= radius)


@dataclass(frozen=True)
class BoundednessCertificate:
    ball: frozenset[int]
    within_radius: bool
    contained: bool
    converse_bound: Fraction
    converse_max: Fraction
    violations: tuple = field(default=())

    @property
    def ok(self) -> bool:
        return self.within_radius and self.contained and self.converse_max <= self.converse_bound


def bounded_set_analysis(mu: WallsStructure, phi: Gauge, E: Iterable[Point], center: Point, r,
                         window: Iterable[Point] | None = None) -> BoundednessCertificate:
    """Replay the boundedness/properness argument on a finite set.

    Every point of ``E`` within lifted distance ``r`` of ``center = (w', x')``
    must lie in ``{w : phi(w, w') <= B} x B`` for ``B`` the closed ``d_mu``-ball of
    radius ``r`` around ``x'``. Conversely every point of ``window`` in that
    product set is within ``n * r`` of the center, ``n = |B|``.
    """
    r = Fraction(r)
    E = list(E)
    w0, x0 = center
    B = closed_ball(mu, x0, r)
    within = all(lift_distance(mu, phi, p, center) <= r for p in E)
    bad = tuple(p for p in E if not (set(phi(p[0], w0)) | {p[1]}) <= B)
    window = E if window is None else list(window)
    inside = [p for p in window if (set(phi(p[0], w0)) | {p[1]}) <= B]
    bound = len(B) * r
    worst = max((lift_distance(mu, phi, p, center) for p in inside), default=Fraction(0))
    return BoundednessCertificate(B, within, not bad, bound, worst, bad)


def proper_sum_kernel(mu: WallsStructure, phi: Gauge, u: Callable, window: Sequence[Point]) -> KernelTable:
    """``d_lift(p, q) + u(w_p, w_q)`` on the window."""
    window = list(window)
    n = len(window)
    m = np.empty((n, n), dtype=object)
    for i in range(n):
        for j in range(i, n):
            p, q = window[i], window[j]
            m[i, j] = m[j, i] = lift_distance(mu, phi, p, q) + Fraction(u(p[0], q[0]))
    return KernelTable(m, tuple(window))


def sublevel_candidates(mu: WallsStructure, phi: Gauge, u: Callable, center: Point, R,
                        W_elements: Iterable, ) -> list[Point]:
    """Points within ``R`` of ``center`` for ``d_lift + u``, found without scanning W x X.

    Candidates are restricted to ``{w : phi(w, w0) <= B, u(w0, w) <= R} x B`` with
    ``B`` the closed ``d_mu``-ball of radius ``R`` around ``x0``; the survivors are
    then filtered by the exact kernel value.
    """
    R = Fraction(R)
    w0, x0 = center
    B = closed_ball(mu, x0, R)
    out = []
    for w in W_elements:
        if not set(phi(w, w0)) <= B or u(w0, w) > R:
            continue
        for x in sorted(B):
            if lift_distance(mu, phi, (w, x), center) + u(w0, w) <= R:
                out.append((w, x))
    return out


# ---------------------------------------------------------------------------
# controlled sets

def controlled_check(E: Iterable[tuple], group) -> tuple[bool, frozenset]:
    """Difference set ``{g^-1 h : (g, h) in E}``; a finite E is always controlled."""
    diffs = frozenset(group.mul(group.inv(g), h) for g, h in E)
    return True, diffs


def hull_controlled_check(mu: WallsStructure, phi: Gauge, E: Iterable[tuple[Point, Point]], R=None) -> bool:
    """Every pair drawn from ``phi(w, w') | {x, x'}`` over E is within ``R`` for ``d_mu``,
    ``R`` defaulting to the largest lifted distance over E."""
    E = list(E)
    if R is None:
        R = max((lift_distance(mu, phi, p, q) for p, q in E), default=Fraction(0))
    for p, q in E:
        F = sorted(set(phi(p[0], q[0])) | {p[1], q[1]})
        for i, a in enumerate(F):
            for b in F[i + 1:]:
                if mu.distance(a, b) > R:
                    return False
    return True


def check_hypothesis_H(S: Semidirect, C: Iterable[tuple[int, int]], u: Callable, R) -> tuple[frozenset, frozenset]:
    """Replay, on a finite W x| G with G acting regularly on X = G, the argument that
    ``{(vg, wh) : (Supp(v^-1 w) | {g, h})^2 <= C, u(v, w) <= R}`` is controlled.

    ``C`` is first made symmetric and invariant under the diagonal action. Returns
    the difference set of that pair set and the finite set ``F'' F'`` which must
    contain it.
    """
    G = S.G
    C = set(C)
    C |= {(b, a) for a, b in C}
    C = {(G.mul(g, a), G.mul(g, b)) for g in G.elements for a, b in C}
    F1 = {G.mul(G.inv(a), b) for a, b in C}
    W = S.W
    Ws = list(W.elements())
    F2 = {W.mul(W.inv(s), t) for s in Ws for t in Ws
          if W.support(W.mul(W.inv(s), t)) <= F1 and u(s, t) <= R}
    diffs = set()
    for v, g in S.elements():
        for w, h in S.elements():
            pts = W.support(W.mul(W.inv(v), w)) | {g, h}
            if u(v, w) > R or any((a, b) not in C for a in pts for b in pts):
                continue
            diffs.add(S.mul(S.inv((v, g)), (w, h)))
    envelope = {(f2, f1) for f2 in F2 for f1 in F1}
    return frozenset(diffs), frozenset(envelope)


# ---------------------------------------------------------------------------

def star_lamp_diameter(rank: int) -> Fraction:
    """Largest lifted distance from ``(0, 1)`` over ``{w : Supp(w) <= B(1, 1)} x {1}``.

    X is the radius-1 ball of the Cayley tree of the free group of the given
    rank (a star with 2*rank leaves, centre 0) with its edge walls; W is
    (Z/2)^X with the support gauge. As the rank grows this set stays inside a
    ball of radius 1 of X but its lifted diameter grows without bound.
    """
    from .gauges import mask_support_gauge
    from .trees import Tree, tree_to_walls

    mu = tree_to_walls(Tree.star(2 * rank))
    phi = mask_support_gauge()
    best = Fraction(0)
    for w in range(1 << mu.size):
        best = max(best, lift_distance(mu, phi, (w, 0), (0, 0)))
    return best


__all__ = [
    "BoundednessCertificate", "EquivarianceViolation", "LiftedWalls", "Semidirect", "UniformityRow",
    "bounded_set_analysis", "check_hypothesis_H", "check_lamplighter_equivariance", "check_lift_equivariance",
    "check_lift_uniformity", "closed_ball", "controlled_check", "hull_controlled_check",
    "lamplighter_images", "lamplighter_lift_table", "lift_cut_set", "lift_distance", "lift_walls_explicit",
    "proper_sum_kernel", "star_lamp_diameter", "sublevel_candidates",
]
