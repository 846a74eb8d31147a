"""Hecke pairs on finite groups: orbit test, the double-coset kernel, the
coset graph, and recovering the orbit test from an invariant proper kernel.

A pair (G, H) is a Hecke pair when every H-orbit on G/H is finite. On finite
groups that is automatic; the constructions below are still computed and
cross-checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import networkx as nx
import numpy as np

from .errors import InputError
from .groups import CosetSpace, FiniteGroup, left_cosets
from .walls import KernelTable


@dataclass(frozen=True)
class HeckePairReport:
    orbits: tuple[tuple[int, ...], ...]
    verdict: bool
    witnesses: tuple = ()
    radius: int | None = None

    @property
    def orbit_sizes(self) -> list[int]:
        return sorted(len(o) for o in self.orbits)

    def to_text(self) -> str:
        lines = [f"cosets={sum(len(o) for o in self.orbits)}", f"orbits={len(self.orbits)}",
                 "orbit_sizes=" + ",".join(map(str, self.orbit_sizes)),
                 f"hecke={'yes' if self.verdict else 'no'}"]
        if self.radius is not None:
            lines.append(f"radius={self.radius}")
        return "\n".join(lines) + "\n"


def hecke_check(G: FiniteGroup, H: Iterable[int]) -> HeckePairReport:
    """Orbits of H acting on G/H by left multiplication."""
    H = sorted(set(H))
    cosets = left_cosets(G, H)
    seen = [False] * len(cosets)
    orbits = []
    for i in range(len(cosets)):
        if seen[i]:
            continue
        g = cosets.representative(i)
        orbit = sorted({cosets.index_of(G.mul(h, g)) for h in H})
        for j in orbit:
            seen[j] = True
        orbits.append(tuple(orbit))
    return HeckePairReport(tuple(orbits), True)


def double_coset(G: FiniteGroup, H: Sequence[int], g: int) -> frozenset[int]:
    return frozenset(G.mul(G.mul(a, g), b) for a in H for b in H)


def symmetrized(G: FiniteGroup, f: Sequence) -> list:
    """``f`` itself when ``f(g) = f(g^-1)``, otherwise ``f + f o inv``."""
    if all(f[g] == f[G.inv(g)] for g in G.elements):
        return list(f)
    return [f[g] + f[G.inv(g)] for g in G.elements]


def hecke_kernel(G: FiniteGroup, H: Iterable[int], f: Sequence | Callable | None = None,
                 gens: Sequence[int] | None = None) -> KernelTable:
    """``K(gH, g'H) = k(g^-1 g')`` with ``k(g) = min f`` over ``HgH``.

    ``f`` defaults to word length with respect to ``gens``.
    """
    H = sorted(set(H))
    if f is None:
        if gens is None:
            raise InputError("need either f or a generating set")
        f = G.word_lengths(gens)
        if -1 in f:
            raise InputError("the given elements do not generate G")
    elif callable(f):
        f = [f(g) for g in G.elements]
    f = symmetrized(G, f)
    cosets = left_cosets(G, H)
    k = [min(f[x] for x in double_coset(G, H, g)) for g in G.elements]
    n = len(cosets)
    m = np.empty((n, n), dtype=object)
    for i in range(n):
        gi = G.inv(cosets.representative(i))
        for j in range(n):
            m[i, j] = k[G.mul(gi, cosets.representative(j))]
    return KernelTable(m, tuple(cosets.cosets))


def kernel_invariance_failures(K: KernelTable, G: FiniteGroup, cosets: CosetSpace) -> list[tuple[int, int, int]]:
    """Triples ``(x, i, j)`` with ``K(x.i, x.j) != K(i, j)``."""
    act = cosets.action()
    m = K.matrix
    bad = []
    for x in G.elements:
        p = np.array(act.perms[x])
        moved = m[np.ix_(p, p)]
        if not np.array_equal(moved, m):
            for i, j in zip(*np.nonzero(moved != m)):
                bad.append((x, int(i), int(j)))
    return bad


def sublevel_matches_double_cosets(K: KernelTable, G: FiniteGroup, H: Sequence[int], f: Sequence,
                                   cosets: CosetSpace) -> bool:
    """For every R, ``{gH : K(H, gH) <= R}`` is exactly the set of cosets meeting ``H F_R H``
    where ``F_R = {f <= R}``."""
    f = symmetrized(G, f)
    base = cosets.index_of(G.identity)
    for R in sorted(set(f)):
        F = [g for g in G.elements if f[g] <= R]
        via_cosets = {cosets.index_of(G.mul(G.mul(a, g), b)) for g in F for a in H for b in H}
        if set(K.sublevel(base, R)) != via_cosets:
            return False
    return True


def coset_graph(G: FiniteGroup, H: Iterable[int], S: Sequence[int]) -> nx.Graph:
    """Join ``gH`` and ``g'H`` when ``g'H`` lies in ``gHsH`` for some ``s`` in S."""
    S = list(S)
    if {G.inv(s) for s in S} != set(S):
        raise InputError("generating set must be closed under inverses")
    H = sorted(set(H))
    cosets = left_cosets(G, H)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(cosets)))
    for i in range(len(cosets)):
        g = cosets.representative(i)
        for h in H:
            for s in S:
                j = cosets.index_of(G.mul(G.mul(g, h), s))
                if j != i:
                    graph.add_edge(i, j)
    return graph


def graph_kernel(graph: nx.Graph) -> KernelTable:
    n = graph.number_of_nodes()
    m = np.empty((n, n), dtype=object)
    lengths = dict(nx.all_pairs_shortest_path_length(graph))
    for i in range(n):
        for j in range(n):
            if j not in lengths[i]:
                raise InputError("coset graph is not connected")
            m[i, j] = lengths[i][j]
    return KernelTable(m)


def expected_degrees(G: FiniteGroup, H: Sequence[int], S: Sequence[int], cosets: CosetSpace) -> list[int]:
    """Number of cosets inside ``union_s gHsH``, minus ``gH`` itself."""
    out = []
    for i in range(len(cosets)):
        g = cosets.representative(i)
        reach = {cosets.index_of(G.mul(g, x)) for s in S for x in double_coset(G, H, s)}
        reach.discard(i)
        out.append(len(reach))
    return out


@dataclass(frozen=True)
class KernelVerdict:
    proper: bool
    orbits_in_spheres: bool
    reasons: tuple = field(default=())

    @property
    def verdict(self) -> bool:
        return self.proper and self.orbits_in_spheres


def kernel_to_hecke_verdict(kernel: Callable[[Hashable, Hashable], object], windows: Sequence[Sequence],
                            base: Hashable, stabilizer: Iterable[Callable[[Hashable], Hashable]],
                            radii: Iterable | None = None) -> KernelVerdict:
    """Recover the Hecke property from an invariant kernel on G/H.

    ``windows`` are nested finite sets of cosets; a single window is taken to
    be the whole (finite) coset space. The kernel counts as proper when every
    sub-level set around ``base`` has the same size in the last two windows.
    Each H-orbit ``{h.x}`` must then sit in the sphere ``K(base, .) = K(base, x)``,
    which bounds it by a finite ball.
    """
    windows = [list(w) for w in windows]
    if not windows or not windows[-1]:
        raise InputError("need at least one nonempty window")
    stabilizer = list(stabilizer)
    last = windows[-1]
    if radii is None:
        radii = sorted({kernel(base, x) for x in windows[0]})
    reasons = []
    proper = True
    if len(windows) > 1:
        prev = windows[-2]
        for R in radii:
            a = sum(1 for x in prev if kernel(base, x) <= R)
            b = sum(1 for x in last if kernel(base, x) <= R)
            if a != b:
                proper = False
                reasons.append(f"ball of radius {R} keeps growing ({a} -> {b})")
                break
    inside = True
    known = set(last)
    for x in windows[0]:
        r = kernel(base, x)
        for h in stabilizer:
            y = h(x)
            if y in known and kernel(base, y) != r:
                inside = False
                reasons.append(f"orbit of {x!r} leaves its sphere")
                break
        if not inside:
            break
    return KernelVerdict(proper, inside, tuple(reasons))


@dataclass(frozen=True)
class HeckeCycle:
    """All the constructions for one finite pair, and whether they agree."""

    report: HeckePairReport
    graph_connected: bool
    degrees_match: bool
    graph_verdict: KernelVerdict
    kernel_verdict: KernelVerdict
    invariance_failures: int
    sublevels_match: bool

    @property
    def consistent(self) -> bool:
        return (self.report.verdict and self.graph_connected and self.degrees_match
                and self.graph_verdict.verdict and self.kernel_verdict.verdict
                and self.invariance_failures == 0 and self.sublevels_match)


def hecke_cycle(G: FiniteGroup, H: Iterable[int], S: Sequence[int]) -> HeckeCycle:
    H = sorted(set(H))
    S = sorted(set(S) | {G.inv(s) for s in S})
    cosets = left_cosets(G, H)
    report = hecke_check(G, H)
    graph = coset_graph(G, H, S)
    connected = nx.is_connected(graph)
    degrees = [graph.degree(i) for i in range(len(cosets))]
    act = cosets.action()
    base = cosets.index_of(G.identity)
    stab = [lambda x, h=h: act.act(h, x) for h in H]
    dist = graph_kernel(graph) if connected else None
    if dist is None:
        g_verdict = KernelVerdict(False, False, ("coset graph is disconnected",))
    else:
        g_verdict = kernel_to_hecke_verdict(dist, [range(len(cosets))], base, stab)
    f = G.word_lengths(S)
    K = hecke_kernel(G, H, f)
    k_verdict = kernel_to_hecke_verdict(K, [range(len(cosets))], base, stab)
    failures = kernel_invariance_failures(K, G, cosets)
    if dist is not None:
        failures += kernel_invariance_failures(dist, G, cosets)
    return HeckeCycle(report, connected, degrees == expected_degrees(G, H, S, cosets), g_verdict, k_verdict,
                      len(failures), sublevel_matches_double_cosets(K, G, H, f, cosets))


__all__ = [
    "HeckeCycle", "HeckePairReport", "KernelVerdict", "coset_graph", "double_coset", "expected_degrees",
    "graph_kernel", "hecke_check", "hecke_cycle", "hecke_kernel", "kernel_invariance_failures",
    "kernel_to_hecke_verdict", "sublevel_matches_double_cosets", "symmetrized",
]
