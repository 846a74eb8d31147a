"""Brute-force reference computations.

Nothing here imports the library's algorithms; everything is rebuilt from
definitions on small instances, with plain Python containers.
"""

from __future__ import annotations

import itertools
from collections import deque
from fractions import Fraction

import networkx as nx


# -- walls -------------------------------------------------------------------

def wall_distance(walls, x, y):
    """Walls given as (set_of_points, weight)."""
    return sum((w for a, w in walls if (x in a) != (y in a)), Fraction(0))


def cut_weight(walls, subset):
    subset = set(subset)
    return sum((w for a, w in walls if subset & a and subset - a), Fraction(0))


def walls_as_sets(mu):
    return [({x for x in range(mu.size) if m >> x & 1}, w) for m, w in mu.walls]


# -- trees -------------------------------------------------------------------

def tree_distances(n, edges):
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return dict(nx.all_pairs_shortest_path_length(g))


def covering_walk(n, edges, start, end, targets):
    """Shortest walk start -> end visiting all targets, by BFS over (vertex, visited subset)."""
    adj = {v: [] for v in range(n)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    targets = sorted(set(targets))
    bit = {t: 1 << i for i, t in enumerate(targets)}
    full = (1 << len(targets)) - 1
    s0 = (start, bit.get(start, 0))
    dist = {s0: 0}
    queue = deque([s0])
    while queue:
        v, seen = queue.popleft()
        if v == end and seen == full:
            return dist[v, seen]
        for u in adj[v]:
            st = (u, seen | bit.get(u, 0))
            if st not in dist:
                dist[st] = dist[v, seen] + 1
                queue.append(st)
    raise ValueError("unreachable")


# -- free groups and lamplighters -----------------------------------------------

def reduce_letters(letters):
    out = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def lamplighter_ball(radius, order=2, rank=2):
    """BFS in the Cayley graph of (Z/order) wr F_rank for generators
    {a, A, b, B, ...} (cursor moves) and {t, t^-1} (lamp at the cursor).

    Elements are (frozenset of (position, value)), cursor), positions as
    letter tuples. Returns {element: distance}.
    """
    moves = [x for i in range(1, rank + 1) for x in (i, -i)]
    lamp_steps = sorted({1 % order, (-1) % order})
    start = (frozenset(), ())
    dist = {start: 0}
    frontier = [start]
    for r in range(1, radius + 1):
        nxt = []
        for lamps, cursor in frontier:
            cands = [(lamps, reduce_letters(cursor + (m,))) for m in moves]
            current = dict(lamps)
            for s in lamp_steps:
                new = dict(current)
                v = (new.get(cursor, 0) + s) % order
                if v:
                    new[cursor] = v
                else:
                    new.pop(cursor, None)
                cands.append((frozenset(new.items()), cursor))
            for c in cands:
                if c not in dist:
                    dist[c] = r
                    nxt.append(c)
        frontier = nxt
    return dist


# -- lifted distance ---------------------------------------------------------------

def lift_distance(walls, w1, x1, w2, x2):
    """``walls`` as sets; configurations as dicts or tuples over the ground set."""
    if isinstance(w1, dict):
        diff = {y for y in set(w1) | set(w2) if w1.get(y, 0) != w2.get(y, 0)}
    else:
        diff = {y for y, (a, b) in enumerate(zip(w1, w2)) if a != b}
    return cut_weight(walls, diff | {x1, x2})


def combined_lamplighter(walls_x, walls_g, walls_h, n, order):
    """The kernel on (Z/order) wr Z/n with G = Z/n acting on X = Z/n.

    Elements are (tuple of lamp values, cursor); each summand is evaluated
    from its definition. ``walls_g`` or ``walls_h`` may be None.
    """
    elems = [(w, g) for g in range(n) for w in itertools.product(range(order), repeat=n)]

    def k(a, b):
        (wa, ga), (wb, gb) = a, b
        total = lift_distance(walls_x, wa, ga, wb, gb)
        if walls_g is not None:
            total += wall_distance(walls_g, ga, gb)
        if walls_h is not None:
            total += sum((wall_distance(walls_h, p, q) for p, q in zip(wa, wb)), Fraction(0))
        return total

    return elems, k


# -- groups --------------------------------------------------------------------

def compose(p, q):
    return tuple(p[x] for x in q)


def perm_inverse(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def generate_perms(gens):
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for s in gens:
                q = compose(p, s)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen
