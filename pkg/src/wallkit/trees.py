"""Trees as wall spaces: edge walls, Steiner hulls, covering loops and the
length of the shortest walk covering a vertex set.

The same questions are answered for the Cayley tree of a free group directly
from reduced words, without materialising the tree.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError
from .groups import FreeWord
from .walls import WallsStructure

HALF = Fraction(1, 2)


class Tree:
    """A finite tree on vertices ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], root: int | None = None):
        edges = [tuple(sorted((int(u), int(v)))) for u, v in edges]
        if n < 1:
            raise InputError("a tree needs at least one vertex")
        if len(edges) != n - 1:
            raise InputError(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n) or u == v:
                raise InputError(f"bad edge ({u}, {v})")
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self.edges = tuple(sorted(set(edges)))
        if len(self.edges) != len(edges):
            raise InputError("repeated edge")
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.root = 0 if root is None else root
        if -1 in self.bfs(self.root):
            raise InputError("graph is not connected")

    def bfs(self, src: int) -> list[int]:
        dist = [-1] * self.n
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return dist

    def distance(self, u: int, v: int) -> int:
        return self.bfs(u)[v]

    def rooted(self, root: int) -> tuple[list[int], list[int]]:
        """Parent array and a preorder listing, rooted at ``root``."""
        parent = [-1] * self.n
        order = [root]
        seen = [False] * self.n
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    parent[v] = u
                    order.append(v)
                    stack.append(v)
        return parent, order

    def to_text(self) -> str:
        return "\n".join([str(self.n)] + [f"{u} {v}" for u, v in self.edges]) + "\n"

    @classmethod
    def from_text(cls, text: str) -> Tree:
        rows = [(i + 1, line.split()) for i, line in enumerate(text.splitlines()) if line.strip()]
        if not rows:
            raise InputError("empty tree file", line=1)
        try:
            n = int(rows[0][1][0])
        except ValueError:
            raise InputError("first line must be the vertex count", line=rows[0][0]) from None
        edges = []
        for lineno, parts in rows[1:]:
            if len(parts) != 2:
                raise InputError("expected 'u v'", line=lineno)
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise InputError("vertices must be integers", line=lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"vertex out of range 0..{n - 1}", line=lineno)
            edges.append((u, v))
        return cls(n, edges)

    @classmethod
    def load(cls, path) -> Tree:
        with open(path) as fh:
            return cls.from_text(fh.read())

    @classmethod
    def random(cls, n: int, rng: random.Random) -> Tree:
        """Uniformly random labelled tree via a Pruefer sequence."""
        if n == 1:
            return cls(1, [])
        if n == 2:
            return cls(2, [(0, 1)])
        seq = [rng.randrange(n) for _ in range(n - 2)]
        degree = [1] * n
        for x in seq:
            degree[x] += 1
        edges = []
        for x in seq:
            leaf = min(i for i in range(n) if degree[i] == 1)
            edges.append((leaf, x))
            degree[leaf] -= 1
            degree[x] -= 1
        u, v = [i for i in range(n) if degree[i] == 1]
        edges.append((u, v))
        return cls(n, edges)

    @classmethod
    def path(cls, n: int) -> Tree:
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def star(cls, leaves: int) -> Tree:
        return cls(leaves + 1, [(0, i) for i in range(1, leaves + 1)])

    def __repr__(self):
        return f"Tree(n={self.n}, edges={list(self.edges)})"


def _side_masks(T: Tree) -> list[tuple[tuple[int, int], int]]:
    """For each edge, the vertex mask of the side away from the root."""
    parent, order = T.rooted(T.root)
    below = [1 << v for v in range(T.n)]
    for v in reversed(order):
        if parent[v] >= 0:
            below[parent[v]] |= below[v]
    return [(tuple(sorted((parent[v], v))), below[v]) for v in order if parent[v] >= 0]


def tree_to_walls(T: Tree) -> WallsStructure:
    """Both sides of every edge, each with weight 1/2."""
    full = (1 << T.n) - 1
    walls = []
    for _, side in _side_masks(T):
        walls += [(side, HALF), (full ^ side, HALF)]
    return WallsStructure(T.n, walls)


@dataclass(frozen=True)
class SubtreeHull:
    edges: frozenset[tuple[int, int]]
    terminals: frozenset[int]

    def __len__(self):
        return len(self.edges)


def hull_edges(T: Tree, S: Iterable[int]) -> SubtreeHull:
    """Edges of the smallest subtree containing ``S``."""
    S = frozenset(S)
    if not S:
        raise InputError("hull of the empty set")
    root = min(S)
    parent, order = T.rooted(root)
    count = [0] * T.n
    for v in S:
        count[v] = 1
    for v in reversed(order):
        if parent[v] >= 0:
            count[parent[v]] += count[v]
    # root is a terminal, so an edge separates S iff its lower side holds one
    edges = frozenset(tuple(sorted((parent[v], v))) for v in order if parent[v] >= 0 and count[v] > 0)
    return SubtreeHull(edges, S)


def covering_loop(T: Tree, base: int) -> list[int]:
    """Closed walk (vertex sequence) from ``base`` of length 2*|edges| crossing every edge twice."""
    if not 0 <= base < T.n:
        raise InputError("base vertex not in tree")
    walk = [base]
    seen = {base}
    stack = [(base, iter(T.adj[base]))]
    while stack:
        u, it = stack[-1]
        for v in it:
            if v not in seen:
                seen.add(v)
                walk.append(v)
                stack.append((v, iter(T.adj[v])))
                break
        else:
            stack.pop()
            if stack:
                walk.append(stack[-1][0])
    return walk


def cover_walk_length(T: Tree, start: int, end: int, S: Iterable[int]) -> int:
    """Length of the shortest walk from ``start`` to ``end`` visiting every vertex of ``S``.

    Every hull edge off the start-end geodesic is crossed at least twice and
    each geodesic edge at least once; a depth-first walk attains this.
    """
    hull = hull_edges(T, set(S) | {start, end})
    return 2 * len(hull) - T.distance(start, end)


# ---------------------------------------------------------------------------
# the Cayley tree of a free group, from reduced words

def _common_prefix(words: Sequence[FreeWord]) -> int:
    first = words[0].letters
    k = len(first)
    for w in words[1:]:
        letters = w.letters
        i = 0
        m = min(k, len(letters))
        while i < m and letters[i] == first[i]:
            i += 1
        k = i
        if k == 0:
            break
    return k


def word_hull_vertices(words: Iterable[FreeWord]) -> set[tuple[int, ...]]:
    """Vertices (as letter tuples) of the subtree spanned by ``words`` in the Cayley tree."""
    words = list(words)
    if not words:
        raise InputError("hull of the empty set")
    stem = _common_prefix(words)
    verts = set()
    for w in words:
        letters = w.letters
        for i in range(stem, len(letters) + 1):
            verts.add(letters[:i])
    return verts


def word_hull_size(words: Iterable[FreeWord]) -> int:
    """Number of Cayley-tree edges in the hull of ``words``."""
    return len(word_hull_vertices(words)) - 1


def word_cover_walk_length(start: FreeWord, end: FreeWord, S: Iterable[FreeWord]) -> int:
    """Shortest covering walk in the Cayley tree, via the hull closed form."""
    hull = word_hull_size([start, end, *S])
    return 2 * hull - len(start.inverse() * end)


def spanned_tree(words: Iterable[FreeWord]) -> tuple[Tree, list[FreeWord]]:
    """Materialise the hull of ``words`` (plus the identity) as an explicit Tree.

    Returns the tree and the word labelling each vertex (vertex 0 is the identity).
    """
    verts = word_hull_vertices(list(words) + [FreeWord(())])
    labels = sorted(verts, key=lambda t: (len(t), t))
    index = {t: i for i, t in enumerate(labels)}
    edges = [(index[t[:-1]], index[t]) for t in labels if t]
    return Tree(len(labels), edges), [FreeWord(t) for t in labels]
