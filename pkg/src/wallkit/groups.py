"""Group arithmetic: free groups as reduced words, finite groups as tables,
the integers, group actions on finite sets, and left coset spaces.

Every group object exposes the same small surface used by the rest of the
package: ``identity``, ``mul(a, b)``, ``inv(a)`` and ``sort_key(a)``.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import InputError


# ---------------------------------------------------------------------------
# free groups

@dataclass(frozen=True, slots=True)
class FreeWord:
    """A reduced word; letters are signed generator indices (a=1, A=-1, b=2, ...)."""

    letters: tuple[int, ...] = ()

    def __mul__(self, other: FreeWord) -> FreeWord:
        left, right = self.letters, other.letters
        i = 0
        n = min(len(left), len(right))
        while i < n and left[-1 - i] == -right[i]:
            i += 1
        return FreeWord(left[: len(left) - i] + right[i:])

    def inverse(self) -> FreeWord:
        return FreeWord(tuple(-x for x in reversed(self.letters)))

    def __len__(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def shortlex(self) -> tuple:
        # a < A < b < B < ...
        return (len(self.letters), tuple(2 * abs(x) + (x < 0) for x in self.letters))

    def __lt__(self, other: FreeWord) -> bool:
        return self.shortlex() < other.shortlex()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"FreeWord({format_word(self)!r})"


IDENTITY_WORD = FreeWord(())


def reduce(letters: Iterable[int], rank: int | None = None) -> FreeWord:
    """Freely reduce a raw word."""
    stack: list[int] = []
    for x in letters:
        if x == 0 or (rank is not None and abs(x) > rank):
            raise InputError(f"generator index {x} out of range for rank {rank}")
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return FreeWord(tuple(stack))


def parse_word(text: str, rank: int | None = None) -> FreeWord:
    """Parse ``abA``-style text. ``1``, ``e`` and the empty string denote the identity."""
    text = text.strip()
    if text in ("", "1", "e"):
        return IDENTITY_WORD
    letters = []
    for ch in text:
        if "a" <= ch <= "z":
            letters.append(ord(ch) - ord("a") + 1)
        elif "A" <= ch <= "Z":
            letters.append(-(ord(ch) - ord("A") + 1))
        else:
            raise InputError(f"bad letter {ch!r} in word {text!r}")
    return reduce(letters, rank)


def format_word(w: FreeWord) -> str:
    if not w.letters:
        return "1"
    return "".join(chr(ord("a") + x - 1) if x > 0 else chr(ord("A") - x - 1) for x in w.letters)


class FreeGroup:
    """The free group on ``rank`` generators."""

    def __init__(self, rank: int):
        if rank < 1:
            raise InputError("free group rank must be >= 1")
        self.rank = rank
        self.identity = IDENTITY_WORD

    def mul(self, a: FreeWord, b: FreeWord) -> FreeWord:
        return a * b

    def inv(self, a: FreeWord) -> FreeWord:
        return a.inverse()

    def sort_key(self, a: FreeWord):
        return a.shortlex()

    def length(self, a: FreeWord) -> int:
        return len(a)

    def generators(self) -> list[FreeWord]:
        """Symmetric generating set a, A, b, B, ..."""
        gens = []
        for i in range(1, self.rank + 1):
            gens += [FreeWord((i,)), FreeWord((-i,))]
        return gens

    def parse(self, text: str) -> FreeWord:
        return parse_word(text, self.rank)

    def format(self, a: FreeWord) -> str:
        return format_word(a)

    def ball(self, radius: int) -> list[FreeWord]:
        return ball(self.rank, radius)

    def __repr__(self):
        return f"FreeGroup({self.rank})"


def ball(rank: int, radius: int) -> list[FreeWord]:
    """All reduced words of length <= radius, in shortlex order."""
    if radius < 0:
        raise InputError("radius must be >= 0")
    layer = [IDENTITY_WORD]
    out = [IDENTITY_WORD]
    letters = [x for i in range(1, rank + 1) for x in (i, -i)]
    for _ in range(radius):
        nxt = []
        for w in layer:
            last = w.letters[-1] if w.letters else 0
            for x in letters:
                if x != -last:
                    nxt.append(FreeWord(w.letters + (x,)))
        out += nxt
        layer = nxt
    return out


def ball_size(rank: int, radius: int) -> int:
    if rank == 1:
        return 2 * radius + 1
    return 1 + 2 * rank * ((2 * rank - 1) ** radius - 1) // (2 * rank - 2)


# ---------------------------------------------------------------------------
# the integers

class IntegerGroup:
    """Z under addition, generated by +-1."""

    identity = 0

    def mul(self, a: int, b: int) -> int:
        return a + b

    def inv(self, a: int) -> int:
        return -a

    def sort_key(self, a: int):
        return a

    def length(self, a: int) -> int:
        return abs(a)

    def generators(self) -> list[int]:
        return [1, -1]

    def __repr__(self):
        return "IntegerGroup()"


# ---------------------------------------------------------------------------
# finite groups

class FiniteGroup:
    """A finite group given by its multiplication table.

    Elements are the integers ``0..order-1``. ``labels`` optionally carries a
    human readable name per element (permutation tuples for permutation groups).
    """

    def __init__(self, table, labels: Sequence[Hashable] | None = None, check: bool = True):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise InputError("multiplication table must be a non-empty square")
        n = t.shape[0]
        if check:
            if t.min() < 0 or t.max() >= n:
                raise InputError("table entries out of range")
            full = np.arange(n)
            if not all((np.sort(t[i]) == full).all() for i in range(n)) or not all(
                (np.sort(t[:, j]) == full).all() for j in range(n)
            ):
                raise InputError("table is not a Latin square")
            # (ab)c == a(bc), vectorised over all triples
            if not (t[t, :] == t[:, t]).all():
                raise InputError("table is not associative")
        ids = [e for e in range(n) if (t[e] == np.arange(n)).all() and (t[:, e] == np.arange(n)).all()]
        if not ids:
            raise InputError("table has no identity")
        self.order = n
        self.identity = ids[0]
        self._table = t
        self._rows = tuple(tuple(int(v) for v in row) for row in t)
        inverse = [0] * n
        for a in range(n):
            inverse[a] = int(np.nonzero(t[a] == self.identity)[0][0])
        self._inverse = tuple(inverse)
        self.labels = tuple(labels) if labels is not None else None
        self._label_index = {lab: i for i, lab in enumerate(self.labels)} if self.labels else None

    @property
    def table(self) -> np.ndarray:
        return self._table

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self._rows[a][b]

    def inv(self, a: int) -> int:
        return self._inverse[a]

    def sort_key(self, a: int):
        return a

    def element(self, label) -> int:
        if self._label_index is None or label not in self._label_index:
            raise InputError(f"unknown element label {label!r}")
        return self._label_index[label]

    def product(self, elements: Iterable[int]) -> int:
        out = self.identity
        for a in elements:
            out = self._rows[out][a]
        return out

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(subset)
        if not s or self.identity not in s:
            return False
        return all(self.inv(a) in s for a in s) and all(self.mul(a, b) in s for a in s for b in s)

    def generated(self, gens: Iterable[int]) -> frozenset[int]:
        els = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for a in frontier:
                for s in gens:
                    b = self.mul(a, s)
                    if b not in els:
                        els.add(b)
                        nxt.append(b)
            frontier = nxt
        return frozenset(els)

    def word_lengths(self, gens: Sequence[int]) -> list[int]:
        """Word length of every element w.r.t. ``gens`` (made symmetric); -1 if unreachable."""
        gens = set(gens) | {self.inv(s) for s in gens}
        dist = [-1] * self.order
        dist[self.identity] = 0
        queue = deque([self.identity])
        while queue:
            a = queue.popleft()
            for s in gens:
                b = self.mul(a, s)
                if dist[b] < 0:
                    dist[b] = dist[a] + 1
                    queue.append(b)
        return dist

    def to_text(self) -> str:
        lines = [str(self.order)] + [" ".join(str(v) for v in row) for row in self._rows]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> FiniteGroup:
        rows = [(i + 1, line.split()) for i, line in enumerate(text.splitlines()) if line.strip()]
        if not rows:
            raise InputError("empty group file", line=1)
        lineno, first = rows[0]
        try:
            n = int(first[0])
        except (ValueError, IndexError):
            raise InputError("first line must hold the group order", line=lineno) from None
        if len(rows) != n + 1:
            raise InputError(f"expected {n} table rows, found {len(rows) - 1}", line=rows[-1][0])
        table = []
        for lineno, parts in rows[1:]:
            try:
                row = [int(p) for p in parts]
            except ValueError:
                raise InputError("non-integer table entry", line=lineno) from None
            if len(row) != n or any(v < 0 or v >= n for v in row):
                raise InputError(f"row must hold {n} indices in 0..{n - 1}", line=lineno)
            table.append(row)
        return cls(table)

    @classmethod
    def load(cls, path) -> FiniteGroup:
        with open(path) as fh:
            return cls.from_text(fh.read())

    @classmethod
    def cyclic(cls, n: int) -> FiniteGroup:
        return cls([[(a + b) % n for b in range(n)] for a in range(n)], labels=range(n), check=False)

    @classmethod
    def from_permutations(cls, perms: Iterable[Sequence[int]]) -> FiniteGroup:
        """Permutation group (given as a complete, closed list), product = composition
        ``(p*q)(x) = p(q(x))``. Elements are sorted lexicographically."""
        perms = sorted({tuple(p) for p in perms})
        index = {p: i for i, p in enumerate(perms)}
        table = []
        for p in perms:
            row = []
            for q in perms:
                r = tuple(p[x] for x in q)
                if r not in index:
                    raise InputError("permutation list is not closed under composition")
                row.append(index[r])
            table.append(row)
        return cls(table, labels=perms, check=False)

    @classmethod
    def generated_by_permutations(cls, gens: Iterable[Sequence[int]]) -> FiniteGroup:
        gens = [tuple(g) for g in gens]
        n = len(gens[0])
        ident = tuple(range(n))
        els = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for p in frontier:
                for s in gens:
                    r = tuple(p[x] for x in s)
                    if r not in els:
                        els.add(r)
                        nxt.append(r)
            frontier = nxt
        return cls.from_permutations(els)

    @classmethod
    def symmetric(cls, n: int) -> FiniteGroup:
        return cls.from_permutations(itertools.permutations(range(n)))

    @classmethod
    def dihedral(cls, n: int) -> FiniteGroup:
        rot = tuple((i + 1) % n for i in range(n))
        ref = tuple((-i) % n for i in range(n))
        return cls.generated_by_permutations([rot, ref])

    @classmethod
    def direct_product(cls, g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
        n2 = g2.order
        table = [
            [g1.mul(a // n2, b // n2) * n2 + g2.mul(a % n2, b % n2) for b in range(g1.order * n2)]
            for a in range(g1.order * n2)
        ]
        return cls(table, labels=[(a, b) for a in range(g1.order) for b in range(n2)], check=False)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


# ---------------------------------------------------------------------------
# actions

@dataclass(frozen=True)
class GAction:
    """A left action of a finite group on ``{0..size-1}``; ``perms[g][x] = g.x``."""

    group: FiniteGroup
    size: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.group
        perms = tuple(tuple(p) for p in self.perms)
        object.__setattr__(self, "perms", perms)
        if len(perms) != g.order or any(sorted(p) != list(range(self.size)) for p in perms):
            raise InputError("each group element must act by a permutation of the ground set")
        if perms[g.identity] != tuple(range(self.size)):
            raise InputError("identity does not act trivially")
        for a in g.elements:
            for b in g.elements:
                ab = perms[g.mul(a, b)]
                pa, pb = perms[a], perms[b]
                if any(ab[x] != pa[pb[x]] for x in range(self.size)):
                    raise InputError(f"action axiom fails for elements {a}, {b}")

    def act(self, g: int, x: int) -> int:
        return self.perms[g][x]

    def act_mask(self, g: int, mask: int) -> int:
        p = self.perms[g]
        out = 0
        x = 0
        while mask:
            if mask & 1:
                out |= 1 << p[x]
            mask >>= 1
            x += 1
        return out

    def orbit(self, x: int) -> list[int]:
        return sorted({p[x] for p in self.perms})

    @classmethod
    def regular(cls, group: FiniteGroup) -> GAction:
        """Left multiplication of ``group`` on itself."""
        return cls(group, group.order, tuple(tuple(group.mul(g, x) for x in group.elements) for g in group.elements))

    @classmethod
    def trivial(cls, group: FiniteGroup, size: int) -> GAction:
        return cls(group, size, tuple(tuple(range(size)) for _ in group.elements))


# ---------------------------------------------------------------------------
# cosets

@dataclass(frozen=True)
class CosetSpace:
    """Left cosets gH, indexed by increasing minimal element."""

    group: FiniteGroup
    subgroup: frozenset[int]
    cosets: tuple[tuple[int, ...], ...]
    _index: dict = field(repr=False, compare=False, default_factory=dict)

    def index_of(self, g: int) -> int:
        return self._index[g]

    def __len__(self):
        return len(self.cosets)

    def representative(self, i: int) -> int:
        return self.cosets[i][0]

    def action(self) -> GAction:
        """The left action of G on G/H."""
        G = self.group
        perms = tuple(
            tuple(self._index[G.mul(g, c[0])] for c in self.cosets) for g in G.elements
        )
        return GAction(G, len(self.cosets), perms)


def left_cosets(G: FiniteGroup, H: Iterable[int]) -> CosetSpace:
    H = frozenset(H)
    if not G.is_subgroup(H):
        raise InputError("H is not a subgroup of G")
    seen: dict[int, int] = {}
    cosets = []
    for g in G.elements:
        if g in seen:
            continue
        coset = tuple(sorted(G.mul(g, h) for h in H))
        for x in coset:
            seen[x] = len(cosets)
        cosets.append(coset)
    return CosetSpace(G, H, tuple(cosets), seen)

