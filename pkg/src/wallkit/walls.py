"""Finite measured walls structures.

A structure on the ground set ``{0..size-1}`` is a finite list of half-spaces
(bit masks) with positive rational weights. The wall pseudodistance between
two points is the total weight of the half-spaces containing exactly one of
them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import InputError, QueryError
from .groups import GAction

HalfSpace = int  # bit x set <=> point x in the half-space


def mask_of(points: Iterable[int]) -> int:
    m = 0
    for x in points:
        m |= 1 << x
    return m


def points_of(mask: int) -> list[int]:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return out


def mask_string(mask: int, size: int) -> str:
    return "".join("1" if mask >> x & 1 else "0" for x in range(size))


def cuts(a: HalfSpace, y: int) -> bool:
    """True iff the half-space ``a`` splits the (mask) set ``y`` nontrivially."""
    if y == 0:
        raise InputError("cannot test a cut of the empty set")
    return bool(y & a) and bool(y & ~a)


def as_fraction(w) -> Fraction:
    if isinstance(w, Fraction):
        return w
    if isinstance(w, float):
        raise InputError("weights must be exact rationals, not floats")
    return Fraction(w)


@dataclass(frozen=True)
class KernelTable:
    """Symmetric nonnegative kernel on a finite point set."""

    matrix: np.ndarray
    labels: tuple | None = None

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=object)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InputError("kernel table must be square")
        if not (m == m.T).all():
            raise InputError("kernel table is not symmetric")
        if (m < 0).any():
            raise InputError("kernel table has negative entries")
        object.__setattr__(self, "matrix", m)

    @property
    def size(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, i: int, j: int):
        return self.matrix[i, j]

    def sublevel(self, i: int, radius) -> list[int]:
        return [j for j in range(self.size) if self.matrix[i, j] <= radius]

    def __add__(self, other: KernelTable) -> KernelTable:
        return KernelTable(self.matrix + other.matrix, self.labels)

    def __eq__(self, other):
        if not isinstance(other, KernelTable):
            return NotImplemented
        return self.matrix.shape == other.matrix.shape and bool((self.matrix == other.matrix).all())

    __hash__ = None


class WallsStructure:
    """Weighted half-spaces over ``{0..size-1}``.

    Duplicate half-spaces are merged by summing weights. The empty set and the
    whole ground set are rejected; use :meth:`collect` to drop them silently.
    Optional ``labels`` name the points so that callers can query by label.
    """

    __slots__ = ("size", "walls", "labels", "_label_index")

    def __init__(self, size: int, walls: Iterable[tuple[HalfSpace, object]] = (), labels: Sequence[Hashable] | None = None):
        if size < 0:
            raise InputError("ground set size must be >= 0")
        full = (1 << size) - 1
        merged: dict[int, Fraction] = {}
        for mask, w in walls:
            w = as_fraction(w)
            if w <= 0:
                raise InputError(f"weight {w} is not positive")
            if mask <= 0 or mask >= full or mask & ~full:
                raise InputError(f"half-space {mask_string(mask, size)} is empty, full or out of range")
            merged[mask] = merged.get(mask, Fraction(0)) + w
        self.size = size
        self.walls = tuple(sorted(merged.items(), key=lambda mw: mask_string(mw[0], size)))
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != size:
                raise InputError("need exactly one label per point")
            self._label_index = {lab: i for i, lab in enumerate(labels)}
            if len(self._label_index) != size:
                raise InputError("labels must be distinct")
        else:
            self._label_index = None
        self.labels = labels

    @classmethod
    def collect(cls, size: int, walls: Iterable[tuple[HalfSpace, object]], labels=None) -> WallsStructure:
        full = (1 << size) - 1
        return cls(size, [(m, w) for m, w in walls if 0 < m < full], labels)

    # -- queries -----------------------------------------------------------

    def index(self, label) -> int:
        if self._label_index is None:
            if isinstance(label, int) and 0 <= label < self.size:
                return label
            raise QueryError(f"point {label!r} not in ground set")
        try:
            return self._label_index[label]
        except (KeyError, TypeError):
            raise QueryError(f"point {label!r} not in window") from None

    def distance(self, x: int, y: int) -> Fraction:
        if x == y:
            return Fraction(0)
        bx, by = 1 << x, 1 << y
        total = Fraction(0)
        for mask, w in self.walls:
            if bool(mask & bx) != bool(mask & by):
                total += w
        return total

    def label_distance(self, a, b) -> Fraction:
        return self.distance(self.index(a), self.index(b))

    def cut_weight(self, subset: int) -> Fraction:
        """Total weight of the half-spaces cutting the (mask) set ``subset``."""
        total = Fraction(0)
        for mask, w in self.walls:
            if subset & mask and subset & ~mask:
                total += w
        return total

    def scaled_weights(self) -> tuple[np.ndarray, int]:
        """Integer numerators over a common denominator."""
        den = 1
        for _, w in self.walls:
            den = den * w.denominator // math.gcd(den, w.denominator)
        nums = [int(w * den) for _, w in self.walls]
        big = sum(nums) >= 2**62
        return np.array(nums, dtype=object if big else np.int64), den

    def membership(self) -> np.ndarray:
        """0/1 matrix, one row per half-space, one column per point."""
        m = np.zeros((len(self.walls), self.size), dtype=np.int64)
        for i, (mask, _) in enumerate(self.walls):
            for x in points_of(mask):
                m[i, x] = 1
        return m

    def scaled_distance_table(self) -> tuple[np.ndarray, int]:
        """All pairwise distances as integers over one common denominator."""
        nums, den = self.scaled_weights()
        if not self.walls:
            return np.zeros((self.size, self.size), dtype=np.int64), 1
        m = self.membership().astype(nums.dtype)
        weighted = m * nums[:, None]
        s = weighted.sum(axis=0)
        inner = weighted.T @ m
        return s[:, None] + s[None, :] - 2 * inner, den

    def distance_table(self) -> KernelTable:
        """All pairwise distances at once, as exact fractions."""
        num, den = self.scaled_distance_table()
        table = np.empty(num.shape, dtype=object)
        for i in range(self.size):
            for j in range(self.size):
                table[i, j] = Fraction(int(num[i, j]), den)
        return KernelTable(table, self.labels)

    def is_symmetric(self) -> bool:
        full = (1 << self.size) - 1
        d = dict(self.walls)
        return all(d.get(full ^ m) == w for m, w in self.walls)

    # -- serialisation -----------------------------------------------------

    def to_text(self) -> str:
        lines = [f"n {self.size}"]
        for mask, w in self.walls:
            lines.append(f"{w.numerator}/{w.denominator} {mask_string(mask, self.size)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> WallsStructure:
        size = None
        walls = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if size is None:
                if len(parts) != 2 or parts[0] != "n":
                    raise InputError("expected header 'n <size>'", line=lineno)
                try:
                    size = int(parts[1])
                except ValueError:
                    raise InputError("ground set size must be an integer", line=lineno) from None
                continue
            if len(parts) != 2:
                raise InputError("expected '<weight> <mask>'", line=lineno)
            try:
                w = Fraction(parts[0])
            except (ValueError, ZeroDivisionError):
                raise InputError(f"bad weight {parts[0]!r}", line=lineno) from None
            bits = parts[1]
            if len(bits) != size or set(bits) - {"0", "1"}:
                raise InputError(f"mask must be a 0/1 string of length {size}", line=lineno)
            if w <= 0:
                raise InputError("weight must be positive", line=lineno)
            mask = mask_of(i for i, c in enumerate(bits) if c == "1")
            if mask == 0 or mask == (1 << size) - 1:
                raise InputError("empty or full half-space", line=lineno)
            walls.append((mask, w))
        if size is None:
            raise InputError("missing header 'n <size>'", line=1)
        return cls(size, walls)

    @classmethod
    def load(cls, path) -> WallsStructure:
        with open(path) as fh:
            return cls.from_text(fh.read())

    def __eq__(self, other):
        if not isinstance(other, WallsStructure):
            return NotImplemented
        return self.size == other.size and self.walls == other.walls

    def __hash__(self):
        return hash((self.size, self.walls))

    def __len__(self):
        return len(self.walls)

    def __repr__(self):
        body = ", ".join(f"{mask_string(m, self.size)}:{w}" for m, w in self.walls[:6])
        more = ", ..." if len(self.walls) > 6 else ""
        return f"WallsStructure(size={self.size}, [{body}{more}])"


def wall_distance(mu: WallsStructure, x: int, y: int) -> Fraction:
    return mu.distance(x, y)


def scale_walls(mu: WallsStructure, c) -> WallsStructure:
    c = as_fraction(c)
    if c <= 0:
        raise InputError("scale factor must be positive")
    return WallsStructure(mu.size, [(m, w * c) for m, w in mu.walls], mu.labels)


def pullback(f: Sequence[int], mu: WallsStructure, labels=None) -> WallsStructure:
    """Pull ``mu`` back along ``f: {0..len(f)-1} -> ground set of mu``."""
    n = len(f)
    walls = []
    for mask, w in mu.walls:
        pre = 0
        for x, fx in enumerate(f):
            if mask >> fx & 1:
                pre |= 1 << x
        walls.append((pre, w))
    return WallsStructure.collect(n, walls, labels)


def direct_sum(summands: Sequence[tuple[WallsStructure, int]], window: Iterable) -> WallsStructure:
    """Direct sum of structures, materialised on a finite window of configurations.

    Window entries are tuples (one coordinate per summand) or sparse dicts
    ``{i: x_i}`` whose missing coordinates sit at the summand's basepoint. The
    result is labelled by the normalised coordinate tuples.
    """
    configs = []
    for c in window:
        if isinstance(c, Mapping):
            c = tuple(c.get(i, base) for i, (_, base) in enumerate(summands))
        else:
            c = tuple(c)
        if len(c) != len(summands):
            raise InputError("configuration length does not match number of summands")
        for (mu, _), xi in zip(summands, c):
            if not 0 <= xi < mu.size:
                raise InputError(f"coordinate {xi} outside ground set")
        configs.append(c)
    configs = list(dict.fromkeys(configs))
    walls = []
    for i, (mu, _) in enumerate(summands):
        for mask, w in mu.walls:
            walls.append((mask_of(k for k, c in enumerate(configs) if mask >> c[i] & 1), w))
    return WallsStructure.collect(len(configs), walls, configs)


def l1_embed(mu: WallsStructure, x0: int) -> list[tuple[int, ...]]:
    """``f(x) = 1_{A ni x} - 1_{A ni x0}``, one coordinate per stored half-space."""
    rows = []
    for x in range(mu.size):
        rows.append(tuple((m >> x & 1) - (m >> x0 & 1) for m, _ in mu.walls))
    return rows


def weighted_norm(mu: WallsStructure, v: Sequence[int], p=1):
    """Weighted l^p norm of a {-1,0,1} vector; exact for p=1, float otherwise."""
    if p == 1:
        return sum((w * abs(c) for (_, w), c in zip(mu.walls, v)), Fraction(0))
    s = sum((w * abs(c) ** p for (_, w), c in zip(mu.walls, v)), Fraction(0))
    return float(s) ** (1.0 / float(p))


def lp_norm_check(mu: WallsStructure, x0: int, p, tol: float = 1e-12) -> bool:
    """Check ``||f(x)-f(y)||_p == d(x,y)^(1/p)`` on every pair."""
    p = as_fraction(p)
    if p < 1:
        raise InputError("p must be >= 1")
    f = l1_embed(mu, x0)
    for x in range(mu.size):
        for y in range(x, mu.size):
            diff = [a - b for a, b in zip(f[x], f[y])]
            d = mu.distance(x, y)
            if p == 1:
                if weighted_norm(mu, diff, 1) != d:
                    return False
            else:
                lhs = weighted_norm(mu, diff, p)
                rhs = float(d) ** (1.0 / float(p))
                if abs(lhs - rhs) > tol * max(1.0, rhs):
                    return False
    return True


# ---------------------------------------------------------------------------
# walls as bipartitions

class AlternateWalls:
    """Weighted bipartitions {A, A^c}; each stored by its side avoiding point 0."""

    __slots__ = ("size", "walls")

    def __init__(self, size: int, walls: Iterable[tuple[HalfSpace, object]] = ()):
        full = (1 << size) - 1
        merged: dict[int, Fraction] = {}
        for mask, w in walls:
            w = as_fraction(w)
            if w <= 0:
                raise InputError(f"weight {w} is not positive")
            if mask <= 0 or mask >= full:
                raise InputError("a bipartition needs two nonempty sides")
            if mask & 1:
                mask ^= full
            merged[mask] = merged.get(mask, Fraction(0)) + w
        self.size = size
        self.walls = tuple(sorted(merged.items(), key=lambda mw: mask_string(mw[0], size)))

    def distance(self, x: int, y: int) -> Fraction:
        bx, by = 1 << x, 1 << y
        return sum((w for m, w in self.walls if bool(m & bx) != bool(m & by)), Fraction(0))

    def __eq__(self, other):
        if not isinstance(other, AlternateWalls):
            return NotImplemented
        return self.size == other.size and self.walls == other.walls

    def __hash__(self):
        return hash((self.size, self.walls))

    def __repr__(self):
        body = ", ".join(f"{mask_string(m, self.size)}:{w}" for m, w in self.walls)
        return f"AlternateWalls(size={self.size}, [{body}])"


def to_alternate(mu: WallsStructure) -> AlternateWalls:
    """Push forward along A -> {A, A^c}."""
    return AlternateWalls(mu.size, mu.walls)


def from_alternate(nu: AlternateWalls) -> WallsStructure:
    """Split each bipartition weight evenly between its two sides."""
    full = (1 << nu.size) - 1
    walls = []
    for m, w in nu.walls:
        walls.append((m, w / 2))
        walls.append((full ^ m, w / 2))
    return WallsStructure(nu.size, walls)


def symmetrize(mu: WallsStructure) -> WallsStructure:
    out = from_alternate(to_alternate(mu))
    return WallsStructure(out.size, out.walls, mu.labels)


def orbit_invariant_walls(action: GAction, seeds: Iterable[tuple[HalfSpace, object]]) -> WallsStructure:
    """Sum over the orbit of each seed half-space, every orbit element once with the seed's weight."""
    walls = []
    for mask, w in seeds:
        orbit = {action.act_mask(g, mask) for g in action.group.elements}
        walls += [(m, w) for m in orbit]
    return WallsStructure.collect(action.size, walls)
