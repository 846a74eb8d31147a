"""Wreath products H wr G: arithmetic, lamp kernels, word length over free
groups, the combined proper kernel on finite instances and the conjugate
factorisation of an element.

An element is a finitely supported configuration of lamps ``w`` together with
a cursor ``g``; the product is ``(w, g)(w', g') = (w . (g.w'), g g')`` where
``(g.w')_{g.y} = w'_y``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import InputError
from .groups import FiniteGroup, FreeGroup, FreeWord, GAction, IntegerGroup, left_cosets
from .trees import word_cover_walk_length
from .walls import KernelTable, WallsStructure, mask_of


@dataclass(frozen=True)
class WreathElement:
    """``lamps`` lists ``(point, h)`` pairs with ``h`` never the identity of H,
    in canonical point order; ``cursor`` is an element of G."""

    lamps: tuple
    cursor: Hashable

    @property
    def support(self) -> tuple:
        return tuple(p for p, _ in self.lamps)

    def lamp(self, point, default=None):
        for p, h in self.lamps:
            if p == point:
                return h
        return default

    def as_dict(self) -> dict:
        return dict(self.lamps)


class WreathProduct:
    """``H wr G`` with G acting on itself by left multiplication, or, when an
    ``action`` on ``{0..n-1}`` is given, the permutational product ``H wr_X G``.

    Exposes the usual group surface (``identity``, ``mul``, ``inv``,
    ``sort_key``) so a wreath product can itself serve as a lamp group.
    """

    def __init__(self, H, G, action: GAction | None = None):
        self.H = H
        self.G = G
        self.action = action
        self.identity = WreathElement((), G.identity)

    # -- points ------------------------------------------------------------

    def move(self, g, y):
        if self.action is None:
            return self.G.mul(g, y)
        return self.action.act(g, y)

    def point_key(self, y):
        return y if self.action is not None else self.G.sort_key(y)

    def make(self, lamps, cursor=None) -> WreathElement:
        """Canonical element from a mapping or pair list; identity lamps are dropped."""
        items = lamps.items() if hasattr(lamps, "items") else lamps
        e = self.H.identity
        clean = {}
        for p, h in items:
            if p in clean:
                raise InputError(f"lamp position {p} given twice")
            clean[p] = h
        kept = sorted(((p, h) for p, h in clean.items() if h != e), key=lambda ph: self.point_key(ph[0]))
        return WreathElement(tuple(kept), self.G.identity if cursor is None else cursor)

    def lamp_at(self, point, h) -> WreathElement:
        return self.make({point: h})

    def cursor(self, g) -> WreathElement:
        return WreathElement((), g)

    # -- group law ---------------------------------------------------------

    def mul(self, a: WreathElement, b: WreathElement) -> WreathElement:
        H = self.H
        out = dict(a.lamps)
        for y, h in b.lamps:
            gy = self.move(a.cursor, y)
            out[gy] = H.mul(out[gy], h) if gy in out else h
        return self.make(out, self.G.mul(a.cursor, b.cursor))

    def inv(self, a: WreathElement) -> WreathElement:
        gi = self.G.inv(a.cursor)
        H = self.H
        return self.make({self.move(gi, y): H.inv(h) for y, h in a.lamps}, gi)

    def product(self, elements: Iterable[WreathElement]) -> WreathElement:
        out = self.identity
        for x in elements:
            out = self.mul(out, x)
        return out

    def sort_key(self, a: WreathElement):
        H = self.H
        return (len(a.lamps), tuple((self.point_key(p), H.sort_key(h)) for p, h in a.lamps),
                self.G.sort_key(a.cursor))

    def elements(self):
        """All elements, for a finite point set and finite H."""
        points = self._points()
        for g in self.G.elements:
            for values in itertools.product(range(self.H.order), repeat=len(points)):
                yield self.make(zip(points, values), g)

    def _points(self) -> list:
        if self.action is not None:
            return list(range(self.action.size))
        return list(self.G.elements)

    def __repr__(self):
        return f"WreathProduct({self.H!r}, {self.G!r})"


# ---------------------------------------------------------------------------
# text format  {g1:h1,g2:h2}|cursor

class LampCodec:
    """Generator-word syntax for lamp values in a cyclic group.

    ``t`` is the generator and ``T`` its inverse, so ``ttt`` is 3 and ``TT``
    is -2 (or n-2 in Z/n); a bare integer and ``1``/``e`` are also accepted.
    """

    def __init__(self, H, letter: str = "t"):
        self.H = H
        self.letter = letter
        if isinstance(H, IntegerGroup):
            self.modulus = None
        elif isinstance(H, FiniteGroup):
            self.modulus = H.order
        else:
            raise InputError("lamp words are only defined for cyclic lamp groups")

    def parse(self, text: str):
        text = text.strip()
        if text in ("", "1", "e"):
            k = 0
        elif re.fullmatch(r"-?\d+", text):
            k = int(text)
        elif re.fullmatch(f"[{self.letter}{self.letter.upper()}]+", text):
            k = text.count(self.letter) - text.count(self.letter.upper())
        else:
            raise InputError(f"cannot read lamp value {text!r}")
        # FiniteGroup.cyclic labels elements 0..n-1 with addition mod n
        return k if self.modulus is None else k % self.modulus

    def format(self, h) -> str:
        if self.modulus is None:
            return self.letter * h if h >= 0 else self.letter.upper() * -h
        return self.letter * h

    def length(self, h) -> int:
        if self.modulus is None:
            return abs(h)
        return min(h, self.modulus - h)


_ELEMENT = re.compile(r"^\s*\{(?P<lamps>[^}]*)\}\s*\|\s*(?P<cursor>\S*)\s*$")


def parse_element(text: str, W: WreathProduct, codec: LampCodec) -> WreathElement:
    m = _ELEMENT.match(text)
    if m is None:
        raise InputError(f"expected '{{g:h,...}}|cursor', got {text!r}")
    G = W.G
    lamps = {}
    body = m.group("lamps").strip()
    if body:
        for item in body.split(","):
            if ":" not in item:
                raise InputError(f"lamp {item.strip()!r} needs the form point:value")
            p, h = item.split(":", 1)
            p = G.parse(p.strip())
            if p in lamps:
                raise InputError(f"lamp position {G.format(p)} given twice")
            lamps[p] = codec.parse(h)
    return W.make(lamps, G.parse(m.group("cursor")))


def format_element(a: WreathElement, W: WreathProduct, codec: LampCodec) -> str:
    G = W.G
    body = ",".join(f"{G.format(p)}:{codec.format(h)}" for p, h in a.lamps)
    return "{" + body + "}|" + G.format(a.cursor)


# ---------------------------------------------------------------------------
# lamp kernels

def lamp_metric(sigma) -> Callable:
    """A two-argument lamp distance from a callable or a walls structure on H."""
    if isinstance(sigma, WallsStructure):
        if sigma.labels is not None:
            return sigma.label_distance
        return sigma.distance
    return sigma


def sigma_hat_distance(sigma, a: WreathElement, b: WreathElement, identity=0) -> Fraction:
    """``sum_y d_sigma(a_y, b_y)`` over the union of the supports."""
    d = lamp_metric(sigma)
    wa, wb = a.as_dict(), b.as_dict()
    total = Fraction(0)
    for y in set(wa) | set(wb):
        total += d(wa.get(y, identity), wb.get(y, identity))
    return total


def extend_cnd(u, lamps, identity=0) -> Fraction:
    """``u(w) = sum_g u(w_g)``; ``u`` is a function on H or a kernel table read at ``(identity, h)``."""
    if isinstance(u, KernelTable):
        table = u
        u = lambda h: table(identity, h)
    items = lamps.lamps if isinstance(lamps, WreathElement) else (lamps.items() if hasattr(lamps, "items") else lamps)
    return sum((Fraction(u(h)) for _, h in items if h != identity), Fraction(0))


# ---------------------------------------------------------------------------
# word length over a free group

@dataclass(frozen=True)
class GeneratingData:
    """Cursor generators are the free basis and inverses; lamp lengths come from ``lamp_length``."""

    G: FreeGroup
    lamp_length: Callable
    lamp_generators: tuple

    @classmethod
    def cyclic(cls, G: FreeGroup, H) -> GeneratingData:
        codec = LampCodec(H)
        gens = (1, -1) if isinstance(H, IntegerGroup) else tuple(sorted({1 % H.order, (-1) % H.order}))
        return cls(G, codec.length, gens)

    @classmethod
    def from_table(cls, G: FreeGroup, H: FiniteGroup, gens: Sequence[int]) -> GeneratingData:
        lengths = H.word_lengths(gens)
        sym = set(gens) | {H.inv(s) for s in gens}
        return cls(G, lengths.__getitem__, tuple(sorted(sym)))

    def cursor_generators(self) -> list[FreeWord]:
        return self.G.generators()


def cover_length(a: WreathElement) -> int:
    """Shortest walk from the identity to the cursor through every lamp position."""
    return word_cover_walk_length(FreeWord(()), a.cursor, a.support)


def parry_length(a: WreathElement, gen: GeneratingData | Callable) -> int:
    lamp_length = gen.lamp_length if isinstance(gen, GeneratingData) else gen
    return cover_length(a) + sum(lamp_length(h) for _, h in a.lamps)


def generator_steps(W: WreathProduct, gen: GeneratingData) -> list[WreathElement]:
    """The generating set S | S' as wreath elements."""
    steps = [W.cursor(s) for s in gen.cursor_generators()]
    steps += [W.lamp_at(W.G.identity, h) for h in gen.lamp_generators]
    return steps


def random_walk_element(W: WreathProduct, gen: GeneratingData, rng, radius: int) -> WreathElement:
    """Right-multiply ``r`` random generators, ``r`` uniform in ``1..radius``."""
    steps = generator_steps(W, gen)
    a = W.identity
    for _ in range(rng.randint(1, radius)):
        a = W.mul(a, rng.choice(steps))
    return a


# ---------------------------------------------------------------------------
# the combined kernel on a finite permutational wreath product

class CombinedKernel:
    """``rho* mu~ + p* lambda + sigma^`` on ``H wr_{G/L} G`` for finite G.

    ``mu`` lives on the coset space G/L (in the order of :func:`left_cosets`),
    ``lam`` on G (element indices) and ``sigma`` on H. Either of the last two
    summands can be dropped: ``lam`` when L is finite, ``sigma`` when H is.
    """

    def __init__(self, G: FiniteGroup, L: Iterable[int], H: FiniteGroup, mu: WallsStructure,
                 lam: WallsStructure | None, sigma: WallsStructure | None):
        self.cosets = left_cosets(G, L)
        if mu.size != len(self.cosets):
            raise InputError(f"mu has {mu.size} points but G/L has {len(self.cosets)} cosets")
        if lam is not None and lam.size != G.order:
            raise InputError(f"lambda has {lam.size} points but G has {G.order} elements")
        if sigma is not None and sigma.size != H.order:
            raise InputError(f"sigma has {sigma.size} points but H has {H.order} elements")
        self.G, self.H = G, H
        self.mu, self.lam, self.sigma = mu, lam, sigma
        self.W = WreathProduct(H, G, self.cosets.action())
        self.base = self.cosets.index_of(G.identity)

    def __call__(self, a: WreathElement, b: WreathElement) -> Fraction:
        G = self.G
        wa, wb = a.as_dict(), b.as_dict()
        diff = {y for y in set(wa) | set(wb) if wa.get(y, self.H.identity) != wb.get(y, self.H.identity)}
        xa = self.W.move(a.cursor, self.base)
        xb = self.W.move(b.cursor, self.base)
        total = self.mu.cut_weight(mask_of(diff) | 1 << xa | 1 << xb)
        if self.lam is not None:
            total += self.lam.distance(a.cursor, b.cursor)
        if self.sigma is not None:
            total += sigma_hat_distance(self.sigma, a, b, self.H.identity)
        return total

    def elements(self) -> list[WreathElement]:
        return sorted(self.W.elements(), key=self.W.sort_key)

    def table(self) -> KernelTable:
        elems = self.elements()
        n = len(elems)
        m = np.empty((n, n), dtype=object)
        for i in range(n):
            for j in range(i, n):
                m[i, j] = m[j, i] = self(elems[i], elems[j])
        return KernelTable(m, tuple(elems))

    def sublevel(self, center: WreathElement, R) -> list[WreathElement]:
        """Elements within ``R`` of ``center``, enumerated from bounded pieces.

        The position ``g.L`` must lie in the closed mu-ball of radius R around
        the centre's position B, lamps may only differ from the centre inside
        B, the cursor lies in the lambda-ball and each differing lamp value in
        the sigma-ball; only these candidates are evaluated.
        """
        R = Fraction(R)
        G, H, mu = self.G, self.H, self.mu
        x0 = self.W.move(center.cursor, self.base)
        B = [x for x in range(mu.size) if mu.distance(x0, x) <= R]
        Bset = set(B)
        cursors = [g for g in G.elements if self.W.move(g, self.base) in Bset
                   and (self.lam is None or self.lam.distance(center.cursor, g) <= R)]
        w0 = center.as_dict()
        choices = []
        for x in B:
            h0 = w0.get(x, H.identity)
            if self.sigma is None:
                choices.append(list(H.elements))
            else:
                d = lamp_metric(self.sigma)
                choices.append([h for h in H.elements if d(h0, h) <= R])
        out = []
        for g in cursors:
            for values in itertools.product(*choices):
                lamps = dict(w0)
                for x, h in zip(B, values):
                    lamps[x] = h
                a = self.W.make(lamps, g)
                if self(center, a) <= R:
                    out.append(a)
        return sorted(out, key=self.W.sort_key)


def combined_kernel(G: FiniteGroup, L, H: FiniteGroup, mu, lam, sigma, a, b) -> Fraction:
    return CombinedKernel(G, L, H, mu, lam, sigma)(a, b)


# ---------------------------------------------------------------------------
# conjugate factorisation

def factor_conjugates(a: WreathElement) -> tuple[list[tuple], Hashable]:
    """``wg = prod_i g_i h_i g_i^-1 . g`` with the ``g_i`` running over the
    support in canonical order and ``h_i = w_{g_i}``."""
    return list(a.lamps), a.cursor


def reassemble(W: WreathProduct, pieces: Sequence[tuple], cursor) -> WreathElement:
    """Multiply the conjugates ``g_i h_i g_i^-1`` and then the cursor."""
    G = W.G
    out = W.identity
    for g, h in pieces:
        conj = W.product([W.cursor(g), W.lamp_at(G.identity, h), W.cursor(G.inv(g))])
        out = W.mul(out, conj)
    return W.mul(out, W.cursor(cursor))


def subadditive_bound(k: int, K) -> Fraction:
    """``(3k + 1) K``: each conjugate costs at most ``3K``, the cursor ``K``."""
    return (3 * k + 1) * Fraction(K)


@dataclass(frozen=True)
class BoundCheck:
    element: WreathElement
    psi: Fraction
    k: int
    K: Fraction
    bound: Fraction

    @property
    def ok(self) -> bool:
        return self.psi <= self.bound


def conjugate_bound(a: WreathElement, psi: Callable, piece_psi: Callable, lamp_psi: Callable) -> BoundCheck:
    """Check ``psi(a) <= (3k + 1) K`` with ``K`` the largest of ``k``, ``psi`` on
    the cursor and the positions (``piece_psi``) and on the lamp values (``lamp_psi``)."""
    pieces, g = factor_conjugates(a)
    k = len(pieces)
    values = [Fraction(k), Fraction(piece_psi(g))]
    for p, h in pieces:
        values += [Fraction(piece_psi(p)), Fraction(lamp_psi(h))]
    K = max(values)
    return BoundCheck(a, Fraction(psi(a)), k, K, subadditive_bound(k, K))


@dataclass(frozen=True)
class RelativeTData:
    cursors: frozenset
    lamp_values: frozenset
    positions: frozenset
    max_support: int


def relative_T_data(C: Iterable[WreathElement]) -> RelativeTData:
    """Projection on G, union of lamp values, union of supports, largest support size."""
    cursors, values, positions = set(), set(), set()
    biggest = 0
    for a in C:
        cursors.add(a.cursor)
        for p, h in a.lamps:
            positions.add(p)
            values.add(h)
        biggest = max(biggest, len(a.lamps))
    return RelativeTData(frozenset(cursors), frozenset(values), frozenset(positions), biggest)


__all__ = [
    "BoundCheck", "CombinedKernel", "GeneratingData", "LampCodec", "RelativeTData", "WreathElement",
    "WreathProduct", "combined_kernel", "conjugate_bound", "cover_length", "extend_cnd",
    "factor_conjugates", "format_element", "generator_steps", "lamp_metric", "parry_length",
    "parse_element", "random_walk_element", "reassemble", "relative_T_data", "sigma_hat_distance",
    "subadditive_bound",
]
