"""Compression experiments on lamplighters over free groups.

For ``H wr F`` the structure ``Phi(sigma)`` combines the edge walls of the
Cayley tree, lifted along the support gauge, with the direct sum of copies of
a structure ``sigma`` on H. Its distance to the identity is the number of tree
edges cutting ``Supp(w) | {1, g}`` plus the lamp distances. Given a
compression function ``alpha`` for ``sigma``, ``beta = alpha / C`` bounds
``d_Phi(wg, 1)`` from below in terms of the word length ``|wg|``; every step of
that chain is checked per sample.
"""

from __future__ import annotations

import csv
import io
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import EstimationError, InputError
from .groups import FreeWord
from .trees import word_hull_size
from .walls import WallsStructure, scale_walls
from .wreath import (GeneratingData, WreathElement, WreathProduct, cover_length, lamp_metric,
                     parry_length, random_walk_element)


def phi_sigma_pair(sigma, a: WreathElement, b: WreathElement, identity=0) -> Fraction:
    """``d_Phi(a, b)``: tree edges cutting the differing positions and both
    cursors, plus ``sum_y d_sigma(a_y, b_y)``."""
    d = lamp_metric(sigma)
    wa, wb = a.as_dict(), b.as_dict()
    total = Fraction(0)
    spots = [a.cursor, b.cursor]
    for y in set(wa) | set(wb):
        ha, hb = wa.get(y, identity), wb.get(y, identity)
        if ha != hb:
            spots.append(y)
            total += Fraction(d(ha, hb))
    return total + word_hull_size(spots)


def phi_sigma_distance(sigma, a: WreathElement, identity=0) -> Fraction:
    """``d_Phi(wg, 1)``."""
    return phi_sigma_pair(sigma, a, WreathElement((), FreeWord(())), identity)


def nested_lamp_distance(sigma, identity=0) -> Callable:
    """``d_Phi(sigma)`` as a lamp distance, for building ``Phi`` one level up."""
    return lambda h, k: phi_sigma_pair(sigma, h, k, identity)


def half_line_walls(radius: int) -> WallsStructure:
    """Walls ``{k, k+1, ...}`` of Z truncated to ``-radius..radius``, weight 1.

    Labels are the integers themselves, so ``d(h, k) = |h - k|`` on the window.
    """
    n = 2 * radius + 1
    full = (1 << n) - 1
    walls = [(full ^ ((1 << i) - 1), 1) for i in range(1, n)]
    return WallsStructure(n, walls, range(-radius, radius + 1))


# ---------------------------------------------------------------------------

class CompressionFunction:
    """A non-decreasing subadditive ``alpha`` with a scale constant ``C``; ``beta = alpha / C``."""

    def __init__(self, alpha: Callable[[int], object], C=1, name: str = "alpha", exponent=None):
        self.alpha = alpha
        self.C = Fraction(C)
        if self.C < 1:
            raise InputError("scale constant must be at least 1")
        self.name = name
        self.exponent = exponent

    @classmethod
    def power(cls, d, C=1) -> CompressionFunction:
        if not 0 <= d <= 1:
            raise InputError("power exponent must lie in [0, 1]")
        if d in (0, 1):
            return cls(lambda r: Fraction(r) ** int(d) if r else Fraction(0), C, f"r^{d}", Fraction(d))
        return cls(lambda r: r ** d, C, f"r^{d}", d)

    @classmethod
    def capped(cls, cap=1, C=1) -> CompressionFunction:
        cap = Fraction(cap)
        return cls(lambda r: min(Fraction(r), cap), C, f"min(r,{cap})", Fraction(0))

    @classmethod
    def table(cls, values: Sequence, C=1) -> CompressionFunction:
        """``alpha(r) = values[r]``, constant past the end of the table."""
        values = [Fraction(v) for v in values]
        if not values:
            raise InputError("empty compression table")
        return cls(lambda r: values[min(r, len(values) - 1)], C, "table")

    def __call__(self, r: int):
        return self.alpha(r)

    def beta(self, r: int):
        return self.alpha(r) / self.C

    def with_scale(self, C) -> CompressionFunction:
        return CompressionFunction(self.alpha, C, self.name, self.exponent)

    def axiom_failures(self, up_to: int) -> list[str]:
        """Monotonicity, subadditivity and ``beta(r) <= r/2`` on ``0..up_to``."""
        out = []
        vals = [self.alpha(r) for r in range(up_to + 1)]
        for r in range(up_to):
            if vals[r + 1] < vals[r]:
                out.append(f"decreasing at {r}")
        for r in range(1, up_to + 1):
            for s in range(1, up_to + 1 - r):
                if vals[r + s] > vals[r] + vals[s]:
                    out.append(f"not subadditive at ({r}, {s})")
            if self.beta(r) > Fraction(r, 2):
                out.append(f"beta({r}) exceeds {r}/2")
        return out

    def validate(self, up_to: int) -> None:
        bad = self.axiom_failures(up_to)
        if bad:
            raise InputError(f"{self.name} is not a usable compression function: " + "; ".join(bad[:3]))

    def __repr__(self):
        return f"CompressionFunction({self.name}, C={self.C})"


def choose_scale(alpha: CompressionFunction, max_length: int) -> Fraction:
    """Twice the least ``C >= 1`` with ``alpha(r) / C <= r/2`` for ``1 <= r <= max_length``."""
    need = Fraction(1)
    for r in range(1, max_length + 1):
        need = max(need, Fraction(alpha(r)) * 2 / r)
    return 2 * need


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SampleCheck:
    element: WreathElement
    length: int
    distance: Fraction
    beta_bound: object
    failures: tuple

    @property
    def ok(self) -> bool:
        return not self.failures


def check_sample(sigma, alpha: CompressionFunction, a: WreathElement, lamp_length: Callable,
                 identity=0, beta: Callable | None = None) -> SampleCheck:
    """Every step of the lower-bound chain for one element."""
    beta = alpha.beta if beta is None else beta
    d = lamp_metric(sigma)
    e = FreeWord(())
    m = cover_length(a)
    edges = word_hull_size([e, a.cursor, *a.support])
    lamp_lengths = [lamp_length(h) for _, h in a.lamps]
    lamp_dists = [Fraction(d(identity, h)) for _, h in a.lamps]
    length = m + sum(lamp_lengths)
    dist = edges + sum(lamp_dists, Fraction(0))
    fails = []
    if 2 * edges < m:
        fails.append("hull edges below m/2")
    for n, dl in zip(lamp_lengths, lamp_dists):
        if dl < beta(n):
            fails.append("lamp distance below beta")
            break
    if Fraction(m, 2) < beta(m):
        fails.append("m/2 below beta(m)")
    if beta(m) + sum(beta(n) for n in lamp_lengths) < beta(length):
        fails.append("beta not subadditive on the split")
    if dist < beta(length):
        fails.append("distance below beta(|wg|)")
    if alpha.C * dist < alpha(length):
        fails.append("scaled distance below alpha(|wg|)")
    return SampleCheck(a, length, dist, beta(length), tuple(fails))


def check_lamp_precondition(sigma, alpha: CompressionFunction, values: Iterable, lamp_length: Callable,
                            identity=0) -> list:
    """Lamp values ``h`` with ``d_sigma(1, h) < alpha(|h|)``."""
    d = lamp_metric(sigma)
    return [h for h in values if Fraction(d(identity, h)) < alpha(lamp_length(h))]


def verify_compression(sigma, alpha: CompressionFunction, samples: Iterable[WreathElement],
                       lamp_length: Callable, identity=0, beta: Callable | None = None,
                       lamp_values: Iterable | None = None) -> list[SampleCheck]:
    """The failing samples; an empty list means the whole chain held everywhere.

    ``alpha`` is validated up to the largest sampled length and checked against
    ``sigma`` on ``lamp_values`` (default: every lamp value seen in the samples).
    Passing ``beta`` replaces ``alpha / C`` in the chain.
    """
    samples = list(samples)
    results = [check_sample(sigma, alpha, a, lamp_length, identity, beta) for a in samples]
    top = max((r.length for r in results), default=1)
    if beta is None:
        alpha.validate(top)
    if lamp_values is None:
        lamp_values = {h for a in samples for _, h in a.lamps}
    bad = check_lamp_precondition(sigma, alpha, lamp_values, lamp_length, identity)
    if bad:
        raise InputError(f"alpha is not a compression function for sigma at lamp values {bad[:3]}")
    return [r for r in results if not r.ok]


def sample_elements(W: WreathProduct, gen: GeneratingData, count: int, radius: int, seed: int) -> list[WreathElement]:
    """Seeded random-walk samples, walk length uniform in ``1..radius``."""
    rng = random.Random(seed)
    return [random_walk_element(W, gen, rng, radius) for _ in range(count)]


def run_experiment(W: WreathProduct, gen: GeneratingData, sigma, alpha: CompressionFunction,
                   count: int, radius: int, seed: int, identity=0) -> list[SampleCheck]:
    """All per-sample checks, in sample order."""
    samples = sample_elements(W, gen, count, radius, seed)
    results = [check_sample(sigma, alpha, a, gen.lamp_length, identity) for a in samples]
    alpha.validate(max((r.length for r in results), default=1))
    bad = check_lamp_precondition(sigma, alpha, {h for a in samples for _, h in a.lamps}, gen.lamp_length, identity)
    if bad:
        raise InputError(f"alpha is not a compression function for sigma at lamp values {bad[:3]}")
    return results


def results_csv(results: Sequence[SampleCheck], seed: int | None = None) -> str:
    buf = io.StringIO()
    if seed is not None:
        buf.write(f"# seed={seed}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["length", "phi_distance", "beta_bound", "ok"])
    for r in results:
        writer.writerow([r.length, r.distance, r.beta_bound, int(r.ok)])
    return buf.getvalue()


# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class B1Estimate:
    """Log-log slope of distance against length; a lower-bound illustration, not B1 itself."""

    samples: tuple
    slope: float
    band: tuple[float, float]
    analytic_exponent: object
    violations: int = field(default=0)


def estimate_B1(pairs: Iterable[tuple[int, object]], alpha: CompressionFunction | None = None) -> B1Estimate:
    """Fit ``log d = s log |wg| + c`` by least squares over samples with positive length and distance.

    ``band`` is the slope plus or minus two standard errors. ``violations``
    counts samples with ``d < beta(|wg|)`` when ``alpha`` is given.
    """
    pairs = [(int(n), Fraction(d)) for n, d in pairs]
    usable = [(n, d) for n, d in pairs if n > 0 and d > 0]
    if len({n for n, _ in usable}) < 2:
        raise EstimationError("need samples of at least two distinct lengths to fit an exponent")
    x = np.log([float(n) for n, _ in usable])
    y = np.log([float(d) for _, d in usable])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    dof = max(len(x) - 2, 1)
    sxx = float(np.sum((x - x.mean()) ** 2))
    se = math.sqrt(float(np.sum(resid ** 2)) / dof / sxx)
    violations = 0
    if alpha is not None:
        violations = sum(1 for n, d in pairs if d < alpha.beta(n))
    return B1Estimate(tuple(pairs), float(slope), (float(slope - 2 * se), float(slope + 2 * se)),
                      None if alpha is None else alpha.exponent, violations)


__all__ = [
    "B1Estimate", "CompressionFunction", "SampleCheck", "check_lamp_precondition", "check_sample",
    "choose_scale", "estimate_B1", "half_line_walls", "nested_lamp_distance", "phi_sigma_distance",
    "phi_sigma_pair", "results_csv", "run_experiment", "sample_elements", "scale_walls", "verify_compression",
]
