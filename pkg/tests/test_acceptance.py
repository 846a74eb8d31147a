"""Acceptance criteria 1-10, one test each.

Every test records a PASS/FAIL line; the lines are printed together at the
end of the pytest run (and directly when this file is run as a script).
"""

import itertools
import random
import time
from fractions import Fraction

import networkx as nx
import numpy as np
import pytest

from wallkit.compression import CompressionFunction, half_line_walls, run_experiment
from wallkit.gauges import ConfigurationGroup, mask_support_gauge, support_gauge
from wallkit.groups import FiniteGroup, FreeGroup, FreeWord, GAction, IntegerGroup
from wallkit.hecke import hecke_cycle
from wallkit.lift import (Semidirect, check_lamplighter_equivariance, check_lift_equivariance, lift_distance,
                          lift_walls_explicit, star_lamp_diameter)
from wallkit.trees import Tree, cover_walk_length, tree_to_walls
from wallkit.walls import WallsStructure, from_alternate, orbit_invariant_walls, symmetrize, to_alternate
from wallkit.wreath import (CombinedKernel, GeneratingData, WreathProduct, conjugate_bound, factor_conjugates,
                            parry_length, random_walk_element, reassemble)

import oracles
from conftest import ACCEPTANCE, random_walls


def record(k, ok, detail):
    line = f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[k] = line
    print(line)
    assert ok, line


def shift_action(n):
    G = FiniteGroup.cyclic(n)
    return GAction(G, n, [tuple((g + x) % n for x in range(n)) for g in G.elements])


def test_criterion_01_tree_walls():
    start = time.perf_counter()
    rng = random.Random(101)
    mismatches = 0
    for _ in range(50):
        n = rng.randint(2, 200)
        T = Tree.random(n, rng)
        num, den = tree_to_walls(T).scaled_distance_table()
        bfs = oracles.tree_distances(n, T.edges)
        expected = np.array([[bfs[x][y] for y in range(n)] for x in range(n)], dtype=np.int64) * den
        mismatches += int((num != expected).sum())
    elapsed = time.perf_counter() - start
    record(1, mismatches == 0 and elapsed < 5,
           f"50 trees <=200 vertices, mismatching pairs={mismatches}, {elapsed:.2f}s (limit 5s)")


def test_criterion_02_lift_oracle():
    start = time.perf_counter()
    rng = random.Random(102)
    bad = 0
    pairs = 0
    for _ in range(100):
        n = rng.randint(1, 6)
        order = rng.randint(1, 3)
        mu = random_walls(rng, n, rng.randint(0, 10))
        H = FiniteGroup.cyclic(order)
        phi = support_gauge(H, n).as_gauge()
        configs = list(ConfigurationGroup(H, n).elements())
        window = list(dict.fromkeys((rng.choice(configs), rng.randrange(n)) for _ in range(rng.randint(1, 20))))
        lifted = lift_walls_explicit(mu, phi, window)
        for i, p in enumerate(window):
            for j, q in enumerate(window):
                pairs += 1
                if lifted.distance(i, j) != lift_distance(mu, phi, p, q):
                    bad += 1
    elapsed = time.perf_counter() - start
    record(2, bad == 0 and elapsed < 10,
           f"100 instances, {pairs} pairs, mismatches={bad}, exact, {elapsed:.2f}s (limit 10s)")


def test_criterion_03_equivariance():
    start = time.perf_counter()
    total_bad = 0
    checked = 0
    rng = random.Random(103)
    for n in range(2, 9):
        act = shift_action(n)
        seeds = [(rng.randrange(1, (1 << n) - 1), Fraction(rng.randint(1, 3), rng.randint(1, 2))) for _ in range(2)]
        mu = orbit_invariant_walls(act, seeds)
        total_bad += len(check_lamplighter_equivariance(mu, act))
        checked += (1 << n) * n
        if n <= 3:
            # the literal definition, element by element, as a cross-check of the vectorised table
            Z2 = FiniteGroup.cyclic(2)
            W = ConfigurationGroup(Z2, n)
            S = Semidirect(W, act)
            window = [(w, x) for w in W.elements() for x in range(n)]
            total_bad += len(check_lift_equivariance(mu, support_gauge(Z2, n).as_gauge(), S.act,
                                                     list(S.elements()), window))
    elapsed = time.perf_counter() - start
    record(3, total_bad == 0,
           f"Z/n shift, n=2..8, all of W x| G on all point pairs, violations={total_bad}, exact, {elapsed:.1f}s")


def test_criterion_04_parry_length():
    start = time.perf_counter()
    F2 = FreeGroup(2)
    Z2 = FiniteGroup.cyclic(2)
    W = WreathProduct(Z2, F2)
    gen = GeneratingData.cyclic(F2, Z2)
    ball = oracles.lamplighter_ball(6)
    bad = 0
    for (lamps, cursor), d in ball.items():
        a = W.make({FreeWord(p): v for p, v in lamps}, FreeWord(cursor))
        if parry_length(a, gen) != d:
            bad += 1
    elapsed = time.perf_counter() - start
    record(4, bad == 0 and elapsed < 60,
           f"Z/2 wr F2 ball of radius 6 ({len(ball)} elements), mismatches={bad}, {elapsed:.2f}s (limit 60s)")


def test_criterion_05_covering_walk():
    rng = random.Random(105)
    bad = 0
    for _ in range(500):
        n = rng.randint(1, 12)
        T = Tree.random(n, rng)
        S = rng.sample(range(n), rng.randint(0, min(4, n)))
        a, b = rng.randrange(n), rng.randrange(n)
        if cover_walk_length(T, a, b, S) != oracles.covering_walk(n, T.edges, a, b, S):
            bad += 1
    record(5, bad == 0, f"500 random trees <=12 vertices, |S|<=4, mismatches={bad}, exact")


def test_criterion_06_compression_chain():
    start = time.perf_counter()
    F2 = FreeGroup(2)
    samples = 100_000
    Z2 = FiniteGroup.cyclic(2)
    r2 = run_experiment(WreathProduct(Z2, F2), GeneratingData.cyclic(F2, Z2), WallsStructure(2, [(0b10, 1)]),
                        CompressionFunction.capped(1, C=2), samples, 12, seed=6)
    Z = IntegerGroup()
    rz = run_experiment(WreathProduct(Z, F2), GeneratingData.cyclic(F2, Z), half_line_walls(12),
                        CompressionFunction.power(1, C=2), samples, 12, seed=7)
    bad2 = sum(1 for r in r2 if not r.ok)
    badz = sum(1 for r in rz if not r.ok)
    half = sum(1 for r in rz if 2 * r.distance < r.length)
    elapsed = time.perf_counter() - start
    record(6, bad2 == 0 and badz == 0 and half == 0 and elapsed < 300,
           f"1e5 samples each, radius 12: Z/2 violations={bad2}, Z violations={badz}, "
           f"Z samples below |wg|/2={half}, {elapsed:.1f}s (limit 300s)")


def test_criterion_07_alternate_round_trip():
    rng = random.Random(107)
    bad = 0
    for _ in range(200):
        n = rng.randint(2, 10)
        mu = random_walls(rng, n, rng.randint(0, 15))
        nu = to_alternate(mu)
        sym = from_alternate(nu)
        ok = (to_alternate(sym) == nu
              and from_alternate(to_alternate(sym)) == sym
              and symmetrize(sym) == sym
              and sym.is_symmetric())
        for x, y in itertools.combinations(range(n), 2):
            d = mu.distance(x, y)
            ok = ok and nu.distance(x, y) == d and sym.distance(x, y) == d
        bad += not ok
    record(7, bad == 0, f"200 random structures |X|<=10, failing structures={bad}, bit-exact")


def test_criterion_08_hecke_cycle():
    start = time.perf_counter()
    S3 = FiniteGroup.symmetric(3)
    S4 = FiniteGroup.symmetric(4)
    D6 = FiniteGroup.dihedral(6)
    Z12 = FiniteGroup.cyclic(12)
    gen = lambda G, perms: sorted(G.generated(G.element(p) for p in perms))
    s3_gens = [S3.element((1, 0, 2)), S3.element((0, 2, 1))]
    s4_gens = [S4.element((1, 0, 2, 3)), S4.element((1, 2, 3, 0))]
    d6_gens = [D6.element(tuple((i + 1) % 6 for i in range(6))), D6.element(tuple((-i) % 6 for i in range(6)))]
    pairs = [
        ("S3/<(1 2)>", S3, gen(S3, [(1, 0, 2)]), s3_gens),
        ("S3/A3", S3, gen(S3, [(1, 2, 0)]), s3_gens),
        ("S3/1", S3, [S3.identity], s3_gens),
        ("S4/<(1 2)>", S4, gen(S4, [(1, 0, 2, 3)]), s4_gens),
        ("S4/V4", S4, gen(S4, [(1, 0, 3, 2), (2, 3, 0, 1)]), s4_gens),
        ("S4/A4", S4, gen(S4, [(1, 2, 0, 3), (0, 2, 3, 1)]), s4_gens),
        ("S4/S3", S4, gen(S4, [(1, 0, 2, 3), (1, 2, 0, 3)]), s4_gens),
        ("S4/D4", S4, gen(S4, [(1, 2, 3, 0), (2, 1, 0, 3)]), s4_gens),
        ("D6/<reflection>", D6, gen(D6, [tuple((-i) % 6 for i in range(6))]), d6_gens),
        ("Z12/<4>", Z12, sorted(Z12.generated([4])), [1]),
    ]
    failed = [name for name, G, H, S in pairs if not hecke_cycle(G, H, S).consistent]
    elapsed = time.perf_counter() - start
    record(8, not failed and elapsed < 5,
           f"{len(pairs)} finite pairs, inconsistent={failed or 'none'}, invariance exhaustive, "
           f"{elapsed:.2f}s (limit 5s)")


def test_criterion_09_factorisation():
    F2 = FreeGroup(2)
    Z2 = FiniteGroup.cyclic(2)
    W = WreathProduct(Z2, F2)
    gen = GeneratingData.cyclic(F2, Z2)
    rng = random.Random(109)
    trips = bounds = 0
    for _ in range(10_000):
        a = random_walk_element(W, gen, rng, 12)
        pieces, g = factor_conjugates(a)
        trips += reassemble(W, pieces, g) != a
        bounds += not conjugate_bound(a, lambda x: parry_length(x, gen), len, gen.lamp_length).ok
    record(9, trips == 0 and bounds == 0,
           f"1e4 elements, round-trip failures={trips}, (3k+1)K bound failures={bounds}")


def test_criterion_10_properness():
    G = FiniteGroup.cyclic(4)
    Z2 = FiniteGroup.cyclic(2)
    shift = GAction.regular(G)
    mu = orbit_invariant_walls(shift, [(0b0001, 1), (0b0011, Fraction(1, 2))])
    lam = orbit_invariant_walls(shift, [(0b0011, 1)])
    sigma = WallsStructure(2, [(0b01, Fraction(1, 2)), (0b10, Fraction(1, 2))])
    K = CombinedKernel(G, [0], Z2, mu, lam, sigma)
    elems = K.elements()
    _, brute = oracles.combined_lamplighter(oracles.walls_as_sets(mu), oracles.walls_as_sets(lam),
                                            oracles.walls_as_sets(sigma), 4, 2)
    as_tuple = lambda a: (tuple(a.lamp(x, 0) for x in range(4)), a.cursor)
    mismatched = 0
    radii = 0
    for center in elems:
        values = sorted({brute(as_tuple(center), as_tuple(a)) for a in elems})
        for R in values:
            radii += 1
            expected = {as_tuple(a) for a in elems if brute(as_tuple(center), as_tuple(a)) <= R}
            got = {as_tuple(a) for a in K.sublevel(center, R)}
            mismatched += got != expected
    growth = [star_lamp_diameter(r) for r in range(2, 9)]
    increasing = all(a < b for a, b in zip(growth, growth[1:]))
    record(10, mismatched == 0 and increasing,
           f"Z/4 lamplighter: {radii} (centre, radius) sub-level sets, mismatches={mismatched}; "
           f"non-proper set diameter over radii 2..8 = {[int(g) for g in growth]}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
