"""Command line entry point.

Exit status is 0 on success, 1 when a verification finds violations and 2 on
bad input (malformed files, unknown subcommands, out-of-range arguments).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .compression import (CompressionFunction, choose_scale, estimate_B1, half_line_walls, phi_sigma_pair,
                          results_csv, run_experiment)
from .errors import EstimationError, InputError, QueryError
from .gauges import mask_support_gauge
from .groups import FiniteGroup, FreeGroup, GAction, IntegerGroup
from .hecke import coset_graph, hecke_check, hecke_cycle
from .lift import check_lamplighter_equivariance, lift_distance, lift_walls_explicit
from .walls import WallsStructure, l1_embed, symmetrize
from .wreath import (GeneratingData, LampCodec, WreathProduct, factor_conjugates, format_element, parry_length,
                     parse_element, reassemble)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _lamp_group(spec: str):
    spec = spec.lower()
    if spec == "z":
        return IntegerGroup()
    if spec.startswith("z") and spec[1:].isdigit() and int(spec[1:]) >= 2:
        return FiniteGroup.cyclic(int(spec[1:]))
    raise InputError(f"unknown lamp group {spec!r} (use z, z2, z3, ...)")


def _default_sigma(H, radius: int):
    if isinstance(H, IntegerGroup):
        return half_line_walls(radius)
    if H.order == 2:
        return WallsStructure(2, [(0b10, 1)])
    # all arcs of length floor(n/2) on the cycle, the usual cycle walls
    n = H.order
    walls = []
    for start in range(n):
        walls.append((sum(1 << ((start + i) % n) for i in range(n // 2)), Fraction(1, 2)))
    return WallsStructure.collect(n, walls)


def _wreath_setup(args):
    G = FreeGroup(args.rank)
    H = _lamp_group(args.lamps)
    return WreathProduct(H, G), LampCodec(H), GeneratingData.cyclic(G, H)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError:
        raise InputError(f"expected a list of integers, got {text!r}") from None


# -- walls -----------------------------------------------------------------

def cmd_walls(args) -> int:
    mu = WallsStructure.load(args.file)
    if args.action == "dist":
        if args.x is None or args.y is None:
            raise InputError("walls dist needs two points")
        print(mu.label_distance(_point(args.x), _point(args.y)))
    elif args.action == "embed":
        base = 0 if args.base is None else args.base
        if not 0 <= base < mu.size:
            raise InputError(f"base point {base} outside ground set")
        rows = l1_embed(mu, base)
        text = "".join(" ".join(str(v) for v in row) + "\n" for row in rows)
        _emit(text, args.out)
    else:
        _emit(symmetrize(mu).to_text(), args.out)
    return 0


def _point(text: str):
    try:
        return int(text)
    except ValueError:
        return text


# -- lift ------------------------------------------------------------------

def _config(text: str, n: int) -> int:
    if len(text) != n or set(text) - {"0", "1"}:
        raise InputError(f"configuration must be {n} characters of 0/1, got {text!r}")
    return sum(1 << i for i, c in enumerate(text) if c == "1")


def cmd_lift(args) -> int:
    mu = WallsStructure.load(args.walls)
    phi = mask_support_gauge()
    n = mu.size
    if args.action == "dist":
        p = (_config(args.w1, n), args.x1)
        q = (_config(args.w2, n), args.x2)
        for x in (args.x1, args.x2):
            if not 0 <= x < n:
                raise InputError(f"point {x} outside ground set")
        print(lift_distance(mu, phi, p, q))
        return 0
    if n > 10:
        raise InputError("lift audit enumerates (Z/2)^X x X; keep the ground set at 10 points or fewer")
    G = FiniteGroup.cyclic(n)
    shift = GAction(G, n, tuple(tuple((g + x) % n for x in range(n)) for g in G.elements))
    bad = check_lamplighter_equivariance(mu, shift)
    window = [(w, x) for w in range(1 << min(n, 3)) for x in range(n)]
    explicit = lift_walls_explicit(mu, phi, window)
    mismatches = sum(1 for i, p in enumerate(window) for j, q in enumerate(window)
                     if explicit.distance(i, j) != lift_distance(mu, phi, p, q))
    print(f"equivariance_violations={len(bad)}")
    print(f"explicit_mismatches={mismatches}")
    return 0 if not bad and not mismatches else 1


# -- wreath ----------------------------------------------------------------

def cmd_wreath(args) -> int:
    W, codec, gen = _wreath_setup(args)
    a = parse_element(args.element, W, codec)
    if args.action == "len":
        print(parry_length(a, gen))
    elif args.action == "dist":
        if args.other is None:
            raise InputError("wreath dist needs two elements")
        b = parse_element(args.other, W, codec)
        top = max([abs(h) for _, h in a.lamps + b.lamps] + [1]) if isinstance(W.H, IntegerGroup) else 1
        sigma = WallsStructure.load(args.sigma) if args.sigma else _default_sigma(W.H, top)
        print(phi_sigma_pair(sigma, a, b, W.H.identity))
    else:
        pieces, g = factor_conjugates(a)
        G = W.G
        for p, h in pieces:
            print(f"{G.format(p)} {codec.format(h)} {G.format(G.inv(p))}")
        print(f"cursor {G.format(g)}")
        back = reassemble(W, pieces, g)
        print(f"roundtrip={'ok' if back == a else 'failed'} ({format_element(back, W, codec)})")
        return 0 if back == a else 1
    return 0


# -- compress --------------------------------------------------------------

def _alpha(spec: str) -> CompressionFunction:
    if spec == "min1":
        return CompressionFunction.capped(1)
    if spec == "linear":
        return CompressionFunction.power(1)
    if spec.startswith("power:"):
        try:
            return CompressionFunction.power(float(spec.split(":", 1)[1]))
        except ValueError:
            raise InputError(f"bad exponent in {spec!r}") from None
    raise InputError(f"unknown compression function {spec!r} (use min1, linear or power:d)")


def cmd_compress(args) -> int:
    if args.seed is None:
        raise InputError("--seed is required for sampling commands")
    if args.samples < 1 or args.radius < 1:
        raise InputError("--samples and --radius must be positive")
    W, codec, gen = _wreath_setup(args)
    sigma = _default_sigma(W.H, args.radius)
    alpha = _alpha(args.alpha)
    C = Fraction(args.scale) if args.scale else choose_scale(alpha, 4 * args.radius)
    alpha = alpha.with_scale(C)
    results = run_experiment(W, gen, sigma, alpha, args.samples, args.radius, args.seed, W.H.identity)
    violations = sum(1 for r in results if not r.ok)
    if args.action == "estimate":
        est = estimate_B1([(r.length, r.distance) for r in results], alpha)
        summary = (f"seed={args.seed} samples={len(results)} violations={violations} C={C} "
                   f"fitted_slope={est.slope:.4f} band=[{est.band[0]:.4f},{est.band[1]:.4f}] "
                   f"analytic_exponent={est.analytic_exponent}\n")
    else:
        summary = f"seed={args.seed} samples={len(results)} violations={violations} C={C}\n"
    if args.format == "csv":
        _emit(results_csv(results, args.seed), args.out)
        sys.stdout.write(summary if args.out else "")
        if not args.out:
            sys.stderr.write(summary)
    else:
        _emit(summary, args.out)
    return 0 if violations == 0 else 1


# -- hecke -----------------------------------------------------------------

def cmd_hecke(args) -> int:
    G = FiniteGroup.load(args.group)
    H = _int_list(args.subgroup)
    for h in H:
        if not 0 <= h < G.order:
            raise InputError(f"element {h} not in G")
    report = hecke_check(G, H)
    text = report.to_text()
    ok = report.verdict
    if args.gens:
        S = _int_list(args.gens)
        S = sorted(set(S) | {G.inv(s) for s in S})
        graph = coset_graph(G, H, S)
        cycle = hecke_cycle(G, H, S)
        text += f"graph_edges={graph.number_of_edges()}\n"
        text += f"consistent={'yes' if cycle.consistent else 'no'}\n"
        ok = ok and cycle.consistent
    _emit(text, args.out)
    return 0 if ok else 1


# --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wallkit", description="Walls structures, lifts and wreath products.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write output to this file")
        p.add_argument("--format", choices=["csv", "text"], default="text")

    p = sub.add_parser("walls", help="queries on a walls file")
    p.add_argument("action", choices=["dist", "embed", "symmetrize"])
    p.add_argument("file")
    p.add_argument("x", nargs="?")
    p.add_argument("y", nargs="?")
    p.add_argument("--base", type=int)
    common(p)
    p.set_defaults(run=cmd_walls)

    p = sub.add_parser("lift", help="lifted structure on (Z/2)^X x X")
    p.add_argument("action", choices=["dist", "audit"])
    p.add_argument("--walls", required=True)
    p.add_argument("--w1", default="")
    p.add_argument("--x1", type=int, default=0)
    p.add_argument("--w2", default="")
    p.add_argument("--x2", type=int, default=0)
    common(p)
    p.set_defaults(run=cmd_lift)

    p = sub.add_parser("wreath", help="lamplighters over free groups")
    p.add_argument("action", choices=["len", "dist", "factor"])
    p.add_argument("element")
    p.add_argument("other", nargs="?")
    p.add_argument("--lamps", default="z2")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--sigma", help="walls file on the lamp group")
    common(p)
    p.set_defaults(run=cmd_wreath)

    p = sub.add_parser("compress", help="compression chain experiments")
    p.add_argument("action", choices=["verify", "estimate"])
    p.add_argument("--lamps", default="z2")
    p.add_argument("--rank", type=int, default=2)
    p.add_argument("--alpha", default="min1")
    p.add_argument("--scale", help="scale constant C (default: chosen automatically)")
    p.add_argument("--radius", type=int, default=12)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    common(p)
    p.set_defaults(run=cmd_compress)

    p = sub.add_parser("hecke", help="Hecke pair checks on a finite group")
    p.add_argument("action", choices=["check"])
    p.add_argument("--group", required=True, help="Cayley table file")
    p.add_argument("--subgroup", required=True, help="element indices, comma separated")
    p.add_argument("--gens", help="generating set for the coset graph and kernel")
    common(p)
    p.set_defaults(run=cmd_hecke)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args)
    except (InputError, QueryError, EstimationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
