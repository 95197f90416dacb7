"""``pgi`` command line.

Exit codes: 0 success (or isomorphic), 1 not isomorphic, 2 input error.
Series indices on the command line are 1-based, like element ids.
"""
from __future__ import annotations

import argparse
import logging
import os
import random
import sys

from .driver import FAMILIES, FamilySpec, canon, decide_route, generate_family, iso, random_relabel
from .errors import BadParameters, PGIError
from .gadget import build_X, read_graph, write_graph
from .graphcanon import canonical_form
from .groups import format_group, profile, rank, read_group, write_group
from .seriescanon import canon_series
from .series import enumerate_composition_series, format_series

EXIT_OK, EXIT_NOT_ISO, EXIT_INPUT = 0, 1, 2


def _max_order() -> int:
    raw = os.environ.get("PGI_MAX_ORDER", "256")
    try:
        return int(raw)
    except ValueError:
        raise BadParameters(f"PGI_MAX_ORDER must be an integer, got {raw!r}") from None


def _load(path):
    g = read_group(path)
    limit = _max_order()
    if g.n > limit:
        raise BadParameters(f"{path}: order {g.n} exceeds PGI_MAX_ORDER={limit}")
    return g


def _series_at(g, index):
    series = enumerate_composition_series(g)
    if not 1 <= index <= len(series):
        raise BadParameters(f"series index {index} out of range 1..{len(series)}")
    return series[index - 1]


def cmd_validate(args):
    g = _load(args.file)
    print(f"valid group of order {g.n}, identity {g.identity + 1}")
    return EXIT_OK


def cmd_profile(args):
    g = _load(args.file)
    prof = profile(g)
    print(f"order {prof.order}")
    print(f"smallest_prime {prof.smallest_prime}")
    print(f"p_group {'yes' if prof.is_p_group else 'no'}")
    if prof.is_p_group:
        print(f"composition_length {prof.prime_power_exponent}")
    print(f"rank {rank(g)}")
    if g.n >= 2:
        d = decide_route(prof)
        print(f"alpha {d.alpha:.4f}")
        print(f"route {d.chosen}")
    return EXIT_OK


def cmd_iso(args):
    g, h = _load(args.file_a), _load(args.file_b)
    phi = iso(g, h, force=args.route)
    if phi is None:
        print("not isomorphic")
        return EXIT_NOT_ISO
    print("isomorphic")
    if args.witness:
        for x, y in enumerate(phi.forward):
            print(f"{x + 1} -> {y + 1}")
    return EXIT_OK


def cmd_canon(args):
    g = _load(args.file)
    sys.stdout.write(format_group(canon(g, force=args.route)))
    return EXIT_OK


def cmd_series(args):
    g = _load(args.file)
    series = enumerate_composition_series(g)
    if args.list:
        for s in series:
            print(format_series(s))
    else:
        print(len(series))
    return EXIT_OK


def cmd_export_graph(args):
    g = _load(args.file)
    write_graph(build_X(_series_at(g, args.series)), args.out)
    return EXIT_OK


def cmd_canon_graph(args):
    print(canonical_form(read_graph(args.graphfile)).hex())
    return EXIT_OK


def cmd_canon_series(args):
    g = _load(args.file)
    sys.stdout.write(canon_series(_series_at(g, args.series)).dumps())
    return EXIT_OK


def _parse_factor(text):
    parts = text.split(":")
    fam = parts[0]
    nums = [int(x) if x else None for x in parts[1:]]
    nums += [None] * (2 - len(nums))
    return FamilySpec(fam, nums[0], nums[1])


def cmd_gen(args):
    factors = ()
    if args.factors:
        try:
            factors = tuple(_parse_factor(f) for f in args.factors.split(","))
        except ValueError:
            raise BadParameters(f"cannot parse --factors {args.factors!r}") from None
    spec = FamilySpec(args.family, args.p, args.k, factors)
    g = generate_family(spec)
    write_group(g, args.out, comments=[f"family={args.family} p={args.p} k={args.k}"])
    return EXIT_OK


def cmd_relabel(args):
    g = _load(args.file)
    h, _ = random_relabel(g, random.Random(args.seed))
    write_group(h, args.out, comments=[f"relabeled with seed {args.seed}"])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="pgi", description="Finite group isomorphism and canonization.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log routing decisions to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check the group axioms")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("profile", help="order, smallest prime, rank and chosen route")
    p.add_argument("file")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("iso", help="decide isomorphism (exit 0 yes, 1 no)")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--route", choices=["series", "gen"])
    p.add_argument("--witness", action="store_true", help="print the isomorphism as 'i -> j' lines")
    p.set_defaults(func=cmd_iso)

    p = sub.add_parser("canon", help="print the canonical multiplication table")
    p.add_argument("file")
    p.add_argument("--route", choices=["series", "gen"])
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("series", help="count or list composition series")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("export-graph", help="write X(S) for one series in cgraph format")
    p.add_argument("file")
    p.add_argument("--series", type=int, required=True, help="1-based index into 'series --list'")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_graph)

    p = sub.add_parser("canon-graph", help="print the canonical encoding of a cgraph file as hex")
    p.add_argument("graphfile")
    p.set_defaults(func=cmd_canon_graph)

    p = sub.add_parser("canon-series", help="print the canonical form of one composition series")
    p.add_argument("file")
    p.add_argument("--series", type=int, required=True, help="1-based index into 'series --list'")
    p.set_defaults(func=cmd_canon_series)

    p = sub.add_parser("gen", help="write a group from a standard family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--p", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--factors", help="for direct-product: comma list of family:p:k")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("relabel", help="write a randomly relabeled copy")
    p.add_argument("file")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_relabel)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except (PGIError, OSError) as exc:
        print(f"pgi: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
