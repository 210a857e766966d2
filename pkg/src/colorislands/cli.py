"""Command-line surface: gen, solve, verify, render, scan.

Exit codes: 0 success, 1 verification failure, 2 precondition or parse
error, 3 internal invariant failure (a theorem-contradiction branch was
reached; always a bug).  The oracle node budget honors the
ISLANDS_NODE_LIMIT environment variable; --budget overrides it per call.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import generators, instance_io, oracle, render
from .errors import (
    ColorIslandsError,
    InternalInvariantError,
    PreconditionError,
)
from .geometry import verify_island_partition
from .hall import ColorProfile, colorful_tuple_partition, check_hall
from .planar import PlanarInstance, partition_plane
from .sandwich import BalancedInstance, partition_rd


def _meta_int(meta, key, override=None):
    if override is not None:
        return override
    v = meta.get(key)
    if not isinstance(v, int):
        raise PreconditionError(f"instance meta lacks integer field {key!r}")
    return v


def cmd_gen(args):
    seed = args.seed
    rng = random.Random(seed)
    if args.family == "rings":
        S = generators.rings(seed)
        meta = {"k": 5, "n": 10, "seed": seed, "family": "rings"}
    elif args.family in ("random_general_position", "convex_position"):
        if args.k is None or args.n is None:
            raise PreconditionError(f"family {args.family} needs --k and --n")
        dim = args.dim or 2
        m = args.m or (2 if dim == 2 else dim)
        if args.sizes:
            sizes = tuple(int(v) for v in args.sizes.split(","))
        else:
            sizes = generators.random_sizes(rng, args.k * args.n, m, args.n)
        if args.family == "convex_position":
            S = generators.convex_position(seed, dim, sizes)
        else:
            S = generators.random_general_position(seed, dim, sizes)
        meta = {
            "k": args.k,
            "n": args.n,
            "seed": seed,
            "family": args.family,
        }
    elif args.family == "tightness":
        if args.dim is None or args.variant is None or args.n is None:
            raise PreconditionError("family tightness needs --dim, --variant, --n")
        S, profile = generators.tightness_points(
            seed, args.dim, args.variant, args.n, args.k
        )
        meta = {
            "k": profile.k,
            "n": profile.n,
            "seed": seed,
            "family": "tightness",
            "variant": args.variant,
        }
    else:
        raise PreconditionError(f"unknown family {args.family!r}")
    instance_io.save_instance(args.out, S, meta)
    print(f"wrote {args.out}: {len(S)} points, dim {S.dim}, sizes {S.sizes()}")
    return 0


def _solve_plane(S, meta, args, doc):
    k = _meta_int(meta, "k", args.k)
    n = _meta_int(meta, "n", args.n)
    inst = PlanarInstance(S, k, n)
    cuts = []
    partition = partition_plane(inst, cut_log=cuts)
    report = verify_island_partition(partition, S, k, 2)
    doc.update(instance_io.solution_to_doc(partition, cuts, report.passed))
    return report


def _solve_rd(S, meta, args, doc):
    d = S.dim
    if len(S) % (d + 1):
        raise PreconditionError(f"|X|={len(S)} not divisible by d+1={d + 1}")
    n = len(S) // (d + 1)
    inst = BalancedInstance(S, n)
    cuts = []
    partition = partition_rd(inst, cut_log=cuts)
    report = verify_island_partition(partition, S, d + 1, d)
    doc.update(instance_io.solution_to_doc(partition, cuts, report.passed))
    return report


def _solve_hall(S, meta, args, doc):
    k = _meta_int(meta, "k", args.k)
    n = _meta_int(meta, "n", args.n)
    d = S.dim
    profile = ColorProfile(S.sizes(), k, n, d)
    tuples = colorful_tuple_partition(profile)
    # map abstract (color, ordinal) elements onto concrete point ids
    parts = [
        sorted(S.class_ids(c)[j] for c, j in tup) for tup in tuples
    ]
    ok = (
        len(parts) == n
        and all(len(p) == k for p in parts)
        and all(len({S.color[i] for i in p}) >= d for p in parts)
    )
    doc["parts"] = parts
    doc["cuts"] = []
    doc["verified"] = ok
    doc["slack"] = list(check_hall(profile).slack)
    return None


def _solve_oracle(S, meta, args, doc):
    k = _meta_int(meta, "k", args.k)
    n = _meta_int(meta, "n", args.n)
    j = meta.get("j", S.dim)
    budget = oracle.SearchBudget.default()
    result = oracle.brute_force_partition(S, k, j, n, budget)
    doc["status"] = result.status
    if result.status == "found":
        report = verify_island_partition(result.partition, S, k, j)
        doc.update(
            instance_io.solution_to_doc(result.partition, [], report.passed)
        )
        return report
    doc["parts"] = []
    doc["cuts"] = []
    doc["verified"] = False
    return None


def cmd_solve(args):
    S, meta = instance_io.load_instance(args.infile)
    doc = {"mode": args.mode}
    start = time.perf_counter()
    solver = {
        "plane": _solve_plane,
        "rd": _solve_rd,
        "hall": _solve_hall,
        "oracle": _solve_oracle,
    }.get(args.mode)
    if solver is None:
        raise PreconditionError(f"unknown mode {args.mode!r}")
    report = solver(S, meta, args, doc)
    doc["timing_ms"] = int(round((time.perf_counter() - start) * 1000))
    text = instance_io.dumps(doc)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if report is not None and not report.passed:
        print(f"self-verification FAILED: {report.failed_clause}: {report.witness}")
        return 1
    if "status" in doc and doc["status"] != "found":
        print(f"oracle search result: {doc['status']}")
    return 0


def cmd_verify(args):
    S, meta = instance_io.load_instance(args.infile)
    partition = instance_io.load_solution(args.sol)
    k = args.k if args.k is not None else _meta_int(meta, "k")
    j = args.j if args.j is not None else 2
    report = verify_island_partition(partition, S, k, j)
    for clause in report.clauses:
        line = f"{clause.name}: {clause.status}"
        if clause.detail:
            line += f" ({clause.detail})"
        print(line)
    print("PASS" if report.passed else "FAIL")
    return 0 if report.passed else 1


def cmd_render(args):
    S, meta = instance_io.load_instance(args.infile)
    partition = instance_io.load_solution(args.sol) if args.sol else None
    svg = render.render_svg(S, partition)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.out}")
    return 0


def _default_scan_matrix():
    """A small deterministic matrix of solvable regimes for scan runs."""
    specs = []
    for seed in range(3):
        rng = random.Random(1000 + seed)
        k, n = 3, 3
        sizes = generators.random_sizes(rng, k * n, 2, n)
        specs.append((f"plane-k{k}-n{n}-s{seed}", 2, k, n, sizes))
    for seed in range(3):
        rng = random.Random(2000 + seed)
        k, n = 3, 4
        sizes = generators.random_sizes(rng, k * n, 2, n)
        specs.append((f"plane-k{k}-n{n}-s{seed}", 2, k, n, sizes))
    out = []
    for name, dim, k, n, sizes in specs:
        S = generators.random_general_position(name, dim, sizes)
        out.append((name, S, k, n))
    return out


def cmd_scan(args):
    if not args.conjecture:
        raise PreconditionError("scan currently supports --conjecture only")
    budget = oracle.SearchBudget.default()
    if args.budget:
        budget = oracle.SearchBudget(node_limit=args.budget)
    targets = []
    if args.infile:
        for path in args.infile:
            S, meta = instance_io.load_instance(path)
            targets.append(
                (path, S, _meta_int(meta, "k"), _meta_int(meta, "n"))
            )
    else:
        targets = _default_scan_matrix()
    counterexamples = 0
    for name, S, k, n in targets:
        rep = oracle.conjecture_scan(S, k, S.m, S.dim, n, budget)
        print(
            f"{name}: hall_feasible={rep.hall_feasible} status={rep.status} "
            f"found={rep.found} nodes={rep.nodes}"
        )
        if rep.counterexample_dump:
            counterexamples += 1
            print("COUNTEREXAMPLE CANDIDATE:")
            print(rep.counterexample_dump)
    print(f"scan complete: {len(targets)} instances, {counterexamples} candidates")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="colorislands",
        description="partition colored point sets into disjoint colorful islands",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate an instance file")
    g.add_argument("--family", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--dim", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--sizes")
    g.add_argument("--variant")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run a solver on an instance file")
    s.add_argument("--mode", required=True, choices=["plane", "rd", "hall", "oracle"])
    s.add_argument("--in", dest="infile", required=True)
    s.add_argument("--out")
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="verify a solution file")
    v.add_argument("--in", dest="infile", required=True)
    v.add_argument("--sol", required=True)
    v.add_argument("--k", type=int)
    v.add_argument("--j", type=int)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("render", help="render instance (and solution) to SVG")
    r.add_argument("--in", dest="infile", required=True)
    r.add_argument("--sol")
    r.add_argument("--out", required=True)
    r.set_defaults(func=cmd_render)

    c = sub.add_parser("scan", help="oracle scan for conjecture counterexamples")
    c.add_argument("--conjecture", action="store_true")
    c.add_argument("--budget", type=int)
    c.add_argument("--in", dest="infile", nargs="*")
    c.set_defaults(func=cmd_scan)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return 3
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ColorIslandsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
