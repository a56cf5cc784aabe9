"""Command-line front end: ``sumsetlab <subcommand> [options]``.

Exit codes: 0 success, 2 a verification failed, 64 usage error, 65 resource cap.
Output is a JSON object {"manifest": ..., "result": ...} by default; big
integers are decimal strings so that nothing is rounded by JSON readers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import __version__
from . import census, covers, independents, shatter, structure
from ._bits import random_mask
from .errors import ResourceLimitError
from .gf2core import BitSubset, GF2Vector, SumMode
from .groups import AbelianGroup, GroupSubset
from .literals import f2_dim, parse_family, parse_group, parse_subset, parse_vector

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_RESOURCE = 0, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunManifest:
    subcommand: str
    params: dict
    seed: Optional[int]
    workers: int
    version: str = __version__
    peak_memory_estimate: Optional[int] = None
    wall_time: Optional[float] = None

    def to_dict(self, timing: bool) -> dict:
        d = {
            "subcommand": self.subcommand,
            "params": self.params,
            "seed": self.seed,
            "workers": self.workers,
            "version": self.version,
            "peak_memory_estimate": self.peak_memory_estimate,
        }
        if timing:
            d["wall_time"] = self.wall_time
        return d


@dataclass
class Outcome:
    result: dict
    ok: bool = True
    rows: Optional[list] = None
    memory: Optional[int] = None


def _group(args) -> AbelianGroup:
    if args.group is None:
        raise UsageError("--group is required")
    return parse_group(args.group)


def _f2_set(args) -> BitSubset:
    n = f2_dim(_group(args))
    if args.set is None:
        raise UsageError("--set is required")
    return BitSubset(n, parse_subset(args.set, 1 << n))


def _color_set(args, G: AbelianGroup) -> GroupSubset:
    if args.set is not None:
        return GroupSubset(G, parse_subset(args.set, G.order))
    return covers.random_color_subset(G, args.seed, args.density)


def cmd_census(args) -> Outcome:
    n = args.n
    res = census.census_cross(n, args.mode, args.threads)
    out = res.to_dict(timing=False)
    if n <= 4:
        out["incomplete_generators"] = str(census.count_incomplete_generators(n))
        out["incomplete_generators_bound"] = str(census.incomplete_generators_bound(n))
    return Outcome(out, memory=census.memory_estimate(n, 2))


def cmd_hplanes(args) -> Outcome:
    n = args.n
    out = {"n": n, "count_H": str(census.census_hyperplane_family(n))}
    if n <= 4:
        out["inclusion_exclusion"] = str(census.hn_inclusion_exclusion(n))
    if n >= 2:
        crude, pairwise, upper = census.sizeh_bounds(n)
        out.update(lower_crude=str(crude), lower_pairwise=str(pairwise), upper=str(upper))
    return Outcome(out)


def cmd_indsets(args) -> Outcome:
    extra = None
    if args.extra is not None:
        extra = GF2Vector(args.n, parse_vector(args.extra, args.n))
    count = independents.count_independent_sets(args.n, extra)
    return Outcome({
        "n": args.n,
        "extra": None if extra is None else extra.bits,
        "count": str(count),
        "reference": independents.reference_count(args.n),
    })


def cmd_parity(args) -> Outcome:
    hist = independents.parity_balance_distribution(args.n)
    out = {"n": args.n, "total": str(hist.total), "rows": hist.rows()}
    if args.beta is not None:
        tail = independents.balanced_tail_count(args.n, args.beta, hist)
        out.update(beta=args.beta, tail_count=str(tail), tail_fraction=tail / hist.total)
    return Outcome(out, rows=hist.rows())


def cmd_recognize(args) -> Outcome:
    S = _f2_set(args)
    res = structure.is_sumset(S, args.mode, args.budget)
    return Outcome({"set": S.members(), **res.to_dict()})


def cmd_complete(args) -> Outcome:
    S = _f2_set(args)
    v = None if args.v is None else GF2Vector(S.n, parse_vector(args.v, S.n))
    return Outcome(structure.hyperplane_completion(S, v).to_dict())


def cmd_lift(args) -> Outcome:
    A = _f2_set(args)
    lifted = structure.lift_lower_bound(A)
    return Outcome({"A": A.members(), "lifted": lifted.members(), "n": lifted.n})


def cmd_cover(args) -> Outcome:
    G = _group(args)
    S = _color_set(args, G)
    sol = covers.greedy_union_cover(G, S, args.candidates, args.seed, args.budget)
    q = covers.max_sumset_inside(G, S, SumMode.DISTINCT, args.budget)
    out = sol.to_dict()
    out.update(
        group=G.label,
        q=q.size,
        q_exact=q.exact,
        q_upper_bound=q.upper_bound,
        lower_bound=covers.cover_lower_bound(G, S, q.upper_bound) if len(S) else 0,
    )
    return Outcome(out, ok=sol.verified)


def cmd_intersect_repr(args) -> Outcome:
    if args.set is not None:
        S = BitSubset(args.n, parse_subset(args.set, 1 << args.n))
        sol = covers.intersection_representation(S)
        return Outcome(sol.to_dict(), ok=sol.verified)
    rng = np.random.default_rng(args.seed)
    N = 1 << args.n
    verified, failed_coords = 0, 0
    for _ in range(args.samples):
        S = BitSubset(args.n, random_mask(N, rng) | 1)
        sol = covers.intersection_representation(S)
        verified += sol.verified
        failed_coords += len(sol.failures)
    return Outcome({
        "n": args.n,
        "samples": args.samples,
        "verified": verified,
        "verified_rate": verified / args.samples if args.samples else None,
        "failed_coordinates": failed_coords,
    })


def cmd_manysums(args) -> Outcome:
    G = _group(args)
    A = _color_set(args, G)
    return Outcome(covers.greedy_many_sums(G, A).to_dict())


def cmd_maxclique(args) -> Outcome:
    G = _group(args)
    S = _color_set(args, G)
    res = covers.max_sumset_inside(G, S, args.mode, args.budget)
    return Outcome({"group": G.label, "S_size": len(S), **res.to_dict()})


def cmd_shatter(args) -> Outcome:
    sets = parse_family(args.family)
    n = args.n if args.n is not None else max((max(s) + 1 for s in sets if s), default=0)
    F = shatter.SetFamily.from_sets(n, sets)
    if args.check == "pajor":
        count, size, ok = shatter.pajor_check(F)
        return Outcome({"n": n, "shattered_count": count, "family_size": size, "ok": ok}, ok=ok)
    if args.check == "fkg":
        J = shatter.downward_closure(F)
        K = J if args.other is None else shatter.downward_closure(
            shatter.SetFamily.from_sets(n, parse_family(args.other)))
        margin = shatter.fkg_margin(J, K)
        return Outcome({"n": n, "margin": str(margin), "ok": margin >= 0}, ok=margin >= 0)
    J = shatter.shattered_family(F)
    w = shatter.weight_tail_witness(J, args.gamma)
    required = len(J) > args.gamma * (1 << n)
    ok = w is not None or not required
    return Outcome({
        "n": n,
        "family_size": len(J),
        "gamma": args.gamma,
        "bound": shatter.weight_tail_bound(n, args.gamma),
        "witness": None if w is None else [j for j in range(n) if w >> j & 1],
        "ok": ok,
    }, ok=ok)


def cmd_bounds(args) -> Outcome:
    return Outcome(census.union_count_bound(args.N, args.s).to_dict())


COMMANDS: dict[str, Callable] = {
    "census": cmd_census,
    "hplanes": cmd_hplanes,
    "indsets": cmd_indsets,
    "parity": cmd_parity,
    "recognize": cmd_recognize,
    "complete": cmd_complete,
    "lift": cmd_lift,
    "cover": cmd_cover,
    "intersect-repr": cmd_intersect_repr,
    "manysums": cmd_manysums,
    "maxclique": cmd_maxclique,
    "shatter": cmd_shatter,
    "bounds": cmd_bounds,
}


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=None, help="worker count (default: all CPUs)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", default=None, help="write the result here instead of stdout")
    common.add_argument("--timing", action="store_true", help="include wall time in the manifest")

    p = _Parser(prog="sumsetlab", description="Sumsets in F_2^n and finite abelian groups.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    s = add("census", "exact counts of sumsets and hyperplane-containing sets")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--mode", default="inclusive", choices=["inclusive", "distinct"])
    s = add("hplanes", "count sets containing a hyperplane")
    s.add_argument("--n", type=int, required=True)
    s = add("indsets", "count independent sets of the hypercube")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--extra", default=None, help="extra Cayley generator vector")
    s = add("parity", "parity-balance histogram of independent sets")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--beta", type=float, default=None)
    s = add("recognize", "decide whether a set is a sumset")
    s.add_argument("--group", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--mode", default="inclusive", choices=["inclusive", "distinct"])
    s.add_argument("--budget", type=int, default=structure.DEFAULT_BUDGET)
    s = add("complete", "hyperplane completion of a set containing a hyperplane")
    s.add_argument("--group", required=True)
    s.add_argument("--set", required=True)
    s.add_argument("--v", default=None)
    s = add("lift", "lift a set of F_2^n to F_2^(n+1)")
    s.add_argument("--group", required=True)
    s.add_argument("--set", required=True)
    s = add("cover", "greedy union-of-sumsets cover of a colour set")
    s.add_argument("--group", required=True)
    s.add_argument("--set", default=None)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--strategy", choices=["greedy"], default="greedy")
    s.add_argument("--candidates", type=int, default=16)
    s.add_argument("--budget", type=int, default=covers.DEFAULT_CLIQUE_BUDGET)
    s = add("intersect-repr", "write sets as intersections of n sumsets")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--set", default=None)
    s.add_argument("--samples", type=int, default=1000)
    s = add("manysums", "greedy subset with many distinct sums")
    s.add_argument("--group", required=True)
    s.add_argument("--set", default=None)
    s.add_argument("--density", type=float, default=0.5)
    s = add("maxclique", "largest A whose sumset fits in a colour set")
    s.add_argument("--group", required=True)
    s.add_argument("--set", default=None)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--mode", default="distinct", choices=["inclusive", "distinct"])
    s.add_argument("--budget", type=int, default=covers.DEFAULT_CLIQUE_BUDGET)
    s = add("shatter", "shattering, correlation and weight checks on a set family")
    s.add_argument("--family", required=True, help="JSON list of index lists, or @file.json")
    s.add_argument("--other", default=None, help="second family for --check fkg")
    s.add_argument("--n", type=int, default=None, help="ground set size (default: from the family)")
    s.add_argument("--check", choices=["pajor", "fkg", "chern"], default="pajor")
    s.add_argument("--gamma", type=float, default=0.5)
    s = add("bounds", "parameters of the union-of-sumsets counting bound")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--s", type=int, required=True)
    return p


def _scalar(v) -> str:
    return json.dumps(v) if isinstance(v, (list, dict)) else ("" if v is None else str(v))


def render(doc: dict, fmt: str, rows: Optional[list]) -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if rows:
            keys = list(rows[0])
            w.writerow(keys)
            for r in rows:
                w.writerow([_scalar(r[k]) for k in keys])
        else:
            w.writerow(["key", "value"])
            for k in sorted(doc["result"]):
                w.writerow([k, _scalar(doc["result"][k])])
        return buf.getvalue()
    lines = [f"{k}: {_scalar(v)}" for k, v in sorted(doc["result"].items())]
    return "\n".join(lines) + "\n"


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")
    workers = census.resolve_workers(args.threads)
    args.threads = workers
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("command", "format", "out", "timing")}
    t0 = time.perf_counter()
    try:
        outcome = COMMANDS[args.command](args)
    except ResourceLimitError as exc:
        print(f"sumsetlab: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (UsageError, ValueError, OSError) as exc:
        print(f"sumsetlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    wall = time.perf_counter() - t0
    manifest = RunManifest(args.command, params, args.seed, workers,
                           peak_memory_estimate=outcome.memory, wall_time=wall)
    doc = {"manifest": manifest.to_dict(args.timing), "result": outcome.result}
    text = render(doc, args.format, outcome.rows)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if not args.timing:
        print(f"sumsetlab: {args.command} finished in {wall:.3f}s", file=sys.stderr)
    return EXIT_OK if outcome.ok else EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
