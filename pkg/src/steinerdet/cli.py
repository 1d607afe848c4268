"""Command-line interface.

Results stream to stdout as newline-delimited JSON (one object per
instance, then a closing summary object embedding the run manifest);
--csv switches the instance records to CSV.  Diagnostics go to stderr.

Exit codes: 0 verified/success, 1 refuted, 2 usage error,
3 inconclusive or size-limited.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time

from . import __version__, analysis
from .cache import cached_resultant
from .factorint import factor_integer
from .steiner import build_hypermatrix, gradient_system, steiner_polynomial
from .trees import (
    SizeLimitError,
    Tree,
    canonical_code,
    enumerate_trees,
    parse_tree,
    path_tree,
)

EXIT_VERIFIED = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def _manifest(args, started: float, stats: dict) -> dict:
    from .cache import GLOBAL_STATS

    params = {
        k: v for k, v in sorted(vars(args).items())
        if not k.startswith("_") and k not in ("func",) and v is not None
    }
    before = getattr(args, "_cache_before", {"cache_hits": 0, "cache_misses": 0})
    return {
        "command": args.command,
        "params": params,
        "seed": getattr(args, "seed", 0),
        "cache_hits": GLOBAL_STATS["cache_hits"] - before["cache_hits"],
        "cache_misses": GLOBAL_STATS["cache_misses"] - before["cache_misses"],
        "version": __version__,
        "wall_ms": round((time.perf_counter() - started) * 1000, 3),
    }


class Emitter:
    def __init__(self, as_csv: bool):
        self.as_csv = as_csv
        self.writer = None
        self.fields: list[str] = []

    def instance(self, obj: dict):
        if not self.as_csv:
            print(json.dumps(obj))
            return
        flat = _flatten(obj)
        if self.writer is None:
            self.fields = list(flat)
            self.writer = csv.DictWriter(sys.stdout, fieldnames=self.fields,
                                         extrasaction="ignore")
            self.writer.writeheader()
        self.writer.writerow({f: flat.get(f, "") for f in self.fields})

    def summary(self, obj: dict):
        if self.as_csv:
            print(json.dumps(obj), file=sys.stderr)
        else:
            print(json.dumps(obj))


def _flatten(obj: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in obj.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v)
        else:
            out[key] = v
    return out


def _load_tree(args) -> Tree:
    if getattr(args, "tree", None):
        spec = args.tree
        try:
            with open(spec) as fh:
                return parse_tree(fh.read())
        except FileNotFoundError:
            return parse_tree(spec)  # treat as inline graph6 / text
    if getattr(args, "n", None):
        return path_tree(args.n)
    raise ValueError("provide --tree or --n")


def _report_exit(report: analysis.VerificationReport, emit: Emitter,
                 args, started, stats) -> int:
    for inst in report.instances:
        emit.instance(inst)
    emit.summary({
        "claim": report.claim,
        "status": report.status,
        "instances": len(report.instances),
        "manifest": _manifest(args, started, stats),
    })
    if report.status == "verified":
        return EXIT_VERIFIED
    if report.status == "refuted":
        return EXIT_REFUTED
    return EXIT_INCONCLUSIVE


# --- subcommands ------------------------------------------------------


def cmd_trees(args, emit, started, stats) -> int:
    trees = enumerate_trees(args.n, args.mode)
    for t in trees:
        emit.instance({
            "v_count": t.v_count,
            "edges": [list(e) for e in t.edges],
            "canonical_code": canonical_code(t).hex(),
            "graph6": t.to_graph6(),
        })
    emit.summary({"count": len(trees), "manifest": _manifest(args, started, stats)})
    return EXIT_VERIFIED


def cmd_steiner(args, emit, started, stats) -> int:
    t = _load_tree(args)
    hm = build_hypermatrix(t, args.k)
    p = steiner_polynomial(t, args.k)
    gs = gradient_system(t, args.k)
    emit.instance({"hypermatrix": hm.to_json()})
    emit.instance({"steiner_polynomial": str(p), "terms": len(p.terms)})
    for r, g in enumerate(gs.forms):
        emit.instance({"gradient_entry": r, "form": str(g)})
    emit.summary({"k": args.k, "v_count": t.v_count,
                  "manifest": _manifest(args, started, stats)})
    return EXIT_VERIFIED


def cmd_resultant(args, emit, started, stats) -> int:
    t = _load_tree(args)
    mode = {"exact": "exact", "witness": "nonzero-witness",
            "zero": "zero-certificate"}[args.mode]
    out = cached_resultant(t, args.k, mode, seed=args.seed,
                           normalization=args.normalization,
                           directory=args.cache_dir, stats=stats)
    emit.instance(out.to_json())
    emit.summary({"manifest": _manifest(args, started, stats)})
    return EXIT_INCONCLUSIVE if out.inconclusive else EXIT_VERIFIED


def cmd_verify(args, emit, started, stats) -> int:
    if args.subject == "graham-pollak":
        rep = analysis.graham_pollak_suite(args.max_n)
    elif args.subject == "parity":
        rep = analysis.parity_theorem_check(args.k, args.n, seed=args.seed,
                                            cache_dir=args.cache_dir)
    elif args.subject == "propositions":
        rep = analysis.row_difference_suite(args.max_n, args.k)
        if rep.status == "verified":
            for n in range(2, args.max_n + 1):
                for t in enumerate_trees(n, "unlabeled"):
                    sub = analysis.forced_candidate_check(t, args.k)
                    rep.instances.extend(sub.instances)
                    if sub.status != "verified":
                        rep.status = sub.status
    elif args.subject == "proof-identity":
        rep = None
        for n in range(3, args.max_n + 1):
            for t in enumerate_trees(n, "unlabeled"):
                sub = analysis.proof_identity_check(t, args.k, trials=args.trials,
                                                    seed=args.seed)
                if rep is None:
                    rep = sub
                else:
                    rep.instances.extend(sub.instances)
                    if sub.status != "verified":
                        rep.status = sub.status
    else:
        raise ValueError(f"unknown verify subject {args.subject!r}")
    return _report_exit(rep, emit, args, started, stats)


def cmd_conjecture(args, emit, started, stats) -> int:
    rep = analysis.invariance_experiment(
        args.k, args.n, mode=args.mode, seed=args.seed,
        min_primes=args.primes, cache_dir=args.cache_dir,
    )
    return _report_exit(rep, emit, args, started, stats)


def cmd_nullvector(args, emit, started, stats) -> int:
    t = _load_tree(args)
    res = analysis.newton_nullvector(t, args.k, restarts=args.restarts,
                                     seed=args.seed, damping=args.damping,
                                     max_iter=args.max_iter, tol=args.tol)
    emit.instance(res.to_json())
    emit.summary({
        "note": "not-found carries no mathematical claim",
        "manifest": _manifest(args, started, stats),
    })
    return EXIT_VERIFIED if res.found else EXIT_INCONCLUSIVE


def cmd_factor(args, emit, started, stats) -> int:
    f = factor_integer(int(args.value), seed=args.seed)
    obj = f.to_json()
    obj["input"] = args.value
    obj["factored"] = str(f)
    emit.instance(obj)
    emit.summary({"manifest": _manifest(args, started, stats)})
    return EXIT_INCONCLUSIVE if f.composite_remainder is not None else EXIT_VERIFIED


def cmd_compare_table(args, emit, started, stats) -> int:
    rep = analysis.table_comparison(args.k, args.n, table_index=args.table_index,
                                    seed=args.seed, cache_dir=args.cache_dir)
    return _report_exit(rep, emit, args, started, stats)


# --- parser -----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="steinerdet",
        description="Exact Steiner hypermatrix resultants and verification suites",
    )
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, tree=False, cache=False):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--csv", action="store_true", help="CSV instance records")
        if tree:
            p.add_argument("--tree", help="tree file, graph6 string, or edge-list text")
        if cache:
            p.add_argument("--cache-dir", help="overrides STEINER_CACHE")

    p = sub.add_parser("trees", help="enumerate labeled or unlabeled trees")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["labeled", "unlabeled"], default="unlabeled")
    common(p)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("steiner", help="hypermatrix, polynomial, gradient system")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, help="path tree on n vertices if no --tree")
    common(p, tree=True)
    p.set_defaults(func=cmd_steiner)

    p = sub.add_parser("resultant", help="resultant of the gradient system")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--mode", choices=["exact", "witness", "zero"], default="exact")
    p.add_argument("--normalization", choices=["paper-g", "full-Dp"],
                   default="paper-g")
    common(p, tree=True, cache=True)
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("subject", choices=["graham-pollak", "parity", "propositions",
                                       "proof-identity"])
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--trials", type=int, default=20)
    common(p, cache=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", help="tree-invariance experiment")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "modular"], default="exact")
    p.add_argument("--primes", type=int, default=5,
                   help="minimum shared primes in modular mode")
    common(p, cache=True)
    p.set_defaults(func=cmd_conjecture)

    p = sub.add_parser("nullvector", help="numeric complex nullvector search")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--restarts", type=int, default=100)
    p.add_argument("--damping", type=float, default=0.5)
    p.add_argument("--max-iter", type=int, default=500)
    p.add_argument("--tol", type=float, default=1e-10)
    common(p, tree=True)
    p.set_defaults(func=cmd_nullvector)

    p = sub.add_parser("factor", help="factor an integer")
    p.add_argument("value")
    common(p)
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("compare-table", help="computed vs published table row")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--table-index", choices=["kn", "nk"], default="kn")
    common(p, cache=True)
    p.set_defaults(func=cmd_compare_table)

    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    started = time.perf_counter()
    from .cache import GLOBAL_STATS
    args._cache_before = dict(GLOBAL_STATS)
    stats: dict = {}
    emit = Emitter(getattr(args, "csv", False))
    try:
        return args.func(args, emit, started, stats)
    except SizeLimitError as e:
        print(f"size limit: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
