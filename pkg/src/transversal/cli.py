"""Command line interface: gen, solve, sweep, check, absorber, extremal.

Every flag may also be given in a ``--config`` file of ``key = value``
lines (keys are flag names with or without the leading dashes); flags on
the command line override the file.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import formats
from .absorber import AbsorberError, absorb_colors, build_absorber
from .exact import as_fraction
from .generators import (
    EXTREMAL_KINDS,
    FAMILIES,
    MODELS,
    InstanceSpec,
    TargetSpec,
    extremal_instance,
    gen_collection,
    gen_target,
)
from .graph import GraphError
from .regularity import pair_report
from .solver import (
    ORDERS,
    PRUNE_LEVELS,
    Outcome,
    SearchConfig,
    find_transversal,
    find_transversal_portfolio,
    verify_transversal,
)
from .sweep import (
    SweepGrid,
    default_workers,
    extremal_rows,
    monotone_warnings,
    threshold_sweep,
    to_csv,
    write_gnuplot,
)

EXIT_CODES = {Outcome.FOUND: 0, Outcome.NOT_FOUND: 1, Outcome.BUDGET_EXHAUSTED: 2}


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _fractions(text: str) -> list[Fraction]:
    return [as_fraction(x) for x in text.replace(",", " ").split()]


def _edges(text: str) -> list[tuple[int, int]]:
    out = []
    for item in text.replace(",", " ").split():
        u, v = item.split("-")
        out.append((int(u), int(v)))
    return out


def _emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def read_config(path: str | Path) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        sep = "=" if "=" in line else ":"
        key, found, value = line.partition(sep)
        if not found:
            raise GraphError(f"{path}:{lineno}: expected 'key = value'")
        values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


# -- subcommands --------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.target:
        spec = TargetSpec(args.target, args.n, k=args.k, max_degree=args.max_degree, b=args.b, seed=args.seed)
        tgt = gen_target(spec)
        text = formats.format_target(tgt.graph, tgt.ordering.order)
        text = f"# {args.target} n={args.n} bandwidth={tgt.ordering.b} chi={tgt.chi}\n" + text
        _emit(text, args.out)
        return 0
    graph = formats.read_target(args.graph)[0] if args.graph else None
    spec = InstanceSpec(
        args.n,
        args.h or args.n,
        args.model,
        p=as_fraction(args.p),
        delta_frac=as_fraction(args.delta_frac),
        margin=as_fraction(args.margin),
        graph=graph,
        kind=args.kind,
        k=args.k,
        seed=args.seed,
    )
    _emit(formats.format_collection(gen_collection(spec)), args.out)
    return 0


def _search_config(args, given_order) -> SearchConfig:
    order = args.order
    if order == "given" and given_order is None:
        raise GraphError("--order given needs an 'order:' line in the target file")
    return SearchConfig(
        vertex_order=order,
        order=tuple(given_order) if order == "given" else None,
        node_budget=args.node_budget,
        time_budget_ms=args.time_budget_ms,
        seed=args.seed,
        prune_level=args.prune,
        incremental=not args.no_incremental,
        symmetry=not args.no_symmetry,
    )


def cmd_solve(args) -> int:
    coll = formats.read_collection(args.collection)
    h, given = formats.read_target(args.target)
    cfg = _search_config(args, given)
    if args.seeds:
        res = find_transversal_portfolio(coll, h, cfg, _ints(args.seeds), args.workers)
    else:
        res = find_transversal(coll, h, cfg)
    lines = [f"outcome: {res.outcome.value}"]
    text = "\n".join(lines) + "\n"
    if res.embedding is not None:
        ok, why = verify_transversal(coll, h, res.embedding)
        text += res.embedding.to_text()
        text += f"verified: {'yes' if ok else 'no (' + why + ')'}\n"
    text += res.stats.to_text()
    _emit(text, args.out)
    return EXIT_CODES[res.outcome]


def cmd_sweep(args) -> int:
    if args.extremal:
        ns = _ints(args.n) if args.n else [None]
        rows = extremal_rows(args.extremal, ns, args.k, args.node_budget, args.seed, not args.no_timing)
        _emit(to_csv(rows), args.out)
        return 0
    grid = SweepGrid(
        ns=tuple(_ints(args.n)),
        family=args.family,
        k=args.k,
        delta_fracs=tuple(_fractions(args.delta)),
        trials=args.trials,
        node_budget=args.node_budget,
        time_budget_ms=args.time_budget_ms,
        seed=args.seed,
        margin=as_fraction(args.margin),
    )
    rows = threshold_sweep(grid, workers=args.workers, checkpoint=args.checkpoint, timing=not args.no_timing)
    _emit(to_csv(rows), args.out)
    for msg in monotone_warnings(rows):
        print(msg, file=sys.stderr)
    if args.gnuplot:
        dat, gp = write_gnuplot(rows, args.gnuplot)
        print(f"wrote {dat} and {gp}", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    if args.collection:
        coll = formats.read_collection(args.collection)
        g = coll.layers[args.layer]
    else:
        g = formats.read_target(args.graph)[0]
    p = as_fraction(args.p) if args.p is not None else None
    report = pair_report(g, _ints(args.a), _ints(args.b), as_fraction(args.eps), as_fraction(args.d), p)
    _emit(report.to_text(), args.out)
    return 0


def cmd_absorber(args) -> int:
    coll = formats.read_collection(args.collection)
    tpl = build_absorber(
        coll,
        _edges(args.edges),
        args.ell,
        args.c_size,
        min_avail=args.min_avail,
        tau=args.tau,
        samples=args.samples,
        seed=args.seed,
    )
    text = tpl.to_text()
    if args.absorb is not None:
        lam = absorb_colors(tpl, _ints(args.absorb))
        text += "lambda: " + ", ".join(f"{u}-{v}→{c}" for (u, v), c in sorted(lam.items())) + "\n"
    _emit(text, args.out)
    return 0


def cmd_extremal(args) -> int:
    inst = extremal_instance(args.kind, args.n, args.k)
    if args.out_collection:
        Path(args.out_collection).write_text(formats.format_collection(inst.collection))
    if args.out_target:
        Path(args.out_target).write_text(formats.format_target(inst.target))
    print(f"kind: {inst.kind}")
    print(f"n: {inst.collection.n}")
    print(f"h: {inst.collection.h}")
    print(f"note: {inst.note}")
    if args.solve:
        res = find_transversal(inst.collection, inst.target, SearchConfig(node_budget=args.node_budget))
        print(f"outcome: {res.outcome.value}")
        print(res.stats.to_text(), end="")
        return EXIT_CODES[res.outcome]
    return 0


# -- parser -------------------------------------------------------------------

def _search_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--order", choices=ORDERS, default="bandwidth", help="vertex order of H")
    p.add_argument("--node-budget", type=int, default=10_000_000)
    p.add_argument("--time-budget-ms", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--prune", choices=PRUNE_LEVELS, default="hall+codegree")
    p.add_argument("--no-incremental", action="store_true", help="recompute matchings from scratch")
    p.add_argument("--no-symmetry", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="transversal", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--config", help="key = value file mirroring the flags")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a collection or a target graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--h", type=int, default=None, help="number of layers (default n)")
    p.add_argument("--model", choices=MODELS, default="mindeg")
    p.add_argument("--p", default="1/2", help="edge probability for --model iid")
    p.add_argument("--delta-frac", default="1/2")
    p.add_argument("--margin", default="0")
    p.add_argument("--graph", help="target-format graph file for --model identical")
    p.add_argument("--kind", choices=EXTREMAL_KINDS, default="dirac-hamilton")
    p.add_argument("--target", choices=FAMILIES, help="emit a target graph of this family instead")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--b", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("solve", help="search for a transversal copy of a target")
    p.add_argument("collection")
    p.add_argument("target")
    _search_flags(p)
    p.add_argument("--seeds", default=None, help="portfolio seeds, e.g. 0,1,2")
    p.add_argument("--workers", type=int, default=default_workers())
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", help="threshold sweep, CSV on stdout or --out")
    p.add_argument("--n", default="6,7,8")
    p.add_argument("--family", choices=FAMILIES, default="hamilton_cycle")
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--delta", default="1/2", help="comma separated delta_frac values")
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--node-budget", type=int, default=10_000_000)
    p.add_argument("--time-budget-ms", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--margin", default="0")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--checkpoint", default=None)
    p.add_argument("--no-timing", action="store_true", help="write mean_ms as NA (byte-stable CSV)")
    p.add_argument("--gnuplot", default=None, metavar="PREFIX")
    p.add_argument("--extremal", choices=EXTREMAL_KINDS, default=None,
                   help="one not-found row per n for this extremal instance instead of a grid")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="regularity report for a pair (A, B)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="target-format graph file")
    src.add_argument("--collection", help="collection file (see --layer)")
    p.add_argument("--layer", type=int, default=0)
    p.add_argument("--a", required=True, help="vertices of A, e.g. 0,1,2")
    p.add_argument("--b", required=True)
    p.add_argument("--eps", default="1/4")
    p.add_argument("--d", default="1/2")
    p.add_argument("--p", default=None, help="quasi-randomness density (default d)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("absorber", help="build a colour absorber")
    p.add_argument("collection")
    p.add_argument("--edges", required=True, help="F as u-v pairs, e.g. 0-1,2-3")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--c-size", type=int, required=True)
    p.add_argument("--min-avail", type=int, default=1)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--absorb", default=None, help="also colour F with A and this C'")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_absorber)

    p = sub.add_parser("extremal", help="extremal counterexample instances")
    p.add_argument("kind", choices=EXTREMAL_KINDS)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--out-collection", default=None)
    p.add_argument("--out-target", default=None)
    p.add_argument("--solve", action="store_true")
    p.add_argument("--node-budget", type=int, default=10_000_000)
    p.set_defaults(func=cmd_extremal)
    return ap


def _apply_config(ap: argparse.ArgumentParser, argv: list[str], path: str) -> argparse.Namespace:
    values = read_config(path)
    choices = ap._subparsers._group_actions[0].choices
    command = next((a for a in argv if a in choices), None)
    if command is None:
        return ap.parse_args(argv)  # lets argparse report the missing command
    sub = choices[command]
    known = {a.dest: a for a in sub._actions}
    defaults = {}
    for key, value in values.items():
        if key not in known:
            raise GraphError(f"unknown config key {key!r} for '{command}'")
        action = known[key]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = value.lower() in ("1", "true", "yes", "on")
        else:
            defaults[key] = value
    sub.set_defaults(**defaults)
    # required options may now come from the file
    for action in sub._actions:
        if action.dest in defaults and action.option_strings:
            action.required = False
    return ap.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    config = None
    if "--config" in argv:
        i = argv.index("--config")
        config = argv[i + 1] if i + 1 < len(argv) else None
    try:
        if config:
            args = _apply_config(ap, argv, config)
        else:
            args = ap.parse_args(argv)
        return args.func(args)
    except (GraphError, AbsorberError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
