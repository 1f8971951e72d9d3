"""Threshold sweeps: solver success rates over a grid of (n, delta_frac).

Every trial builds its own target and min-degree collection from a seed
derived as ``base_seed XOR stable_hash(cell, trial)``, where the hash is
the first 8 bytes of BLAKE2b over ``"<cell>:<trial>"``.  Rows are emitted in
grid order whatever order the workers finish in, so a fixed grid and seed
always give the same CSV (with ``timing=False`` the file is byte-identical;
``mean_ms`` is wall time and otherwise varies between runs).
"""

from __future__ import annotations

import csv
import hashlib
import io
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .exact import as_fraction
from .generators import InstanceSpec, TargetSpec, check_min_degree, extremal_instance, gen_collection, gen_target
from .graph import GraphError
from .solver import Outcome, SearchConfig, find_transversal, verify_transversal

COLUMNS = ["n", "h", "family", "k", "delta_frac", "trials", "found", "notfound", "exhausted", "mean_ms", "seed"]
THREADS_ENV = "TRANSVERSAL_THREADS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


def stable_hash(cell: int, trial: int) -> int:
    digest = hashlib.blake2b(f"{cell}:{trial}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def trial_seed(base: int, cell: int, trial: int) -> int:
    return base ^ stable_hash(cell, trial)


@dataclass(frozen=True)
class SweepGrid:
    ns: tuple[int, ...]
    family: str = "hamilton_cycle"
    k: int = 2
    delta_fracs: tuple[Fraction, ...] = (Fraction(1, 2),)
    trials: int = 10
    node_budget: int = 10_000_000
    time_budget_ms: int | None = None
    seed: int = 0
    margin: Fraction = Fraction(0)

    def cells(self) -> list[tuple[int, Fraction]]:
        return [(n, as_fraction(d)) for n in self.ns for d in self.delta_fracs]


@dataclass
class TrialResult:
    n: int
    delta_frac: Fraction
    trial: int
    seed: int
    h: int
    outcome: Outcome
    nodes: int
    wall_ms: float


@dataclass
class Cell:
    index: int
    n: int
    h: int
    delta_frac: Fraction
    results: list[TrialResult] = field(default_factory=list)

    def row(self, grid: SweepGrid, timing: bool = True) -> dict[str, str]:
        tally = {o: sum(r.outcome is o for r in self.results) for o in Outcome}
        if timing and self.results:
            mean = f"{sum(r.wall_ms for r in self.results) / len(self.results):.3f}"
        else:
            mean = "NA"
        hs = {r.h for r in self.results} or {self.h}
        return {
            "n": str(self.n),
            "h": str(hs.pop()) if len(hs) == 1 else "var",
            "family": grid.family,
            "k": str(grid.k),
            "delta_frac": str(self.delta_frac),
            "trials": str(len(self.results)),
            "found": str(tally[Outcome.FOUND]),
            "notfound": str(tally[Outcome.NOT_FOUND]),
            "exhausted": str(tally[Outcome.BUDGET_EXHAUSTED]),
            "mean_ms": mean,
            "seed": str(grid.seed),
        }


def run_trial(grid: SweepGrid, cell: int, n: int, delta_frac: Fraction, trial: int) -> TrialResult:
    seed = trial_seed(grid.seed, cell, trial)
    target = gen_target(TargetSpec(grid.family, n, k=grid.k, seed=seed)).graph
    spec = InstanceSpec(n, target.num_edges, "mindeg", delta_frac=delta_frac, margin=grid.margin, seed=seed)
    coll = gen_collection(spec)
    if not check_min_degree(coll, delta_frac):
        raise GraphError(f"generated instance misses its degree target (cell {cell}, trial {trial})")
    cfg = SearchConfig(node_budget=grid.node_budget, time_budget_ms=grid.time_budget_ms)
    start = time.perf_counter()
    res = find_transversal(coll, target, cfg)
    wall = (time.perf_counter() - start) * 1000
    if res.embedding is not None:
        ok, why = verify_transversal(coll, target, res.embedding)
        if not ok:
            raise AssertionError(f"solver returned an invalid embedding: {why}")
    return TrialResult(n, delta_frac, trial, seed, target.num_edges, res.outcome, res.stats.nodes, wall)


def _run_trial(args) -> TrialResult:
    return run_trial(*args)


def _cell_key(row: dict[str, str]) -> tuple[str, ...]:
    return (row["n"], row["family"], row["k"], row["delta_frac"], row["seed"])


def load_checkpoint(path: Path) -> dict[tuple[str, ...], dict[str, str]]:
    if not path.exists():
        return {}
    with path.open(newline="") as fh:
        return {_cell_key(row): row for row in csv.DictReader(fh)}


def threshold_sweep(
    grid: SweepGrid,
    workers: int | None = None,
    checkpoint: str | Path | None = None,
    timing: bool = True,
) -> list[dict[str, str]]:
    """Run the grid; one CSV row per (n, delta_frac) cell, in grid order.

    With ``checkpoint``, finished rows are appended to that CSV as they
    complete and cells already present are not re-run.
    """
    workers = default_workers() if workers is None else workers
    done: dict[tuple[str, ...], dict[str, str]] = {}
    ckpt = Path(checkpoint) if checkpoint is not None else None
    if ckpt is not None:
        done = load_checkpoint(ckpt)
    rows = []
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for index, (n, d) in enumerate(grid.cells()):
            target_edges = gen_target(TargetSpec(grid.family, n, k=grid.k, seed=grid.seed)).graph.num_edges
            cell = Cell(index, n, target_edges, d)
            probe = cell.row(grid, timing)
            if _cell_key(probe) in done:
                rows.append(done[_cell_key(probe)])
                continue
            jobs = [(grid, index, n, d, t) for t in range(grid.trials)]
            if pool is None:
                cell.results = [_run_trial(j) for j in jobs]
            else:
                cell.results = list(pool.map(_run_trial, jobs))
            row = cell.row(grid, timing)
            rows.append(row)
            if ckpt is not None:
                fresh = not ckpt.exists()
                with ckpt.open("a", newline="") as fh:
                    writer = csv.DictWriter(fh, COLUMNS)
                    if fresh:
                        writer.writeheader()
                    writer.writerow(row)
    finally:
        if pool is not None:
            pool.shutdown()
    return rows


def extremal_rows(
    kind: str,
    ns: Sequence[int | None],
    k: int = 3,
    node_budget: int = 10_000_000,
    seed: int = 0,
    timing: bool = True,
) -> list[dict[str, str]]:
    """One single-trial row per n for a deterministic extremal instance.

    ``family`` is ``extremal:<kind>`` and ``delta_frac`` is the exact
    minimum degree of the layers divided by n.
    """
    rows = []
    for n in ns:
        inst = extremal_instance(kind, n, k)
        coll = inst.collection
        start = time.perf_counter()
        res = find_transversal(coll, inst.target, SearchConfig(node_budget=node_budget, seed=seed))
        wall = (time.perf_counter() - start) * 1000
        if res.embedding is not None:
            raise AssertionError(f"extremal instance {kind} n={coll.n} has a transversal")
        delta = Fraction(coll.min_degree, coll.n)
        trial = TrialResult(coll.n, delta, 0, seed, inst.target.num_edges, res.outcome, res.stats.nodes, wall)
        cell = Cell(0, coll.n, inst.target.num_edges, delta, [trial])
        row = cell.row(SweepGrid(ns=(coll.n,), family=f"extremal:{kind}", k=k, seed=seed), timing)
        rows.append(row)
    return rows


def to_csv(rows: Iterable[dict[str, str]]) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def monotone_warnings(rows: Sequence[dict[str, str]]) -> list[str]:
    """Cells whose found-rate drops as delta_frac grows (n and family fixed)."""
    out = []
    groups: dict[tuple[str, str, str], list[tuple[Fraction, Fraction]]] = {}
    for r in rows:
        rate = Fraction(int(r["found"]), max(1, int(r["trials"])))
        groups.setdefault((r["n"], r["family"], r["k"]), []).append((Fraction(r["delta_frac"]), rate))
    for (n, fam, k), pts in groups.items():
        pts.sort()
        for (d0, r0), (d1, r1) in zip(pts, pts[1:]):
            if r1 < r0:
                out.append(f"warning: n={n} {fam} k={k}: found-rate falls from {float(r0):.3f} at {d0} to {float(r1):.3f} at {d1}")
    return out


def write_gnuplot(rows: Sequence[dict[str, str]], prefix: str | Path) -> tuple[Path, Path]:
    """Companion ``<prefix>.dat`` (n, delta, found-rate blocks) and ``<prefix>.gp``."""
    prefix = Path(prefix)
    dat = prefix.with_suffix(".dat")
    gp = prefix.with_suffix(".gp")
    by_n: dict[str, list[str]] = {}
    for r in rows:
        rate = int(r["found"]) / max(1, int(r["trials"]))
        by_n.setdefault(r["n"], []).append(f"{float(Fraction(r['delta_frac'])):.6f} {rate:.6f}")
    blocks = [f"# n={n}\n" + "\n".join(lines) for n, lines in by_n.items()]
    dat.write_text("\n\n\n".join(blocks) + "\n")
    plots = ", ".join(
        f"'{dat.name}' index {i} with linespoints title 'n={n}'" for i, n in enumerate(by_n)
    )
    gp.write_text(
        "set xlabel 'delta_frac'\nset ylabel 'found rate'\nset yrange [0:1.05]\n"
        f"plot {plots}\n"
    )
    return dat, gp
