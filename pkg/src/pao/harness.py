"""Experiment runner: seeded repetition suites over problems and optimisers,
JSONL persistence, convergence aggregation and plot-ready CSV emission.

A suite is fully reproducible from its config plus base seed: every run's
seed is a 64-bit hash-combine of the base seed with the (optimiser, problem,
repetition) indices, so any single run can be re-executed in isolation.
"""

import json
import os
from dataclasses import dataclass

import numpy as np

from . import baselines
from .baselines import DeConfig, OPTIMIZER_IDS, PsoConfig, QpsoConfig, SadeConfig
from .benchmarks import PROBLEM_NAMES, make_problem
from .engine import PaoConfig, run_pao
from .records import write_jsonl

_MASK = (1 << 64) - 1


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def derive_seed(base_seed: int, *indices: int) -> int:
    """Deterministic 64-bit seed from the base seed and run indices."""
    h = _splitmix64(base_seed & _MASK)
    for v in indices:
        h = _splitmix64(h ^ (v & _MASK))
    return h


@dataclass(frozen=True)
class BenchmarkSuite:
    """One comparison experiment: (problem, dim) pairs x optimisers x seeds."""

    problems: tuple
    pop: int = 100
    gens: int = 100
    reps: int = 20
    optimizers: tuple = OPTIMIZER_IDS
    base_seed: int = 0
    griewangk_denominator: float = 400.0
    pao: PaoConfig = PaoConfig()
    pso: PsoConfig = PsoConfig()
    qpso: QpsoConfig = QpsoConfig()
    de: DeConfig = DeConfig()
    sade: SadeConfig = SadeConfig()

    def __post_init__(self):
        object.__setattr__(
            self, "problems", tuple((str(n), int(d)) for n, d in self.problems)
        )
        object.__setattr__(
            self, "optimizers", tuple(o.strip().lower() for o in self.optimizers)
        )
        if self.reps < 1:
            raise ValueError(f"repetitions must be >= 1, got {self.reps}")
        for opt in self.optimizers:
            if opt not in OPTIMIZER_IDS:
                raise ValueError(f"unknown optimizer {opt!r}; expected one of {OPTIMIZER_IDS}")

    def config_for(self, optimizer: str):
        return getattr(self, optimizer)


def standard_suite(which: str, **overrides) -> BenchmarkSuite:
    """The stock 2d / 8d / all benchmark suites over all nine problems."""
    dims = {"2d": (2,), "8d": (8,), "all": (2, 8)}.get(which.strip().lower())
    if dims is None:
        raise ValueError(f"unknown suite {which!r}; expected 2d, 8d or all")
    problems = tuple((name, dim) for dim in dims for name in PROBLEM_NAMES)
    return BenchmarkSuite(problems=problems, **overrides)


def run_one(optimizer: str, problem, n: int, generations: int, seed, cfg=None):
    """Run a single optimiser under the shared run contract."""
    opt = optimizer.strip().lower()
    if opt == "pao":
        return run_pao(problem, n, generations, cfg or PaoConfig(), seed)
    if opt == "pso":
        return baselines.run_pso(problem, n, generations, cfg or PsoConfig(), seed)
    if opt == "qpso":
        return baselines.run_qpso(problem, n, generations, cfg or QpsoConfig(), seed)
    if opt == "de":
        return baselines.run_de(problem, n, generations, cfg or DeConfig(), seed)
    if opt == "sade":
        return baselines.run_sade(problem, n, generations, cfg or SadeConfig(), seed)
    raise ValueError(f"unknown optimizer {optimizer!r}; expected one of {OPTIMIZER_IDS}")


def run_suite(suite: BenchmarkSuite, out_path, include_duration: bool = True) -> dict:
    """Execute every (optimiser, problem, repetition) run of the suite.

    Writes ``records.jsonl`` and ``summary.json`` under ``out_path`` and
    returns the summary.  Runs are sequential here; the derived seeds make
    them independently re-runnable (and embarrassingly parallel elsewhere).
    """
    os.makedirs(out_path, exist_ok=True)
    records = []
    for oi, opt in enumerate(suite.optimizers):
        for pi, (name, dim) in enumerate(suite.problems):
            problem = make_problem(name, dim, suite.griewangk_denominator)
            for rep in range(suite.reps):
                seed = derive_seed(suite.base_seed, oi, pi, rep)
                rec = run_one(opt, problem, suite.pop, suite.gens, seed, suite.config_for(opt))
                rec.run_id = f"{opt}_{name}_{dim}d_r{rep:03d}"
                records.append(rec)
    write_jsonl(records, os.path.join(out_path, "records.jsonl"), include_duration)
    summary = summarize(records)
    with open(os.path.join(out_path, "summary.json"), "w") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    return summary


def _group_key(rec):
    return (rec.optimizer, rec.problem, rec.dim)


def summarize(records) -> dict:
    """Median / mean / stddev of the final shifted best per (optimiser, problem)."""
    groups = {}
    for rec in records:
        groups.setdefault(_group_key(rec), []).append(rec.final_shifted_best())
    entries = []
    for (opt, prob, dim) in sorted(groups, key=lambda k: (k[1], k[2], _opt_rank(k[0]))):
        finals = np.array(sorted(groups[(opt, prob, dim)]))
        entries.append(
            {
                "optimizer": opt,
                "problem": prob,
                "dim": dim,
                "runs": len(finals),
                "median": float(np.median(finals)),
                "mean": float(finals.mean()),
                "std": float(finals.std()),
            }
        )
    return {"entries": entries}


def _opt_rank(opt):
    return OPTIMIZER_IDS.index(opt) if opt in OPTIMIZER_IDS else len(OPTIMIZER_IDS)


def aggregate_convergence(records) -> dict:
    """Per-(optimiser, problem) convergence curves over generations.

    Returns, per group, the arithmetic mean of the shifted best fitness per
    generation plus the median and interquartile band.  Records are sorted
    by run id before stacking so the result is independent of input order.
    """
    horizons = {rec.gens for rec in records}
    if len(horizons) > 1:
        raise ValueError(f"records have mismatched generation horizons: {sorted(horizons)}")
    groups = {}
    for rec in records:
        groups.setdefault(_group_key(rec), []).append(rec)
    curves = {}
    for key, recs in groups.items():
        recs = sorted(recs, key=lambda r: r.run_id)
        data = np.array([[h["shifted_best"] for h in r.history] for r in recs])
        curves[key] = {
            "generation": [h["g"] for h in recs[0].history],
            "mean": data.mean(axis=0).tolist(),
            "median": np.median(data, axis=0).tolist(),
            "q25": np.quantile(data, 0.25, axis=0).tolist(),
            "q75": np.quantile(data, 0.75, axis=0).tolist(),
        }
    return curves


def emit_plot_data(curves: dict, out_path) -> list:
    """One CSV per problem: ``generation`` column then one mean-curve column
    per optimiser.  Values are written in full precision (round-trip exact)."""
    os.makedirs(out_path, exist_ok=True)
    by_problem = {}
    for (opt, prob, dim), curve in curves.items():
        by_problem.setdefault((prob, dim), {})[opt] = curve
    paths = []
    for (prob, dim) in sorted(by_problem):
        group = by_problem[(prob, dim)]
        opts = sorted(group, key=_opt_rank)
        path = os.path.join(out_path, f"{prob}_{dim}d.csv")
        generations = group[opts[0]]["generation"]
        with open(path, "w") as fh:
            fh.write("generation," + ",".join(opts) + "\n")
            for i, g in enumerate(generations):
                row = ",".join(repr(group[o]["mean"][i]) for o in opts)
                fh.write(f"{g},{row}\n")
        paths.append(path)
    return paths


def format_summary(summary: dict) -> str:
    """Fixed-width text table of the summary, grouped by problem."""
    lines = [
        f"{'problem':<24}{'dim':>4}  {'optimizer':<8}{'runs':>6}"
        f"{'median':>14}{'mean':>14}{'std':>14}"
    ]
    for e in summary["entries"]:
        lines.append(
            f"{e['problem']:<24}{e['dim']:>4}  {e['optimizer']:<8}{e['runs']:>6}"
            f"{e['median']:>14.4e}{e['mean']:>14.4e}{e['std']:>14.4e}"
        )
    return "\n".join(lines)
