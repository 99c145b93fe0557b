"""Monte Carlo estimation of the logical error rate under i.i.d. edge faults.

Every edge of one syndrome lattice fails independently with probability
p in each trial; the trial fails when the decoder's residual chain
spans the lattice. Per-trial randomness comes from a counter-based
Philox stream keyed by (seed, trial index), so results are bit-identical
no matter how trials are distributed over workers. Rates are per error
type; the two syndrome lattices are isomorphic, so total figures double
the counting prefactor instead of simulating both.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Sequence, TextIO

import numpy as np

from .decoder import adjudicate
from .syndrome_graph import SyndromeGraph, TEMPLATES, build_syndrome_graph

_WILSON_Z = 1.959963984540054  # two-sided 95%


@dataclass(frozen=True)
class SimConfig:
    L: int
    N: int | None = None
    template: str = "circuit12"
    p: float = 0.0
    trials: int = 1
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not 0 <= self.p <= 1:
            raise ValueError(f"probability p must lie in [0, 1], got {self.p}")
        if self.trials < 1:
            raise ValueError(f"trial count must be >= 1, got {self.trials}")
        if self.workers < 1:
            raise ValueError(f"worker count must be >= 1, got {self.workers}")
        if self.template not in TEMPLATES:
            raise ValueError(f"unknown edge template {self.template!r}")

    @property
    def rounds(self) -> int:
        return self.L if self.N is None else self.N


@dataclass(frozen=True)
class SimResult:
    trials: int
    failures: int
    point_estimate: float
    wilson_low: float
    wilson_high: float
    seed: int
    config: SimConfig

    def to_dict(self) -> dict:
        out = asdict(self)
        out["config"]["N"] = self.config.rounds
        return out


def wilson_interval(failures: int, trials: int, z: float = _WILSON_Z) -> tuple[float, float]:
    """95% Wilson score interval; behaves correctly at zero failures."""
    if trials < 1 or not 0 <= failures <= trials:
        raise ValueError("need 0 <= failures <= trials, trials >= 1")
    phat = failures / trials
    denom = 1 + z * z / trials
    centre = phat + z * z / (2 * trials)
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials))
    return ((centre - half) / denom, (centre + half) / denom)


def _graph_for(config: SimConfig) -> SyndromeGraph:
    return build_syndrome_graph(config.L, config.rounds, config.template)


_worker_graph: dict[tuple, SyndromeGraph] = {}


def _run_range(config: SimConfig, start: int, stop: int) -> int:
    """Failures among trials [start, stop); deterministic in absolute index."""
    key = (config.L, config.rounds, config.template)
    graph = _worker_graph.get(key)
    if graph is None:
        graph = _graph_for(config)
        _worker_graph[key] = graph
    n_edges = graph.n_edges
    bitgen = np.random.Philox(key=np.uint64(config.seed))
    rng = np.random.Generator(bitgen)
    template_state = bitgen.state
    counter = np.zeros(4, dtype=np.uint64)

    failures = 0
    for trial in range(start, stop):
        # equivalent to constructing Philox(key=seed, counter=[0,0,0,trial])
        counter[3] = trial
        state = dict(template_state)
        state["state"] = {"counter": counter.copy(), "key": template_state["state"]["key"]}
        bitgen.state = state
        k = rng.binomial(n_edges, config.p)
        if k == 0:
            continue
        faults = frozenset(int(e) for e in rng.choice(n_edges, size=k, replace=False))
        failures += adjudicate(graph, faults).logical_error
    return failures


def run_trials(config: SimConfig) -> SimResult:
    """Estimate the per-type logical error rate for one parameter point."""
    if config.workers == 1 or config.trials < 2 * config.workers:
        failures = _run_range(config, 0, config.trials)
    else:
        bounds = np.linspace(0, config.trials, config.workers + 1, dtype=int)
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            parts = pool.map(_run_range, [config] * config.workers, bounds[:-1], bounds[1:])
            failures = sum(parts)
    lo, hi = wilson_interval(failures, config.trials)
    return SimResult(
        trials=config.trials,
        failures=failures,
        point_estimate=failures / config.trials,
        wilson_low=lo,
        wilson_high=hi,
        seed=config.seed,
        config=config,
    )


@dataclass(frozen=True)
class SweepConfig:
    """Grid over L and p; every cell gets its own derived seed."""

    Ls: tuple[int, ...]
    ps: tuple[float, ...]
    trials: int
    seed: int = 0
    template: str = "circuit12"
    N: int | None = None
    workers: int = 1

    def __post_init__(self):
        if not self.Ls or not self.ps:
            raise ValueError("sweep grid must contain at least one L and one p")


def sweep(config: SweepConfig) -> list[SimResult]:
    """run_trials over the (L, p) grid, row-major in (L, p)."""
    results = []
    cell = 0
    for L in config.Ls:
        for p in config.ps:
            cell_seed = int(np.random.SeedSequence(config.seed, spawn_key=(cell,)).generate_state(1)[0])
            results.append(
                run_trials(
                    SimConfig(
                        L=L, N=config.N, template=config.template, p=p,
                        trials=config.trials, seed=cell_seed, workers=config.workers,
                    )
                )
            )
            cell += 1
    return results


SWEEP_CSV_HEADER = ("L", "N", "p", "trials", "failures", "estimate", "lo", "hi", "seed")


def write_sweep_csv(results: Sequence[SimResult], stream: TextIO) -> None:
    writer = csv.writer(stream)
    writer.writerow(SWEEP_CSV_HEADER)
    for r in results:
        writer.writerow(
            (
                r.config.L, r.config.rounds, f"{r.config.p:.17g}", r.trials,
                r.failures, f"{r.point_estimate:.17g}",
                f"{r.wilson_low:.17g}", f"{r.wilson_high:.17g}", r.seed,
            )
        )
