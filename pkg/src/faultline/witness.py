"""Hunt for fault configurations where extra, disconnected faults rescue the code.

A breaking witness is a fault chain that decodes to a logical error on
its own, together with a small disjoint set of extra faults whose
presence makes the decoder re-route and destroy the spanning path. The
witness is found by randomized search and certified by re-running the
decoder from scratch; no geometry is hard-coded. The exclusion-zone
statistics then measure how quickly the breaking probability decays
once extra faults are forced away from the spanning path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .decoder import adjudicate
from .montecarlo import wilson_interval
from .syndrome_graph import Chain, SyndromeGraph


@dataclass(frozen=True)
class BreakingWitness:
    """A certified spanning-path break-up.

    ``partial_edge`` is the member of ``extra_faults`` whose lone
    insertion leaves the logical error intact; only the joint insertion
    breaks the spanning path.
    """

    base_faults: Chain
    extra_faults: Chain
    partial_edge: int
    base_weight: int
    combined_weight: int

    def to_dict(self, graph: SyndromeGraph) -> dict:
        return {
            "L": graph.L,
            "N": graph.N,
            "template": graph.template,
            "base_faults": sorted(self.base_faults),
            "extra_faults": sorted(self.extra_faults),
            "partial_edge": self.partial_edge,
            "base_weight": self.base_weight,
            "combined_weight": self.combined_weight,
        }


def verify_witness(graph: SyndromeGraph, witness: BreakingWitness) -> bool:
    """Re-adjudicate everything the witness claims, from scratch."""
    base, extra = witness.base_faults, witness.extra_faults
    if base & extra:
        return False
    base_out = adjudicate(graph, base)
    if base_out.logical_error != 1 or (extra & base_out.recovery):
        return False
    if adjudicate(graph, base | extra).logical_error != 0:
        return False
    if adjudicate(graph, base | {witness.partial_edge}).logical_error != 1:
        return False
    return True


def _spanning_base_candidates(graph: SyndromeGraph, rng: np.random.Generator):
    """Near-minimal fault chains likely to decode to a logical error.

    Take a straight west-east line of spatial edges at a random (y, t)
    and keep alternating edges starting from a random end: the decoder
    fills the gaps and realizes the full spanning path. The bias is a
    search heuristic only; every candidate is still adjudicated.
    """
    X = graph.X
    line_ids: dict[tuple[int, int], list[int]] = {}
    for eid, e in enumerate(graph.edges):
        if e.kind != "spatial" or e.displacement == 0:
            continue
        x, y, t = graph.vertex_coords(e.u)
        line_ids.setdefault((y, t), []).append(eid)
    for key in line_ids:
        line_ids[key].sort(key=lambda eid: _x_order(graph, eid))
    keys = sorted(line_ids)
    while True:
        y, t = keys[rng.integers(len(keys))]
        line = line_ids[(y, t)]
        offset = int(rng.integers(2))
        yield frozenset(line[offset::2])


def _x_order(graph: SyndromeGraph, eid: int) -> float:
    e = graph.edges[eid]
    x = graph.vertex_coords(e.u)[0]
    return x - 0.5 if e.displacement < 0 else x + 0.5


def _edges_near(graph: SyndromeGraph, chain: Iterable[int], radius: int) -> list[int]:
    """Edge ids whose endpoints all lie within ``radius`` of the chain's vertices."""
    seed_vertices = set()
    for eid in chain:
        e = graph.edges[eid]
        seed_vertices.add(e.u)
        if e.v >= 0:
            seed_vertices.add(e.v)
    dist = _distance_to(graph, seed_vertices)
    out = []
    for eid, e in enumerate(graph.edges):
        d = dist[e.u]
        if e.v >= 0:
            d = max(d, dist[e.v])
        if 0 <= d <= radius:
            out.append(eid)
    return out


def _distance_to(graph: SyndromeGraph, sources: set[int]) -> list[int]:
    from collections import deque

    dist = [-1] * graph.n_vertices
    queue = deque()
    for v in sorted(sources):
        dist[v] = 0
        queue.append(v)
    adj = graph.adjacency()
    while queue:
        v = queue.popleft()
        for w, _eid in adj[v]:
            if w >= 0 and dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def find_breaking_witness(
    graph: SyndromeGraph, budget: int, seed: int
) -> BreakingWitness | None:
    """Randomized search for a certified witness within an adjudication budget.

    Only pairs where each lone extra fault leaves the logical error in
    place are accepted, so the break genuinely needs both insertions
    and greedy removal cannot shrink the extra set.
    """
    if budget < 1:
        return None
    rng = np.random.Generator(np.random.Philox(key=np.uint64(seed)))
    spent = 0
    bases = _spanning_base_candidates(graph, rng)
    while spent < budget:
        base = next(bases)
        base_out = adjudicate(graph, base)
        spent += 1
        if base_out.logical_error != 1:
            continue
        forbidden = base | base_out.recovery
        nearby = [
            eid for eid in _edges_near(graph, base_out.residual, 2)
            if eid not in forbidden
        ]
        if len(nearby) < 2:
            continue
        per_base = min(400, budget - spent)
        for _ in range(per_base):
            if spent + 3 > budget:
                break
            pick = rng.choice(len(nearby), size=2, replace=False)
            e1, e2 = sorted(int(nearby[i]) for i in pick)
            combined_out = adjudicate(graph, base | {e1, e2})
            spent += 1
            if combined_out.logical_error != 0:
                continue
            first_out = adjudicate(graph, base | {e1})
            spent += 1
            if first_out.logical_error != 1:
                continue
            second_out = adjudicate(graph, base | {e2})
            spent += 1
            if second_out.logical_error != 1:
                continue
            witness = BreakingWitness(
                base_faults=base,
                extra_faults=frozenset((e1, e2)),
                partial_edge=e1,
                base_weight=int(base_out.matching.total_weight),
                combined_weight=int(combined_out.matching.total_weight),
            )
            if verify_witness(graph, witness):
                return witness
    return None


@dataclass(frozen=True)
class RadiusStats:
    radius: int
    samples: int
    flips: int
    flip_fraction: float | None
    wilson_low: float | None
    wilson_high: float | None


def exclusion_zone_stats(
    graph: SyndromeGraph,
    base_faults: Iterable[int],
    radius_list: Sequence[int],
    samples: int,
    seed: int,
    extra_size: int = 2,
) -> list[RadiusStats]:
    """Flip fraction of random disjoint extras kept ``radius`` away from the path.

    Radius 0 imposes no exclusion; radius k restricts extra faults to
    edges whose endpoints all sit at distance >= k from the residual
    spanning chain. Per-radius RNG streams are derived from (seed,
    radius), so the radius list order does not matter.
    """
    base = frozenset(int(e) for e in base_faults)
    base_out = adjudicate(graph, base)
    if base_out.logical_error != 1:
        raise ValueError("base fault set must adjudicate to a logical error")
    max_radius = (graph.X - 1) + (graph.Y - 1) + (graph.N - 1) + 2
    for radius in radius_list:
        if radius < 0 or radius > max_radius:
            raise ValueError(f"radius {radius} exceeds the lattice size (max {max_radius})")

    residual_vertices = set()
    for eid in base_out.residual:
        e = graph.edges[eid]
        residual_vertices.add(e.u)
        if e.v >= 0:
            residual_vertices.add(e.v)
    dist = _distance_to(graph, residual_vertices)
    forbidden = base | base_out.recovery

    results = []
    for radius in radius_list:
        legal = []
        for eid, e in enumerate(graph.edges):
            if eid in forbidden:
                continue
            d = dist[e.u]
            if e.v >= 0:
                d = min(d, dist[e.v])
            if d >= radius:
                legal.append(eid)
        if len(legal) < extra_size:
            results.append(RadiusStats(radius, 0, 0, None, None, None))
            continue
        rng = np.random.Generator(
            np.random.Philox(key=np.uint64(seed), counter=[0, 0, 0, radius])
        )
        flips = 0
        for _ in range(samples):
            pick = rng.choice(len(legal), size=extra_size, replace=False)
            extra = frozenset(int(legal[i]) for i in pick)
            if adjudicate(graph, base | extra).logical_error == 0:
                flips += 1
        lo, hi = wilson_interval(flips, samples)
        results.append(
            RadiusStats(radius, samples, flips, flips / samples, lo, hi)
        )
    return results
