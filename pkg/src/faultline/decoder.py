"""End-to-end adjudication of a fault set: defects -> matching -> recovery -> outcome.

Measurement and recovery are noise-free classical post-processing; the
only noise locations are the syndrome-graph edges supplied as the fault
chain. Recovery chains realize the matching through breadth-first
shortest paths with deterministic neighbor ordering, so identical
inputs always produce identical outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .matcher import Matching, MatchingProblem, min_weight_matching
from .syndrome_graph import Chain, DefectSet, SyndromeGraph, xor_chains

_EMPTY_MATCHING = Matching(pairs=(), boundary_matches=(), total_weight=0)


@dataclass(frozen=True)
class Outcome:
    """Everything the decoder concluded about one fault set."""

    defects_seen: DefectSet
    recovery: Chain
    residual: Chain
    logical_error: int
    matching: Matching


def extract_defects(graph: SyndromeGraph, faults: Iterable[int]) -> DefectSet:
    """Defect locations produced by a fault chain (its chain boundary)."""
    return graph.boundary(faults)


def build_matching_problem(graph: SyndromeGraph, defects: Iterable[int]) -> MatchingProblem:
    """Distances between defects and to the nearest relevant face."""
    labels = tuple(sorted(int(v) for v in set(defects)))
    for v in labels:
        if not (0 <= v < graph.n_vertices):
            raise ValueError(f"defect {v} is not a vertex of the graph")
    west = graph._face_bfs("west")[0]
    east = graph._face_bfs("east")[0]
    dists = [graph._bfs(v)[0] for v in labels]
    n = len(labels)
    pair = tuple(tuple(dists[i][labels[j]] for j in range(n)) for i in range(n))
    boundary = tuple(min(west[v], east[v]) for v in labels)
    return MatchingProblem(defects=labels, pair_weights=pair, boundary_weights=boundary)


def _realize(graph: SyndromeGraph, problem: MatchingProblem, matching: Matching) -> Chain:
    """Shortest-path edge chains that implement a matching; combined mod 2."""
    west = graph._face_bfs("west")[0]
    east = graph._face_bfs("east")[0]
    paths = []
    for i, j in matching.pairs:
        paths.append(graph.path_between(problem.defects[i], problem.defects[j]))
    for i in matching.boundary_matches:
        v = problem.defects[i]
        face = "west" if west[v] <= east[v] else "east"
        paths.append(graph.path_to_face(v, face))
    return xor_chains(*paths)


def _solve(graph: SyndromeGraph, defects: Iterable[int]) -> tuple[Matching, Chain]:
    problem = build_matching_problem(graph, defects)
    if problem.n == 0:
        return _EMPTY_MATCHING, frozenset()
    matching = min_weight_matching(problem)
    return matching, _realize(graph, problem, matching)


def decode(graph: SyndromeGraph, defects: Iterable[int]) -> Chain:
    """Recovery chain realizing the minimum-weight matching of the defects."""
    return _solve(graph, defects)[1]


def adjudicate(graph: SyndromeGraph, faults: Iterable[int]) -> Outcome:
    """Full decode of a fault chain down to the logical verdict."""
    fault_chain = frozenset(int(e) for e in faults)
    defects = extract_defects(graph, fault_chain)
    matching, recovery = _solve(graph, defects)
    residual = xor_chains(fault_chain, recovery)
    return Outcome(
        defects_seen=defects,
        recovery=recovery,
        residual=residual,
        logical_error=graph.logical_class(residual),
        matching=matching,
    )
