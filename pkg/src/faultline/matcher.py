"""Exact minimum-weight perfect matching of defects with boundary options.

Two independent solvers share one contract: globally minimum total
weight, every defect matched exactly once (to another defect or to its
nearest boundary face), and the lexicographically smallest assignment
among minimum-weight solutions. ``oracle_matching`` is an exhaustive
bitmask DP, usable up to 20 defects; ``min_weight_matching`` runs an
exact blossom algorithm on the defect graph augmented with one virtual
boundary node per defect and zero-weight edges among the virtual nodes.

Lexicographic tie-breaking: read the matching as the sequence
partner(0), partner(1), ... over sorted defect indices, with a boundary
match sorting after every defect index; the smallest such sequence
wins. The blossom route realizes this by adding a base-(n+1) positional
perturbation to integer-scaled weights, which makes the lexicographic
winner the unique optimum without a second optimization pass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import networkx as nx

ORACLE_LIMIT = 20


@dataclass(frozen=True)
class MatchingProblem:
    """Defect labels plus the pairwise and per-defect boundary distances."""

    defects: tuple
    pair_weights: tuple[tuple[float, ...], ...]
    boundary_weights: tuple[float, ...]

    def __post_init__(self):
        n = len(self.defects)
        if len(self.pair_weights) != n or any(len(row) != n for row in self.pair_weights):
            raise ValueError("pair_weights must be an n x n matrix")
        if len(self.boundary_weights) != n:
            raise ValueError("boundary_weights must have one entry per defect")
        for i in range(n):
            for j in range(n):
                if self.pair_weights[i][j] < 0:
                    raise ValueError("weights must be nonnegative")
                if self.pair_weights[i][j] != self.pair_weights[j][i]:
                    raise ValueError("pair_weights must be symmetric")
        if any(w < 0 for w in self.boundary_weights):
            raise ValueError("weights must be nonnegative")

    @property
    def n(self) -> int:
        return len(self.defects)


@dataclass(frozen=True)
class Matching:
    """A perfect assignment: index pairs, boundary-matched indices, total weight."""

    pairs: tuple[tuple[int, int], ...]
    boundary_matches: tuple[int, ...]
    total_weight: float

    def partner_sequence(self, n: int) -> tuple[int, ...]:
        """partner(i) for i in 0..n-1, with n standing in for the boundary."""
        seq = [n] * n
        for i, j in self.pairs:
            seq[i], seq[j] = j, i
        return tuple(seq)


def _normalize(matching_pairs, boundary, weight) -> Matching:
    pairs = tuple(sorted(tuple(sorted(p)) for p in matching_pairs))
    return Matching(pairs=pairs, boundary_matches=tuple(sorted(boundary)), total_weight=weight)


def oracle_matching(problem: MatchingProblem) -> Matching:
    """Exhaustive DP over all pairings; the independent correctness oracle."""
    n = problem.n
    if n > ORACLE_LIMIT:
        raise ValueError(f"oracle_matching handles at most {ORACLE_LIMIT} defects, got {n}")
    if n == 0:
        return Matching(pairs=(), boundary_matches=(), total_weight=0)
    pw, bw = problem.pair_weights, problem.boundary_weights

    best = {0: 0}

    def solve(mask: int):
        """Minimum weight to match the defect set given by mask."""
        cached = best.get(mask)
        if cached is not None:
            return cached
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        val = bw[i] + solve(rest)
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            cand = pw[i][j] + solve(rest & ~(1 << j))
            if cand < val:
                val = cand
        best[mask] = val
        return val

    full = (1 << n) - 1
    total = solve(full)

    # Greedy reconstruction: fixing the lowest unmatched index to its
    # smallest weight-preserving partner (boundary last) yields the
    # lexicographic minimum among minimum-weight matchings.
    pairs, boundary = [], []
    mask = full
    while mask:
        i = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << i)
        chosen = None
        m = rest
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            if pw[i][j] + solve(rest & ~(1 << j)) == solve(mask):
                chosen = j
                break
        if chosen is None:
            boundary.append(i)
            mask = rest
        else:
            pairs.append((i, chosen))
            mask = rest & ~(1 << chosen)
    return _normalize(pairs, boundary, total)


def _integer_scale(problem: MatchingProblem) -> tuple[list[list[int]], list[int]]:
    """Rescale all weights to exact integers (floats are exact rationals)."""
    if all(isinstance(w, int) for w in problem.boundary_weights) and all(
        isinstance(w, int) for row in problem.pair_weights for w in row
    ):
        return [list(row) for row in problem.pair_weights], list(problem.boundary_weights)
    vals = [Fraction(w) for w in problem.boundary_weights]
    for row in problem.pair_weights:
        vals.extend(Fraction(w) for w in row)
    denom = 1
    for v in vals:
        denom = denom * v.denominator // math.gcd(denom, v.denominator)
    pw = [[int(Fraction(w) * denom) for w in row] for row in problem.pair_weights]
    bw = [int(Fraction(w) * denom) for w in problem.boundary_weights]
    return pw, bw


def min_weight_matching(problem: MatchingProblem) -> Matching:
    """Blossom solver over the boundary-augmented defect graph.

    Defect i and its virtual boundary node n+i are joined at the boundary
    weight; virtual nodes form a zero-weight clique so unused ones pair
    off freely. Weights carry the positional perturbation described in
    the module docstring, so the optimum is unique and equals the
    lexicographic tie-break winner.
    """
    n = problem.n
    if n == 0:
        return Matching(pairs=(), boundary_matches=(), total_weight=0)
    pw, bw = _integer_scale(problem)

    base = n + 1
    place = [base ** (n - 1 - i) for i in range(n)]
    shift = base ** n  # exceeds any perturbation total

    weights: dict[tuple[int, int], int] = {}
    for i in range(n):
        weights[(i, n + i)] = bw[i] * shift + n * place[i]
        for j in range(i + 1, n):
            weights[(i, j)] = pw[i][j] * shift + j * place[i] + i * place[j]
            weights[(n + i, n + j)] = 0

    big = max(weights.values()) + 1
    graph = nx.Graph()
    graph.add_nodes_from(range(2 * n))
    for (a, b), w in sorted(weights.items()):
        graph.add_edge(a, b, weight=big - w)
    mate = nx.max_weight_matching(graph, maxcardinality=True)

    pairs, boundary = [], []
    total = 0
    for a, b in mate:
        a, b = min(a, b), max(a, b)
        if b < n:
            pairs.append((a, b))
            total += problem.pair_weights[a][b]
        elif a < n:
            boundary.append(a)
            total += problem.boundary_weights[a]
    matched = 2 * len(pairs) + len(boundary)
    if matched != n:
        raise AssertionError("blossom matching left a defect unmatched")
    return _normalize(pairs, boundary, total)
