"""Closed-form logical-error bounds, their thresholds, and series checks.

Conventions shared by every bound here, with d the walk branching degree
(default 11, so D = 2d = 22) and ell = ceil(L/2):

    P_UB(L)  = pref * N * L * (D+1)/D * q^ell / (1 - q),        q = D^2 p
    W'_UB(L) = P_UB(L) with p replaced by 2*eta
    W_UB(L)  = pref * N * L * (D+1)/D * (1+eta)^A
               * qt^ell / (1 - qt),      qt = D^2 * 2*eta / (1+eta)^2

with ``pref`` the starting-vertex prefactor convention. The main-text
derivation gives 2NL while the step-by-step sum starts from 4NL; both
are supported, default 2. Everything is evaluated in log space so that
the (1+eta)^A volume factor cannot overflow, and a failed geometric
series is reported as a divergent value rather than an exception.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .code_lattice import _require_odd_size
from .syndrome_graph import edge_count

PREFACTOR_CHOICES = (2, 4)
DEFAULT_ETA_GRID = (1e-2, 1e-4, 1e-6, 1e-8)


@dataclass(frozen=True)
class BoundParams:
    """Inputs shared by the closed-form bounds."""

    L: int
    N: int | None = None
    p: float | None = None
    eta: float | None = None
    alpha: float | None = None
    degree_branch: int = 11
    A: int | None = None
    start_prefactor: int = 2

    def __post_init__(self):
        _require_odd_size(self.L)
        if self.N is not None and (self.N < 1 or not isinstance(self.N, int)):
            raise ValueError(f"round count N must be a positive integer, got {self.N!r}")
        if self.p is not None and not 0 <= self.p <= 1:
            raise ValueError(f"probability p must lie in [0, 1], got {self.p}")
        if self.eta is not None and self.eta < 0:
            raise ValueError(f"noise strength eta must be nonnegative, got {self.eta}")
        if self.alpha is not None and not 0 <= self.alpha <= 1:
            raise ValueError(f"alpha must lie in [0, 1], got {self.alpha}")
        if self.degree_branch < 1:
            raise ValueError("branching degree must be >= 1")
        if self.start_prefactor not in PREFACTOR_CHOICES:
            raise ValueError(f"start prefactor must be one of {PREFACTOR_CHOICES}")
        if self.A is not None and self.A < 0:
            raise ValueError("edge count A must be nonnegative")

    @property
    def rounds(self) -> int:
        return self.L if self.N is None else self.N

    @property
    def ell(self) -> int:
        return (self.L + 1) // 2

    @property
    def c(self) -> float:
        d2 = 2 * self.degree_branch
        return 2 * (d2 + 1) / d2

    def _log_prefactor(self) -> float:
        d2 = 2 * self.degree_branch
        return math.log(self.start_prefactor * self.rounds * self.L * (d2 + 1) / d2)


@dataclass(frozen=True)
class BoundValue:
    """A bound evaluation: finite, zero, or flagged divergent."""

    value: float
    log_value: float
    convergence_ok: bool

    @classmethod
    def from_log(cls, log_value: float) -> "BoundValue":
        try:
            value = math.exp(log_value)
        except OverflowError:
            value = math.inf
        return cls(value=value, log_value=log_value, convergence_ok=True)

    @classmethod
    def zero(cls) -> "BoundValue":
        return cls(value=0.0, log_value=-math.inf, convergence_ok=True)

    @classmethod
    def divergent(cls) -> "BoundValue":
        return cls(value=math.inf, log_value=math.inf, convergence_ok=False)


def p_path(r: int, p: float, mode: str = "exact") -> float:
    """Probability weight of one specific length-r error-or-recovery path.

    exact: sum_{k=ceil(r/2)}^{r} C(r,k) p^k (1-p)^(r-k); at least half the
    path edges must be actual errors or the matching was not minimal.
    bound: the closure p^(ceil(r/2)) * 2^r used inside the closed forms.
    """
    if not isinstance(r, int) or r < 1:
        raise ValueError(f"path length r must be a positive integer, got {r!r}")
    if not 0 <= p <= 1:
        raise ValueError(f"probability p must lie in [0, 1], got {p}")
    half = (r + 1) // 2
    if mode == "bound":
        return p**half * 2**r
    if mode != "exact":
        raise ValueError(f"mode must be 'exact' or 'bound', got {mode!r}")
    return math.fsum(
        math.comb(r, k) * p**k * (1 - p) ** (r - k) for k in range(half, r + 1)
    )


def _geometric_bound(params: BoundParams, log_ratio_term: float, q: float,
                     log_volume: float = 0.0) -> BoundValue:
    """Shared tail shape pref*N*L*(D+1)/D * volume * exp(ell*log_ratio) / (1-q)."""
    if q >= 1:
        return BoundValue.divergent()
    if log_ratio_term == -math.inf:
        return BoundValue.zero()
    log_value = (
        params._log_prefactor()
        + log_volume
        + params.ell * log_ratio_term
        - math.log1p(-q)
    )
    return BoundValue.from_log(log_value)


def p_ub(params: BoundParams) -> BoundValue:
    """Total-logical-error upper bound for i.i.d. edge faults of rate p."""
    if params.p is None:
        raise ValueError("p_ub requires p")
    q = (2 * params.degree_branch) ** 2 * params.p
    log_q = math.log(q) if q > 0 else -math.inf
    return _geometric_bound(params, log_q, q)


def w_ub_prime(params: BoundParams) -> BoundValue:
    """General-noise norm bound before per-path norm splitting: P_UB at p = 2*eta."""
    if params.eta is None:
        raise ValueError("w_ub_prime requires eta")
    return p_ub(replace(params, p=2 * params.eta))


def w_ub(params: BoundParams) -> BoundValue:
    """General-noise bound with every fault path bounded separately.

    Carries the (1+eta)^A volume factor, A being the syndrome-lattice
    edge count, which is what destroys the threshold for eta > 0.
    """
    if params.eta is None:
        raise ValueError("w_ub requires eta")
    if params.A is None:
        raise ValueError("w_ub requires the syndrome-graph edge count A")
    eta = params.eta
    d2 = 2 * params.degree_branch
    qt = d2**2 * 2 * eta / (1 + eta) ** 2
    log_qt = math.log(qt) if qt > 0 else -math.inf
    return _geometric_bound(params, log_qt, qt, log_volume=params.A * math.log1p(eta))


@dataclass(frozen=True)
class GenericBound:
    """Cost/benefit split of the interpolated bound family."""

    cost: float
    benefit: float
    value: float
    log_cost: float
    log_benefit: float
    log_value: float
    convergence_ok: bool


def generic_bound(params: BoundParams) -> GenericBound:
    """Interpolated bound f(a,eta) (1+a*eta)^v(L) * [D^2*2*eta/(1+a*eta)^2]^ell.

    alpha = 0 reproduces w_ub_prime, alpha = 1 reproduces w_ub; the cost
    factor C(L) collects the fault-location growth, the benefit factor
    B(L) the error-removal suppression.
    """
    if params.eta is None or params.alpha is None:
        raise ValueError("generic_bound requires eta and alpha")
    if params.A is None:
        raise ValueError("generic_bound requires the syndrome-graph edge count A")
    eta, alpha = params.eta, params.alpha
    d2 = 2 * params.degree_branch
    qa = d2**2 * 2 * eta / (1 + alpha * eta) ** 2
    if qa >= 1:
        inf = math.inf
        return GenericBound(inf, inf, inf, inf, inf, inf, convergence_ok=False)

    log_cost = (
        params._log_prefactor()
        - math.log1p(-qa)
        + params.A * math.log1p(alpha * eta)
    )
    log_benefit = params.ell * (math.log(qa) if qa > 0 else -math.inf)
    log_value = log_cost + log_benefit

    def _exp(x: float) -> float:
        try:
            return math.exp(x)
        except OverflowError:
            return math.inf

    return GenericBound(
        cost=_exp(log_cost),
        benefit=_exp(log_benefit),
        value=_exp(log_value),
        log_cost=log_cost,
        log_benefit=log_benefit,
        log_value=log_value,
        convergence_ok=True,
    )


def disconnected_factor(A: int, r: int, p: float) -> float:
    """Correction factor from all fault patterns on the A-r off-path edges.

    Literal log-space summation of the binomial series, which the
    binomial theorem says must come out as 1; evaluating it numerically
    is the identity check on the disconnected-piece counting.
    """
    if not (isinstance(A, int) and isinstance(r, int)) or r < 0 or A < r:
        raise ValueError(f"need integers A >= r >= 0, got A={A!r}, r={r!r}")
    if not 0 <= p <= 1:
        raise ValueError(f"probability p must lie in [0, 1], got {p}")
    m = A - r
    if m == 0 or p == 0 or p == 1:
        return 1.0
    ell = np.arange(m + 1)
    log_terms = (
        math.lgamma(m + 1)
        - np.array([math.lgamma(k + 1) for k in ell])
        - np.array([math.lgamma(m - k + 1) for k in ell])
        + ell * math.log(p)
        + (m - ell) * math.log1p(-p)
    )
    mx = log_terms.max()
    return float(math.exp(mx) * np.exp(log_terms - mx).sum())


THRESHOLD_KINDS = ("pub", "wubprime", "wub")


@dataclass(frozen=True)
class BlowupEvidence:
    """Why W_UB(eta) cannot decrease indefinitely in L."""

    eta: float
    divergent: bool
    rise_observed_at: int | None
    rise_certified_at: int | None
    scanned_to: int
    log_values: tuple[tuple[int, float], ...]


def wub_blowup_scan(
    eta: float,
    L_max: int = 41,
    template: str = "circuit12",
    degree_branch: int = 11,
    start_prefactor: int = 2,
    edge_counts: Callable[[int], int] | dict[int, int] | None = None,
    certify_to: int = 20001,
) -> BlowupEvidence:
    """Certify that W_UB(L) at fixed eta > 0 eventually rises without bound.

    Scans odd L with N = L. ``edge_counts`` supplies A(L) for the scan
    range (constructed graphs in the acceptance suite); past the scan
    range the validated closed form extrapolates until the rise
    certificate d * dA(L) + log(qt) > 0 fires, with d = log(1+eta).
    Divergent geometric series (qt >= 1) blow up at every L outright.
    """
    if eta <= 0:
        raise ValueError("blow-up scan needs eta > 0")
    d2 = 2 * degree_branch
    qt = d2**2 * 2 * eta / (1 + eta) ** 2
    if qt >= 1:
        return BlowupEvidence(
            eta=eta, divergent=True, rise_observed_at=None,
            rise_certified_at=None, scanned_to=L_max, log_values=(),
        )

    def area(L: int) -> int:
        if isinstance(edge_counts, dict):
            if L in edge_counts:
                return edge_counts[L]
        elif edge_counts is not None:
            return edge_counts(L)
        return edge_count(L, L, template)

    logs: list[tuple[int, float]] = []
    for L in range(3, L_max + 1, 2):
        params = BoundParams(
            L=L, eta=eta, degree_branch=degree_branch,
            A=area(L), start_prefactor=start_prefactor,
        )
        logs.append((L, w_ub(params).log_value))

    rise_observed = None
    for idx in range(len(logs) - 1, 0, -1):
        if logs[idx][1] > logs[idx - 1][1]:
            rise_observed = logs[idx - 1][0]
        else:
            break

    # Certificate: Delta(L) >= log(1+eta) * (A(L+2) - A(L)) + log(qt), and
    # the first term grows quadratically, so once positive it stays so.
    log_eta1 = math.log1p(eta)
    log_qt = math.log(qt)
    rise_certified = None
    prev_delta_a = None
    L = 3
    while L + 2 <= certify_to:
        delta_a = edge_count(L + 2, L + 2, template) - edge_count(L, L, template)
        if prev_delta_a is not None and delta_a < prev_delta_a:
            raise AssertionError("edge-count increments are not monotone")
        prev_delta_a = delta_a
        if log_eta1 * delta_a + log_qt > 0:
            rise_certified = L
            break
        L += 2
    return BlowupEvidence(
        eta=eta,
        divergent=False,
        rise_observed_at=rise_observed,
        rise_certified_at=rise_certified,
        scanned_to=L_max,
        log_values=tuple(logs),
    )


def threshold_solve(
    kind: str,
    params: BoundParams | None = None,
    eta_grid: Iterable[float] = DEFAULT_ETA_GRID,
    L_max: int = 41,
    template: str = "circuit12",
) -> Fraction | None:
    """Largest noise strength below which the chosen bound shrinks with L.

    pub and wubprime have exact rational thresholds fixed by the
    geometric-series condition; wub has none for any eta > 0, which the
    blow-up scan over the eta grid certifies before returning None.
    """
    kind = kind.lower()
    if kind not in THRESHOLD_KINDS:
        raise ValueError(f"threshold kind must be one of {THRESHOLD_KINDS}")
    d = params.degree_branch if params is not None else 11
    if kind == "pub":
        return Fraction(1, (2 * d) ** 2)
    if kind == "wubprime":
        return Fraction(1, 2 * (2 * d) ** 2)
    pref = params.start_prefactor if params is not None else 2
    for eta in eta_grid:
        ev = wub_blowup_scan(
            eta, L_max=L_max, template=template,
            degree_branch=d, start_prefactor=pref,
        )
        if not ev.divergent and ev.rise_certified_at is None:
            raise AssertionError(
                f"blow-up scan failed to certify divergence at eta={eta}"
            )
    return None


@dataclass(frozen=True)
class MethodsSumCheck:
    partial_sum: float
    closed_form: float
    gap: float


def methods_sum_check(
    L: int,
    N: int,
    p: float,
    r_max: int,
    degree_branch: int = 11,
    start_prefactor: int = 2,
) -> MethodsSumCheck:
    """Partial path-sum pref*N*L * sum_{r=L}^{r_max} D^r p^(ceil(r/2)) vs its closed form."""
    _require_odd_size(L)
    if not 0 <= p <= 1:
        raise ValueError(f"probability p must lie in [0, 1], got {p}")
    if r_max < L:
        raise ValueError("r_max must be at least L")
    if start_prefactor not in PREFACTOR_CHOICES:
        raise ValueError(f"start prefactor must be one of {PREFACTOR_CHOICES}")
    d2 = 2 * degree_branch
    q = d2**2 * p
    if q >= 1:
        raise ValueError(f"series diverges: (2*degree)^2 * p = {q} >= 1")
    front = start_prefactor * N * L
    if p == 0:
        return MethodsSumCheck(0.0, 0.0, 0.0)
    log_p, log_d2 = math.log(p), math.log(d2)
    partial = front * math.fsum(
        math.exp(r * log_d2 + ((r + 1) // 2) * log_p) for r in range(L, r_max + 1)
    )
    closed = front * (d2 + 1) / d2 * q ** ((L + 1) // 2) / (1 - q)
    return MethodsSumCheck(partial_sum=partial, closed_form=closed, gap=closed - partial)
