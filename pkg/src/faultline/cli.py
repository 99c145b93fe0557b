"""Command-line interface: every subsystem behind one binary.

Output conventions: JSON documents carry {"command", "config", "timestamp",
...payload}; the timestamp is the only field excluded from golden
comparisons. Real numbers are serialized as decimal strings with 17
significant digits, with an exact rational form alongside where one
exists. CSV outputs have stable headers. Domain errors exit 1 with a
single-line JSON error on stderr; usage errors exit 2.

Every flag can also be supplied through a JSON config file (--config)
whose keys mirror the flag names; explicit flags win, unknown keys are
rejected. FAULTLINE_SEED serves as the seed fallback.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from fractions import Fraction
from typing import Any, Sequence

from . import bounds as bounds_mod
from . import enumeration, matcher, montecarlo, witness as witness_mod
from .code_lattice import build_code, logical_support
from .decoder import adjudicate
from .syndrome_graph import EAST, WEST, build_syndrome_graph, edge_count

_SEED_ENV = "FAULTLINE_SEED"


def fmt(x: float) -> str:
    """17-significant-digit decimal string; round-trips any float."""
    if x != x:
        return "nan"
    if x == math.inf:
        return "inf"
    if x == -math.inf:
        return "-inf"
    return f"{x:.17g}"


def _emit_json(args, payload: dict, config: dict) -> None:
    doc = {
        "command": args.command,
        "config": config,
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    doc.update(payload)
    text = json.dumps(doc, indent=2, sort_keys=True)
    _write_text(args, text + "\n")


def _write_text(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _resolve_seed(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get(_SEED_ENV)
    if env is not None:
        return int(env)
    return 0


def _qubit_name(q) -> str:
    return ":".join(str(part) for part in q)


def _cmd_lattice_info(args) -> None:
    code = build_code(args.L)
    config = {"L": args.L, "format": "json"}
    stabilizers = {
        _qubit_name(anc): sorted(_qubit_name(q) for q in support)
        for anc, support in code.stabilizers.items()
    }
    payload = {
        "t": code.t,
        "counts": {
            "data_qubits": len(code.data_qubits),
            "x_ancillas": len(code.x_ancillas),
            "z_ancillas": len(code.z_ancillas),
            "total": len(code.data_qubits) + code.n_ancillas,
        },
        "stabilizers": dict(sorted(stabilizers.items())),
        "logical_supports": {
            "X": sorted(_qubit_name(q) for q in logical_support(code, "X")),
            "Z": sorted(_qubit_name(q) for q in logical_support(code, "Z")),
        },
        "boundaries": {
            "smooth": [sorted(map(_qubit_name, b)) for b in code.smooth_boundaries],
            "rough": [sorted(map(_qubit_name, b)) for b in code.rough_boundaries],
        },
    }
    _emit_json(args, payload, config)


def _endpoint_name(graph, v: int) -> str:
    if v == WEST:
        return "west"
    if v == EAST:
        return "east"
    return ",".join(map(str, graph.vertex_coords(v)))


def _cmd_graph_info(args) -> None:
    graph = build_syndrome_graph(args.L, args.N, args.template)
    config = {"L": args.L, "N": graph.N, "template": args.template, "format": "json"}
    payload = {
        "vertices": graph.n_vertices,
        "edges": graph.n_edges,
        "degree_histogram": {str(k): v for k, v in graph.degree_histogram().items()},
        "faces": {
            "west": len(graph.face_vertices("west")),
            "east": len(graph.face_vertices("east")),
        },
        "cut_plane": graph.cut_plane,
    }
    if args.list_edges:
        payload["edge_table"] = [
            [eid, _endpoint_name(graph, e.u), _endpoint_name(graph, e.v),
             e.kind, e.displacement]
            for eid, e in enumerate(graph.edges)
        ]
    _emit_json(args, payload, config)


def _matching_payload(m: matcher.Matching) -> dict:
    weight = m.total_weight
    return {
        "pairs": [list(p) for p in m.pairs],
        "boundary_matches": list(m.boundary_matches),
        "total_weight": weight if isinstance(weight, int) else fmt(weight),
    }


def _cmd_match(args) -> None:
    with open(args.problem) as fh:
        spec = json.load(fh)
    problem = matcher.MatchingProblem(
        defects=tuple(spec["defects"]),
        pair_weights=tuple(tuple(row) for row in spec["pair_weights"]),
        boundary_weights=tuple(spec["boundary_weights"]),
    )
    m = matcher.min_weight_matching(problem)
    _emit_json(args, {"matching": _matching_payload(m)}, {"problem": args.problem})


def _cmd_adjudicate(args) -> None:
    graph = build_syndrome_graph(args.L, args.N, args.template)
    with open(args.faults) as fh:
        fault_spec = json.load(fh)
    faults = frozenset(int(e) for e in fault_spec["edge_ids"])
    outcome = adjudicate(graph, faults)
    config = {
        "L": args.L, "N": graph.N, "template": args.template, "faults": args.faults,
    }
    payload = {
        "faults": sorted(faults),
        "defects": sorted(outcome.defects_seen),
        "recovery": sorted(outcome.recovery),
        "residual": sorted(outcome.residual),
        "logical_error": outcome.logical_error,
        "matching": _matching_payload(outcome.matching),
    }
    _emit_json(args, payload, config)


def _cmd_simulate(args) -> None:
    config = montecarlo.SimConfig(
        L=args.L, N=args.N, template=args.template, p=args.p,
        trials=args.trials, seed=_resolve_seed(args.seed), workers=args.workers,
    )
    result = montecarlo.run_trials(config)
    config_echo = {
        "L": config.L, "N": config.rounds, "template": config.template,
        "p": fmt(config.p), "trials": config.trials, "seed": config.seed,
        "workers": config.workers,
    }
    payload = {
        "trials": result.trials,
        "failures": result.failures,
        "point_estimate": fmt(result.point_estimate),
        "wilson_interval_95": [fmt(result.wilson_low), fmt(result.wilson_high)],
        "seed": result.seed,
    }
    _emit_json(args, payload, config_echo)


def _cmd_sweep(args) -> None:
    if not args.L or not args.p:
        raise ValueError("sweep needs at least one --L and one --p (flags or config)")
    sweep_config = montecarlo.SweepConfig(
        Ls=tuple(args.L), ps=tuple(args.p), trials=args.trials,
        seed=_resolve_seed(args.seed), template=args.template,
        N=args.N, workers=args.workers,
    )
    results = montecarlo.sweep(sweep_config)
    import io

    buf = io.StringIO()
    montecarlo.write_sweep_csv(results, buf)
    _write_text(args, buf.getvalue())


def _bound_params(args, need_A: bool) -> bounds_mod.BoundParams:
    A = args.A
    if need_A and A is None:
        A = edge_count(args.L, args.N if args.N else args.L, args.template)
    return bounds_mod.BoundParams(
        L=args.L, N=args.N, p=args.p, eta=args.eta, alpha=args.alpha,
        degree_branch=args.degree_branch, A=A, start_prefactor=args.prefactor,
    )


def _bound_value_payload(v: bounds_mod.BoundValue) -> dict:
    return {
        "value": fmt(v.value),
        "log_value": fmt(v.log_value),
        "convergence_ok": v.convergence_ok,
    }


def _cmd_bounds(args) -> None:
    kind = args.kind
    need_A = kind in ("w_ub", "generic")
    params = _bound_params(args, need_A)
    config = {
        "kind": kind, "L": params.L, "N": params.rounds,
        "degree_branch": params.degree_branch, "prefactor": params.start_prefactor,
    }
    if params.p is not None:
        config["p"] = fmt(params.p)
    if params.eta is not None:
        config["eta"] = fmt(params.eta)
    if params.alpha is not None:
        config["alpha"] = fmt(params.alpha)
    if params.A is not None:
        config["A"] = params.A
    if kind == "p_ub":
        payload = _bound_value_payload(bounds_mod.p_ub(params))
    elif kind == "w_ub_prime":
        payload = _bound_value_payload(bounds_mod.w_ub_prime(params))
    elif kind == "w_ub":
        payload = _bound_value_payload(bounds_mod.w_ub(params))
    elif kind == "generic":
        g = bounds_mod.generic_bound(params)
        payload = {
            "cost": fmt(g.cost),
            "benefit": fmt(g.benefit),
            "value": fmt(g.value),
            "log_cost": fmt(g.log_cost),
            "log_benefit": fmt(g.log_benefit),
            "log_value": fmt(g.log_value),
            "convergence_ok": g.convergence_ok,
        }
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown bound kind {kind!r}")
    _emit_json(args, payload, config)


def _parse_eta_grid(text: str) -> tuple[float, ...]:
    """'1e-8:1e-2[:points]' (log-spaced) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        lo, hi = float(parts[0]), float(parts[1])
        if lo <= 0 or hi <= 0 or lo > hi:
            raise ValueError(f"bad eta grid bounds {text!r}")
        decades = math.log10(hi / lo)
        n = int(parts[2]) if len(parts) > 2 else max(2, round(decades) + 1)
        return tuple(lo * (hi / lo) ** (i / (n - 1)) for i in range(n))
    return tuple(float(v) for v in text.split(","))


def _cmd_threshold(args) -> None:
    kind = args.kind
    config = {"kind": kind, "degree_branch": args.degree_branch}
    payload: dict[str, Any]
    if kind in ("pub", "wubprime"):
        frac = bounds_mod.threshold_solve(kind)
        payload = {
            "threshold": {
                "rational": f"{frac.numerator}/{frac.denominator}",
                "decimal": fmt(float(frac)),
            }
        }
    else:
        grid = _parse_eta_grid(args.eta_grid)
        config["eta_grid"] = [fmt(v) for v in grid]
        config["L_max"] = args.L_max
        evidence = []
        for eta in grid:
            ev = bounds_mod.wub_blowup_scan(
                eta, L_max=args.L_max, template=args.template,
                degree_branch=args.degree_branch, start_prefactor=args.prefactor,
            )
            evidence.append(
                {
                    "eta": fmt(eta),
                    "divergent": ev.divergent,
                    "rise_observed_at": ev.rise_observed_at,
                    "rise_certified_at": ev.rise_certified_at,
                }
            )
        result = bounds_mod.threshold_solve(
            "wub", eta_grid=grid, L_max=args.L_max, template=args.template,
        )
        assert result is None
        payload = {"threshold": None, "evidence": evidence}
    _emit_json(args, payload, config)


def _parse_l_range(text: str) -> list[int]:
    lo, hi = (int(v) for v in text.split(":"))
    if lo % 2 == 0 or lo < 3 or hi < lo:
        raise ValueError(f"bad odd-L range {text!r}")
    return list(range(lo, hi + 1, 2))


def _cmd_cost_benefit(args) -> None:
    import csv as csv_mod
    import io

    rows = []
    for L in _parse_l_range(args.L_range):
        A = edge_count(L, L, args.template)
        params = bounds_mod.BoundParams(
            L=L, eta=args.eta, alpha=args.alpha, A=A,
            degree_branch=args.degree_branch, start_prefactor=args.prefactor,
        )
        g = bounds_mod.generic_bound(params)
        rows.append(
            (
                L, A, fmt(g.log_cost / math.log(10)), fmt(g.log_benefit / math.log(10)),
                fmt(g.log_value / math.log(10)), fmt(g.value), int(g.convergence_ok),
            )
        )
    buf = io.StringIO()
    writer = csv_mod.writer(buf)
    writer.writerow(("L", "A", "log10_cost", "log10_benefit", "log10_value", "value", "convergence_ok"))
    writer.writerows(rows)
    _write_text(args, buf.getvalue())


def _cmd_methods_check(args) -> None:
    check = bounds_mod.methods_sum_check(
        args.L, args.N if args.N else args.L, args.p, args.r_max,
        degree_branch=args.degree_branch, start_prefactor=args.prefactor,
    )
    config = {
        "L": args.L, "N": args.N if args.N else args.L, "p": fmt(args.p),
        "r_max": args.r_max, "degree_branch": args.degree_branch,
        "prefactor": args.prefactor,
    }
    rel = check.gap / check.closed_form if check.closed_form else 0.0
    payload = {
        "partial_sum": fmt(check.partial_sum),
        "closed_form": fmt(check.closed_form),
        "gap": fmt(check.gap),
        "relative_gap": fmt(rel),
    }
    _emit_json(args, payload, config)


def _cmd_enumerate(args) -> None:
    import csv as csv_mod
    import io

    graph = build_syndrome_graph(args.L, args.N, args.template)
    table = enumeration.count_walks(graph, args.r_max, branching=args.degree_branch)
    saw: tuple[int, ...] | None = None
    if args.saw != "off":
        try:
            saw = enumeration.count_spanning_saw(graph, args.r_max)
        except ValueError:
            if args.saw == "on":
                raise
    buf = io.StringIO()
    writer = csv_mod.writer(buf)
    writer.writerow(
        ("r", "exact_walks", "spanning_saw", "bound_first11_2NL",
         "bound_first12_2NL", "bound_first11_4NL", "bound_first12_4NL")
    )
    for r, exact, b11_2, b12_2, b11_4, b12_4 in table.rows():
        writer.writerow(
            (r, exact, saw[r] if saw is not None else "", b11_2, b12_2, b11_4, b12_4)
        )
    _write_text(args, buf.getvalue())


def _cmd_witness(args) -> None:
    graph = build_syndrome_graph(args.L, args.N, args.template)
    seed = _resolve_seed(args.seed)
    found = witness_mod.find_breaking_witness(graph, args.budget, seed)
    config = {
        "L": args.L, "N": graph.N, "template": args.template,
        "budget": args.budget, "seed": seed,
    }
    payload = {
        "found": found is not None,
        "witness": found.to_dict(graph) if found is not None else None,
    }
    _emit_json(args, payload, config)


def _cmd_exclusion(args) -> None:
    with open(args.witness) as fh:
        doc = json.load(fh)
    wdoc = doc.get("witness", doc)
    if not isinstance(wdoc, dict):
        raise ValueError(f"{args.witness} does not contain a witness")
    graph = build_syndrome_graph(wdoc["L"], wdoc["N"], wdoc["template"])
    radii = [int(v) for v in args.radii.split(",")]
    seed = _resolve_seed(args.seed)
    stats = witness_mod.exclusion_zone_stats(
        graph, wdoc["base_faults"], radii, args.samples, seed,
        extra_size=args.extra_size,
    )
    config = {
        "witness": args.witness, "radii": radii, "samples": args.samples,
        "seed": seed, "extra_size": args.extra_size,
    }
    payload = {
        "stats": [
            {
                "radius": s.radius,
                "samples": s.samples,
                "flips": s.flips,
                "flip_fraction": fmt(s.flip_fraction) if s.flip_fraction is not None else None,
                "wilson_interval_95": (
                    [fmt(s.wilson_low), fmt(s.wilson_high)]
                    if s.wilson_low is not None else None
                ),
            }
            for s in stats
        ]
    }
    _emit_json(args, payload, config)


_HANDLERS = {
    "lattice-info": _cmd_lattice_info,
    "graph-info": _cmd_graph_info,
    "match": _cmd_match,
    "adjudicate": _cmd_adjudicate,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "bounds": _cmd_bounds,
    "threshold": _cmd_threshold,
    "cost-benefit": _cmd_cost_benefit,
    "methods-check": _cmd_methods_check,
    "enumerate": _cmd_enumerate,
    "witness": _cmd_witness,
    "exclusion": _cmd_exclusion,
}


_NATIVE_FORMAT = {
    "lattice-info": "json", "graph-info": "json", "match": "json",
    "adjudicate": "json", "simulate": "json", "sweep": "csv",
    "bounds": "json", "threshold": "json", "cost-benefit": "csv",
    "methods-check": "json", "enumerate": "csv", "witness": "json",
    "exclusion": "json",
}


def build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="faultline",
        description="Surface-code fault-path decoding, bounds, and diagnostics",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    registry: dict[str, argparse.ArgumentParser] = {}

    def sub_cmd(name: str, help: str) -> argparse.ArgumentParser:
        p = subparsers.add_parser(name, help=help)
        registry[name] = p
        return p

    def common(p: argparse.ArgumentParser, out: bool = True) -> None:
        p.add_argument("--config", help="JSON file of flag defaults (flags win)")
        if out:
            p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="output format where applicable")

    p = sub_cmd("lattice-info", "surface-code counts and stabilizer table")
    p.add_argument("--L", type=int)
    common(p)

    p = sub_cmd("graph-info", "syndrome-lattice structure")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--list-edges", action="store_true")
    common(p)

    p = sub_cmd("match", "solve a matching problem file")
    p.add_argument("--problem")
    common(p)

    p = sub_cmd("adjudicate", "decode a fault file to a logical verdict")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--faults")
    common(p)

    p = sub_cmd("simulate", "Monte Carlo logical error rate")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--p", type=float)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub_cmd("sweep", "simulate over an (L, p) grid, CSV out")
    p.add_argument("--L", type=int, action="append")
    p.add_argument("--p", type=float, action="append")
    p.add_argument("--N", type=int)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int, default=1)
    common(p)

    p = sub_cmd("bounds", "evaluate a closed-form bound")
    p.add_argument("--kind", choices=("p_ub", "w_ub_prime", "w_ub", "generic"))
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--A", type=int)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--degree-branch", type=int, default=11)
    p.add_argument("--prefactor", type=int, default=2, choices=(2, 4))
    common(p)

    p = sub_cmd("threshold", "solve for the accuracy threshold")
    p.add_argument("--kind", choices=("pub", "wubprime", "wub"))
    p.add_argument("--eta-grid", default="1e-8:1e-2")
    p.add_argument("--L-max", type=int, default=41)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--degree-branch", type=int, default=11)
    p.add_argument("--prefactor", type=int, default=2, choices=(2, 4))
    common(p)

    p = sub_cmd("cost-benefit", "C(L)/B(L) split of the generic bound")
    p.add_argument("--alpha", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--L-range", default="3:41")
    p.add_argument("--template", default="circuit12")
    p.add_argument("--degree-branch", type=int, default=11)
    p.add_argument("--prefactor", type=int, default=2, choices=(2, 4))
    common(p)

    p = sub_cmd("methods-check", "partial path sum vs closed form")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--r-max", type=int, default=60)
    p.add_argument("--degree-branch", type=int, default=11)
    p.add_argument("--prefactor", type=int, default=2, choices=(2, 4))
    common(p)

    p = sub_cmd("enumerate", "exact walk and spanning-path counts, CSV out")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--template", default="circuit12")
    p.add_argument("--r-max", type=int, default=8)
    p.add_argument("--degree-branch", type=int, default=11)
    p.add_argument("--saw", choices=("auto", "on", "off"), default="auto")
    common(p)

    p = sub_cmd("witness", "search for a spanning-path-breaking witness")
    p.add_argument("--L", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--template", default="phenomenological6")
    p.add_argument("--budget", type=int, default=1_000_000)
    p.add_argument("--seed", type=int)
    common(p)

    p = sub_cmd("exclusion", "flip statistics outside an exclusion zone")
    p.add_argument("--witness")
    p.add_argument("--radii", default="0,1,2,3")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int)
    p.add_argument("--extra-size", type=int, default=2)
    common(p)

    return parser, registry


def _parse_with_config(argv: Sequence[str]) -> argparse.Namespace:
    """Two-phase parse: config values become defaults, explicit flags win."""
    parser, registry = build_parser()
    first = parser.parse_args(argv)
    config_path = getattr(first, "config", None)
    if not config_path:
        return first
    with open(config_path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise ValueError("config file must hold a JSON object")
    subparser = registry[first.command]
    known = set(vars(first))
    defaults = {}
    for key, value in sorted(cfg.items()):
        dest = key.replace("-", "_")
        if dest not in known or dest in ("command", "config"):
            raise ValueError(f"unknown config key {key!r}")
        defaults[dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parse_with_config(sys.argv[1:] if argv is None else list(argv))
        if args.format is not None and args.format != _NATIVE_FORMAT[args.command]:
            raise ValueError(
                f"{args.command} emits {_NATIVE_FORMAT[args.command]} only"
            )
        required = {"L": ("lattice-info", "graph-info", "adjudicate", "simulate",
                          "bounds", "methods-check", "enumerate", "witness"),
                    "p": ("simulate", "methods-check"),
                    "kind": ("bounds", "threshold"),
                    "problem": ("match",),
                    "faults": ("adjudicate",),
                    "witness": ("exclusion",),
                    "alpha": ("cost-benefit",),
                    "eta": ("cost-benefit",)}
        for attr, commands in required.items():
            if args.command in commands and getattr(args, attr, None) is None:
                raise ValueError(f"missing required parameter --{attr}")
        _HANDLERS[args.command](args)
        return 0
    except (ValueError, OSError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc)}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
