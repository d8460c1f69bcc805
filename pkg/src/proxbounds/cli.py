"""Command line harness: run traces, certify t-sequences, compare bounds, optimize.

Verbs
-----
run      write one trace CSV per (algorithm, N) pair from a JSON config
certify  build both closed-form certificates for a t-sequence and check them
compare  markdown table of analytic bounds versus observed quantities
quadopt  maximize the mapping-bound denominator and compare with the
         decreasing-tail sequence

The config file is a JSON document::

    {
      "problem": {"kind": "lasso", "dimension": 30}
                 | {"kind": "box", "dimension": 20}
                 | {"kind": "quadratic_l1", "Q": [[...]], "b": [...], "lam": 0.3,
                    "x0": [...], "x_star": [...], "F_star": ...}
                 | {"kind": "box_ls", "A": [[...]], "b": [...],
                    "lo": [...], "hi": [...], "x0": [...], ...}
                 | {"path": "problem.json", "x0": [...]},
      "algorithms": [{"name": "pgm"}, {"name": "fpgm"},
                     {"name": "fpgm_m", "m": 13},
                     {"name": "fpgm_sigma", "sigma": 0.78},
                     {"name": "fpgm_opg"}, {"name": "fpgm_a", "a": 4},
                     {"name": "gfpgm", "t": {"label": "linear", "a": 4}}],
      "iterations": [10, 20],     # run: one CSV per algorithm and N
      "n": 20,                    # compare: the single horizon
      "seed": 12345,
      "tol": 1e-12,
      "m_rounding": "floor",
      "sigma_constant": "L_over_sigma"
    }

Random instances (kinds "lasso" and "box") are generated from the seed
by the documented splitmix64 stream and are written next to the traces
as problem.json, so runs travel as data.  Explicit problems must carry
x_star/F_star; otherwise the tool asks for a solve_reference pass.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys
from dataclasses import dataclass

import numpy as np

from . import algorithms as alg
from .certificates import (
    analytic_bounds,
    check_feasibility,
    cost_certificate,
    dual_bound_cost,
    dual_bound_mapping,
    mapping_certificate,
    maximize_quad,
    quad_objective,
)
from .instances import random_box, random_lasso
from .problems import (
    CompositeProblem,
    eval_F,
    initial_from_reference,
    make_box_constrained_ls,
    make_quadratic_l1,
    problem_from_json,
    problem_to_json,
    solve_reference,
)
from .schedules import (
    M_ROUNDINGS,
    custom_t_sequence,
    fista_t_sequence,
    linear_t_sequence,
    opg_t_sequence,
    step_coefficients,
    t_sequence_to_json,
    validate_t_sequence,
)

__all__ = ["main", "build_parser"]


class ConfigError(Exception):
    """Invalid configuration or command line usage."""


_ALGORITHMS = ("pgm", "fpgm", "fpgm_m", "fpgm_sigma", "fpgm_opg", "fpgm_a", "gfpgm")


@dataclass
class ExperimentConfig:
    problem: dict
    algorithms: list[dict]
    iterations: list[int]
    seed: int
    tol: float
    m_rounding: str
    sigma_constant: str
    n: int | None


def _load_config(path: str, args: argparse.Namespace) -> ExperimentConfig:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("config must be a JSON object")

    problem = doc.get("problem")
    if not isinstance(problem, dict):
        raise ConfigError("config needs a 'problem' object")

    algos = doc.get("algorithms", [])
    if not isinstance(algos, list) or not algos:
        raise ConfigError("config needs a non-empty 'algorithms' list")
    for entry in algos:
        if not isinstance(entry, dict) or entry.get("name") not in _ALGORITHMS:
            raise ConfigError(
                f"each algorithm entry needs a 'name' among {ALGO_HELP}"
            )

    iterations = doc.get("iterations", [])
    if not isinstance(iterations, list):
        raise ConfigError("'iterations' must be a list of positive integers")
    its: list[int] = []
    for n in iterations:
        if not isinstance(n, int) or n < 1:
            raise ConfigError("'iterations' must be a list of positive integers")
        its.append(n)

    n_single = doc.get("n")
    if n_single is not None and (not isinstance(n_single, int) or n_single < 1):
        raise ConfigError("'n' must be a positive integer")

    seed = doc.get("seed", 0)
    if args.seed is not None:
        seed = args.seed
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError("'seed' must be a nonnegative integer")

    tol = float(doc.get("tol", 1e-12))
    if args.tol is not None:
        tol = args.tol
    if not tol > 0:
        raise ConfigError("'tol' must be positive")

    m_rounding = doc.get("m_rounding", "floor")
    if args.m_rounding is not None:
        m_rounding = args.m_rounding
    if m_rounding not in M_ROUNDINGS:
        raise ConfigError(f"'m_rounding' must be one of {M_ROUNDINGS}")

    sigma_constant = doc.get("sigma_constant", "L_over_sigma")
    if args.sigma_constant is not None:
        sigma_constant = args.sigma_constant
    if sigma_constant not in alg.SIGMA_CONSTANTS:
        raise ConfigError(f"'sigma_constant' must be one of {alg.SIGMA_CONSTANTS}")

    return ExperimentConfig(
        problem=problem,
        algorithms=algos,
        iterations=its,
        seed=seed,
        tol=tol,
        m_rounding=m_rounding,
        sigma_constant=sigma_constant,
        n=n_single,
    )


ALGO_HELP = ", ".join(_ALGORITHMS)


def _resolve_problem(cfg: ExperimentConfig) -> tuple[CompositeProblem, np.ndarray, bool]:
    """Build the problem and starting point; returns (problem, x0, generated)."""
    spec = cfg.problem
    if "path" in spec:
        try:
            with open(spec["path"]) as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read problem file: {exc}") from exc
        problem = problem_from_json(doc)
        x0 = _explicit_x0(spec, problem)
        return problem, x0, False

    kind = spec.get("kind")
    if kind in ("lasso", "box"):
        dim = spec.get("dimension")
        if not isinstance(dim, int) or dim < 1:
            raise ConfigError(f"random problem kind {kind!r} needs a positive 'dimension'")
        maker = random_lasso if kind == "lasso" else random_box
        problem, x0 = maker(cfg.seed, dim)
        return problem, x0, True
    if kind == "quadratic_l1":
        problem = make_quadratic_l1(
            np.array(spec["Q"], dtype=float), np.array(spec["b"], dtype=float), spec["lam"]
        )
    elif kind == "box_ls":
        lo = np.array([-math.inf if v is None else v for v in spec["lo"]], dtype=float)
        hi = np.array([math.inf if v is None else v for v in spec["hi"]], dtype=float)
        problem = make_box_constrained_ls(
            np.array(spec["A"], dtype=float), np.array(spec["b"], dtype=float), lo, hi
        )
    else:
        raise ConfigError(f"unknown problem kind {kind!r}")
    if "x_star" in spec:
        problem.set_reference(np.array(spec["x_star"], dtype=float), float(spec["F_star"]))
    return problem, _explicit_x0(spec, problem), False


def _explicit_x0(spec: dict, problem: CompositeProblem) -> np.ndarray:
    if "x0" in spec:
        return problem.require_dim(np.array(spec["x0"], dtype=float))
    return problem.prox(np.zeros(problem.dim), problem.L)


def _ensure_reference(problem: CompositeProblem, generated: bool, tol: float) -> None:
    if problem.F_star is not None:
        return
    if generated:
        solve_reference(problem, tol=tol)
        return
    raise ConfigError(
        "problem has no reference solution; run solve_reference and store "
        "x_star/F_star in the problem document"
    )


def _make_t(spec: dict, n: int, m_rounding: str):
    label = spec.get("label")
    if label == "fista":
        return fista_t_sequence(n)
    if label == "linear":
        if "a" not in spec:
            raise ConfigError("linear t-sequences need parameter 'a'")
        return linear_t_sequence(n, float(spec["a"]))
    if label == "opg":
        return opg_t_sequence(n, rounding=m_rounding)
    if label == "custom":
        values = spec.get("values")
        if not values:
            raise ConfigError("custom t-sequences need 'values'")
        return custom_t_sequence(values)
    raise ConfigError(f"unknown t-sequence label {label!r}")


def _run_one(entry: dict, problem, init, n: int, cfg: ExperimentConfig) -> alg.RunTrace:
    name = entry["name"]
    if name == "pgm":
        return alg.run_pgm(problem, init, n)
    if name == "fpgm":
        return alg.run_fpgm(problem, init, n)
    if name == "fpgm_m":
        m = entry.get("m")
        if not isinstance(m, int):
            raise ConfigError("fpgm_m needs an integer parameter 'm'")
        return alg.run_fpgm_m(problem, init, m, n)
    if name == "fpgm_sigma":
        sigma = entry.get("sigma")
        if not isinstance(sigma, (int, float)):
            raise ConfigError("fpgm_sigma needs a numeric parameter 'sigma'")
        return alg.run_fpgm_sigma(problem, init, float(sigma), n, constant=cfg.sigma_constant)
    if name == "fpgm_opg":
        return alg.run_fpgm_opg(problem, init, n, rounding=cfg.m_rounding)
    if name == "fpgm_a":
        a = entry.get("a")
        if not isinstance(a, (int, float)):
            raise ConfigError("fpgm_a needs a numeric parameter 'a'")
        t = linear_t_sequence(n, float(a))
        return alg.run_gfpgm(problem, t, init, label=f"fpgm_a({float(a):g})", params={"a": float(a)})
    if name == "gfpgm":
        t_spec = entry.get("t")
        if not isinstance(t_spec, dict):
            raise ConfigError("gfpgm needs a 't' sequence spec")
        return alg.run_gfpgm(problem, _make_t(t_spec, n, cfg.m_rounding), init)
    raise ConfigError(f"unknown algorithm {name!r}")


def _bounds_for(entry: dict, n: int, L: float, R: float, cfg: ExperimentConfig):
    name = entry["name"]
    kwargs: dict = {}
    if name == "fpgm_m":
        kwargs["m"] = entry["m"]
    elif name == "fpgm_sigma":
        kwargs["sigma"] = float(entry["sigma"])
    elif name == "fpgm_a":
        kwargs["a"] = float(entry["a"])
    elif name == "gfpgm":
        kwargs["t"] = _make_t(entry["t"], n, cfg.m_rounding)
    return analytic_bounds(name, n, L, R, **kwargs)


def _fmt(x: float) -> str:
    return repr(float(x))


def _sanitize(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "-", label).strip("-")


def _write_atomic(path: str, text: str) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _trace_csv_text(trace: alg.RunTrace, F_star: float) -> str:
    lines = ["iter,F_gap,map_norm_y,map_norm_xN,omega_min_cum"]
    for row in trace.csv_rows(F_star):
        cells = [
            str(row["iter"]),
            _fmt(row["F_gap"]),
            "" if row["map_norm_y"] is None else _fmt(row["map_norm_y"]),
            "" if row["map_norm_xN"] is None else _fmt(row["map_norm_xN"]),
            _fmt(row["omega_min_cum"]),
        ]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config, args)
    if not cfg.iterations:
        raise ConfigError("run needs a non-empty 'iterations' list")
    problem, x0, generated = _resolve_problem(cfg)
    _ensure_reference(problem, generated, cfg.tol)
    init = initial_from_reference(problem, x0)
    out_dir = args.out or "."
    os.makedirs(out_dir, exist_ok=True)

    doc = problem_to_json(problem)
    doc["x0"] = [float(v) for v in init.x0]
    doc["R"] = init.R
    _write_atomic(os.path.join(out_dir, "problem.json"),
                  json.dumps(doc, indent=2, sort_keys=True) + "\n")

    for entry in cfg.algorithms:
        for n in cfg.iterations:
            trace = _run_one(entry, problem, init, n, cfg)
            name = f"{_sanitize(trace.label)}_N{n}.csv"
            path = os.path.join(out_dir, name)
            _write_atomic(path, _trace_csv_text(trace, problem.F_star))
            print(f"wrote {path}")
    return 0


def cmd_certify(args: argparse.Namespace) -> int:
    n = args.n
    if n < 1:
        raise ConfigError("--n must be a positive integer")
    m_rounding = args.m_rounding or "floor"
    if args.t == "custom":
        if not args.values:
            raise ConfigError("custom t-sequences need --values v0,v1,...")
        values = [float(v) for v in args.values.split(",")]
        t = custom_t_sequence(values)
    else:
        spec = {"label": args.t}
        if args.t == "linear":
            if args.a is None:
                raise ConfigError("linear t-sequences need --a")
            spec["a"] = args.a
        t = _make_t(spec, n, m_rounding)

    report = validate_t_sequence(t)
    doc: dict = {"n": n, "t": t_sequence_to_json(t), "valid": report.ok}
    if not report.ok:
        doc["violations"] = [{"index": i, "message": msg} for i, msg in report.violations]
        text = json.dumps(doc, indent=2, sort_keys=True)
        print(text)
        if args.out:
            _write_atomic(args.out, text + "\n")
        return 1

    h = step_coefficients(t)
    cost = cost_certificate(t)
    mapping = mapping_certificate(t)
    cost_feas = check_feasibility(h, cost)
    map_feas = check_feasibility(h, mapping)
    doc["cost"] = cost_feas.to_json() | {
        "gamma": cost.gamma,
        "bound_unit": dual_bound_cost(cost, 1.0, 1.0),
    }
    doc["mapping"] = map_feas.to_json() | {
        "gamma": mapping.gamma,
        "bound_unit": dual_bound_mapping(mapping, 1.0, 1.0),
    }
    analytic = None
    if args.t == "fista":
        analytic = analytic_bounds("fpgm", n, 1.0, 1.0)
    elif args.t == "linear":
        analytic = analytic_bounds("fpgm_a", n, 1.0, 1.0, a=args.a)
    elif args.t == "opg" and n >= 3:
        analytic = analytic_bounds("fpgm_opg", n, 1.0, 1.0)
    if analytic is not None:
        doc["analytic"] = {
            "cost_bound_unit": analytic.cost_bound,
            "mapping_bound_unit": analytic.mapping_bound,
        }
    text = json.dumps(doc, indent=2, sort_keys=True)
    print(text)
    if args.out:
        _write_atomic(args.out, text + "\n")
    return 0


def _markdown_table(rows: list[list[str]]) -> str:
    header = ["algorithm", "cost bound", "F gap", "cost ratio",
              "mapping bound", "min mapping", "mapping ratio"]
    lines = ["| " + " | ".join(header) + " |",
             "| " + " | ".join(["---"] * len(header)) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(row) + " |")
    return "\n".join(lines)


def cmd_compare(args: argparse.Namespace) -> int:
    cfg = _load_config(args.config, args)
    n = cfg.n if cfg.n is not None else (cfg.iterations[0] if len(cfg.iterations) == 1 else None)
    if n is None:
        raise ConfigError("compare needs a single horizon: set 'n' in the config")
    problem, x0, generated = _resolve_problem(cfg)
    _ensure_reference(problem, generated, cfg.tol)
    init = initial_from_reference(problem, x0)
    L, R = problem.L, init.R

    rows = []
    advisory_note = False
    for entry in cfg.algorithms:
        trace = _run_one(entry, problem, init, n, cfg)
        bounds = _bounds_for(entry, n, L, R, cfg)
        gap = float(trace.F_vals[-1] - problem.F_star)
        omega = trace.omega_min
        cost_ratio = gap / bounds.cost_bound
        cells = [
            trace.label,
            f"{bounds.cost_bound:.9g}",
            f"{gap:.9g}",
            f"{cost_ratio:.6g}",
        ]
        if bounds.mapping_bound is None:
            cells += ["-", f"{omega:.9g}", "-"]
        elif bounds.mapping_advisory:
            advisory_note = True
            cells += [f"{bounds.mapping_bound:.9g} (advisory)", f"{omega:.9g}", "-"]
        else:
            cells += [
                f"{bounds.mapping_bound:.9g}",
                f"{omega:.9g}",
                f"{omega / bounds.mapping_bound:.6g}",
            ]
        rows.append(cells)

    text = _markdown_table(rows)
    if advisory_note:
        text += ("\n\nAdvisory mapping bounds are reported for reference only "
                 "and excluded from ratio checks.")
    text += "\n"
    if args.out:
        _write_atomic(args.out, text)
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_quadopt(args: argparse.Namespace) -> int:
    n = args.n
    if n < 2:
        raise ConfigError("--n must be at least 2 (nothing to optimize below that)")
    rounding = args.m_rounding or "floor"
    best, info = maximize_quad(n, restarts=args.restarts, seed=args.seed or 0)
    reference = opg_t_sequence(n, rounding=rounding)
    ref_obj = quad_objective(reference)
    gap = (info["objective"] - ref_obj) / max(1.0, abs(ref_obj))
    print(f"horizon: {n}")
    print(f"optimized objective: {info['objective']:.12g}")
    print(f"reference objective: {ref_obj:.12g} (decreasing-tail sequence, {rounding} rounding)")
    print(f"relative gap: {gap:.3e}")
    print(f"converged: {info['converged']} (starts={info['starts']}, sweeps={info['sweeps']})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proxbounds",
        description="Prox-gradient methods with verified worst-case bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--seed", type=int, default=None, help="override the config seed")
        p.add_argument("--tol", type=float, default=None, help="reference solve tolerance")
        p.add_argument("--m-rounding", dest="m_rounding", choices=list(M_ROUNDINGS),
                       default=None, help="switch-point rounding for the opg sequence")
        p.add_argument("--sigma-constant", dest="sigma_constant",
                       choices=list(alg.SIGMA_CONSTANTS), default=None,
                       help="prox constant interpretation for fpgm_sigma")
        p.add_argument("--out", default=None, help="output directory or file")

    p_run = sub.add_parser("run", help="write trace CSVs for each (algorithm, N)")
    p_run.add_argument("--config", required=True, help="JSON experiment config")
    common(p_run)
    p_run.set_defaults(func=cmd_run)

    p_cert = sub.add_parser("certify", help="check both certificates for a t-sequence")
    p_cert.add_argument("--t", required=True, choices=["fista", "linear", "opg", "custom"])
    p_cert.add_argument("--n", required=True, type=int, help="horizon")
    p_cert.add_argument("--a", type=float, default=None, help="slope parameter for linear")
    p_cert.add_argument("--values", default=None, help="comma separated custom values")
    common(p_cert)
    p_cert.set_defaults(func=cmd_certify)

    p_cmp = sub.add_parser("compare", help="bounds versus observations as markdown")
    p_cmp.add_argument("--config", required=True, help="JSON experiment config")
    common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_q = sub.add_parser("quadopt", help="maximize the mapping-bound denominator")
    p_q.add_argument("--n", required=True, type=int, help="horizon (>= 2)")
    p_q.add_argument("--restarts", type=int, default=20)
    common(p_q)
    p_q.set_defaults(func=cmd_quadopt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
