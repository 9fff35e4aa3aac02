"""Command-line surface: instance I/O, tables, bound sandwiches, experiments.

Error thresholds are accepted only as log10(eps) or directly as a budget x;
the interesting regimes put eps far below double-precision underflow.  All
output is deterministic: identical inputs give byte-identical output unless
--timestamp is passed.  Exit codes: 0 on success with all internal checks
passing, 1 on an invariant violation, 2 on precondition or usage errors,
3 on resource caps.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace
from datetime import datetime, timezone

from . import bounds as bounds_mod
from . import classify as classify_mod
from .complexity import budget_from_eps, info_complexity
from .errors import ParameterError, PreconditionError, ResourceLimitError, ToleranceError
from .params import (
    MultiplicitySpec,
    SpaceConfig,
    WeightFamily,
    dumps_config,
    load_config,
)
from .spaces import (
    coefficients_from_dict,
    coefficients_to_dict,
    kernel_eval,
    kind_from_name,
    truncate_optimal,
)
from .spectrum import EigenStream, nth_minimal_error


class InvariantViolation(RuntimeError):
    """An internal cross-check failed; the output cannot be trusted."""


@dataclass(frozen=True)
class ExperimentSpec:
    """A geometric budget grid over one or more dimensions."""

    config: SpaceConfig
    x_min: float
    x_max: float
    points: int
    s_list: tuple[int, ...]

    def __post_init__(self):
        if self.x_min <= 0:
            raise PreconditionError("x_min must be positive")
        if self.x_max <= self.x_min:
            raise PreconditionError("x_max must exceed x_min")
        if self.points < 3:
            raise PreconditionError("a grid needs at least 3 points")

    def grid(self) -> list[float]:
        ratio = self.x_max / self.x_min
        return [self.x_min * ratio ** (i / (self.points - 1)) for i in range(self.points)]


def run_fit_exp(spec: ExperimentSpec, threads: int | None = None) -> list[dict]:
    """Fit log n against log x per dimension and compare with the predicted rate.

    The count grows like x**B_s, so the slope of the log-log fit should
    approach B_s = sum_{j<=s} 1/b_j on a grid spanning enough decades.
    """
    import numpy as np

    if spec.x_max / spec.x_min < 100.0:
        raise PreconditionError("the fit grid must span at least two decades")
    out = []
    for s in spec.s_list:
        cfg = replace(spec.config, s=s)
        xs, ns = [], []
        for x in spec.grid():
            n = info_complexity(cfg, x, threads=threads)
            if n > 0:
                xs.append(math.log(x))
                ns.append(math.log(n))
        if len(xs) < 3:
            raise PreconditionError("grid left fewer than 3 usable points")
        slope, intercept = np.polyfit(xs, ns, 1)
        fitted = np.polyval([slope, intercept], xs)
        resid = np.asarray(ns) - fitted
        total = np.asarray(ns) - np.mean(ns)
        r2 = 1.0 - float(resid @ resid) / float(total @ total)
        predicted = bounds_mod.exponents(cfg, s).B_s
        out.append(
            {
                "s": s,
                "slope": float(slope),
                "intercept": float(intercept),
                "r_squared": r2,
                "predicted_B_s": predicted,
            }
        )
    return out


def run_sandwich(spec: ExperimentSpec, threads: int | None = None) -> list[dict]:
    """Lower/exact/upper rows over the grid; any ordering violation raises."""
    cfg = replace(spec.config, s=spec.s_list[0]) if spec.s_list else spec.config
    rows = []
    for x in spec.grid():
        exact = info_complexity(cfg, x, threads=threads)
        upper = bounds_mod.upper_bound(cfg, x)
        if x > cfg.a(1):
            lower = bounds_mod.lower_bound(cfg, x, "iv")
        else:
            lower = bounds_mod.lower_bound(cfg, x, "i")
        if not lower <= exact <= upper:
            raise InvariantViolation(
                f"bound sandwich failed at x = {x}: {lower} <= {exact} <= {upper}"
            )
        rows.append({"x": x, "lower_iv": lower, "exact": exact, "upper_iii": upper})
    return rows


def _emit_json(obj, args) -> None:
    if getattr(args, "timestamp", False):
        stamp = datetime.now(timezone.utc).isoformat()
        obj = {"generated": stamp, "rows": obj} if isinstance(obj, list) else {"generated": stamp, **obj}
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _csv_cell(v) -> str:
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _emit_csv(header, rows, args) -> None:
    lines = []
    if getattr(args, "timestamp", False):
        lines.append("# generated " + datetime.now(timezone.utc).isoformat())
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(_csv_cell(row[h]) for h in header))
    sys.stdout.write("\n".join(lines) + "\n")


def _emit_rows(header, rows, args) -> None:
    if args.format == "json":
        _emit_json(rows, args)
    else:
        _emit_csv(header, rows, args)


def _load_cfg(args) -> SpaceConfig:
    if not getattr(args, "config", None):
        raise ParameterError("this command needs --config FILE")
    cfg = load_config(args.config)
    if getattr(args, "s", None):
        cfg = replace(cfg, s=int(args.s))
    return cfg


def _budget_arg(args, config: SpaceConfig):
    if args.x is not None and args.log10_eps is not None:
        raise ParameterError("pass exactly one of --x and --log10-eps")
    if args.x is not None:
        try:
            value = float(args.x)
        except ValueError:
            raise ParameterError(f"invalid budget {args.x!r}") from None
        if value < 0:
            raise PreconditionError("budgets are nonnegative")
        return args.x  # keep the decimal string for the exact path
    if args.log10_eps is not None:
        return budget_from_eps(config.omega, float(args.log10_eps))
    raise ParameterError("a budget is required: --x or --log10-eps")


def _cmd_complexity(args) -> int:
    cfg = _load_cfg(args)
    x = _budget_arg(args, cfg)
    n = info_complexity(cfg, x, method=args.method, threads=args.threads)
    _emit_json({"x": float(x), "s": cfg.s, "n": str(n), "method": args.method}, args)
    return 0


def _cmd_spectrum(args) -> int:
    cfg = _load_cfg(args)
    stream = EigenStream(cfg)
    rows = []
    for _ in range(args.levels):
        e = next(stream)
        rows.append(
            {
                "rank_start": e.rank_start,
                "exponent_sum": e.exponent_sum,
                "eigenvalue": e.eigenvalue,
                "count": e.count,
                "cumulative": e.cumulative,
            }
        )
    header = ["rank_start", "exponent_sum", "eigenvalue", "count", "cumulative"]
    if args.format == "json":
        _emit_json(rows, args)
    else:
        _emit_csv(header, rows, args)
    return 0


def _cmd_error(args) -> int:
    cfg = _load_cfg(args)
    err = nth_minimal_error(cfg, args.n)
    _emit_json({"n": args.n, "error": err, "eigenvalue": err * err}, args)
    return 0


def _cmd_bounds(args) -> int:
    cfg = _load_cfg(args)
    x = _budget_arg(args, cfg)

    def attempt(fn, *a):
        try:
            return str(fn(*a))
        except (PreconditionError, ParameterError):
            return None

    result = {
        "x": float(x),
        "s": cfg.s,
        "lower_i": attempt(bounds_mod.lower_bound, cfg, x, "i"),
        "lower_ii": attempt(bounds_mod.lower_bound, cfg, x, "ii"),
        "lower_iv": attempt(bounds_mod.lower_bound, cfg, x, "iv"),
        "exact": str(info_complexity(cfg, x, threads=args.threads)),
        "upper_iii": str(bounds_mod.upper_bound(cfg, x)),
        "upper_pp14": attempt(bounds_mod.permutation_upper_bound, cfg, x),
    }
    _emit_json(result, args)
    return 0


def _cmd_sum_tau(args) -> int:
    cfg = _load_cfg(args)
    value = bounds_mod.sum_tau(cfg, args.tau, args.tail_tol)
    _emit_json({"tau": args.tau, "s": cfg.s, "value": value, "tail_tol": args.tail_tol}, args)
    return 0


def _inf_or(v):
    if v is None:
        return None
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def _exponents_dict(rep: bounds_mod.ExponentReport) -> dict:
    return {
        "B_s": rep.B_s,
        "B": _inf_or(rep.B),
        "B_star": _inf_or(rep.B_star),
        "p_s_star": rep.p_s_star,
        "p_star_uexp": rep.p_star_uexp,
        "t_star_qpt_upper": rep.t_star_qpt_upper,
        "t_star_qpt_exact": rep.t_star_qpt_exact,
        "p_star_spt": rep.p_star_spt,
        "ec_qpt_interval": list(rep.ec_qpt_interval) if rep.ec_qpt_interval else None,
        "ec_spt_interval": list(rep.ec_spt_interval) if rep.ec_spt_interval else None,
    }


def _cmd_exponents(args) -> int:
    cfg = _load_cfg(args)
    rep = bounds_mod.exponents(cfg, args.s or cfg.s)
    _emit_json(_exponents_dict(rep), args)
    return 0


def _parse_mult(text: str) -> MultiplicitySpec:
    # "p1,p2,...:tail"; an empty prefix part means a pure tail
    if ":" in text:
        head, tail = text.split(":", 1)
    else:
        head, tail = text, "1"
    prefix = tuple(int(v) for v in head.split(",") if v != "")
    return MultiplicitySpec(prefix, int(tail))


def _cmd_classify(args) -> int:
    if args.config:
        cfg = load_config(args.config)
        weights, mult, omega = cfg.weights, cfg.mult, cfg.omega
    else:
        if args.family is None or args.omega is None:
            raise ParameterError("classify needs --config, or --family with --omega")
        v1, v2, v3 = (float(v) for v in args.family.split(","))
        weights = WeightFamily.power_exp(c_a=args.c_a, v1=v1, v2=v2, c_b=args.c_b, v3=v3)
        mult = _parse_mult(args.mult) if args.mult else MultiplicitySpec((args.m0,), 1)
        if args.mult and args.m0 != mult.m0:
            raise ParameterError(f"--m0 {args.m0} conflicts with --mult (m0 = {mult.m0})")
        omega = args.omega
    report = classify_mod.classify(weights, mult, omega)
    lim = report.inputs_echo
    _emit_json(
        {
            "verdicts": report.verdicts,
            "regions": {
                "wt_t1t2": "t1>1 or m0==1",
                "wt_t1t2_region": report.parametric["wt_t1t2"],
                "ec_wt_t1t2": "t1>1, or t2>1 and m0==1",
                "ec_wt_t1t2_region": report.parametric["ec_wt_t1t2"],
            },
            "exponents": _exponents_dict(report.exponents),
            "limits": {
                "alpha": _inf_or(lim.alpha),
                "alpha_star": _inf_or(lim.alpha_star),
                "alpha_ecqpt": _inf_or(lim.alpha_ecqpt),
                "lim_a": _inf_or(lim.lim_a),
                "lim_log_ratio": _inf_or(lim.lim_log_ratio),
                "B": _inf_or(lim.B),
                "B_star": _inf_or(lim.B_star),
            },
        },
        args,
    )
    return 0


def _parse_point(text: str, integral: bool):
    vals = [v for v in text.split(",") if v != ""]
    if integral:
        return tuple(int(v) for v in vals)
    return tuple(float(v) for v in vals)


def _cmd_kernel(args) -> int:
    cfg = _load_cfg(args)
    kind = kind_from_name(args.kind, args.walsh_base)
    integral = kind.tag == "l2seq"
    x = _parse_point(args.x, integral)
    y = _parse_point(args.y, integral)
    value, tail = kernel_eval(kind, cfg, x, y, args.tol, weighted=not args.unweighted)
    value = complex(value)
    _emit_json(
        {"value": {"re": value.real, "im": value.imag}, "certified_tail": tail}, args
    )
    return 0


def _cmd_approx(args) -> int:
    cfg = _load_cfg(args)
    kind = kind_from_name(args.kind, args.walsh_base)
    with open(args.coeffs, encoding="utf-8") as fh:
        vec = coefficients_from_dict(json.load(fh))
    from .spaces import validate_space

    validate_space(kind, cfg)
    truncated, cert = truncate_optimal(cfg, vec, args.n)
    payload = coefficients_to_dict(truncated)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    _emit_json(
        {
            "certificate": {
                "worst_case_error": cert.worst_case_error,
                "n_used": cert.n_used,
                "eigen_cutoff": cert.eigen_cutoff,
            },
            "coefficients": None if args.out else payload,
        },
        args,
    )
    return 0


def _spec_from_args(args) -> ExperimentSpec:
    cfg = load_config(args.config) if args.config else None
    if cfg is None:
        raise ParameterError("this command needs --config FILE")
    s_list = tuple(int(v) for v in args.s.split(",")) if args.s else (cfg.s,)
    return ExperimentSpec(
        config=cfg, x_min=args.x_min, x_max=args.x_max, points=args.points, s_list=s_list
    )


def _cmd_fit_exp(args) -> int:
    rows = run_fit_exp(_spec_from_args(args), threads=args.threads)
    _emit_rows(["s", "slope", "intercept", "r_squared", "predicted_B_s"], rows, args)
    return 0


def _cmd_sandwich(args) -> int:
    rows = run_sandwich(_spec_from_args(args), threads=args.threads)
    _emit_rows(["x", "lower_iv", "exact", "upper_iii"], rows, args)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="instance JSON file")
    common.add_argument("--format", choices=("csv", "json"), default="json")
    common.add_argument("--seed", type=int, default=None,
                        help="reserved for reproducing randomized validation runs")
    common.add_argument("--threads", type=int, default=None)
    common.add_argument("--timestamp", action="store_true",
                        help="prepend a generation timestamp (breaks byte-exact replay)")
    common.add_argument("--echo-config", action="store_true",
                        help="print the parsed config and exit")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--x", help="budget x (decimal string, kept exact)")
    budget.add_argument("--log10-eps", type=float, dest="log10_eps",
                        help="error threshold as log10(eps), <= 0")

    p = argparse.ArgumentParser(prog="expapprox", description=__doc__)
    sub = p.add_subparsers(dest="command")

    sp = sub.add_parser("complexity", parents=[common, budget])
    sp.add_argument("--method", choices=("recursion", "bruteforce"), default="recursion")
    sp.set_defaults(func=_cmd_complexity)

    sp = sub.add_parser("spectrum", parents=[common])
    sp.add_argument("--levels", type=int, default=10)
    sp.set_defaults(func=_cmd_spectrum, format_default="csv")

    sp = sub.add_parser("error", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.set_defaults(func=_cmd_error)

    sp = sub.add_parser("bounds", parents=[common, budget])
    sp.set_defaults(func=_cmd_bounds)

    sp = sub.add_parser("sum-tau", parents=[common])
    sp.add_argument("--tau", type=float, required=True)
    sp.add_argument("--tail-tol", type=float, default=1e-10, dest="tail_tol")
    sp.set_defaults(func=_cmd_sum_tau)

    sp = sub.add_parser("exponents", parents=[common])
    sp.add_argument("--s", type=int, default=None)
    sp.set_defaults(func=_cmd_exponents)

    sp = sub.add_parser("classify", parents=[common])
    sp.add_argument("--family", help="v1,v2,v3")
    sp.add_argument("--c-a", type=float, default=1.0, dest="c_a")
    sp.add_argument("--c-b", type=float, default=1.0, dest="c_b")
    sp.add_argument("--m0", type=int, default=1)
    sp.add_argument("--mult", help="multiplicities as 'p1,p2,...:tail'")
    sp.add_argument("--omega", type=float)
    sp.set_defaults(func=_cmd_classify)

    sp = sub.add_parser("kernel", parents=[common])
    sp.add_argument("--kind", required=True,
                    choices=("l2seq", "hermite", "korobov", "cosine", "walsh"))
    sp.add_argument("--walsh-base", type=int, default=2, dest="walsh_base")
    sp.add_argument("--x", required=True, help="comma-separated point")
    sp.add_argument("--y", required=True, help="comma-separated point")
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--unweighted", action="store_true")
    sp.set_defaults(func=_cmd_kernel)

    sp = sub.add_parser("approx", parents=[common])
    sp.add_argument("--kind", required=True,
                    choices=("l2seq", "hermite", "korobov", "cosine", "walsh"))
    sp.add_argument("--walsh-base", type=int, default=2, dest="walsh_base")
    sp.add_argument("--coeffs", required=True, help="coefficient JSON file")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--out", help="write truncated coefficients here")
    sp.set_defaults(func=_cmd_approx)

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--x-min", type=float, required=True, dest="x_min")
    grid.add_argument("--x-max", type=float, required=True, dest="x_max")
    grid.add_argument("--points", type=int, default=9)
    grid.add_argument("--s", help="comma-separated dimensions")

    sp = sub.add_parser("fit-exp", parents=[common, grid])
    sp.set_defaults(func=_cmd_fit_exp, format_default="csv")

    sp = sub.add_parser("sandwich", parents=[common, grid])
    sp.set_defaults(func=_cmd_sandwich, format_default="csv")

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not hasattr(args, "func"):
        parser.print_help()
        return 2
    # Table commands default to CSV unless --format was given explicitly.
    if getattr(args, "format_default", None) and (argv is None or "--format" not in argv):
        args.format = args.format_default
    try:
        if getattr(args, "echo_config", False):
            if not args.config:
                raise ParameterError("--echo-config needs --config FILE")
            sys.stdout.write(dumps_config(load_config(args.config)) + "\n")
            return 0
        return args.func(args)
    except (ParameterError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ResourceLimitError, ToleranceError) as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
