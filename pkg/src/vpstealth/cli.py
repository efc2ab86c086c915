"""Command-line front end.

    vpstealth [--config FILE] COMMAND [options]

Commands: exponents, region, rates, simulate, oracle, validate. Flags
override values from the JSON config file; the resolved configuration is
embedded in every output (``#`` header lines in CSV, a ``config`` object in
JSON). Exit status: 0 success, 2 usage error, 3 failed validation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings

import numpy as np

from . import checks
from .binary_channel import BscChannel, DomainError, VpProfile, vp_input_dist
from .exponents import (
    eg_hat_alpha,
    exponent_curve,
    r_alpha_max,
)
from .oracle import (
    ExactCapError,
    check_cap,
    decomposition_check,
    exact_ensemble_error_probability,
    exact_error_probability,
)
from .simulator import (
    TrialConfig,
    gallager_bound,
    generate_codebook,
    run_reliability_trials,
    stream,
    warren_statistics,
)
from .stealth_region import (
    StealthBudget,
    StealthScenario,
    achievable_region,
    covert_scaling_constant,
    rate_key_bounds,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VALIDATION = 3

DEFAULTS = {
    "p": 0.1,
    "q": 0.1,
    "a": 1.0,
    "alpha": 0.5,
    "b": None,
    "beta": None,
    "delta": 0.01,
    "theta": 0.02,
    "xi": 0.01,
    "n": 1024,
    "m": None,
    "k": 1,
    "r_alpha": None,
    "trials": 200,
    "seed": 0,
    "mode": "auto",
    "rate": 0.0,
    "rho_grid": "0:1:11",
    "rho_grid_res": "-0.5:0:11",
    "beta_grid": "0:1:101",
    "format": "csv",
    "units": "nats",
    "output_path": None,
    "trace": False,
}

LN2 = math.log(2.0)


class UsageError(Exception):
    pass


def parse_grid(text: str) -> list[float]:
    """``start:stop:num`` (inclusive linspace) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, num = text.split(":")
            grid = np.linspace(float(start), float(stop), int(num)).tolist()
        else:
            grid = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse grid {text!r}") from exc
    if not grid:
        raise UsageError("grid is empty")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise UsageError("grid must be strictly increasing")
    return grid


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="vpstealth", description=__doc__.split("\n\n")[0])
    ap.add_argument("--config", help="JSON file with default parameter values")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=["csv", "json"], default=None, help="output format (csv)")
        sp.add_argument("--units", choices=["nats", "bits"], default=None, help="display units (nats)")
        sp.add_argument("--output-path", default=None, help="write here instead of stdout")
        sp.add_argument("--seed", type=int, default=None, help="RNG seed (0)")

    def channels(sp):
        sp.add_argument("--p", type=float, default=None, help="Bob's crossover (0.1)")
        sp.add_argument("--q", type=float, default=None, help="Warren's crossover (0.1)")

    def profiles(sp):
        sp.add_argument("--a", type=float, default=None, help="information coefficient (1.0)")
        sp.add_argument("--alpha", type=float, default=None, help="information exponent (0.5)")
        sp.add_argument("--b", type=float, default=None, help="obfuscation coefficient (none: covert)")
        sp.add_argument("--beta", type=float, default=None, help="obfuscation exponent")

    sp = sub.add_parser("exponents", help="E0, E0hat, EGhat and Er_hat curves")
    common(sp), channels(sp), profiles(sp)
    sp.add_argument("--n", type=int, default=None, help="blocklength for the finite-n E0 curve (1024)")
    sp.add_argument("--rate", type=float, default=None, help="scaling constant R_alpha for EGhat (0)")
    sp.add_argument("--rho-grid", default=None, help="channel-coding rho grid (0:1:11)")
    sp.add_argument("--rho-grid-res", default=None, help="resolvability rho grid (-0.5:0:11)")

    sp = sub.add_parser("region", help="achievable (alpha, beta) staircase")
    common(sp), channels(sp)
    sp.add_argument("--delta", type=float, default=None, help="uncoded stealth budget (0.01)")
    sp.add_argument("--beta-grid", default=None, help="obfuscation exponents (0:1:101)")

    sp = sub.add_parser("rates", help="message/key size bounds and the covert constant")
    common(sp), channels(sp), profiles(sp)
    sp.add_argument("--delta", type=float, default=None, help="uncoded stealth budget (0.01)")
    sp.add_argument("--theta", type=float, default=None, help="coded stealth budget (0.02)")
    sp.add_argument("--xi", type=float, default=None, help="slack (0.01)")
    sp.add_argument("--n", type=int, default=None, help="blocklength (1024)")

    for name, text in (("simulate", "Monte-Carlo reliability and Warren statistics"),
                       ("oracle", "exact small-n quantities for one random codebook")):
        sp = sub.add_parser(name, help=text)
        common(sp), channels(sp), profiles(sp)
        sp.add_argument("--n", type=int, default=None, help="blocklength (1024)")
        sp.add_argument("--m", type=int, default=None, help="messages per subcodebook")
        sp.add_argument("--k", type=int, default=None, help="number of keys (1)")
        sp.add_argument("--r-alpha", type=float, default=None,
                        help="set m = round(exp(n^alpha * r_alpha)) instead of --m")
        if name == "simulate":
            sp.add_argument("--trials", type=int, default=None, help="trials (200)")
            sp.add_argument("--mode", choices=["auto", "explicit", "implicit"], default=None)
            sp.add_argument("--trace", action="store_true", default=None,
                            help="include per-trial outcomes")

    sp = sub.add_parser("validate", help="run the invariant battery")
    common(sp), channels(sp), profiles(sp)
    sp.add_argument("--delta", type=float, default=None, help="uncoded stealth budget (0.01)")
    return ap


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        try:
            with open(args.config) as fh:
                file_cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config file: {exc}") from exc
        unknown = set(file_cfg) - set(DEFAULTS)
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(file_cfg)
    for key, val in vars(args).items():
        if key in cfg and val is not None:
            cfg[key] = val
    cfg["command"] = args.command
    return cfg


def _scenario(cfg: dict) -> StealthScenario:
    obf = None
    if cfg["b"] is not None:
        if cfg["beta"] is None:
            raise UsageError("--b needs --beta")
        obf = VpProfile(cfg["b"], cfg["beta"])
    return StealthScenario(
        info=VpProfile(cfg["a"], cfg["alpha"]),
        bob=BscChannel(cfg["p"]),
        warren=BscChannel(cfg["q"]),
        obf=obf,
        budget=StealthBudget(cfg["delta"], cfg["theta"]),
    )


def _messages(cfg: dict) -> int:
    if cfg["r_alpha"] is not None:
        return max(1, int(round(math.exp(cfg["n"] ** cfg["alpha"] * cfg["r_alpha"]))))
    if cfg["m"] is None:
        raise UsageError("give --m or --r-alpha")
    return cfg["m"]


def _scale(cfg: dict) -> float:
    return 1.0 / LN2 if cfg["units"] == "bits" else 1.0


def cmd_exponents(cfg: dict) -> tuple[list[str], list[list], dict]:
    bob = BscChannel(cfg["p"])
    a = cfg["a"]
    s = _scale(cfg)
    rho = parse_grid(cfg["rho_grid"])
    rho_res = parse_grid(cfg["rho_grid_res"])
    input = vp_input_dist(VpProfile(a, cfg["alpha"]), cfg["n"])
    rate = cfg["rate"] / s
    curves = [
        exponent_curve("E0", rho, a, bob, input=input),
        exponent_curve("E0hat", rho, a, bob),
        exponent_curve("EGhat_terms", rho, a, bob, rate=rate),
        exponent_curve("Er_hat", rho_res, a, bob),
    ]
    rows = [[c.kind, r, v * s] for c in curves for r, v in zip(c.rho, c.values)]
    eg = eg_hat_alpha(rate, a, bob)
    summary = {
        "r_alpha_max": r_alpha_max(a, bob) * s,
        "eg_hat_alpha": eg.exponent * s,
        "eg_hat_rho": eg.rho,
    }
    return ["kind", "rho", "value"], rows, summary


def cmd_region(cfg: dict):
    rep = achievable_region(parse_grid(cfg["beta_grid"]), BscChannel(cfg["q"]), cfg["delta"])
    rows = [[r.beta, r.alpha_max, r.coeff_constraint] for r in rep.rows]
    return ["beta", "alpha_max", "coeff_constraint"], rows, {"k": rep.k}


def cmd_rates(cfg: dict):
    sc = _scenario(cfg)
    s = _scale(cfg)
    if cfg["xi"] >= 0.1:
        print(f"warning: xi = {cfg['xi']} is not small; bounds are loose", file=sys.stderr)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = rate_key_bounds(sc, cfg["xi"], n=cfg["n"])
    out = rep.to_dict()
    for key in ("r_alpha_max_info", "warren_threshold", "log_m_bound", "log_k_bound"):
        out[key] *= s
    try:
        out["covert_scaling_constant"] = covert_scaling_constant(sc.bob, sc.warren, cfg["delta"]) * s
    except DomainError as exc:
        out["covert_scaling_constant"] = None
        out["covert_note"] = str(exc)
    rows = [[k, v] for k, v in out.items()]
    return ["quantity", "value"], rows, {}


def cmd_simulate(cfg: dict):
    sc = _scenario(cfg)
    tc = TrialConfig(sc, n=cfg["n"], m=_messages(cfg), k=cfg["k"], trials=cfg["trials"],
                     seed=cfg["seed"], mode=cfg["mode"], trace=bool(cfg["trace"]))
    rel = run_reliability_trials(tc).to_dict()
    war = warren_statistics(TrialConfig(sc, n=cfg["n"], m=tc.m, k=tc.k, trials=cfg["trials"],
                                        seed=cfg["seed"], mode=cfg["mode"])).to_dict()
    trace = rel.pop("trace", [])
    rows = [["reliability", k, v] for k, v in rel.items() if k != "config"]
    rows += [["warren", k, v] for k, v in war.items() if k != "config"]
    rows += [["trace", t["trial"], f"key={t['key']} message={t['message']} error={t['error']}"]
             for t in trace]
    return ["report", "quantity", "value"], rows, {}


def cmd_oracle(cfg: dict):
    n = cfg["n"]
    check_cap(n)
    sc = _scenario(cfg)
    m = _messages(cfg)
    input = vp_input_dist(sc.info, n)
    code = generate_codebook(n, m, cfg["k"], input, stream(cfg["seed"], 0, kind=1))
    dec = decomposition_check(code, sc.warren, sc.obf_input(n))
    out = {
        "total_divergence": dec.total,
        "term_a": dec.term_a,
        "term_b": dec.term_b,
        "term_c": dec.term_c,
        "decomposition_residual": dec.residual,
        "error_probability": exact_error_probability(code, 0, cfg["p"]),
        "ensemble_error_probability": exact_ensemble_error_probability(n, m, input, cfg["p"]),
        "gallager_bound": gallager_bound(n, m, input, sc.bob)[0],
    }
    return ["quantity", "value"], [[k, v] for k, v in out.items()], {}


def cmd_validate(cfg: dict):
    profile = checks.Profile(p=cfg["p"], q=cfg["q"], a=cfg["a"], alpha=cfg["alpha"],
                             delta=cfg["delta"], seed=cfg["seed"])
    results = checks.run_checks(profile)
    rows = [[r.name, "PASS" if r.passed else "FAIL", r.detail] for r in results]
    return ["check", "status", "detail"], rows, {"all_passed": all(r.passed for r in results)}


COMMANDS = {
    "exponents": cmd_exponents,
    "region": cmd_region,
    "rates": cmd_rates,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "validate": cmd_validate,
}


def _jsonable(v):
    if isinstance(v, float) and not math.isfinite(v):
        return repr(v)
    return v


def render(cfg: dict, header: list[str], rows: list[list], summary: dict) -> str:
    # where the output goes does not change what it says
    cfg = {k: v for k, v in cfg.items() if k != "output_path"}
    if cfg["format"] == "json":
        doc = {
            "config": cfg,
            "summary": {k: _jsonable(v) for k, v in summary.items()},
            "columns": header,
            "rows": [[_jsonable(v) for v in row] for row in rows],
        }
        return json.dumps(doc, indent=2) + "\n"
    buf = io.StringIO()
    buf.write(f"# config: {json.dumps(cfg, sort_keys=True)}\n")
    for k, v in summary.items():
        buf.write(f"# {k}: {v}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = resolve_config(args)
        header, rows, summary = COMMANDS[args.command](cfg)
    except (UsageError, DomainError, ExactCapError) as exc:
        print(f"vpstealth {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(cfg, header, rows, summary)
    if cfg["output_path"]:
        with open(cfg["output_path"], "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "validate" and not summary["all_passed"]:
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
