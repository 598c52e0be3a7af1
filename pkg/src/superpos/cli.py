"""Command-line front end.

Exit codes: 0 success, 1 a checked property failed, 2 bad input or
configuration, 3 the integrator produced an invalid state.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from . import channels as ch
from . import dynamics as dy
from . import interferometer as itf
from . import verify as vf
from .core import Decomposition
from .errors import SuperposError, ValidationFailure
from .io import dumps_operator, loads_channel, loads_decomposition, loads_state, read_text
from .measures import (
    NormSpec,
    a_f,
    a_s,
    kyfan_bound,
    norm_measure,
    predictability,
)

EXIT_OK, EXIT_PROPERTY, EXIT_INPUT, EXIT_INTEGRATOR = 0, 1, 2, 3


class InputError(Exception):
    pass


def _dims(text: str) -> Decomposition:
    """``1,1`` style list or a path to a decomposition JSON file."""
    if text.endswith(".json"):
        return loads_decomposition(read_text(text))
    try:
        return Decomposition([int(x) for x in text.split(",")])
    except ValueError as exc:
        raise InputError(f"bad --dims {text!r}: {exc}") from exc


def _emit(doc: dict) -> None:
    print(json.dumps(doc, indent=2))


# --- measure -------------------------------------------------------------------

def cmd_measure(args) -> int:
    rho = loads_state(read_text(args.state))
    L = _dims(args.dims)
    L.check(rho.shape[0])
    name = args.measure
    kind, _, arg = name.partition(":")
    witness = None
    if kind == "as":
        rep = a_s(rho, L)
        value = rep.value
        witness = json.loads(dumps_operator(rep.witness))
    elif kind == "af":
        rep = a_f(rho, L)
        value = rep.value
        witness = {"weights": rep.witness.weights.tolist(),
                   "vectors": [[[z.real, z.imag] for z in v] for v in rep.witness.vectors],
                   "converged": rep.converged}
    elif kind == "kyfan":
        value = norm_measure(rho, L, NormSpec.kyfan(_int(arg, name)))
    elif kind == "trace":
        value = norm_measure(rho, L, NormSpec.trace())
    elif kind == "schatten":
        value = norm_measure(rho, L, NormSpec.schatten(_float(arg, name)))
    elif kind == "predictability":
        value = predictability(rho, L)
    elif kind == "bound":
        value = kyfan_bound(rho, L, _int(arg, name))
    else:
        raise InputError(f"unknown measure {name!r}")
    doc = {"measure": name, "value": value}
    if witness is not None and args.witness:
        doc["witness"] = witness
    _emit(doc)
    return EXIT_OK


def _int(text: str, name: str) -> int:
    try:
        return int(text)
    except ValueError as exc:
        raise InputError(f"measure {name!r} needs an integer parameter") from exc


def _float(text: str, name: str) -> float:
    try:
        return float(text)
    except ValueError as exc:
        raise InputError(f"measure {name!r} needs a numeric parameter") from exc


# --- simulate ------------------------------------------------------------------

def _scenario(args) -> dy.Scenario:
    sources = sum(x is not None for x in (args.g_file, args.seed, args.simple))
    if sources != 1:
        raise InputError("give exactly one of --g-file, --seed, --simple")
    if args.seed is not None:
        return dy.random_scenario(args.scenario, args.levels, args.seed)
    if args.simple is not None:
        return dy.simple_scenario(args.scenario, args.levels, args.simple)
    try:
        doc = json.loads(read_text(args.g_file))
        g = np.asarray(doc["g"], dtype=float)
        H = np.diag(doc["energies"]) if "energies" in doc else None
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad rate file: {exc}") from exc
    return dy.Scenario(args.scenario, args.levels, g, H)


def cmd_simulate(args) -> int:
    if args.steps < 1 or not args.t_max > 0:
        raise InputError("--steps must be positive and --t-max > 0")
    s = _scenario(args)
    grid = np.linspace(0.0, args.t_max, args.steps + 1)
    ts = dy.run_timeseries(s, grid)
    sidecar = ts.to_csv(args.out)
    report = {"csv": str(args.out), "metadata": str(sidecar), "rows": len(grid)}
    code = EXIT_OK
    if args.compare_analytic:
        if args.simple is None or s.kind == "f3":
            raise InputError("--compare-analytic needs --simple with scenario f1 or f2")
        f = dy.analytic_nonlocal if s.kind == "f1" else dy.analytic_local
        exact = np.array([[f(s.N, args.simple, t, k) for k in range(1, s.N + 1)] for t in grid])
        dev = float(np.max(np.abs(ts.kyfan - exact)))
        report["max_abs_deviation"] = dev
        report["within_1e-7"] = dev <= 1e-7
        code = EXIT_OK if dev <= 1e-7 else EXIT_PROPERTY
    _emit(report)
    return code


# --- interfere -----------------------------------------------------------------

def cmd_interfere(args) -> int:
    rho = loads_state(read_text(args.state))
    N = rho.shape[0] // 2
    if rho.shape[0] != 2 * N:
        raise InputError("state dimension must be 2 x internal dimension")
    k = N if args.k is None else args.k
    cfg = itf.ProtocolConfig(N, k, args.mode)
    if cfg.mode == "single_u":
        U, pmax = itf.optimal_single_u(rho)
        out = itf.run_protocol(rho, U, np.eye(N), np.eye(N))
        doc = {"mode": cfg.mode, "p_max": pmax}
    elif args.stochastic:
        U, V, value = itf.stochastic_maximize(rho, k, args.stochastic, seed=args.seed)
        out = itf.run_protocol(rho, U, V, itf.filter_projector(N, k))
        doc = {"mode": "stochastic", "k": k, "value": value}
    else:
        U, V, value = itf.optimal_uv(rho, k)
        out = itf.run_protocol(rho, U, V, itf.filter_projector(N, k))
        doc = {"mode": cfg.mode, "k": k, "value": value}
    doc.update(p1=out.p1, p2=out.p2, q1=out.q1, q2=out.q2, r=out.r,
               kyfan=norm_measure(rho, [N, N], NormSpec.kyfan(k)))
    _emit(doc)
    return EXIT_OK


# --- channel-check -------------------------------------------------------------

def cmd_channel_check(args) -> int:
    phi = loads_channel(read_text(args.channel))
    L = _dims(args.dims)
    L.check(phi.dim)
    doc = {"is_sp": ch.is_sp(phi, L) if L.K == 2 else None,
           "is_block_preserving": ch.is_block_preserving(phi, L)}
    code = EXIT_OK
    if doc["is_sp"]:
        for m in ("as", "trace"):
            rep = ch.monotonicity_harness(phi, L, m, samples=args.samples, seed=args.seed)
            doc[f"monotone_{m}"] = rep.passed
            doc[f"max_increase_{m}"] = rep.max_increase
            if not rep.passed:
                code = EXIT_PROPERTY
    elif not doc["is_block_preserving"]:
        rep = ch.monotonicity_harness(phi, L, "as", samples=args.samples, seed=args.seed,
                                      mode="search", pinched_inputs=True)
        doc["as_increase_witness_found"] = rep.found
        if rep.found:
            doc["as_increase"] = rep.violations[0][1]
    _emit(doc)
    return code


# --- verify --------------------------------------------------------------------

def cmd_verify(args) -> int:
    ok = True
    for name in (vf.SUITES if args.suite == "all" else [args.suite]):
        start = time.perf_counter()
        results = vf.run(name, args.samples, args.seed)[name]
        print(f"[{name}] {time.perf_counter() - start:.1f}s")
        for r in results:
            print("  " + r.line())
            ok &= r.passed
        sys.stdout.flush()
    print("all properties passed" if ok else "some properties FAILED")
    return EXIT_OK if ok else EXIT_PROPERTY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="superpos", description="Superposition measures for mixed states.")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="evaluate a measure on a state file")
    m.add_argument("state", help="state JSON file")
    m.add_argument("--dims", required=True, help="subspace dimensions, e.g. 1,1, or a decomposition JSON file")
    m.add_argument("--measure", default="as",
                   help="as | af | kyfan:k | trace | schatten:p | predictability | bound:k")
    m.add_argument("--witness", action="store_true", help="include the witness in the output")
    m.set_defaults(func=cmd_measure)

    s = sub.add_parser("simulate", help="integrate a relaxation model and write a CSV time series")
    s.add_argument("--scenario", choices=dy.KINDS, required=True)
    s.add_argument("--levels", type=int, required=True, help="internal levels N")
    s.add_argument("--g-file", help="JSON with an upper-triangular rate matrix 'g' and optional 'energies'")
    s.add_argument("--seed", type=int, help="random energies and rates")
    s.add_argument("--simple", type=float, metavar="G", help="every level decays to the ground state at rate G")
    s.add_argument("--t-max", type=float, required=True)
    s.add_argument("--steps", type=int, default=200)
    s.add_argument("--out", required=True, help="CSV output path (metadata goes next to it as .json)")
    s.add_argument("--compare-analytic", action="store_true")
    s.set_defaults(func=cmd_simulate)

    i = sub.add_parser("interfere", help="optimal interferometer settings for a path (x) internal state")
    i.add_argument("state")
    i.add_argument("--k", type=int, help="filter rank (default: internal dimension)")
    i.add_argument("--mode", choices=("general", "single_u"), default="general")
    i.add_argument("--stochastic", type=int, metavar="ITERS", help="use the hill-climbing search instead of the SVD")
    i.add_argument("--seed", type=int, default=0)
    i.set_defaults(func=cmd_interfere)

    c = sub.add_parser("channel-check", help="classify a Kraus channel and test monotonicity")
    c.add_argument("channel", help="channel JSON file")
    c.add_argument("--dims", required=True)
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_channel_check)

    v = sub.add_parser("verify", help="run property suites")
    v.add_argument("--suite", choices=list(vf.SUITES) + ["all"], default="all")
    v.add_argument("--samples", type=int)
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    try:
        return args.func(args)
    except ValidationFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATOR
    except (InputError, SuperposError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
