"""Command-line surface binding the library into reproducible pipelines.

Every command reads plain flags (or a JSON config mirroring the flag names),
writes artifact files atomically, and drops a JSON run manifest beside them.
Exit status: 0 success, 1 domain error (broken phase, no exceptional point),
2 input error.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import platform
import sys
import time

import numpy as np
import scipy

from . import __version__
from .dynamics import EvolutionGenerator, coriolis, heisenberg_evolve, expectation
from .flow import jordan_profile, locate_ep, locate_ep_provider, sweep_provider
from .matrixkit import DEFAULT_TOL, BrokenPhaseError
from .metric import diagonal_metric, dyson_from_metric, hermitize, matrix_metric
from .models import ModelSpec, build_q
from .serialize import (
    dyson_to_json,
    family_from_json,
    flow_markers_to_json,
    flow_trace_to_csv,
    jordan_profile_to_json,
    matrix_from_json,
    matrix_to_json,
    metric_result_to_json,
    state_pair_from_json,
    trajectory_to_csv,
)

def _write_atomic(path: str, data: str) -> None:
    tmp = f"{path}.tmp{os.getpid()}"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(data)
    os.replace(tmp, path)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


class _Run:
    """Collects outputs and writes the run manifest next to them."""

    def __init__(self, command: str, cfg: dict):
        self.command = command
        self.cfg = cfg
        self.outputs: list[str] = []
        self.started = time.monotonic()

    def emit(self, path: str, data: str) -> None:
        _write_atomic(path, data)
        self.outputs.append(path)

    def finish(self) -> None:
        if not self.outputs:
            return
        manifest = {
            "command": self.command,
            "config": {k: v for k, v in sorted(self.cfg.items()) if v is not None},
            "versions": {
                "cryptoherm": __version__,
                "numpy": np.__version__,
                "scipy": scipy.__version__,
                "python": platform.python_version(),
            },
            "wall_time_s": time.monotonic() - self.started,
            "outputs": list(self.outputs),
        }
        _write_atomic(f"{self.outputs[0]}.manifest.json", _dump_json(manifest))


def _require(cfg: dict, *keys):
    vals = []
    for key in keys:
        if cfg.get(key) is None:
            raise ValueError(f"missing required parameter --{key.replace('_', '-')}")
        vals.append(cfg[key])
    return vals[0] if len(vals) == 1 else vals


def _parse_kappa(value) -> np.ndarray | None:
    if value is None:
        return None
    if isinstance(value, str):
        parts = [p for p in value.split(",") if p.strip()]
        return np.asarray([float(p) for p in parts])
    return np.asarray([float(p) for p in value])


def _model_spec(cfg: dict) -> ModelSpec:
    kind = cfg["model"]
    dim = cfg.get("n")
    if dim is None and kind == "crunchbang":
        dim = 8
    if dim is None:
        raise ValueError("missing required parameter --n")
    return ModelSpec(kind=kind, dim=int(dim))


def _resolve_provider(cfg: dict):
    """Time-indexed matrix provider from either a model or a family file."""
    if cfg.get("model") is not None:
        spec = _model_spec(cfg)
        return lambda t: build_q(spec, t)
    if cfg.get("family_file") is not None:
        return family_from_json(_load_json_file(cfg["family_file"]))
    raise ValueError("specify a model (--model/--n) or a family file (--family-file)")


def _resolve_matrix(cfg: dict) -> np.ndarray:
    """A single matrix from (model, t) or from an explicit matrix file."""
    if cfg.get("model") is not None:
        spec = _model_spec(cfg)
        t = _require(cfg, "t")
        return build_q(spec, float(t))
    if cfg.get("matrix_file") is not None:
        return matrix_from_json(_load_json_file(cfg["matrix_file"]))
    raise ValueError("specify a model (--model/--n/--t) or a matrix file (--matrix-file)")


def _print_or_emit(run: _Run, cfg: dict, payload: dict) -> None:
    text = _dump_json(payload)
    if cfg.get("out"):
        run.emit(cfg["out"], text)
    else:
        sys.stdout.write(text)


def _cmd_scan(cfg: dict) -> int:
    run = _Run("scan", cfg)
    t_min, t_max, steps, out = _require(cfg, "t_min", "t_max", "steps", "out")
    provider = _resolve_provider(cfg)
    trace = sweep_provider(
        provider,
        float(t_min),
        float(t_max),
        int(steps),
        tol=float(cfg["tol"]),
        reality_tol=float(cfg["reality_tol"]),
        marker_tol=float(cfg["marker_tol"]),
    )
    buf = io.StringIO()
    flow_trace_to_csv(trace, buf)
    run.emit(out, buf.getvalue())
    run.emit(f"{out}.markers.json", _dump_json(flow_markers_to_json(trace)))
    run.finish()
    return 0


def _cmd_metric(cfg: dict) -> int:
    run = _Run("metric", cfg)
    q = _resolve_matrix(cfg)
    mr = matrix_metric(q, _parse_kappa(cfg.get("kappa")), float(cfg["tol"]))
    _print_or_emit(run, cfg, metric_result_to_json(mr))
    run.finish()
    return 0


def _cmd_dyson(cfg: dict) -> int:
    run = _Run("dyson", cfg)
    tol = float(cfg["tol"])
    q = _resolve_matrix(cfg)
    mr = matrix_metric(q, _parse_kappa(cfg.get("kappa")), tol)
    dyson = dyson_from_metric(mr, tol)
    hermitized = hermitize(q, dyson, tol)
    payload = {
        "metric": metric_result_to_json(mr),
        "dyson": dyson_to_json(dyson),
        "hermitized": matrix_to_json(hermitized),
    }
    _print_or_emit(run, cfg, payload)
    run.finish()
    return 0


def _omega_provider(provider, route: str, kappa, tol: float):
    def omega_of_t(t: float) -> np.ndarray:
        q = provider(t)
        if route == "diagonal":
            mr = diagonal_metric(q, tol)
            if mr is None:
                raise BrokenPhaseError(f"no positive diagonal intertwiner at t={t}")
        else:
            mr = matrix_metric(q, kappa, tol)
        return dyson_from_metric(mr, tol).omega

    return omega_of_t


def _cmd_evolve(cfg: dict) -> int:
    run = _Run("evolve", cfg)
    t0, t1, steps, a0_file, out = _require(cfg, "t0", "t1", "steps", "a0", "out")
    t0, t1, steps = float(t0), float(t1), int(steps)
    if steps < 1:
        raise ValueError("steps must be >= 1")
    tol = float(cfg["tol"])
    provider = _resolve_provider(cfg)
    omega_of_t = _omega_provider(
        provider, cfg["metric_route"], _parse_kappa(cfg.get("kappa")), tol
    )
    gen = EvolutionGenerator.heisenberg(lambda t: coriolis(omega_of_t, t))
    a = matrix_from_json(_load_json_file(a0_file))
    h = (t1 - t0) / steps
    times = [t0 + k * h for k in range(steps + 1)]
    states = [a]
    for k in range(steps):
        a = heisenberg_evolve(a, gen, times[k], times[k] + h, 1)
        states.append(a)
    buf = io.StringIO()
    trajectory_to_csv(times, states, buf)
    run.emit(out, buf.getvalue())
    run.finish()
    return 0


def _cmd_ep(cfg: dict) -> int:
    run = _Run("ep", cfg)
    t_lo, t_hi = _require(cfg, "t_lo", "t_hi")
    ep_tol = float(cfg["ep_tol"])
    if cfg.get("model") is not None:
        found = locate_ep(_model_spec(cfg), float(t_lo), float(t_hi), tol=ep_tol)
    else:
        found = locate_ep_provider(_resolve_provider(cfg), float(t_lo), float(t_hi), tol=ep_tol)
    if found is None:
        print("no EP found in bracket", file=sys.stderr)
        return 1
    _print_or_emit(run, cfg, {"ep_time": found})
    run.finish()
    return 0


def _cmd_jordan(cfg: dict) -> int:
    run = _Run("jordan", cfg)
    q = _resolve_matrix(cfg)
    lam = complex(str(_require(cfg, "eigenvalue")).replace(" ", ""))
    profile = jordan_profile(q, lam, float(cfg["tol"]))
    _print_or_emit(run, cfg, jordan_profile_to_json(profile))
    run.finish()
    return 0


def _cmd_expect(cfg: dict) -> int:
    run = _Run("expect", cfg)
    state_file, obs_file = _require(cfg, "state", "obs")
    pair = state_pair_from_json(_load_json_file(state_file))
    obs = matrix_from_json(_load_json_file(obs_file))
    value = expectation(pair, obs)
    _print_or_emit(run, cfg, {"re": value.real, "im": value.imag})
    run.finish()
    return 0


_HANDLERS = {
    "scan": _cmd_scan,
    "metric": _cmd_metric,
    "dyson": _cmd_dyson,
    "evolve": _cmd_evolve,
    "ep": _cmd_ep,
    "jordan": _cmd_jordan,
    "expect": _cmd_expect,
}


def _add_model_args(p: argparse.ArgumentParser, with_t: bool, family: bool) -> None:
    p.add_argument("--model", choices=("bang", "cyclic", "crunchbang"))
    p.add_argument("--n", type=int, help="model dimension (crunchbang defaults to 8)")
    if with_t:
        p.add_argument("--t", type=float, help="evaluation time")
        p.add_argument("--matrix-file", help="explicit matrix JSON instead of a model")
    if family:
        p.add_argument(
            "--family-file",
            help="JSON list of (t, matrix) samples, linearly interpolated",
        )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryptoherm",
        description="Spectral flows, metrics, and Heisenberg evolution for the toy-universe models.",
    )
    sub = parser.add_subparsers(dest="command")

    def common(p):
        p.add_argument("--config", help="JSON file of defaults mirroring the flag names")
        p.add_argument("--tol", type=float, help="working tolerance")
        p.add_argument("--out", help="output artifact path")

    p = sub.add_parser("scan", help="sweep the spectrum over a time grid, write a flow CSV")
    _add_model_args(p, with_t=False, family=True)
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--reality-tol", type=float)
    p.add_argument("--marker-tol", type=float)
    common(p)

    p = sub.add_parser("metric", help="construct and certify a metric at one time")
    _add_model_args(p, with_t=True, family=False)
    p.add_argument("--kappa", help="comma-separated positive weights")
    common(p)

    p = sub.add_parser("dyson", help="metric, Dyson factor, and hermitized matrix")
    _add_model_args(p, with_t=True, family=False)
    p.add_argument("--kappa", help="comma-separated positive weights")
    common(p)

    p = sub.add_parser("evolve", help="Heisenberg-evolve an operator, write a trajectory CSV")
    _add_model_args(p, with_t=False, family=True)
    p.add_argument("--t0", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--steps", type=int)
    p.add_argument("--a0", help="initial operator (matrix JSON)")
    p.add_argument("--kappa", help="comma-separated positive weights")
    p.add_argument(
        "--metric-route",
        choices=("family", "diagonal"),
        help="how the Dyson map is built along the way",
    )
    common(p)

    p = sub.add_parser("ep", help="locate an exceptional point inside a bracket")
    _add_model_args(p, with_t=False, family=True)
    p.add_argument("--t-lo", type=float)
    p.add_argument("--t-hi", type=float)
    p.add_argument("--ep-tol", type=float, help="bracket refinement width")
    common(p)

    p = sub.add_parser("jordan", help="Jordan block profile of one eigenvalue")
    _add_model_args(p, with_t=True, family=False)
    p.add_argument("--lambda", dest="eigenvalue", help="eigenvalue, e.g. 0 or 1+2j")
    common(p)

    p = sub.add_parser("expect", help="physical expectation value of an observable")
    p.add_argument("--state", help="state pair JSON (ket and ketket)")
    p.add_argument("--obs", help="observable matrix JSON")
    common(p)

    return parser


_DEFAULTS = {
    "tol": DEFAULT_TOL,
    "reality_tol": DEFAULT_TOL,
    "marker_tol": 1e-6,
    "ep_tol": 1e-6,
    "metric_route": "family",
}


def _merge_config(args: argparse.Namespace) -> dict:
    cfg = dict(_DEFAULTS)
    if args.config is not None:
        loaded = _load_json_file(args.config)
        if not isinstance(loaded, dict):
            raise ValueError("config file must hold a JSON object")
        cfg.update(loaded)
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            cfg[key] = value
    return cfg


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help(sys.stderr)
        return 2
    try:
        cfg = _merge_config(args)
        return _HANDLERS[args.command](cfg)
    except BrokenPhaseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except np.linalg.LinAlgError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
