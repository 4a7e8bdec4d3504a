"""JSON and CSV wire formats shared by the CLI, tests, and figure scripts.

Matrices travel as ``{"rows": n, "cols": n, "re": [...], "im": [...]}`` with
row-major entry lists; vectors as ``{"n": n, "re": [...], "im": [...]}``.
Flow traces use a flat CSV with header ``t, re_1..re_N, im_1..im_N,
real_1..real_N`` plus a sidecar JSON for degeneracy markers. Floats are
written with shortest round-trip repr, so identical inputs give identical
bytes.
"""

from __future__ import annotations

import csv
import io
from typing import Callable

import numpy as np

from .dynamics import StatePair
from .flow import FlowTrace, JordanProfile
from .matrixkit import as_matrix
from .metric import DysonMap, MetricResult
from .models import KINDS, ModelSpec


def matrix_to_json(m) -> dict:
    a = as_matrix(m)
    return {
        "rows": int(a.shape[0]),
        "cols": int(a.shape[1]),
        "re": [float(x) for x in np.asarray(a, dtype=complex).real.ravel()],
        "im": [float(x) for x in np.asarray(a, dtype=complex).imag.ravel()],
    }


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("matrix JSON must be an object")
    try:
        rows, cols = int(obj["rows"]), int(obj["cols"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix JSON missing or malformed field: {exc}") from exc
    if rows <= 0 or cols <= 0:
        raise ValueError("matrix dimensions must be positive")
    if re.shape != (rows * cols,) or im.shape != (rows * cols,):
        raise ValueError("matrix entry count does not match rows * cols")
    a = (re + 1j * im).reshape(rows, cols)
    return as_matrix(a)


def vector_to_json(v) -> dict:
    a = np.asarray(v)
    if a.ndim != 1:
        raise ValueError("vector must be 1-dimensional")
    a = a.astype(complex)
    return {
        "n": int(a.shape[0]),
        "re": [float(x) for x in a.real],
        "im": [float(x) for x in a.imag],
    }


def vector_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict):
        raise ValueError("vector JSON must be an object")
    try:
        n = int(obj["n"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj["im"], dtype=float)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"vector JSON missing or malformed field: {exc}") from exc
    if re.shape != (n,) or im.shape != (n,):
        raise ValueError("vector entry count does not match n")
    v = re + 1j * im
    if not np.isfinite(v).all():
        raise ValueError("vector has non-finite entries")
    return v


def model_spec_to_json(spec: ModelSpec) -> dict:
    return {"kind": spec.kind, "n": spec.dim}


def model_spec_from_json(obj) -> ModelSpec:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError('model JSON must be an object with a "kind" field')
    kind = obj["kind"]
    if kind not in KINDS:
        raise ValueError(f"unknown model kind {kind!r}")
    dim = int(obj.get("n", 8 if kind == "crunchbang" else 0))
    return ModelSpec(kind=kind, dim=dim)


def metric_result_to_json(mr: MetricResult) -> dict:
    return {
        "theta": matrix_to_json(mr.theta),
        "kappa": [float(k) for k in mr.kappa],
        "residual": float(mr.residual),
        "min_eig": float(mr.min_eig),
        "positive": bool(mr.positive),
        "degraded": bool(mr.degraded),
    }


def metric_result_from_json(obj) -> MetricResult:
    return MetricResult(
        theta=matrix_from_json(obj["theta"]),
        kappa=np.asarray(obj["kappa"], dtype=float),
        residual=float(obj["residual"]),
        min_eig=float(obj["min_eig"]),
        positive=bool(obj["positive"]),
        degraded=bool(obj.get("degraded", False)),
    )


def dyson_to_json(d: DysonMap) -> dict:
    return {
        "omega": matrix_to_json(d.omega),
        "omega_inv": matrix_to_json(d.omega_inv),
        "cond": float(d.cond),
    }


def dyson_from_json(obj) -> DysonMap:
    return DysonMap(
        omega=matrix_from_json(obj["omega"]),
        omega_inv=matrix_from_json(obj["omega_inv"]),
        cond=float(obj["cond"]),
    )


def state_pair_to_json(s: StatePair) -> dict:
    return {"ket": vector_to_json(s.ket), "ketket": vector_to_json(s.ketket)}


def state_pair_from_json(obj) -> StatePair:
    if not isinstance(obj, dict):
        raise ValueError("state JSON must be an object")
    return StatePair(
        ket=vector_from_json(obj["ket"]),
        ketket=vector_from_json(obj["ketket"]),
    )


def jordan_profile_to_json(p: JordanProfile) -> dict:
    return {
        "eigenvalue": {"re": float(p.eigenvalue.real), "im": float(p.eigenvalue.imag)},
        "block_sizes": list(p.block_sizes),
        "rank_sequence": list(p.rank_sequence),
    }


def _fmt(x: float) -> str:
    return repr(float(x))


def flow_trace_to_csv(trace: FlowTrace, stream: io.TextIOBase) -> None:
    n = trace.n_branches
    writer = csv.writer(stream, lineterminator="\n")
    header = (
        ["t"]
        + [f"re_{i}" for i in range(1, n + 1)]
        + [f"im_{i}" for i in range(1, n + 1)]
        + [f"real_{i}" for i in range(1, n + 1)]
    )
    writer.writerow(header)
    for k, t in enumerate(trace.times):
        col = trace.curves[:, k]
        row = (
            [_fmt(t)]
            + [_fmt(x) for x in col.real]
            + [_fmt(x) for x in col.imag]
            + [str(int(b)) for b in trace.reality[:, k]]
        )
        writer.writerow(row)


def flow_trace_from_csv(stream: io.TextIOBase) -> FlowTrace:
    reader = csv.reader(stream)
    try:
        header = next(reader)
    except StopIteration:
        raise ValueError("empty flow CSV") from None
    if not header or header[0] != "t" or (len(header) - 1) % 3 != 0:
        raise ValueError("flow CSV header does not match the trace schema")
    n = (len(header) - 1) // 3
    expected = (
        ["t"]
        + [f"re_{i}" for i in range(1, n + 1)]
        + [f"im_{i}" for i in range(1, n + 1)]
        + [f"real_{i}" for i in range(1, n + 1)]
    )
    if header != expected:
        raise ValueError("flow CSV header does not match the trace schema")
    times, cols, flags = [], [], []
    for row in reader:
        if len(row) != len(header):
            raise ValueError("flow CSV row width does not match header")
        values = [float(x) for x in row[: 1 + 2 * n]]
        times.append(values[0])
        cols.append(np.asarray(values[1 : n + 1]) + 1j * np.asarray(values[n + 1 : 2 * n + 1]))
        flags.append([bool(int(x)) for x in row[1 + 2 * n :]])
    if not times:
        raise ValueError("flow CSV has no data rows")
    return FlowTrace(
        times=np.asarray(times),
        curves=np.stack(cols, axis=1),
        reality=np.asarray(flags, dtype=bool).T,
    )


def flow_markers_to_json(trace: FlowTrace) -> dict:
    return {
        "degeneracy_markers": [[float(t), int(m)] for t, m in trace.degeneracy_markers],
        "skipped_times": [float(t) for t in trace.skipped_times],
    }


def trajectory_to_csv(times, states, stream: io.TextIOBase) -> None:
    """Rows of t plus the flattened re/im blocks of a matrix or vector path."""
    times = np.asarray(times, dtype=float)
    if len(states) != times.shape[0]:
        raise ValueError("one state per time point required")
    flat = [np.asarray(s, dtype=complex).ravel() for s in states]
    width = flat[0].shape[0]
    if any(f.shape[0] != width for f in flat):
        raise ValueError("states must share one shape")
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(
        ["t"] + [f"re_{i}" for i in range(width)] + [f"im_{i}" for i in range(width)]
    )
    for t, f in zip(times, flat):
        writer.writerow([_fmt(t)] + [_fmt(x) for x in f.real] + [_fmt(x) for x in f.imag])


def family_from_json(obj) -> Callable[[float], np.ndarray]:
    """Matrix family interpolated linearly between explicit (t, matrix) samples.

    The escape hatch for user-supplied models: no oracles attach to it.
    Evaluation outside the sampled range raises.
    """
    if not isinstance(obj, dict) or "samples" not in obj:
        raise ValueError('family JSON must be an object with a "samples" list')
    samples = obj["samples"]
    if not isinstance(samples, list) or len(samples) < 1:
        raise ValueError("family needs at least one (t, matrix) sample")
    ts = []
    mats = []
    for entry in samples:
        if not isinstance(entry, dict) or "t" not in entry or "matrix" not in entry:
            raise ValueError('each sample must carry "t" and "matrix"')
        ts.append(float(entry["t"]))
        mats.append(matrix_from_json(entry["matrix"]))
    order = np.argsort(ts)
    ts = np.asarray(ts)[order]
    mats = [mats[i] for i in order]
    if np.any(np.diff(ts) <= 0):
        raise ValueError("sample times must be distinct")
    shape = mats[0].shape
    if any(m.shape != shape for m in mats):
        raise ValueError("all samples must share one matrix shape")

    def q_of_t(t: float) -> np.ndarray:
        t = float(t)
        if t < ts[0] or t > ts[-1]:
            raise ValueError(f"t={t} outside the sampled range [{ts[0]}, {ts[-1]}]")
        k = int(np.searchsorted(ts, t, side="right") - 1)
        if k == ts.shape[0] - 1:
            return mats[-1]
        w = (t - ts[k]) / (ts[k + 1] - ts[k])
        return (1.0 - w) * mats[k] + w * mats[k + 1]

    return q_of_t
