"""The three toy-universe distance-operator families and their spectral oracles.

Each family is an N x N real tridiagonal pencil in a time parameter t:

* ``bang``:       Q(t) = Q0 + sqrt(1 - t)   * Q1
* ``cyclic``:     Q(t) = Q0 + sqrt(1 - t^2) * Q1
* ``crunchbang``: explicit 8 x 8 matrix with entries piecewise linear in t

where Q0 = diag(-N+1, -N+3, ..., N-1) and Q1 is antisymmetric tridiagonal
with superdiagonal entries sqrt(n(N-n)). Square roots of negative arguments
take the principal branch, so ``bang`` at t > 1 (and ``cyclic`` at |t| > 1)
comes out complex Hermitian. All three families collapse to a single
eigenvalue at t = 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

KINDS = ("bang", "cyclic", "crunchbang")


@dataclass(frozen=True)
class ModelSpec:
    """One of the three model families plus its dimension."""

    kind: str
    dim: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown model kind {self.kind!r}, expected one of {KINDS}")
        if not isinstance(self.dim, int) or self.dim < 2:
            raise ValueError("dim must be an integer >= 2")
        if self.kind == "crunchbang" and self.dim != 8:
            raise ValueError("crunchbang is fixed at dim = 8")


def _q0(n: int) -> np.ndarray:
    return np.diag(np.arange(-n + 1, n, 2).astype(float))


def _q1(n: int) -> np.ndarray:
    c = np.sqrt(np.arange(1.0, n) * np.arange(n - 1.0, 0.0, -1.0))
    return np.diag(c, 1) - np.diag(c, -1)


def _coupling(kind: str, t: float) -> complex:
    arg = 1.0 - t if kind == "bang" else 1.0 - t * t
    if arg >= 0.0:
        return float(np.sqrt(arg))
    return 1j * float(np.sqrt(-arg))


def _crunchbang_bands(t: float) -> tuple[np.ndarray, np.ndarray]:
    """(superdiagonal, subdiagonal) of the 8 x 8 crunch-bang matrix."""
    a = abs(t)
    up = np.array([1 - t, 1 - t, 1 - a, 1 - a, 1 - a, 1 - t, 1 - t])
    lo = np.array([t, t, a, a, a, t, t])
    return up, lo


def build_q(spec: ModelSpec, t: float) -> np.ndarray:
    """Distance operator Q(t) for the given family, entry by entry.

    Returns a real array whenever every entry is real and a complex
    (Hermitian) one otherwise.
    """
    if not isinstance(spec, ModelSpec):
        raise ValueError("spec must be a ModelSpec")
    t = float(t)
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    if spec.kind == "crunchbang":
        up, lo = _crunchbang_bands(t)
        return np.diag(up, 1) + np.diag(lo, -1)
    s = _coupling(spec.kind, t)
    q = _q0(spec.dim) + s * _q1(spec.dim)
    if np.iscomplexobj(q) and np.all(q.imag == 0):
        return q.real
    return q


def build_q_time_derivative(spec: ModelSpec, t: float) -> np.ndarray:
    """Entrywise d/dt of :func:`build_q`.

    Undefined exactly at the kink points (t = 1 for bang, |t| = 1 for
    cyclic, t = 0 for crunchbang), where a ValueError is raised.
    """
    if not isinstance(spec, ModelSpec):
        raise ValueError("spec must be a ModelSpec")
    t = float(t)
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    if spec.kind == "crunchbang":
        if t == 0.0:
            raise ValueError("crunchbang entries are not differentiable at t = 0")
        sg = 1.0 if t > 0 else -1.0
        up = -np.array([1.0, 1.0, sg, sg, sg, 1.0, 1.0])
        return np.diag(up, 1) + np.diag(-up, -1)
    if spec.kind == "bang":
        if t == 1.0:
            raise ValueError("bang coupling is not differentiable at t = 1")
        ds = -0.5 / _coupling(spec.kind, t)
    else:
        if abs(t) == 1.0:
            raise ValueError("cyclic coupling is not differentiable at |t| = 1")
        ds = -t / _coupling(spec.kind, t)
    dq = ds * _q1(spec.dim)
    if np.iscomplexobj(dq) and np.all(dq.imag == 0):
        return dq.real
    return dq


def precise_spectrum(spec: ModelSpec, t: float, dps: int = 50) -> np.ndarray:
    """Spectrum of Q(t) computed in ``dps``-digit arithmetic.

    Near the total degeneracy at t = 0 the eigenvalues respond to entry
    perturbations like eps^(1/N), so double-precision entry rounding alone
    shifts them by ~0.1 at desk dimensions; no double-precision eigensolver
    can see through that. This path rebuilds the entries and eigensolves at
    ``dps`` digits and only then rounds. It is a generic QR solve and knows
    nothing of the closed forms in :func:`oracle_spectrum`.
    """
    if not isinstance(spec, ModelSpec):
        raise ValueError("spec must be a ModelSpec")
    t = float(t)
    if not np.isfinite(t):
        raise ValueError("t must be finite")
    if dps < 15:
        raise ValueError("dps must be at least 15")
    from mpmath import mp, workdps

    with workdps(dps):
        n = spec.dim
        tt = mp.mpf(t)
        m = mp.zeros(n, n)
        if spec.kind == "crunchbang":
            for i in range(n - 1):
                keep_sign = i in (0, 1, 5, 6)
                m[i, i + 1] = 1 - (tt if keep_sign else abs(tt))
                m[i + 1, i] = tt if keep_sign else abs(tt)
        else:
            arg = 1 - tt if spec.kind == "bang" else 1 - tt * tt
            s = mp.sqrt(mp.mpc(arg)) if arg < 0 else mp.sqrt(arg)
            for i in range(n):
                m[i, i] = 2 * i - n + 1
            for i in range(1, n):
                c = mp.sqrt(mp.mpf(i) * mp.mpf(n - i))
                m[i - 1, i] = s * c
                m[i, i - 1] = -s * c
        vals = mp.eig(m, left=False, right=False)
    out = np.asarray([complex(v) for v in vals])
    return out[np.lexsort((out.imag, out.real))]


def oracle_spectrum(spec: ModelSpec, t: float) -> np.ndarray:
    """Closed-form spectrum, independent of any eigensolver.

    * bang:       (2n - N + 1) sqrt(t) for n = 0..N-1, principal branch
    * cyclic:     (2n - N + 1) |t|
    * crunchbang: 2 sqrt(t(1-t)) cos(k pi / 9) for k = 1..8, only on (0, 1)

    Values are sorted ascending by real part, ties by imaginary part, the
    same order :func:`cryptoherm.matrixkit.eig_full` uses.
    """
    if not isinstance(spec, ModelSpec):
        raise ValueError("spec must be a ModelSpec")
    t = float(t)
    n = spec.dim
    ladder = np.arange(-n + 1, n, 2).astype(float)
    if spec.kind == "bang":
        root = float(np.sqrt(t)) if t >= 0 else 1j * float(np.sqrt(-t))
        vals = ladder * root
    elif spec.kind == "cyclic":
        vals = ladder * abs(t)
    else:
        if not 0.0 < t < 1.0:
            raise ValueError("crunchbang closed form holds only on (0, 1); use eig_full")
        amp = 2.0 * np.sqrt(t * (1.0 - t))
        vals = amp * np.cos(np.arange(1, 9) * np.pi / 9.0)
    vals = np.asarray(vals, dtype=complex)
    return vals[np.lexsort((vals.imag, vals.real))]
