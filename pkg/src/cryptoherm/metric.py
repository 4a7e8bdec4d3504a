"""Physical metric construction, Dyson factorization, and hermitization.

A metric here is a Hermitian positive-definite matrix Theta intertwining a
(generally non-Hermitian) operator Q through Q^H Theta = Theta Q. Factorizing
Theta = Omega^H Omega gives the Dyson map Omega, and Omega Q Omega^{-1} is
Hermitian whenever the intertwining relation holds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .matrixkit import (
    DEFAULT_TOL,
    BrokenPhaseError,
    EigSystem,
    as_square,
    eig_full,
)

# eigenbasis condition number beyond which results are flagged, not rejected
DEGRADED_COND = 1e8


@dataclass(frozen=True)
class MetricResult:
    """A candidate metric with its positivity and intertwining diagnostics.

    ``degraded`` marks results computed from an eigenbasis with condition
    number above ``DEGRADED_COND`` (close to an exceptional point): they are
    returned rather than rejected, with reduced confidence.
    """

    theta: np.ndarray
    kappa: np.ndarray
    residual: float
    min_eig: float
    positive: bool
    degraded: bool = False


@dataclass(frozen=True)
class DysonMap:
    omega: np.ndarray
    omega_inv: np.ndarray
    cond: float


def quasi_residual(q, theta) -> float:
    """Frobenius norm of the intertwining defect ``q^H theta - theta q``."""
    a = as_square(q, "q")
    th = as_square(theta, "theta")
    if a.shape != th.shape:
        raise ValueError(f"dimension mismatch: q is {a.shape}, theta is {th.shape}")
    return float(np.linalg.norm(a.conj().T @ th - th @ a, "fro"))


def metric_family(eig: EigSystem, kappa=None, tol: float = DEFAULT_TOL) -> MetricResult:
    """Metric built from left eigenvectors, Theta = L^H diag(kappa) L.

    Requires a non-defective eigensystem with a real spectrum (the unbroken
    phase); any complex eigenvalue means no positive metric exists and
    raises :class:`BrokenPhaseError`. ``kappa`` are strictly positive
    weights, one per eigenvalue, defaulting to all ones; Theta is linear in
    them and every admissible metric of this spectrum is reached by some
    choice.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if eig.defective_flag:
        raise BrokenPhaseError("defective eigensystem: no metric construction")
    n = eig.dim
    w = eig.eigenvalues
    scale = float(np.max(np.abs(w))) if n else 0.0
    if np.any(np.abs(w.imag) > tol * max(scale, 1.0)):
        raise BrokenPhaseError("complex spectrum: no positive metric")
    if kappa is None:
        kappa = np.ones(n)
    kappa = np.asarray(kappa, dtype=float)
    if kappa.shape != (n,):
        raise ValueError(f"kappa must have length {n}")
    if not np.isfinite(kappa).all() or np.any(kappa <= 0):
        raise ValueError("kappa entries must be finite and strictly positive")

    left = eig.left_basis
    theta = left.conj().T @ (kappa[:, None] * left)
    theta = (theta + theta.conj().T) / 2.0

    # residual against the matrix this eigensystem represents
    q_rebuilt = eig.right_basis @ (w[:, None] * left)
    residual = quasi_residual(q_rebuilt, theta)

    evals = np.linalg.eigvalsh(theta)
    min_eig = float(evals[0])
    positive = bool(evals[-1] > 0 and min_eig > tol * evals[-1])
    degraded = bool(np.linalg.cond(eig.right_basis) > DEGRADED_COND)
    return MetricResult(
        theta=theta,
        kappa=kappa,
        residual=residual,
        min_eig=min_eig,
        positive=positive,
        degraded=degraded,
    )


def matrix_metric(q, kappa=None, tol: float = DEFAULT_TOL) -> MetricResult:
    """Convenience route: eigendecompose ``q`` and weight its left vectors."""
    return metric_family(eig_full(q, tol), kappa, tol)


def diagonal_metric(q, tol: float = DEFAULT_TOL) -> MetricResult | None:
    """Diagonal intertwiner for a real tridiagonal matrix.

    Sets d_1 = 1 and d_{n+1} = d_n * (q[n, n+1] / q[n+1, n]); this balances
    the two bands exactly, and a real diagonal imposes no constraint of its
    own, so the residual vanishes up to roundoff. Returns None when some
    super/sub ratio is non-positive (no positive diagonal intertwiner
    exists). A vanishing band entry breaks the chain and raises.
    """
    a = as_square(q, "q")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.shape[0]
    scale = float(np.max(np.abs(a)))
    if np.iscomplexobj(a):
        if np.max(np.abs(a.imag)) > tol * max(scale, 1.0):
            raise ValueError("q must be real")
        a = a.real
    off_band = (
        a
        - np.diag(np.diag(a))
        - np.diag(np.diag(a, 1), 1)
        - np.diag(np.diag(a, -1), -1)
    )
    if np.max(np.abs(off_band)) > tol * max(scale, 1.0):
        raise ValueError("q must be tridiagonal")
    up = np.diag(a, 1)
    lo = np.diag(a, -1)
    if np.any(np.abs(up) <= tol * max(scale, 1.0)) or np.any(np.abs(lo) <= tol * max(scale, 1.0)):
        raise ValueError("degenerate chain: zero sub- or superdiagonal entry")
    ratios = up / lo
    if np.any(ratios <= 0):
        return None
    d = np.concatenate(([1.0], np.cumprod(ratios)))
    theta = np.diag(d)
    return MetricResult(
        theta=theta,
        kappa=d.copy(),
        residual=quasi_residual(a, theta),
        min_eig=float(np.min(d)),
        positive=True,
        degraded=False,
    )


def dyson_from_metric(mr: MetricResult, tol: float = DEFAULT_TOL) -> DysonMap:
    """Canonical Dyson factor: the positive root Omega with Omega^2 = Theta."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not mr.positive:
        raise BrokenPhaseError("metric is not positive definite: no Dyson map")
    theta = as_square(mr.theta, "theta")
    h = (theta + theta.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    if w[-1] <= 0 or w[0] <= tol * w[-1]:
        raise BrokenPhaseError(
            f"metric eigenvalues [{w[0]:.3e}, {w[-1]:.3e}] admit no stable root"
        )
    root = np.sqrt(w)
    omega = (v * root) @ v.conj().T
    omega_inv = (v / root) @ v.conj().T
    omega = (omega + omega.conj().T) / 2.0
    omega_inv = (omega_inv + omega_inv.conj().T) / 2.0
    return DysonMap(omega=omega, omega_inv=omega_inv, cond=float(root[-1] / root[0]))


def hermitize(q, d: DysonMap, tol: float = DEFAULT_TOL, pullback: bool = False) -> np.ndarray:
    """Similarity transform by the Dyson map: Omega q Omega^{-1}.

    With ``pullback=True`` the inverse direction Omega^{-1} q Omega is
    applied instead (textbook-space operator pulled back to working space).
    The output is Hermitian, up to conditioning, exactly when the source
    metric intertwines ``q``; the spectrum is preserved either way.
    """
    a = as_square(q, "q")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if d.cond > 1.0 / tol:
        raise np.linalg.LinAlgError(
            f"Dyson map condition number {d.cond:.3e} exceeds 1/tol"
        )
    omega = as_square(d.omega, "omega")
    omega_inv = as_square(d.omega_inv, "omega_inv")
    if omega.shape != a.shape:
        raise ValueError(f"dimension mismatch: q is {a.shape}, omega is {omega.shape}")
    if pullback:
        return omega_inv @ a @ omega
    return omega @ a @ omega_inv
