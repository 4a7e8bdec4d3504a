"""Time evolution: Coriolis generator, operator Heisenberg equations, the
Dyson-map Cauchy problem, state-pair propagation, and expectation values.

All integrations use a fixed-step classical 4th-order Runge-Kutta scheme so
outputs are deterministic and convergence order is testable. Providers are
plain callables t -> matrix of one fixed dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .matrixkit import as_square

MatrixProvider = Callable[[float], np.ndarray]

MODES = ("heisenberg", "schrodinger")


@dataclass(frozen=True)
class EvolutionGenerator:
    """Bundle of the generators driving one evolution problem.

    ``h_of_t`` is the Heisenberg generator (the Coriolis term when the
    metric carries all time dependence), ``b_of_t`` an optional anomalous
    source, ``g_of_t`` the state generator. The mode is explicit, never
    inferred: ``heisenberg`` freezes wave functions (G = 0, so ``g_of_t``
    must be absent), ``schrodinger`` evolves them with G = H - Sigma.
    """

    h_of_t: MatrixProvider
    b_of_t: MatrixProvider | None = None
    g_of_t: MatrixProvider | None = None
    mode: str = "heisenberg"

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        if self.mode == "heisenberg" and self.g_of_t is not None:
            raise ValueError("heisenberg mode fixes G = 0; g_of_t must be None")

    @classmethod
    def heisenberg(cls, h_of_t: MatrixProvider, b_of_t: MatrixProvider | None = None):
        return cls(h_of_t=h_of_t, b_of_t=b_of_t, g_of_t=None, mode="heisenberg")

    @classmethod
    def schrodinger_in_f(
        cls,
        h_of_t: MatrixProvider,
        sigma_of_t: MatrixProvider,
        b_of_t: MatrixProvider | None = None,
    ):
        def g_of_t(t: float) -> np.ndarray:
            return h_of_t(t) - sigma_of_t(t)

        return cls(h_of_t=h_of_t, b_of_t=b_of_t, g_of_t=g_of_t, mode="schrodinger")


@dataclass(frozen=True)
class StatePair:
    """A ket and its metric-conjugate partner ketket = Theta ket."""

    ket: np.ndarray
    ketket: np.ndarray

    def __post_init__(self):
        ket = np.asarray(self.ket)
        kk = np.asarray(self.ketket)
        if ket.ndim != 1 or kk.ndim != 1 or ket.shape != kk.shape:
            raise ValueError("ket and ketket must be 1-d vectors of equal length")
        if not (np.isfinite(ket).all() and np.isfinite(kk).all()):
            raise ValueError("state vectors must be finite")
        if self.overlap() == 0:
            raise ValueError("biorthogonal overlap must be nonzero")

    def overlap(self) -> complex:
        """Biorthogonal overlap <<psi|psi>."""
        return complex(np.asarray(self.ketket).conj() @ np.asarray(self.ket))


def default_step(t: float) -> float:
    """Central-difference step balancing truncation against roundoff."""
    return 1e-5 * max(1.0, abs(t))


def coriolis(
    omega_of_t: MatrixProvider,
    t: float,
    h_step: float | None = None,
    omega_dot_of_t: MatrixProvider | None = None,
) -> np.ndarray:
    """Coriolis generator Sigma(t) = i Omega^{-1}(t) dOmega/dt.

    The derivative is a central difference of width ``h_step`` (error
    O(h^2)) unless an analytic ``omega_dot_of_t`` is supplied.
    """
    t = float(t)
    if h_step is None:
        h_step = default_step(t)
    if h_step <= 0:
        raise ValueError("h_step must be positive")
    omega = as_square(omega_of_t(t), "omega(t)")
    if omega_dot_of_t is not None:
        dot = as_square(omega_dot_of_t(t), "omega_dot(t)")
    else:
        plus = as_square(omega_of_t(t + h_step), "omega(t+h)")
        minus = as_square(omega_of_t(t - h_step), "omega(t-h)")
        dot = (plus - minus) / (2.0 * h_step)
    return 1j * np.linalg.solve(omega, dot)


def _rk4(y0: np.ndarray, rhs, t0: float, t1: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    h = (float(t1) - float(t0)) / steps
    y = np.array(y0, dtype=complex)
    for k in range(steps):
        t = t0 + k * h
        k1 = rhs(t, y)
        k2 = rhs(t + 0.5 * h, y + (0.5 * h) * k1)
        k3 = rhs(t + 0.5 * h, y + (0.5 * h) * k2)
        k4 = rhs(t + h, y + h * k3)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return y


def heisenberg_evolve(
    a0,
    gen: EvolutionGenerator,
    t0: float,
    t1: float,
    steps: int,
) -> np.ndarray:
    """Integrate i dA/dt = A H - H A + i B from t0 to t1.

    Fixed-step RK4, global error O(step^4). With B = 0 the trajectory stays
    similar to its initial value, so the eigenvalue multiset is conserved.
    The adjoint trajectory is the conjugate transpose of this one and is not
    integrated separately.
    """
    a = np.array(as_square(a0, "a0"), dtype=complex)
    b_of_t = gen.b_of_t

    def rhs(t, y):
        h = gen.h_of_t(t)
        out = -1j * (y @ h - h @ y)
        if b_of_t is not None:
            out = out + b_of_t(t)
        return out

    return _rk4(a, rhs, t0, t1, steps)


def omega_cauchy_evolve(
    omega0,
    sigma_of_t: MatrixProvider,
    t0: float,
    t1: float,
    steps: int,
) -> np.ndarray:
    """Integrate the Dyson-map Cauchy problem i dOmega/dt = Omega Sigma."""
    om = np.array(as_square(omega0, "omega0"), dtype=complex)

    def rhs(t, y):
        return -1j * (y @ sigma_of_t(t))

    return _rk4(om, rhs, t0, t1, steps)


def state_pair_evolve(
    s0: StatePair,
    gen: EvolutionGenerator,
    t0: float,
    t1: float,
    steps: int,
) -> StatePair:
    """Integrate the paired equations i d|psi> = G |psi>, i d|psi>> = G^H |psi>>.

    The generators are adjoint partners, so the biorthogonal overlap is a
    conserved quantity; the integrator preserves it to well below its own
    truncation order.
    """
    if gen.g_of_t is None:
        raise ValueError("state evolution requires g_of_t (schrodinger mode)")
    g_of_t = gen.g_of_t

    def rhs_ket(t, y):
        return -1j * (g_of_t(t) @ y)

    def rhs_ketket(t, y):
        return -1j * (g_of_t(t).conj().T @ y)

    ket = _rk4(np.asarray(s0.ket, dtype=complex), rhs_ket, t0, t1, steps)
    ketket = _rk4(np.asarray(s0.ketket, dtype=complex), rhs_ketket, t0, t1, steps)
    return StatePair(ket=ket, ketket=ketket)


def expectation(s: StatePair, a) -> complex:
    """Physical mean value <<psi| A |psi> of an observable in working space.

    Real (up to roundoff) whenever ketket = Theta ket and A is
    quasi-Hermitian with respect to the same Theta.
    """
    mat = as_square(a, "a")
    ket = np.asarray(s.ket)
    if mat.shape[0] != ket.shape[0]:
        raise ValueError(
            f"dimension mismatch: state has length {ket.shape[0]}, a is {mat.shape}"
        )
    return complex(np.asarray(s.ketket).conj() @ (mat @ ket))


def metric_rate(theta_of_t: MatrixProvider, t: float, h_step: float | None = None) -> float:
    """Adiabaticity diagnostic: ||dTheta/dt||_F by central difference.

    Reported as-is; no threshold is attached to it.
    """
    t = float(t)
    if h_step is None:
        h_step = default_step(t)
    if h_step <= 0:
        raise ValueError("h_step must be positive")
    plus = as_square(theta_of_t(t + h_step), "theta(t+h)")
    minus = as_square(theta_of_t(t - h_step), "theta(t-h)")
    return float(np.linalg.norm((plus - minus) / (2.0 * h_step), "fro"))
