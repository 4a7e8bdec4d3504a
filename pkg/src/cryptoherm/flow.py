"""Parameter sweeps over t: tracked eigenvalue curves, reality classification,
exceptional-point localization, and Jordan-block profiling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.optimize

from .matrixkit import DEFAULT_TOL, as_square, eig_full
from .models import ModelSpec, build_q, precise_spectrum

MatrixProvider = Callable[[float], np.ndarray]

# min-gap threshold (relative to spectral scale) below which a grid point is
# flagged degenerate; exposed because no sharper definition exists upstream
DEGENERACY_TOL = 1e-6

# allowed step-to-step jump, in units of (local velocity estimate) * (step)
CONTINUITY_FACTOR = 5.0

JORDAN_RANK_TOL = 1e-7

GOLDEN = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass
class FlowTrace:
    """Eigenvalue curves on a time grid with per-point reality flags.

    ``curves[i, k]`` is branch i at ``times[k]``; every column is a
    permutation of the instantaneous spectrum. ``degeneracy_markers`` lists
    (time, multiplicity) pairs where branches coalesce or tracking
    continuity broke; ``skipped_times`` records grid points whose eigensolve
    failed.
    """

    times: np.ndarray
    curves: np.ndarray
    reality: np.ndarray
    degeneracy_markers: list[tuple[float, int]] = field(default_factory=list)
    skipped_times: list[float] = field(default_factory=list)

    @property
    def n_branches(self) -> int:
        return self.curves.shape[0]


def classify_reality(lam: complex, scale: float, tol: float = DEFAULT_TOL) -> bool:
    """True iff the imaginary part is negligible at the given spectral scale."""
    if scale <= 0:
        raise ValueError("scale must be positive")
    if tol <= 0:
        raise ValueError("tol must be positive")
    return bool(abs(complex(lam).imag) <= tol * max(scale, 1.0))


def _cluster_multiplicity(values: np.ndarray, threshold: float) -> int:
    """Largest group of mutually-chained eigenvalues closer than threshold."""
    n = values.shape[0]
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(values[i] - values[j]) <= threshold:
                pi, pj = find(i), find(j)
                if pi != pj:
                    parent[pi] = pj
    sizes = np.bincount([find(i) for i in range(n)], minlength=n)
    return int(sizes.max())


def sweep_provider(
    q_of_t: MatrixProvider,
    t_min: float,
    t_max: float,
    steps: int,
    tol: float = DEFAULT_TOL,
    reality_tol: float = DEFAULT_TOL,
    marker_tol: float = DEGENERACY_TOL,
) -> FlowTrace:
    """Track the spectrum of ``q_of_t`` over a uniform grid.

    Branches are matched between consecutive grid points by minimum-cost
    assignment on complex distance, which keeps curves from swapping near
    clustered eigenvalues. Coalescence (minimum gap under ``marker_tol``
    relative to the spectral scale) and continuity violations both force a
    degeneracy marker.
    """
    t_min, t_max = float(t_min), float(t_max)
    if not t_min < t_max:
        raise ValueError("t_min must be below t_max")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    grid = np.linspace(t_min, t_max, steps)

    times: list[float] = []
    columns: list[np.ndarray] = []
    skipped: list[float] = []
    markers: list[tuple[float, int]] = []
    n = None
    prev = None
    prev_jump = None
    dt = grid[1] - grid[0]

    for t in grid:
        try:
            q = as_square(q_of_t(float(t)))
            eig = eig_full(q, tol)
        except (ValueError, np.linalg.LinAlgError):
            skipped.append(float(t))
            prev_jump = None  # velocity estimate is stale across a gap
            continue
        vals = eig.eigenvalues
        if n is None:
            n = vals.shape[0]
        elif vals.shape[0] != n:
            raise ValueError("provider changed dimension mid-sweep")

        if prev is not None:
            cost = np.abs(prev[:, None] - vals[None, :])
            rows, cols = scipy.optimize.linear_sum_assignment(cost)
            ordered = np.empty_like(vals)
            ordered[rows] = vals[cols]
            vals = ordered

        scale = float(np.max(np.abs(vals)))
        flagged = False
        if n > 1:
            gap_threshold = marker_tol * max(scale, 1.0)
            mult = _cluster_multiplicity(vals, gap_threshold)
            if mult > 1:
                markers.append((float(t), mult))
                flagged = True
        if not flagged and eig.defective_flag:
            # eigenvalues may sit on the eps^(1/N) splitting floor while the
            # vectors have already coalesced; count the collapsed pairs
            align = np.abs(np.einsum("ij,ji->i", eig.left_basis, eig.right_basis))
            align /= np.maximum(
                np.linalg.norm(eig.left_basis, axis=1)
                * np.linalg.norm(eig.right_basis, axis=0),
                1e-300,
            )
            weak = int(np.count_nonzero(align < 1e-8))
            markers.append((float(t), max(2, weak)))
            flagged = True
        if prev is not None:
            jump = np.abs(vals - prev)
            if prev_jump is not None and not flagged:
                velocity = float(np.max(prev_jump)) / dt
                bound = max(CONTINUITY_FACTOR * velocity * dt, 1e-12 * max(scale, 1.0))
                violating = int(np.count_nonzero(jump > bound))
                if violating:
                    markers.append((float(t), max(2, violating)))
            prev_jump = jump
        times.append(float(t))
        columns.append(vals)
        prev = vals

    if not columns:
        raise ValueError("every grid point failed to eigensolve")
    curves = np.stack(columns, axis=1)
    scales = np.maximum(np.max(np.abs(curves), axis=0), 0.0)
    reality = np.empty(curves.shape, dtype=bool)
    for k in range(curves.shape[1]):
        s = float(scales[k]) if scales[k] > 0 else 1.0
        for i in range(curves.shape[0]):
            reality[i, k] = classify_reality(curves[i, k], s, reality_tol)
    return FlowTrace(
        times=np.asarray(times),
        curves=curves,
        reality=reality,
        degeneracy_markers=markers,
        skipped_times=skipped,
    )


def sweep_spectrum(
    spec: ModelSpec,
    t_min: float,
    t_max: float,
    steps: int,
    tol: float = DEFAULT_TOL,
    reality_tol: float = DEFAULT_TOL,
    marker_tol: float = DEGENERACY_TOL,
) -> FlowTrace:
    """Spectral flow of one model family over [t_min, t_max]."""
    return sweep_provider(
        lambda t: build_q(spec, t), t_min, t_max, steps,
        tol=tol, reality_tol=reality_tol, marker_tol=marker_tol,
    )


def _min_gap_and_scale(q: np.ndarray) -> tuple[float, float]:
    vals = np.linalg.eigvals(q)
    if vals.size < 2:
        raise ValueError("gap search needs at least a 2 x 2 matrix")
    scale = float(np.max(np.abs(vals)))
    diffs = np.abs(vals[:, None] - vals[None, :])
    gap = float(np.min(diffs[~np.eye(vals.size, dtype=bool)]))
    return gap, scale


def locate_ep_provider(
    q_of_t: MatrixProvider,
    t_lo: float,
    t_hi: float,
    tol: float = 1e-6,
    scan_points: int = 65,
) -> float | None:
    """Minimize the minimum pairwise eigenvalue gap over [t_lo, t_hi].

    A coarse scan brackets the global minimum, golden-section search
    refines the bracket to width ``tol``, and the refined point is accepted
    as an exceptional point only if its gap is below sqrt(tol) times the
    spectral scale seen over the bracket; otherwise None.
    """
    t_lo, t_hi = float(t_lo), float(t_hi)
    if not t_lo < t_hi:
        raise ValueError("t_lo must be below t_hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    scan_points = max(int(scan_points), 3)

    max_scale = 0.0

    def gap(t: float) -> float:
        nonlocal max_scale
        g, s = _min_gap_and_scale(as_square(q_of_t(float(t))))
        max_scale = max(max_scale, s)
        return g

    ts = np.linspace(t_lo, t_hi, scan_points)
    gaps = np.array([gap(t) for t in ts])
    k = int(np.argmin(gaps))
    a = ts[max(k - 1, 0)]
    b = ts[min(k + 1, scan_points - 1)]

    # golden-section refinement of the bracket
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = gap(x1), gap(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = gap(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = gap(x2)
    t_star = 0.5 * (a + b)
    if gap(t_star) > np.sqrt(tol) * max(max_scale, 1.0):
        return None
    return float(t_star)


def _gap_of(vals: np.ndarray) -> float:
    diffs = np.abs(vals[:, None] - vals[None, :])
    return float(np.min(diffs[~np.eye(vals.size, dtype=bool)]))


def locate_ep(
    spec: ModelSpec,
    t_lo: float,
    t_hi: float,
    tol: float = 1e-6,
    scan_points: int = 65,
    dps: int = 50,
) -> float | None:
    """Exceptional-point search for one model family.

    The coarse scan runs in double precision, but the refinement evaluates
    gaps through :func:`cryptoherm.models.precise_spectrum`: close to a
    high-order degeneracy the double-precision gap bottoms out at the
    eps^(1/N) noise floor, far above the coalescence the search is after.
    """
    t_lo, t_hi = float(t_lo), float(t_hi)
    if not t_lo < t_hi:
        raise ValueError("t_lo must be below t_hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    scan_points = max(int(scan_points), 3)

    ts = np.linspace(t_lo, t_hi, scan_points)
    max_scale = 0.0
    gaps = np.empty(scan_points)
    for i, t in enumerate(ts):
        g, s = _min_gap_and_scale(build_q(spec, float(t)))
        gaps[i] = g
        max_scale = max(max_scale, s)
    k = int(np.argmin(gaps))
    a = ts[max(k - 1, 0)]
    b = ts[min(k + 1, scan_points - 1)]

    def gap(t: float) -> float:
        return _gap_of(precise_spectrum(spec, float(t), dps=dps))

    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = gap(x1), gap(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = gap(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = gap(x2)
    t_star = 0.5 * (a + b)
    if gap(t_star) > np.sqrt(tol) * max(max_scale, 1.0):
        return None
    return float(t_star)


@dataclass(frozen=True)
class JordanProfile:
    """Jordan block sizes of one eigenvalue, from the rank staircase.

    ``rank_sequence[k]`` is the numerical rank of (q - lambda I)^k; the
    number of blocks of size >= k is rank_sequence[k-1] - rank_sequence[k],
    and the block sizes sum to the algebraic multiplicity.
    """

    eigenvalue: complex
    block_sizes: tuple[int, ...]
    rank_sequence: tuple[int, ...]


def jordan_profile(q, lam: complex, tol: float = JORDAN_RANK_TOL) -> JordanProfile:
    """Block structure of eigenvalue ``lam`` from ranks of powers.

    Powers of a near-defective matrix amplify roundoff, so the rank of the
    k-th power is thresholded at ``tol`` times the k-th power of the base
    matrix scale (the shifted matrix is normalized to unit spectral norm
    first). The default 1e-7 is looser than the eigensolver tolerance for
    exactly that reason.
    """
    a = as_square(q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    lam = complex(lam)
    n = a.shape[0]
    shifted = np.asarray(a, dtype=complex) - lam * np.eye(n)
    base = float(np.linalg.norm(shifted, 2))
    if base == 0.0:
        # q is exactly lam * I: n blocks of size 1
        ranks = (n,) + (0,) * n
        return JordanProfile(eigenvalue=lam, block_sizes=(1,) * n, rank_sequence=ranks)
    shifted = shifted / base

    ranks = [n]
    power = np.eye(n, dtype=complex)
    for _ in range(n):
        power = power @ shifted
        sv = np.linalg.svd(power, compute_uv=False)
        ranks.append(int(np.count_nonzero(sv > tol)))
    if ranks[1] == n:
        raise ValueError(f"{lam} is not an eigenvalue of q within tolerance")

    # blocks_ge[k] = number of blocks of size >= k, for k = 1..n
    blocks_ge = [ranks[k - 1] - ranks[k] for k in range(1, n + 1)] + [0]
    sizes: list[int] = []
    for k in range(1, n + 1):
        sizes.extend([k] * (blocks_ge[k - 1] - blocks_ge[k]))
    sizes.sort(reverse=True)
    return JordanProfile(
        eigenvalue=lam,
        block_sizes=tuple(sizes),
        rank_sequence=tuple(ranks),
    )
