"""Dense complex matrix substrate: biorthogonal eigensystems, numerical rank,
Hermitian square roots, and the nullspace of the intertwining equation.

Matrices are plain numpy arrays (real or complex). Every operation validates
shape and rejects non-finite entries on the way in.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

DEFAULT_TOL = 1e-10


class BrokenPhaseError(Exception):
    """No positive-definite metric (and hence no Dyson factor) exists here."""


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    a = np.asarray(m)
    if a.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {a.shape}")
    if a.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.isfinite(a).all():
        raise ValueError(f"{name} has non-finite entries")
    return a


def as_square(m, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


@dataclass(frozen=True)
class EigSystem:
    """Eigendecomposition with paired right/left bases.

    ``right_basis`` holds right eigenvectors as columns and ``left_basis``
    holds left eigenvectors as rows, matched index-by-index to
    ``eigenvalues``. When ``defective_flag`` is False the bases are
    biorthonormal: ``left_basis @ right_basis`` deviates from the identity
    by ``biorth_residual`` in max-norm.
    """

    eigenvalues: np.ndarray
    right_basis: np.ndarray
    left_basis: np.ndarray
    biorth_residual: float
    defective_flag: bool

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


def _fix_column_phases(v: np.ndarray) -> np.ndarray:
    """Unit-normalize columns and make the largest-modulus entry real positive.

    Pins the scaling freedom of eigenvectors so sweeps over a parameter give
    reproducible, piecewise-continuous bases.
    """
    out = np.array(v, dtype=complex)
    for j in range(out.shape[1]):
        col = out[:, j]
        k = int(np.argmax(np.abs(col)))
        pivot = col[k]
        if pivot != 0:
            col = col * (abs(pivot) / pivot)
        nrm = np.linalg.norm(col)
        if nrm > 0:
            col = col / nrm
        out[:, j] = col
    return out


def eig_full(m, tol: float = DEFAULT_TOL) -> EigSystem:
    """Full eigendecomposition of a square matrix with left/right bases.

    Eigenvalues are sorted ascending by real part, ties broken by imaginary
    part. Right eigenvectors are unit-norm with a deterministic phase; for a
    simple spectrum the left basis is the (row-wise) inverse of the right
    one, so ``left @ m @ right`` is diagonal. ``defective_flag`` is set when
    some left/right eigenvector pair is orthogonal to within ``tol``
    (pair condition number above ``1/tol``); the bases are then best-effort
    and ``biorth_residual`` records the actual defect.
    """
    a = as_square(m)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.shape[0]
    w, vl, vr = scipy.linalg.eig(a, left=True, right=True)
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    vr = _fix_column_phases(vr[:, order])
    vl = np.asarray(vl, dtype=complex)[:, order]

    # eigenvalue-pair condition: 1/|l^H r| for unit-norm partners
    overlaps = np.abs(np.sum(vl.conj() * vr, axis=0))
    norms = np.linalg.norm(vl, axis=0) * np.linalg.norm(vr, axis=0)
    norms[norms == 0] = 1.0
    alignment = overlaps / norms
    defective = bool(np.any(alignment < tol))

    if not defective and np.linalg.cond(vr) <= 1.0 / tol:
        left = np.linalg.solve(vr, np.eye(n, dtype=complex))
    else:
        # adjoint-side fallback: pair scipy's left vectors row by row
        left = vl.conj().T.copy()
        for i in range(n):
            s = left[i] @ vr[:, i]
            if abs(s) > tol:
                left[i] = left[i] / s
    residual = float(np.max(np.abs(left @ vr - np.eye(n))))
    return EigSystem(
        eigenvalues=w,
        right_basis=vr,
        left_basis=left,
        biorth_residual=residual,
        defective_flag=defective,
    )


def numerical_rank(m, tol: float = DEFAULT_TOL) -> int:
    """Count of singular values above ``tol`` times the largest one.

    The zero matrix has rank 0 by convention.
    """
    a = as_matrix(m)
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0:
        return 0
    return int(np.count_nonzero(s > tol * s[0]))


def herm_sqrt(theta, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unique positive-definite Hermitian square root of ``theta``.

    ``theta`` must be Hermitian within ``tol`` and positive definite
    (smallest eigenvalue above ``tol`` times the largest). A non-positive
    input raises :class:`BrokenPhaseError`: there is no physical Dyson
    factor at this point.
    """
    a = as_square(theta, "theta")
    if tol <= 0:
        raise ValueError("tol must be positive")
    scale = float(np.max(np.abs(a)))
    defect = float(np.max(np.abs(a - a.conj().T)))
    if defect > tol * max(scale, 1.0):
        raise ValueError(f"theta is not Hermitian (defect {defect:.3e})")
    h = (a + a.conj().T) / 2.0
    w, v = np.linalg.eigh(h)
    if w[-1] <= 0 or w[0] <= tol * w[-1]:
        raise BrokenPhaseError(
            f"theta is not positive definite (eigenvalue range [{w[0]:.3e}, {w[-1]:.3e}])"
        )
    root = (v * np.sqrt(w)) @ v.conj().T
    return (root + root.conj().T) / 2.0


def intertwiner_nullspace(q, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Basis of all solutions X of the intertwining equation q^H X = X q.

    The equation is vectorized with Kronecker products and the nullspace is
    read off an SVD; each returned matrix X is unit Frobenius norm and
    satisfies ``||q^H X - X q||_F <= tol * ||q||_F * ||X||_F``. Candidates
    failing that residual check are dropped with a warning, so an empty list
    is possible for pathological tolerances.
    """
    a = as_square(q)
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = a.shape[0]
    eye = np.eye(n)
    # column-stacking vec: vec(A X B) = (B^T kron A) vec(X)
    mat = np.kron(eye, a.conj().T) - np.kron(a.T, eye)
    _, s, vh = np.linalg.svd(mat)
    if s.size and s[0] > 0:
        null_rows = np.nonzero(s <= tol * s[0])[0]
    else:
        null_rows = np.arange(vh.shape[0])
    q_norm = float(np.linalg.norm(a, "fro"))
    basis = []
    dropped = 0
    for i in null_rows:
        x = vh[i].conj().reshape((n, n), order="F")
        resid = float(np.linalg.norm(a.conj().T @ x - x @ a, "fro"))
        if resid <= tol * q_norm * float(np.linalg.norm(x, "fro")):
            basis.append(x)
        else:
            dropped += 1
    if dropped:
        warnings.warn(
            f"intertwiner_nullspace dropped {dropped} candidate(s) failing the "
            f"residual bound at tol={tol:g}",
            stacklevel=2,
        )
    return basis
