"""Shared helpers for the test suite."""

from __future__ import annotations

import numpy as np
import scipy.optimize


def multiset_err(a, b) -> float:
    """Max pairing distance between two complex multisets (optimal assignment)."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    assert a.shape == b.shape
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = scipy.optimize.linear_sum_assignment(cost)
    return float(cost[rows, cols].max())


def herm_defect(m) -> float:
    m = np.asarray(m)
    return float(np.linalg.norm(m - m.conj().T, "fro"))


def random_hermitian(n: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (raw + raw.conj().T) / 2.0
