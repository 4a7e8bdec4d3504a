import numpy as np
import pytest

from cryptoherm import eig_full
from cryptoherm.models import (
    ModelSpec,
    build_q,
    build_q_time_derivative,
    oracle_spectrum,
    precise_spectrum,
)
from support import multiset_err


class TestModelSpec:
    def test_rejects_unknown_kind(self):
        with pytest.raises(ValueError):
            ModelSpec("bounce", 4)

    def test_rejects_small_dim(self):
        with pytest.raises(ValueError):
            ModelSpec("bang", 1)

    def test_crunchbang_fixed_dim(self):
        with pytest.raises(ValueError):
            ModelSpec("crunchbang", 6)


class TestBuildQ:
    def test_bang2_at_zero(self):
        q = build_q(ModelSpec("bang", 2), 0.0)
        assert np.array_equal(q, np.array([[-1.0, 1.0], [-1.0, 1.0]]))

    def test_cyclic2(self):
        q = build_q(ModelSpec("cyclic", 2), 0.6)
        assert np.allclose(q, [[-1.0, 0.8], [-0.8, 1.0]], atol=1e-15)

    def test_crunchbang_at_zero_is_unit_shift(self):
        q = build_q(ModelSpec("crunchbang", 8), 0.0)
        assert np.array_equal(q, np.diag(np.ones(7), 1))

    def test_crunchbang_bands(self):
        q = build_q(ModelSpec("crunchbang", 8), -0.5)
        up = np.diag(q, 1)
        lo = np.diag(q, -1)
        assert np.array_equal(up, [1.5, 1.5, 0.5, 0.5, 0.5, 1.5, 1.5])
        assert np.array_equal(lo, [-0.5, -0.5, 0.5, 0.5, 0.5, -0.5, -0.5])

    def test_subdiagonal_is_negative_superdiagonal(self):
        for kind in ("bang", "cyclic"):
            q = build_q(ModelSpec(kind, 6), 0.3)
            assert np.allclose(np.diag(q, -1), -np.diag(q, 1))

    def test_cyclic_even_in_t(self):
        spec = ModelSpec("cyclic", 5)
        for t in (0.1, 0.45, 0.99, 1.7):
            assert np.array_equal(build_q(spec, t), build_q(spec, -t))

    def test_bang_hermitian_after_one(self):
        for t in (1.2, 2.0, 5.0):
            q = build_q(ModelSpec("bang", 6), t)
            assert np.iscomplexobj(q)
            assert np.array_equal(q, q.conj().T)

    def test_real_dtype_in_real_regime(self):
        assert not np.iscomplexobj(build_q(ModelSpec("bang", 4), 0.5))
        assert not np.iscomplexobj(build_q(ModelSpec("cyclic", 4), -0.9))

    def test_rejects_non_spec(self):
        with pytest.raises(ValueError):
            build_q({"kind": "bang"}, 0.5)


class TestOracleSpectrum:
    def test_bang10(self):
        vals = oracle_spectrum(ModelSpec("bang", 10), 0.64)
        expected = [-7.2, -5.6, -4.0, -2.4, -0.8, 0.8, 2.4, 4.0, 5.6, 7.2]
        assert multiset_err(vals, expected) <= 1e-12

    def test_cyclic8_negative_time(self):
        vals = oracle_spectrum(ModelSpec("cyclic", 8), -0.5)
        expected = [-3.5, -2.5, -1.5, -0.5, 0.5, 1.5, 2.5, 3.5]
        assert multiset_err(vals, expected) <= 1e-12

    def test_crunchbang_half(self):
        vals = oracle_spectrum(ModelSpec("crunchbang", 8), 0.5)
        expected = np.cos(np.arange(1, 9) * np.pi / 9)
        assert multiset_err(vals, expected) <= 1e-14

    def test_bang_negative_time_is_imaginary(self):
        vals = oracle_spectrum(ModelSpec("bang", 4), -0.25)
        assert np.allclose(vals.real, 0.0)
        assert multiset_err(vals.imag, [-1.5, -0.5, 0.5, 1.5]) <= 1e-12

    def test_crunchbang_outside_unit_interval(self):
        with pytest.raises(ValueError):
            oracle_spectrum(ModelSpec("crunchbang", 8), -0.2)


# dense-solver agreement is limited by eigenvalue conditioning; away from the
# degeneracy the double-precision route certifies 1e-8, closer in only the
# high-precision entry construction can (entry rounding alone costs eps^(1/N))
WELL_CONDITIONED_T = [t for t in np.linspace(-1.0, 1.0, 41) if abs(t) >= 0.15]
NEAR_DEGENERATE_T = [-0.12, -0.04, 0.025, 0.04, 0.1]


class TestSpectraAgainstOracle:
    @pytest.mark.parametrize("kind,n", [("bang", 2), ("bang", 3), ("bang", 10), ("cyclic", 8)])
    def test_dense_solver_matches_oracle(self, kind, n):
        spec = ModelSpec(kind, n)
        for t in WELL_CONDITIONED_T:
            o = oracle_spectrum(spec, t)
            w = eig_full(build_q(spec, t)).eigenvalues
            scale = max(1.0, float(np.max(np.abs(o))))
            assert multiset_err(w, o) <= 1e-8 * scale, t

    @pytest.mark.parametrize("kind,n", [("bang", 10), ("cyclic", 8)])
    def test_precise_route_matches_oracle_near_degeneracy(self, kind, n):
        spec = ModelSpec(kind, n)
        for t in NEAR_DEGENERATE_T:
            o = oracle_spectrum(spec, t)
            w = precise_spectrum(spec, t)
            scale = max(1.0, float(np.max(np.abs(o))))
            assert multiset_err(w, o) <= 1e-10 * scale, t

    def test_crunchbang_interior(self):
        spec = ModelSpec("crunchbang", 8)
        for t in np.linspace(0.02, 0.98, 25):
            o = oracle_spectrum(spec, t)
            w = eig_full(build_q(spec, t)).eigenvalues
            assert multiset_err(w, o) <= 1e-8 * max(1.0, float(np.max(np.abs(o)))), t

    def test_bang_broken_phase_all_complex(self):
        # even dimension, pre-degeneracy times: nothing stays on the real line
        spec = ModelSpec("bang", 8)
        for t in (-0.8, -0.3, -0.05):
            w = eig_full(build_q(spec, t)).eigenvalues
            assert np.all(np.abs(w.imag) > 1e-8), t


class TestTimeDerivative:
    def test_bang2_exact(self):
        # d/dt sqrt(1 - t) = -1 at t = 0.75
        dq = build_q_time_derivative(ModelSpec("bang", 2), 0.75)
        assert np.allclose(dq, [[0.0, -1.0], [1.0, 0.0]], atol=1e-14)

    def test_cyclic_flat_at_zero(self):
        dq = build_q_time_derivative(ModelSpec("cyclic", 7), 0.0)
        assert np.array_equal(dq, np.zeros((7, 7)))

    def test_crunchbang_band_pattern(self):
        dq = build_q_time_derivative(ModelSpec("crunchbang", 8), 0.5)
        assert np.array_equal(np.diag(dq, 1), -np.ones(7))
        assert np.array_equal(np.diag(dq, -1), np.ones(7))
        assert np.count_nonzero(dq - np.diag(np.diag(dq, 1), 1) - np.diag(np.diag(dq, -1), -1)) == 0

    @pytest.mark.parametrize(
        "kind,n,t",
        [("bang", 5, 0.3), ("bang", 5, 2.5), ("cyclic", 6, 0.6), ("cyclic", 6, -0.4),
         ("crunchbang", 8, 0.35), ("crunchbang", 8, -0.2)],
    )
    def test_first_order_expansion(self, kind, n, t):
        spec = ModelSpec(kind, n)
        dq = build_q_time_derivative(spec, t)
        errs = []
        for h in (1e-4, 5e-5):
            lin = build_q(spec, t) + h * dq
            errs.append(np.max(np.abs(build_q(spec, t + h) - lin)))
        # O(h^2) remainder: halving h shrinks the defect ~4x (piecewise-linear
        # families are exact, leaving only roundoff)
        assert errs[0] <= 1e-6
        assert errs[1] <= max(errs[0] / 2.5, 1e-12)

    @pytest.mark.parametrize(
        "kind,t", [("bang", 1.0), ("cyclic", 1.0), ("cyclic", -1.0), ("crunchbang", 0.0)]
    )
    def test_kink_points_raise(self, kind, t):
        n = 8 if kind == "crunchbang" else 4
        with pytest.raises(ValueError):
            build_q_time_derivative(ModelSpec(kind, n), t)
