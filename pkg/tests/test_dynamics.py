import numpy as np
import pytest

from cryptoherm import (
    EvolutionGenerator,
    StatePair,
    coriolis,
    diagonal_metric,
    expectation,
    heisenberg_evolve,
    metric_rate,
    omega_cauchy_evolve,
    quasi_residual,
    state_pair_evolve,
)
from cryptoherm.models import ModelSpec, build_q
from support import multiset_err, random_hermitian

GRADES = np.arange(8, dtype=float)


def omega_exact(t):
    """Closed-form diagonal Dyson map of the crunch-bang chain on (0, 1)."""
    return np.diag(((1.0 - t) / t) ** (GRADES / 2.0))


def sigma_exact(t):
    return -1j * np.diag(GRADES / (2.0 * t * (1.0 - t)))


class TestCoriolis:
    def test_constant_map_gives_zero(self):
        sig = coriolis(lambda t: np.eye(4) * 2.0, 0.3)
        assert np.max(np.abs(sig)) <= 1e-10

    def test_global_phase(self):
        omega = 1.7

        def provider(t):
            return np.exp(1j * omega * t) * np.eye(3)

        sig = coriolis(provider, 0.4)
        assert np.allclose(sig, -omega * np.eye(3), atol=1e-8)

    def test_analytic_provider_is_exact(self):
        omega = 1.7

        def provider(t):
            return np.exp(1j * omega * t) * np.eye(3)

        def derivative(t):
            return 1j * omega * np.exp(1j * omega * t) * np.eye(3)

        sig = coriolis(provider, 0.4, omega_dot_of_t=derivative)
        assert np.allclose(sig, -omega * np.eye(3), atol=1e-14)

    def test_crunchbang_diagonal_generator(self):
        # log-derivative of (1 - t)/t is -1/(t(1-t)) = -4.5 at t = 1/3
        sig = coriolis(omega_exact, 1.0 / 3.0)
        expected = -1j * np.diag(2.25 * GRADES)
        assert np.max(np.abs(sig - expected)) <= 1e-6

    def test_central_difference_second_order(self):
        target = sigma_exact(1.0 / 3.0)
        errs = [
            np.max(np.abs(coriolis(omega_exact, 1.0 / 3.0, h_step=h) - target))
            for h in (1e-3, 5e-4)
        ]
        assert errs[1] <= errs[0] / 3.0  # ~4x per halving

    def test_singular_map_raises(self):
        with pytest.raises(np.linalg.LinAlgError):
            coriolis(lambda t: np.diag([1.0, 0.0]), 0.0, h_step=1e-5)


class TestEvolutionGenerator:
    def test_heisenberg_mode_forbids_g(self):
        with pytest.raises(ValueError):
            EvolutionGenerator(h_of_t=lambda t: np.eye(2), g_of_t=lambda t: np.eye(2))

    def test_schrodinger_composition(self):
        h = lambda t: np.diag([2.0, 3.0]) + 0j
        sig = lambda t: np.diag([0.5, 0.5]) + 0j
        gen = EvolutionGenerator.schrodinger_in_f(h, sig)
        assert gen.mode == "schrodinger"
        assert np.allclose(gen.g_of_t(0.1), np.diag([1.5, 2.5]))


class TestHeisenbergEvolve:
    def test_commuting_initial_value_is_fixed(self):
        h = random_hermitian(4, 9)
        gen = EvolutionGenerator.heisenberg(lambda t: h)
        out = heisenberg_evolve(h, gen, 0.0, 1.0, 200)
        assert np.allclose(out, h, atol=1e-12)

    def test_zero_generator_is_identity_flow(self):
        a0 = random_hermitian(3, 4) + 1j * np.triu(np.ones((3, 3)))
        gen = EvolutionGenerator.heisenberg(lambda t: np.zeros((3, 3)))
        out = heisenberg_evolve(a0, gen, 0.0, 2.0, 50)
        assert np.allclose(out, a0, atol=1e-14)

    def test_source_term_integrates(self):
        # H = 0, B = const: A(t) = A(0) + (t1 - t0) B
        b = np.array([[0.0, 1.0], [2.0, 0.0]]) + 0j
        gen = EvolutionGenerator.heisenberg(lambda t: np.zeros((2, 2)), lambda t: b)
        out = heisenberg_evolve(np.eye(2), gen, 0.0, 0.5, 100)
        assert np.allclose(out, np.eye(2) + 0.5 * b, atol=1e-12)

    def test_pullback_oracle(self):
        a_frak = random_hermitian(8, 7)
        t0, t1 = 1.0 / 3.0, 0.5
        a0 = np.linalg.solve(omega_exact(t0), a_frak) @ omega_exact(t0)
        gen = EvolutionGenerator.heisenberg(sigma_exact)
        out = heisenberg_evolve(a0, gen, t0, t1, 1000)
        target = np.linalg.solve(omega_exact(t1), a_frak) @ omega_exact(t1)
        assert np.max(np.abs(out - target)) <= 1e-8

    def test_fourth_order_convergence(self):
        a_frak = random_hermitian(8, 7)
        t0, t1 = 1.0 / 3.0, 0.5
        a0 = np.linalg.solve(omega_exact(t0), a_frak) @ omega_exact(t0)
        gen = EvolutionGenerator.heisenberg(sigma_exact)
        target = np.linalg.solve(omega_exact(t1), a_frak) @ omega_exact(t1)

        def err(steps):
            return np.max(np.abs(heisenberg_evolve(a0, gen, t0, t1, steps) - target))

        ratio = err(250) / err(500)
        assert 16.0 * 0.75 <= ratio <= 16.0 * 1.25

    def test_isospectral_without_source(self):
        a0 = np.linalg.solve(omega_exact(1.0 / 3.0), random_hermitian(8, 12)) @ omega_exact(1.0 / 3.0)
        gen = EvolutionGenerator.heisenberg(sigma_exact)
        out = heisenberg_evolve(a0, gen, 1.0 / 3.0, 0.5, 1000)
        assert multiset_err(np.linalg.eigvals(out), np.linalg.eigvals(a0)) <= 1e-8

    def test_initial_compatibility_is_transported(self):
        # A(T) quasi-Hermitian against Theta(T) stays so along the flow
        t0, t1, steps = 0.25, 0.75, 1500
        a_frak = random_hermitian(8, 21)
        a0 = np.linalg.solve(omega_exact(t0), a_frak) @ omega_exact(t0)
        theta0 = omega_exact(t0) @ omega_exact(t0)
        assert quasi_residual(a0, theta0) <= 1e-10 * np.linalg.norm(theta0)
        gen = EvolutionGenerator.heisenberg(sigma_exact)
        h = (t1 - t0) / steps
        a = np.asarray(a0, dtype=complex)
        worst = 0.0
        for k in range(steps):
            a = heisenberg_evolve(a, gen, t0 + k * h, t0 + (k + 1) * h, 1)
            if (k + 1) % 300 == 0:
                t = t0 + (k + 1) * h
                theta = omega_exact(t) @ omega_exact(t)
                rel = quasi_residual(a, theta) / (
                    np.linalg.norm(a, "fro") * np.linalg.norm(theta, "fro")
                )
                worst = max(worst, rel)
        assert worst <= 1e-7


class TestOmegaCauchy:
    def test_zero_generator(self):
        om0 = np.diag([1.0, 2.0, 3.0])
        out = omega_cauchy_evolve(om0, lambda t: np.zeros((3, 3)), 0.0, 1.0, 50)
        assert np.allclose(out, om0, atol=1e-14)

    def test_scalar_phase(self):
        omega = 0.9
        out = omega_cauchy_evolve(
            np.eye(3), lambda t: -omega * np.eye(3), 0.0, 2.0, 400
        )
        assert np.allclose(out, np.exp(1j * omega * 2.0) * np.eye(3), atol=1e-10)

    def test_recovers_closed_form_diagonal_map(self):
        out = omega_cauchy_evolve(omega_exact(1.0 / 3.0), sigma_exact, 1.0 / 3.0, 0.5, 1000)
        assert np.max(np.abs(out - np.eye(8))) <= 1e-8

    def test_consistency_with_coriolis(self):
        # integrate, then differentiate back
        def omega_of_t(t):
            return omega_cauchy_evolve(omega_exact(0.4), sigma_exact, 0.4, t, 400)

        sig = coriolis(omega_of_t, 0.45, h_step=1e-4)
        assert np.max(np.abs(sig - sigma_exact(0.45))) <= 1e-5


class TestStatePair:
    def test_zero_overlap_rejected(self):
        with pytest.raises(ValueError):
            StatePair(ket=np.array([1.0, 0.0]), ketket=np.array([0.0, 1.0]))

    def test_zero_generator_fixes_states(self):
        s0 = StatePair(ket=np.array([1.0, 2.0]) + 0j, ketket=np.array([1.0, 0.5]) + 0j)
        gen = EvolutionGenerator(
            h_of_t=lambda t: np.zeros((2, 2)),
            g_of_t=lambda t: np.zeros((2, 2)),
            mode="schrodinger",
        )
        s1 = state_pair_evolve(s0, gen, 0.0, 1.0, 10)
        assert np.allclose(s1.ket, s0.ket)
        assert np.allclose(s1.ketket, s0.ketket)

    def test_hermitian_diagonal_phases(self):
        g = np.diag([1.0, 2.0]) + 0j
        gen = EvolutionGenerator(h_of_t=lambda t: g, g_of_t=lambda t: g, mode="schrodinger")
        e1 = np.array([1.0, 0.0]) + 0j
        s1 = state_pair_evolve(StatePair(e1, e1), gen, 0.0, 0.7, 400)
        phase = np.exp(-1j * 0.7)
        assert np.allclose(s1.ket, phase * e1, atol=1e-12)
        assert np.allclose(s1.ketket, phase * e1, atol=1e-12)
        assert abs(s1.overlap() - 1.0) <= 1e-12

    def test_overlap_conserved_for_generic_generator(self):
        rng = np.random.default_rng(31)
        g0 = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))

        def g_of_t(t):
            return g0 * (1.0 + 0.3 * np.sin(3.0 * t))

        gen = EvolutionGenerator(h_of_t=g_of_t, g_of_t=g_of_t, mode="schrodinger")
        s0 = StatePair(
            ket=rng.standard_normal(6) + 1j * rng.standard_normal(6),
            ketket=rng.standard_normal(6) + 1j * rng.standard_normal(6),
        )
        s1 = state_pair_evolve(s0, gen, 0.0, 1.0, 1000)
        assert abs(s1.overlap() - s0.overlap()) <= 1e-10

    def test_missing_g_raises(self):
        gen = EvolutionGenerator.heisenberg(lambda t: np.eye(2))
        s0 = StatePair(ket=np.array([1.0, 0.0]) + 0j, ketket=np.array([1.0, 0.0]) + 0j)
        with pytest.raises(ValueError, match="g_of_t"):
            state_pair_evolve(s0, gen, 0.0, 1.0, 10)


class TestExpectation:
    def test_unit_vector_identity(self):
        e1 = np.array([1.0, 0.0]) + 0j
        assert expectation(StatePair(e1, e1), np.eye(2)) == pytest.approx(1.0)

    def test_theta_norm_is_positive(self):
        theta = np.diag([1.0, 2.0, 4.0])
        ket = np.array([0.3, -0.5, 0.2]) + 0j
        val = expectation(StatePair(ket, theta @ ket), np.eye(3))
        assert val.imag == pytest.approx(0.0, abs=1e-14)
        assert val.real > 0

    def test_crunchbang_zero_diagonal(self):
        q = build_q(ModelSpec("crunchbang", 8), 1.0 / 3.0)
        ket = np.zeros(8, dtype=complex)
        ket[0] = 1.0
        ketket = np.diag(2.0 ** np.arange(8)) @ ket
        assert expectation(StatePair(ket, ketket), q) == pytest.approx(0.0, abs=1e-14)

    def test_quasi_hermitian_observable_is_real(self):
        q = build_q(ModelSpec("crunchbang", 8), 0.4)
        mr = diagonal_metric(q)
        rng = np.random.default_rng(17)
        ket = rng.standard_normal(8) + 1j * rng.standard_normal(8)
        val = expectation(StatePair(ket, mr.theta @ ket), q)
        assert abs(val.imag) <= 1e-10 * max(1.0, abs(val.real))

    def test_dimension_mismatch(self):
        e1 = np.array([1.0, 0.0]) + 0j
        with pytest.raises(ValueError):
            expectation(StatePair(e1, e1), np.eye(3))


class TestMetricRate:
    def test_frozen_metric_has_zero_rate(self):
        assert metric_rate(lambda t: np.eye(5), 0.3) <= 1e-12

    def test_diagonal_family_rate(self):
        def theta_of_t(t):
            return omega_exact(t) @ omega_exact(t)

        # d/dt ((1-t)/t)^k = -k ((1-t)/t)^(k-1) / t^2; check against closed form
        t = 0.5
        k = GRADES
        expected = np.sqrt(np.sum((k * ((1 - t) / t) ** (k - 1) / t**2) ** 2))
        assert metric_rate(theta_of_t, t) == pytest.approx(expected, rel=1e-6)
