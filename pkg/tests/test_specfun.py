"""Special-function layer: gamma, theta, critical-line zeta, zeros, jets."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracle_frozen import (
    GAMMA_SAMPLES,
    SIEGEL_THETA_SAMPLES,
    SIEGEL_Z_SAMPLES,
    ZERO_ORDINATES,
    ZETA_CRITICAL_SAMPLES,
    ZETA_HALF,
    ZETA_JET_SAMPLES,
)
from zetacycles.specfun import (
    VALIDATED_T_MAX,
    AccuracyError,
    EvalConfig,
    PoleError,
    ZetaZero,
    finite_difference_weights,
    find_zeros,
    gamma_complex,
    log_gamma,
    read_zero_cache,
    riemann_siegel_Z,
    siegel_theta,
    write_zero_cache,
    zeta_critical,
    zeta_jet,
)


class TestGamma:
    @pytest.mark.parametrize("z,expected", list(GAMMA_SAMPLES.items()))
    def test_frozen_samples(self, z, expected):
        got = gamma_complex(complex(*z))
        assert abs(got - expected) <= 1e-12 * abs(expected)

    def test_poles(self):
        for z in (0.0, -1.0, -5.0):
            with pytest.raises(PoleError):
                gamma_complex(z)

    def test_reflection_identity(self):
        rng = np.random.default_rng(42)
        for _ in range(300):
            z = complex(rng.uniform(-8, 8), rng.uniform(-20, 20))
            if abs(z.imag) < 0.1 and abs(z - round(z.real)) < 0.1:
                continue
            lhs = gamma_complex(z) * gamma_complex(1.0 - z) * np.sin(np.pi * z) / np.pi
            assert abs(lhs - 1.0) <= 1e-10

    def test_log_gamma_exponentiates(self):
        for z in (0.25 - 3.5j, 3.7 + 11.0j, 0.25 + 0.0j):
            assert abs(np.exp(log_gamma(z)) - gamma_complex(z)) <= 1e-12 * abs(
                gamma_complex(z)
            )

    def test_log_gamma_continuous_on_vertical_line(self):
        # the principal-branch wrap would show up as a 2 pi jump
        prev = log_gamma(0.25 + 0.5j).imag
        for t in np.arange(1.0, 80.0, 0.5):
            cur = log_gamma(0.25 + 1j * t / 2).imag
            assert abs(cur - prev) < 3.0
            prev = cur


class TestSiegelTheta:
    @pytest.mark.parametrize("t,expected", list(SIEGEL_THETA_SAMPLES.items()))
    def test_frozen_samples(self, t, expected):
        assert siegel_theta(t) == pytest.approx(expected, abs=1e-10, rel=1e-12)

    def test_odd(self):
        for t in (5.0, 33.3, 101.0):
            assert siegel_theta(-t) == pytest.approx(-siegel_theta(t), abs=1e-12)


class TestZetaCritical:
    @pytest.mark.parametrize("t,expected", list(ZETA_CRITICAL_SAMPLES.items()))
    def test_frozen_samples(self, t, expected, cfg):
        got = zeta_critical(t, cfg)
        assert abs(got - expected) <= 1e-6

    def test_zeta_half(self, cfg):
        got = zeta_critical(0.0, cfg)
        assert got.imag == 0.0
        assert got.real == pytest.approx(ZETA_HALF, abs=1e-12)

    def test_conjugate_symmetry(self, cfg):
        rng = np.random.default_rng(7)
        for t in rng.uniform(-60.0, 60.0, size=1000):
            left = zeta_critical(-t, cfg)
            right = zeta_critical(t, cfg).conjugate()
            assert abs(left - right) <= 1e-10

    @pytest.mark.parametrize("t,expected", list(SIEGEL_Z_SAMPLES.items()))
    def test_z_frozen_samples(self, t, expected, cfg):
        assert riemann_siegel_Z(t, cfg) == pytest.approx(expected, abs=1e-6)

    def test_z_reality(self, cfg):
        # Z is the rotation of zeta onto the real axis; recompute the
        # rotation directly and bound its imaginary part
        for t in (5.0, 30.0, 57.3, 80.0, 99.0, 130.0, 220.0):
            rotated = np.exp(1j * siegel_theta(t)) * zeta_critical(t, cfg)
            assert abs(rotated.imag) <= 1e-9
            assert riemann_siegel_Z(t, cfg) == pytest.approx(rotated.real, abs=1e-9)

    def test_method_overlap_band(self):
        # force each path by moving the switch point across the band
        for t in np.linspace(85.0, 115.0, 13):
            em = zeta_critical(t, EvalConfig(rs_threshold=200.0))
            rs = zeta_critical(t, EvalConfig(rs_threshold=80.0))
            assert abs(em - rs) <= 1e-7

    def test_out_of_validated_range(self, cfg):
        with pytest.raises(AccuracyError):
            zeta_critical(VALIDATED_T_MAX + 5.0, cfg)

    def test_unreachable_target(self):
        tight = EvalConfig(target_abs_error=1e-14)
        with pytest.raises(AccuracyError):
            zeta_critical(150.0, tight)


class TestEvalConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            EvalConfig(euler_maclaurin_terms=0)
        with pytest.raises(ValueError):
            EvalConfig(rs_threshold=5.0)
        with pytest.raises(ValueError):
            EvalConfig(target_abs_error=0.0)

    def test_zero_record_validation(self):
        with pytest.raises(ValueError):
            ZetaZero(ordinate=-1.0, multiplicity=1, abs_error=1e-9)
        with pytest.raises(ValueError):
            ZetaZero(ordinate=14.0, multiplicity=0, abs_error=1e-9)


class TestFindZeros:
    def test_first_thirteen(self, zeros60, cfg):
        oracle = [t for t in ZERO_ORDINATES if t <= 60.0]
        assert len(zeros60) == len(oracle) == 13
        for z, t in zip(zeros60, oracle):
            assert abs(z.ordinate - t) <= 1e-9
            assert abs(z.ordinate - t) <= z.abs_error
            assert z.multiplicity == 1
            assert abs(zeta_critical(z.ordinate, cfg)) < 1e-6

    def test_empty_below_first_zero(self, cfg):
        assert find_zeros(0.0, 5.0, cfg) == []

    def test_multiplicity_override_unimplemented(self):
        cfg = EvalConfig(assume_simple_zeros=False)
        with pytest.raises(NotImplementedError):
            find_zeros(0.0, 30.0, cfg)

    def test_cache_round_trip(self, tmp_path, zeros60):
        path = tmp_path / "zeros.csv"
        write_zero_cache(path, zeros60)
        back = read_zero_cache(path)
        assert [z.ordinate for z in back] == pytest.approx(
            [z.ordinate for z in zeros60], abs=1e-13
        )
        assert [z.multiplicity for z in back] == [z.multiplicity for z in zeros60]

    def test_cache_rejects_unsorted(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text(
            "ordinate,multiplicity,abs_error\n"
            "21.0,1,1e-9\n"
            "14.1,1,1e-9\n"
        )
        with pytest.raises(ValueError):
            read_zero_cache(path)


class TestJets:
    @pytest.mark.parametrize("t0", list(ZETA_JET_SAMPLES.keys()))
    def test_frozen_jets(self, t0, cfg):
        expected = ZETA_JET_SAMPLES[t0]
        got = zeta_jet(t0, order=4, cfg=cfg)
        budgets = [1e-9, 1e-9, 1e-8, 1e-7, 1e-6]
        for k, (g, e) in enumerate(zip(got, expected)):
            assert abs(g - e) <= budgets[k], f"order {k} at t0={t0}"

    def test_order_validation(self, cfg):
        with pytest.raises(ValueError):
            zeta_jet(25.0, order=5, cfg=cfg)


@settings(max_examples=60, deadline=None)
@given(
    degree=st.integers(min_value=0, max_value=5),
    x0=st.floats(min_value=-2.0, max_value=2.0),
    seed=st.integers(min_value=0, max_value=10_000),
)
def test_fd_weights_differentiate_polynomials(degree, x0, seed):
    """Fornberg weights are exact on polynomials up to the node count."""
    rng = np.random.default_rng(seed)
    nodes = np.sort(x0 + rng.uniform(-1.5, 1.5, size=9))
    if np.min(np.diff(nodes)) < 1e-3:
        return
    coeffs = rng.uniform(-2, 2, size=degree + 1)
    poly = np.polynomial.Polynomial(coeffs)
    w = finite_difference_weights(x0, nodes, max_order=3)
    samples = poly(nodes)
    for k in range(4):
        exact = poly.deriv(k)(x0) if k <= degree else 0.0
        approx = float(np.dot(w[k], samples))
        assert approx == pytest.approx(exact, abs=1e-7 * max(1.0, abs(exact)))
