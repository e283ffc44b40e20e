"""Test-function family, symbolic operator actions, Mellin transforms."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracle_frozen import (
    PSI_CANONICAL_SAMPLES,
    PSI_F0_SAMPLES,
    PSI_F1_SAMPLES,
)
from zetacycles.schwartz import (
    MellinDomainError,
    RepresentationError,
    apply_H,
    apply_one_plus_H,
    canonical_vector,
    default_family,
    family_manifest,
    gaussian_seed,
    linear_combination,
    make_test_function,
    mellin_psi,
)


def gaussian_moment(j: int, scale: float) -> float:
    """integral of x^(2j) exp(-scale x^2) over the real line."""
    return math.gamma(j + 0.5) / scale ** (j + 0.5)


class TestFamilyConstruction:
    def test_seed_is_monomial(self):
        for k in range(4):
            g = gaussian_seed(k)
            assert g.coeffs == (0.0,) * k + (1.0,)
            assert g.gauss_scale == math.pi

    def test_member_coefficients(self):
        pi = math.pi
        assert make_test_function(0).coeffs == (0.0, -6.0 * pi, 4.0 * pi * pi)
        assert make_test_function(1).coeffs == (0.0, 6.0, -14.0 * pi, 4.0 * pi * pi)

    def test_canonical_vector(self):
        f = canonical_vector()
        assert f.coeffs == (-1.0, 2.0 * math.pi)
        assert f(0.0) == -1.0

    def test_member_vanishes_at_origin(self):
        for f in default_family():
            assert f.coeffs[0] == 0.0
            assert f(0.0) == 0.0

    def test_member_mean_zero(self):
        # integral of H(1+H)g vanishes identically; check via moments
        for f in default_family() + [canonical_vector()]:
            total = sum(
                c * gaussian_moment(j, f.gauss_scale)
                for j, c in enumerate(f.coeffs)
            )
            assert abs(total) <= 1e-10

    def test_rejects_large_k(self):
        with pytest.raises(ValueError):
            make_test_function(9)
        with pytest.raises(ValueError):
            gaussian_seed(-1)

    def test_manifest(self, family):
        rows = family_manifest(family)
        assert [r["label"] for r in rows] == ["f0", "f1", "f2"]
        for r in rows:
            assert r["psi_closed_form"]

    def test_linear_combination_pointwise(self, family):
        combo = linear_combination(family, [1.0, -2.0, 0.5])
        for x in (0.0, 0.3, 1.7):
            direct = family[0](x) - 2.0 * family[1](x) + 0.5 * family[2](x)
            assert combo(x) == pytest.approx(direct, rel=1e-14, abs=1e-300)

    def test_representation_guard(self):
        with pytest.raises(RepresentationError):
            apply_H(lambda x: x)


class TestOperatorAction:
    def test_H_matches_x_ddx(self, family):
        h = 1e-6
        for f in family:
            hf = apply_H(f)
            for x in (0.25, 0.8, 1.9):
                fd = x * (f(x + h) - f(x - h)) / (2.0 * h)
                assert hf(x) == pytest.approx(fd, rel=1e-8, abs=1e-12)

    def test_one_plus_H(self, family):
        for f in family:
            g = apply_one_plus_H(f)
            for x in (0.4, 1.1):
                assert g(x) == pytest.approx(f(x) + apply_H(f)(x), rel=1e-13)

    def test_mellin_multiplier_of_H(self, family):
        # psi(H f)(z) = (iz - 1/2) psi(f)(z); the full composition
        # H(1+H) therefore multiplies by -(z^2 + 1/4)
        for f in family:
            for z in (-4.0, 0.7, 2.5):
                lhs = mellin_psi(apply_H(f), z).psi
                rhs = (1j * z - 0.5) * mellin_psi(f, z).psi
                assert abs(lhs - rhs) <= 1e-9


class TestMellin:
    @pytest.mark.parametrize("z,expected", list(PSI_F0_SAMPLES.items()))
    def test_frozen_f0(self, z, expected):
        got = mellin_psi(make_test_function(0), z).psi
        assert abs(got - expected) <= 1e-12 * (1.0 + abs(expected))

    @pytest.mark.parametrize("z,expected", list(PSI_F1_SAMPLES.items()))
    def test_frozen_f1(self, z, expected):
        got = mellin_psi(make_test_function(1), z).psi
        assert abs(got - expected) <= 1e-12 * (1.0 + abs(expected))

    @pytest.mark.parametrize("z,expected", list(PSI_CANONICAL_SAMPLES.items()))
    def test_frozen_canonical(self, z, expected):
        got = mellin_psi(canonical_vector(), z).psi
        assert abs(got - expected) <= 1e-12 * (1.0 + abs(expected))

    def test_vanishing_at_i_half(self, family, canonical):
        for f in family + [canonical]:
            assert abs(mellin_psi(f, 0.5j).psi) <= 1e-9

    def test_closed_vs_quadrature(self, family, canonical):
        for f in family + [canonical]:
            for z in np.linspace(-8.0, 8.0, 9):
                closed = mellin_psi(f, float(z), method="closed")
                quad = mellin_psi(f, float(z), method="quadrature")
                assert abs(closed.psi - quad.psi) <= 1e-9
                assert quad.abs_error >= 0.0

    def test_reality_symmetry(self, family):
        for f in family:
            for s in (0.9, 4.2, 17.0):
                assert abs(
                    mellin_psi(f, -s).psi - mellin_psi(f, s).psi.conjugate()
                ) <= 1e-10

    def test_rapid_decay_monotone_tail(self, family):
        ss = np.arange(20.0, 60.1, 2.0)
        for f in family:
            for m in (1, 2, 3, 4):
                vals = [s**m * abs(mellin_psi(f, float(s)).psi) for s in ss]
                assert all(a > b for a, b in zip(vals, vals[1:]))
                assert vals[-1] < 1e-6

    def test_domain_error(self, family):
        with pytest.raises(MellinDomainError):
            mellin_psi(family[0], -0.5j, method="quadrature")

    def test_zero_function(self):
        zero = linear_combination([make_test_function(0)], [0.0])
        assert zero.is_zero
        assert mellin_psi(zero, 1.0).psi == 0.0


@settings(max_examples=40, deadline=None)
@given(
    x=st.floats(min_value=0.01, max_value=3.0),
    w0=st.floats(min_value=-2.0, max_value=2.0),
    w1=st.floats(min_value=-2.0, max_value=2.0),
)
def test_combination_evaluates_linearly(x, w0, w1):
    f0, f1 = make_test_function(0), make_test_function(1)
    combo = linear_combination([f0, f1], [w0, w1])
    assert combo(x) == pytest.approx(w0 * f0(x) + w1 * f1(x), rel=1e-12, abs=1e-15)


def test_decay_certificate_bounds_samples(family):
    # |f(x)| <= C exp(-rate x^2) must hold on a coarse sweep
    for f in family:
        C, rate = f.decay
        for x in np.linspace(0.0, 5.0, 41):
            assert abs(f(x)) <= C * math.exp(-rate * x * x) * (1.0 + 1e-12) + 1e-300
