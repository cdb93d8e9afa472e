import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circspec.exceptions import PoleError, PrecisionEscalationRequired
from circspec.finitedet import (
    DOUBLE_PRECISION_CAP,
    EnsembleLabel,
    coe_gen_fn,
    cse_gen_fn,
    cue_gen_fn,
    gen_fn,
    number_variance,
    orthogonal_gen_fn,
    xi_series,
)

O_KINDS = ("o_plus_odd", "o_minus_odd", "o_plus_even", "o_minus_even")


class TestCueGenFn:
    def test_trivial_values(self):
        assert cue_gen_fn(5, 1.0, 0.0).value == 1.0
        assert cue_gen_fn(5, 0.0, 0.7).value == 1.0

    def test_full_circle_gap_probability(self):
        # at xi = 1, E is the probability of an empty arc; for N = 1 the
        # eigenangle is uniform, so E = 1 - phi / (2 pi)
        for phi in (0.5, 1.0, np.pi):
            e = cue_gen_fn(1, phi, 1.0)
            assert e.value.real == pytest.approx(1.0 - phi / (2 * np.pi), rel=1e-13)
            assert abs(e.value.imag) < 1e-14

    @given(st.integers(min_value=1, max_value=12),
           st.floats(min_value=0.05, max_value=3.1),
           st.floats(min_value=0.0, max_value=np.pi))
    @settings(deadline=None, max_examples=40)
    def test_characteristic_function_bounded(self, N, phi, omega):
        # at xi = 1 - e^{i omega}, E is a characteristic function value
        xi = 1.0 - np.exp(1j * omega)
        assert abs(cue_gen_fn(N, phi, xi).value) <= 1.0 + 1e-12

    def test_extended_precision_matches_double(self):
        xi = 1.0 - np.exp(0.9j)
        a = cue_gen_fn(30, 1.3, xi, precision="double").value
        b = cue_gen_fn(30, 1.3, xi, precision="extended").value
        assert a == pytest.approx(b, rel=1e-11)

    def test_double_precision_cap_enforced(self):
        with pytest.raises(PrecisionEscalationRequired):
            cue_gen_fn(DOUBLE_PRECISION_CAP + 1, 1.0, 0.5)


class TestBetaOneFour:
    def test_coe_pole_at_two(self):
        with pytest.raises(PoleError):
            coe_gen_fn(4, 1.0, 2.0)

    def test_coe_n1_uniform(self):
        # a single eigenangle is uniform for every beta
        e = coe_gen_fn(1, 1.2, 1.0)
        assert e.value.real == pytest.approx(1.0 - 1.2 / (2 * np.pi), rel=1e-12)

    def test_cse_n1_uniform(self):
        e = cse_gen_fn(1, 1.2, 1.0)
        assert e.value.real == pytest.approx(1.0 - 1.2 / (2 * np.pi), rel=1e-10)

    @given(st.sampled_from([1, 2, 4]), st.integers(min_value=1, max_value=10),
           st.floats(min_value=0.1, max_value=3.0),
           st.floats(min_value=0.1, max_value=np.pi))
    @settings(deadline=None, max_examples=40)
    def test_dispatch_bounded(self, beta, N, phi, omega):
        xi = 1.0 - np.exp(1j * omega)
        assert abs(gen_fn(beta, N, phi, xi).value) <= 1.0 + 1e-12

    def test_orthogonal_label_validation(self):
        with pytest.raises(ValueError):
            orthogonal_gen_fn(EnsembleLabel("cue", 3), 1.0, 0.5)


class TestXiSeries:
    @given(st.sampled_from([1, 2, 4]), st.integers(min_value=1, max_value=15),
           st.floats(min_value=0.05, max_value=6.2))
    @settings(deadline=None, max_examples=40)
    def test_mean_is_density_integral(self, beta, N, phi):
        c1, _ = xi_series(beta, N, phi)
        assert -c1 == pytest.approx(N * phi / (2 * np.pi), rel=1e-11)

    def test_variance_positive_and_small_arc_poissonian(self, ):
        for beta in (1, 2, 4):
            var = number_variance(beta, 10, 1e-3)
            mean = 10 * 1e-3 / (2 * np.pi)
            # for a tiny arc the count is Bernoulli-like: Var ~ mean
            assert var == pytest.approx(mean, rel=5e-3)
            assert number_variance(beta, 10, 2.0) > 0

    def test_n1_variance_exact(self):
        # N = 1: count is Bernoulli(phi / 2 pi) for every beta
        phi = 1.7
        p = phi / (2 * np.pi)
        for beta in (1, 2, 4):
            assert number_variance(beta, 1, phi) == pytest.approx(p * (1 - p), rel=1e-12)
