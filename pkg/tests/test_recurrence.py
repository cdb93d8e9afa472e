import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circspec.finitedet import EnsembleLabel, cue_gen_fn, orthogonal_gen_fn
from circspec.recurrence import gen_fn_from_recurrence, orthogonal_from_unitary


class TestRecurrenceVsDeterminant:
    @given(st.integers(min_value=1, max_value=25),
           st.floats(min_value=0.1, max_value=3.1),
           st.floats(min_value=0.05, max_value=np.pi))
    @settings(deadline=None, max_examples=50)
    def test_matches_toeplitz_determinant(self, N, phi, omega):
        xi = 1.0 - np.exp(1j * omega)
        a = gen_fn_from_recurrence(N - 1, phi, xi).value
        b = cue_gen_fn(N, phi, xi).value
        assert abs(a - b) < 1e-10

    def test_real_xi(self):
        for xi in (0.3, 0.9, 1.0):
            a = gen_fn_from_recurrence(7, 1.5, xi).value
            b = cue_gen_fn(8, 1.5, xi).value
            assert abs(a - b) < 1e-11

    def test_trivial_xi_zero(self):
        assert gen_fn_from_recurrence(5, 1.0, 0.0).value == 1.0


class TestOrthogonalFromUnitary:
    @pytest.mark.parametrize("kind,n", [("o_plus_odd", 4), ("o_minus_odd", 4)])
    def test_matches_hankel_determinant(self, kind, n):
        xi = 1.0 - np.exp(1.1j)
        label = EnsembleLabel(kind, n)
        a = orthogonal_from_unitary(label, 0.9, xi).value
        b = orthogonal_gen_fn(label, 0.9, xi).value
        assert abs(a - b) < 1e-9
