import pytest
from hypothesis import given
from hypothesis import strategies as st

from vpstealth.search import maximize_unimodal, minimize_unimodal


@given(st.floats(-0.5, 1.5))
def test_finds_parabola_peak(c):
    x, v = maximize_unimodal(lambda t: -(t - c) ** 2, 0.0, 1.0)
    assert x == pytest.approx(min(max(c, 0.0), 1.0), abs=1e-8)


def test_boundary_optimum_is_exact():
    assert maximize_unimodal(lambda t: t, 0.0, 1.0) == (1.0, 1.0)
    assert minimize_unimodal(lambda t: t, -0.5, 0.0) == (-0.5, -0.5)


def test_flat_objective_reports_endpoint():
    x, v = maximize_unimodal(lambda t: 0.0, 0.0, 1.0)
    assert x in (0.0, 1.0) and v == 0.0
