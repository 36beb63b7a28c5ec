import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lfrac import quadrature, stable
from lfrac.errors import DomainError
from lfrac.stable import StableParams, SubordinatorParams

# mpmath references (30 digits): (1/pi) Re int exp(-e^{i g pi/2} u^a - i x u) du with the
# path rotated to u = -is for a < 1 and taken on the real axis for a > 1; Talbot
# inversion of exp(-t p^a); int exp(-sqrt(t)) cos(t) dt with t = is
STABLE = [
    (0.5, 0.25, 1.0, 0.040581088137598131875),
    (1.5, 0.4, 1.0, 0.12686726874657007375),
    (1.5, 0.0, 2.0, 0.084539623126137520057),
]
SUBORDINATOR = [
    (0.3, 1.0, 1.0, 0.11715700256591614931),
    (0.8, 2.0, 1.5, 0.53408540880940439541),
]
PHI_HALF_AT_1 = 0.27051358016221414426


def levy(t, y):
    return t / (2 * math.sqrt(math.pi) * y**1.5) * math.exp(-t * t / (4 * y))


def test_params_validation():
    with pytest.raises(DomainError):
        StableParams(1.0)
    with pytest.raises(DomainError):
        StableParams(0.5, 0.6)
    with pytest.raises(DomainError):
        SubordinatorParams(1.2)
    StableParams(1.5, 0.4)


@pytest.mark.parametrize("a,g,x,ref", STABLE)
def test_stable_pdf_regression(a, g, x, ref):
    p = StableParams(a, g)
    assert abs(stable.stable_pdf(p, x) - ref) < 1e-10
    assert abs(stable.stable_pdf_inversion(p, x) - ref) < 1e-9


@pytest.mark.parametrize("a,t,y,ref", SUBORDINATOR)
def test_subordinator_regression(a, t, y, ref):
    assert abs(stable.subordinator_density(a, t, y) - ref) < 1e-9
    assert abs(stable.subordinator_density_lfunc(a, t, y) - ref) < 1e-9


@pytest.mark.parametrize("t,y", [(0.5, 0.5), (1, 1), (2, 2), (1, 0.3)])
def test_levy_closed_form(t, y):
    assert abs(stable.subordinator_density(0.5, t, y) - levy(t, y)) < 1e-9
    assert abs(stable.subordinator_density_lfunc(0.5, t, y) - levy(t, y)) < 1e-9


def test_subordinator_flat_at_origin():
    assert abs(stable.subordinator_density_lfunc(0.9, 1.0, 1e-3)) < 1e-12


def test_subordinator_values_vectorized():
    y = np.array([0.2, 1.0, 3.0])
    v = stable.subordinator_density_values(0.3, 1.0, y)
    ref = [stable.subordinator_density_lfunc(0.3, 1.0, float(t)) for t in y]
    assert np.max(np.abs(v - ref)) < 1e-10


def test_cauchy_density_values():
    assert abs(stable.cauchy_density_integral(0.7, 0.0) - math.gamma(1 / 0.7) / 0.7) < 1e-10
    assert abs(stable.cauchy_density_integral(0.5, 1.0) - PHI_HALF_AT_1) < 1e-10
    for x in np.linspace(0, 10, 11):
        assert abs(stable.cauchy_density_integral(1, x) - 1 / (1 + x * x)) < 1e-10


def test_phi1_total_mass():
    r = quadrature.integrate_semi_infinite(lambda x: stable.cauchy_density_integral(1, x) * 2 / math.pi)
    assert abs(r.value - 1) < 1e-9


@pytest.mark.parametrize("x", [1e3, 1e5, 1e8])
def test_cauchy_density_far_tail(x):
    assert abs(stable.cauchy_density_integral(1, x) * (1 + x * x) - 1) < 1e-9


def test_positivity_scan_report():
    rep = stable.positivity_scan(lambda x: stable.stable_pdf(StableParams(1.5, 0.4), x), np.linspace(0.1, 10, 21))
    assert rep.ok and rep.min_value >= -1e-10
    bad = stable.positivity_scan(lambda x: x - 1, [0.0, 2.0])
    assert not bad.ok and bad.argmin == 0.0 and bad.violations == ((0.0, -1.0),)


def test_normalization_subordinator():
    for a in (0.3, 0.5, 0.8):
        r = stable.normalization_check(lambda y, a=a: stable.subordinator_density_values(a, 1.0, y), vectorized=True)
        assert abs(r.value - 1) < 1e-6


@given(st.floats(0.2, 0.9), st.floats(0.3, 3), st.floats(0.2, 4))
def test_dilation_scaling(a, t, y):
    lhs = stable.subordinator_density_lfunc(a, t, y)
    rhs = t ** (-1 / a) * stable.subordinator_density_lfunc(a, 1.0, y * t ** (-1 / a))
    assert abs(lhs - rhs) <= 1e-8 * abs(rhs) + 1e-12


@given(st.floats(0.2, 1.9).filter(lambda a: abs(a - 1) > 0.05), st.floats(-1, 1), st.floats(0.01, 20))
def test_stable_pdf_nonnegative(a, gfrac, x):
    g = 0.95 * gfrac * min(a, 2 - a)
    assert stable.stable_pdf(StableParams(a, g), x) >= -1e-10


@given(st.floats(0.2, 2.0), st.floats(0, 20))
def test_cauchy_density_nonnegative(a, x):
    assert stable.cauchy_density_integral(a, x) >= -1e-10


@given(st.floats(0.3, 1.9).filter(lambda a: abs(a - 1) > 0.05), st.floats(-0.9, 0.9), st.floats(0.1, 5))
def test_stable_pdf_matches_inversion(a, gfrac, x):
    p = StableParams(a, gfrac * min(a, 2 - a))
    assert abs(stable.stable_pdf(p, x) - stable.stable_pdf_inversion(p, x)) < 1e-8


def test_symmetric_even():
    p = StableParams(1.5, 0.0)
    assert stable.stable_pdf(p, -0.7) == stable.stable_pdf(p, 0.7)
    with pytest.raises(DomainError):
        stable.stable_pdf(StableParams(1.5, 0.2), -0.7)
