import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import special

from lfrac import halfline
from lfrac.errors import DomainError
from lfrac.halfline import DecayClass, HalfLineFunction, HoloClass, HoloFunction, laplace_image, make_test_function

# mpmath (30 digits): int_0^inf exp(-1/x - 2x) dx, equal to sqrt(2) K_1(2 sqrt 2)
LAPLACE_PHI_AT_1 = 0.069833737007646571429
# mpmath: (1/Gamma(1/2)) int_0^1 y^2 e^{-y} (1-y)^{-1/2} dy
RL_HALF_PSI2_AT_1 = 0.25920973219444203477


@pytest.fixture(scope="module")
def phi():
    return make_test_function("phi", c=1, d=1, k=0)


def test_families(phi):
    psi = make_test_function("psi", k=1, d=1)
    assert phi(0.0) == 0 and phi.decay_class is DecayClass.SCHWARTZ_PLUS
    assert abs(psi(1.0) - math.exp(-1)) < 1e-15
    assert abs(phi(50.0) * math.exp(25)) < 1e-9
    q = halfline.flatness_quotients(phi)
    assert np.all(q[:, -1] < q[:, 0]) and np.all(q[:, -1] < 1e-30)
    assert make_test_function("phi", c=1, d=0).decay_class is DecayClass.SUB_EXPONENTIAL


def test_family_validation():
    with pytest.raises(DomainError):
        make_test_function("phi", c=0)
    with pytest.raises(DomainError):
        make_test_function("psi", k=-1.5)
    with pytest.raises(DomainError):
        make_test_function("power")
    with pytest.raises(DomainError):
        make_test_function("nope")
    with pytest.raises(DomainError):
        make_test_function("psi", k=1, q=2)


def test_vectorized_matches_scalar(phi):
    x = np.array([0.0, 0.1, 1.0, 7.0])
    assert np.allclose(phi.values(x), [phi(float(v)) for v in x], rtol=1e-15, atol=0)


def test_laplace_examples(phi):
    psi1, psi0 = make_test_function("psi", k=1, d=1), make_test_function("psi", k=0, d=1)
    for z in (0.5, 1, 2 + 1j):
        assert abs(halfline.laplace(psi1, z) - (1 + z) ** -2) < 1e-11
    assert abs(halfline.laplace(psi0, 0.5) - 1 / 1.5) < 1e-11
    assert abs(halfline.laplace(phi, 1.0) - LAPLACE_PHI_AT_1) < 1e-12
    assert abs(laplace_image(phi)(1.0) - LAPLACE_PHI_AT_1) < 1e-14


def test_laplace_divergence():
    with pytest.raises(DomainError):
        halfline.laplace(make_test_function("psi", k=0, d=1), -2.0)


@pytest.mark.parametrize("mu", [0.5, 1.0, 2.0, 3.5])
def test_weighted_laplace_exponential(mu):
    u = 0.7
    f = HalfLineFunction(lambda x: math.exp(-u * x), decay_rate=u, singularity_exponent=1.0)
    for z in (0.5, 1 + 1j):
        assert abs(halfline.weighted_laplace(f, z, mu) - (z + u) ** -mu) < 1e-10


def test_weighted_laplace_mu2():
    psi0 = make_test_function("psi", k=0, d=1)
    assert abs(halfline.weighted_laplace(psi0, 1.0, 2.0) - 0.25) < 1e-11


def test_inverse_laplace():
    F1 = HoloFunction(lambda z: 1 / (1 + z))
    F2 = HoloFunction(lambda z: (1 + z) ** -2)
    assert abs(halfline.inverse_laplace(F1, 1.0) - math.exp(-1)) < 1e-7
    assert abs(halfline.inverse_laplace(F2, 2.0) - 2 * math.exp(-2)) < 1e-7
    with pytest.raises(DomainError):
        halfline.inverse_laplace(F1, -1.0)


def test_round_trip(phi):
    F = laplace_image(phi)
    for x in np.linspace(0.2, 5, 9):
        assert abs(halfline.inverse_laplace(F, x) - phi(x)) < 1e-7


def test_mellin():
    e = make_test_function("psi", k=0, d=1)
    assert abs(halfline.mellin(e, 2.5) - special.gamma(2.5)) < 1e-10
    assert abs(halfline.mellin(make_test_function("psi", k=1, d=1), 1.0) - 1) < 1e-10
    for a in (0.5, 2.0):
        f = make_test_function("stretched_exp", alpha=a)
        assert abs(halfline.mellin(f, 1.5) - special.gamma(1.5 / a) / a) < 1e-9
    with pytest.raises(DomainError):
        halfline.mellin(e, -0.5)


def test_riemann_liouville_examples():
    psi = make_test_function("psi", k=1, d=1)
    for x in (0.5, 1, 3):
        assert abs(halfline.riemann_liouville(psi, 1.0, x) - (1 - (1 + x) * math.exp(-x))) < 1e-12
    power1 = make_test_function("power", s=1)
    assert abs(halfline.riemann_liouville(power1, 0.5, 1.0) - special.gamma(2) / special.gamma(2.5)) < 1e-12
    sq = make_test_function("power", s=2)
    assert abs(halfline.riemann_liouville(sq, -1.0, 3.0) - 6) < 1e-7
    psi2 = make_test_function("psi", k=2, d=1)
    assert abs(halfline.riemann_liouville(psi2, 0.5, 1.0) - RL_HALF_PSI2_AT_1) < 1e-12
    with pytest.raises(DomainError):
        halfline.riemann_liouville(psi, 0.5, 0.0)


def test_riemann_liouville_identity_order():
    psi = make_test_function("psi", k=1, d=1)
    assert abs(halfline.riemann_liouville(psi, 0.0, 1.2) - psi(1.2)) < 1e-7


@given(st.floats(0.1, 3), st.floats(0, 3), st.floats(0.1, 4))
def test_power_rule(r, s, x):
    f = make_test_function("power", s=s)
    ref = special.gamma(s + 1) / special.gamma(s + r + 1) * x ** (s + r)
    assert abs(halfline.riemann_liouville(f, r, x) - ref) <= 1e-9 * (1 + abs(ref))


@settings(max_examples=10)
@given(st.floats(0.1, 1.5), st.floats(0.1, 1.5), st.floats(0.3, 3))
def test_semigroup_property(r, p, x):
    f = make_test_function("power", s=1.5)
    inner = HalfLineFunction(lambda t: halfline.riemann_liouville(f, p, t) if t > 0 else 0.0, singularity_exponent=2.5)
    ref = halfline.riemann_liouville(f, r + p, x)
    assert abs(halfline.riemann_liouville(inner, r, x) - ref) <= 1e-7 * (1 + abs(ref))


@given(st.floats(0.2, 3), st.floats(0.2, 3), st.floats(0.2, 4))
def test_laplace_closed_forms_agree(c, d, z):
    f = make_test_function("phi", c=c, d=d, k=0.5)
    assert abs(halfline.laplace(f, z) - f.laplace_closed(np.array(z, complex))) < 1e-9


def test_schwartz_image_decay(phi):
    F = laplace_image(phi)
    assert F.holo_class is HoloClass.K
    assert halfline.boundary_decay_slope(F, 0.0, 50.0) < -5


def test_subexponential_image_decay():
    f = make_test_function("phi", c=1, d=0, k=0)
    F = laplace_image(f)
    assert F.holo_class is HoloClass.F
    for eps in (0.1, 1.0):
        assert halfline.boundary_decay_slope(F, eps, 200.0) < -4
