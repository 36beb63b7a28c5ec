import cmath
import math
import random

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special

from lfrac import halfline, holo, verify
from lfrac.errors import ConvergenceError, DomainError
from lfrac.halfline import HalfLineFunction, HoloFunction, laplace_image, make_test_function
from lfrac.holo import (
    GroupElementG,
    LineRule,
    SemigroupElementQ,
    apply_A,
    apply_B,
    apply_Q,
    apply_R,
    apply_T,
    cached,
    compose_g,
    compose_q,
    frac_diff,
    identity_g,
    image,
    indefinite_int,
    inverse_g,
)

Z = np.array([0.7, 1.0, 1 + 0.5j])


@pytest.fixture(scope="module")
def phi():
    return make_test_function("phi", c=1, d=1, k=0)


@pytest.fixture(scope="module")
def F(phi):
    return laplace_image(phi)


def rel(a, b):
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    return float(np.max(np.abs(a - b) / (1 + np.abs(b))))


# ---------------------------------------------------------------- group G


def close_g(e1, e2, tol=1e-12):
    return verify.g_distance(e1, e2) <= tol


def test_compose_g_example():
    e = compose_g(GroupElementG(1, 1, 2, 3), GroupElementG(1, 2, 0.5, 4))
    assert close_g(e, GroupElementG(9, 5, 1, 4 * math.sqrt(3)))


def test_inverse_g_examples():
    assert close_g(inverse_g(GroupElementG(1, 0, 2, 1)), GroupElementG(1, 0, 0.5, 1))
    assert close_g(inverse_g(GroupElementG(1, 1, 1, 2)), GroupElementG(2, -1, 1, 0.5))
    e = GroupElementG(2 - 1j, 0.3 + 0.2j, -1.7, 0.4)
    assert close_g(inverse_g(inverse_g(e)), e)
    assert close_g(compose_g(e, identity_g()), e)


def test_group_validation():
    with pytest.raises(DomainError):
        GroupElementG(0, 0, 1, 1)
    with pytest.raises(DomainError):
        GroupElementG(1, 0, 0, 1)
    with pytest.raises(DomainError):
        GroupElementG(1, 0, 1, -1)


def test_group_action_is_homomorphism(phi):
    e1, e2 = GroupElementG(1.5, 0.5, 2, 3), GroupElementG(0.5j, -1, -0.5, 2)
    lhs = e1.apply_halfline(e2.apply_halfline(phi))
    rhs = compose_g(e1, e2).apply_halfline(phi)
    for x in (0.3, 1.0, 2.2):
        assert abs(lhs(x) - rhs(x)) <= 1e-13 * (1 + abs(rhs(x)))


@given(st.integers(0, 2**32 - 1))
def test_group_laws_random(seed):
    rng = random.Random(seed)
    a, b, c = verify.random_g(rng), verify.random_g(rng), verify.random_g(rng)
    assert close_g(compose_g(compose_g(a, b), c), compose_g(a, compose_g(b, c)))
    assert close_g(compose_g(a, inverse_g(a)), identity_g())
    assert close_g(compose_g(inverse_g(a), a), identity_g())


# ---------------------------------------------------------------- semigroup Q


def test_compose_q_examples():
    p, e = compose_q(SemigroupElementQ(1, 0.5, 1), SemigroupElementQ(0, 0.5, 1))
    assert p == 1 and (e.theta, e.alpha, e.a) == (1, 0.25, 1)
    p, e = compose_q(SemigroupElementQ(0, 0.6, 1), SemigroupElementQ(0, 0.5, 1))
    assert p == 1 and e.alpha == pytest.approx(0.3) and e.theta == 0
    p, e = compose_q(SemigroupElementQ(2, 0.5, cmath.exp(1j * math.pi / 8)), SemigroupElementQ(1, 0.5, 1))
    assert abs(p - cmath.exp(1j * math.pi / 8)) < 1e-15
    assert abs(e.theta - 2.5) < 1e-15 and e.alpha == 0.25
    assert abs(e.a - cmath.exp(1j * math.pi / 16)) < 1e-15 and e.margin > 0


def test_semigroup_validation():
    with pytest.raises(DomainError):
        SemigroupElementQ(0, 1.0, 1)
    with pytest.raises(DomainError):
        SemigroupElementQ(0, 0.5, cmath.exp(0.9j))


@given(st.integers(0, 2**32 - 1))
def test_compose_q_closure_random(seed):
    rng = random.Random(seed)
    a, b = verify.random_q(rng), verify.random_q(rng)
    _, ab = compose_q(a, b)
    assert ab.margin >= 0


@given(st.floats(0.05, 0.95), st.floats(0.05, 0.95), st.floats(-1, 1), st.floats(-1, 1))
def test_compose_q_closure_at_the_edge(a1, a2, s1, s2):
    # arguments pushed to 99.9% of the admissible bound
    e1 = SemigroupElementQ(0.3, a1, cmath.exp(0.999j * s1 * (1 - a1) * math.pi / 2))
    e2 = SemigroupElementQ(-0.2, a2, 2 * cmath.exp(0.999j * s2 * (1 - a2) * math.pi / 2))
    _, e = compose_q(e1, e2)
    assert e.margin >= 0


# ---------------------------------------------------------------- D_h and I


def test_frac_diff_integer_order():
    G = HoloFunction(lambda z: 1 / (1 + z), vectorized=lambda z: 1 / (1 + np.asarray(z)), abscissa=-0.9)
    assert rel(frac_diff(G, 1.0, Z), (1 + Z) ** -2) < 1e-8


def test_frac_diff_half_order():
    G = HoloFunction(lambda z: (1 + z) ** -2, vectorized=lambda z: (1 + np.asarray(z)) ** -2, abscissa=-0.9)
    ref = special.gamma(2.5) * 2**-2.5
    assert abs(frac_diff(G, 0.5, 1.0) - ref) < 1e-8


def test_frac_diff_identity_and_semigroup(F):
    assert rel(frac_diff(F, 0.0, Z), F.values(Z)) < 1e-8
    D = cached(image(frac_diff, F, 0.5))
    assert rel(frac_diff(D, 0.5, Z, rule=LineRule(c=0.35)), frac_diff(F, 1.0, Z)) < 1e-6


def test_indefinite_integral(F):
    IF = cached(image(indefinite_int, F))
    assert rel(frac_diff(IF, 1.0, Z, rule=LineRule(c=0.35)), -F.values(Z)) < 1e-6
    h = 1e-4
    for z in (0.35 + 2j, 0.35 + 20j, 1 - 3j):
        d = (indefinite_int(F, z + h) - indefinite_int(F, z - h)) / (2 * h)
        assert abs(d - F(z)) < 1e-8
    assert rel(indefinite_int(F, Z, m=2), frac_diff(F, -2.0, Z)) < 1e-10


def test_R_matches_power_multiplier(F):
    assert rel(apply_R(0.5, 1.0, 1.0, F, Z), frac_diff(F, 0.5, Z)) < 1e-7


# ---------------------------------------------------------------- kernel operators


def test_A_identity_and_group_law(F):
    assert rel(apply_A(1.0, F, Z), F.values(Z)) < 1e-8
    H = cached(image(apply_A, 2.0, F, rule=LineRule(c=-0.5)))
    assert rel(apply_A(0.5, H, Z, rule=LineRule(c=0.5)), F.values(Z)) < 1e-6


def test_R_identity_and_dilation(phi, F):
    assert rel(apply_R(0.0, 1.0, 1.0, F, Z), F.values(Z)) < 1e-8
    # R(0,1,2) is f(x) -> f(2x), image F(z/2)/2
    assert rel(apply_R(0.0, 1.0, 2.0, F, Z), F.values(Z / 2) / 2) < 1e-8


def test_T_identity(F):
    assert rel(apply_T(0.5, 0.0, F, Z), F.values(Z)) < 1e-8


# mpmath (30 digits): direct quadrature of L[map(phi)] at z
ORACLE_A2 = 0.039834931225760090246         # int phi(x^2) e^{-x} dx
ORACLE_RM1 = 0.084783547996802991543        # int phi(x)/x e^{-x} dx
ORACLE_D05 = 0.070900620992864093249        # int x^{1/2} phi(x) e^{-x} dx
ORACLE_DM2 = 0.13966747401529314286         # int x^{-2} phi(x) e^{-x} dx
ORACLE_B025 = 0.02115588388387253446        # Talbot inversion of F(p^{1/4}) at 1
ORACLE_QM15 = 0.071085185590147933657       # Talbot inversion of p^{-3/2} F(p^{1/2}) at 1


def test_transform_oracles_frozen(phi, F):
    assert abs(apply_A(2.0, F, 1.0) - ORACLE_A2) < 1e-8
    assert abs(apply_R(-1.0, 1.0, 1.0, F, 1.0) - ORACLE_RM1) < 1e-8
    assert abs(frac_diff(F, 0.5, 1.0) - ORACLE_D05) < 1e-8
    assert abs(frac_diff(F, -2.0, 1.0) - ORACLE_DM2) < 1e-8
    assert abs(apply_B(0.25, phi, 1.0) - ORACLE_B025) < 1e-8
    assert abs(apply_Q(SemigroupElementQ(-1.5, 0.5, 1.0), phi, 1.0) - ORACLE_QM15) < 1e-8


def test_T_transform_oracle(phi, F):
    g = HalfLineFunction(lambda x: cmath.exp(1j * 0.7 * x**0.4) * phi(x), decay_rate=1.0)
    z = np.array([0.5, 1 + 1j])
    ref = [halfline.laplace(g, complex(v)) for v in z]
    assert np.max(np.abs(apply_T(0.4, 0.7, F, z) - ref)) < 1e-7


@pytest.mark.parametrize("alpha,h", [(0.5, 0.5), (2.0, 1.0)])
def test_conjugation(alpha, h):
    assert np.max(verify.conjugation_error(alpha, h)) < 1e-6


# ---------------------------------------------------------------- Zolotarev and Q


def test_zolotarev_anchor_and_origin():
    levy = math.exp(-0.25) / (2 * math.sqrt(math.pi))
    assert abs(holo.zolotarev_kernel(0.5, 1.0, 1.0) - levy) < 1e-12
    assert abs(holo.zolotarev_kernel(0.7, 1e-3, 1.0)) < 1e-12


@given(st.floats(0.5, 4), st.floats(0.3, 3))
def test_zolotarev_levy_property(x, y):
    levy = y / (2 * math.sqrt(math.pi) * x**1.5) * math.exp(-y * y / (4 * x))
    assert abs(holo.zolotarev_kernel(0.5, x, y) - levy) < 1e-10


def test_zolotarev_column_mass():
    from lfrac import stable

    r = stable.normalization_check(lambda t: holo.zolotarev_kernel(0.7, t, 1.0), vectorized=True)
    assert abs(r.value - 1) < 1e-5


def test_Q_is_B_at_theta_zero(phi):
    x = np.array([0.5, 1.0, 2.0])
    assert np.max(np.abs(apply_Q(SemigroupElementQ(0, 0.5, 1), phi, x) - apply_B(0.5, phi, x))) < 1e-10


def test_Q_composition(phi):
    x = np.array([0.5, 1.0, 2.0])
    e = SemigroupElementQ(0, 0.5, 1)
    inner = HalfLineFunction(lambda y: complex(apply_Q(e, phi, y)), vectorized=lambda y: apply_Q(e, phi, y))
    pre, ee = compose_q(e, e)
    assert np.max(np.abs(apply_Q(e, inner, x) - pre * apply_Q(ee, phi, x))) < 1e-5


def test_Q_shift_routing(phi):
    x = 1.3
    J2 = HalfLineFunction(lambda y: complex(apply_Q(SemigroupElementQ(0.5, 0.5, 1), phi, y)) if y > 0 else 0j)
    via = halfline.riemann_liouville(J2, 2.0, x)
    assert abs(apply_Q(SemigroupElementQ(-1.5, 0.5, 1), phi, x) - via) < 1e-8


def test_q_kernel_bromwich():
    e = SemigroupElementQ(0.3, 0.6, cmath.exp(0.2j))
    for x, y in ((0.5, 1.0), (2.0, 0.7)):
        assert abs(holo.q_kernel(e, x, y) - holo.q_kernel_bromwich(e, x, y)) < 1e-8


def test_hardy_norm_plancherel(F):
    # ||L phi||^2 = int phi^2 dx = int exp(-2/x - 2x) dx = 2 K_1(4)
    assert abs(holo.hardy_norm(F) ** 2 - 2 * special.k1(4)) < 1e-10


def test_hardy_norm_slow_decay_is_reported():
    G = HoloFunction(lambda z: 1 / (1 + z), vectorized=lambda z: 1 / (1 + np.asarray(z)), abscissa=-0.9)
    with pytest.raises(ConvergenceError):
        holo.hardy_norm(G)


def test_operator_context():
    with pytest.raises(DomainError):
        holo.OperatorContext(mu=0)
