"""Named invariant suites shared by the command line and the test-suite.

Each suite returns a :class:`VerifyReport`; a case records the largest error
seen on its grid in the metric the case is stated in (absolute, or relative
with a ``1 +`` floor) and the tolerance it is held to.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List

import mpmath
import numpy as np
from scipy import special

from . import halfline, holo, lfunc, stable
from .halfline import HalfLineFunction, HoloFunction, laplace_image, make_test_function, riemann_liouville
from .holo import (
    GroupElementG,
    LineRule,
    OperatorContext,
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
    hardy_norm,
    identity_g,
    image,
    inverse_g,
)
from .lfunc import LParams
from .quadrature import QuadSpec

__all__ = ["Case", "VerifyReport", "SUITES", "run_suite"]


@dataclass(frozen=True)
class Case:
    name: str
    max_abs_err: float
    tolerance: float
    passed: bool

    def as_row(self) -> Dict[str, object]:
        return {"name": self.name, "max_abs_err": self.max_abs_err, "tolerance": self.tolerance, "pass": self.passed}


@dataclass
class VerifyReport:
    suite: str
    cases: List[Case] = field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.cases)

    def add(self, name: str, err, tol: float) -> Case:
        e = float(np.max(np.abs(np.asarray(err, complex)))) if np.size(err) else 0.0
        c = Case(name, e, tol, bool(e <= tol))
        self.cases.append(c)
        return c

    def as_dict(self) -> Dict[str, object]:
        return {"suite": self.suite, "overall": self.overall, "cases": [c.as_row() for c in self.cases]}


def _rel(a, b):
    a, b = np.asarray(a, complex), np.asarray(b, complex)
    return np.abs(a - b) / (1 + np.abs(b))


def _L(alpha, beta, z):
    return lfunc.eval(LParams(alpha, beta), z).value


def _phi_image():
    phi = make_test_function("phi", c=1, d=1, k=0)
    return phi, laplace_image(phi)


# ---------------------------------------------------------------- lfunc


def suite_lfunc_symmetries() -> VerifyReport:
    rep = VerifyReport("lfunc-symmetries")
    zs = [0.5, 1, 2, 1 + 1j]
    errs = [abs(_L(1, b, z) - special.gamma(b) * (1 + z) ** (-b)) / abs(special.gamma(b) * (1 + z) ** (-b))
            for b in (0.5, 1, 2, 1 + 1j) for z in zs]
    rep.add("alpha=1 closed form", errs, 1e-10)

    errs = []
    for a in (0.4, 2.5):
        for b in (0.5, 1.5):
            for z in (0.5, 2, 7):
                rhs = z ** (-b / a) / a * _L(1 / a, b / a, z ** (-1 / a))
                errs.append(abs(_L(a, b, z) - rhs) / abs(rhs))
    rep.add("inversion a -> 1/a", errs, 1e-8)

    errs = []
    for a in (0.3, 0.7):
        for z in (0.5, 3):
            rhs = -(_L(a, 1, z) - 1) / (a * z)
            errs.append(abs(_L(a, a, z) - rhs) / abs(rhs))
    rep.add("beta = alpha reduction", errs, 1e-9)

    errs = [abs(_L(a, 1, z) + _L(1 / a, 1, z ** (-1 / a)) - 1) for a in (0.5, 2, 3) for z in (0.5, 1, 4)]
    rep.add("complementary sum equals 1", errs, 1e-9)

    errs = []
    for z in (0.5, 1, 2):
        ref = 1 - mpmath.sqrt(mpmath.pi) * z / 2 * mpmath.exp(mpmath.mpf(z) ** 2 / 4) * mpmath.erfc(mpmath.mpf(z) / 2)
        errs.append(abs(_L(0.5, 1, z) - complex(ref)))
    rep.add("erfc anchor at alpha=1/2", errs, 1e-9)

    errs = []
    for a in (0.2, 0.4, 0.6, 0.8):
        for b in (0.5, 1, 2):
            for r in (0.1, 1, 5):
                for ph in (0, math.pi / 4, -math.pi / 4):
                    z = r * cmath.exp(1j * ph)
                    p = LParams(a, b)
                    s = lfunc.eval_series_small_alpha(p, z).value
                    errs.append(abs(s - lfunc.eval_barnes(p, z).value) / (1 + abs(s)))
                    errs.append(abs(s - lfunc.eval_laplace_repr(a, b, z, 1.0)) / (1 + abs(s)))
    rep.add("series, Barnes and Laplace integral agree", errs, 1e-8)

    t1, t2 = (0.5, 1, 1), (0.8, 1.5, 2)
    q = lfunc.product_integral(*t1, *t2)
    c1 = lfunc.product_closed_form(*t1, *t2)
    c2 = lfunc.product_closed_form(*t2, *t1)
    rep.add("product integral closed form", [abs(q - c1) / abs(q), abs(q - c2) / abs(q)], 1e-7)
    return rep


# ---------------------------------------------------------------- stable


def suite_stable_normalization() -> VerifyReport:
    rep = VerifyReport("stable-normalization")
    errs = []
    for t in (0.5, 1, 2):
        for y in (0.5, 1, 2):
            levy = t / (2 * math.sqrt(math.pi) * y**1.5) * math.exp(-t * t / (4 * y))
            errs.append(abs(stable.subordinator_density_lfunc(0.5, t, y) - levy))
    rep.add("alpha=1/2 Levy closed form", errs, 1e-8)

    errs = []
    for a in (0.3, 0.5, 0.8):
        r = stable.normalization_check(lambda y, a=a: stable.subordinator_density_values(a, 1.0, y), vectorized=True)
        errs.append(r.value.real - 1)
    rep.add("subordinator mass", errs, 1e-6)

    errs = []
    for a in (0.3, 0.5, 0.8):
        g = HalfLineFunction(lambda y, a=a: stable.subordinator_density_lfunc(a, 1.0, y) if y > 0 else 0.0)
        for z in (0.5, 1, 2):
            ref = math.exp(-z**a)
            errs.append(abs(halfline.laplace(g, z, QuadSpec(1e-9, 1e-13)) - ref) / ref)
    rep.add("Laplace transform exp(-t z^alpha)", errs, 1e-6)

    errs = []
    for a in (0.3, 0.7, 1.3, 2.0):
        r = stable.positivity_scan(lambda x, a=a: stable.cauchy_density_integral(a, x), np.linspace(0, 20, 81))
        errs.append(max(0.0, -r.min_value - 1e-10))
    rep.add("phi_alpha >= -1e-10 on [0, 20]", errs, 0.0)

    xs = np.linspace(0, 5, 11)
    errs = [stable.cauchy_density_integral(1, x) - 1 / (1 + x * x) for x in xs]
    errs += [stable.cauchy_density_integral(2, x) - math.sqrt(math.pi) / 2 * math.exp(-x * x / 4) for x in xs]
    rep.add("phi_1 and phi_2 closed forms", errs, 1e-8)

    errs = []
    for a in (0.3, 0.5, 0.8):
        for t in (0.5, 2.0):
            for y in (0.5, 1, 2):
                lhs = stable.subordinator_density_lfunc(a, t, y)
                rhs = t ** (-1 / a) * stable.subordinator_density_lfunc(a, 1.0, y * t ** (-1 / a))
                # ratio to the combined bound 1e-8 |g| + 1e-12; densities deep in
                # the flat region are at the absolute tolerance
                errs.append(abs(lhs - rhs) / (1e-8 * abs(rhs) + 1e-12))
    rep.add("dilation scaling (error / combined bound)", errs, 1.0)

    errs = []
    for a, g in ((0.5, 0.0), (1.5, 0.0), (0.7, 0.3), (1.4, -0.4)):
        p = stable.StableParams(a, g)
        for x in (0.5, 1, 2):
            errs.append(stable.stable_pdf(p, x) - stable.stable_pdf_inversion(p, x))
    rep.add("stable pdf against Fourier inversion", errs, 1e-8)
    return rep


# ---------------------------------------------------------------- fractional calculus


def suite_fraccalc_semigroup() -> VerifyReport:
    rep = VerifyReport("fraccalc-semigroup")
    f = make_test_function("psi", k=2, d=1)
    xs = (0.5, 1.0, 2.0)
    for r, p in ((0.5, 0.5), (0.3, 1.2), (-1.0, 2.0)):
        inner = HalfLineFunction(lambda t, p=p: riemann_liouville(f, p, t) if t > 0 else 0.0, singularity_exponent=3.0)
        errs = [_rel(riemann_liouville(inner, r, x), riemann_liouville(f, r + p, x)) for x in xs]
        rep.add(f"J_{r} J_{p} = J_{r + p}", errs, 1e-6)

    g = make_test_function("psi", k=1, d=1)
    errs = []
    for r in (0.5, 1.0):
        Jg = HalfLineFunction(lambda t, r=r: riemann_liouville(g, r, t) if t > 0 else 0.0, singularity_exponent=2.0)
        for z in (0.5, 1.0, 2.0):
            ref = z ** (-r) * special.gamma(2) / (1 + z) ** 2
            errs.append(abs(halfline.laplace(Jg, z) - ref) / abs(ref))
    rep.add("Laplace of J_r is z^-r times Laplace", errs, 1e-7)

    errs = []
    for fn in (make_test_function("phi", c=1, d=1, k=0), make_test_function("psi", k=1, d=1)):
        F = laplace_image(fn)
        errs += [halfline.inverse_laplace(F, x) - fn(x) for x in np.linspace(0.2, 5, 7)]
    rep.add("inverse Laplace round trip", errs, 1e-6)
    return rep


# ---------------------------------------------------------------- operators


_HARDY_CTX = OperatorContext(spec=QuadSpec(rel_tol=1e-6, abs_tol=1e-8))


def conjugation_error(alpha: float, h: float) -> np.ndarray:
    r"""Relative defect of :math:`A_\alpha D_h A_\alpha^{-1} = D_{\alpha h}` on :math:`\mathcal{L}\varphi_{1,1,0}`.

    For :math:`\alpha<1` the nested form is used literally. For
    :math:`\alpha>1` the outer kernel cannot be moved off the boundary, so the
    equivalent form :math:`D_hA_{1/\alpha} = A_{1/\alpha}D_{\alpha h}` is
    checked instead.
    """
    _, F = _phi_image()
    z = np.array([0.7, 1, 1 + 0.5j])
    if alpha < 1:
        H = cached(image(apply_A, 1 / alpha, F, rule=LineRule(c=-0.5)))
        G = cached(image(frac_diff, H, h, rule=LineRule(c=0.5)))
        return _rel(apply_A(alpha, G, z, rule=LineRule(c=1.0)), frac_diff(F, alpha * h, z))
    H = cached(image(apply_A, 1 / alpha, F))
    lhs = frac_diff(H, h, z, rule=LineRule(c=0.35))
    rhs = apply_A(1 / alpha, cached(image(frac_diff, F, alpha * h)), z, rule=LineRule(c=0.35))
    return _rel(rhs, lhs)


def hardy_defect(alpha: float = 0.5, a: float = 2.0) -> float:
    r"""Relative change of the Hardy norm under :math:`|\alpha|^{1/2}a^{1/2}\widetilde R((\alpha-1)/2,\alpha,a)`."""
    _, F = _phi_image()
    n0 = hardy_norm(F)
    G = image(apply_R, (alpha - 1) / 2, alpha, a, F, ctx=_HARDY_CTX, rule=LineRule(c=-0.5, step=0.5))
    n1 = math.sqrt(abs(alpha) * a) * hardy_norm(G, _HARDY_CTX, rule=LineRule(step=0.5))
    return abs(n1 - n0) / n0


def transform_oracle_errors() -> Dict[str, float]:
    r"""Sup error of each kernel operator against :math:`\mathcal{L}\circ(\text{half-line map})\circ\mathcal{L}^{-1}`."""
    phi, F = _phi_image()
    z = np.array([0.5, 1, 2, 1 + 1j])
    x = np.array([0.5, 1, 2])
    out = {}

    def lap(fn):
        g = HalfLineFunction(fn, decay_class=halfline.DecayClass.SUB_EXPONENTIAL)
        return np.array([halfline.laplace(g, complex(v), QuadSpec(1e-11, 1e-14)) for v in z])

    out["A"] = float(np.max(np.abs(apply_A(0.5, F, z) - lap(lambda t: phi(t**0.5)))))
    out["R"] = float(np.max(np.abs(apply_R(0.5, 0.5, 2.0, F, z) - lap(lambda t: t**0.5 * phi(2 * t**0.5)))))
    out["T"] = float(np.max(np.abs(apply_T(0.5, 1.0, F, z) - lap(lambda t: cmath.exp(1j * t**0.5) * phi(t)))))

    def inv(G):
        return np.array([halfline.inverse_laplace(G, float(v)) for v in x])

    out["B"] = float(np.max(np.abs(apply_B(0.5, phi, x) - inv(HoloFunction(lambda p: F(p**0.5))))))
    e = SemigroupElementQ(0.5, 0.5, cmath.exp(0.2j))
    out["Q"] = float(np.max(np.abs(apply_Q(e, phi, x) - inv(HoloFunction(lambda p: p**e.theta * F(e.a * p**e.alpha))))))
    return out


def suite_operator_conjugation() -> VerifyReport:
    rep = VerifyReport("operator-conjugation")
    _, F = _phi_image()
    z = np.array([0.7, 1, 1 + 0.5j])
    for alpha in (0.5, 2.0):
        for h in (0.5, 1.0):
            rep.add(f"A_{alpha} D_{h} A_{alpha}^-1 = D_{alpha * h}", conjugation_error(alpha, h), 1e-6)

    H = cached(image(apply_A, 2.0, F, rule=LineRule(c=-0.5)))
    zH = HoloFunction(lambda u: u * H(u), vectorized=lambda u: np.asarray(u) * H.values(u))
    zF = HoloFunction(lambda u: u * F(u), vectorized=lambda u: np.asarray(u) * F.values(u), abscissa=F.abscissa)
    lhs = apply_A(0.5, zH, z, rule=LineRule(c=0.5))
    rep.add("A_a (z A_1/a F) = (1/a) D_1-a (z F)", _rel(lhs, 2 * frac_diff(zF, 0.5, z)), 1e-6)

    # U_a V_b U_a^-1 = V_{b^(1/a)} with U_a = R(0, a, 1) and V_b = R(0, 1, b)
    U, V, Ui = GroupElementG(1, 0, 0.5, 1), GroupElementG(1, 0, 1, 2.0), GroupElementG(1, 0, 2, 1)
    e = compose_g(compose_g(U, V), Ui)
    rep.add("dilation conjugation (exact parameters)", [e.lam - 1, e.h, e.alpha - 1, e.a - 4.0], 1e-12)
    phi = make_test_function("phi", c=1, d=1, k=0)
    lhs = U.apply_halfline(V.apply_halfline(Ui.apply_halfline(phi)))
    rep.add("dilation conjugation (half-line)", [lhs(t) - phi(4 * t) for t in (0.3, 1.0, 2.5)], 1e-15)
    K = cached(image(apply_R, 0.0, 1.0, 2.0, H, rule=LineRule(c=0.25)))
    lhs = apply_A(0.5, K, z, rule=LineRule(c=1.0))
    rep.add("dilation conjugation (kernels)", _rel(lhs, apply_R(0.0, 1.0, 4.0, F, z)), 1e-6)

    T = cached(image(apply_T, 0.8, 1.0, H, rule=LineRule(c=0.25)))
    lhs = apply_A(0.5, T, z, rule=LineRule(c=1.0))
    rep.add("A_a T_b A_a^-1 = T_ab", _rel(lhs, apply_T(0.4, 1.0, F, z)), 1e-6)

    D = cached(image(frac_diff, F, 0.5))
    rep.add("D_1/2 D_1/2 = D_1", _rel(frac_diff(D, 0.5, z, rule=LineRule(c=0.35)), frac_diff(F, 1.0, z)), 1e-6)

    rep.add("Hardy norm preserved by normalized R", hardy_defect(), 1e-4)
    for name, err in transform_oracle_errors().items():
        rep.add(f"transform oracle {name}", err, 1e-5)
    return rep


# ---------------------------------------------------------------- algebra


def random_g(rng: random.Random) -> GroupElementG:
    lam = complex(rng.uniform(0.2, 3), rng.uniform(-1, 1))
    alpha = rng.choice([-1, 1]) * rng.uniform(0.2, 3)
    return GroupElementG(lam, complex(rng.uniform(-2, 2), rng.uniform(-1, 1)), alpha, rng.uniform(0.2, 3))


def random_q(rng: random.Random) -> SemigroupElementQ:
    alpha = rng.uniform(0.05, 0.95)
    bound = (1 - alpha) * math.pi / 2
    arg = rng.uniform(-0.95, 0.95) * bound
    return SemigroupElementQ(complex(rng.uniform(-2, 2), rng.uniform(-1, 1)), alpha, rng.uniform(0.2, 3) * cmath.exp(1j * arg))


def g_distance(e1: GroupElementG, e2: GroupElementG) -> float:
    return max(abs(e1.lam - e2.lam) / max(1, abs(e2.lam)), abs(e1.h - e2.h), abs(e1.alpha - e2.alpha),
               abs(e1.a - e2.a) / max(1, e2.a))


def suite_group_laws(n: int = 100, seed: int = 20240601) -> VerifyReport:
    rep = VerifyReport("group-laws")
    rng = random.Random(seed)
    assoc, inv, unit = [], [], []
    for _ in range(n):
        a, b, c = random_g(rng), random_g(rng), random_g(rng)
        assoc.append(g_distance(compose_g(compose_g(a, b), c), compose_g(a, compose_g(b, c))))
        inv.append(g_distance(compose_g(a, inverse_g(a)), identity_g()))
        inv.append(g_distance(compose_g(inverse_g(a), a), identity_g()))
        unit.append(g_distance(compose_g(a, identity_g()), a))
    rep.add("compose_g associative", assoc, 1e-12)
    rep.add("compose_g inverse", inv, 1e-12)
    rep.add("compose_g identity", unit, 1e-12)

    margins, qassoc = [], []
    for _ in range(n):
        a, b, c = random_q(rng), random_q(rng), random_q(rng)
        _, ab = compose_q(a, b)
        margins.append(max(0.0, -ab.margin))
        p1, ab = compose_q(a, b)
        p2, abc1 = compose_q(ab, c)
        q1, bc = compose_q(b, c)
        q2, abc2 = compose_q(a, bc)
        qassoc += [p1 * p2 - q1 * q2, abc1.theta - abc2.theta, abc1.alpha - abc2.alpha,
                   (abc1.a - abc2.a) / abs(abc2.a)]
    rep.add("compose_q closure margin >= 0", margins, 0.0)
    rep.add("compose_q associative", qassoc, 1e-12)
    return rep


# ---------------------------------------------------------------- Zolotarev


def suite_zolotarev() -> VerifyReport:
    rep = VerifyReport("zolotarev")
    phi, F = _phi_image()
    x = np.array([0.5, 1.0, 2.0])
    b4 = apply_B(0.25, phi, x)
    Bh = HalfLineFunction(lambda y: complex(apply_B(0.5, phi, y)), vectorized=lambda y: apply_B(0.5, phi, y))
    rep.add("B_1/2 B_1/2 = B_1/4", apply_B(0.5, Bh, x) - b4, 1e-5)

    J1 = HalfLineFunction(lambda y: riemann_liouville(phi, 1.0, y))
    Bf = HalfLineFunction(lambda y: complex(apply_B(0.5, phi, y)))
    rhs = np.array([riemann_liouville(Bf, 0.5, float(v)) for v in x])
    rep.add("B_1/2 J_1 = J_1/2 B_1/2", apply_B(0.5, J1, x) - rhs, 1e-5)

    cols = []
    for a in (0.5, 0.7):
        for y in (0.5, 1.0, 2.0):
            r = stable.normalization_check(lambda t, a=a, y=y: holo.zolotarev_kernel(a, t, y), vectorized=True)
            cols.append(r.value.real - 1)
    rep.add("kernel columns integrate to 1", cols, 1e-5)

    levy = math.exp(-0.25) / (2 * math.sqrt(math.pi))
    rep.add("alpha=1/2 kernel Levy anchor", holo.zolotarev_kernel(0.5, 1.0, 1.0) - levy, 1e-10)

    e1, e2 = SemigroupElementQ(0.5, 0.5, cmath.exp(0.1j)), SemigroupElementQ(0.25, 0.6, 1.5)
    pre, e12 = compose_q(e1, e2)
    inner = HalfLineFunction(lambda y: complex(apply_Q(e2, phi, y)), vectorized=lambda y: apply_Q(e2, phi, y))
    rep.add("Q composition law", apply_Q(e1, inner, x) - pre * apply_Q(e12, phi, x), 1e-5)

    e = SemigroupElementQ(-1.5, 0.5, 1.0)
    G = HoloFunction(lambda p: p**-1.5 * F(p**0.5))
    ref = np.array([halfline.inverse_laplace(G, float(v)) for v in x])
    rep.add("Q shift through J_2", apply_Q(e, phi, x) - ref, 1e-5)

    bro = [holo.q_kernel(SemigroupElementQ(0.3, 0.6, cmath.exp(0.2j)), t, y)
           - holo.q_kernel_bromwich(SemigroupElementQ(0.3, 0.6, cmath.exp(0.2j)), t, y)
           for t in (0.5, 1, 2) for y in (0.5, 1, 2)]
    rep.add("Q kernel against Bromwich quadrature", bro, 1e-7)
    return rep


SUITES: Dict[str, Callable[[], VerifyReport]] = {
    "lfunc-symmetries": suite_lfunc_symmetries,
    "stable-normalization": suite_stable_normalization,
    "fraccalc-semigroup": suite_fraccalc_semigroup,
    "operator-conjugation": suite_operator_conjugation,
    "group-laws": suite_group_laws,
    "zolotarev": suite_zolotarev,
}


def run_suite(name: str) -> List[VerifyReport]:
    """Run one suite by name, or every suite for ``"all"``."""
    if name == "all":
        return [fn() for fn in SUITES.values()]
    if name not in SUITES:
        raise KeyError(name)
    return [SUITES[name]()]
