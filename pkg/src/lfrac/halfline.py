r"""Functions on the half-line and their Laplace images.

Test families
-------------
``phi``
    :math:`\varphi_{c,d,k}(x) = x^k e^{-c/x - dx}`, flat at 0. With
    :math:`d>0` it is rapidly decreasing; with :math:`d=0` it grows at most
    polynomially. Laplace image
    :math:`2(c/b)^{(k+1)/2}K_{k+1}(2\sqrt{cb})`, :math:`b=d+z`.
``psi``
    :math:`\psi_{k,d}(x) = x^k e^{-dx}`, image :math:`\Gamma(k+1)(d+z)^{-k-1}`.
``power``
    :math:`x^s`, image :math:`\Gamma(s+1)z^{-s-1}`.
``stretched_exp``
    :math:`e^{-x^\alpha}`.

Riemann-Liouville integration

.. math::

    J_r f(x) = \frac{1}{\Gamma(r)}\int_0^x f(y)(x-y)^{r-1}\,dy,

continued to :math:`r\le0` by :math:`J_r = \frac{d^n}{dx^n}J_{r+n}`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

import numpy as np
from scipy import special

from .errors import ConvergenceError, DomainError
from .quadrature import (
    DEFAULT_SPEC,
    QuadSpec,
    gamma_complex,
    integrate_finite,
    integrate_semi_infinite,
    integrate_vertical_line,
)

__all__ = [
    "DecayClass",
    "HoloClass",
    "HalfLineFunction",
    "HoloFunction",
    "make_test_function",
    "laplace",
    "laplace_image",
    "weighted_laplace",
    "inverse_laplace",
    "mellin",
    "riemann_liouville",
    "flatness_quotients",
    "boundary_decay_slope",
]


class DecayClass(str, Enum):
    SCHWARTZ_PLUS = "SchwartzPlus"
    SUB_EXPONENTIAL = "SubExponential"
    GENERIC = "Generic"


class HoloClass(str, Enum):
    K = "K"
    F = "F"
    GENERIC = "Generic"


@dataclass(frozen=True)
class HalfLineFunction:
    """A function on :math:`x\\ge0`.

    Attributes
    ----------
    evaluator : callable
        Scalar map ``x -> complex``.
    decay_class : DecayClass
    singularity_exponent : float
        :math:`\\sigma` with :math:`f(x)\\sim x^{\\sigma-1}` at 0.
    decay_rate : float
        :math:`d\\ge0` with :math:`|f(x)|\\lesssim e^{-dx}` (0 if unknown).
    laplace_closed : callable, optional
        Closed-form Laplace image, vectorized over complex arrays.
    vectorized : callable, optional
        Array version of ``evaluator``.
    """

    evaluator: Callable[[float], complex]
    decay_class: DecayClass = DecayClass.GENERIC
    singularity_exponent: float = 1.0
    decay_rate: float = 0.0
    name: str = ""
    laplace_closed: Optional[Callable] = field(default=None, compare=False)
    vectorized: Optional[Callable] = field(default=None, compare=False)

    def __call__(self, x: float) -> complex:
        return self.evaluator(x)

    def values(self, x) -> np.ndarray:
        x = np.asarray(x, float)
        if self.vectorized is not None:
            return np.asarray(self.vectorized(x), complex)
        return np.array([complex(self.evaluator(float(v))) for v in x.ravel()]).reshape(x.shape)


@dataclass(frozen=True)
class HoloFunction:
    """A function holomorphic on :math:`\\Re z>0` (and continuous up to the boundary for class K).

    ``abscissa`` (:math:`\\le0`) declares that the function stays holomorphic
    and decaying on :math:`\\Re z>\\mathrm{abscissa}`; integration lines may
    then be moved left of the boundary.
    """

    evaluator: Callable[[complex], complex]
    holo_class: HoloClass = HoloClass.GENERIC
    name: str = ""
    vectorized: Optional[Callable] = field(default=None, compare=False)
    abscissa: float = 0.0

    def __call__(self, z: complex) -> complex:
        return self.evaluator(z)

    def values(self, z) -> np.ndarray:
        z = np.asarray(z, complex)
        if self.vectorized is not None:
            return np.asarray(self.vectorized(z), complex)
        return np.array([complex(self.evaluator(complex(v))) for v in z.ravel()]).reshape(z.shape)


def _scalar(fn):
    def ev(x):
        return complex(fn(np.asarray(x, complex if isinstance(x, complex) else float)))

    return ev


def _phi(c: float, d: float, k: float) -> HalfLineFunction:
    def vec(x):
        x = np.asarray(x, float)
        out = np.zeros(x.shape, complex)
        pos = x > 0
        xp = x[pos]
        out[pos] = np.exp(k * np.log(xp) - c / xp - d * xp)
        return out

    def image(z):
        b = d + np.asarray(z, complex)
        w = 2 * np.sqrt(c * b)
        return 2 * np.exp(0.5 * (k + 1) * np.log(c / b) - w) * special.kve(k + 1, w)

    cls = DecayClass.SCHWARTZ_PLUS if d > 0 else DecayClass.SUB_EXPONENTIAL
    return HalfLineFunction(_scalar(vec), cls, math.inf, d, f"phi_{{{c:g},{d:g},{k:g}}}", image, vec)


def _psi(k: float, d: float) -> HalfLineFunction:
    def vec(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return np.where(x > 0, x**k * np.exp(-d * x), 1.0 if k == 0 else 0.0).astype(complex)

    g = special.gamma(k + 1)

    def image(z):
        return g * (d + np.asarray(z, complex)) ** (-(k + 1))

    return HalfLineFunction(_scalar(vec), DecayClass.GENERIC, k + 1, d, f"psi_{{{k:g},{d:g}}}", image, vec)


def _power(s: float) -> HalfLineFunction:
    def vec(x):
        x = np.asarray(x, float)
        with np.errstate(divide="ignore"):
            return np.where(x > 0, np.abs(x) ** s, 1.0 if s == 0 else 0.0).astype(complex)

    g = special.gamma(s + 1)

    def image(z):
        return g * np.asarray(z, complex) ** (-(s + 1))

    return HalfLineFunction(_scalar(vec), DecayClass.GENERIC, s + 1, 0.0, f"x^{s:g}", image, vec)


def _stretched(alpha: float) -> HalfLineFunction:
    def vec(x):
        return np.exp(-np.asarray(x, float) ** alpha).astype(complex)

    return HalfLineFunction(_scalar(vec), DecayClass.GENERIC, 1.0, 0.0, f"exp(-x^{alpha:g})", None, vec)


def make_test_function(kind: str, **params) -> HalfLineFunction:
    """Build a member of one of the test families.

    ``phi(c, d=1, k=0)``, ``psi(k, d=1)``, ``power(s)``, ``stretched_exp(alpha)``.
    """
    try:
        if kind == "phi":
            c, d, k = float(params.pop("c", 1.0)), float(params.pop("d", 1.0)), float(params.pop("k", 0.0))
            if not (c > 0 and d >= 0 and k >= 0):
                raise DomainError("phi requires c > 0, d >= 0, k >= 0")
            fn = _phi(c, d, k)
        elif kind == "psi":
            k, d = float(params.pop("k", 0.0)), float(params.pop("d", 1.0))
            if not (k > -1 and d > 0):
                raise DomainError("psi requires k > -1, d > 0")
            fn = _psi(k, d)
        elif kind == "power":
            s = float(params.pop("s"))
            if not s > -1:
                raise DomainError("power requires s > -1")
            fn = _power(s)
        elif kind == "stretched_exp":
            a = float(params.pop("alpha"))
            if not a > 0:
                raise DomainError("stretched_exp requires alpha > 0")
            fn = _stretched(a)
        else:
            raise DomainError(f"unknown test function kind {kind!r}")
    except KeyError as e:
        raise DomainError(f"missing parameter {e.args[0]!r} for {kind!r}") from None
    if params:
        raise DomainError(f"unexpected parameters {sorted(params)} for {kind!r}")
    return fn


def _laplace_region_ok(f: HalfLineFunction, z: complex) -> bool:
    re = z.real + f.decay_rate
    if f.decay_class is DecayClass.SCHWARTZ_PLUS:
        return re >= 0
    return re > 0


def weighted_laplace(f: HalfLineFunction, z: complex, mu: float = 1.0, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r""":math:`\mathcal{L}_\mu f(z) = \frac{1}{\Gamma(\mu)}\int_0^\infty f(x)e^{-zx}x^{\mu-1}\,dx`."""
    z = complex(z)
    if not mu > 0:
        raise DomainError("mu must be positive")
    if not _laplace_region_ok(f, z):
        raise DomainError(f"Laplace integral of {f.name or 'f'} diverges at z = {z!r}")
    sigma = f.singularity_exponent + mu - 1
    if not sigma > 0:
        raise DomainError("integrand is not integrable at 0")
    damp = z.real + f.decay_rate
    scale = 1.0 if damp <= 0 else min(1.0, 1.0 / damp) * max(1.0, mu)
    sig = min(sigma, 1.0)

    def g(x):
        if x == 0:
            return 0.0
        return f(x) * cmath.exp(-z * x) * x ** (mu - 1)

    res = integrate_semi_infinite(g, spec, sigma=sig, scale=scale)
    if not res.converged:
        raise ConvergenceError(f"Laplace integral did not converge at z = {z!r}")
    return res.value / special.gamma(mu)


def laplace(f: HalfLineFunction, z: complex, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r""":math:`\mathcal{L}f(z) = \int_0^\infty f(x)e^{-zx}\,dx` by quadrature."""
    return weighted_laplace(f, z, 1.0, spec)


def laplace_image(f: HalfLineFunction, spec: QuadSpec = DEFAULT_SPEC) -> HoloFunction:
    """The Laplace image as a :class:`HoloFunction`; closed form when available."""
    if f.decay_class is DecayClass.SCHWARTZ_PLUS:
        cls = HoloClass.K
    elif f.decay_class is DecayClass.SUB_EXPONENTIAL:
        cls = HoloClass.F
    else:
        cls = HoloClass.GENERIC
    name = f"L[{f.name}]"
    if f.laplace_closed is not None:
        img = f.laplace_closed
        return HoloFunction(lambda z: complex(img(complex(z))), cls, name, img, -f.decay_rate)
    return HoloFunction(lambda z: laplace(f, z, spec), cls, name)


def inverse_laplace(F, x: float, a: float = 1.0, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r"""Bromwich inversion :math:`\frac{1}{2\pi i}\int_{a-i\infty}^{a+i\infty}e^{px}F(p)\,dp`."""
    x = float(x)
    if not x > 0:
        raise DomainError("x must be positive")
    if not a > 0:
        raise DomainError("abscissa must be positive")
    res = integrate_vertical_line(F, a, spec, fourier_x=x)
    return res.value


def mellin(f: HalfLineFunction, lam: complex, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r""":math:`\int_0^\infty x^{\lambda-1}f(x)\,dx`."""
    lam = complex(lam)
    sigma = f.singularity_exponent + lam.real - 1
    if not sigma > 0:
        raise DomainError("Mellin integral diverges at 0")

    def g(x):
        if x == 0:
            return 0.0
        return f(x) * cmath.exp((lam - 1) * math.log(x))

    res = integrate_semi_infinite(g, spec, sigma=min(sigma, 1.0))
    if not res.converged:
        raise ConvergenceError(f"Mellin integral did not converge at lambda = {lam!r}")
    return res.value


def _rl_positive(f: Callable[[float], complex], r: float, x: float, spec: QuadSpec) -> complex:
    if r < 1:
        # y = x - u^{1/r} removes the (x-y)^{r-1} singularity
        p = 1.0 / r

        def g(u):
            return f(max(x - u**p, 0.0))

        res = integrate_finite(g, 0.0, x**r, spec)
        return res.value / special.gamma(r + 1)
    res = integrate_finite(lambda y: f(y) * (x - y) ** (r - 1), 0.0, x, spec)
    return res.value / special.gamma(r)


def _central_derivative(g: Callable[[float], complex], x: float, n: int, h: float) -> complex:
    """n-th central difference quotient with step h."""
    coeffs = [(-1) ** j * math.comb(n, j) for j in range(n + 1)]
    tot = sum(c * g(x + (n / 2 - j) * h) for j, c in enumerate(coeffs))
    return tot / h**n


def riemann_liouville(f, r: float, x: float, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    """Riemann-Liouville integral :math:`J_r f(x)` for real ``r``.

    ``f`` may be a :class:`HalfLineFunction` or any scalar callable on
    :math:`x\\ge0`. For :math:`r\\le0` the value is the ``n``-th derivative of
    :math:`J_{r+n}f` (smallest ``n`` with :math:`r+n>0`), by central differences
    with step :math:`10^{-3}x` and one Richardson step.
    """
    x, r = float(x), float(r)
    if not x > 0:
        raise DomainError("x must be positive")
    sigma = getattr(f, "singularity_exponent", 1.0)
    if r > 0:
        if sigma + r <= 0 or sigma <= 0:
            raise DomainError("f is not integrable at 0")
        return _rl_positive(f, r, x, spec)
    n = int(math.floor(-r)) + 1
    inner = QuadSpec(
        rel_tol=min(spec.rel_tol, 1e-14),
        abs_tol=min(spec.abs_tol, 1e-16),
        max_subdivisions=max(spec.max_subdivisions, 200),
        truncation_growth=spec.truncation_growth,
    )
    h = 1e-3 * x

    def g(t):
        return _rl_positive(f, r + n, t, inner)

    d1 = _central_derivative(g, x, n, h)
    d2 = _central_derivative(g, x, n, h / 2)
    return (4 * d2 - d1) / 3


def flatness_quotients(f: HalfLineFunction, k_max: int = 6, hs: Sequence[float] = (0.1, 0.05, 0.02, 0.01)) -> np.ndarray:
    r"""Table of :math:`|f(h)|/h^k` for :math:`k\le k_{max}` (rows) and the sampled ``hs`` (columns)."""
    vals = np.array([abs(f(h)) for h in hs])
    hs = np.asarray(hs, float)
    return np.array([vals / hs**k for k in range(k_max + 1)])


def boundary_decay_slope(F: HoloFunction, c: float = 0.0, t: float = 50.0, dt: float = 1.0) -> float:
    r"""Local exponent :math:`d\log|F(c+it)|/d\log t` at ``t``.

    A value below :math:`-N` means :math:`F` is decaying faster than
    :math:`|z|^{-N}` there.
    """
    a = abs(F(complex(c, t - dt)))
    b = abs(F(complex(c, t + dt)))
    return (math.log(b) - math.log(a)) / (math.log(t + dt) - math.log(t - dt))
