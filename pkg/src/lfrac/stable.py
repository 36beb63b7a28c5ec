r"""Stable densities expressed through :math:`\mathbb{L}_{\alpha,1}`.

Two-sided strictly stable law, :math:`0<\alpha<2`, :math:`\alpha\ne1`,
:math:`|\gamma|<\min(\alpha, 2-\alpha)`:

.. math::

    p(x;\alpha,\gamma) = \frac{1}{\pi x}\,
        \Im\,\mathbb{L}_{\alpha,1}\big(x^{-\alpha}e^{i(\gamma-\alpha)\pi/2}\big),
    \qquad x>0.

It is the inverse Fourier transform of
:math:`\exp(-|u|^\alpha e^{i\gamma\frac{\pi}{2}\operatorname{sign}u})`,
i.e. :math:`p(x) = \frac1\pi\Re\int_0^\infty
\exp(-e^{i\gamma\pi/2}u^\alpha - ixu)\,du`. At :math:`\gamma=0` this gives
:math:`p(x;\alpha,0)=\varphi_\alpha(x)/\pi` with
:math:`\varphi_\alpha(x)=\int_0^\infty e^{-t^\alpha}\cos(tx)\,dt`; the phase
convention was fixed by comparing both sides at :math:`\alpha\in\{0.5,1.5\}`.

One-sided subordinator density at time :math:`t`, :math:`0<\alpha<1`:

.. math::

    g_\alpha(y;t) = \frac{1}{2\pi i}\int_{-i\infty}^{i\infty}
        e^{-tp^\alpha+py}\,dp
        = -\frac{1}{\pi y}\Im\,\mathbb{L}_{\alpha,1}(t y^{-\alpha}e^{i\pi\alpha}).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence, Tuple

import numpy as np
from scipy import special

from . import lfunc
from .errors import ConvergenceError, DomainError
from .quadrature import DEFAULT_SPEC, QuadResult, QuadSpec, integrate_real_line, integrate_semi_infinite, oscillatory_pair

__all__ = [
    "StableParams",
    "SubordinatorParams",
    "PositivityReport",
    "stable_pdf",
    "stable_pdf_inversion",
    "subordinator_density",
    "subordinator_density_lfunc",
    "subordinator_density_values",
    "cauchy_density_integral",
    "positivity_scan",
    "normalization_check",
]


@dataclass(frozen=True)
class StableParams:
    alpha: float
    gamma: float = 0.0

    def __post_init__(self):
        a, g = float(self.alpha), float(self.gamma)
        if not 0 < a < 2 or a == 1:
            raise DomainError("stable index must satisfy 0 < alpha < 2, alpha != 1")
        if not abs(g) < min(a, 2 - a):
            raise DomainError("skewness must satisfy |gamma| < min(alpha, 2 - alpha)")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "gamma", g)


@dataclass(frozen=True)
class SubordinatorParams:
    alpha: float
    theta: float = 1.0
    x_scale: float = 1.0

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise DomainError("subordinator index must satisfy 0 < alpha < 1")
        if not (self.theta > 0 and self.x_scale > 0):
            raise DomainError("theta and x_scale must be positive")


@dataclass(frozen=True)
class PositivityReport:
    min_value: float
    argmin: float
    violations: Tuple[Tuple[float, float], ...]
    floor: float

    @property
    def ok(self) -> bool:
        return not self.violations


def stable_pdf(p: StableParams, x: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """Density of the strictly stable law at ``x``.

    Negative ``x`` is accepted only in the symmetric case, through evenness.
    """
    x = float(x)
    if x < 0:
        if p.gamma != 0:
            raise DomainError("x < 0 is supported only for gamma = 0")
        x = -x
    if not x > 0:
        raise DomainError("x must be nonzero")
    phase = (p.gamma - p.alpha) * math.pi / 2
    z = x ** (-p.alpha) * cmath.exp(1j * phase)
    val = lfunc.eval(lfunc.LParams(p.alpha, 1.0), z, spec).value
    return val.imag / (math.pi * x)


def _fourier_ray(alpha: float, phase: complex, x: float, spec: QuadSpec) -> complex:
    r""":math:`\int_0^\infty \exp(-e^{i\,\mathrm{phase}}u^\alpha - ixu)du` on a rotated ray.

    The ray :math:`u = re^{-i\chi}`, :math:`0\le\chi\le\pi/2`, damps
    :math:`e^{-ixu}` for :math:`x>0` and keeps
    :math:`\Re(e^{i\,\mathrm{phase}}u^\alpha)>0`.
    """
    lo = max(0.0, (phase - math.pi / 2) / alpha)
    hi = min(math.pi / 2, (phase + math.pi / 2) / alpha)
    chi = 0.5 * (lo + hi)
    e = cmath.exp(-1j * chi)
    c = cmath.exp(1j * (phase - alpha * chi))

    def f(r):
        return cmath.exp(-c * r**alpha - 1j * x * r * e) * e

    # the e^{-ixu} factor confines the mass to r of order 1/(x sin chi)
    scale = 1.0 / max(1.0, x * math.sin(chi))
    return integrate_semi_infinite(f, spec, scale=scale).value


def stable_pdf_inversion(p: StableParams, x: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    """Density by inversion of the characteristic function (independent of lfunc)."""
    x = float(x)
    if x < 0:
        if p.gamma != 0:
            raise DomainError("x < 0 is supported only for gamma = 0")
        x = -x
    return _fourier_ray(p.alpha, p.gamma * math.pi / 2, x, spec).real / math.pi


def subordinator_density(alpha: float, t: float, y: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    r"""One-sided stable density :math:`g_\alpha(y;t)`, the inverse Laplace transform of :math:`e^{-tz^\alpha}`."""
    SubordinatorParams(alpha, 1.0, t)
    if not y > 0:
        raise DomainError("y must be positive")
    return oscillatory_pair(1.0, t, y, alpha, spec).value.real


def subordinator_density_lfunc(alpha: float, t: float, y: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    r""":math:`g_\alpha(y;t) = -\frac{1}{\pi y}\Im\mathbb{L}_{\alpha,1}(ty^{-\alpha}e^{i\pi\alpha})`."""
    SubordinatorParams(alpha, 1.0, t)
    if not y > 0:
        raise DomainError("y must be positive")
    z = t * y ** (-alpha) * cmath.exp(1j * math.pi * alpha)
    return -lfunc.eval(lfunc.LParams(alpha, 1.0), z, spec).value.imag / (math.pi * y)


def subordinator_density_values(alpha: float, t: float, y, spec: QuadSpec = DEFAULT_SPEC) -> np.ndarray:
    """Vectorized :func:`subordinator_density_lfunc` over an array of ``y > 0``."""
    SubordinatorParams(alpha, 1.0, t)
    y = np.asarray(y, float)
    if np.any(y <= 0):
        raise DomainError("y must be positive")
    logw = math.log(t) - alpha * np.log(y) + 1j * math.pi * alpha
    vals, _ = lfunc.lfunc_values(alpha, 1.0, logw=logw, spec=spec)
    return -vals.imag / (math.pi * y)


def cauchy_density_integral(alpha: float, x: float, spec: QuadSpec = DEFAULT_SPEC) -> float:
    r""":math:`\varphi_\alpha(x) = \int_0^\infty e^{-t^\alpha}\cos(tx)\,dt`, :math:`0<\alpha\le2`.

    Written as half the sum of :math:`\int e^{-t^\alpha \mp itx}dt`, each
    integral taken on its own ray rotated into the half-plane where the
    oscillating factor decays.
    """
    if not 0 < alpha <= 2:
        raise DomainError("alpha must lie in (0, 2]")
    x = abs(float(x))
    if x == 0:
        return float(special.gamma(1 + 1 / alpha))
    lower = _fourier_ray(alpha, 0.0, x, spec)
    # the e^{+itx} ray is the mirror image of the e^{-itx} ray
    upper = lower.conjugate()
    return (0.5 * (lower + upper)).real


def positivity_scan(fn: Callable[[float], float], grid: Iterable[float], floor: float = -1e-10) -> PositivityReport:
    """Evaluate ``fn`` on ``grid`` and report the minimum and values below ``floor``."""
    pts = [float(x) for x in grid]
    vals = [float(fn(x)) for x in pts]
    k = int(np.argmin(vals))
    bad = tuple((x, v) for x, v in zip(pts, vals) if v < floor)
    return PositivityReport(vals[k], pts[k], bad, floor)


_LOG_RANGE = 700.0


def normalization_check(
    density: Callable,
    spec: QuadSpec = QuadSpec(rel_tol=1e-9, abs_tol=1e-11),
    support: str = "half",
    vectorized: bool = False,
) -> QuadResult:
    r"""Total mass of ``density`` over :math:`(0,\infty)` or :math:`\mathbb{R}`.

    The integral is taken in :math:`s=\log x` with a sinh rule, which turns
    power-law tails into exponential ones. ``vectorized`` densities receive
    whole arrays of abscissae.
    """
    if support not in ("half", "line"):
        raise ValueError("support must be 'half' or 'line'")
    fn = density if vectorized else np.vectorize(lambda x: float(density(float(x))))

    def one_side(sign):
        def g(s):
            out = np.zeros(s.shape)
            ok = np.abs(s) < _LOG_RANGE
            x = np.exp(s[ok])
            out[ok] = np.asarray(fn(sign * x), float) * x
            return out

        return integrate_real_line(g, spec)

    r = one_side(1.0)
    if support == "line":
        q = one_side(-1.0)
        r = QuadResult(r.value + q.value, r.err_est + q.err_est, r.evaluations + q.evaluations, r.converged and q.converged)
    if not r.converged:
        raise ConvergenceError(f"normalization integral did not converge (estimate {r.value.real!r})")
    return r
