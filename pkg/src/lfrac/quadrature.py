"""Numerical integration primitives and the complex Gamma function.

Every tolerance and truncation policy used by the package is defined here.
Two families of tools are provided:

* adaptive scalar integrators built on QUADPACK (:func:`integrate_semi_infinite`,
  :func:`integrate_vertical_line`, :func:`oscillatory_pair`);
* fixed double-exponential node sets (:func:`exp_sinh_rule`,
  :func:`tanh_sinh_rule`, :func:`sinh_line_rule`) for vectorized integrals
  where the same nodes are reused across many integrands.

The fixed rules return a second weight vector supported on every other node,
so one evaluation yields both the fine sum and a coarse sum at twice the
step; their difference is the error estimate.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

import numpy as np
from scipy import integrate, special

from .errors import ContourError, DomainError, PoleError, UnsupportedRegimeError

__all__ = [
    "QuadSpec",
    "QuadResult",
    "DEFAULT_SPEC",
    "OPERATOR_SPEC",
    "EPS_POLE",
    "integrate_semi_infinite",
    "integrate_finite",
    "integrate_vertical_line",
    "oscillatory_pair",
    "gamma_complex",
    "exp_sinh_rule",
    "tanh_sinh_rule",
    "sinh_line_rule",
]

EPS_POLE = 1e-6


@dataclass(frozen=True)
class QuadSpec:
    """Tolerances and truncation policy for one integration request.

    Parameters
    ----------
    rel_tol, abs_tol : float
        Target accuracy; a result is accepted when its error estimate is below
        ``max(abs_tol, rel_tol * |value|)``.
    max_subdivisions : int
        Subinterval limit per QUADPACK call and panel limit for tail extension.
    truncation_growth : float
        Ratio between consecutive tail panels ``[L, g L]``.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    truncation_growth: float = 2.0

    def __post_init__(self):
        if not (self.rel_tol > 0 and self.abs_tol > 0):
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be at least 1")
        if not self.truncation_growth > 1:
            raise ValueError("truncation_growth must exceed 1")

    def target(self, value: complex) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))

    def tightened(self, factor: float) -> "QuadSpec":
        """Copy with both tolerances divided by ``factor``."""
        return QuadSpec(
            self.rel_tol / factor,
            self.abs_tol / factor,
            self.max_subdivisions,
            self.truncation_growth,
        )


DEFAULT_SPEC = QuadSpec()
OPERATOR_SPEC = QuadSpec(rel_tol=1e-8, abs_tol=1e-10)


@dataclass(frozen=True)
class QuadResult:
    value: complex
    err_est: float
    evaluations: int
    converged: bool

    def __complex__(self):
        return complex(self.value)


class _Counted:
    """Wraps an integrand, counts calls and rejects non-finite values."""

    def __init__(self, f, exc=DomainError):
        self.f = f
        self.calls = 0
        self.exc = exc

    def __call__(self, x):
        self.calls += 1
        v = complex(self.f(x))
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise self.exc(f"integrand is not finite at {x!r}")
        return v


def _quad(f, a, b, spec: QuadSpec):
    """QUADPACK on [a, b] for a complex integrand; returns (value, err, ok)."""
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        val, err = integrate.quad(
            f,
            a,
            b,
            complex_func=True,
            epsabs=spec.abs_tol / 10,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
        )
    ok = not any(issubclass(w.category, integrate.IntegrationWarning) for w in caught)
    return complex(val), abs(err.real) + abs(err.imag), ok


def integrate_finite(f: Callable, a: float, b: float, spec: QuadSpec = DEFAULT_SPEC) -> QuadResult:
    """Adaptive integral of a complex function over a finite interval."""
    g = _Counted(f)
    val, err, ok = _quad(g, a, b, spec)
    return QuadResult(val, err, g.calls, ok and err <= spec.target(val))


def integrate_semi_infinite(
    f: Callable[[float], complex],
    spec: QuadSpec = DEFAULT_SPEC,
    sigma: float = 1.0,
    scale: float = 1.0,
) -> QuadResult:
    r"""Compute :math:`\int_0^\infty f(x)\,dx`.

    Parameters
    ----------
    f : callable
        Complex-valued integrand on :math:`(0, \infty)`.
    spec : QuadSpec
    sigma : float
        Declared endpoint behaviour :math:`f(x) \sim x^{\sigma - 1}` at 0.
        The head :math:`[0, \mathrm{scale}]` is integrated after the
        substitution :math:`x = \mathrm{scale}\, u^{1/\sigma}`, which makes the
        transformed integrand bounded at :math:`u = 0`.
    scale : float
        Split point between the head and the geometric tail panels.

    Returns
    -------
    QuadResult
        ``converged`` is false when a QUADPACK call reported trouble or the
        tail did not fall below tolerance within ``max_subdivisions`` panels.
    """
    if not sigma > 0:
        raise DomainError("endpoint exponent sigma must be positive")
    g = _Counted(f)
    p = 1.0 / sigma

    def head(u):
        if u <= 0.0:
            return 0.0
        return g(scale * u**p) * scale * p * u ** (p - 1.0)

    total, err, ok = _quad(head, 0.0, 1.0, spec)
    a = scale
    quiet = 0
    tail_ok = False
    for _ in range(spec.max_subdivisions):
        b = a * spec.truncation_growth
        pv, pe, pok = _quad(g, a, b, spec)
        total += pv
        err += pe
        ok = ok and pok
        if abs(pv) < spec.target(total) / 10:
            quiet += 1
            if quiet >= 2:
                tail_ok = True
                err += abs(pv)
                break
        else:
            quiet = 0
        a = b
    converged = ok and tail_ok and err <= spec.target(total)
    return QuadResult(total, err, g.calls, converged)


def integrate_vertical_line(
    g: Callable[[complex], complex],
    c: float,
    spec: QuadSpec = DEFAULT_SPEC,
    poles: Iterable[complex] = (),
    fourier_x: Optional[float] = None,
) -> QuadResult:
    r"""Compute :math:`\frac{1}{2\pi i}\int_{c-i\infty}^{c+i\infty} g(s)\,ds`.

    The two halves :math:`t > 0` and :math:`t < 0` of :math:`s = c + it` are
    folded into one integral over :math:`(0,\infty)`.

    Parameters
    ----------
    g : callable
    c : float
        Abscissa of the contour.
    poles : iterable of complex
        Known singularities of ``g``; one within ``EPS_POLE`` of the line
        raises :class:`ContourError`.
    fourier_x : float, optional
        If given, the integrand is :math:`e^{s x} g(s)` and the oscillatory
        factor is handled by QUADPACK's Fourier weights, which allows ``g`` to
        decay only algebraically (Bromwich inversion).
    """
    for p in poles:
        if abs(complex(p).real - c) < EPS_POLE:
            raise ContourError(f"pole at {p!r} lies within {EPS_POLE} of the line Re s = {c}")
    h = _Counted(g, exc=ContourError)
    h(complex(c, 0.0))

    if fourier_x is None:

        def folded(t):
            return h(complex(c, t)) + h(complex(c, -t))

        res = integrate_semi_infinite(folded, spec)
        return QuadResult(res.value / (2 * math.pi), res.err_est / (2 * math.pi), h.calls, res.converged)

    x = float(fourier_x)
    if x <= 0:
        raise DomainError("Fourier inversion requires x > 0")
    parts = {
        "cos": lambda t: h(complex(c, t)) + h(complex(c, -t)),
        "sin": lambda t: 1j * (h(complex(c, t)) - h(complex(c, -t))),
    }
    total = 0j
    err = 0.0
    ok = True
    for weight, fun in parts.items():
        for comp, unit in ((lambda z: z.real, 1.0), (lambda z: z.imag, 1j)):
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always", integrate.IntegrationWarning)
                v, e = integrate.quad(
                    lambda t, fun=fun, comp=comp: comp(fun(t)),
                    0.0,
                    np.inf,
                    weight=weight,
                    wvar=x,
                    epsabs=spec.abs_tol / 10,
                    limlst=100,
                    limit=spec.max_subdivisions,
                )
            ok = ok and not caught
            total += unit * v
            err += abs(e)
    pref = math.exp(c * x) / (2 * math.pi)
    val = pref * total
    err *= pref
    return QuadResult(val, err, h.calls, ok and err <= max(spec.abs_tol, spec.rel_tol * abs(val)) * 10)


def oscillatory_pair(
    theta: complex,
    x: complex,
    y: float,
    alpha: float,
    spec: QuadSpec = DEFAULT_SPEC,
    F: Optional[Callable[[complex], complex]] = None,
) -> QuadResult:
    r"""Inverse Laplace transform of :math:`p^{\theta-1} e^{-x p^\alpha} F(p)` at ``y``.

    Computes the Bromwich integral

    .. math::

        \frac{1}{2\pi i}\int_{-i\infty}^{+i\infty}
            p^{\theta-1}\exp(-x p^\alpha + p y)\,F(p)\,dp

    without oscillatory quadrature: the imaginary axis is rotated onto the two
    rays :math:`p = r e^{\pm i\psi}`, :math:`\pi/2 < \psi < \pi`, on which both
    :math:`e^{py}` and :math:`e^{-xp^\alpha}` are exponentially damped. This
    requires :math:`|\arg x| + \alpha\pi/2 < \pi/2`.

    Parameters
    ----------
    theta : complex
        Exponent with :math:`\Re\theta > 0`.
    x : complex
        Coefficient of :math:`p^\alpha`.
    y : float
        Positive evaluation point.
    alpha : float
        Must satisfy :math:`0 < \alpha < 1`.
    F : callable, optional
        Extra factor analytic in the left half-plane sector swept by the
        rotation and of at most power growth there.
    """
    if not alpha < 1:
        raise UnsupportedRegimeError(f"oscillatory decomposition needs alpha < 1, got {alpha}")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    if not y > 0:
        raise DomainError("y must be positive")
    theta = complex(theta)
    if not theta.real > 0:
        raise DomainError("Re(theta) must be positive")
    x = complex(x)
    ax = math.atan2(x.imag, x.real) if x != 0 else 0.0
    up_hi = min(math.pi, (math.pi / 2 - ax) / alpha)
    lo_hi = min(math.pi, (math.pi / 2 + ax) / alpha)
    if up_hi <= math.pi / 2 or lo_hi <= math.pi / 2:
        raise DomainError("|arg x| + alpha*pi/2 must be below pi/2")
    psi_up = 0.5 * (math.pi / 2 + up_hi)
    psi_lo = 0.5 * (math.pi / 2 + lo_hi)

    def ray(psi):
        e = complex(math.cos(psi), math.sin(psi))
        lp_shift = 1j * psi

        def f(r):
            lp = math.log(r) + lp_shift
            v = np.exp((theta - 1) * lp - x * np.exp(alpha * lp) + r * e * y)
            if F is not None:
                v = v * F(r * e)
            return v * e

        return integrate_semi_infinite(f, spec, sigma=theta.real, scale=scale)

    # the integrand lives on r ~ 1/y and on r ~ |x|^(-1/alpha)
    scale = 1.0 / y if x == 0 else min(1.0 / y, abs(x) ** (-1.0 / alpha))
    up = ray(psi_up)
    lo = ray(-psi_lo)
    val = (up.value - lo.value) / (2j * math.pi)
    err = (up.err_est + lo.err_est) / (2 * math.pi)
    return QuadResult(val, err, up.evaluations + lo.evaluations, up.converged and lo.converged)


def gamma_complex(z: complex) -> complex:
    """Gamma function of a complex argument.

    Raises
    ------
    PoleError
        If ``z`` is a non-positive integer.
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    return complex(special.gamma(z))


def _frozen(*arrays):
    for a in arrays:
        a.setflags(write=False)
    return arrays


@lru_cache(maxsize=64)
def exp_sinh_rule(step: float, lo: float = -5.5, hi: float = 3.5):
    r"""Nodes and weights on :math:`(0,\infty)` for :math:`r = e^{\frac{\pi}{2}\sinh\xi}`.

    Returns ``(r, w, w_coarse)`` where ``w_coarse`` is the rule at step
    ``2*step`` supported on every other node.
    """
    xi = np.arange(lo, hi + step / 2, step)
    r = np.exp(0.5 * math.pi * np.sinh(xi))
    w = r * 0.5 * math.pi * np.cosh(xi) * step
    wc = np.zeros_like(w)
    wc[::2] = 2 * w[::2]
    return _frozen(r, w, wc)


@lru_cache(maxsize=64)
def tanh_sinh_rule(step: float, xi_max: float = 4.5):
    r"""Nodes on :math:`(0,1)`: returns ``(lam, 1 - lam, w, w_coarse)``.

    Both ``lam`` and its complement are computed without cancellation so
    integrands singular at either endpoint can be evaluated accurately.
    """
    n = int(round(xi_max / step))
    xi = step * np.arange(-n, n + 1)
    u = 0.5 * math.pi * np.sinh(xi)
    lam = special.expit(2 * u)
    lam_c = special.expit(-2 * u)
    w = math.pi * np.cosh(xi) * lam * lam_c * step
    keep = (lam > 0) & (lam_c > 0)
    wc = np.zeros_like(w)
    wc[(np.arange(xi.size) - n) % 2 == 0] = 2 * w[(np.arange(xi.size) - n) % 2 == 0]
    return _frozen(lam[keep], lam_c[keep], w[keep], wc[keep])


@lru_cache(maxsize=64)
def sinh_line_rule(step: float, xi_max: float):
    r"""Nodes on the real line :math:`t = \sinh\xi`, :math:`|\xi| \le \xi_{max}`.

    Returns ``(t, w, w_coarse)``; scale and shift the nodes at the call site.
    """
    n = int(round(xi_max / step))
    xi = step * np.arange(-n, n + 1)
    t = np.sinh(xi)
    w = np.cosh(xi) * step
    wc = np.zeros_like(w)
    even = (np.arange(xi.size) - n) % 2 == 0
    wc[even] = 2 * w[even]
    return _frozen(t, w, wc)


def integrate_real_line(
    g: Callable[[np.ndarray], np.ndarray],
    spec: QuadSpec = DEFAULT_SPEC,
    shift: float = 0.0,
    scale: float = 1.0,
    xi_max: float = 6.0,
    step: float = 0.5,
    max_level: int = 8,
) -> QuadResult:
    r""":math:`\int_{-\infty}^{\infty} g(s)\,ds` for a vectorized, exponentially decaying ``g``.

    Uses the sinh rule :math:`s = \mathrm{shift} + \mathrm{scale}\,\sinh\xi`
    and halves the step until two successive levels agree.
    """
    calls = 0
    prev = None
    for level in range(max_level + 1):
        t, w, wc = sinh_line_rule(step / 2**level, xi_max)
        v = np.asarray(g(shift + scale * t), complex)
        calls += v.size
        if not np.all(np.isfinite(v)):
            raise DomainError("integrand is not finite on the sinh grid")
        fine = complex(np.dot(w, v)) * scale
        coarse = complex(np.dot(wc, v)) * scale
        err = abs(fine - coarse)
        if level > 0 and err <= spec.target(fine):
            return QuadResult(fine, err, calls, True)
        prev = fine
    return QuadResult(prev, err, calls, False)
