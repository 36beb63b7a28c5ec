r"""The function :math:`\mathbb{L}_{\alpha,\beta}` and the Wright function.

.. math::

    \mathbb{L}_{\alpha,\beta}(z)
        = \frac{1}{2\pi i}\int \Gamma(s)\Gamma(\beta-\alpha s) z^{-s}\,ds
        = \sum_{n\ge 0} \frac{(-1)^n}{n!}\Gamma(\alpha n+\beta) z^n
        \quad (0<\alpha<1)

and, for :math:`\Re\beta>0` and :math:`\Re v>0`,

.. math::

    \int_0^\infty x^{\beta-1} e^{-u x^\alpha - v x}\,dx
        = v^{-\beta}\mathbb{L}_{\alpha,\beta}(u/v^\alpha).

Scalar evaluation (:func:`eval`) dispatches between power series, the Barnes
integral and a saddle-point contour form of the Laplace representation.
:func:`lfunc_values` is the vectorized evaluator used to build integral
kernels on large node sets.

Arguments for :math:`\alpha>1` and :math:`\alpha<0` live on the covering
surface of the punctured plane. Scalar routines accept a ``winding`` number,
and the vectorized routines accept ``log z`` directly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Tuple

import mpmath as mp
import numpy as np
from scipy import special

from .errors import (
    DomainError,
    IllConditionedError,
    ParameterError,
    PoleError,
    SeriesDivergenceError,
)
from .quadrature import (
    DEFAULT_SPEC,
    QuadSpec,
    exp_sinh_rule,
    integrate_semi_infinite,
    integrate_vertical_line,
    tanh_sinh_rule,
)

__all__ = [
    "N_CHECK",
    "MAX_TERMS",
    "Method",
    "LParams",
    "EvalResult",
    "Violation",
    "check_params",
    "violations",
    "eval_series_small_alpha",
    "eval_series_large_alpha",
    "eval_series_negative_alpha",
    "eval_barnes",
    "eval_laplace_repr",
    "symmetry_reduce",
    "eval",
    "wright_eval",
    "lfunc_values",
    "laplace_kernel",
    "product_integral",
    "product_closed_form",
]

N_CHECK = 200
MAX_TERMS = 10_000
_BETA_MAX = 100.0
_ALPHA_MAX = 50.0
_EXACT_TOL = 1e-12
_ILL_TOL = 1e-8
_MAX_DPS = 1200
_EPS = np.finfo(float).eps


class Method(str, Enum):
    SERIES_SMALL_ALPHA = "SeriesSmallAlpha"
    SERIES_LARGE_ALPHA = "SeriesLargeAlpha"
    SERIES_NEG_ALPHA = "SeriesNegAlpha"
    BARNES = "Barnes"
    LAPLACE_INTEGRAL = "LaplaceIntegral"
    SYMMETRY_REDUCED = "SymmetryReduced"
    CLOSED_FORM = "ClosedForm"


class Violation(NamedTuple):
    n: int
    m: int


@dataclass(frozen=True)
class LParams:
    """Index pair of :math:`\\mathbb{L}_{\\alpha,\\beta}`.

    Construction enforces :math:`\\alpha \\ne 0` and the magnitude guard
    :math:`|\\alpha| \\le 50`, :math:`|\\beta| \\le 100`; admissibility is a
    separate check (:func:`check_params`).
    """

    alpha: float
    beta: complex

    def __post_init__(self):
        a = float(self.alpha)
        b = complex(self.beta)
        if not (math.isfinite(a) and cmath.isfinite(b)):
            raise ParameterError("alpha and beta must be finite")
        if a == 0:
            raise ParameterError("alpha = 0 is excluded")
        if abs(a) > _ALPHA_MAX or abs(b) > _BETA_MAX:
            raise ParameterError(
                f"parameters outside the guarded range |alpha| <= {_ALPHA_MAX}, |beta| <= {_BETA_MAX}"
            )
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)


@dataclass(frozen=True)
class EvalResult:
    value: complex
    err_est: float
    method: Method

    def __complex__(self):
        return complex(self.value)


def violations(p: LParams):
    """Yield every pair ``(n, m)`` in the window with ``beta + alpha*m + n = 0``.

    Pairs are produced in increasing ``m``.
    """
    b = p.beta
    if abs(b.imag) > _EXACT_TOL:
        return
    for m in range(N_CHECK + 1):
        x = b.real + p.alpha * m
        n = round(-x)
        if 0 <= n <= N_CHECK and abs(x + n) <= _EXACT_TOL:
            yield Violation(int(n), m)


def check_params(p: LParams) -> Optional[Violation]:
    """Return the first violating pair (smallest ``m``) or ``None`` if admissible."""
    return next(violations(p), None)


def _require_admissible(p: LParams) -> None:
    v = check_params(p)
    if v is not None:
        raise ParameterError(
            f"admissibility condition beta + alpha*m + n != 0 fails at n={v.n}, m={v.m}",
            n=v.n,
            m=v.m,
        )


def _collision_distance(p: LParams) -> float:
    """Smallest |beta + alpha*m + n| over the window (coincidence of two poles)."""
    m = np.arange(N_CHECK + 1)
    x = p.beta.real + p.alpha * m
    n = np.clip(np.round(-x), 0, N_CHECK)
    d = np.hypot(x + n, p.beta.imag)
    return float(d.min())


def _log(z: complex, winding: int = 0) -> complex:
    if z == 0:
        raise DomainError("z = 0 is outside the domain")
    return cmath.log(z) + 2j * math.pi * winding


# --------------------------------------------------------------------------
# power series  sum_n s^n Gamma(a n + b)^{±1} w^n / n!


@dataclass
class _SeriesSum:
    value: complex
    err: float
    terms: int


def _float_series(a, b, logw, abs_tol, alternating, reciprocal):
    """Double-precision summation; returns (value, rounding_err, trunc_err, n) or None on overflow."""
    if logw == -math.inf:
        g = special.rgamma(b) if reciprocal else special.gamma(b)
        return complex(g), 0.0, 0.0, 1
    re_parts, im_parts = [], []
    partial = 0j
    quiet = 0
    round_err = 0.0
    n0 = 0
    chunk = 32
    while n0 < MAX_TERMS:
        n = np.arange(n0, min(n0 + chunk, MAX_TERMS))
        lg = special.loggamma(a * n + b + 0j)
        if reciprocal:
            pole = ~np.isfinite(lg)
            lg = np.where(pole, 0, -lg)
        lt = lg - special.gammaln(n + 1) + n * logw
        if np.any(lt.real > 700):
            return None
        t = np.exp(lt)
        if reciprocal:
            t = np.where(pole, 0, t)
        if alternating:
            t = t * (1 - 2 * (n & 1))
        mag = np.abs(t)
        round_err += float(np.sum(mag * (2 + np.abs(lt)))) * _EPS
        psum = partial + np.cumsum(t)
        small = mag < abs_tol * np.maximum(1.0, np.abs(psum))
        for k in range(n.size):
            quiet = quiet + 1 if small[k] else 0
            if quiet >= 3:
                re_parts.extend(t[: k + 1].real)
                im_parts.extend(t[: k + 1].imag)
                val = complex(math.fsum(re_parts), math.fsum(im_parts))
                trunc = float(np.sum(mag[max(0, k - 2) : k + 1]))
                return val, round_err, trunc, n0 + k + 1
        re_parts.extend(t.real)
        im_parts.extend(t.imag)
        partial = psum[-1]
        n0 += n.size
        chunk = min(2 * chunk, 1024)
    raise SeriesDivergenceError(f"series did not converge within {MAX_TERMS} terms")


def _mp_series(a, b, logw, abs_tol, alternating, reciprocal, dps):
    with mp.workdps(dps):
        a_ = mp.mpf(a)
        b_ = mp.mpc(b)
        w = mp.exp(mp.mpc(logw))
        pw = mp.mpf(1)
        s = mp.mpc(0)
        quiet = 0
        peak = mp.mpf(0)
        for n in range(MAX_TERMS):
            x = a_ * n + b_
            if reciprocal:
                g = mp.rgamma(x)
            else:
                g = mp.gamma(x)
            t = g * pw
            if alternating and n & 1:
                t = -t
            s += t
            at = abs(t)
            peak = max(peak, at)
            if at < abs_tol * max(1, abs(s)):
                quiet += 1
                if quiet >= 3:
                    return complex(s), float(peak), float(at), n + 1
            else:
                quiet = 0
            pw = pw * w / (n + 1)
    raise SeriesDivergenceError(f"series did not converge within {MAX_TERMS} terms")


def _gamma_series(a, b, logw, spec: QuadSpec, alternating=True, reciprocal=False, extended=True) -> _SeriesSum:
    r"""Sum :math:`\sum_n (\pm 1)^n \Gamma(an+b)^{\pm 1} e^{n\log w}/n!`.

    The double-precision pass records a rounding-error bound. If that bound
    exceeds the target, the sum is recomputed with mpmath at a working
    precision matched to the measured cancellation.
    """
    res = _float_series(a, b, logw, spec.abs_tol, alternating, reciprocal)
    if res is not None:
        val, rerr, terr, n = res
        if rerr + terr <= spec.target(val):
            return _SeriesSum(val, rerr + terr, n)
    if not extended:
        raise SeriesDivergenceError("cancellation in double precision exceeds the tolerance")
    # peak term magnitude sets the working precision
    n = np.arange(MAX_TERMS)
    lg = special.loggamma(a * n + b + 0j)
    lg = np.where(np.isfinite(lg), lg, 0)
    peak = float(np.max((-lg if reciprocal else lg).real - special.gammaln(n + 1) + n * logw.real))
    dps = 25 + max(0, int(peak / math.log(10)))
    while True:
        if dps > _MAX_DPS:
            raise SeriesDivergenceError("required working precision exceeds the budget")
        val, peak_t, last, nt = _mp_series(a, b, logw, spec.abs_tol * 1e-3, alternating, reciprocal, dps)
        need = 20 + math.log10(max(peak_t, 1e-300) / max(abs(val), 1e-300))
        if need <= dps:
            return _SeriesSum(val, 3 * last + abs(val) * 1e-16, nt)
        dps = int(need) + 10


def eval_series_small_alpha(p: LParams, z: complex, spec: QuadSpec = DEFAULT_SPEC, extended: bool = True) -> EvalResult:
    r"""Power series :math:`\sum (-1)^n\Gamma(\alpha n+\beta)z^n/n!`, :math:`0<\alpha<1`.

    Parameters
    ----------
    extended : bool
        Allow the mpmath fallback when double precision cancels too much;
        if false a :class:`SeriesDivergenceError` is raised instead.
    """
    if not 0 < p.alpha < 1:
        raise DomainError("series in powers of z requires 0 < alpha < 1")
    _require_admissible(p)
    z = complex(z)
    logw = -math.inf if z == 0 else cmath.log(z)
    s = _gamma_series(p.alpha, p.beta, logw, spec, extended=extended)
    return EvalResult(s.value, s.err, Method.SERIES_SMALL_ALPHA)


def eval_series_large_alpha(
    p: LParams, z: complex, winding: int = 0, spec: QuadSpec = DEFAULT_SPEC, extended: bool = True
) -> EvalResult:
    r"""Residue series at :math:`s=(n+\beta)/\alpha` for :math:`\alpha>1`:

    .. math::

        \mathbb{L}_{\alpha,\beta}(z) = \frac{1}{\alpha}\sum_{n\ge0}
            \frac{(-1)^n}{n!}\Gamma\Big(\frac{n+\beta}{\alpha}\Big)
            z^{-(n+\beta)/\alpha}.
    """
    if not p.alpha > 1:
        raise DomainError("this series requires alpha > 1")
    _require_admissible(p)
    lz = _log(complex(z), winding)
    a = 1.0 / p.alpha
    s = _gamma_series(a, p.beta * a, -lz * a, spec, extended=extended)
    pref = cmath.exp(-p.beta * a * lz) * a
    return EvalResult(pref * s.value, abs(pref) * s.err, Method.SERIES_LARGE_ALPHA)


def eval_series_negative_alpha(
    p: LParams, z: complex, winding: int = 0, spec: QuadSpec = DEFAULT_SPEC
) -> EvalResult:
    r"""Sum of both residue series for :math:`\alpha<0`:

    .. math::

        \sum_{n}\frac{(-1)^n}{n!}\Gamma(\alpha n+\beta)z^n
        - \frac{1}{\alpha}\sum_n \frac{(-1)^n}{n!}
            \Gamma\Big(\frac{n+\beta}{\alpha}\Big)z^{-(n+\beta)/\alpha}.

    Raises
    ------
    IllConditionedError
        When two pole series nearly coincide (double-pole limit).
    """
    if not p.alpha < 0:
        raise DomainError("this series requires alpha < 0")
    _require_admissible(p)
    if _collision_distance(p) < _ILL_TOL:
        raise IllConditionedError("parameters are within 1e-8 of a double pole")
    lz = _log(complex(z), winding)
    s1 = _gamma_series(p.alpha, p.beta, lz, spec)
    a = 1.0 / p.alpha
    s2 = _gamma_series(a, p.beta * a, -lz * a, spec)
    pref = -cmath.exp(-p.beta * a * lz) * a
    return EvalResult(s1.value + pref * s2.value, s1.err + abs(pref) * s2.err, Method.SERIES_NEG_ALPHA)


def eval_barnes(p: LParams, z: complex, spec: QuadSpec = DEFAULT_SPEC, winding: int = 0) -> EvalResult:
    r"""Barnes integral on :math:`\Re s = c` between the two pole series.

    :math:`c = \min(1, \Re\beta/\alpha)/2` for :math:`\alpha>0` and
    :math:`c = 1/2` for :math:`\alpha<0`. Requires :math:`\Re\beta>0` and
    :math:`|\arg z| < (1+|\alpha|)\pi/2`.
    """
    _require_admissible(p)
    a, b = p.alpha, p.beta
    if not b.real > 0:
        raise ParameterError("the straight Barnes contour requires Re(beta) > 0")
    lz = _log(complex(z), winding)
    if not abs(lz.imag) < (1 + abs(a)) * math.pi / 2:
        raise DomainError("arg z lies outside the convergence sector of the Barnes integral")
    c = 0.5 * min(1.0, b.real / a) if a > 0 else 0.5

    def g(s):
        return np.exp(special.loggamma(s) + special.loggamma(b - a * s) - s * lz)

    poles = [0.0, b / a]
    r = integrate_vertical_line(g, c, spec, poles=poles)
    return EvalResult(r.value, r.err_est, Method.BARNES)


def eval_laplace_repr(alpha: float, h: complex, u: complex, v: complex, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r"""Quadrature of :math:`\int_0^\infty x^{h-1}e^{-ux^\alpha - vx}dx`.

    Equals :math:`v^{-h}\mathbb{L}_{\alpha,h}(u/v^\alpha)`; used as the
    method-independent reference for the series.
    """
    h, u, v = complex(h), complex(u), complex(v)
    if alpha == 0:
        raise DomainError("alpha must be nonzero")
    if not (h.real > 0 and u.real > 0 and v.real > 0):
        raise DomainError("requires Re h > 0, Re u > 0, Re v > 0")

    def f(x):
        lx = math.log(x)
        return cmath.exp((h - 1) * lx - u * math.exp(alpha * lx) - v * x)

    return integrate_semi_infinite(f, spec, sigma=h.real).value


def symmetry_reduce(p: LParams, z: complex, winding: int = 0) -> Tuple[LParams, complex, complex]:
    r"""Map :math:`(\alpha,\beta,z)` to :math:`(1/\alpha, \beta/\alpha, z^{-1/\alpha})`.

    Returns ``(params, z_new, prefactor)`` with
    :math:`\mathbb{L}_{\alpha,\beta}(z) = \text{prefactor}\cdot
    \mathbb{L}_{1/\alpha,\beta/\alpha}(z_{new})` and prefactor
    :math:`\alpha^{-1}z^{-\beta/\alpha}`.
    """
    if not p.alpha > 0:
        raise DomainError("symmetry reduction requires alpha > 0")
    if not p.beta.real > 0:
        raise DomainError("symmetry reduction requires Re(beta) > 0")
    lz = _log(complex(z), winding)
    a = 1.0 / p.alpha
    return LParams(a, p.beta * a), cmath.exp(-lz * a), cmath.exp(-p.beta * a * lz) * a


def eval(
    p: LParams,
    z: complex,
    spec: QuadSpec = DEFAULT_SPEC,
    winding: int = 0,
    cross_check: bool = False,
) -> EvalResult:
    r"""Evaluate :math:`\mathbb{L}_{\alpha,\beta}(z)` with regime dispatch.

    * :math:`\alpha=1`: :math:`\Gamma(\beta)(1+z)^{-\beta}`.
    * :math:`0<\alpha<1`: power series while double precision keeps the
      cancellation within tolerance, otherwise the Barnes integral inside its
      sector, otherwise the contour form of the Laplace representation, and
      finally the extended-precision series.
    * :math:`\alpha>1`: series in :math:`z^{-1/\alpha}`, with the same
      fallbacks for small :math:`|z|`.
    * :math:`\alpha<0`: both residue series.

    With ``cross_check`` a second method is evaluated and the discrepancy is
    folded into ``err_est``.
    """
    _require_admissible(p)
    z = complex(z)
    a, b = p.alpha, p.beta
    if a == 1:
        if z == -1:
            raise PoleError("pole at z = -1")
        res = EvalResult(complex(special.gamma(b)) * (1 + z) ** (-b), 0.0, Method.CLOSED_FORM)
        other = eval_barnes if cross_check and b.real > 0 and abs(cmath.phase(z)) < math.pi * 0.95 else None
    elif a < 0:
        res = eval_series_negative_alpha(p, z, winding, spec)
        other = None
        if cross_check and z.real > 0 and b.real > 0 and winding == 0:
            ref = eval_laplace_repr(a, b, z, 1.0, spec)
            res = EvalResult(res.value, max(res.err_est, abs(ref - res.value)), res.method)
        return res
    else:
        res = _dispatch_positive(p, z, winding, spec)
        other = None
        if cross_check:
            lz = _log(z, winding)
            if res.method != Method.BARNES and b.real > 0 and abs(lz.imag) < (1 + a) * math.pi / 2 - 0.05:
                other = eval_barnes
            elif res.method != Method.LAPLACE_INTEGRAL and b.real > 0:
                alt = complex(lfunc_values(a, b, logw=np.array([lz]), spec=spec)[0][0])
                return EvalResult(res.value, max(res.err_est, abs(alt - res.value)), res.method)
    if other is not None:
        alt = other(p, z, spec, winding=winding) if other is eval_barnes else other(p, z, spec)
        res = EvalResult(res.value, max(res.err_est, abs(alt.value - res.value)), res.method)
    return res


def _dispatch_positive(p: LParams, z: complex, winding: int, spec: QuadSpec) -> EvalResult:
    a, b = p.alpha, p.beta
    if z == 0:
        if a > 1:
            raise DomainError("z = 0 is a branch point for alpha > 1")
        return EvalResult(complex(special.gamma(b)), 0.0, Method.SERIES_SMALL_ALPHA)
    try:
        if a < 1:
            return eval_series_small_alpha(p, z, spec, extended=False)
        return eval_series_large_alpha(p, z, winding, spec, extended=False)
    except SeriesDivergenceError:
        pass
    lz = _log(z, winding)
    if b.real > 0 and abs(lz.imag) < (1 + a) * math.pi / 2 - 0.3:
        r = eval_barnes(p, z, spec, winding=winding)
        if abs(r.err_est) <= spec.target(r.value) * 10:
            return r
    if b.real > 0:
        vals, errs = lfunc_values(a, b, logw=np.array([lz]), spec=spec)
        method = Method.LAPLACE_INTEGRAL if a < 1 else Method.SYMMETRY_REDUCED
        return EvalResult(complex(vals[0]), float(errs[0]), method)
    if a < 1:
        return eval_series_small_alpha(p, z, spec, extended=True)
    return eval_series_large_alpha(p, z, winding, spec, extended=True)


def wright_eval(alpha: float, beta: complex, z: complex, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r"""Wright function :math:`\sum_n z^n / (n!\,\Gamma(\alpha n+\beta))`, :math:`\alpha>-1`."""
    if not alpha > -1:
        raise DomainError("the Wright series requires alpha > -1")
    z = complex(z)
    logw = -math.inf if z == 0 else cmath.log(z)
    s = _gamma_series(float(alpha), complex(beta), logw, spec, alternating=False, reciprocal=True)
    return s.value


# --------------------------------------------------------------------------
# vectorized evaluation


def _ray_nodes(step, re_beta):
    lo = -math.asinh(80.0 / (math.pi * max(re_beta, 0.02)))
    return exp_sinh_rule(step, round(lo / step) * step, 3.5)


def _segment_nodes(step, re_beta):
    xi = math.asinh(40.0 / (math.pi * max(re_beta, 0.02)))
    return tanh_sinh_rule(step, max(4.0, xi))


@np.errstate(over="ignore", invalid="ignore")
def _contour_block(alpha, beta, w, level):
    """One pass of the contour rule at refinement ``level``; returns (fine, coarse)."""
    rb = beta.real
    r, wr, wrc = _ray_nodes(2.0**-(4 + level), rb)
    psi = np.angle(w)
    lmw = np.log(-alpha * w)
    saddle = np.abs(lmw.imag) < (1 - alpha) * math.pi * (1 - 1e-12)
    fine = np.empty(w.shape, complex)
    coarse = np.empty(w.shape, complex)

    ns = ~saddle
    if ns.any():
        p = psi[ns]
        lo = np.maximum(-math.pi / 2, (-math.pi / 2 - p) / alpha)
        hi = np.minimum(math.pi / 2, (math.pi / 2 - p) / alpha)
        phi = 0.5 * (lo + hi)
        e = np.exp(1j * phi)[:, None]
        ly = np.log(r)[None, :] + 1j * phi[:, None]
        f = np.exp((beta - 1) * ly - w[ns, None] * np.exp(alpha * ly) - r[None, :] * e) * e
        fine[ns] = f @ wr
        coarse[ns] = f @ wrc

    if saddle.any():
        lys = lmw[saddle] / (1 - alpha)
        ys = np.exp(lys)
        ws = w[saddle]
        lam, _, wl, wlc = _segment_nodes(2.0**-(5 + level), rb)
        llam = np.log(lam)
        # along y = ys*lam the exponent is ys*(lam^a/a - lam) by the saddle equation
        f = np.exp((beta - 1) * (lys[:, None] + llam[None, :]) + ys[:, None] * (lam[None, :] ** alpha / alpha - lam[None, :]))
        f = f * ys[:, None]
        seg_f, seg_c = f @ wl, f @ wlc
        th = np.angle(ys) / 2
        th = th - np.sign(th) * np.minimum(np.abs(th), math.pi / 4 - 0.15)
        e = np.exp(1j * th)[:, None]
        y = ys[:, None] + r[None, :] * e
        ly = np.log(y)
        f = np.exp((beta - 1) * ly - ws[:, None] * np.exp(alpha * ly) - y) * e
        fine[saddle] = seg_f + f @ wr
        coarse[saddle] = seg_c + f @ wrc
    return fine, coarse


def _contour_values(alpha, beta, w, spec, max_level=6, block=1024, point_tol=None):
    r"""Laplace representation :math:`\int_0^\infty y^{\beta-1}e^{-wy^\alpha-y}dy` on a deformed path.

    For :math:`0<\alpha<1` the exponent has at most one saddle on the
    principal sheet, :math:`y_s = (-\alpha w)^{1/(1-\alpha)}`, present iff
    :math:`|\arg(-w)| < (1-\alpha)\pi`. The path runs straight from 0 to
    :math:`y_s` and then along a descent ray; without a saddle a single ray
    is used on which both exponentials decay. Nested step halving supplies
    the error estimate.
    """
    out = np.empty(w.shape, complex)
    err = np.empty(w.shape)
    ptol = np.full(w.shape, spec.abs_tol) if point_tol is None else point_tol
    for s in range(0, w.size, block):
        idx = np.arange(s, min(s + block, w.size))
        for level in range(max_level + 1):
            fine, coarse = _contour_block(alpha, beta, w[idx], level)
            e = np.abs(fine - coarse)
            out[idx] = fine
            err[idx] = e
            bad = e > np.maximum(ptol[idx], spec.rel_tol * np.abs(fine))
            if not bad.any():
                break
            idx = idx[bad]
    return out, err


def _series_block(alpha, beta, lw, nmax=160):
    """Vectorized float series; returns (values, err, ok)."""
    n = np.arange(nmax)
    lg = special.loggamma(alpha * n + beta + 0j)
    lt = lg[None, :] - special.gammaln(n + 1)[None, :] + n[None, :] * lw[:, None]
    t = np.exp(lt) * (1 - 2 * (n & 1))[None, :]
    val = t.sum(axis=1)
    mag = np.abs(t)
    rerr = (mag * (2 + np.abs(lt))).sum(axis=1) * _EPS + mag[:, -3:].sum(axis=1)
    return val, rerr


def lfunc_values(
    alpha: float,
    beta: complex,
    w: Optional[np.ndarray] = None,
    logw: Optional[np.ndarray] = None,
    spec: QuadSpec = DEFAULT_SPEC,
    point_tol: Optional[np.ndarray] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    r"""Vectorized :math:`\mathbb{L}_{\alpha,\beta}` at many arguments.

    Give either ``w`` (principal branch) or ``logw`` (any point of the
    covering surface). Returns ``(values, error_estimates)``.

    Small arguments use the power series; the rest use the saddle-point
    contour form of the Laplace representation, which requires
    :math:`\Re\beta>0` (:math:`\alpha>1` is mapped to :math:`1/\alpha` first).
    Negative :math:`\alpha` falls back to scalar series evaluation.
    ``point_tol`` optionally replaces ``spec.abs_tol`` by a per-argument
    absolute tolerance (broadcast against the arguments).
    """
    p = LParams(alpha, beta)
    _require_admissible(p)
    if logw is None:
        w = np.asarray(w, complex)
        with np.errstate(divide="ignore"):
            logw = np.log(w)
    logw = np.asarray(logw, complex)
    shape = logw.shape
    lw = logw.ravel()
    if point_tol is None:
        ptol = np.full(lw.shape, spec.abs_tol)
    else:
        ptol = np.maximum(np.broadcast_to(np.asarray(point_tol, float), shape).ravel(), spec.abs_tol)
    a, b = p.alpha, p.beta
    vals = np.empty(lw.shape, complex)
    errs = np.zeros(lw.shape)
    zero = lw.real == -np.inf
    vals[zero] = special.gamma(b) if (a > 0 or b.real > 0) else np.nan
    nz = ~zero

    if a == 1:
        ww = np.exp(lw[nz])
        vals[nz] = special.gamma(b) * (1 + ww) ** (-b)
    elif a > 1:
        if not b.real > 0:
            for i in np.flatnonzero(nz):
                r = eval_series_large_alpha(p, cmath.exp(lw[i]), spec=spec, winding=_winding(lw[i]))
                vals[i], errs[i] = r.value, r.err_est
        else:
            ia = 1.0 / a
            pref = np.exp(-b * ia * lw[nz]) * ia
            sub, serr = lfunc_values(ia, b * ia, logw=-lw[nz] * ia, spec=spec, point_tol=ptol[nz] / np.abs(pref))
            vals[nz] = pref * sub
            errs[nz] = np.abs(pref) * serr
    elif a < 0:
        for i in np.flatnonzero(nz):
            r = eval_series_negative_alpha(p, cmath.exp(lw[i]), winding=_winding(lw[i]), spec=spec)
            vals[i], errs[i] = r.value, r.err_est
    else:
        idx = np.flatnonzero(nz)
        small = idx[lw[idx].real < math.log(1.5)]
        if small.size:
            v, e = _series_block(a, b, lw[small])
            good = e <= np.maximum(ptol[small], spec.rel_tol * np.abs(v))
            vals[small[good]] = v[good]
            errs[small[good]] = e[good]
            rest = np.setdiff1d(idx, small[good])
        else:
            rest = idx
        if rest.size:
            if b.real > 0:
                v, e = _contour_values(a, b, np.exp(lw[rest]), spec, point_tol=ptol[rest])
                vals[rest], errs[rest] = v, e
            else:
                for i in rest:
                    r = eval_series_small_alpha(p, cmath.exp(lw[i]), spec)
                    vals[i], errs[i] = r.value, r.err_est
    return vals.reshape(shape), errs.reshape(shape)


def _winding(lz: complex) -> int:
    """Sheet index k with Im(lz) - 2*pi*k in (-pi, pi]."""
    return int(math.ceil((lz.imag - math.pi) / (2 * math.pi)))


def _gauss_kernel(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    r""":math:`\int_0^\infty e^{-ux^2-vx}dx = \frac12\sqrt{\pi/u}\,w(iv/2\sqrt u)` with the Faddeeva ``w``."""
    out = np.empty(u.shape, complex)
    zero = u == 0
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.sqrt(u[~zero])
        out[~zero] = 0.5 * math.sqrt(math.pi) / r * special.wofz(0.5j * v[~zero] / r)
        out[zero] = 1 / v[zero]
    return out


def laplace_kernel(
    alpha: float, h: complex, u, v, spec: QuadSpec = DEFAULT_SPEC, point_tol=None, closed_form: bool = True
) -> np.ndarray:
    r"""Vectorized :math:`\int_0^\infty x^{h-1}e^{-ux^\alpha-vx}dx = v^{-h}\mathbb{L}_{\alpha,h}(u/v^\alpha)`.

    ``u`` and ``v`` broadcast against each other. ``v`` may lie on the closed
    right half-plane; the argument :math:`u/v^\alpha` is formed from
    principal logarithms, which is the continuation from
    :math:`\Re u, \Re v > 0`. ``point_tol`` is an absolute tolerance per
    entry of the result.
    """
    u = np.asarray(u, complex)
    v = np.asarray(v, complex)
    u, v = np.broadcast_arrays(u, v)
    if alpha == 2 and complex(h) == 1 and closed_form:
        return _gauss_kernel(u, v)
    origin = v == 0
    if np.any(origin):
        # at v = 0 the integral is a plain gamma integral in x^alpha
        out = np.empty(u.shape, complex)
        p = complex(h) / alpha
        out[origin] = special.gamma(p) * np.exp(-p * np.log(u[origin])) / alpha
        keep = ~origin
        pt = None if point_tol is None else np.broadcast_to(point_tol, u.shape)[keep]
        out[keep] = laplace_kernel(alpha, h, u[keep], v[keep], spec, pt, closed_form)
        return out
    lv = np.log(v)
    with np.errstate(divide="ignore"):
        lu = np.log(u)
    lw = lu - alpha * lv
    pref = np.exp(-complex(h) * lv)
    ptol = None if point_tol is None else np.broadcast_to(point_tol, lw.shape) / np.abs(pref)
    vals, _ = lfunc_values(alpha, h, logw=lw, spec=spec, point_tol=ptol)
    return pref * vals


def product_integral(a1, b1, y1, a2, b2, y2, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r"""Quadrature of :math:`\int_0^\infty x^{\beta_1+\beta_2-2}e^{-y_1x^{\alpha_1}-y_2x^{\alpha_2}}dx`."""
    s = complex(b1) + complex(b2) - 1

    def f(x):
        lx = math.log(x)
        return cmath.exp((s - 1) * lx - y1 * math.exp(a1 * lx) - y2 * math.exp(a2 * lx))

    return integrate_semi_infinite(f, spec, sigma=s.real).value


def product_closed_form(a1, b1, y1, a2, b2, y2, spec: QuadSpec = DEFAULT_SPEC) -> complex:
    r""":math:`\alpha_2^{-1}y_2^{-(\beta_1+\beta_2-1)/\alpha_2}\mathbb{L}_{\alpha_1/\alpha_2,(\beta_1+\beta_2-1)/\alpha_2}(y_1y_2^{-\alpha_1/\alpha_2})`."""
    s = (complex(b1) + complex(b2) - 1) / a2
    y1, y2 = complex(y1), complex(y2)
    z = y1 * y2 ** (-a1 / a2)
    return y2 ** (-s) / a2 * eval(LParams(a1 / a2, s), z, spec).value
