r"""Operators on holomorphic functions in the right half-plane and on the half-line.

Every transform-side operator is the Laplace image of a simple half-line
operator (:math:`F=\mathcal{L}f`):

================================  =========================================
transform side                    half-line side
================================  =========================================
:math:`A_\alpha`                  :math:`f(x)\mapsto f(x^\alpha)`
:math:`D_h`                       :math:`f(x)\mapsto x^h f(x)`
:math:`I`                         :math:`f(x)\mapsto -f(x)/x`
:math:`\widetilde R(h,\alpha,a)`  :math:`f(x)\mapsto x^h f(ax^\alpha)`
:math:`\widetilde T_\beta(is)`    :math:`f(x)\mapsto e^{isx^\beta}f(x)`
================================  =========================================

The transform-side operators are integrals against the boundary values,

.. math::

    (\mathcal{O}F)(z) = \frac{1}{2\pi i}\int_{c-i\infty}^{c+i\infty}
        k(u, z)F(u)\,du,

with :math:`c=0`. When the kernel is holomorphic in :math:`u` on
:math:`0\le\Re u\le c` the line may be moved to :math:`c>0` (Cauchy), which
is how nested compositions avoid boundary-on-boundary kernels.

The half-line operators :math:`B_\alpha` and :math:`\widetilde Q(\theta,\alpha,a)`
are integrals against one-sided stable type kernels.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy import special

from . import lfunc
from .errors import ConvergenceError, DomainError, UnsupportedRegimeError
from .halfline import HalfLineFunction, HoloFunction, riemann_liouville
from .quadrature import (
    OPERATOR_SPEC,
    QuadResult,
    QuadSpec,
    exp_sinh_rule,
    integrate_real_line,
    oscillatory_pair,
    sinh_line_rule,
    tanh_sinh_rule,
)

__all__ = [
    "GroupElementG",
    "SemigroupElementQ",
    "OperatorContext",
    "identity_g",
    "compose_g",
    "inverse_g",
    "compose_q",
    "LineRule",
    "cached",
    "frac_diff",
    "indefinite_int",
    "apply_A",
    "apply_R",
    "apply_T",
    "zolotarev_kernel",
    "q_kernel",
    "q_kernel_bromwich",
    "apply_B",
    "apply_Q",
    "hardy_norm",
    "image",
]


# ---------------------------------------------------------------- parameters


@dataclass(frozen=True)
class GroupElementG:
    r""":math:`\lambda R(h,\alpha,a)`, :math:`R(h,\alpha,a)f(x)=x^hf(ax^\alpha)`."""

    lam: complex = 1.0
    h: complex = 0.0
    alpha: float = 1.0
    a: float = 1.0

    def __post_init__(self):
        if self.lam == 0:
            raise DomainError("lambda must be nonzero")
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")
        if not self.a > 0:
            raise DomainError("a must be positive")
        object.__setattr__(self, "lam", complex(self.lam))
        object.__setattr__(self, "h", complex(self.h))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "a", float(self.a))

    def apply_halfline(self, f: Callable[[float], complex]) -> Callable[[float], complex]:
        """The half-line action as a callable."""
        return lambda x: self.lam * x**self.h * f(self.a * x**self.alpha)


def identity_g() -> GroupElementG:
    return GroupElementG(1.0, 0.0, 1.0, 1.0)


def compose_g(e1: GroupElementG, e2: GroupElementG) -> GroupElementG:
    r"""Product ``e1 * e2`` (``e2`` acts first).

    :math:`R(g,\beta,b)R(h,\alpha,a) = b^hR(g+h\beta,\alpha\beta,ab^\alpha)`.
    """
    lam = e1.lam * e2.lam * e1.a**e2.h
    return GroupElementG(lam, e1.h + e2.h * e1.alpha, e2.alpha * e1.alpha, e2.a * e1.a**e2.alpha)


def inverse_g(e: GroupElementG) -> GroupElementG:
    r"""Inverse element :math:`(\lambda^{-1}a^{h/\alpha}, -h/\alpha, 1/\alpha, a^{-1/\alpha})`."""
    return GroupElementG(e.a ** (e.h / e.alpha) / e.lam, -e.h / e.alpha, 1.0 / e.alpha, e.a ** (-1.0 / e.alpha))


@dataclass(frozen=True)
class SemigroupElementQ:
    r""":math:`Q(\theta,\alpha,a)F(z)=z^\theta F(az^\alpha)`, :math:`0<\alpha<1`, :math:`|\arg a|+\alpha\pi/2<\pi/2`."""

    theta: complex
    alpha: float
    a: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "theta", complex(self.theta))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "a", complex(self.a))
        if not 0 < self.alpha < 1:
            raise DomainError("alpha must lie in (0, 1)")
        if self.a == 0 or not self.margin > 0:
            raise DomainError("|arg a| + alpha*pi/2 < pi/2 fails")

    @property
    def margin(self) -> float:
        r""":math:`\pi/2 - \alpha\pi/2 - |\arg a|`, positive on the admissible domain."""
        return (1 - self.alpha) * math.pi / 2 - abs(cmath.phase(self.a))


def compose_q(e1: SemigroupElementQ, e2: SemigroupElementQ) -> Tuple[complex, SemigroupElementQ]:
    r"""Product ``e1 * e2`` (``e2`` acts first) as ``(prefactor, element)``.

    :math:`Q(\theta',\alpha',a')Q(\theta,\alpha,a)
    =(a')^\theta Q(\theta'+\theta\alpha',\alpha\alpha',a(a')^\alpha)`.
    """
    pref = e1.a**e2.theta
    return pref, SemigroupElementQ(e1.theta + e2.theta * e1.alpha, e1.alpha * e2.alpha, e2.a * e1.a**e2.alpha)


@dataclass(frozen=True)
class OperatorContext:
    """Hilbert-scale index (boundary integrals use ``mu = 1``) and tolerances."""

    mu: float = 1.0
    spec: QuadSpec = OPERATOR_SPEC

    def __post_init__(self):
        if not self.mu > 0:
            raise DomainError("mu must be positive")

    def boundary(self) -> "OperatorContext":
        if self.mu != 1:
            raise UnsupportedRegimeError("boundary integrals are implemented for mu = 1 only")
        return self


DEFAULT_CTX = OperatorContext()


# ---------------------------------------------------------------- line integrals


@dataclass(frozen=True)
class LineRule:
    r"""Sinh rule :math:`u = c + i\,\mathrm{scale}\,\sinh\xi` on a vertical line.

    ``step`` is the coarsest step; it is halved up to ``max_level`` times.
    ``xi_max`` bounds the line; the effective truncation is decided from the
    decay of the integrand. ``split`` integrates the two half-lines
    :math:`t>0`, :math:`t<0` separately with exp-sinh nodes clustering at
    :math:`t=0`, for kernels that are not smooth there.
    """

    c: float = 0.0
    scale: float = 1.0
    step: float = 0.25
    max_level: int = 7
    xi_max: float = 9.0
    split: bool = False

    def nodes(self, level: int):
        """``(t, w, w_coarse)`` at refinement ``level``."""
        step = self.step / 2**level
        if not self.split:
            return sinh_line_rule(step, self.xi_max)
        r, w, wc = exp_sinh_rule(step, -4.0, 3.0)
        return np.concatenate([-r[::-1], r]), np.concatenate([w[::-1], w]), np.concatenate([wc[::-1], wc])


class cached:
    """Memoizes a :class:`HoloFunction` on the exact node values it is asked for."""

    def __init__(self, F: HoloFunction):
        self.F = F
        self.store: Dict[complex, complex] = {}
        self.name = getattr(F, "name", "")

    def values(self, z) -> np.ndarray:
        z = np.asarray(z, complex)
        flat = z.ravel()
        missing = [v for v in dict.fromkeys(flat.tolist()) if v not in self.store]
        if missing:
            new = np.asarray(self.F.values(np.array(missing, complex)), complex)
            self.store.update(zip(missing, new.tolist()))
        return np.array([self.store[v] for v in flat.tolist()], complex).reshape(z.shape)

    def __call__(self, z):
        return complex(self.values(np.array([complex(z)]))[0])


def _values(F, z) -> np.ndarray:
    if hasattr(F, "values"):
        return np.asarray(F.values(z), complex)
    return np.array([complex(F(complex(v))) for v in np.ravel(z)], complex).reshape(np.shape(z))


def _truncated_values(F, nodes: np.ndarray, weights: np.ndarray, radius: np.ndarray, tol: float, chunk: int = 16):
    """Evaluate ``F`` at ``nodes`` in order of increasing ``radius``.

    Stops once two consecutive chunks beyond ``radius >= 1`` are negligible
    and returns zeros at the nodes that were never evaluated.
    """
    order = np.argsort(radius, kind="stable")
    out = np.zeros(nodes.shape, complex)
    quiet = 0
    for s in range(0, order.size, chunk):
        idx = order[s : s + chunk]
        v = _values(F, nodes[idx])
        if not np.all(np.isfinite(v)):
            raise DomainError("function is not finite on the integration line")
        out[idx] = v
        if radius[idx].min() >= 1 and np.max(np.abs(v) * weights[idx]) < tol:
            quiet += 1
            if quiet >= 2:
                break
        else:
            quiet = 0
    return out


def _refined_error(d1: np.ndarray, d0: Optional[np.ndarray]) -> np.ndarray:
    """Error of the finer of two successive levels from the last two level differences.

    For double-exponential rules the error roughly squares with each halving,
    so ``d1**2 / d0`` estimates the error of the current level.
    """
    if d0 is None:
        return d1
    with np.errstate(divide="ignore", invalid="ignore"):
        est = np.where(d0 > d1, d1**2 / d0, d1)
    return np.minimum(np.nan_to_num(est, nan=0.0), d1)


def _line_apply(
    F,
    kernel: Callable[[np.ndarray, np.ndarray, Optional[np.ndarray]], np.ndarray],
    z: np.ndarray,
    rule: LineRule,
    spec: QuadSpec,
    kernel_bound: float = 1.0,
) -> Tuple[np.ndarray, np.ndarray]:
    r""":math:`\frac{1}{2\pi}\int F(c+it)\,k(c+it,z)\,dt` for every target ``z``.

    ``kernel(u, z, tol)`` returns the matrix ``k(u_j, z_m)`` with absolute
    accuracy ``tol_j`` per row. ``kernel_bound`` bounds :math:`|k|`; it sets
    how small a node's weight must be to be dropped. Each target is refined
    until its own error estimate meets the tolerance.
    """
    z = np.asarray(z, complex).ravel()
    Fc = F if isinstance(F, cached) else cached(F)
    out = np.zeros(z.shape, complex)
    err_out = np.zeros(z.shape)
    pending = np.arange(z.size)
    last_diff = np.full(z.shape, np.nan)
    for level in range(rule.max_level + 1):
        t, w, wc = rule.nodes(level)
        w = w * rule.scale / (2 * math.pi)
        wc = wc * rule.scale / (2 * math.pi)
        u = rule.c + 1j * rule.scale * t
        Fv = _truncated_values(Fc, u, w, np.abs(t), spec.abs_tol / (100 * kernel_bound))
        mass = np.abs(Fv) * w
        active = np.flatnonzero(mass * kernel_bound > spec.abs_tol / (100 * t.size))
        if active.size == 0:
            return out, err_out
        budget = max(spec.abs_tol, spec.rel_tol * float(np.sum(mass[active])) * kernel_bound)
        row_tol = budget / (10 * active.size * mass[active])
        K = kernel(u[active, None], z[None, pending], row_tol[:, None])
        fine = (Fv[active] * w[active]) @ K
        diff = np.abs(fine - (Fv[active] * wc[active]) @ K)
        prev = last_diff[pending]
        err = _refined_error(diff, None if level == 0 else prev)
        # tail beyond the last nodes, exact for |integrand| ~ t^-2
        ends = np.array([np.argmin(t), np.argmax(t)])
        if np.any(Fv[ends] != 0):
            Ke = kernel(u[ends, None], z[None, pending], np.full((2, 1), spec.abs_tol))
            err = err + rule.scale / (2 * math.pi) * np.sum(np.abs(Fv[ends, None] * Ke) * np.abs(t[ends, None]), axis=0)
        last_diff[pending] = diff
        out[pending] = fine
        err_out[pending] = err
        if level == 0:
            continue
        done = err <= np.maximum(spec.abs_tol, spec.rel_tol * np.abs(fine))
        pending = pending[~done]
        if pending.size == 0:
            return out, err_out
    # estimates within two orders of the target are returned with their error
    slack = 100 * np.maximum(spec.abs_tol, spec.rel_tol * np.abs(out[pending]))
    if np.all(err_out[pending] <= slack):
        return out, err_out
    raise ConvergenceError(
        f"line integral did not converge at {pending.size} of {z.size} targets "
        f"(largest error estimate {float(np.max(err_out[pending])):.3g})"
    )


def _halfray_apply(
    G,
    kernel: Callable[[np.ndarray, np.ndarray], np.ndarray],
    z: complex,
    spec: QuadSpec,
    step: float = 0.25,
    max_level: int = 6,
) -> complex:
    r""":math:`i\int_0^\infty G(z - ir)\,k(r)\,dr`, the vertical path from :math:`z-i\infty` to ``z``."""
    # the bulk of G sits near Im u = 0, i.e. r = Im z; split the ray there
    R = max(0.0, z.imag) + 1.0 if z.imag > 1.0 else 0.0
    prev = None
    for level in range(max_level + 1):
        r, w, wc = exp_sinh_rule(step / 2**level, -4.0, 3.0)
        if R > 0:
            lam, _, w0, wc0 = tanh_sinh_rule(step / 2**level)
            r, w, wc = np.concatenate([R * lam, R + r]), np.concatenate([R * w0, w]), np.concatenate([R * wc0, wc])
        u = z - 1j * r
        if R > 0:
            Gv = _values(G, u)
        else:
            Gv = _truncated_values(G, u, w, r, spec.abs_tol / 100)
        kv = kernel(r)
        fine = 1j * complex(np.dot(w, Gv * kv))
        d1 = np.array([abs(fine - 1j * complex(np.dot(wc, Gv * kv)))])
        err = float(_refined_error(d1, prev)[0])
        prev = d1
        if level > 0 and err <= spec.target(fine):
            return fine
    raise ConvergenceError(f"indefinite integral did not converge at z = {z!r}")


def _as_targets(z, closed: bool = False):
    arr = np.asarray(z, complex)
    if np.any(arr.real < 0) or (not closed and np.any(arr.real == 0)):
        raise DomainError("targets must lie in the open right half-plane")
    return arr


def _finish(vals: np.ndarray, z):
    if np.ndim(z) == 0:
        return complex(vals.ravel()[0])
    return vals.reshape(np.shape(z))


# ---------------------------------------------------------------- D_h and I


def indefinite_int(F, z, ctx: OperatorContext = DEFAULT_CTX, m: int = 1):
    r""":math:`I^mF(z) = \frac{1}{(m-1)!}\int_{-i\infty}^{z}(z-u)^{m-1}F(u)\,du`.

    The path runs vertically from :math:`\Re z - i\infty` to ``z``; by
    holomorphy and decay this equals the path through the boundary.
    """
    if m < 1:
        raise DomainError("m must be a positive integer")
    zt = _as_targets(z)
    c = 1.0 / math.factorial(m - 1)
    out = []
    for zz in zt.ravel():
        # z - u = i r on the vertical path
        out.append(_halfray_apply(F, lambda r: c * (1j * r) ** (m - 1), complex(zz), ctx.spec))
    return _finish(np.array(out, complex), z)


def frac_diff(F, h: complex, z, ctx: OperatorContext = DEFAULT_CTX, rule: Optional[LineRule] = None):
    r"""Fractional derivative :math:`D_hF(z)=\frac{\Gamma(h+1)}{2\pi}\int F(it)(z-it)^{-h-1}dt`.

    The power uses the principal branch, positive on :math:`z-it>0`.
    ``h=0`` returns :math:`F(z)`; ``h=-m`` returns :math:`(-1)^mI^mF(z)`.
    ``rule.c`` may be any abscissa left of every target.
    """
    h = complex(h)
    zt = _as_targets(z)
    if h == 0:
        return _finish(_values(F, zt.ravel()), z)
    if h.imag == 0 and h.real < 0 and float(h.real).is_integer():
        m = int(-h.real)
        return _finish((-1) ** m * np.asarray(indefinite_int(F, zt.ravel(), ctx, m)), z)
    ctx.boundary()
    rule = rule or LineRule()
    if rule.c >= np.min(zt.real):
        raise DomainError("the integration line must lie left of the targets")
    g = complex(special.gamma(h + 1))

    def kernel(u, v, tol):
        return g * np.exp(-(h + 1) * np.log(v - u))

    vals, _ = _line_apply(F, kernel, zt.ravel(), rule, ctx.spec, kernel_bound=abs(g) / max(np.min(zt.real) - rule.c, 1e-3) ** max(h.real + 1, 0))
    return _finish(vals, z)


# ---------------------------------------------------------------- A, R, T


def _split(rule: LineRule) -> LineRule:
    # L_{alpha,beta}(w) for alpha > 1 or alpha < 0 has a branch point at w = 0,
    # so the boundary kernel is not smooth at u = 0
    return LineRule(rule.c, rule.scale, rule.step, rule.max_level, rule.xi_max, split=True)


def _check_line(F, rule: LineRule, shiftable: bool, what: str):
    """Validate the abscissa of the integration line.

    Lines left of the boundary need ``F`` holomorphic there (its declared
    ``abscissa``); lines right of it need a kernel entire in ``u``.
    """
    if rule.c < 0 and not rule.c > getattr(F, "abscissa", 0.0):
        raise DomainError("F is not known to be holomorphic on the requested line")
    if rule.c > 0 and not shiftable:
        raise DomainError(f"the kernel of {what} does not allow moving the line right of the boundary")


def apply_A(alpha: float, F, v, ctx: OperatorContext = DEFAULT_CTX, rule: Optional[LineRule] = None):
    r""":math:`A_\alpha F(v) = \frac{1}{2\pi}\int K_\alpha(-it, v)F(it)\,dt`,
    :math:`K_\alpha(u,v)=\int_0^\infty e^{-ux^\alpha-vx}dx = v^{-1}\mathbb{L}_{\alpha,1}(u/v^\alpha)`.

    For :math:`0<\alpha<1` the kernel is entire in :math:`u`, so ``rule.c > 0`` is allowed.
    """
    alpha = float(alpha)
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    vt = _as_targets(v)
    if alpha == 1:
        return _finish(_values(F, vt.ravel()), v)
    ctx.boundary()
    rule = rule or LineRule()
    _check_line(F, rule, alpha < 1, "A_alpha with alpha > 1")
    if alpha > 1 and rule.c == 0:
        rule = _split(rule)
    spec = ctx.spec

    def kernel(u, vv, tol):
        return lfunc.laplace_kernel(alpha, 1.0, -u, vv, spec, point_tol=tol)

    vals, _ = _line_apply(F, kernel, vt.ravel(), rule, spec, kernel_bound=1.0 / float(np.min(vt.real)))
    return _finish(vals, v)


def _apply_R_direct(h, alpha, a, F, vt, ctx, rule):
    spec = ctx.spec
    if alpha == 1:

        def kernel(u, vv, tol):
            return special.gamma(h + 1) * np.exp(-(h + 1) * np.log(vv - a * u))

    else:

        def kernel(u, vv, tol):
            return lfunc.laplace_kernel(alpha, h + 1, -a * u, vv, spec, point_tol=tol)

    vmin = float(np.min(vt.real))
    if vmin > 0:
        bound = abs(special.gamma(h.real + 1)) / vmin ** (h.real + 1)
    else:
        # boundary targets: the damping comes from the line alone
        p = (h.real + 1) / alpha
        bound = special.gamma(p) / (alpha * (a * -rule.c) ** p)
    vals, _ = _line_apply(F, kernel, vt, rule, spec, kernel_bound=bound)
    return vals


def apply_R(h: complex, alpha: float, a: float, F, z, ctx: OperatorContext = DEFAULT_CTX, rule: Optional[LineRule] = None):
    r""":math:`\widetilde R(h,\alpha,a)`, the image of :math:`f\mapsto x^hf(ax^\alpha)`.

    Kernel :math:`\int_0^\infty x^h e^{aux^\alpha-zx}dx = z^{-h-1}\mathbb{L}_{\alpha,h+1}(-au/z^\alpha)`
    against :math:`F(u)`, :math:`u\in i\mathbb{R}`. If :math:`\Re h+1\le0` the
    integer shift :math:`\widetilde R(h)=(-1)^nI^n\widetilde R(h+n)` is used.
    """
    h = complex(h)
    alpha, a = float(alpha), float(a)
    if alpha == 0 or not a > 0:
        raise DomainError("alpha must be nonzero and a positive")
    rule = rule or LineRule()
    # a line left of the boundary damps the kernel, so boundary targets are allowed
    zt = _as_targets(z, closed=alpha > 0 and rule.c < 0)
    ctx.boundary()
    # for alpha = 1 the kernel (z - au)^(-h-1) is analytic left of z/a
    shiftable = 0 < alpha < 1 or (alpha == 1 and a * rule.c < float(np.min(zt.real)))
    _check_line(F, rule, shiftable, "R with alpha outside (0, 1]")
    if alpha < 0 and rule.c < 0:
        raise DomainError("the kernel of R with alpha < 0 needs the line on the boundary")
    if h == 0 and alpha == 1 and a == 1:
        return _finish(_values(F, zt.ravel()), z)
    if h.real + 1 <= 0:
        n = int(math.floor(-(h.real + 1))) + 1
        inner = image(apply_R, h + n, alpha, a, F, ctx=ctx, rule=rule)
        return _finish((-1) ** n * np.asarray(indefinite_int(inner, zt.ravel(), ctx, n)), z)
    if (alpha < 0 or alpha > 1) and rule.c == 0:
        rule = _split(rule)
    return _finish(_apply_R_direct(h, alpha, a, F, zt.ravel(), ctx, rule), z)


def apply_T(beta: float, s: float, F, z, ctx: OperatorContext = DEFAULT_CTX, rule: Optional[LineRule] = None):
    r""":math:`\widetilde T_\beta(is)F(z)=\frac{1}{2\pi i}\int M(z-u)F(u)\,du`, the image of :math:`f\mapsto e^{isx^\beta}f`.

    :math:`M(v)=\int_0^\infty e^{isx^\beta-vx}dx = v^{-1}\mathbb{L}_{\beta,1}(-is/v^\beta)`.
    """
    beta, s = float(beta), float(s)
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    zt = _as_targets(z)
    if s == 0:
        return _finish(_values(F, zt.ravel()), z)
    ctx.boundary()
    rule = rule or LineRule()
    if rule.c >= np.min(zt.real):
        raise DomainError("the integration line must lie left of the targets")
    _check_line(F, rule, True, "T_beta")
    spec = ctx.spec

    def kernel(u, v, tol):
        return lfunc.laplace_kernel(beta, 1.0, -1j * s, v - u, spec, point_tol=tol)

    vals, _ = _line_apply(F, kernel, zt.ravel(), rule, spec, kernel_bound=1.0 / (float(np.min(zt.real)) - rule.c))
    return _finish(vals, z)


# ---------------------------------------------------------------- B and Q


def _q_kernel_values(theta: complex, alpha: float, a: complex, x: np.ndarray, y: np.ndarray, spec: QuadSpec, point_tol=None):
    r"""Vectorized :math:`N(x,y)` for :math:`\Re\theta>-1`.

    .. math::

        N(x,y) = \frac{x^{-\theta-1}}{2\pi}\,i\Big[e^{i\pi\theta}\mathbb{L}_{\alpha,\theta+1}(ayx^{-\alpha}e^{i\pi\alpha})
        - e^{-i\pi\theta}\mathbb{L}_{\alpha,\theta+1}(ayx^{-\alpha}e^{-i\pi\alpha})\Big]
    """
    x, y = np.broadcast_arrays(np.asarray(x, float), np.asarray(y, float))
    lx = np.log(x)
    base = cmath.log(a) + np.log(y) - alpha * lx
    # saddle-point exponent of the density near x = 0; past it the kernel underflows
    q = 1 / (1 - alpha)
    expo = ((1 - alpha) * alpha ** (alpha * q) * np.exp(q * base)).real
    dead = expo - (abs(theta) + 2) * (np.abs(lx) + np.abs(base)) > 745
    if np.any(dead):
        out = np.zeros(x.shape, complex)
        live = ~dead
        pt = None if point_tol is None else np.broadcast_to(point_tol, x.shape)[live]
        out[live] = _q_kernel_values(theta, alpha, a, x[live], y[live], spec, pt)
        return out.real if (a.imag == 0 and theta.imag == 0) else out
    b = theta + 1
    pref = np.exp(-b * lx) / (2 * math.pi)
    ptol = None if point_tol is None else np.broadcast_to(point_tol, x.shape) / np.abs(pref)
    up, _ = lfunc.lfunc_values(alpha, b, logw=base + 1j * math.pi * alpha, spec=spec, point_tol=ptol)
    if a.imag == 0 and theta.imag == 0:
        val = -2 * (cmath.exp(1j * math.pi * theta) * up).imag
        return (pref * val).real
    lo, _ = lfunc.lfunc_values(alpha, b, logw=base - 1j * math.pi * alpha, spec=spec, point_tol=ptol)
    return pref * 1j * (cmath.exp(1j * math.pi * theta) * up - cmath.exp(-1j * math.pi * theta) * lo)


def q_kernel(e: SemigroupElementQ, x, y, spec: QuadSpec = OPERATOR_SPEC):
    r"""Kernel of :math:`\widetilde Q(\theta,\alpha,a)`, the inverse Laplace transform in ``x`` of :math:`z^\theta e^{-ayz^\alpha}`."""
    if not e.theta.real > -1:
        raise DomainError("the kernel exists as a function only for Re theta > -1")
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    if np.any(x <= 0) or np.any(y <= 0):
        raise DomainError("x and y must be positive")
    out = _q_kernel_values(e.theta, e.alpha, e.a, x, y, spec)
    return out.item() if np.ndim(out) == 0 else out


def q_kernel_bromwich(e: SemigroupElementQ, x: float, y: float, spec: QuadSpec = OPERATOR_SPEC) -> complex:
    """The same kernel by rotated-ray quadrature of the Bromwich integral (independent of lfunc)."""
    return oscillatory_pair(e.theta + 1, e.a * y, x, e.alpha, spec).value


def zolotarev_kernel(alpha: float, x, y, spec: QuadSpec = OPERATOR_SPEC):
    r""":math:`-\frac{1}{\pi x}\Im\,\mathbb{L}_{\alpha,1}(x^{-\alpha}ye^{i\pi\alpha})`, the density at ``x`` of the
    one-sided :math:`\alpha`-stable law at time ``y``."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    return q_kernel(SemigroupElementQ(0.0, alpha, 1.0), x, y, spec)


def _halfline_values(f, y: np.ndarray) -> np.ndarray:
    if hasattr(f, "values"):
        return np.asarray(f.values(y), complex)
    return np.array([complex(f(float(v))) for v in y.ravel()], complex).reshape(y.shape)


def _kernel_apply_halfline(kern, f, x: np.ndarray, spec: QuadSpec, step: float = 0.5, max_level: int = 6) -> np.ndarray:
    r""":math:`\int_0^\infty N(x,y)f(y)\,dy` in the variable :math:`y=e^s` for every ``x``."""
    prev = None
    for level in range(max_level + 1):
        s, w, wc = sinh_line_rule(step / 2**level, 4.0)
        s = 3.0 * s
        w, wc = 3.0 * w, 3.0 * wc
        ok = np.abs(s) < 700
        y = np.exp(s[ok])
        fv = _halfline_values(f, y) * y
        mass = np.abs(fv) * w[ok]
        active = mass > spec.abs_tol / (100 * max(1, y.size))
        ya, fa = y[active], fv[active]
        budget = max(spec.abs_tol, spec.rel_tol * float(mass.sum()))
        tol = budget / (10 * max(1, active.sum()) * mass[active])
        K = kern(x[None, :], ya[:, None], tol[:, None])
        fine = (fa * w[ok][active]) @ K
        coarse = (fa * wc[ok][active]) @ K
        err = _refined_error(np.abs(fine - coarse), None if prev is None else prev[1])
        prev = (fine, np.abs(fine - coarse))
        if level > 0 and np.all(err <= np.maximum(spec.abs_tol, spec.rel_tol * np.abs(fine))):
            return fine
    raise ConvergenceError(f"kernel integral did not converge (error estimate {float(np.max(prev[1])):.3g})")


def apply_Q(e: SemigroupElementQ, f, x, spec: QuadSpec = OPERATOR_SPEC):
    r""":math:`\widetilde Q(\theta,\alpha,a)f(x)=\int_0^\infty N(x,y)f(y)\,dy`, the image of :math:`F\mapsto z^\theta F(az^\alpha)`.

    For :math:`\Re\theta\le-1` the shift :math:`\widetilde Q(\theta)=J_n\circ\widetilde Q(\theta+n)`
    is used with the smallest ``n`` making :math:`\Re\theta+n>0`.
    """
    xa = np.asarray(x, float)
    if np.any(xa <= 0):
        raise DomainError("x must be positive")
    if e.theta.real <= -1:
        n = int(math.floor(-e.theta.real)) + 1
        inner = SemigroupElementQ(e.theta + n, e.alpha, e.a)

        def g(t):
            return complex(apply_Q(inner, f, t, spec)) if t > 0 else 0.0

        out = np.array([riemann_liouville(g, n, float(t), spec) for t in xa.ravel()], complex)
        return _finish(out, x)

    def kern(xx, yy, tol):
        return _q_kernel_values(e.theta, e.alpha, e.a, xx, yy, spec, point_tol=tol)

    out = _kernel_apply_halfline(kern, f, xa.ravel(), spec)
    return _finish(out, x)


def apply_B(alpha: float, f, x, spec: QuadSpec = OPERATOR_SPEC):
    r"""Zolotarev operator :math:`B_\alpha f(x)=\int_0^\infty N_\alpha(x,y)f(y)\,dy`, the image of :math:`F(z)\mapsto F(z^\alpha)`."""
    if not 0 < alpha < 1:
        raise DomainError("alpha must lie in (0, 1)")
    return apply_Q(SemigroupElementQ(0.0, alpha, 1.0), f, x, spec)


# ---------------------------------------------------------------- utilities


def image(op: Callable, *args, name: str = "", **kwargs) -> HoloFunction:
    """Wrap ``z -> op(*args, F, z)``-style partial application as a vectorized :class:`HoloFunction`."""

    def vec(z):
        return np.asarray(op(*args, z, **kwargs), complex)

    return HoloFunction(lambda z: complex(op(*args, z, **kwargs)), name=name, vectorized=vec)


def hardy_norm(F, ctx: OperatorContext = DEFAULT_CTX, lines: Optional[Tuple[float, ...]] = None, rule: Optional[LineRule] = None) -> float:
    r"""Hardy-space norm :math:`\big(\frac{1}{2\pi}\int|F(it)|^2dt\big)^{1/2}`.

    Boundary values must decay faster than :math:`|t|^{-1/2}` by a margin the
    sinh rule resolves; otherwise the truncated tail raises
    :class:`ConvergenceError`.

    With ``lines`` the squared norms on :math:`\Re z=c` are computed for each
    ``c`` and extrapolated polynomially to :math:`c=0`; this is for functions
    whose boundary values are not directly computable.
    """
    ctx.boundary()
    spec = ctx.spec
    rule = rule or LineRule()
    Fc = cached(F)

    def on_line(c):
        r = LineRule(c, rule.scale, rule.step, rule.max_level, rule.xi_max)

        def kernel(u, v, tol):
            return np.conj(Fc.values(u[:, 0]))[:, None] * np.ones(v.shape)

        vals, _ = _line_apply(Fc, kernel, np.array([1.0]), r, spec)
        return float(vals[0].real)

    if not lines:
        return math.sqrt(on_line(0.0))
    cs = np.asarray(lines, float)
    sq = np.array([on_line(c) for c in cs])
    coef = np.polyfit(cs, sq, len(cs) - 1)
    return math.sqrt(float(np.polyval(coef, 0.0)))
