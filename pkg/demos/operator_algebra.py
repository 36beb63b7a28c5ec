"""Operators on Laplace images: kernels, group laws and the Zolotarev semigroup.

Everything acts on F = L[phi] with phi(x) = exp(-1/x - x), a function flat at
the origin whose image decays fast on the imaginary axis.

Run with ``python demos/operator_algebra.py`` (about half a minute).
"""

import cmath

import numpy as np

from lfrac import holo, verify
from lfrac.halfline import HalfLineFunction, laplace, laplace_image, make_test_function
from lfrac.holo import GroupElementG, LineRule, SemigroupElementQ


def main():
    phi = make_test_function("phi", c=1, d=1, k=0)
    F = laplace_image(phi)
    z = np.array([0.5, 1.0, 1 + 1j])

    # exact parameter algebra of x^h f(a x^alpha)
    e1, e2 = GroupElementG(1, 1, 2, 3), GroupElementG(1, 2, 0.5, 4)
    e = holo.compose_g(e1, e2)
    print(f"R(1,2,3) R(2,1/2,4) = {e.lam.real:g} R({e.h.real:g}, {e.alpha:g}, {e.a:.6f})")
    print(f"inverse of R(1,1,2): {holo.inverse_g(GroupElementG(1, 1, 1, 2))}")

    # each kernel operator is the Laplace transform of a half-line map
    print("\nkernel operator vs transform of the half-line map")
    for label, val, ref in (
        ("A_1/2 ", holo.apply_A(0.5, F, z), lambda t: phi(t**0.5)),
        ("R(1/2,1/2,2)", holo.apply_R(0.5, 0.5, 2.0, F, z), lambda t: t**0.5 * phi(2 * t**0.5)),
        ("T_1/2(i)", holo.apply_T(0.5, 1.0, F, z), lambda t: cmath.exp(1j * t**0.5) * phi(t)),
    ):
        g = HalfLineFunction(ref, decay_rate=1.0)
        err = max(abs(v - laplace(g, complex(w))) for v, w in zip(val, z))
        print(f"  {label:13s} max error {err:.1e}")

    # fractional derivatives compose additively
    D = holo.cached(holo.image(holo.frac_diff, F, 0.5))
    dd = holo.frac_diff(D, 0.5, z, rule=LineRule(c=0.35))
    print(f"\nD_1/2 D_1/2 F - D_1 F: {np.max(np.abs(dd - holo.frac_diff(F, 1.0, z))):.1e}")

    # conjugating D_h by A_alpha rescales the order
    for a, h in ((0.5, 0.5), (0.5, 1.0)):
        print(f"A_{a} D_{h} A_{a}^-1 - D_{a * h}: {np.max(verify.conjugation_error(a, h)):.1e}")

    # the Zolotarev operators form a semigroup in alpha
    x = np.array([0.5, 1.0, 2.0])
    Bh = HalfLineFunction(lambda y: complex(holo.apply_B(0.5, phi, y)), vectorized=lambda y: holo.apply_B(0.5, phi, y))
    print(f"\nB_1/2 B_1/2 phi - B_1/4 phi: {np.max(np.abs(holo.apply_B(0.5, Bh, x) - holo.apply_B(0.25, phi, x))):.1e}")
    pref, q = holo.compose_q(SemigroupElementQ(2, 0.5, cmath.exp(1j * np.pi / 8)), SemigroupElementQ(1, 0.5, 1))
    print(f"Q(2,1/2,e^(i pi/8)) Q(1,1/2,1) = {pref:.6f} * Q({q.theta.real:g}, {q.alpha:g}, {q.a:.6f}),"
          f" margin {q.margin:.4f}")


if __name__ == "__main__":
    main()
