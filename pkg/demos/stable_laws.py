"""Stable densities and the Cauchy-type integrals, all through the L-function.

Run with ``python demos/stable_laws.py``.
"""

import math

import numpy as np

from lfrac import stable
from lfrac.stable import StableParams


def main():
    # one-sided stable densities g(y; t), the inverse Laplace transform of exp(-t z^a)
    print("one-sided densities at t = 1")
    ys = np.array([0.05, 0.2, 0.5, 1.0, 2.0, 5.0])
    print("  y      " + "".join(f"{y:>12g}" for y in ys))
    for a in (0.3, 0.5, 0.8):
        vals = stable.subordinator_density_values(a, 1.0, ys)
        print(f"  a={a:<4g} " + "".join(f"{v:12.4e}" for v in vals))
    levy = 1 / (2 * math.sqrt(math.pi)) * math.exp(-0.25)
    print(f"  a=1/2, y=1 against the closed form: {stable.subordinator_density_lfunc(0.5, 1, 1) - levy:+.1e}")

    for a in (0.3, 0.5, 0.8):
        r = stable.normalization_check(lambda y, a=a: stable.subordinator_density_values(a, 1.0, y), vectorized=True)
        print(f"  total mass a={a}: {r.value.real:.12f}")

    # two-sided strictly stable laws with skewness gamma
    print("\ntwo-sided densities (L-function form vs characteristic-function inversion)")
    for a, g in ((0.5, 0.25), (1.5, 0.4), (1.5, -0.4)):
        p = StableParams(a, g)
        for x in (0.5, 2.0):
            v, w = stable.stable_pdf(p, x), stable.stable_pdf_inversion(p, x)
            print(f"  a={a}, gamma={g:+}, x={x}: {v:.12f}  {w:.12f}")

    # phi_a(x) = int exp(-t^a) cos(tx) dt is positive for 0 < a <= 2
    print("\nminimum of phi_a on [0, 20]")
    grid = np.linspace(0, 20, 81)
    for a in (0.3, 0.7, 1.3, 2.0):
        rep = stable.positivity_scan(lambda x, a=a: stable.cauchy_density_integral(a, x), grid)
        print(f"  a={a}: min {rep.min_value:.3e} at x={rep.argmin:g}, violations {len(rep.violations)}")


if __name__ == "__main__":
    main()
