"""A tour of the L-function: one value, several independent routes.

Run with ``python demos/lfunction_tour.py``.
"""

import cmath
import math

import mpmath

from lfrac import lfunc
from lfrac.lfunc import LParams


def main():
    p = LParams(0.5, 1.0)
    z = 2.0

    # the same number from the power series, the Barnes integral and the
    # Laplace-type integral int x^{b-1} exp(-z x^a - x) dx
    series = lfunc.eval_series_small_alpha(p, z).value
    barnes = lfunc.eval_barnes(p, z).value
    integral = lfunc.eval_laplace_repr(0.5, 1.0, z, 1.0)
    exact = 1 - mpmath.sqrt(mpmath.pi) * mpmath.e * mpmath.erfc(1)
    print("L_{1/2,1}(2)")
    for name, v in (("series", series), ("Barnes", barnes), ("integral", integral)):
        print(f"  {name:9s} {v.real:.15f}   |diff from erfc form| = {abs(v - complex(exact)):.1e}")

    # dispatch picks a route on its own and reports it
    print("\nautomatic dispatch")
    for a, b, w in ((0.3, 1.5, 0.1), (0.3, 1.5, 40.0), (2.5, 0.5, 3.0), (1.0, 2.0, 1.0), (-0.5, 0.25, 1.0)):
        r = lfunc.eval(LParams(a, b), w)
        print(f"  L_{{{a:g},{b:g}}}({w:g}) = {r.value.real:+.12e}  via {r.method.value}")

    # inversion symmetry a -> 1/a maps large alpha into (0, 1)
    q, w, pref = lfunc.symmetry_reduce(LParams(2.0, 2.0), 4.0)
    print(f"\nL_{{2,2}}(4) = {pref.real:g} * L_{{{q.alpha:g},{q.beta.real:g}}}({w.real:g})")
    lhs = lfunc.eval(LParams(2.0, 2.0), 4.0).value
    rhs = pref * lfunc.eval(q, w).value
    print(f"  both sides: {lhs.real:.15f}  {rhs.real:.15f}")

    # complex arguments inside the Barnes sector
    w = cmath.exp(0.7j * math.pi)
    s = lfunc.eval_series_small_alpha(p, w).value
    b = lfunc.eval_barnes(p, w).value
    print(f"\nL_{{1/2,1}}(e^(0.7 i pi)): series {s:.12f}, Barnes {b:.12f}")

    # the Wright function shares the series machinery with 1/Gamma
    print(f"\nW_{{1,1}}(1) = {lfunc.wright_eval(1, 1, 1).real:.15f} (I_0(2) = {float(mpmath.besseli(0, 2)):.15f})")


if __name__ == "__main__":
    main()
