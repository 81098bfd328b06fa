#!/usr/bin/env python3
"""Emit the coefficient tables of the construction as LaTeX.

Prints three blocks: the A^(r)_s matrix governing the action of the
equivalence transformation on negative powers of x, the reduced-product
coefficients c_{r,s} written as combinations of the M~_s operators, and
the Laplacian polynomials k~_r(Delta) for the sphere.
"""

import argparse

from wickred.cli import _latex_frac
from wickred.equiv import a_coeff
from wickred.moreno import k_poly
from wickred.reduction import k_coeff


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--rmax", type=int, default=8)
    ap.add_argument("--n", type=int, default=1, help="dimension for the k~ table")
    args = ap.parse_args()
    rmax = args.rmax

    print("% A^{(r)}_s for r (rows) and s (columns) up to", rmax)
    print(r"\begin{pmatrix}")
    for r in range(rmax + 1):
        row = " & ".join(_latex_frac(a_coeff(r, s)) for s in range(rmax + 1))
        print(row + (r" \\" if r < rmax else ""))
    print(r"\end{pmatrix}")
    print()

    print("% reduced-product coefficients: K~_r as combinations of M~_s")
    print(r"\begin{align*}")
    for r in range(1, rmax + 1):
        body = ""
        for s in range(1, r + 1):
            c = k_coeff(r, s)
            if not c:
                continue
            part = _latex_frac(c) + rf"\,\tilde{{M}}_{{{s}}}"
            body += part if not body else (part if part.startswith("-") else "+" + part)
        print(rf"\tilde{{K}}_{{{r}}} &= {body} \\")
    print(r"\end{align*}")
    print()

    print(f"% Laplacian polynomials on the n = {args.n} reduced space")
    for r in range(1, rmax + 1):
        print(rf"\tilde{{k}}_{{{r}}}(\Delta) = {k_poly(r, args.n).latex()}")


if __name__ == "__main__":
    main()
