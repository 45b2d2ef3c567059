"""Integral closures at desk scale: Newton polygons, liftable closure, certificates, the DVR."""

import random

from pairops.dvr import ehu_li_dvr, random_pair
from pairops.integral import (
    GradedSubmodule,
    IntegralityCertificate,
    is_reduction_graded,
    liftable_closure_principal,
    verify_certificate,
)
from pairops.monomial import MonomialIdeal, newton_closure, ratliff_rush


def main():
    L = MonomialIdeal.parse("x^2, y^2")
    print("closure of", L, "is", newton_closure(L))
    print("liftable closure of", L, "inside", L + MonomialIdeal.parse("x*y"), "is",
          liftable_closure_principal(L, "x*y"))
    I = MonomialIdeal.parse("x^4, x^3*y, x*y^3, y^4")
    print("Ratliff-Rush closure of", I, "is", ratliff_rush(I).ideal)

    for p in (2, 3):
        K = GradedSubmodule(2, 2, [["x", "0"], ["y", "-x"], ["0", "y"]], p)
        mm = GradedSubmodule(2, 2, [["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]], p)
        print(f"F_{p}: K reduces m+m at degree", is_reduction_graded(K, mm).degree)
        for sign in "-+":
            line = f"(y*t1)^2 = y*t1*(y*t1 - x*t2) {sign} x*t1*(y*t2)"
            print(f"  {line}: {verify_certificate(IntegralityCertificate.parse_line(line), K)}")

    rng = random.Random(0)
    strict = 0
    for _ in range(20):
        pair = random_pair(rng)
        strict += not ehu_li_dvr(pair, "ehu") <= ehu_li_dvr(pair, "liftable")
    print(f"DVR: ehu strictly bigger than li on {strict} of 20 random pairs")


if __name__ == "__main__":
    main()
