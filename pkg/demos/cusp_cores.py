"""Reductions and cores of the maximal ideal of k[[t^2, t^3]], truncated at t^8."""

import sys

from pairops import build_algebra, jbf, residual_version
from pairops.cores import core_over_candidates, enumerate_ideals


def main(p=2):
    A = build_algebra(f"semigroup p={p} gens=2,3 trunc=8")
    m = A.maximal_ideal
    ideals = enumerate_ideals(A)
    print(f"{len(ideals)} ideals over F_{p}")
    for name, op in (("bf", jbf(m)), ("residual bf", residual_version(jbf(m)))):
        res = core_over_candidates(m, m, op, ideals)
        print(f"{name}-reductions of m: {', '.join(L.format() for L in res.reductions)}")
        print(f"{name}-core of m: {res.core.format()}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 2)
