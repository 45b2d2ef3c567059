"""Basically full closure and basically empty interior on k[x]/(x^4), side by side with duals."""

from pairops import build_algebra, jbe, jbf, smile_dual
from pairops.cores import enumerate_ideals


def main():
    A = build_algebra("artinian p=2 vars=x trunc=4")
    ideals = enumerate_ideals(A)
    m = A.maximal_ideal
    bf, be, dual = jbf(m), jbe(m), smile_dual(jbf(m))
    print(f"{'L':8} {'M':8} {'jbf':8} {'jbe':8} dual(jbf)")
    for M in ideals:
        for L in ideals:
            if L <= M:
                row = [L, M, bf(L, M), be(L, M), dual(L, M)]
                print(" ".join(f"{U.format():8}" for U in row))


if __name__ == "__main__":
    main()
