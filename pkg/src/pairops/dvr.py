"""Finitely generated modules over the DVR k[x] localized at (x), k = F_p.

Matrices hold elements of the fraction field F_p(x); an element lies in the
local ring when its valuation at x is >= 0. Row and column operations only
ever scale by units of the local ring, so elimination stays inside it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import GF
from sympy.polys.fields import field

from .linalg import check_prime


@lru_cache(maxsize=None)
def fraction_field(p: int):
    return field("x", GF(check_prime(p)))


def valuation(a) -> float:
    if a == 0:
        return float("inf")
    lo = lambda f: min(m[0] for m in f.monoms())
    return lo(a.numer) - lo(a.denom)


def _copy(A):
    return [list(r) for r in A]


def _zeros(F, r, c):
    return [[F.zero] * c for _ in range(r)]


def identity_matrix(F, n):
    out = _zeros(F, n, n)
    for i in range(n):
        out[i][i] = F.one
    return out


def matmul(A, B, F):
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(inner)), F.zero) for j in range(cols)]
            for i in range(len(A))]


def columns(A, ncols=None):
    n = len(A[0]) if A else (ncols or 0)
    return [[row[j] for row in A] for j in range(n)]


def from_columns(cols, nrows, F):
    out = _zeros(F, nrows, len(cols))
    for j, c in enumerate(cols):
        for i in range(nrows):
            out[i][j] = c[i]
    return out


@dataclass
class Smith:
    """U * A * V = D with U, V invertible over the local ring and D = diag(x^e)."""

    U: list
    V: list
    Uinv: list
    exponents: list
    rank: int
    nrows: int
    ncols: int


def smith(A, F) -> Smith:
    nr = len(A)
    nc = len(A[0]) if nr else 0
    D = _copy(A)
    U, Uinv, V = identity_matrix(F, nr), identity_matrix(F, nr), identity_matrix(F, nc)
    x = F.gens[0]
    exps = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                v = valuation(D[i][j])
                if v != float("inf") and (best is None or v < best[0]):
                    best = (v, i, j)
        if best is None:
            break
        v, i, j = best
        if v < 0:
            raise ValueError("matrix entries must lie in the local ring")
        # move pivot to (t, t)
        D[t], D[i] = D[i], D[t]
        U[t], U[i] = U[i], U[t]
        for row in Uinv:
            row[t], row[i] = row[i], row[t]
        for row in D:
            row[t], row[j] = row[j], row[t]
        for row in V:
            row[t], row[j] = row[j], row[t]
        # normalise pivot to x^v by a unit
        u = D[t][t] / x**v
        inv = 1 / u
        D[t] = [a * inv for a in D[t]]
        U[t] = [a * inv for a in U[t]]
        for row in Uinv:
            row[t] = row[t] * u
        for r in range(nr):
            if r != t and D[r][t] != 0:
                c = D[r][t] / D[t][t]
                D[r] = [a - c * b for a, b in zip(D[r], D[t])]
                U[r] = [a - c * b for a, b in zip(U[r], U[t])]
                for row in Uinv:
                    row[t] = row[t] + c * row[r]
        for s in range(nc):
            if s != t and D[t][s] != 0:
                c = D[t][s] / D[t][t]
                for row in D:
                    row[s] = row[s] - c * row[t]
                for row in V:
                    row[s] = row[s] - c * row[t]
        exps.append(int(v))
        t += 1
    return Smith(U, V, Uinv, exps, t, nr, nc)


def parse_matrix(rows, F):
    """Rows of polynomial strings (or numbers) in x into a matrix over F."""
    sym = F.symbols[0]
    out = []
    for r in rows:
        out.append([F.from_expr(parse_expr(e.replace("^", "**"), {"x": sym})) if isinstance(e, str)
                    else F(e) for e in r])
    return out


@dataclass
class DvrSmithResult:
    exponents: list
    free_rank: int


def dvr_smith(P, p: int = 2) -> DvrSmithResult:
    """Invariant factor exponents of the module coker(P) over the DVR."""
    F, _ = fraction_field(p)
    A = parse_matrix(P, F) if P and not hasattr(P[0][0], "numer") else P
    S = smith(A, F)
    return DvrSmithResult(S.exponents, S.nrows - S.rank)


def minor_valuation_oracle(A, k: int) -> float:
    """Minimal valuation of the k x k minors (the product of the first k invariant factors)."""
    from itertools import combinations

    def det(M):
        if len(M) == 1:
            return M[0][0]
        return sum(((-1) ** j) * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]])
                   for j in range(len(M)))

    nr, nc = len(A), len(A[0])
    best = float("inf")
    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            best = min(best, valuation(det([[A[i][j] for j in cs] for i in rs])))
    return best


# submodules of R^s ------------------------------------------------------------------

class FreeSubmodule:
    """The submodule of R^s generated by the given columns."""

    def __init__(self, F, s: int, gens):
        self.F = F
        self.s = s
        self.gens = [[F(a) for a in g] for g in gens]
        self._smith = None

    @property
    def smith(self) -> Smith:
        if self._smith is None:
            if self.gens:
                self._smith = smith(from_columns(self.gens, self.s, self.F), self.F)
            else:
                self._smith = Smith(identity_matrix(self.F, self.s), [], identity_matrix(self.F, self.s),
                                    [], 0, self.s, 0)
        return self._smith

    def contains(self, v) -> bool:
        S = self.smith
        w = [sum((S.U[i][k] * v[k] for k in range(self.s)), self.F.zero) for i in range(self.s)]
        for i in range(self.s):
            if i < S.rank:
                if valuation(w[i]) < S.exponents[i]:
                    return False
            elif w[i] != 0:
                return False
        return True

    def __le__(self, other: "FreeSubmodule") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        return isinstance(other, FreeSubmodule) and self <= other and other <= self

    def __add__(self, other: "FreeSubmodule") -> "FreeSubmodule":
        return FreeSubmodule(self.F, self.s, self.gens + other.gens)

    def colon_x(self) -> "FreeSubmodule":
        """{v : x v in self}."""
        x = self.F.gens[0]
        gens = [[a * x for a in col] for col in columns(identity_matrix(self.F, self.s))]
        return preimage_matrix(from_columns(gens, self.s, self.F), self)


def kernel(B, F, ncols: int):
    """Generators of {v in R^ncols : B v = 0}."""
    if not B:
        return columns(identity_matrix(F, ncols))
    S = smith(B, F)
    return [[S.V[i][j] for i in range(ncols)] for j in range(S.rank, ncols)]


def preimage_matrix(f, W: FreeSubmodule) -> FreeSubmodule:
    """{v : f v in W} for f a q x s matrix and W inside R^q."""
    F = W.F
    q = len(f)
    s = len(f[0])
    block = [list(f[i]) + [-g[i] for g in W.gens] for i in range(q)]
    ker = kernel(block, F, s + len(W.gens))
    return FreeSubmodule(F, s, [v[:s] for v in ker])


def image_matrix(f, U: FreeSubmodule, q: int) -> FreeSubmodule:
    F = U.F
    return FreeSubmodule(F, q, [[sum((f[i][k] * g[k] for k in range(len(g))), F.zero) for i in range(q)]
                                for g in U.gens])


# pairs L = K/col(P) inside M = R^s/col(P) --------------------------------------------

@dataclass
class DvrPair:
    p: int
    P: list        # s x c presentation matrix
    K: list        # extra generators (columns) of the preimage of L

    def __post_init__(self):
        self.F, _ = fraction_field(self.p)
        self.s = len(self.P)

    @property
    def relations(self) -> FreeSubmodule:
        return FreeSubmodule(self.F, self.s, columns(self.P, 0))

    @property
    def preimage_L(self) -> FreeSubmodule:
        return self.relations + FreeSubmodule(self.F, self.s, self.K)

    def ambient(self) -> FreeSubmodule:
        return FreeSubmodule(self.F, self.s, columns(identity_matrix(self.F, self.s)))

    def smith(self) -> Smith:
        return self.relations.smith

    def torsion_preimage(self) -> FreeSubmodule:
        """Preimage in R^s of the torsion of M, read off the Smith coordinates."""
        S = self.smith()
        return FreeSubmodule(self.F, self.s, [[S.Uinv[i][j] for i in range(self.s)] for j in range(S.rank)])

    def saturation(self) -> FreeSubmodule:
        """{v : x^k v in col(P)}, by iterating the colon by x until it stabilises."""
        cur = self.relations
        while True:
            nxt = cur.colon_x() + cur
            if nxt <= cur:
                return cur
            cur = nxt

    def versal_map(self):
        """M -> R^(s - r): the quotient by torsion, a versal map to free modules."""
        S = self.smith()
        return [list(S.U[i]) for i in range(S.rank, self.s)]

    def is_torsionless(self) -> bool:
        return all(e == 0 for e in self.smith().exponents)


def ehu_dvr(pair: DvrPair) -> FreeSubmodule:
    """Preimage under the versal map of the (already closed) image of L."""
    f = pair.versal_map()
    q = len(f)
    if q == 0:
        return pair.ambient()
    img = image_matrix(f, pair.preimage_L, q)
    return preimage_matrix(f, img)


def li_dvr(pair: DvrPair) -> FreeSubmodule:
    """Closure of the preimage in the free cover, pushed forward: K is closed already."""
    return pair.preimage_L


def li_h_dvr(pair: DvrPair) -> FreeSubmodule:
    """li through the embedding M -> C taking each torsion summand R/x^e into R/x^(e+1) by x."""
    S = pair.smith()
    F = pair.F
    x = F.gens[0]
    s = pair.s
    # coordinates w = U v; embedding scales the torsion coordinates by x
    scale = identity_matrix(F, s)
    for i in range(S.rank):
        if S.exponents[i] > 0:
            scale[i][i] = x
    emb = matmul(scale, S.U, F)
    rel_C = FreeSubmodule(F, s, [[(x ** (e + 1) if i == j else F.zero) for i in range(s)]
                                 for j, e in enumerate(S.exponents) if e > 0]
                          + [[F.one if i == j else F.zero for i in range(s)]
                             for j, e in enumerate(S.exponents) if e == 0])
    L_C = image_matrix(emb, pair.preimage_L, s) + rel_C
    closed = L_C  # li on C: the preimage in the free cover is closed
    return preimage_matrix(emb, closed)


def ehu_li_dvr(pair: DvrPair, which: str) -> FreeSubmodule:
    if which == "ehu":
        return ehu_dvr(pair)
    if which in ("liftable", "li"):
        return li_dvr(pair)
    if which in ("liftable_hereditary", "li_h"):
        return li_h_dvr(pair)
    raise ValueError(f"unknown DVR closure {which!r}")


def ehu_by_saturation(pair: DvrPair) -> FreeSubmodule:
    return pair.preimage_L + pair.saturation()


def random_pair(rng: random.Random, p: int = 2, max_rank: int = 3, max_deg: int = 3) -> DvrPair:
    F, x = fraction_field(p)
    s = rng.randint(1, max_rank)
    c = rng.randint(0, s)

    def poly():
        if rng.random() < 0.3:
            return F.zero
        v = rng.randint(0, max_deg)
        return x**v * F(sum(rng.randrange(p) * x**k for k in range(2)) + 1) if rng.random() < 0.5 else x**v

    P = [[poly() for _ in range(c)] for _ in range(s)]
    K = [[poly() for _ in range(s)] for _ in range(rng.randint(0, 2))]
    return DvrPair(p, P, K)
