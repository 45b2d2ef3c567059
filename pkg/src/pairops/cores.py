"""Ideal enumeration, reductions, cores and hulls."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

import numpy as np

from .artinian import Submodule, TruncatedAlgebra, View, perp
from .linalg import Subspace

ENUMERATION_GUARD = 2**24


class FeasibilityError(RuntimeError):
    pass


def principal_ideals(A: TruncatedAlgebra, guard: int = ENUMERATION_GUARD) -> list[Submodule]:
    X = A.regular
    dm = A.dim - 1
    if A.p ** dm > guard:
        raise FeasibilityError(f"{A.p}^{dm} elements of m exceed the enumeration guard {guard}")
    seen: dict[bytes, Submodule] = {}
    for coeffs in cartesian(range(A.p), repeat=dm):
        a = np.zeros(A.dim, dtype=np.int64)
        a[1:] = coeffs
        S = Subspace.span(A.left_matrix(a).T, A.p, A.dim)
        seen.setdefault(S.key(), Submodule(X, S))
    full = X.full()
    seen.setdefault(full.space.key(), full)
    return list(seen.values())


def enumerate_ideals(A: TruncatedAlgebra, max_gens: int | None = None,
                     guard: int = ENUMERATION_GUARD) -> list[Submodule]:
    """All ideals generated by at most max_gens elements (all ideals when max_gens is None)."""
    if max_gens == 0:
        return [A.regular.zero()]
    principals = principal_ideals(A, guard)
    found = {I.space.key(): I for I in principals}
    frontier = list(principals)
    level = 1
    while frontier and (max_gens is None or level < max_gens):
        new = []
        for I in frontier:
            for P in principals:
                if P <= I:
                    continue
                S = I + P
                k = S.space.key()
                if k not in found:
                    found[k] = S
                    new.append(S)
        frontier = new
        level += 1
    out = list(found.values())
    out.sort(key=lambda I: (I.dim, I.space.key()))
    return out


def is_cl_reduction(L: Submodule, N: Submodule, M: Submodule, op) -> bool:
    if not (L <= N <= M):
        raise ValueError("need L inside N inside M")
    return N <= op(L, M)


@dataclass
class CoreResult:
    core: Submodule
    reductions: list
    exhaustive: bool


def core_over_candidates(N: Submodule, M: Submodule, op, candidates=None) -> CoreResult:
    """Intersection of all candidate L inside N that are op-reductions of N in M."""
    exhaustive = candidates is None
    if exhaustive:
        candidates = submodules_of(N)
    candidates = list(candidates)
    if not candidates:
        raise ValueError("empty candidate set")
    reds = [L for L in candidates if L <= N and is_cl_reduction(L, N, M, op)]
    core = N
    for L in reds:
        core = core & L
    return CoreResult(core, reds, exhaustive)


@dataclass
class HullResult:
    hull: Submodule
    expansions: list
    exhaustive: bool
    dual_core: Submodule | None = None
    agrees_with_dual: bool | None = None


def hull_over_candidates(A_: Submodule, B: Submodule, op_interior, candidates=None, closure=None) -> HullResult:
    """Sum of all C with A inside C inside B and op_interior(C, B) inside A.

    When ``closure`` is given (the operation dual to op_interior) the result is
    cross-checked against the annihilator of the closure-core of A^perp in B^v.
    """
    exhaustive = candidates is None
    if exhaustive:
        candidates = [C for C in submodules_of(B) if A_ <= C]
    exps = [C for C in candidates if A_ <= C <= B and op_interior(C, B) <= A_]
    hull = A_
    for C in exps:
        hull = hull + C
    res = HullResult(hull, exps, exhaustive)
    if closure is not None:
        V = View(B)
        D = V.module.dual()
        Np = perp(V.inward(A_), D)
        core = core_over_candidates(Np, D.full(), closure).core
        back = V.outward(Submodule(V.module, core.space.annihilator()))
        res.dual_core = back
        res.agrees_with_dual = back == hull
    return res


def submodules_of(M: Submodule) -> list[Submodule]:
    """All submodules of M when M is an ideal of an enumerable algebra."""
    X = M.module
    A = M.A
    if X is A.regular or (X.free_rank == 1 and X.dim == A.dim):
        return [I for I in enumerate_ideals_cached(A) if I <= M]
    return [U for U in all_submodules(X) if U <= M]


_IDEAL_CACHE: dict[int, list] = {}


def enumerate_ideals_cached(A: TruncatedAlgebra) -> list[Submodule]:
    key = id(A)
    if key not in _IDEAL_CACHE:
        _IDEAL_CACHE[key] = (A, enumerate_ideals(A))
    return _IDEAL_CACHE[key][1]


def all_submodules(X, guard: int = ENUMERATION_GUARD) -> list[Submodule]:
    """Every submodule of a small module, as sums of cyclic submodules."""
    if X.p ** X.dim > guard:
        raise FeasibilityError("module too large to enumerate")
    seen = {}
    cyclic = []
    for coeffs in cartesian(range(X.p), repeat=X.dim):
        U = X.generate([np.array(coeffs, dtype=np.int64)])
        if U.space.key() not in seen:
            seen[U.space.key()] = U
            cyclic.append(U)
    frontier = list(cyclic)
    while frontier:
        new = []
        for U in frontier:
            for C in cyclic:
                S = U + C
                if S.space.key() not in seen:
                    seen[S.space.key()] = S
                    new.append(S)
        frontier = new
    return sorted(seen.values(), key=lambda U: (U.dim, U.space.key()))
