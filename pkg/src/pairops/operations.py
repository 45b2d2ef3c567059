"""Pair operations on nested modules L in M, and the constructions built from them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .artinian import (
    FinModule,
    ModuleMap,
    QuotientView,
    Submodule,
    TruncatedAlgebra,
    UnsupportedError,
    View,
    annihilator,
    free_preenvelope,
    free_presentation,
    hom_space,
    ideal_multiply,
    injective_embedding,
    is_gorenstein,
    module_colon,
    perp,
    socle,
)
from .dvr import DvrPair, ehu_dvr, li_dvr
from .integral import liftable_closure_principal
from .monomial import MonomialIdeal, newton_closure, ratliff_rush_pair


class ContextMismatch(TypeError):
    pass


@dataclass
class PairOp:
    """A named pair operation; ``fn(L, M)`` returns a submodule of M."""

    name: str
    fn: Callable
    context: str = "artinian"
    params: dict = field(default_factory=dict)

    def __call__(self, L, M):
        if self.context == "artinian":
            if not isinstance(L, Submodule) or not isinstance(M, Submodule):
                raise ContextMismatch(f"{self.name} expects submodules of a finite module")
            if not L <= M:
                raise ValueError(f"{self.name}: L is not contained in M")
        elif self.context == "monomial":
            if not isinstance(L, MonomialIdeal) or not isinstance(M, MonomialIdeal):
                raise ContextMismatch(f"{self.name} expects monomial ideals")
            if not L.issubset(M):
                raise ValueError(f"{self.name}: L is not contained in M")
        elif self.context == "dvr":
            if not isinstance(M, DvrPair):
                raise ContextMismatch(f"{self.name} expects a DVR pair as ambient")
        return self.fn(L, M)

    def __repr__(self):
        return f"PairOp({self.name})"


PairOpHandle = PairOp


def evaluate(op: PairOp, L, M):
    return op(L, M)


# built-in operations -------------------------------------------------------------

def identity() -> PairOp:
    return PairOp("identity", lambda L, M: L)


def _ideal_label(J: Submodule) -> str:
    return J.format()


def jbf(J: Submodule) -> PairOp:
    """(JL :_M J)."""
    def fn(L, M):
        return module_colon(ideal_multiply(J, L), J, within=M)
    return PairOp(f"jbf[{_ideal_label(J)}]", fn, params={"J": J})


def jbe(J: Submodule) -> PairOp:
    """J (L :_M J)."""
    def fn(L, M):
        return ideal_multiply(J, module_colon(L, J, within=M))
    return PairOp(f"jbe[{_ideal_label(J)}]", fn, params={"J": J})


def compose(outer: PairOp, inner: PairOp) -> PairOp:
    """(L, M) -> outer(inner(L, M), M)."""
    return PairOp(f"{outer.name}.{inner.name}", lambda L, M: outer(inner(L, M), M), outer.context)


def meet(a: PairOp, b: PairOp) -> PairOp:
    return PairOp(f"({a.name} & {b.name})", lambda L, M: a(L, M) & b(L, M), a.context)


# constructions -------------------------------------------------------------------

def residual_version(op: PairOp) -> PairOp:
    """pi(op(pi^{-1}(L), P)) for a free presentation pi: P -> M."""
    def fn(L, M):
        if M.is_zero():
            return L
        V = View(M)
        pi = free_presentation(V.module)
        K = pi.preimage(V.inward(L))
        return V.outward(pi.image(op(K, pi.source.full())))
    return PairOp(f"res({op.name})", fn, op.context, {"base": op})


def hereditary_version(op: PairOp) -> PairOp:
    """i^{-1}(op(i(L), E)) for an embedding i: M -> E into an injective (free, A Gorenstein)."""
    def fn(L, M):
        if not is_gorenstein(M.A):
            raise UnsupportedError("hereditary version needs a Gorenstein algebra")
        if M.is_zero():
            return L
        V = View(M)
        i = injective_embedding(V.module)
        return V.outward(i.preimage(op(i.image(V.inward(L)), i.target.full())))
    return PairOp(f"her({op.name})", fn, op.context, {"base": op})


def _second_free_envelope(X: FinModule) -> ModuleMap:
    """alpha followed by an extra summand carrying one more map X -> A; still a pre-envelope."""
    alpha = free_preenvelope(X)
    A = X.A
    r = alpha.target.free_rank or 0
    extra = alpha.matrix[: A.dim] if r else np.zeros((A.dim, X.dim), dtype=np.int64)
    M = np.vstack([alpha.matrix, extra]) if r else extra
    return ModuleMap(X, A.free(r + 1), M)


def preenvelope_version(op: PairOp, kind: str = "free", second: bool = False) -> PairOp:
    """alpha^{-1}(op(alpha(L), C)) for a pre-envelope alpha: M -> C of the given class."""
    if kind not in ("free", "injective"):
        raise ValueError(f"no pre-envelope provider for class {kind!r}")

    def fn(L, M):
        if M.is_zero():
            return L
        V = View(M)
        if kind == "free":
            alpha = _second_free_envelope(V.module) if second else free_preenvelope(V.module)
        else:
            alpha = injective_embedding(V.module)
        if alpha.target.dim == 0:
            return M
        return V.outward(alpha.preimage(op(alpha.image(V.inward(L)), alpha.target.full())))
    tag = "env2" if second else "env"
    return PairOp(f"{tag}[{kind}]({op.name})", fn, op.context, {"base": op, "class": kind})


def smile_dual(op: PairOp) -> PairOp:
    """(M^v / op((M/L)^v, M^v))^v, computed through the k-linear dual with transposed action."""
    def fn(L, M):
        V = View(M)
        B = V.module
        D = B.dual()
        P = op(perp(V.inward(L), D), D.full())
        return V.outward(Submodule(B, P.space.annihilator()))
    return PairOp(f"dual({op.name})", fn, op.context, {"base": op})


def smile_dual_annihilator(op: PairOp) -> PairOp:
    """Dual for ideal pairs of a Gorenstein algebra, with M^v realised as A/ann(M)."""
    def fn(L, M):
        A = M.A
        if not is_gorenstein(A):
            raise UnsupportedError("annihilator duality needs a Gorenstein algebra")
        if M.module.free_rank != 1 or M.module.dim != A.dim:
            raise UnsupportedError("annihilator duality is for ideals")
        annM, annL = annihilator(M), annihilator(L)
        Q = QuotientView(annM, A.regular.full())
        W = Q.preimage(op(Q.image(annL), Q.module.full()))
        return annihilator(W)
    return PairOp(f"anndual({op.name})", fn, op.context, {"base": op})


# submodule selectors ----------------------------------------------------------------

@dataclass
class Selector:
    """A rule X -> alpha(X), a submodule of each module."""

    name: str
    fn: Callable

    def __call__(self, X: FinModule) -> Submodule:
        return self.fn(X)


def socle_selector() -> Selector:
    return Selector("socle", socle)


def power_selector(k: int = 1) -> Selector:
    def fn(X):
        U = X.full()
        for _ in range(k):
            U = ideal_multiply(X.A.maximal_ideal, U)
        return U
    return Selector(f"m^{k}", fn)


def dual_selector(alpha: Selector) -> Selector:
    """X -> (X^v / alpha(X^v))^v, i.e. the annihilator of alpha(X^v) in X."""
    def fn(X):
        a = alpha(X.dual())
        return Submodule(X, a.space.annihilator())
    return Selector(f"dual({alpha.name})", fn)


def selector_lift(alpha: Selector, kind: str) -> PairOp:
    if kind == "rho":
        def fn(L, M):
            Q = QuotientView(L, M)
            return Q.preimage(alpha(Q.module))
        return PairOp(f"rho({alpha.name})", fn)
    if kind == "gamma":
        def fn(L, M):
            V = View(L)
            return V.outward(alpha(V.module))
        return PairOp(f"gamma({alpha.name})", fn)
    raise ValueError(f"unknown selector kind {kind!r}")


def selector_invariant(alpha: Selector, X: FinModule, rng: np.random.Generator, trials: int = 3) -> bool:
    """Spot check: automorphisms g of X carry alpha(X) onto itself."""
    basis = hom_space(X, X)
    if not basis:
        return True
    p = X.p
    for _ in range(trials):
        c = rng.integers(0, p, len(basis))
        g = sum(int(ci) * b for ci, b in zip(c, basis)) % p
        f = ModuleMap(X, X, g)
        if not (f.is_injective()):
            continue
        a = alpha(X)
        if f.image(a) != a:
            return False
    return True


# monomial and DVR built-ins -----------------------------------------------------------

def newton_op() -> PairOp:
    """Integral closure of L inside M, for monomial ideals."""
    return PairOp("newton", lambda L, M: newton_closure(L) & M, "monomial")


def rr_op(n_max: int = 6) -> PairOp:
    return PairOp(f"rr[{n_max}]", lambda L, M: ratliff_rush_pair(L, M, n_max), "monomial", {"n_max": n_max})


def li_cyclic_op() -> PairOp:
    """Liftable closure of L in M when M/L is cyclic, generated by the first generator of M outside L."""
    def fn(L, M):
        extra = [g for g in M.gens if not L.contains(g)]
        if not extra:
            return L
        g = extra[0]
        if not (L + MonomialIdeal(L.n, (g,))) == M:
            raise UnsupportedError("M/L is not cyclic on a monomial generator")
        return liftable_closure_principal(L, g)
    return PairOp("li_cyclic", fn, "monomial")


def ehu_dvr_op() -> PairOp:
    """Evaluated as op(None, pair): the preimage in the free cover of the EHU closure of L."""
    return PairOp("ehu_dvr", lambda L, pair: ehu_dvr(pair), "dvr")


def li_dvr_op() -> PairOp:
    return PairOp("li_dvr", lambda L, pair: li_dvr(pair), "dvr")


# registry used by the command line ---------------------------------------------------

def builtin(name: str, A: TruncatedAlgebra | None = None, J: Submodule | None = None) -> PairOp:
    name = name.strip()
    if name == "identity":
        return identity()
    if name in ("jbf", "jbe"):
        if J is None:
            J = A.maximal_ideal
        return jbf(J) if name == "jbf" else jbe(J)
    for prefix, build in (("res:", residual_version), ("her:", hereditary_version), ("dual:", smile_dual)):
        if name.startswith(prefix):
            return build(builtin(name[len(prefix):], A, J))
    simple = {"newton": newton_op, "rr": rr_op, "li_cyclic": li_cyclic_op,
              "ehu_dvr": ehu_dvr_op, "li_dvr": li_dvr_op}
    if name in simple:
        return simple[name]()
    if name == "rho_socle":
        return selector_lift(socle_selector(), "rho")
    if name == "gamma_socle":
        return selector_lift(socle_selector(), "gamma")
    if name == "gamma_m":
        return selector_lift(power_selector(1), "gamma")
    raise ValueError(f"unknown operation {name!r}")
