"""Sample-quantified checks of the axioms a pair operation may satisfy."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations

import numpy as np

from .artinian import (
    FinModule,
    ModuleMap,
    QuotientView,
    Submodule,
    TruncatedAlgebra,
    View,
    format_submodule,
    hom_space,
    ideal_multiply,
)
from .cores import enumerate_ideals


PROPERTIES = (
    "extensive", "intensive", "idempotent", "order_preserving", "order_preserving_ambient",
    "hereditary", "cohereditary", "residual", "absolute", "restrictable",
    "functorial", "cofunctorial", "surjection_functorial", "surjection_cofunctorial", "nakayama",
)


@dataclass
class PairContext:
    """A family of submodules of one ambient module, plus a map family built on demand."""

    algebra: TruncatedAlgebra
    ambient: FinModule
    members: list
    label: str
    exhaustive: bool = True
    seed: int = 0
    maps_per_pair: int = 2
    max_map_pairs: int | None = None
    _maps: list | None = field(default=None, repr=False)

    def pairs(self):
        for M in self.members:
            for L in self.members:
                if L <= M:
                    yield L, M

    def triples(self):
        for M in self.members:
            inside = [U for U in self.members if U <= M]
            for N in inside:
                for L in inside:
                    if L <= N:
                        yield L, N, M

    def maps(self):
        if self._maps is None:
            self._maps = build_map_family(self)
        return self._maps


def ideal_context(A: TruncatedAlgebra, label: str | None = None, **kw) -> PairContext:
    return PairContext(A, A.regular, enumerate_ideals(A), label or A.describe(), **kw)


def sampled_context(A: TruncatedAlgebra, members, label: str, seed: int = 0, **kw) -> PairContext:
    return PairContext(A, members[0].module, list(members), label, exhaustive=False, seed=seed, **kw)


@dataclass
class MapCase:
    g: ModuleMap
    sources: list   # submodules of g.source (whole module is g.source.full())
    targets: list   # submodules of g.target
    surjective: bool
    label: str


def build_map_family(ctx: PairContext) -> list[MapCase]:
    """Inclusions, quotient maps and seeded random A-linear maps among family members."""
    rng = np.random.default_rng(ctx.seed)
    p = ctx.algebra.p
    views = {}
    for M in ctx.members:
        views[M.space.key()] = View(M)

    def subs_in(V):
        return [V.inward(U) for U in ctx.members if U <= V.M]

    cases = []
    pairs = [(M, Mp) for M in ctx.members for Mp in ctx.members if not M.is_zero()]
    if ctx.max_map_pairs is not None and len(pairs) > ctx.max_map_pairs:
        idx = rng.choice(len(pairs), ctx.max_map_pairs, replace=False)
        pairs = [pairs[i] for i in sorted(idx)]
    for M, Mp in pairs:
        V, Vp = views[M.space.key()], views[Mp.space.key()]
        basis = hom_space(V.module, Vp.module)
        mats = []
        if M <= Mp:
            mats.append(("inclusion", Mp.space.coordinates(M.space.basis).T % p))
        for k in range(ctx.maps_per_pair):
            if not basis:
                break
            c = rng.integers(0, p, len(basis))
            mats.append((f"random{k}", sum(int(ci) * b for ci, b in zip(c, basis)) % p))
        for tag, mat in mats:
            g = ModuleMap(V.module, Vp.module, mat)
            cases.append(MapCase(g, subs_in(V), subs_in(Vp), g.is_surjective(),
                                 f"{tag}: {M.format()} -> {Mp.format()}"))
    # quotient maps M -> M/L
    for L, M in ctx.pairs():
        if L.is_zero() or L == M:
            continue
        Q = QuotientView(L, M)
        V = Q.view
        tgt = [Q.image(N) for N in ctx.members if L <= N <= M]
        cases.append(MapCase(Q.projection, [V.inward(U) for U in ctx.members if U <= M], tgt, True,
                             f"quotient: {M.format()} -> {M.format()}/{L.format()}"))
    return cases


@dataclass
class PropertyReport:
    property: str
    op: str
    context: str
    samples: int
    verdict: str
    witness: dict | None = None
    exhaustive: bool = True
    seed: int = 0

    @property
    def holds(self) -> bool:
        return self.verdict == "holds_on_sample"

    def to_dict(self) -> dict:
        d = asdict(self)
        if d["witness"] is None:
            d.pop("witness")
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _fmt(U):
    return format_submodule(U) if isinstance(U, Submodule) else str(U)


def _witness(**kw):
    return {k: (_fmt(v) if not isinstance(v, (list, str)) else v) for k, v in kw.items()}


def _full(U: Submodule) -> Submodule:
    return U.module.full()


def check_property(prop: str, op, ctx: PairContext) -> PropertyReport:
    if prop not in PROPERTIES:
        raise ValueError(f"unknown property {prop!r}; known: {', '.join(PROPERTIES)}")
    checker = _CHECKERS[prop]
    count = 0
    witness = None
    for ok, wit in checker(op, ctx):
        count += 1
        if not ok:
            witness = wit()
            break
    verdict = "holds_on_sample" if witness is None else "counterexample"
    return PropertyReport(prop, op.name, ctx.label, count, verdict, witness, ctx.exhaustive, ctx.seed)


def _extensive(op, ctx):
    for L, M in ctx.pairs():
        P = op(L, M)
        yield L <= P, lambda L=L, M=M, P=P: _witness(L=L, M=M, lhs=L, rhs=P)


def _intensive(op, ctx):
    for L, M in ctx.pairs():
        P = op(L, M)
        yield P <= L, lambda L=L, M=M, P=P: _witness(L=L, M=M, lhs=P, rhs=L)


def _idempotent(op, ctx):
    for L, M in ctx.pairs():
        P = op(L, M)
        PP = op(P, M)
        yield PP == P, lambda L=L, M=M, P=P, PP=PP: _witness(L=L, M=M, lhs=PP, rhs=P)


def _order_preserving(op, ctx):
    for L, N, M in ctx.triples():
        a, b = op(L, M), op(N, M)
        yield a <= b, lambda L=L, N=N, M=M, a=a, b=b: _witness(L=L, N=N, M=M, lhs=a, rhs=b)


def _order_preserving_ambient(op, ctx):
    for L, M, Mp in ctx.triples():
        a, b = op(L, M), op(L, Mp)
        yield a <= b, lambda L=L, M=M, Mp=Mp, a=a, b=b: _witness(L=L, N=M, M=Mp, lhs=a, rhs=b)


def _hereditary(op, ctx):
    for L, N, M in ctx.triples():
        a, b = op(L, N), op(L, M) & N
        yield a == b, lambda L=L, N=N, M=M, a=a, b=b: _witness(L=L, N=N, M=M, lhs=a, rhs=b)


def _absolute(op, ctx):
    for L, N, M in ctx.triples():
        a, b = op(L, N), op(L, M)
        yield a == b, lambda L=L, N=N, M=M, a=a, b=b: _witness(L=L, N=N, M=M, lhs=a, rhs=b)


def _cohereditary(op, ctx):
    for L, N, M in ctx.triples():
        Q = QuotientView(L, M)
        a = op(Q.image(N), Q.module.full())
        b = Q.image(op(N, M))
        yield a == b, lambda L=L, N=N, M=M, a=a, b=b: _witness(
            L=L, N=N, M=M, lhs=Q.preimage(a), rhs=Q.preimage(b))


def _residual(op, ctx):
    for L, N, M in ctx.triples():
        Q = QuotientView(L, M)
        a = op(N, M)
        b = Q.preimage(op(Q.image(N), Q.module.full()))
        yield a == b, lambda L=L, N=N, M=M, a=a, b=b: _witness(L=L, N=N, M=M, lhs=a, rhs=b)


def _restrictable(op, ctx):
    for M in ctx.members:
        inside = [U for U in ctx.members if U <= M]
        for L in inside:
            for N in inside:
                a, b = op(L & N, N), op(L, M)
                yield a <= b, lambda L=L, N=N, M=M, a=a, b=b: _witness(L=L, N=N, M=M, lhs=a, rhs=b)


def _functorial(op, ctx, surjective_only=False):
    for case in ctx.maps():
        if surjective_only and not case.surjective:
            continue
        g = case.g
        full_t = g.target.full()
        for L in case.sources:
            a = g.image(op(L, g.source.full()))
            b = op(g.image(L), full_t)
            yield a <= b, lambda L=L, a=a, b=b, case=case: {
                "L": _fmt(L), "M": "source", "maps": [case.label], "lhs": _fmt(a), "rhs": _fmt(b)}


def _cofunctorial(op, ctx, surjective_only=False):
    for case in ctx.maps():
        if surjective_only and not case.surjective:
            continue
        g = case.g
        full_s = g.source.full()
        for Lp in case.targets:
            a = op(g.preimage(Lp), full_s)
            b = g.preimage(op(Lp, g.target.full()))
            yield a <= b, lambda Lp=Lp, a=a, b=b, case=case: {
                "L": _fmt(Lp), "M": "target", "maps": [case.label], "lhs": _fmt(a), "rhs": _fmt(b)}


def _nakayama(op, ctx):
    m = ctx.algebra.maximal_ideal
    for L, N, M in ctx.triples():
        if not N <= op(L + ideal_multiply(m, N), M):
            yield True, None
            continue
        a, b = op(L, M), op(N, M)
        yield a == b, lambda L=L, N=N, M=M, a=a, b=b: _witness(L=L, N=N, M=M, lhs=a, rhs=b)


_CHECKERS = {
    "extensive": _extensive,
    "intensive": _intensive,
    "idempotent": _idempotent,
    "order_preserving": _order_preserving,
    "order_preserving_ambient": _order_preserving_ambient,
    "hereditary": _hereditary,
    "absolute": _absolute,
    "cohereditary": _cohereditary,
    "residual": _residual,
    "restrictable": _restrictable,
    "functorial": _functorial,
    "cofunctorial": _cofunctorial,
    "surjection_functorial": lambda op, ctx: _functorial(op, ctx, True),
    "surjection_cofunctorial": lambda op, ctx: _cofunctorial(op, ctx, True),
    "nakayama": _nakayama,
}


def run_suite(op, ctx: PairContext, props) -> list[PropertyReport]:
    if props == "all" or props == ["all"]:
        props = PROPERTIES
    return [check_property(p, op, ctx) for p in props]


def compare_ops(a, b, ctx: PairContext, relation: str = "equal"):
    """First pair where a(L,M) fails to relate to b(L,M); None when the relation holds everywhere."""
    count = 0
    for L, M in ctx.pairs():
        x, y = a(L, M), b(L, M)
        count += 1
        ok = {"equal": x == y, "le": x <= y, "ge": y <= x}[relation]
        if not ok:
            return count, _witness(L=L, M=M, lhs=x, rhs=y)
    return count, None


def implication_holds(reports: dict, premises, conclusion) -> bool:
    """Premises all hold on the sample -> conclusion holds on the same sample."""
    if all(reports[p].holds for p in premises):
        return reports[conclusion].holds
    return True
