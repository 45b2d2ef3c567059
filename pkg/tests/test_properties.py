import json

import pytest

from pairops import build_algebra
from pairops.artinian import View, format_submodule, free_presentation
from pairops.cores import enumerate_ideals
from pairops.operations import (
    hereditary_version,
    identity,
    jbe,
    jbf,
    residual_version,
    selector_lift,
    smile_dual,
    socle_selector,
)
from pairops.properties import (
    PROPERTIES,
    check_property,
    compare_ops,
    ideal_context,
    implication_holds,
    run_suite,
    sampled_context,
)

SMALL = ["artinian p=2 vars=x trunc=4", "semigroup p=2 gens=2,3 trunc=6"]
GOR = ["artinian p=2 vars=x trunc=4", "artinian p=2 vars=x,y trunc=3 rels=[x^2,y^2]"]


@pytest.fixture(scope="module", params=SMALL)
def ctx(request):
    return ideal_context(build_algebra(request.param))


@pytest.fixture(scope="module", params=GOR)
def gctx(request):
    return ideal_context(build_algebra(request.param))


def test_context_pairs_are_nested(ctx):
    assert all(L <= M for L, M in ctx.pairs())
    assert all(L <= N <= M for L, N, M in ctx.triples())
    for case in ctx.maps():
        assert case.g.is_linear()
        assert all(U.module is case.g.source for U in case.sources)
        assert all(U.module is case.g.target for U in case.targets)


def test_unknown_property(ctx):
    with pytest.raises(ValueError):
        check_property("bogus", identity(), ctx)


def test_identity_satisfies_everything(ctx):
    assert all(r.holds for r in run_suite(identity(), ctx, "all"))


def test_closure_axioms_for_builtins(ctx):
    m = ctx.algebra.maximal_ideal
    for op in (jbf(m), residual_version(jbf(m))):
        for prop in ("extensive", "order_preserving", "idempotent"):
            assert check_property(prop, op, ctx).holds, (op.name, prop)
    for prop in ("intensive", "order_preserving", "idempotent"):
        assert check_property(prop, jbe(m), ctx).holds


def test_jbf_hereditary_jbe_cohereditary_all_J():
    c = ideal_context(build_algebra("artinian p=2 vars=x trunc=4"))
    for J in c.members:
        assert check_property("hereditary", jbf(J), c).holds
        assert check_property("cohereditary", jbe(J), c).holds


def test_jbf_not_residual_with_replayable_witness():
    A = build_algebra("artinian p=2 vars=x trunc=4")
    c = ideal_context(A)
    rep = check_property("residual", jbf(A.maximal_ideal), c)
    assert rep.verdict == "counterexample"
    w = rep.witness
    L, N, M = (next(U for U in c.members if format_submodule(U) == w[k]) for k in ("L", "N", "M"))
    from pairops.artinian import QuotientView
    Q = QuotientView(L, M)
    op = jbf(A.maximal_ideal)
    assert op(N, M) != Q.preimage(op(Q.image(N), Q.module.full()))
    assert format_submodule(op(N, M)) == w["lhs"]


def test_presentation_triple_is_not_residual():
    A = build_algebra("artinian p=2 vars=x,y trunc=8")
    L, M = A.ideal(["x^3", "y^3"]), A.ideal(["x^3", "x^2*y^2", "y^3"])
    V = View(M)
    pi = free_presentation(V.module)
    K, pre = pi.kernel(), pi.preimage(V.inward(L))
    op = jbf(A.maximal_ideal)
    c = sampled_context(A, [K, pre, pi.source.full()], "presentation of M")
    rep = check_property("residual", op, c)
    assert not rep.holds
    assert V.outward(pi.image(op(pre, pi.source.full()))) == L
    assert op(L, M) == M


def test_report_schema():
    A = build_algebra("artinian p=2 vars=x trunc=4")
    rep = check_property("residual", jbf(A.maximal_ideal), ideal_context(A))
    d = json.loads(rep.to_json())
    assert set(d) == {"property", "op", "context", "samples", "verdict", "witness", "exhaustive", "seed"}
    assert set(d["witness"]) >= {"L", "N", "M", "lhs", "rhs"}
    ok = check_property("extensive", identity(), ideal_context(A)).to_dict()
    assert "witness" not in ok


def test_surjection_functorial_iff_cofunctorial(ctx):
    m = ctx.algebra.maximal_ideal
    ops = [identity(), jbf(m), jbe(m), residual_version(jbf(m)), selector_lift(socle_selector(), "rho"),
           selector_lift(socle_selector(), "gamma")]
    for op in ops:
        if not check_property("order_preserving", op, ctx).holds:
            continue
        a = check_property("surjection_functorial", op, ctx).holds
        b = check_property("surjection_cofunctorial", op, ctx).holds
        assert a == b, op.name


def test_functorial_iff_dual_cofunctorial(gctx):
    m = gctx.algebra.maximal_ideal
    for op in (identity(), jbf(m), jbe(m), residual_version(jbf(m)), selector_lift(socle_selector(), "rho")):
        a = check_property("functorial", op, gctx).holds
        b = check_property("cofunctorial", smile_dual(op), gctx).holds
        assert a == b, op.name


def test_version_duality(gctx):
    for J in gctx.members:
        n, w = compare_ops(smile_dual(residual_version(jbf(J))), hereditary_version(smile_dual(jbf(J))), gctx)
        assert w is None and n > 0


def test_nakayama_preserved_by_residual_version(ctx):
    for J in ctx.members[1:4] + [ctx.algebra.maximal_ideal]:
        op = jbf(J)
        if check_property("nakayama", op, ctx).holds:
            assert check_property("nakayama", residual_version(op), ctx).holds


def test_implications_over_verdicts(gctx):
    m = gctx.algebra.maximal_ideal
    ops = [identity(), jbf(m), jbe(m), hereditary_version(jbe(m)), residual_version(jbf(m)),
           selector_lift(socle_selector(), "gamma"), selector_lift(socle_selector(), "rho")]
    for op in ops:
        reps = {r.property: r for r in run_suite(op, gctx, ["hereditary", "intensive", "absolute",
                                                            "extensive", "cohereditary", "residual"])}
        assert implication_holds(reps, ["hereditary", "intensive"], "absolute"), op.name
        assert implication_holds(reps, ["extensive", "cohereditary"], "residual"), op.name


def test_versions_bound_the_operation(gctx):
    for J in gctx.members:
        assert compare_ops(residual_version(jbf(J)), jbf(J), gctx, "le")[1] is None
        assert compare_ops(hereditary_version(jbe(J)), jbe(J), gctx, "ge")[1] is None


def test_seed_determinism():
    A = build_algebra("artinian p=2 vars=x,y trunc=3")
    ideals = enumerate_ideals(A)
    m = A.maximal_ideal

    def run(seed):
        c = sampled_context(A, ideals[:10], "sample", seed=seed, max_map_pairs=6)
        return [r.to_json() for r in run_suite(jbe(m), c, ["functorial", "cofunctorial"])]

    assert run(3) == run(3)


def test_all_property_names_have_checkers(ctx):
    assert len(run_suite(identity(), ctx, list(PROPERTIES))) == len(PROPERTIES)
