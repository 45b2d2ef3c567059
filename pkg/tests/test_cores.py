import pytest

from pairops import build_algebra
from pairops.artinian import ideal_multiply
from pairops.cores import (
    FeasibilityError,
    core_over_candidates,
    enumerate_ideals,
    hull_over_candidates,
    is_cl_reduction,
)
from pairops.operations import identity, jbe, jbf, residual_version


def test_enumeration_examples(chain4):
    A, ideals = chain4
    assert [I.format() for I in ideals] == ["(0)", "(x^3)", "(x^2)", "(x)", "(1)"]
    assert [I.format() for I in enumerate_ideals(A, max_gens=0)] == ["(0)"]


def test_semigroup_enumeration_is_closed_under_sums(t23):
    A, ideals = t23
    keys = {I.space.key() for I in ideals}
    assert {I.space.key() for I in enumerate_ideals(A, max_gens=2)} == keys
    assert all((I + J).space.key() in keys for I in ideals for J in ideals)


def test_feasibility_guard():
    with pytest.raises(FeasibilityError):
        enumerate_ideals(build_algebra("artinian p=2 vars=x,y trunc=8"))


@pytest.mark.parametrize("p", [2, 3])
def test_bf_core_of_maximal_ideal(p):
    A = build_algebra(f"semigroup p={p} gens=2,3 trunc=8")
    m = A.maximal_ideal
    cands = enumerate_ideals(A, max_gens=2)
    core = core_over_candidates(m, m, jbf(m), cands)
    assert core.core == ideal_multiply(m, m)
    reds = {A.ideal([f"t2 + {a}*t3"]) for a in range(p)} | {m}
    assert set(core.reductions) == reds
    rcore = core_over_candidates(m, m, residual_version(jbf(m)), cands)
    assert rcore.core == m and rcore.reductions == [m]


def test_reduction_examples(t23):
    A, _ = t23
    m = A.maximal_ideal
    for a in (0, 1):
        assert is_cl_reduction(A.ideal([f"t2 + {a}*t3"]), m, m, jbf(m))
    assert not is_cl_reduction(A.ideal(["t3", "t4"]), m, m, jbf(m))
    assert is_cl_reduction(m, m, m, identity())
    with pytest.raises(ValueError):
        is_cl_reduction(m, A.ideal(["t3"]), m, jbf(m))


def test_core_single_candidate(t23):
    A, _ = t23
    m = A.maximal_ideal
    assert core_over_candidates(m, m, jbf(m), [m]).core == m
    with pytest.raises(ValueError):
        core_over_candidates(m, m, jbf(m), [])


def test_hulls_with_dual_cross_check(chain4):
    A, ideals = chain4
    m = A.maximal_ideal
    m2 = A.ideal(["x^2"])
    h = hull_over_candidates(m2, m, jbe(m), closure=jbf(m))
    assert h.hull == m and h.agrees_with_dual
    zero = A.regular.zero()
    h0 = hull_over_candidates(zero, A.regular.full(), jbe(m), closure=jbf(m))
    assert h0.hull == zero and h0.agrees_with_dual
    # (x^3) is not an expansion of 0: m((x^3) : m) = (x^3)
    assert not jbe(m)(A.ideal(["x^3"]), A.regular.full()) <= zero
    assert hull_over_candidates(m2, m, jbe(m), candidates=[m2]).hull == m2


def test_hull_dual_agreement_everywhere(chain4):
    A, ideals = chain4
    for J in ideals:
        for M in ideals:
            for L in ideals:
                if L <= M:
                    assert hull_over_candidates(L, M, jbe(J), closure=jbf(J)).agrees_with_dual
