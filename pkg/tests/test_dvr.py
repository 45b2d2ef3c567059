import random

import pytest

from pairops.dvr import (
    DvrPair,
    FreeSubmodule,
    dvr_smith,
    ehu_by_saturation,
    ehu_li_dvr,
    fraction_field,
    matmul,
    minor_valuation_oracle,
    parse_matrix,
    random_pair,
    smith,
    valuation,
)
from pairops.operations import ehu_dvr_op, li_dvr_op

F, x = fraction_field(2)


def test_valuation():
    assert valuation(x**3 * (1 + x)) == 3
    assert valuation(F.one / (1 + x)) == 0
    assert valuation(F.zero) == float("inf")


@pytest.mark.parametrize("rows, want", [
    ([["x"]], [1]),
    ([["x^2", "0"], ["0", "x^5"]], [2, 5]),
    ([["x", "x^2"], ["0", "x^3"]], [1, 3]),
    ([["x^3", "x"], ["x", "x^2"]], [1, 1]),
    ([["1+x", "0"], ["0", "x^2"]], [0, 2]),
])
def test_smith_exponents(rows, want):
    res = dvr_smith(rows)
    assert res.exponents == want
    A = parse_matrix(rows, F)
    prod = 0
    for k, e in enumerate(want, 1):
        prod += e
        assert minor_valuation_oracle(A, k) == prod


def test_smith_free_rank():
    res = dvr_smith([["x"], ["0"]])
    assert res.exponents == [1] and res.free_rank == 1


def test_smith_transforms():
    rng = random.Random(5)
    for _ in range(25):
        pr = random_pair(rng)
        if not pr.P or not pr.P[0]:
            continue
        S = smith(pr.P, F)
        D = matmul(matmul(S.U, pr.P, F), S.V, F)
        for i, row in enumerate(D):
            for j, a in enumerate(row):
                if i == j and i < S.rank:
                    assert a == x ** S.exponents[i]
                else:
                    assert a == 0
        I = matmul(S.U, S.Uinv, F)
        assert all(I[i][j] == (F.one if i == j else F.zero) for i in range(S.nrows) for j in range(S.nrows))


def test_smith_rejects_fractions():
    with pytest.raises(ValueError):
        smith([[F.one / x]], F)


def test_residue_field_closures():
    k = DvrPair(2, [[x]], [])
    assert ehu_li_dvr(k, "ehu") == k.ambient()
    assert ehu_li_dvr(k, "liftable") == k.relations
    assert ehu_li_dvr(k, "li_h") == k.relations
    assert ehu_dvr_op()(None, k) == k.ambient()
    assert li_dvr_op()(None, k) == k.relations
    with pytest.raises(ValueError):
        ehu_li_dvr(k, "bogus")


def test_free_plus_torsion():
    mixed = DvrPair(2, [[F.zero], [x**2]], [])
    assert ehu_li_dvr(mixed, "ehu") == FreeSubmodule(F, 2, [[0, 1]])
    assert ehu_by_saturation(mixed) == FreeSubmodule(F, 2, [[0, 1]])
    assert not mixed.is_torsionless()


def test_free_submodule_arithmetic():
    U = FreeSubmodule(F, 2, [[x, 0], [0, x**2]])
    assert U.contains([x**2, x**3]) and not U.contains([1, 0])
    assert U.colon_x() == FreeSubmodule(F, 2, [[1, 0], [0, x]])
    assert U <= U + FreeSubmodule(F, 2, [[1, 1]])


@pytest.mark.parametrize("p", [2, 3])
def test_random_pairs(p):
    rng = random.Random(p)
    torsionless = 0
    for _ in range(50):
        pr = random_pair(rng, p=p)
        e, l = ehu_li_dvr(pr, "ehu"), ehu_li_dvr(pr, "liftable")
        assert l <= e
        omits = not (pr.torsion_preimage() <= pr.preimage_L)
        assert (not e <= l) == omits
        assert e == ehu_by_saturation(pr)
        assert pr.saturation() == pr.torsion_preimage()
        assert l <= ehu_li_dvr(pr, "li_h") <= e
        if pr.is_torsionless():
            torsionless += 1
            assert e == ehu_li_dvr(pr, "li_h") == l
    assert torsionless > 0
