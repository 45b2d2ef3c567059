import pytest
from hypothesis import given, strategies as st

from pairops.integral import (
    CertificateParseError,
    GradedSubmodule,
    IntegralityCertificate,
    certificate_bound,
    is_reduction_graded,
    liftable_closure_cyclic,
    liftable_closure_principal,
    read_certificates,
    verify_certificate,
)
from pairops.monomial import MonomialIdeal, format_monomial, newton_closure

K_GENS = [["x", "0"], ["y", "-x"], ["0", "y"]]
MM_GENS = [["x", "0"], ["y", "0"], ["0", "x"], ["0", "y"]]
PRINTED = "(y*t1)^2 = y*t1*(y*t1 - x*t2) - x*t1*(y*t2)"
CORRECTED = "(y*t1)^2 = y*t1*(y*t1 - x*t2) + x*t1*(y*t2)"
FILE_FORM = "(y*t1)^2 - (y*t1)*(y*t1 - x*t2) + (x*t1)*(y*t2) = 0"


def cert(line):
    return IntegralityCertificate.parse_line(line)


def test_reduction_examples():
    K, mm = GradedSubmodule(2, 2, K_GENS), GradedSubmodule(2, 2, MM_GENS)
    r = is_reduction_graded(K, mm)
    assert r.certified and r.degree == 1
    assert is_reduction_graded(mm, mm).degree == 0
    r = is_reduction_graded(GradedSubmodule.ideal(2, ["x^2", "y^2"]), GradedSubmodule.ideal(2, ["x^2", "x*y", "y^2"]))
    assert r.certified and r.degree == 1
    assert not is_reduction_graded(GradedSubmodule.ideal(2, ["x^2"]), GradedSubmodule.ideal(2, ["x^2", "x*y"]))
    with pytest.raises(ValueError):
        is_reduction_graded(mm, K)


def test_reduction_over_f3():
    K, mm = GradedSubmodule(2, 2, K_GENS, 3), GradedSubmodule(2, 2, MM_GENS, 3)
    assert is_reduction_graded(K, mm).degree == 1


def test_non_homogeneous_generator_rejected():
    with pytest.raises(ValueError):
        GradedSubmodule.ideal(2, ["x + y^2"])


def test_certificates_by_characteristic():
    assert verify_certificate(cert(PRINTED), GradedSubmodule(2, 2, K_GENS, 2))
    assert not verify_certificate(cert(PRINTED), GradedSubmodule(2, 2, K_GENS, 3))
    assert verify_certificate(cert(CORRECTED), GradedSubmodule(2, 2, K_GENS, 3))
    assert verify_certificate(cert(FILE_FORM), GradedSubmodule(2, 2, K_GENS, 2))
    assert not verify_certificate(cert(FILE_FORM), GradedSubmodule(2, 2, K_GENS, 3))
    second = "(x*t2)^2 = -x*t2*(y*t1 - x*t2) + x*t1*(y*t2)"
    assert verify_certificate(cert(second), GradedSubmodule(2, 2, K_GENS, 3))


def test_certificates_reject_bogus_identities():
    K = GradedSubmodule(2, 2, K_GENS, 3)
    # true identity, but the coefficient of z is not in U
    assert not verify_certificate(cert("(y*t1)^2 = (y*t1)*(y*t1)"), K)
    # false identity
    assert not verify_certificate(cert("(y*t1)^2 = y*t1*(y*t1 - x*t2)"), K)
    # element of t-degree 0
    assert not verify_certificate(cert("(x)^2 = x*x"), K)


def test_certificate_parsing(tmp_path):
    path = tmp_path / "certs.txt"
    path.write_text(f"# comment\n{PRINTED}\n\n{FILE_FORM}  # trailing\n")
    certs = read_certificates(path)
    assert [c.element for c in certs] == ["y*t1", "y*t1"]
    assert certificate_bound(certs[0], GradedSubmodule(2, 2, K_GENS)) == 2
    with pytest.raises(CertificateParseError):
        cert("(y*t1)^2 == 0 = 1")
    with pytest.raises(CertificateParseError):
        cert("y = y")
    with pytest.raises(CertificateParseError):
        verify_certificate(cert("(y*t1)^2 = ((("), GradedSubmodule(2, 2, K_GENS))


def test_certificate_implies_reduction():
    K = GradedSubmodule(2, 2, K_GENS, 3)
    for line in (CORRECTED, "(x*t2)^2 = -x*t2*(y*t1 - x*t2) + x*t1*(y*t2)"):
        c = cert(line)
        assert verify_certificate(c, K)
        z = c.element
        vec = ["y", "0"] if z == "y*t1" else ["0", "x"]
        bigger = GradedSubmodule(2, 2, K_GENS + [vec], 3)
        r = is_reduction_graded(K, bigger)
        assert r.certified and r.degree <= certificate_bound(c, K)


@st.composite
def homogeneous_pair(draw):
    d = draw(st.integers(1, 4))
    degree_d = st.integers(0, d).map(lambda a: (a, d - a))
    U = draw(st.lists(degree_d, min_size=1, max_size=3))
    extra = draw(st.lists(degree_d, min_size=1, max_size=2))
    return MonomialIdeal.from_gens(2, U), MonomialIdeal.from_gens(2, U + extra)


@given(homogeneous_pair())
def test_reduction_implies_newton_containment(pair):
    I, V_ideal = pair
    U = GradedSubmodule.ideal(2, [format_monomial(g) for g in I.gens])
    V = GradedSubmodule.ideal(2, [format_monomial(g) for g in V_ideal.gens])
    if is_reduction_graded(U, V, 2):
        assert V_ideal <= newton_closure(I)


def test_liftable_closures():
    L = MonomialIdeal.parse("x^2,y^2")
    N = MonomialIdeal.parse("x^2,x*y,y^2")
    assert liftable_closure_principal(L, "x*y") == L
    assert newton_closure(L) & N == N
    m = MonomialIdeal.maximal(2)
    assert liftable_closure_cyclic(m, m).is_zero()
    lc = liftable_closure_cyclic(MonomialIdeal.parse("x^2,y^2"), MonomialIdeal.zero(2))
    assert lc.closure == N and lc.coset_generators() == [(2, 0), (1, 1), (0, 2)]
    with pytest.raises(ValueError):
        liftable_closure_cyclic(MonomialIdeal.parse("x^2"), m)
