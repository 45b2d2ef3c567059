"""Reductions of graded submodules of free modules, integrality certificates and
the liftable closure of cyclic monomial quotients."""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations_with_replacement

import sympy
from sympy.parsing.sympy_parser import parse_expr
from sympy.polys.domains import GF
from sympy.polys.rings import ring

from .linalg import Subspace, check_prime
from .monomial import MonomialIdeal, newton_closure, variable_names


class CertificateParseError(ValueError):
    pass


def _monomials_of_degree(n: int, d: int):
    if n == 0:
        return [()] if d == 0 else []
    if n == 1:
        return [(d,)]
    return [(i,) + rest for i in range(d, -1, -1) for rest in _monomials_of_degree(n - 1, d - i)]


class SymRing:
    """k[x_1..x_n, t_1..t_s]: coefficients in k[x], one t per free basis vector."""

    def __init__(self, n: int, s: int, p: int = 2):
        self.n, self.s, self.p = n, s, check_prime(p)
        self.xnames = variable_names(n)
        self.tnames = [f"t{i + 1}" for i in range(s)]
        self.R, *gens = ring(",".join(self.xnames + self.tnames), GF(p))
        self.x = gens[:n]
        self.t = gens[n:]
        self._syms = {name: sympy.Symbol(name) for name in self.xnames + self.tnames}

    def parse(self, text: str):
        try:
            expr = parse_expr(str(text).replace("^", "**"), local_dict=dict(self._syms))
            return self.R.from_expr(sympy.expand(expr))
        except Exception as exc:  # sympy raises a zoo of types here
            raise CertificateParseError(f"cannot parse {text!r}: {exc}") from None

    def bidegree(self, f) -> set:
        return {(sum(m[: self.n]), sum(m[self.n:])) for m in f.monoms()}

    def x_part(self, f, a: int):
        return self.R({m: c for m, c in f.terms() if sum(m[: self.n]) == a})

    def vector_image(self, vec) -> object:
        """sum_i v_i t_i for a vector of polynomials in x."""
        out = self.R.zero
        for v, t in zip(vec, self.t):
            out += (self.parse(v) if isinstance(v, str) else v) * t
        return out

    def x_monomial(self, e):
        out = self.R.one
        for xi, k in zip(self.x, e):
            out *= xi**k
        return out


@dataclass
class GradedSubmodule:
    """Submodule of k[x_1..x_n]^s generated by homogeneous vectors."""

    n: int
    s: int
    gens: list         # each generator is a list of s polynomial strings
    p: int = 2

    def __post_init__(self):
        self.S = SymRing(self.n, self.s, self.p)
        self.images = [self.S.vector_image(g) for g in self.gens]
        self.degrees = []
        for g, img in zip(self.gens, self.images):
            bd = self.S.bidegree(img)
            if len(bd) > 1:
                raise ValueError(f"generator {g} is not homogeneous")
            self.degrees.append(next(iter(bd))[0] if bd else 0)

    @classmethod
    def ideal(cls, n: int, gens, p: int = 2) -> "GradedSubmodule":
        return cls(n, 1, [[g] for g in gens], p)

    def same_ring(self, other: "GradedSubmodule") -> "GradedSubmodule":
        if (self.n, self.s, self.p) != (other.n, other.s, other.p):
            raise ValueError("submodules of different free modules")
        return GradedSubmodule(self.n, self.s, other.gens, self.p)

    def contains_image(self, f) -> bool:
        """f of t-degree 1 lies in the k[x]-span of the generator images."""
        return _in_module_span(self.S, [g for g in self.images if g], f)

    def __le__(self, other: "GradedSubmodule") -> bool:
        other = self.same_ring(other)
        return all(other.contains_image(g) for g in self.images)


def _in_module_span(S: SymRing, gens, f) -> bool:
    """f lies in the k[x]-module generated by the t-homogeneous elements gens."""
    if f == 0:
        return True
    for a in sorted({bd[0] for bd in S.bidegree(f)}):
        part = S.x_part(f, a)
        rows = []
        for g in gens:
            b = next(iter(S.bidegree(g)))[0]
            if b > a:
                continue
            for e in _monomials_of_degree(S.n, a - b):
                rows.append(S.x_monomial(e) * g)
        if not _linear_member(S, rows, part):
            return False
    return True


def _linear_member(S: SymRing, rows, f) -> bool:
    monos = sorted({m for r in rows + [f] for m in r.monoms()})
    index = {m: i for i, m in enumerate(monos)}

    def vec(g):
        v = [0] * len(monos)
        for m, c in g.terms():
            v[index[m]] = int(c) % S.p
        return v

    if not rows:
        return f == 0
    V = Subspace.span([vec(r) for r in rows], S.p, len(monos))
    return V.contains(vec(f))


def _products(images, k: int, R):
    if k == 0:
        return [R.one]
    out = []
    for combo in combinations_with_replacement(range(len(images)), k):
        g = R.one
        for i in combo:
            g *= images[i]
        if g:
            out.append(g)
    return out


@dataclass
class ReductionResult:
    certified: bool
    degree: int | None

    def __bool__(self):
        return self.certified


def is_reduction_graded(U: GradedSubmodule, V: GradedSubmodule, d_max: int = 3) -> ReductionResult:
    """Search the least d <= d_max with V^(d+1) inside U V^d in the symmetric algebra."""
    V = U.same_ring(V)
    if not U <= V:
        raise ValueError("U is not contained in V")
    S = U.S
    Ui = [g for g in U.images if g]
    Vi = [g for g in V.images if g]
    for d in range(0, d_max + 1):
        targets = _products(Vi, d + 1, S.R)
        span = [u * w for u in Ui for w in _products(Vi, d, S.R)]
        span = [g for g in span if g]
        if all(_in_module_span(S, span, f) for f in targets):
            return ReductionResult(True, d)
    return ReductionResult(False, None)


# integrality certificates -------------------------------------------------------------

@dataclass
class IntegralityCertificate:
    element: str
    relation: str        # "lhs = rhs"

    @classmethod
    def parse_line(cls, line: str, element: str | None = None) -> "IntegralityCertificate":
        if line.count("=") != 1:
            raise CertificateParseError(f"expected one '=' in {line!r}")
        if element is None:
            m = re.match(r"\s*\(([^()]*)\)\s*\^\s*\d+", line)
            if not m:
                raise CertificateParseError(f"cannot locate the leading power in {line!r}")
            element = m.group(1)
        return cls(element.strip(), line.strip())


def read_certificates(path) -> list[IntegralityCertificate]:
    out = []
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                out.append(IntegralityCertificate.parse_line(line))
    return out


def _terms(expr):
    if expr.is_Add:
        return list(expr.args)
    return [expr]


def verify_certificate(c: IntegralityCertificate, U: GradedSubmodule) -> bool:
    """The relation is an identity z^n = sum a_i z^(n-i) with each a_i in U^i.

    Terms are taken as written; each must be z^k times an element of U^(n-k),
    and the terms with k = n must add up to exactly z^n.
    """
    S = U.S
    lhs, rhs = c.relation.split("=")
    syms = dict(S._syms)
    try:
        e_lhs = parse_expr(lhs.replace("^", "**"), local_dict=syms, evaluate=False)
        e_rhs = parse_expr(rhs.replace("^", "**"), local_dict=syms, evaluate=False)
    except Exception as exc:
        raise CertificateParseError(str(exc)) from None
    z = S.parse(c.element)
    if not z or {b[1] for b in S.bidegree(z)} != {1}:
        return False
    if S.parse(lhs) != S.parse(rhs):
        return False
    polys = [S.parse(str(t)) for t in _terms(e_lhs)] + [-S.parse(str(t)) for t in _terms(e_rhs)]
    polys = [f for f in polys if f]
    tdegs = {b[1] for f in polys for b in S.bidegree(f)}
    if len(tdegs) != 1:
        return False
    n = tdegs.pop()
    if n < 1:
        return False
    Ui = [g for g in U.images if g]
    powers = {k: _products(Ui, k, S.R) for k in range(n + 1)}
    leading = S.R.zero
    for f in polys:
        q, r = f.div(z**n)
        if not r and not {b[0] for b in S.bidegree(q)} - {0}:
            leading += f
            continue
        ok = False
        for k in range(n - 1, -1, -1):
            q, r = f.div(z**k)
            if not r and _in_module_span(S, powers[n - k], q):
                ok = True
                break
        if not ok:
            return False
    return leading == z**n or leading == -(z**n)


def certificate_bound(c: IntegralityCertificate, U: GradedSubmodule) -> int:
    """The degree n of the relation in the element."""
    m = re.match(r"\s*\([^()]*\)\s*\^\s*(\d+)", c.relation)
    return int(m.group(1)) if m else 1


# liftable closure of cyclic quotients ----------------------------------------------------

@dataclass
class CyclicLiftable:
    closure: MonomialIdeal      # newton_closure(J) + I0
    base: MonomialIdeal         # I0

    def coset_generators(self) -> list:
        return [g for g in self.closure.gens if not self.base.contains(g)]

    def is_zero(self) -> bool:
        return self.closure.issubset(self.base)


def liftable_closure_cyclic(J: MonomialIdeal, I0: MonomialIdeal) -> CyclicLiftable:
    """lic of J/I0 inside R/I0, through the presentation R -> R/I0."""
    if not I0.issubset(J):
        raise ValueError("I0 is not contained in J")
    return CyclicLiftable(newton_closure(J) + I0, I0)


def liftable_closure_principal(L: MonomialIdeal, g) -> MonomialIdeal:
    """lic of L inside N = L + (g), via R -> N/L, 1 -> g."""
    from .monomial import parse_monomial
    if isinstance(g, str):
        g = parse_monomial(g, L.n)
    ker = L.colon_monomial(g)
    closed = newton_closure(ker)
    return L + closed * MonomialIdeal(L.n, (tuple(g),))
