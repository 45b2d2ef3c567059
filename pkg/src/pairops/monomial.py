"""Monomial ideals in k[x1..xn], stored by their minimal exponent vectors."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import product as cartesian

from .geometry import candidate_normals, dot

Exp = tuple


def grlex_key(e):
    return (sum(e), tuple(-a for a in e))


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def variable_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"x{i}" for i in range(1, n + 1)]


def format_monomial(e, names=None) -> str:
    names = names or variable_names(len(e))
    parts = []
    for v, a in zip(names, e):
        if a == 1:
            parts.append(v)
        elif a > 1:
            parts.append(f"{v}^{a}")
    return "*".join(parts) if parts else "1"


_TOKEN = re.compile(r"^([a-z])(\d*)(?:\^(\d+))?$")


def _var_index(name: str, digits: str) -> int:
    if digits:
        return int(digits) - 1
    if name in "xyz":
        return "xyz".index(name)
    if name == "t":
        return 0
    raise ValueError(f"unknown variable {name!r}")


def parse_monomial(text: str, n: int | None = None) -> tuple:
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty monomial")
    exps: dict[int, int] = {}
    if text != "1":
        for factor in text.split("*"):
            m = _TOKEN.match(factor)
            if not m:
                raise ValueError(f"cannot parse monomial factor {factor!r}")
            i = _var_index(m.group(1), m.group(2))
            exps[i] = exps.get(i, 0) + int(m.group(3) or 1)
    width = max(exps, default=-1) + 1
    if n is None:
        n = max(width, 1)
    elif width > n:
        raise ValueError(f"monomial {text!r} uses more than {n} variables")
    return tuple(exps.get(i, 0) for i in range(n))


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    gens: tuple = ()

    def __post_init__(self):
        for g in self.gens:
            if len(g) != self.n:
                raise ValueError(f"exponent vector {g} has wrong length for n={self.n}")

    # construction -------------------------------------------------------
    @classmethod
    def from_gens(cls, n: int, gens) -> "MonomialIdeal":
        return cls(n, _minimal(gens))

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "MonomialIdeal":
        text = text.strip().strip("()")
        if text in ("", "0"):
            return cls(n or 1, ())
        pieces = [t for t in text.split(",") if t.strip()]
        raw = [parse_monomial(t) for t in pieces]
        width = max(len(r) for r in raw)
        if n is None:
            n = width
        elif width > n:
            raise ValueError(f"ideal {text!r} uses more than {n} variables")
        return cls.from_gens(n, [r + (0,) * (n - len(r)) for r in raw])

    @classmethod
    def unit(cls, n: int) -> "MonomialIdeal":
        return cls(n, ((0,) * n,))

    @classmethod
    def zero(cls, n: int) -> "MonomialIdeal":
        return cls(n, ())

    @classmethod
    def maximal(cls, n: int) -> "MonomialIdeal":
        return cls.from_gens(n, [tuple(int(i == j) for j in range(n)) for i in range(n)])

    # basic predicates -----------------------------------------------------
    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, m) -> bool:
        return any(divides(g, m) for g in self.gens)

    def issubset(self, other: "MonomialIdeal") -> bool:
        _same(self, other)
        return all(other.contains(g) for g in self.gens)

    __le__ = issubset

    def __str__(self):
        if not self.gens:
            return "(0)"
        names = variable_names(self.n)
        return "(" + ", ".join(format_monomial(g, names) for g in self.gens) + ")"

    def to_text(self) -> str:
        return str(self)

    # arithmetic -----------------------------------------------------------
    def __add__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same(self, other)
        return MonomialIdeal.from_gens(self.n, self.gens + other.gens)

    def __mul__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same(self, other)
        return MonomialIdeal.from_gens(
            self.n, [tuple(a + b for a, b in zip(g, h)) for g in self.gens for h in other.gens])

    def __and__(self, other: "MonomialIdeal") -> "MonomialIdeal":
        _same(self, other)
        return MonomialIdeal.from_gens(
            self.n, [tuple(max(a, b) for a, b in zip(g, h)) for g in self.gens for h in other.gens])

    def __pow__(self, k: int) -> "MonomialIdeal":
        if k < 0:
            raise ValueError("negative power")
        out = MonomialIdeal.unit(self.n)
        for _ in range(k):
            out = out * self
        return out

    def colon_monomial(self, a) -> "MonomialIdeal":
        return MonomialIdeal.from_gens(
            self.n, [tuple(max(b - c, 0) for b, c in zip(g, a)) for g in self.gens])

    def colon(self, J: "MonomialIdeal") -> "MonomialIdeal":
        _same(self, J)
        if J.is_zero():
            raise ValueError("colon by the zero ideal")
        out = None
        for g in J.gens:
            part = self.colon_monomial(g)
            out = part if out is None else out & part
        return out

    def max_degree(self) -> int:
        return max((sum(g) for g in self.gens), default=0)


def _same(I: MonomialIdeal, J: MonomialIdeal):
    if I.n != J.n:
        raise ValueError(f"variable count mismatch: {I.n} vs {J.n}")


def _minimal(gens) -> tuple:
    gens = sorted({tuple(int(a) for a in g) for g in gens}, key=grlex_key)
    keep: list[tuple] = []
    for g in gens:
        # after graded sorting a divisor always precedes its multiples
        if not any(divides(h, g) for h in keep):
            keep.append(g)
    return tuple(keep)


def minimalize(gens, n: int | None = None) -> MonomialIdeal:
    gens = [tuple(g) for g in gens]
    if n is None:
        if not gens:
            raise ValueError("cannot infer n from an empty generator list")
        n = len(gens[0])
    return MonomialIdeal.from_gens(n, gens)


def combine(kind: str, I: MonomialIdeal, J: MonomialIdeal | int | None = None) -> MonomialIdeal:
    if kind == "sum":
        return I + J
    if kind == "product":
        return I * J
    if kind == "intersect":
        return I & J
    if kind == "power":
        return I ** int(J)
    raise ValueError(f"unknown combine kind {kind!r}")


def colon(I: MonomialIdeal, J: MonomialIdeal) -> MonomialIdeal:
    return I.colon(J)


def contains(I: MonomialIdeal, m) -> bool:
    return I.contains(tuple(m))


# integral closure ----------------------------------------------------------

class UncertifiedClosure(RuntimeError):
    def __init__(self, report):
        super().__init__(f"closure not certified: {len(report.undecided)} undecided lattice points")
        self.report = report


@dataclass
class ClosureReport:
    ideal: MonomialIdeal
    certified: bool
    method: str
    undecided: list = field(default_factory=list)


def _box(I: MonomialIdeal):
    tops = [max(g[i] for g in I.gens) for i in range(I.n)]
    return cartesian(*[range(t + 1) for t in tops])


def newton_inequalities(I: MonomialIdeal, limit: int | None = None):
    normals, complete = candidate_normals(I.gens, I.n, limit)
    ineqs = sorted((a, min(dot(a, g) for g in I.gens)) for a in normals)
    return ineqs, complete


def in_newton_polyhedron(v, ineqs) -> bool:
    return all(dot(a, v) >= b for a, b in ineqs)


def _closure_facets(I: MonomialIdeal) -> ClosureReport:
    ineqs, _ = newton_inequalities(I)
    members = [v for v in _box(I) if in_newton_polyhedron(v, ineqs)]
    return ClosureReport(MonomialIdeal.from_gens(I.n, members), True, "facets")


class PowerOracle:
    """Membership of x^v in the integral closure via (x^v)^m in I^m."""

    def __init__(self, I: MonomialIdeal, power_bound: int = 64):
        self.I = I
        self.power_bound = power_bound
        self._powers = [MonomialIdeal.unit(I.n)]

    def power(self, m: int) -> MonomialIdeal:
        while len(self._powers) <= m:
            self._powers.append(self._powers[-1] * self.I)
        return self._powers[m]

    def witness(self, v):
        for m in range(1, self.power_bound + 1):
            if self.power(m).contains(tuple(m * a for a in v)):
                return m
        return None


def _closure_power(I: MonomialIdeal, power_bound: int, normal_limit: int = 20000) -> ClosureReport:
    oracle = PowerOracle(I, power_bound)
    ineqs, _ = newton_inequalities(I, normal_limit)
    members, undecided = [], []
    for v in _box(I):
        if not in_newton_polyhedron(v, ineqs):
            continue  # separated by a valid inequality: certified non-member
        if I.contains(v) or oracle.witness(v) is not None:
            members.append(v)
        else:
            undecided.append(v)
    J = MonomialIdeal.from_gens(I.n, members)
    undecided = [v for v in undecided if not J.contains(v)]
    return ClosureReport(J, not undecided, "power", undecided)


def closure_report(I: MonomialIdeal, method: str = "auto", power_bound: int = 64) -> ClosureReport:
    if I.is_zero():
        raise ValueError("integral closure of the zero ideal is not handled")
    if method == "auto":
        method = "facets" if I.n <= 3 else "power"
    if method == "facets":
        return _closure_facets(I)
    if method == "power":
        return _closure_power(I, power_bound)
    raise ValueError(f"unknown method {method!r}")


def newton_closure(I: MonomialIdeal, method: str = "auto", power_bound: int = 64) -> MonomialIdeal:
    rep = closure_report(I, method, power_bound)
    if not rep.certified:
        raise UncertifiedClosure(rep)
    return rep.ideal


# Ratliff-Rush ----------------------------------------------------------------

@dataclass
class RatliffRushResult:
    ideal: MonomialIdeal
    stabilized: bool
    stable_from: int
    chain: list


def ratliff_rush(I: MonomialIdeal, n_max: int = 6) -> RatliffRushResult:
    if I.is_zero():
        raise ValueError("Ratliff-Rush closure of the zero ideal")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    chain = []
    power = MonomialIdeal.unit(I.n)
    union = I
    for k in range(n_max + 1):
        nxt = power * I
        step = nxt.colon(power)
        chain.append(step)
        union = union + step
        power = nxt
    stable_from = n_max
    while stable_from > 0 and chain[stable_from - 1] == chain[n_max]:
        stable_from -= 1
    return RatliffRushResult(union, chain[-1] == chain[-2], stable_from, chain)


def ratliff_rush_pair(L: MonomialIdeal, M: MonomialIdeal, n_max: int = 6) -> MonomialIdeal:
    """Union of (L^{k+1} :_M L^k); for ideals this is M intersected with the closure."""
    if not L <= M:
        raise ValueError("need L inside M")
    if L.is_zero():
        return L
    return ratliff_rush(L, n_max).ideal & M


def monomials_up_to(n: int, d: int):
    out = [e for e in cartesian(*[range(d + 1)] * n) if sum(e) <= d]
    return sorted(out, key=grlex_key)


def ideals_up_to_degree(n: int, d: int, max_gens: int | None = None) -> list[MonomialIdeal]:
    """All monomial ideals generated by monomials of degree <= d (optionally <= max_gens gens)."""
    monos = [m for m in monomials_up_to(n, d)]
    found: set = set()
    out = []

    def rec(start, chosen):
        key = tuple(chosen)
        if key not in found:
            found.add(key)
            out.append(MonomialIdeal(n, key))
        if max_gens is not None and len(chosen) >= max_gens:
            return
        for i in range(start, len(monos)):
            m = monos[i]
            if any(divides(c, m) or divides(m, c) for c in chosen):
                continue
            rec(i + 1, chosen + [m])

    rec(0, [])
    return [MonomialIdeal.from_gens(n, I.gens) for I in out]


@dataclass
class RestrictabilitySearch:
    witness: tuple | None   # (L, N, M, RR(L cap N, N), RR(L, M))
    checked: int
    exhausted: bool


def rr_restrictability_search(n: int = 2, degree: int = 5, max_gens: int = 3,
                              budget: int = 100000, n_max: int = 6) -> RestrictabilitySearch:
    """Look for L, N with RR(L cap N, N) not inside RR(L, L+N); N runs over powers of m."""
    m = MonomialIdeal.maximal(n)
    powers = [m**k for k in range(1, degree + 1)]
    cache: dict = {}

    def rr(I):
        if I not in cache:
            cache[I] = ratliff_rush(I, n_max).ideal
        return cache[I]

    checked = 0
    for L in ideals_up_to_degree(n, degree, max_gens):
        if L.is_zero():
            continue
        for N in powers:
            if L <= N:
                continue
            I0 = L & N
            checked += 1
            lhs = rr(I0) & N
            M = L + N
            rhs = rr(L) & M
            if not lhs <= rhs:
                return RestrictabilitySearch((L, N, M, lhs, rhs), checked, False)
            if checked >= budget:
                return RestrictabilitySearch(None, checked, False)
    return RestrictabilitySearch(None, checked, True)
