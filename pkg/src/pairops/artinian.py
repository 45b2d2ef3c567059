"""Finite-dimensional local algebras over F_p and their finite modules.

A module is a finite-dimensional F_p vector space together with one action
matrix per algebra generator. Submodules are invariant subspaces, quotients
act on a complement of the pivot columns, and the Matlis dual is the linear
dual with transposed actions.
"""

from __future__ import annotations

import re
from functools import cached_property
from itertools import product as cartesian

import numpy as np

from .linalg import Subspace, check_prime, kernel_of_stack, nullspace, rank, rref, solve
from .monomial import format_monomial, grlex_key, variable_names


class UnsupportedError(RuntimeError):
    pass


MAX_ALGEBRA_PRIME = 2**24


def check_algebra_prime(p: int) -> int:
    p = check_prime(p)
    if p >= MAX_ALGEBRA_PRIME:
        raise ValueError(f"algebra computations use int64 products and need p < 2^24, got {p}")
    return p


# polynomial text ------------------------------------------------------------

_TERM_SPLIT = re.compile(r"(?=[+-])")


def parse_polynomial(text: str, names: list[str], p: int) -> dict:
    """Parse sums of monomial terms such as ``x^3 - 2*x*y + 1`` into {exps: coeff mod p}."""
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial")
    out: dict[tuple, int] = {}
    for term in _TERM_SPLIT.split(s):
        if not term:
            continue
        sign = 1
        while term and term[0] in "+-":
            if term[0] == "-":
                sign = -sign
            term = term[1:]
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = sign
        exps = [0] * len(names)
        for factor in term.split("*"):
            if not factor:
                raise ValueError(f"malformed term in {text!r}")
            if factor.isdigit():
                coeff *= int(factor)
                continue
            base, _, power = factor.partition("^")
            if base not in names:
                raise ValueError(f"unknown variable {base!r} in {text!r}")
            exps[names.index(base)] += int(power) if power else 1
        key = tuple(exps)
        out[key] = (out.get(key, 0) + coeff) % p
    return {k: v for k, v in out.items() if v}


# algebras -------------------------------------------------------------------

class TruncatedAlgebra:
    """A local algebra k[x]/(relations + m^N) or k[t^S]/(t^{>=N}) with a monomial basis."""

    def __init__(self, p, names, N, basis, weights, mult, words, kind, relations=(), semigroup=None):
        self.p = p
        self.names = list(names)
        self.N = N
        self.basis = list(basis)
        self.weights = np.array(weights, dtype=np.int64)
        self.mult = mult
        self.words = words
        self.kind = kind
        self.relations = tuple(relations)
        self.semigroup = semigroup
        self.index = {b: i for i, b in enumerate(self.basis)}
        self._check()

    # builders
    @classmethod
    def polynomial(cls, p: int, n_or_names, N: int, relations=()) -> "TruncatedAlgebra":
        p = check_algebra_prime(p)
        if N < 1:
            raise ValueError("truncation order must be >= 1")
        names = variable_names(n_or_names) if isinstance(n_or_names, int) else list(n_or_names)
        n = len(names)
        rels = [parse_polynomial(r, names, p) if isinstance(r, str) else dict(r) for r in relations]
        monos = [e for e in cartesian(*[range(N)] * n) if sum(e) < N]
        monos.sort(key=grlex_key, reverse=True)  # largest first: pivots become leading terms
        col = {m: i for i, m in enumerate(monos)}
        rows = []
        for r in rels:
            for u in monos:
                row = np.zeros(len(monos), dtype=np.int64)
                for e, c in r.items():
                    w = tuple(a + b for a, b in zip(u, e))
                    if sum(w) < N:
                        row[col[w]] = (row[col[w]] + c) % p
                if row.any():
                    rows.append(row)
        if rows:
            R, piv = rref(np.array(rows), p)
        else:
            R, piv = np.zeros((0, len(monos)), dtype=np.int64), []
        pivset = set(piv)
        standard = sorted((monos[i] for i in range(len(monos)) if i not in pivset), key=grlex_key)
        if not standard or standard[0] != (0,) * n:
            raise ValueError("relations generate the unit ideal")
        sidx = {m: i for i, m in enumerate(standard)}
        dim = len(standard)
        nf: dict[tuple, np.ndarray] = {}
        for m in standard:
            v = np.zeros(dim, dtype=np.int64)
            v[sidx[m]] = 1
            nf[m] = v
        for i, c in enumerate(piv):
            v = np.zeros(dim, dtype=np.int64)
            for m, j in sidx.items():
                v[j] = (-R[i, col[m]]) % p
            nf[monos[c]] = v
        zero = np.zeros(dim, dtype=np.int64)
        mult = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, a in enumerate(standard):
            for j, b in enumerate(standard):
                w = tuple(x + y for x, y in zip(a, b))
                mult[i, j] = nf.get(w, zero)
        alg = cls(p, names, N, standard, [sum(m) for m in standard], mult,
                  [list(m) for m in standard], "poly", relations)
        alg._nf = nf
        return alg

    @classmethod
    def semigroup_ring(cls, p: int, gens, N: int) -> "TruncatedAlgebra":
        from .semigroup import NumericalSemigroup

        p = check_algebra_prime(p)
        S = NumericalSemigroup(tuple(gens))
        gens = list(S.gens)
        vals = [v for v in range(N) if S.contains(v)]
        words = {0: [0] * len(gens)}
        for v in vals[1:]:
            for k, g in enumerate(gens):
                if v - g in words:
                    w = list(words[v - g])
                    w[k] += 1
                    words[v] = w
                    break
        dim = len(vals)
        idx = {v: i for i, v in enumerate(vals)}
        mult = np.zeros((dim, dim, dim), dtype=np.int64)
        for i, a in enumerate(vals):
            for j, b in enumerate(vals):
                if a + b < N:
                    mult[i, j, idx[a + b]] = 1
        return cls(p, [f"t^{g}" for g in gens], N, vals, vals, mult,
                   [words[v] for v in vals], "semigroup", semigroup=S)

    def _check(self):
        d = self.dim
        if not all(np.array_equal(self.mult[0, j], np.eye(d, dtype=np.int64)[j]) for j in range(d)):
            raise ValueError("first basis element is not the identity")
        rng = np.random.default_rng(0)
        for _ in range(6):
            a, b, c = (rng.integers(0, self.p, d) for _ in range(3))
            ab_c = self.mul(self.mul(a, b), c)
            a_bc = self.mul(a, self.mul(b, c))
            if not np.array_equal(ab_c, a_bc) or not np.array_equal(self.mul(a, b), self.mul(b, a)):
                raise ValueError("multiplication table is not associative and commutative")

    # basic structure
    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ngens(self) -> int:
        return len(self.words[0])

    @property
    def one(self) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[0] = 1
        return v

    def unit_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def mul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        return np.einsum("i,j,ijk->k", a, b, self.mult) % self.p

    @cached_property
    def regular_actions(self) -> list[np.ndarray]:
        """Matrices of multiplication by each algebra generator on A."""
        mats = []
        for k in range(self.ngens):
            g = self.generator_element(k)
            mats.append(self.left_matrix(g))
        return mats

    def left_matrix(self, a) -> np.ndarray:
        """Matrix (columns = images of basis elements) of multiplication by a."""
        a = np.asarray(a, dtype=np.int64)
        return np.einsum("i,ijk->kj", a, self.mult) % self.p

    def generator_element(self, k: int) -> np.ndarray:
        if self.kind == "poly":
            e = tuple(int(i == k) for i in range(len(self.names)))
            return self.monomial_element(e)
        return self.monomial_element(self.semigroup.gens[k])

    def monomial_element(self, key) -> np.ndarray:
        if self.kind == "poly":
            key = tuple(key)
            if sum(key) >= self.N:
                return np.zeros(self.dim, dtype=np.int64)
            return self._nf[key].copy()
        if key in self.index:
            return self.unit_vector(self.index[key])
        if key >= self.N and self.semigroup.contains(key):
            return np.zeros(self.dim, dtype=np.int64)
        raise ValueError(f"t^{key} is not in the semigroup ring")

    def element(self, text) -> np.ndarray:
        if not isinstance(text, str):
            return np.asarray(text, dtype=np.int64) % self.p
        if self.kind == "poly":
            poly = parse_polynomial(text, self.names, self.p)
            v = np.zeros(self.dim, dtype=np.int64)
            for e, c in poly.items():
                v = (v + c * self.monomial_element(e)) % self.p
            return v
        return self._semigroup_element(text)

    def _semigroup_element(self, text: str) -> np.ndarray:
        s = text.replace(" ", "")
        v = np.zeros(self.dim, dtype=np.int64)
        for term in _TERM_SPLIT.split(s):
            if not term:
                continue
            sign = 1
            while term and term[0] in "+-":
                sign = -sign if term[0] == "-" else sign
                term = term[1:]
            coeff, exp = sign, 0
            for factor in term.split("*"):
                if factor.isdigit():
                    coeff *= int(factor)
                    continue
                m = re.fullmatch(r"t(?:\^?(\d+))?", factor)
                if not m:
                    raise ValueError(f"cannot parse semigroup term {term!r}")
                exp += int(m.group(1) or 1)
            v = (v + coeff * self.monomial_element(exp)) % self.p
        return v

    def format(self, v) -> str:
        v = np.asarray(v, dtype=np.int64) % self.p
        terms = []
        for i in np.flatnonzero(v):
            c = int(v[i])
            if c > self.p // 2 and self.p > 2:
                sgn, c = "-", self.p - c
            else:
                sgn = "+"
            if self.kind == "poly":
                mono = format_monomial(self.basis[i], self.names)
            else:
                b = self.basis[i]
                mono = "1" if b == 0 else ("t" if b == 1 else f"t^{b}")
            body = mono if c == 1 else (str(c) if mono == "1" else f"{c}*{mono}")
            terms.append((sgn, body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sgn, body in terms[1:]:
            out += f" {sgn} {body}"
        return out

    def describe(self) -> str:
        if self.kind == "semigroup":
            return f"semigroup p={self.p} gens={','.join(map(str, self.semigroup.gens))} trunc={self.N}"
        rels = f" rels=[{','.join(r if isinstance(r, str) else '?' for r in self.relations)}]" if self.relations else ""
        return f"artinian p={self.p} vars={','.join(self.names)} trunc={self.N}{rels}"

    def __repr__(self):
        return f"TruncatedAlgebra({self.describe()}, dim={self.dim})"

    # modules over A
    @cached_property
    def regular(self) -> "FinModule":
        return FinModule(self, self.regular_actions, "A", weights=self.weights, free_rank=1)

    def free(self, s: int) -> "FinModule":
        if s == 1:
            return self.regular
        return self.regular.power(s)

    @cached_property
    def maximal_ideal(self) -> "Submodule":
        return self.regular.generate([self.generator_element(k) for k in range(self.ngens)])

    def ideal(self, gens) -> "Submodule":
        return self.regular.generate([self.element(g) for g in gens])

    def power_of_maximal(self, k: int) -> "Submodule":
        I = self.regular.full()
        for _ in range(k):
            I = ideal_multiply(self.maximal_ideal, I)
        return I


def build_algebra(config) -> TruncatedAlgebra:
    """Build from a dict ({p, n|vars, N, relations} or {p, semigroup, N}) or a context string."""
    if isinstance(config, str):
        config = parse_context(config)
    p = config.get("p", 2)
    N = config.get("N", config.get("trunc"))
    if "semigroup" in config:
        return TruncatedAlgebra.semigroup_ring(p, config["semigroup"], N or 12)
    names = config.get("vars") or config.get("n")
    return TruncatedAlgebra.polynomial(p, names, N or 8, config.get("relations", ()))


def parse_context(text: str) -> dict:
    """Parse ``artinian p=2 vars=x,y trunc=8 rels=[x^3-y^2]`` or ``semigroup p=2 gens=2,3 trunc=12``."""
    text = text.strip()
    m = re.match(r"^(artinian|semigroup)\b(.*)$", text)
    if not m:
        raise ValueError(f"context must start with 'artinian' or 'semigroup': {text!r}")
    kind, rest = m.groups()
    rels = []
    rm = re.search(r"rels=\[([^\]]*)\]", rest)
    if rm:
        rels = [r.strip() for r in rm.group(1).split(",") if r.strip()]
        rest = rest[: rm.start()] + rest[rm.end():]
    fields = {}
    for tok in rest.split():
        if "=" not in tok:
            raise ValueError(f"malformed context token {tok!r}")
        k, v = tok.split("=", 1)
        fields[k] = v
    allowed = {"p", "vars", "trunc", "gens"}
    bad = set(fields) - allowed
    if bad:
        raise ValueError(f"unknown context keys {sorted(bad)}")
    out = {"p": int(fields.get("p", 2))}
    if "trunc" in fields:
        out["N"] = int(fields["trunc"])
    if kind == "semigroup":
        if "gens" not in fields:
            raise ValueError("semigroup context needs gens=")
        out["semigroup"] = tuple(int(g) for g in fields["gens"].split(","))
    else:
        out["vars"] = fields.get("vars", "x,y").split(",")
        out["relations"] = rels
    return out


# modules ----------------------------------------------------------------------

class FinModule:
    """A finite A-module given by commuting action matrices of the algebra generators."""

    def __init__(self, algebra: TruncatedAlgebra, actions, label: str = "", weights=None, free_rank=None):
        self.A = algebra
        self.actions = [np.asarray(m, dtype=np.int64) % algebra.p for m in actions]
        self.dim = self.actions[0].shape[0] if self.actions else 0
        self.label = label
        self.weights = None if weights is None else np.asarray(weights, dtype=np.int64)
        self.free_rank = free_rank
        self._mono: dict[int, np.ndarray] = {}
        for m in self.actions:
            m.setflags(write=False)

    @property
    def p(self) -> int:
        return self.A.p

    def power(self, s: int) -> "FinModule":
        d = self.dim
        acts = []
        for m in self.actions:
            big = np.zeros((s * d, s * d), dtype=np.int64)
            for k in range(s):
                big[k * d:(k + 1) * d, k * d:(k + 1) * d] = m
            acts.append(big)
        w = None if self.weights is None else np.tile(self.weights, s)
        fr = None if self.free_rank is None else self.free_rank * s
        return FinModule(self.A, acts, f"{self.label}^{s}", weights=w, free_rank=fr)

    def same(self, other: "FinModule") -> bool:
        if self is other:
            return True
        return (self.A is other.A and self.dim == other.dim
                and all(np.array_equal(a, b) for a, b in zip(self.actions, other.actions)))

    def mono_action(self, i: int) -> np.ndarray:
        """Action of the i-th basis element of A."""
        if i not in self._mono:
            M = np.eye(self.dim, dtype=np.int64)
            for k, e in enumerate(self.A.words[i]):
                for _ in range(e):
                    M = (self.actions[k] @ M) % self.p
            self._mono[i] = M
        return self._mono[i]

    def act(self, a) -> np.ndarray:
        a = self.A.element(a)
        M = np.zeros((self.dim, self.dim), dtype=np.int64)
        for i in np.flatnonzero(a):
            M = (M + int(a[i]) * self.mono_action(i)) % self.p
        return M

    def full(self) -> "Submodule":
        return Submodule(self, Subspace.full(self.p, self.dim))

    def zero(self) -> "Submodule":
        return Submodule(self, Subspace.zero(self.p, self.dim))

    def vector(self, entries) -> np.ndarray:
        """Vector from algebra entries when the module is free, else a raw coordinate vector."""
        if self.free_rank is not None and len(entries) == self.free_rank and self.free_rank * self.A.dim == self.dim:
            return np.concatenate([self.A.element(e) for e in entries]) % self.p
        return np.asarray(entries, dtype=np.int64) % self.p

    def generate(self, vectors) -> "Submodule":
        vecs = [np.asarray(v, dtype=np.int64) % self.p for v in vectors]
        S = Subspace.span(vecs, self.p, self.dim) if vecs else Subspace.zero(self.p, self.dim)
        return Submodule(self, saturate(self, S))

    def span(self, S: Subspace) -> "Submodule":
        return Submodule(self, saturate(self, S))

    def is_invariant(self, S: Subspace) -> bool:
        return all(S.image(m).issubset(S) for m in self.actions)

    def dual(self) -> "FinModule":
        return FinModule(self.A, [m.T.copy() for m in self.actions], f"({self.label})^v")

    def restrict(self, S: Subspace):
        """Intrinsic module on an invariant subspace and its inclusion matrix."""
        B = S.basis
        piv = list(S.pivots)
        acts = [((m @ B.T) % self.p)[piv, :] for m in self.actions]
        return FinModule(self.A, acts, "sub"), B.T.copy()

    def quotient(self, S: Subspace):
        """Quotient module by an invariant subspace and the projection matrix."""
        comp = S.complement_pivots()
        Q = np.zeros((len(comp), self.dim), dtype=np.int64)
        for r, c in enumerate(comp):
            Q[r, c] = 1
        for i, c in enumerate(S.pivots):
            Q[:, c] = (-S.basis[i, comp]) % self.p
        acts = [((Q @ m) % self.p)[:, comp] for m in self.actions]
        return FinModule(self.A, acts, "quot"), Q

    def __repr__(self):
        return f"FinModule({self.label or '?'}, dim={self.dim})"


def saturate(X: FinModule, S: Subspace) -> Subspace:
    """Smallest invariant subspace containing S."""
    while True:
        parts = [S.basis] + [(S.basis @ m.T) % X.p for m in X.actions]
        T = Subspace.span(np.vstack(parts), X.p, X.dim) if S.dim else S
        if T.dim == S.dim:
            return S
        S = T


class Submodule:
    """An invariant subspace of a FinModule."""

    __slots__ = ("module", "space", "_gens")

    def __init__(self, module: FinModule, space: Subspace):
        self.module = module
        self.space = space
        self._gens = None

    @property
    def A(self) -> TruncatedAlgebra:
        return self.module.A

    @property
    def dim(self) -> int:
        return self.space.dim

    def _check(self, other: "Submodule"):
        if not self.module.same(other.module):
            raise ValueError("submodules of different modules")

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return self.module.same(other.module) and self.space == other.space

    def __hash__(self):
        return hash(self.space.key())

    def __le__(self, other: "Submodule") -> bool:
        self._check(other)
        return self.space.issubset(other.space)

    def __lt__(self, other: "Submodule") -> bool:
        return self <= other and self.dim < other.dim

    def __add__(self, other: "Submodule") -> "Submodule":
        self._check(other)
        return Submodule(self.module, self.space + other.space)

    def __and__(self, other: "Submodule") -> "Submodule":
        self._check(other)
        return Submodule(self.module, self.space & other.space)

    def contains(self, v) -> bool:
        return self.space.contains(v)

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self.module.dim

    def generators(self) -> list[np.ndarray]:
        """Minimal generators: lift of a basis of U/mU, lowest weight first."""
        if self._gens is None:
            self._gens = self._minimal_generators()
        return [g.copy() for g in self._gens]

    def _minimal_generators(self) -> list[np.ndarray]:
        mU = ideal_multiply(self.A.maximal_ideal, self).space
        order = list(range(self.space.dim))
        w = self.module.weights
        if w is not None:
            order.sort(key=lambda i: (int(w[self.space.pivots[i]]), self.space.pivots[i]))
        chosen: list[np.ndarray] = []
        cur = mU
        for i in order:
            row = self.space.basis[i]
            if not cur.contains(row):
                chosen.append(row.copy())
                cur = cur + Subspace.span([row], self.module.p, self.module.dim)
        return chosen

    def format(self) -> str:
        return format_submodule(self)

    def __repr__(self):
        return f"Submodule({self.format()}, dim={self.dim})"


def format_vector(X: FinModule, v) -> str:
    A = X.A
    v = np.asarray(v, dtype=np.int64)
    if X.free_rank is not None and X.free_rank * A.dim == X.dim:
        parts = [A.format(v[k * A.dim:(k + 1) * A.dim]) for k in range(X.free_rank)]
        return parts[0] if X.free_rank == 1 else "(" + ", ".join(parts) + ")"
    return "[" + " ".join(str(int(c)) for c in v) + "]"


def format_submodule(U: Submodule) -> str:
    gens = U.generators()
    if not gens:
        return "(0)"
    return "<" + ", ".join(format_vector(U.module, g) for g in gens) + ">" if (
        U.module.free_rank or 0) > 1 else "(" + ", ".join(format_vector(U.module, g) for g in gens) + ")"


def generate_submodule(A: TruncatedAlgebra, s: int, gens) -> Submodule:
    """Submodule of A^s generated by vectors of algebra elements (bare elements when s = 1)."""
    X = A.free(s)
    vecs = []
    for g in gens:
        if s == 1 and (isinstance(g, str) or (isinstance(g, np.ndarray) and g.ndim == 1)):
            g = [g]
        if len(g) != s:
            raise ValueError(f"generator {g} does not have length {s}")
        vecs.append(np.concatenate([A.element(e) for e in g]))
    return X.generate(vecs)


# colon, product, annihilators ----------------------------------------------

def _ideal_gens(J: Submodule) -> list[np.ndarray]:
    if J.module.free_rank != 1 or J.module.dim != J.A.dim:
        raise ValueError("expected an ideal of A")
    return J.generators()


def module_colon(U: Submodule, J: Submodule, within: Submodule | None = None) -> Submodule:
    """(U :_X J) = {v : g v in U for g in J}, optionally intersected with a submodule."""
    X = U.module
    gens = _ideal_gens(J)
    if not gens:
        S = Subspace.full(X.p, X.dim)
    else:
        ann = U.space.annihilator()
        if ann.dim == 0:
            S = Subspace.full(X.p, X.dim)
        else:
            S = kernel_of_stack([(ann.basis @ X.act(g)) % X.p for g in gens], X.p)
    out = Submodule(X, S)
    return out & within if within is not None else out


def ideal_multiply(J: Submodule, U: Submodule) -> Submodule:
    X = U.module
    if J is J.A.maximal_ideal:
        gens = [J.A.generator_element(k) for k in range(J.A.ngens)]
    else:
        gens = _ideal_gens(J)
    if not gens or U.dim == 0:
        return X.zero()
    rows = [(U.space.basis @ X.act(g).T) % X.p for g in gens]
    return Submodule(X, Subspace.span(np.vstack(rows), X.p, X.dim))


def annihilator(U: Submodule) -> Submodule:
    """ann(U) as an ideal of A."""
    A, X = U.A, U.module
    if U.dim == 0:
        return A.regular.full()
    # columns: image of basis element i applied to every basis vector of U
    blocks = []
    for u in U.space.basis:
        cols = [X.mono_action(i) @ u % X.p for i in range(A.dim)]
        blocks.append(np.array(cols).T)
    ker = nullspace(np.vstack(blocks) % A.p, A.p)
    S = Subspace.span(ker, A.p, A.dim) if len(ker) else Subspace.zero(A.p, A.dim)
    return Submodule(A.regular, S)


def ideal_colon(I: Submodule, J: Submodule) -> Submodule:
    return module_colon(I, J)


def socle(X: FinModule) -> Submodule:
    return Submodule(X, kernel_of_stack(X.actions, X.p))


def structure_invariants(A: TruncatedAlgebra) -> dict:
    soc = socle(A.regular)
    m = A.maximal_ideal
    m2 = ideal_multiply(m, m)
    return {"socle": soc, "is_gorenstein": soc.dim == 1, "embdim": m.dim - m2.dim}


def is_gorenstein(A: TruncatedAlgebra) -> bool:
    return socle(A.regular).dim == 1


# maps ---------------------------------------------------------------------------

class ModuleMap:
    """An A-linear map given by its matrix (target dim x source dim)."""

    def __init__(self, source: FinModule, target: FinModule, matrix):
        self.source = source
        self.target = target
        self.matrix = np.asarray(matrix, dtype=np.int64) % source.p
        if self.matrix.shape != (target.dim, source.dim):
            raise ValueError(f"matrix shape {self.matrix.shape} != ({target.dim}, {source.dim})")

    def is_linear(self) -> bool:
        p = self.source.p
        return all(np.array_equal((self.matrix @ a) % p, (b @ self.matrix) % p)
                   for a, b in zip(self.source.actions, self.target.actions))

    def image(self, U: Submodule) -> Submodule:
        return Submodule(self.target, U.space.image(self.matrix))

    def preimage(self, V: Submodule) -> Submodule:
        return Submodule(self.source, V.space.preimage(self.matrix))

    def kernel(self) -> Submodule:
        return self.preimage(self.target.zero())

    def is_injective(self) -> bool:
        return rank(self.matrix, self.source.p) == self.source.dim

    def is_surjective(self) -> bool:
        return rank(self.matrix, self.source.p) == self.target.dim

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other."""
        return ModuleMap(other.source, self.target, (self.matrix @ other.matrix) % self.source.p)

    def dual(self) -> "ModuleMap":
        return ModuleMap(self.target.dual(), self.source.dual(), self.matrix.T)


LinearModuleMap = ModuleMap


def matrix_over_algebra(A: TruncatedAlgebra, entries) -> ModuleMap:
    """Map A^s -> A^t from a t x s matrix of algebra elements."""
    t, s = len(entries), len(entries[0])
    d = A.dim
    M = np.zeros((t * d, s * d), dtype=np.int64)
    for i in range(t):
        for j in range(s):
            M[i * d:(i + 1) * d, j * d:(j + 1) * d] = A.left_matrix(A.element(entries[i][j]))
    return ModuleMap(A.free(s), A.free(t), M)


def transport(f: ModuleMap, kind: str, X: Submodule) -> Submodule:
    if kind == "image":
        return f.image(X)
    if kind == "preimage":
        return f.preimage(X)
    raise ValueError(f"unknown transport kind {kind!r}")


# subquotients as modules ----------------------------------------------------------

class View:
    """A submodule M of an ambient module seen as a module in its own right."""

    def __init__(self, M: Submodule):
        self.M = M
        self.module, self.incl = M.module.restrict(M.space)
        self.inclusion = ModuleMap(self.module, M.module, self.incl)

    def inward(self, U: Submodule) -> Submodule:
        """A submodule of the ambient contained in M, in intrinsic coordinates."""
        coords = self.M.space.coordinates(U.space.basis) if U.dim else np.zeros((0, self.module.dim), dtype=np.int64)
        return Submodule(self.module, Subspace.span(coords, self.module.p, self.module.dim))

    def outward(self, U: Submodule) -> Submodule:
        return self.inclusion.image(U)


class QuotientView:
    """M/L for L inside M (both submodules of one ambient), with the projection from M."""

    def __init__(self, L: Submodule, M: Submodule):
        self.view = View(M)
        Li = self.view.inward(L)
        self.module, Q = self.view.module.quotient(Li.space)
        self.projection = ModuleMap(self.view.module, self.module, Q)

    def image(self, N: Submodule) -> Submodule:
        """(N + L)/L for N inside M."""
        return self.projection.image(self.view.inward(N))

    def preimage(self, V: Submodule) -> Submodule:
        return self.view.outward(self.projection.preimage(V))


def restrict(M: Submodule) -> View:
    return View(M)


# Matlis duality --------------------------------------------------------------------

def perp(S: Submodule, dual_module: FinModule | None = None) -> Submodule:
    """Annihilator of S under the canonical pairing of X with X^v (coordinate dot product)."""
    D = dual_module or S.module.dual()
    return Submodule(D, S.space.annihilator())


def matlis_dual(X: FinModule) -> FinModule:
    return X.dual()


def dual_subquotient(V: Submodule, W: Submodule):
    """(V/W)^v realised as W^perp / V^perp inside X^v."""
    D = V.module.dual()
    return perp(W, D), perp(V, D)


def socle_functional(A: TruncatedAlgebra) -> np.ndarray:
    soc = socle(A.regular)
    if soc.dim != 1:
        raise UnsupportedError("algebra is not Gorenstein")
    s = soc.space.basis[0]
    # a coordinate functional that is nonzero on the socle generator
    i = int(np.flatnonzero(s)[0])
    phi = np.zeros(A.dim, dtype=np.int64)
    phi[i] = 1
    return phi


def gorenstein_iso(A: TruncatedAlgebra) -> ModuleMap:
    """A -> A^v, a |-> phi(a * -); an isomorphism exactly when A is Gorenstein."""
    phi = socle_functional(A)
    cols = [(phi @ A.left_matrix(A.unit_vector(i))) % A.p for i in range(A.dim)]
    return ModuleMap(A.regular, A.regular.dual(), np.array(cols).T)


def dual_via_annihilator(I: Submodule) -> Submodule:
    """(A/I)^v transported to A through the Gorenstein identification: ann(I)."""
    Phi = gorenstein_iso(I.A)
    return Phi.preimage(perp(I, Phi.target))


# envelopes -------------------------------------------------------------------------

def free_presentation(X: FinModule) -> ModuleMap:
    """Surjection A^t -> X sending the unit vectors to minimal generators."""
    A = X.A
    gens = X.full().generators()
    t = len(gens)
    cols = []
    for g in gens:
        for i in range(A.dim):
            cols.append(X.mono_action(i) @ g % X.p)
    M = np.array(cols).T if cols else np.zeros((X.dim, 0), dtype=np.int64)
    return ModuleMap(A.free(t) if t else _zero_free(A), X, M)


def _zero_free(A: TruncatedAlgebra) -> FinModule:
    return FinModule(A, [np.zeros((0, 0), dtype=np.int64) for _ in range(A.ngens)], "0", free_rank=0,
                     weights=np.zeros(0, dtype=np.int64))


def injective_embedding(X: FinModule) -> ModuleMap:
    """X -> A^t, injective; dualizes a free presentation of X^v (Gorenstein only)."""
    A = X.A
    if not is_gorenstein(A):
        raise UnsupportedError("injective embeddings are only built over Gorenstein algebras")
    pi = free_presentation(X.dual())  # A^t -> X^v
    t = pi.source.free_rank or 0
    if t == 0:
        return ModuleMap(X, _zero_free(A), np.zeros((0, X.dim), dtype=np.int64))
    # pi^T : X = X^vv -> (A^t)^v ;  then undo the Gorenstein identification blockwise
    Phi = gorenstein_iso(A).matrix
    inv = _inverse(Phi, A.p)
    d = A.dim
    blk = np.zeros((t * d, t * d), dtype=np.int64)
    for k in range(t):
        blk[k * d:(k + 1) * d, k * d:(k + 1) * d] = inv
    M = (blk @ pi.matrix.T) % A.p
    f = ModuleMap(X, A.free(t), M)
    if not f.is_injective():
        raise AssertionError("dualized presentation failed to be injective")
    return f


def _inverse(M: np.ndarray, p: int) -> np.ndarray:
    n = M.shape[0]
    R, piv = rref(np.hstack([M % p, np.eye(n, dtype=np.int64)]), p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix not invertible")
    return R[:, n:].copy()


def hom_space(X: FinModule, Y: FinModule) -> list[np.ndarray]:
    """k-basis of Hom_A(X, Y) as matrices (Y.dim x X.dim)."""
    p = X.p
    dx, dy = X.dim, Y.dim
    if dx == 0 or dy == 0:
        return []
    # unknown H (dy x dx) flattened row-major; constraint H a - b H = 0
    eqs = []
    I_x, I_y = np.eye(dx, dtype=np.int64), np.eye(dy, dtype=np.int64)
    for a, b in zip(X.actions, Y.actions):
        eqs.append((np.kron(I_y, a.T) - np.kron(b, I_x)) % p)
    ker = nullspace(np.vstack(eqs) % p, p)
    return [k.reshape(dy, dx) for k in ker]


def hom_to_free(X: FinModule):
    """Hom_A(X, A) as pairs (matrix, values on presentation generators), via a presentation."""
    A = X.A
    pi = free_presentation(X)
    t = pi.source.free_rank or 0
    d = A.dim
    K = pi.kernel()
    # unknown: values a_1..a_t in A (t*d coordinates); relations r in K force sum r_j a_j = 0
    rows = []
    for r in K.space.basis:
        block = [A.left_matrix(r[j * d:(j + 1) * d]) for j in range(t)]
        rows.append(np.hstack(block))
    if rows:
        sol = nullspace(np.vstack(rows) % A.p, A.p)
    else:
        sol = np.eye(t * d, dtype=np.int64)
    maps = []
    for vals in sol:
        # g(pi(e_j * b)) = b * a_j ; build g on X through a right inverse of pi
        g_on_free = np.hstack([A.left_matrix(vals[j * d:(j + 1) * d]) for j in range(t)])
        maps.append(_descend(g_on_free, pi))
    return maps


def _descend(h: np.ndarray, pi: ModuleMap) -> np.ndarray:
    """Matrix g with g pi = h, given that h vanishes on ker pi."""
    p = pi.source.p
    P = pi.matrix
    sec = np.zeros((P.shape[1], P.shape[0]), dtype=np.int64)
    for j in range(P.shape[0]):
        e = np.zeros(P.shape[0], dtype=np.int64)
        e[j] = 1
        sec[:, j] = solve(P, e, p)
    return (h @ sec) % p


def free_preenvelope(X: FinModule) -> ModuleMap:
    """alpha: X -> A^r built from generators of Hom_A(X, A); every map to a free module factors."""
    A = X.A
    maps = hom_to_free(X)
    if not maps:
        return ModuleMap(X, _zero_free(A), np.zeros((0, X.dim), dtype=np.int64))
    # Hom(X, A) is an A-module via post-multiplication; pick minimal generators
    flat = [m.reshape(-1) for m in maps]
    H = FinModule(A, [_hom_action(maps, a, A) for a in A.regular_actions], "Hom")
    Hs = H.full()
    gens = Hs.generators()
    basis = np.array(flat)
    rowsG = [(g @ basis) % A.p for g in gens]
    alpha = np.vstack([r.reshape(A.dim, X.dim) for r in rowsG])
    return ModuleMap(X, A.free(len(gens)), alpha)


def _hom_action(maps, a, A):
    """Action matrix of a generator on the span of the given Hom basis."""
    basis = np.array([m.reshape(-1) for m in maps])
    S, piv = rref(basis, A.p)
    if len(piv) != len(maps):
        raise AssertionError("Hom basis is dependent")
    cols = []
    for m in maps:
        img = ((a @ m) % A.p).reshape(-1)
        c = solve(basis.T, img, A.p)
        if c is None:
            raise AssertionError("Hom space not closed under the action")
        cols.append(c)
    return np.array(cols).T


def factor_through(alpha: ModuleMap, beta: ModuleMap):
    """Find gamma: target(alpha) -> target(beta), A-linear between free modules, with beta = gamma alpha."""
    A = alpha.source.A
    r = alpha.target.free_rank or 0
    rp = beta.target.free_rank or 0
    d = A.dim
    if r == 0:
        return None if beta.matrix.any() else np.zeros((rp * d, 0), dtype=np.int64)
    # gamma is an rp x r matrix of algebra elements
    cols = []
    for i in range(rp):
        for j in range(r):
            for b in range(d):
                G = np.zeros((rp * d, r * d), dtype=np.int64)
                G[i * d:(i + 1) * d, j * d:(j + 1) * d] = A.left_matrix(A.unit_vector(b))
                cols.append(((G @ alpha.matrix) % A.p).reshape(-1))
    sol = solve(np.array(cols).T, beta.matrix.reshape(-1), A.p)
    if sol is None:
        return None
    G = np.zeros((rp * d, r * d), dtype=np.int64)
    k = 0
    for i in range(rp):
        for j in range(r):
            for b in range(d):
                if sol[k]:
                    G[i * d:(i + 1) * d, j * d:(j + 1) * d] += sol[k] * A.left_matrix(A.unit_vector(b))
                k += 1
    return G % A.p


def envelope(X: FinModule, kind: str) -> ModuleMap:
    if kind == "free_presentation":
        return free_presentation(X)
    if kind == "injective_embedding":
        return injective_embedding(X)
    if kind == "free_preenvelope":
        return free_preenvelope(X)
    raise ValueError(f"unknown envelope kind {kind!r}")


# truncation guard ---------------------------------------------------------------------

def projection(A_hi: TruncatedAlgebra, A_lo: TruncatedAlgebra) -> np.ndarray:
    """Matrix of the natural surjection A_hi -> A_lo (same presentation, smaller truncation)."""
    cols = [A_lo.monomial_element(b) for b in A_hi.basis]
    return np.array(cols).T % A_lo.p


def rebuild(A: TruncatedAlgebra, N: int) -> TruncatedAlgebra:
    if A.kind == "semigroup":
        return TruncatedAlgebra.semigroup_ring(A.p, A.semigroup.gens, N)
    return TruncatedAlgebra.polynomial(A.p, A.names, N, A.relations)


def project_submodule(U: Submodule, A_lo: TruncatedAlgebra) -> Submodule:
    X = U.module
    s = X.free_rank
    if s is None or s * X.A.dim != X.dim:
        raise ValueError("truncation comparison needs a submodule of a free module")
    P = projection(X.A, A_lo)
    d = X.A.dim
    big = np.zeros((s * A_lo.dim, s * d), dtype=np.int64)
    for k in range(s):
        big[k * A_lo.dim:(k + 1) * A_lo.dim, k * d:(k + 1) * d] = P
    return Submodule(A_lo.free(s), U.space.image(big))


def compare_truncations(recipe, base: TruncatedAlgebra | dict | str, N: int, guard: int = 2, step: int = 2):
    """Run ``recipe(algebra)`` at orders N and N+step; compare images in the order N-guard quotient.

    A result also counts as unstable when some minimal generator has order
    >= N-guard, since the comparison window cannot see it (the socle is the
    typical case). Returns a dict with keys stable, visible, low_degree_result
    and the two raw results.
    """
    if not isinstance(base, TruncatedAlgebra):
        base = build_algebra(base)
    A1, A2 = rebuild(base, N), rebuild(base, N + step)
    d = N - guard
    if d < 1:
        raise ValueError("guard leaves no degrees to compare")
    lo = rebuild(base, d)
    r1, r2 = recipe(A1), recipe(A2)
    p1, p2 = project_submodule(r1, lo), project_submodule(r2, lo)
    visible = all(_order(U.module, g) < d for U in (r1, r2) for g in U.generators())
    return {"stable": p1 == p2 and visible, "visible": visible, "low_degree_result": p1,
            "results": (r1, r2), "order": d}


def _order(X: FinModule, v) -> int:
    return int(min(X.weights[np.nonzero(np.asarray(v) % X.p)[0]]))
