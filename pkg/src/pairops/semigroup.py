"""Numerical semigroups and monomial (value-set) ideals of k[[t^S]]."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property, reduce
from math import gcd


class NumericalSemigroup:
    def __init__(self, gens):
        gens = sorted({int(g) for g in gens})
        if not gens or gens[0] < 1:
            raise ValueError("semigroup generators must be positive")
        if reduce(gcd, gens) != 1:
            raise ValueError(f"generators {gens} are not coprime")
        self.given = tuple(gens)
        e = gens[0]
        # Apery set by shortest paths on residues mod e
        ap = [None] * e
        ap[0] = 0
        changed = True
        while changed:
            changed = False
            for r in range(e):
                if ap[r] is None:
                    continue
                for g in gens:
                    v = ap[r] + g
                    s = v % e
                    if ap[s] is None or v < ap[s]:
                        ap[s] = v
                        changed = True
        self.apery = tuple(ap)
        self.e = e
        self.frobenius = max(ap) - e
        self.conductor = self.frobenius + 1
        self.gaps = tuple(v for v in range(max(self.conductor, 0)) if not self.contains(v))
        self.gens = tuple(g for g in gens if not self._decomposable(g, gens))

    def _decomposable(self, g, gens) -> bool:
        return any(self.contains(g - h) and g - h > 0 for h in gens if h < g)

    @property
    def multiplicity(self) -> int:
        return self.e

    def contains(self, v: int) -> bool:
        return v >= 0 and v >= self.apery[v % self.e]

    def elements_below(self, bound: int) -> list[int]:
        return [v for v in range(max(bound, 0)) if self.contains(v)]

    def __repr__(self):
        return f"<{','.join(map(str, self.gens))}>"

    def __eq__(self, other):
        return isinstance(other, NumericalSemigroup) and self.gens == other.gens

    def __hash__(self):
        return hash(self.gens)


def semigroup_invariants(gens) -> NumericalSemigroup:
    return NumericalSemigroup(gens)


class ValueIdeal:
    """A set of values finite_part | {admissible v >= tail}; admissible means in S unless fractional."""

    def __init__(self, S: NumericalSemigroup, values, tail: int, fractional: bool = False):
        self.S = S
        self.fractional = fractional
        vals = {int(v) for v in values if v < tail}
        if not fractional and any(not S.contains(v) for v in vals):
            raise ValueError("non-fractional value ideal with values outside S")
        # lower the tail while the value set is unchanged
        while True:
            t = tail - 1
            if fractional or S.contains(t):
                if t not in vals:
                    break
                vals.discard(t)
            elif t < 0:
                break
            tail = t
        self.finite_part = tuple(sorted(vals))
        self.tail = tail

    # construction
    @classmethod
    def generated(cls, S: NumericalSemigroup, gens, fractional: bool = False) -> "ValueIdeal":
        gens = sorted({int(g) for g in gens})
        if not gens:
            raise ValueError("the zero ideal has no value set")
        if not fractional and any(not S.contains(g) for g in gens):
            raise ValueError(f"generators {gens} not all in {S}")
        top = gens[0] + max(S.conductor, 0)
        vals = {g + s for g in gens for s in S.elements_below(top - g + 1) if g + s < top}
        return cls(S, vals, top, fractional)

    @classmethod
    def maximal(cls, S: NumericalSemigroup) -> "ValueIdeal":
        return cls.generated(S, S.gens)

    @classmethod
    def unit(cls, S: NumericalSemigroup) -> "ValueIdeal":
        return cls.generated(S, [0])

    @classmethod
    def parse(cls, S: NumericalSemigroup, text: str) -> "ValueIdeal":
        text = text.strip().strip("()")
        if text in ("m", "max"):
            return cls.maximal(S)
        if text in ("1", "R", "unit"):
            return cls.unit(S)
        vals = []
        for tok in text.split(","):
            tok = tok.strip()
            m = re.fullmatch(r"t\^?(-?\d+)|(-?\d+)", tok)
            if not m:
                raise ValueError(f"cannot parse value ideal generator {tok!r}")
            vals.append(int(m.group(1) or m.group(2)))
        return cls.generated(S, vals, fractional=any(not S.contains(v) for v in vals))

    # membership and comparison
    def full_threshold(self) -> int:
        return self.tail if self.fractional else max(self.tail, self.S.conductor)

    def __contains__(self, v: int) -> bool:
        if v >= self.tail:
            return self.fractional or self.S.contains(v)
        return v in self.finite_part

    @property
    def min_value(self) -> int:
        return self.finite_part[0] if self.finite_part else self._first_tail_value()

    def _first_tail_value(self) -> int:
        v = self.tail
        while v not in self:
            v += 1
        return v

    def values_below(self, bound: int) -> list[int]:
        return [v for v in range(self.min_value, bound) if v in self]

    def __eq__(self, other):
        if not isinstance(other, ValueIdeal):
            return NotImplemented
        K = max(self.full_threshold(), other.full_threshold())
        lo = min(self.min_value, other.min_value)
        return all((v in self) == (v in other) for v in range(lo, K))

    def __hash__(self):
        K = self.full_threshold()
        return hash(tuple(self.values_below(K)) + (K,))

    def __le__(self, other: "ValueIdeal") -> bool:
        K = max(self.full_threshold(), other.full_threshold())
        return all(v in other for v in self.values_below(K))

    def generators(self) -> list[int]:
        top = self.full_threshold() + self.S.e
        vals = self.values_below(top)
        gens = []
        for v in vals:
            if not any(v - g > 0 and self.S.contains(v - g) for g in gens):
                gens.append(v)
        return gens

    def __str__(self):
        names = {0: "1", 1: "t"}
        return "(" + ", ".join(names.get(v, f"t^{v}") for v in self.generators()) + ")"

    __repr__ = __str__

    def intersect_S(self) -> "ValueIdeal":
        K = self.full_threshold()
        vals = [v for v in self.values_below(K) if self.S.contains(v)]
        return ValueIdeal(self.S, vals, max(K, 0), False)


def value_combine(kind: str, I: ValueIdeal, J: ValueIdeal | int) -> ValueIdeal:
    S = I.S
    if kind == "shift":
        d = int(J)
        return ValueIdeal.generated(S, [g + d for g in I.generators()], fractional=True if d else I.fractional)
    if J.S != S:
        raise ValueError("value ideals over different semigroups")
    frac = I.fractional or J.fractional
    if kind == "sum":
        return ValueIdeal.generated(S, I.generators() + J.generators(), frac)
    if kind == "product":
        return ValueIdeal.generated(S, [a + b for a in I.generators() for b in J.generators()], frac)
    if kind == "intersect":
        K = max(I.full_threshold(), J.full_threshold())
        lo = min(I.min_value, J.min_value)
        vals = [v for v in range(lo, K) if v in I and v in J]
        return ValueIdeal(S, vals, K, frac)
    raise ValueError(f"unknown combine kind {kind!r}")


def value_colon(mode: str, I: ValueIdeal, J: ValueIdeal) -> ValueIdeal:
    """(I :_R J) or (I :_Q J) of value ideals."""
    if mode not in ("in_R", "in_Q", "R", "Q"):
        raise ValueError(f"unknown colon mode {mode!r}")
    in_Q = mode in ("in_Q", "Q")
    S = I.S
    tI = I.full_threshold()
    wmin = J.min_value
    hi = tI - wmin
    lo = I.min_value - wmin
    jvals = J.values_below(max(tI - lo, wmin + 1))
    vals = []
    for v in range(lo, hi):
        if not in_Q and not S.contains(v):
            continue
        if all((v + w) in I for w in jvals if v + w < tI):
            vals.append(v)
    if in_Q:
        return ValueIdeal(S, vals, hi, True)
    hi = max(hi, 0)
    return ValueIdeal(S, [v for v in vals if v >= 0], hi, False)


def interior_pair(mode: str, J: ValueIdeal, I: ValueIdeal) -> ValueIdeal:
    if mode == "relative":
        return value_combine("product", J, value_colon("in_R", I, J))
    if mode == "absolute":
        return value_combine("product", J, value_colon("in_Q", I, J)).intersect_S()
    raise ValueError(f"unknown interior mode {mode!r}")


@dataclass
class InteriorCheck:
    condition_met: bool
    equal: bool
    relative: ValueIdeal
    absolute: ValueIdeal


def interior_equality_check(S: NumericalSemigroup, I: ValueIdeal) -> InteriorCheck:
    m = ValueIdeal.maximal(S)
    rel = interior_pair("relative", m, I)
    ab = interior_pair("absolute", m, I)
    met = I.min_value >= S.e + S.conductor
    if met and rel != ab:
        raise AssertionError(f"interiors differ above the threshold for {I} in {S}")
    return InteriorCheck(met, rel == ab, rel, ab)


def random_semigroup(rng: random.Random, max_gen: int = 9) -> NumericalSemigroup:
    while True:
        k = rng.randint(2, 3)
        gens = rng.sample(range(2, max_gen + 1), k)
        if reduce(gcd, gens) == 1:
            return NumericalSemigroup(gens)


def random_value_ideal(rng: random.Random, S: NumericalSemigroup, min_value: int, spread: int = 10,
                       max_gens: int = 3) -> ValueIdeal:
    pool = [v for v in range(min_value, min_value + spread) if S.contains(v)]
    first = pool[0]
    rest = rng.sample(pool[1:], min(len(pool) - 1, rng.randint(0, max_gens - 1)))
    return ValueIdeal.generated(S, [first] + rest)


def strict_interior_search(semigroups, spread: int = 8):
    """Ideals below the threshold whose relative and absolute interiors differ."""
    hits = []
    for S in semigroups:
        bound = S.e + S.conductor
        for a in range(1, bound):
            if not S.contains(a):
                continue
            for b in range(a + 1, a + spread):
                if not S.contains(b):
                    continue
                I = ValueIdeal.generated(S, [a, b])
                chk = interior_equality_check(S, I)
                if not chk.equal:
                    hits.append((S, I, chk))
    return hits
