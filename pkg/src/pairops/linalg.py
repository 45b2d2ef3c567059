"""Exact linear algebra over prime fields.

Vectors are 1-d int64 arrays with entries in [0, p). Subspaces are stored in
canonical reduced row echelon form, so equality of subspaces is equality of
their basis arrays.
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 2**31
_FAST_PRIME = 2**24  # below this, int64 matrix products of moderate size cannot overflow


def mm(a, b, p: int) -> np.ndarray:
    """Matrix product mod p, falling back to Python integers for large p."""
    if p < _FAST_PRIME:
        return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p
    out = np.asarray(a, dtype=object) @ np.asarray(b, dtype=object)
    return (out % p).astype(np.int64)


class DimensionError(ValueError):
    pass


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int) -> int:
    p = int(p)
    if not is_prime(p) or p > MAX_PRIME:
        raise ValueError(f"modulus {p} is not a prime <= 2^31")
    return p


def as_matrix(rows, p: int, ncols: int | None = None) -> np.ndarray:
    if isinstance(rows, np.ndarray):
        M = rows.astype(np.int64, copy=True)
        if M.ndim == 1:
            M = M.reshape(1, -1)
    else:
        rows = [list(r) for r in rows]
        lengths = {len(r) for r in rows}
        if len(lengths) > 1:
            raise DimensionError(f"ragged rows with lengths {sorted(lengths)}")
        if not rows:
            if ncols is None:
                raise DimensionError("cannot infer width of an empty row list")
            return np.zeros((0, ncols), dtype=np.int64)
        M = np.array(rows, dtype=np.int64)
    if ncols is not None and M.shape[1] != ncols:
        raise DimensionError(f"expected width {ncols}, got {M.shape[1]}")
    return M % p


def rref(M: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p. Returns (nonzero rows, pivot columns)."""
    M = np.array(M, dtype=np.int64) % p
    nrows, ncols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        lead = int(M[r, c])
        if lead != 1:
            M[r] = (M[r] * pow(lead, -1, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r].copy(), pivots


def nullspace(M: np.ndarray, p: int) -> np.ndarray:
    """Basis (as rows) of the right kernel {v : M v = 0}."""
    M = np.asarray(M, dtype=np.int64)
    ncols = M.shape[1]
    R, piv = rref(M, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for k, f in enumerate(free):
        out[k, f] = 1
        for i, c in enumerate(piv):
            out[k, c] = (-R[i, f]) % p
    return out


class Subspace:
    """A subspace of F_p^n held in canonical RREF."""

    __slots__ = ("p", "n", "basis", "pivots", "_key")

    def __init__(self, p: int, n: int, basis: np.ndarray, pivots):
        self.p = p
        self.n = n
        self.basis = basis
        self.basis.setflags(write=False)
        self.pivots = tuple(pivots)
        self._key = None

    @classmethod
    def span(cls, rows, p: int, n: int | None = None) -> "Subspace":
        M = as_matrix(rows, p, n)
        if M.shape[1] == 0 and n is None:
            raise DimensionError("rows must have positive length")
        R, piv = rref(M, p)
        return cls(p, M.shape[1], R, piv)

    @classmethod
    def zero(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.zeros((0, n), dtype=np.int64), ())

    @classmethod
    def full(cls, p: int, n: int) -> "Subspace":
        return cls(p, n, np.eye(n, dtype=np.int64), range(n))

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def key(self) -> bytes:
        if self._key is None:
            self._key = self.basis.tobytes() + bytes(str((self.n, self.p)), "ascii")
        return self._key

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.n == other.n and self.p == other.p
                and self.pivots == other.pivots
                and np.array_equal(self.basis, other.basis))

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Subspace(dim={self.dim}, n={self.n}, p={self.p})"

    def _check(self, other: "Subspace"):
        if self.n != other.n or self.p != other.p:
            raise DimensionError(
                f"ambient mismatch: F_{self.p}^{self.n} vs F_{other.p}^{other.n}")

    def reduce(self, v) -> np.ndarray:
        """Remainder of v after eliminating the pivot coordinates."""
        v = np.asarray(v, dtype=np.int64) % self.p
        if v.shape[-1] != self.n:
            raise DimensionError(f"vector length {v.shape[-1]} != {self.n}")
        if self.dim == 0:
            return v.copy()
        coeffs = v[..., list(self.pivots)]
        return (v - mm(coeffs, self.basis, self.p)) % self.p

    def contains(self, v) -> bool:
        return not self.reduce(v).any()

    def coordinates(self, v) -> np.ndarray:
        """Coefficients of v (or rows of v) in the echelon basis; v must lie in the span."""
        v = np.asarray(v, dtype=np.int64) % self.p
        return v[..., list(self.pivots)].copy()

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        if self.dim > other.dim:
            return False
        return not other.reduce(self.basis).any()

    __le__ = issubset

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if other.dim == 0:
            return self
        if self.dim == 0:
            return other
        return Subspace.span(np.vstack([self.basis, other.basis]), self.p, self.n)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.p, self.n)
        # kernel of the stacked matrix [V^T | -W^T]
        stacked = np.hstack([self.basis.T, (-other.basis.T) % self.p])
        ker = nullspace(stacked, self.p)
        if ker.shape[0] == 0:
            return Subspace.zero(self.p, self.n)
        a = ker[:, : self.dim]
        return Subspace.span(mm(a, self.basis, self.p), self.p, self.n)

    def annihilator(self) -> "Subspace":
        """{f : f . v = 0 for all v in self}, inside the dual space (same coordinates)."""
        if self.dim == 0:
            return Subspace.full(self.p, self.n)
        return Subspace.span(nullspace(self.basis, self.p), self.p, self.n)

    def complement_pivots(self) -> list[int]:
        piv = set(self.pivots)
        return [c for c in range(self.n) if c not in piv]

    def image(self, f: np.ndarray) -> "Subspace":
        """Image under the linear map with matrix f (columns = images of unit vectors)."""
        f = np.asarray(f, dtype=np.int64)
        if f.shape[1] != self.n:
            raise DimensionError(f"map expects dimension {f.shape[1]}, subspace has {self.n}")
        if self.dim == 0:
            return Subspace.zero(self.p, f.shape[0])
        return Subspace.span(mm(self.basis, f.T, self.p), self.p, f.shape[0])

    def preimage(self, f: np.ndarray) -> "Subspace":
        """{v : f v in self}."""
        f = np.asarray(f, dtype=np.int64)
        if f.shape[0] != self.n:
            raise DimensionError(f"map lands in dimension {f.shape[0]}, subspace has {self.n}")
        ann = self.annihilator()
        if ann.dim == 0:
            return Subspace.full(self.p, f.shape[1])
        cond = mm(ann.basis, f, self.p)
        return Subspace.span(nullspace(cond, self.p), self.p, f.shape[1])


def echelonize(rows, p: int, n: int | None = None) -> Subspace:
    return Subspace.span(rows, p, n)


def subspace_combine(kind: str, V: Subspace, W: Subspace):
    if kind == "sum":
        return V + W
    if kind == "intersect":
        return V & W
    if kind == "equals":
        V._check(W)
        return V == W
    if kind == "contains":
        return W.issubset(V)
    raise ValueError(f"unknown combine kind {kind!r}")


def membership_solve(v, V: Subspace) -> bool:
    return V.contains(v)


def kernel_of_stack(mats, p: int) -> Subspace:
    """Common kernel of several matrices with the same number of columns."""
    mats = [np.asarray(m, dtype=np.int64) for m in mats]
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].shape[1]
    if all(m.shape[0] == 0 for m in mats):
        return Subspace.full(p, n)
    return Subspace.span(nullspace(np.vstack(mats) % p, p), p, n)


def rank(M, p: int) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(M, p)[1])


def solve(M: np.ndarray, b: np.ndarray, p: int):
    """One solution x of M x = b, or None."""
    M = np.asarray(M, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1) % p
    aug = np.hstack([M, b])
    R, piv = rref(aug, p)
    ncols = M.shape[1]
    if piv and piv[-1] == ncols:
        return None
    x = np.zeros(ncols, dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = R[i, ncols]
    return x
