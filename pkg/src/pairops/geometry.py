"""Integer geometry helpers: exact determinants and normals with Python ints."""

from __future__ import annotations

from math import gcd
from itertools import combinations


def det(rows) -> int:
    """Determinant of a square integer matrix by fraction-free Bareiss elimination."""
    M = [list(map(int, r)) for r in rows]
    n = len(M)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def normal_vector(vectors):
    """Integer vector orthogonal to n-1 vectors in Z^n (generalized cross product).

    Returns the primitive normal, or None when the vectors are dependent.
    """
    vectors = [tuple(map(int, v)) for v in vectors]
    n = len(vectors[0]) if vectors else 0
    if len(vectors) != n - 1:
        raise ValueError("need exactly n-1 vectors in dimension n")
    if n == 3:
        w = cross(vectors[0], vectors[1])
    else:
        w = []
        for i in range(n):
            minor = [[v[j] for j in range(n) if j != i] for v in vectors]
            w.append((-1) ** i * det(minor))
    g = 0
    for c in w:
        g = gcd(g, c)
    if g == 0:
        return None
    return tuple(c // g for c in w)


def dot(u, v) -> int:
    return sum(a * b for a, b in zip(u, v))


def candidate_normals(points, n: int, limit: int | None = None):
    """Nonnegative primitive normals of hyperplanes spanned by point differences
    and coordinate directions.

    Every facet of conv(points) + R_{>=0}^n has its normal among these, so the
    valid inequalities a.v >= min_g a.g over this set cut out the polyhedron.
    """
    points = sorted(set(tuple(pt) for pt in points))
    if n == 1:
        return {(1,)}, True
    units = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    normals = set(units)
    pool = sorted({tuple(x - y for x, y in zip(b, a)) for a, b in combinations(points, 2)})
    pool += units
    count = 0
    for combo in combinations(pool, n - 1):
        w = normal_vector(combo)
        count += 1
        if limit is not None and count > limit:
            return normals, False
        if w is None:
            continue
        if all(c <= 0 for c in w):
            w = tuple(-c for c in w)
        if all(c >= 0 for c in w):
            normals.add(w)
    return normals, True
