"""Independent reference implementations used to cross-check the package.

Everything in this module is deliberately written from scratch with naive
algorithms (cofactor determinants, left-multiplication breadth-first search,
union-find, orbit enumeration).  Nothing here imports from ``kmgroups``, so a
bug in the package cannot silently agree with its own oracle.
"""

from __future__ import annotations

import itertools
import math


# ---------------------------------------------------------------------------
# Exact linear algebra, the slow way.


def mul(a, b):
    """Multiply two square integer matrices given as lists of lists."""
    n = len(a)
    out = [[0] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            acc = 0
            for k in range(n):
                acc += a[r][k] * b[k][c]
            out[r][c] = acc
    return out


def eye(n):
    return [[1 if r == c else 0 for c in range(n)] for r in range(n)]


def to_key(mat):
    return tuple(tuple(row) for row in mat)


def det_cofactor(mat):
    """Determinant by first-row cofactor expansion.

    >>> det_cofactor([])
    1
    >>> det_cofactor([[2, -1], [-1, 2]])
    3
    >>> det_cofactor([[2, -2], [-2, 2]])
    0
    >>> det_cofactor([[2, -1, 0], [-1, 2, -1], [0, -1, 2]])
    4
    """
    n = len(mat)
    if n == 0:
        return 1
    if n == 1:
        return mat[0][0]
    total = 0
    for c in range(n):
        if mat[0][c] == 0:
            continue
        minor = [[mat[r][cc] for cc in range(n) if cc != c] for r in range(1, n)]
        total += (-1) ** c * mat[0][c] * det_cofactor(minor)
    return total


def principal_minor(mat, subset):
    subset = sorted(subset)
    return det_cofactor([[mat[r][c] for c in subset] for r in subset])


def all_principal_minor_signs(mat):
    """Yield (subset, determinant) over every nonempty index subset."""
    n = len(mat)
    for size in range(1, n + 1):
        for subset in itertools.combinations(range(n), size):
            yield subset, principal_minor(mat, subset)


def trichotomy(mat):
    """Finite / affine / indefinite for an indecomposable integer matrix."""
    n = len(mat)
    full = det_cofactor(mat)
    proper_positive = all(
        principal_minor(mat, s) > 0
        for size in range(1, n)
        for s in itertools.combinations(range(n), size)
    )
    if full > 0 and proper_positive:
        return "finite"
    if full == 0 and proper_positive:
        return "affine"
    return "indefinite"


# ---------------------------------------------------------------------------
# Bond orders, re-derived rather than shared with the package.


def bond_order(aij, aji):
    """Order of s_i s_j from the off-diagonal product.

    >>> [bond_order(0, 0), bond_order(-1, -1), bond_order(-1, -2)]
    [2, 3, 4]
    >>> bond_order(-1, -3)
    6
    >>> bond_order(-2, -2)
    inf
    """
    p = aij * aji
    if p == 0:
        return 2
    if p == 1:
        return 3
    if p == 2:
        return 4
    if p == 3:
        return 6
    return math.inf


# ---------------------------------------------------------------------------
# Group enumeration by plain breadth-first search over matrices.


def generator_matrix(gcm, i):
    """Matrix of the i-th simple reflection, columns carrying root coords."""
    n = len(gcm)
    s = eye(n)
    for c in range(n):
        s[i][c] = (1 if c == i else 0) - gcm[i][c]
    return s


def enumerate_group(gcm, cap):
    """BFS the whole group; return (halted, count).

    Multiplies new generators on the left, so the search order differs from
    any right-multiplication scheme.  ``halted`` is False when the visited
    set exceeds ``cap`` before closing.
    """
    n = len(gcm)
    gens = [generator_matrix(gcm, i) for i in range(n)]
    start = eye(n)
    seen = {to_key(start)}
    frontier = [start]
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                cand = mul(g, w)
                key = to_key(cand)
                if key not in seen:
                    seen.add(key)
                    if len(seen) > cap:
                        return False, None
                    nxt.append(cand)
        frontier = nxt
    return True, len(seen)


def ball_matrices(gcm, radius):
    """All group elements of word length <= radius, as matrix key tuples."""
    n = len(gcm)
    gens = [generator_matrix(gcm, i) for i in range(n)]
    start = eye(n)
    seen = {to_key(start)}
    frontier = [start]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            for g in gens:
                cand = mul(g, w)
                key = to_key(cand)
                if key not in seen:
                    seen.add(key)
                    nxt.append(cand)
        frontier = nxt
    return seen


def matrix_order(mat, cap):
    """Multiplicative order of a matrix, or None past the cap."""
    n = len(mat)
    ident = eye(n)
    power = [row[:] for row in mat]
    k = 1
    while power != ident:
        power = mul(power, mat)
        k += 1
        if k > cap:
            return None
    return k


def orbit_positive_roots(gcm, radius, max_height):
    """Positive real roots of height <= max_height, by orbit of the basis.

    Applies every element of the radius-``radius`` ball to every simple
    root and keeps the nonnegative images.  The radius must be generous
    enough to reach every root of the requested height.
    """
    n = len(gcm)
    roots = set()
    for key in ball_matrices(gcm, radius):
        for j in range(n):
            col = tuple(key[r][j] for r in range(n))
            if all(x >= 0 for x in col) and sum(col) <= max_height:
                roots.add(col)
    return roots


# ---------------------------------------------------------------------------
# Graphs.


def uf_components(n, edges):
    """Connected components of an undirected graph via union-find."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups = {}
    for v in range(n):
        groups.setdefault(find(v), []).append(v)
    return sorted(sorted(g) for g in groups.values())


def is_connected(vertices, edges):
    vertices = list(vertices)
    if len(vertices) <= 1:
        return True
    index = {v: i for i, v in enumerate(vertices)}
    comps = uf_components(
        len(vertices),
        [(index[a], index[b]) for a, b in edges if a in index and b in index],
    )
    return len(comps) == 1


# ---------------------------------------------------------------------------
# Canonical keys for memoising finiteness checks across isomorphic diagrams.


def coxeter_key(gcm):
    """Permutation-canonical form of the bond-order matrix (inf -> -1)."""
    n = len(gcm)
    orders = [
        [
            -1
            if i != j and bond_order(gcm[i][j], gcm[j][i]) == math.inf
            else (1 if i == j else int(bond_order(gcm[i][j], gcm[j][i])))
            for j in range(n)
        ]
        for i in range(n)
    ]
    best = None
    for perm in itertools.permutations(range(n)):
        flat = tuple(orders[perm[r]][perm[c]] for r in range(n) for c in range(n))
        if best is None or flat < best:
            best = flat
    return (n, best)


if __name__ == "__main__":
    import doctest

    doctest.testmod(verbose=False)
    print("oracles self-check OK")
