"""Brute-force reference implementations used to freeze expected values.

Deliberately naive and independent of chowbench internals: plain Fraction
Gaussian elimination, exhaustive subset enumeration.
"""

from fractions import Fraction
from itertools import combinations, permutations

import numpy as np


def rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


def det(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    out = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return out


def _hyperplane(points):
    """Normal h and offset b with h.p = b through k affinely independent points in Q^k."""
    k = len(points[0])
    diffs = [[a - b for a, b in zip(p, points[0])] for p in points[1:]]
    # normal = generalized cross product by cofactors
    h = []
    for c in range(k):
        minor = [[row[j] for j in range(k) if j != c] for row in diffs]
        h.append((-1) ** c * det(minor) if minor else Fraction(1))
    b = sum(x * y for x, y in zip(h, points[0]))
    return tuple(h), b


def _normalize(h, b):
    den = 1
    for x in list(h) + [b]:
        den = den * Fraction(x).denominator
    ints = [int(Fraction(x) * den) for x in list(h) + [b]]
    from math import gcd
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints[:-1]), Fraction(ints[-1], g)


def facets(points):
    """All facets of a full-dimensional point set in Q^k as (h, b), h.x >= b."""
    pts = [tuple(Fraction(x) for x in p) for p in points]
    k = len(pts[0])
    found = set()
    for sub in combinations(pts, k):
        if rank([[a - b for a, b in zip(p, sub[0])] for p in sub[1:]]) < k - 1:
            continue
        h, b = _hyperplane(sub)
        vals = [sum(x * y for x, y in zip(h, p)) - b for p in pts]
        if all(v >= 0 for v in vals):
            found.add(_normalize(h, b))
        elif all(v <= 0 for v in vals):
            found.add(_normalize(tuple(-x for x in h), -b))
    return found


def vertices(points):
    """Points whose tight facets have full rank."""
    pts = sorted({tuple(Fraction(x) for x in p) for p in points})
    k = len(pts[0])
    fs = facets(pts)
    out = []
    for p in pts:
        tight = [h for h, b in fs if sum(x * y for x, y in zip(h, p)) == b]
        if tight and rank(tight) == k:
            out.append(p)
    return out


def permutahedron(n):
    """Vertices sum_i i * e_{sigma(i)}, i = 1..n."""
    return sorted(tuple(Fraction(x) for x in p) for p in permutations(range(1, n + 1)))


def is_hnf(H):
    """Row-style Hermite normal form conditions."""
    last = -1
    for i, row in enumerate(H):
        nz = [c for c, x in enumerate(row) if x]
        if not nz:
            if any(any(r) for r in H[i:]):
                return False
            break
        p = nz[0]
        if p <= last or row[p] <= 0:
            return False
        if any(not 0 <= H[u][p] < row[p] for u in range(i)):
            return False
        last = p
    return True


def lattice_points_in_box(basis, box):
    """Integer combinations of ``basis`` with coefficients in [-box, box]."""
    from itertools import product
    out = set()
    for coeffs in product(range(-box, box + 1), repeat=len(basis)):
        out.add(tuple(sum(c * v[i] for c, v in zip(coeffs, basis)) for i in range(len(basis[0]))))
    return out


_OFF, _BASE = 1 << 14, 1 << 15


def _pack(H):
    key = np.zeros(len(H), dtype=np.int64)
    for c in range(H.shape[1]):
        key = key * _BASE + (H[:, c] + _OFF)
    return key


def _unpack(keys, k):
    cols = []
    for _ in range(k):
        cols.append(keys % _BASE - _OFF)
        keys = keys // _BASE
    return np.stack(cols[::-1], axis=1)


def _int_det(M):
    """Exact determinants of a stack of small integer matrices of size <= 3."""
    n = M.shape[1]
    if n == 0:
        return np.ones(len(M), dtype=np.int64)
    if n == 1:
        return M[:, 0, 0]
    if n == 2:
        return M[:, 0, 0] * M[:, 1, 1] - M[:, 0, 1] * M[:, 1, 0]
    return (M[:, 0, 0] * (M[:, 1, 1] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 1])
            - M[:, 0, 1] * (M[:, 1, 0] * M[:, 2, 2] - M[:, 1, 2] * M[:, 2, 0])
            + M[:, 0, 2] * (M[:, 1, 0] * M[:, 2, 1] - M[:, 1, 1] * M[:, 2, 0]))


def _combination_blocks(n, k, chunk):
    """All k-subsets of range(n) as int arrays, prefixes in Python, pair suffixes in numpy."""
    buf, size = [], 0
    for prefix in combinations(range(n), k - 2):
        lo = prefix[-1] + 1 if prefix else 0
        a, b = np.triu_indices(n - lo, 1)
        if not len(a):
            continue
        block = np.empty((len(a), k), dtype=np.int64)
        block[:, :k - 2] = prefix
        block[:, k - 2] = a + lo
        block[:, k - 1] = b + lo
        buf.append(block)
        size += len(block)
        if size >= chunk:
            yield np.concatenate(buf)
            buf, size = [], 0
    if buf:
        yield np.concatenate(buf)


def facets_vectorized(points, chunk=500_000):
    """Same output as ``facets`` for small integer points in Z^k, k <= 4, by
    exhaustive k-subset enumeration with numpy cofactors."""
    P = np.array([[int(x) for x in p] for p in points], dtype=np.int64)
    npts, k = P.shape
    assert np.abs(P).max() < 50 and 2 <= k <= 4
    found = []
    for block in _combination_blocks(npts, k, chunk):
        D = P[block[:, 1:]] - P[block[:, 0]][:, None, :]
        H = np.stack([(-1) ** c * _int_det(np.delete(D, c, axis=2)) for c in range(k)], axis=1)
        H = H[np.any(H != 0, axis=1)]
        H //= np.gcd.reduce(np.abs(H), axis=1)[:, None]
        # fix the sign: first nonzero entry positive
        lead = H[np.arange(len(H)), np.argmax(H != 0, axis=1)]
        H *= np.sign(lead)[:, None]
        found.append(np.unique(_pack(H)))
    H = _unpack(np.unique(np.concatenate(found)), k)
    V = P @ H.T
    out = set()
    for sign, ext in ((1, V.min(axis=0)), (-1, V.max(axis=0))):
        tight = V == ext[None, :]
        for col in np.nonzero(tight.sum(axis=0) >= k)[0]:
            pts = P[tight[:, col]]
            if rank([list(t - pts[0]) for t in pts]) == k - 1:
                out.add((tuple(int(sign * x) for x in H[col]), Fraction(int(sign * ext[col]))))
    return out
