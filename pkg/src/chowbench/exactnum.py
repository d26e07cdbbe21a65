"""Exact integer/rational linear algebra.

Everything here works on plain Python ``int`` and :class:`fractions.Fraction`
values, so results are exact regardless of size.  Matrices are sequences of
rows; functions return tuples of tuples so results are hashable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


class ZeroVector(ValueError):
    """Raised when a nonzero vector is required."""


def as_rational(x) -> Fraction:
    """Parse ints, Fractions and strings like ``"3/4"`` exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or strings")
    return Fraction(x)


def rational_str(x: Fraction) -> str:
    x = as_rational(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive_vector(v: Sequence[int]) -> IntVector:
    """Divide an integer vector by the gcd of its entries."""
    g = vector_gcd(v)
    if g == 0:
        raise ZeroVector("ZeroVector: primitive_vector needs a nonzero vector")
    return tuple(int(x) // g for x in v)


def clear_denominators(v: Sequence) -> tuple[IntVector, int]:
    """Return ``(w, d)`` with ``w = d * v`` integral and ``d > 0`` minimal."""
    fr = [as_rational(x) for x in v]
    d = reduce(lcm, (x.denominator for x in fr), 1)
    return tuple(int(x * d) for x in fr), d


def primitive_direction(v: Sequence) -> IntVector:
    """Primitive integer vector on the ray spanned by a rational vector."""
    w, _ = clear_denominators(v)
    return primitive_vector(w)


def rational_content(values: Iterable) -> Fraction:
    """Positive generator of the additive group spanned by ``values``.

    Zero if every value is zero.
    """
    fr = [as_rational(x) for x in values]
    d = reduce(lcm, (x.denominator for x in fr), 1)
    g = reduce(gcd, (abs(int(x * d)) for x in fr), 0)
    return Fraction(g, d)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> tuple:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, c) for c in cols) for row in a)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence]) -> tuple:
    return tuple(zip(*a))


class RationalMatrix:
    """Immutable dense matrix of Fractions, row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, data: Sequence[Sequence], cols: int | None = None):
        rows = [tuple(as_rational(x) for x in r) for r in data]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged matrix")
        self.rows = len(rows)
        self.cols = cols
        self.entries = tuple(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(rational_str(x) for x in r) for r in self.entries)
        return f"RationalMatrix([{body}])"

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RationalMatrix(mat_mul(self.entries, other.entries), other.cols)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(transpose(self.entries), self.rows)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.entries for x in r)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix has non-integral entries")
        return tuple(tuple(int(x) for x in r) for r in self.entries)

    def rank(self) -> int:
        return rank(self.entries)

    def det(self) -> Fraction:
        return determinant(self.entries)


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    m = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = m[k][k]
        rk = m[k]
        for i in range(k + 1, n):
            ri = m[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - a * rk[j]) // prev
        prev = pk
    return sign * m[n - 1][n - 1]


def determinant(a: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant needs a square matrix")
    scale = 1
    rows = []
    for r in a:
        w, d = clear_denominators(r)
        rows.append(list(w))
        scale *= d
    return Fraction(_bareiss_det(rows), scale)


def int_determinant(a: Sequence[Sequence[int]]) -> int:
    if any(len(r) != len(a) for r in a):
        raise ValueError("determinant needs a square matrix")
    return _bareiss_det([list(map(int, r)) for r in a])


def rank(a: Sequence[Sequence]) -> int:
    """Rank over Q via fraction-free elimination."""
    rows = [list(clear_denominators(r)[0]) for r in a if len(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [x * p[c] - f * y for x, y in zip(rows[i], p)]
                g = vector_gcd(rows[i])
                if g > 1:
                    rows[i] = [x // g for x in rows[i]]
        r += 1
        if r == len(rows):
            break
    return r


def rref(a: Sequence[Sequence]) -> tuple[tuple[tuple[Fraction, ...], ...], tuple[int, ...]]:
    """Reduced row echelon form over Q; returns (nonzero rows, pivot columns)."""
    m = [[as_rational(x) for x in r] for r in a]
    if not m:
        return (), ()
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), tuple(pivots)


def solve(a: Sequence[Sequence], b: Sequence) -> tuple[Fraction, ...] | None:
    """Solve ``a x = b`` exactly; None if inconsistent.  Free variables are 0."""
    aug = [list(r) + [bi] for r, bi in zip(a, b)]
    ncols = len(a[0]) if a else 0
    red, piv = rref(aug)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[-1]
    return tuple(x)


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hermite_normal_form(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``H = U @ A``, ``U`` unimodular, ``H`` in upper
    echelon form with positive pivots and entries above each pivot reduced
    into ``[0, pivot)``.
    """
    h = [list(map(int, r)) for r in a]
    if not h or not h[0]:
        raise ValueError("hermite_normal_form needs a nonempty matrix")
    m, n = len(h), len(h[0])
    u = [list(r) for r in identity(m)]
    row = 0
    for col in range(n):
        if row == m:
            break
        # gcd-combine everything at or below `row` into the pivot position
        for i in range(row + 1, m):
            if h[i][col] == 0:
                continue
            p, q = h[row][col], h[i][col]
            g, x, y = _xgcd(p, q)
            pg, qg = p // g, q // g
            hr, hi = h[row], h[i]
            ur, ui = u[row], u[i]
            h[row] = [x * s + y * t for s, t in zip(hr, hi)]
            h[i] = [-qg * s + pg * t for s, t in zip(hr, hi)]
            u[row] = [x * s + y * t for s, t in zip(ur, ui)]
            u[i] = [-qg * s + pg * t for s, t in zip(ur, ui)]
        if h[row][col] == 0:
            continue
        if h[row][col] < 0:
            h[row] = [-x for x in h[row]]
            u[row] = [-x for x in u[row]]
        piv = h[row][col]
        for i in range(row):
            f = h[i][col] // piv
            if f:
                h[i] = [s - f * t for s, t in zip(h[i], h[row])]
                u[i] = [s - f * t for s, t in zip(u[i], u[row])]
        row += 1
    return tuple(map(tuple, h)), tuple(map(tuple, u))


def lattice_kernel_basis(f: Sequence[int]) -> tuple[IntVector, ...]:
    """Saturated lattice basis of ``{m in Z^n : f . m = 0}``.

    The basis is returned in Hermite normal form, so it is canonical.
    """
    f = tuple(map(int, f))
    if vector_gcd(f) == 0:
        raise ZeroVector("ZeroVector: kernel of the zero functional is not a hyperplane")
    n = len(f)
    if n == 1:
        return ()
    _, u = hermite_normal_form(tuple((x,) for x in f))
    kernel = u[1:]
    h, _ = hermite_normal_form(kernel)
    return tuple(r for r in h if any(r))


def unimodular_completion(f: Sequence[int]) -> tuple[IntVector, tuple[IntVector, ...]]:
    """For primitive ``f`` return ``(p, K)`` with ``f.p = 1`` and K a kernel basis.

    The columns ``K + [p]`` form a unimodular matrix.
    """
    f = tuple(map(int, f))
    if vector_gcd(f) != 1:
        raise ValueError("unimodular_completion needs a primitive functional")
    kernel = lattice_kernel_basis(f)
    _, u = hermite_normal_form(tuple((x,) for x in f))
    p = u[0]
    if dot(f, p) != 1:
        p = tuple(-x for x in p)
    return p, kernel


def is_lattice_basis(vs: Sequence[Sequence[int]]) -> bool:
    """True iff ``vs`` is square with determinant ±1."""
    vs = [tuple(v) for v in vs]
    if not vs:
        return False
    n = len(vs[0])
    if len(vs) != n or any(len(v) != n for v in vs):
        return False
    return abs(int_determinant(vs)) == 1


def is_saturated_set(vs: Sequence[Sequence[int]]) -> bool:
    """True iff ``vs`` is linearly independent and extends to a lattice basis."""
    vs = [tuple(map(int, v)) for v in vs]
    if not vs:
        return True
    if rank(vs) != len(vs):
        return False
    # saturated iff the gcd of the maximal minors is 1
    k = len(vs)
    g = 0
    for rows in combinations(range(len(vs[0])), k):
        g = gcd(g, int_determinant([[v[r] for v in vs] for r in rows]))
        if g == 1:
            return True
    return g == 1


def integer_inverse(a: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular integer matrix."""
    n = len(a)
    aug = [list(map(int, r)) + list(e) for r, e in zip(a, identity(n))]
    red, piv = rref(aug)
    if tuple(piv[:n]) != tuple(range(n)):
        raise ValueError("matrix is singular")
    inv = [row[n:] for row in red]
    if any(x.denominator != 1 for r in inv for x in r):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in r) for r in inv)
