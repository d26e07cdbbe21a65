"""Pure-Python double description kernel.

Computes the extreme rays of a pointed cone ``{x : A x >= 0}`` given by
integer rows.  Zero sets are Python ints used as bitsets over the rows of A.
This is the reference implementation; ``_ddcore`` mirrors it in Cython.
"""

from __future__ import annotations

from math import gcd


def _prim(v: list[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
        if g == 1:
            return tuple(v)
    return tuple(x // g for x in v) if g > 1 else tuple(v)


def _initial_basis(rows: list[tuple[int, ...]], d: int) -> list[int]:
    """Greedy choice of d linearly independent rows (fraction-free)."""
    chosen: list[int] = []
    echelon: list[tuple[int, list[int]]] = []  # (pivot col, reduced row)
    for idx, r in enumerate(rows):
        v = list(r)
        for c, e in echelon:
            if v[c]:
                f, p = v[c], e[c]
                v = [x * p - f * y for x, y in zip(v, e)]
        nz = next((c for c, x in enumerate(v) if x), None)
        if nz is None:
            continue
        echelon.append((nz, v))
        chosen.append(idx)
        if len(chosen) == d:
            break
    return chosen


def _solve_unit_columns(basis_rows: list[tuple[int, ...]], d: int) -> list[tuple[int, ...]]:
    """Columns of the inverse of the basis matrix, scaled to primitive integers.

    Fraction-free Gauss-Jordan on [B | I]; row i ends as p_i e_i | q_i, so
    column k of the inverse is (q_ik / p_i)_i.
    """
    aug = [list(r) + [int(i == j) for j in range(d)] for i, r in enumerate(basis_rows)]
    for c in range(d):
        piv = next(i for i in range(c, d) if aug[i][c] != 0)
        aug[c], aug[piv] = aug[piv], aug[c]
        pc = aug[c]
        p = pc[c]
        for i in range(d):
            f = aug[i][c]
            if i != c and f != 0:
                aug[i] = _prim_row([x * p - f * y for x, y in zip(aug[i], pc)])
    cols = []
    for k in range(d):
        den = 1
        for i in range(d):
            den = den * abs(aug[i][i]) // gcd(den, aug[i][i])
        cols.append(_prim([aug[i][d + k] * (den // aug[i][i]) for i in range(d)]))
    return cols


def _prim_row(v: list[int]) -> list[int]:
    g = 0
    for x in v:
        g = gcd(g, x)
    return [x // g for x in v] if g > 1 else v


def extreme_rays(rows, d: int):
    """Extreme rays of ``{x in R^d : r . x >= 0 for r in rows}``.

    Returns ``(rays, zero_sets)`` where ``zero_sets[k]`` is a bitmask of the
    rows vanishing on ``rays[k]``.  Raises ValueError if the cone is not
    pointed (the rows do not have rank d).
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    m = len(rows)
    basis = _initial_basis(rows, d)
    if len(basis) < d:
        raise ValueError("cone is not pointed: constraint rank < dimension")
    cols = _solve_unit_columns([rows[i] for i in basis], d)
    all_basis = 0
    for i in basis:
        all_basis |= 1 << i
    rays: list[tuple[int, ...]] = []
    zs: list[int] = []
    for k, c in enumerate(cols):
        rays.append(c)
        zs.append(all_basis & ~(1 << basis[k]))

    in_basis = set(basis)
    for i in range(m):
        if i in in_basis:
            continue
        a = rows[i]
        bit = 1 << i
        vals = [sum(x * y for x, y in zip(a, r)) for r in rays]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        if not neg:
            for k, v in enumerate(vals):
                if v == 0:
                    zs[k] |= bit
            continue
        new_rays: list[tuple[int, ...]] = []
        new_zs: list[int] = []
        nray = len(rays)
        for p in pos:
            zp = zs[p]
            vp = vals[p]
            rp = rays[p]
            for n in neg:
                common = zp & zs[n]
                if common.bit_count() < d - 2:
                    continue
                adjacent = True
                for k in range(nray):
                    if k != p and k != n and (zs[k] & common) == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vn = vals[n]
                rn = rays[n]
                new_rays.append(_prim([vp * y - vn * x for x, y in zip(rp, rn)]))
                new_zs.append(common | bit)
        keep_r: list[tuple[int, ...]] = []
        keep_z: list[int] = []
        for k, v in enumerate(vals):
            if v > 0:
                keep_r.append(rays[k])
                keep_z.append(zs[k])
            elif v == 0:
                keep_r.append(rays[k])
                keep_z.append(zs[k] | bit)
        rays = keep_r + new_rays
        zs = keep_z + new_zs
    return rays, zs
