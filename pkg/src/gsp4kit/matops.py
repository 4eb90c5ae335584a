"""Matrix helpers over table-backed finite fields.

Matrices are flat row-major tuples of element indices.  These are the slow
but always-available building blocks; the closure/scan hot loops live in
the kernel backends.
"""

from __future__ import annotations


def identity(n, tables):
    one = tables.one
    return tuple(one if i == j else 0 for i in range(n) for j in range(n))


def scalar(n, tables, a):
    return tuple(a if i == j else 0 for i in range(n) for j in range(n))


def mat_mul(a, b, n, tables):
    q, mul, add = tables.q, tables.mul, tables.add
    out = [0] * (n * n)
    for i in range(n):
        row = i * n
        for j in range(n):
            acc = 0
            for k in range(n):
                x = mul[a[row + k] * q + b[k * n + j]]
                acc = add[acc * q + x]
            out[row + j] = acc
    return tuple(out)


def mat_vec(a, v, n, tables):
    q, mul, add = tables.q, tables.mul, tables.add
    out = [0] * n
    for i in range(n):
        acc = 0
        row = i * n
        for k in range(n):
            acc = add[acc * q + mul[a[row + k] * q + v[k]]]
        out[i] = acc
    return tuple(out)


def transpose(a, n):
    return tuple(a[j * n + i] for i in range(n) for j in range(n))


def mat_neg(a, tables):
    neg = tables.neg
    return tuple(neg[x] for x in a)


def mat_scale(a, c, tables):
    q, mul = tables.q, tables.mul
    return tuple(mul[c * q + x] for x in a)


def mat_pow(a, e, n, tables):
    result = identity(n, tables)
    base = a
    while e:
        if e & 1:
            result = mat_mul(result, base, n, tables)
        base = mat_mul(base, base, n, tables)
        e >>= 1
    return result


def mat_inv(a, n, tables):
    """Gauss-Jordan inverse; returns None for singular input."""
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    aug = [list(a[i * n:(i + 1) * n]) + [tables.one if j == i else 0 for j in range(n)]
           for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pinv = inv[aug[col][col]]
        aug[col] = [mul[pinv * q + x] for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                c = neg[aug[r][col]]
                aug[r] = [add[x * q + mul[c * q + y]] for x, y in zip(aug[r], aug[col])]
    return tuple(aug[i][n + j] for i in range(n) for j in range(n))


def mat_order(a, n, tables, cap=10**6):
    """Multiplicative order by repeated multiplication."""
    ident = identity(n, tables)
    cur = a
    for k in range(1, cap + 1):
        if cur == ident:
            return k
        cur = mat_mul(cur, a, n, tables)
    raise ValueError("order exceeds cap; element may not be invertible")


def _det(rows, n, tables):
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    rows = [list(r) for r in rows]
    det = tables.one
    for col in range(n):
        pivot = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            rows[col], rows[pivot] = rows[pivot], rows[col]
            det = neg[det]
        det = mul[det * q + rows[col][col]]
        pinv = inv[rows[col][col]]
        for r in range(col + 1, n):
            if rows[r][col] != 0:
                c = neg[mul[rows[r][col] * q + pinv]]
                rows[r] = [add[x * q + mul[c * q + y]] for x, y in zip(rows[r], rows[col])]
    return det


def det(a, n, tables):
    return _det([a[i * n:(i + 1) * n] for i in range(n)], n, tables)


def charpoly(a, n, tables):
    """Coefficients [c0, ..., cn] of det(X*I - A), via principal minors.

    Valid in every characteristic (no division by integers).
    """
    from itertools import combinations

    add, neg = tables.add, tables.neg
    q = tables.q
    coeffs = [0] * (n + 1)
    coeffs[n] = tables.one
    for k in range(1, n + 1):
        acc = 0
        for rows in combinations(range(n), k):
            minor = [[a[i * n + j] for j in rows] for i in rows]
            acc = add[acc * q + _det(minor, k, tables)]
        # coefficient of X^{n-k} is (-1)^k * e_k(eigenvalues)
        coeffs[n - k] = acc if k % 2 == 0 else neg[acc]
    return coeffs


def rref(rows, ncols, tables):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    rows = [list(r) for r in rows]
    pivots = []
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pinv = inv[rows[rank][col]]
        rows[rank] = [mul[pinv * q + x] for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                c = neg[rows[r][col]]
                rows[r] = [add[x * q + mul[c * q + y]] for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return [tuple(r) for r in rows[:rank]], pivots


def nullspace(rows, ncols, tables):
    """Basis of the right nullspace of the given row list."""
    ech, pivots = rref(rows, ncols, tables)
    neg = tables.neg
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = tables.one
        for r, p in zip(ech, pivots):
            vec[p] = neg[r[f]]
        basis.append(tuple(vec))
    return basis


def reduce_against(vec, basis_rows, pivots, tables):
    """Reduce vec against echelonized basis rows; nonzero residue => outside span."""
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    vec = list(vec)
    for row, p in zip(basis_rows, pivots):
        c = vec[p]
        if c != 0:
            c = neg[c]
            vec = [add[x * q + mul[c * q + y]] for x, y in zip(vec, row)]
    return vec


def in_span(vec, basis_rows, pivots, tables):
    return not any(reduce_against(vec, basis_rows, pivots, tables))
