"""Pure-Python kernels: subgroup closure and exhaustive subspace scans.

These are the hot loops of the toolkit.  A Cython twin (_kernels) with the
same signatures is preferred at import time when available; this module is
the always-available fallback and the reference implementation.
"""

from __future__ import annotations

from itertools import combinations, product

BACKEND = "python"


def close_group(gens, n, tables, cap):
    """Breadth-first closure of gens under multiplication.

    Returns (elements, truncated) with elements in deterministic BFS order
    starting at the identity.  In a finite matrix group, closure under
    products alone already yields the generated subgroup.
    """
    q, mul, add = tables.q, tables.mul, tables.add
    ident = tuple(tables.one if i == j else 0 for i in range(n) for j in range(n))
    elements = [ident]
    seen = {ident}
    frontier = [ident]
    truncated = False
    while frontier:
        next_frontier = []
        for m in frontier:
            for g in gens:
                out = [0] * (n * n)
                for i in range(n):
                    row = i * n
                    for j in range(n):
                        acc = 0
                        for k in range(n):
                            acc = add[acc * q + mul[m[row + k] * q + g[k * n + j]]]
                        out[row + j] = acc
                prod_ = tuple(out)
                if prod_ not in seen:
                    if len(seen) >= cap:
                        truncated = True
                        return elements, truncated
                    seen.add(prod_)
                    elements.append(prod_)
                    next_frontier.append(prod_)
        frontier = next_frontier
    return elements, truncated


def orders_histogram(elements, n, tables):
    """Multiset of element orders, by repeated multiplication."""
    q, mul, add = tables.q, tables.mul, tables.add
    ident = tuple(tables.one if i == j else 0 for i in range(n) for j in range(n))
    hist = {}
    for a in elements:
        cur = a
        k = 1
        while cur != ident:
            out = [0] * (n * n)
            for i in range(n):
                row = i * n
                for j in range(n):
                    acc = 0
                    for t in range(n):
                        acc = add[acc * q + mul[cur[row + t] * q + a[t * n + j]]]
                    out[row + j] = acc
            cur = tuple(out)
            k += 1
        hist[k] = hist.get(k, 0) + 1
    return hist


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _echelon_bases(dim, q, n=4):
    """All reduced-echelon bases of dim-dimensional subspaces of F_q^n.

    Yields tuples of dim row vectors (tuples of indices 0..q-1, where the
    indices 0..q-1 of entries ARE field-element indices; entries use the
    table encoding so 1 must be passed by the caller as table one == 1).
    """
    for pivots in combinations(range(n), dim):
        free_slots = []
        for r in range(dim):
            for c in range(pivots[r] + 1, n):
                if c not in pivots:
                    free_slots.append((r, c))
        for values in product(range(q), repeat=len(free_slots)):
            rows = [[0] * n for _ in range(dim)]
            for r, p in enumerate(pivots):
                rows[r][p] = 1
            for (r, c), v in zip(free_slots, values):
                rows[r][c] = v
            yield tuple(tuple(r) for r in rows), pivots


def _invariant(basis, pivots, gens, n, tables):
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    for g in gens:
        for b in basis:
            vec = [0] * n
            for i in range(n):
                acc = 0
                row = i * n
                for k in range(n):
                    acc = add[acc * q + mul[g[row + k] * q + b[k]]]
                vec[i] = acc
            for row, p in zip(basis, pivots):
                c = vec[p]
                if c != 0:
                    c = neg[c]
                    for i in range(n):
                        vec[i] = add[vec[i] * q + mul[c * q + row[i]]]
            if any(vec):
                return False
    return True


def invariant_subspace(gens, dim, tables, cap):
    """First G-invariant dim-subspace of F_q^4 in enumeration order, or None.

    The enumeration is exhaustive, so None is a proof of irreducibility in
    that dimension.  Raises no cap errors itself; the caller checks the
    Gaussian-binomial bound against the cap.
    """
    assert tables.one == 1
    for basis, pivots in _echelon_bases(dim, tables.q):
        if _invariant(basis, pivots, gens, 4, tables):
            return basis
    return None


def _plane_image(g, basis, tables):
    """Echelonized image of a 2-dim subspace under g, as a canonical key."""
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    rows = []
    for b in basis:
        vec = [0] * 4
        for i in range(4):
            acc = 0
            row = i * 4
            for k in range(4):
                acc = add[acc * q + mul[g[row + k] * q + b[k]]]
            vec[i] = acc
        rows.append(vec)
    # echelonize two rows over 4 columns
    rank = 0
    for col in range(4):
        piv = next((r for r in range(rank, 2) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pinv = inv[rows[rank][col]]
        rows[rank] = [mul[pinv * q + x] for x in rows[rank]]
        for r in range(2):
            if r != rank and rows[r][col] != 0:
                c = neg[rows[r][col]]
                rows[r] = [add[x * q + mul[c * q + y]] for x, y in zip(rows[r], rows[rank])]
        rank += 1
        if rank == 2:
            break
    return (tuple(rows[0]), tuple(rows[1]))


def _complementary(b1, b2, tables):
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    rows = [list(r) for r in (*b1, *b2)]
    rank = 0
    for col in range(4):
        piv = next((r for r in range(rank, 4) if rows[r][col] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        pinv = inv[rows[rank][col]]
        rows[rank] = [mul[pinv * q + x] for x in rows[rank]]
        for r in range(4):
            if r != rank and rows[r][col] != 0:
                c = neg[rows[r][col]]
                rows[r] = [add[x * q + mul[c * q + y]] for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank == 4


def imprimitivity(gens, tables, cap):
    """First decomposition F_q^4 = V1 + V2 (2-dim each) permuted by every
    generator, in plane-enumeration order, or None (exhaustive)."""
    assert tables.one == 1
    invariant_planes = []
    for basis, pivots in _echelon_bases(2, tables.q):
        partner = None
        ok = True
        for g in gens:
            img = _plane_image(g, basis, tables)
            if img == basis:
                continue
            if partner is None:
                partner = img
            elif img != partner:
                ok = False
                break
        if not ok:
            continue
        if partner is None:
            invariant_planes.append(basis)
            # two complementary invariant planes form a stabilized decomposition
            for other in invariant_planes[:-1]:
                if _complementary(other, basis, tables):
                    return other, basis
            continue
        if not _complementary(basis, partner, tables):
            continue
        # the partner must itself map back into {V1, V2}
        if all(_plane_image(g, partner, tables) in (basis, partner) for g in gens):
            return basis, partner
    return None
