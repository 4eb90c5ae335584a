# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Cython kernels: subgroup closure and exhaustive subspace scans.

Twin of _kernels_py with identical signatures, semantics, and enumeration
order; selected automatically at import when compiled.
"""

from itertools import combinations

BACKEND = "cython"


def close_group(gens, n, tables, cap):
    cdef int[:] mul = tables.mul
    cdef int[:] add = tables.add
    cdef int q = tables.q
    cdef int dim = n
    cdef int nn = dim * dim
    cdef int ngens = len(gens)
    cdef int i, j, k, gi, acc, row
    cdef int m[16]
    cdef int out[16]

    gen_arrays = [tuple(g) for g in gens]
    ident = tuple(tables.one if i == j else 0 for i in range(dim) for j in range(dim))
    elements = [ident]
    seen = {ident}
    truncated = False
    cdef Py_ssize_t pos = 0
    cdef int limit = cap
    # flatten generators into one python-managed buffer
    import array as _array
    flat = _array.array("i", [x for g in gen_arrays for x in g])
    cdef int[:] gflat = flat
    while pos < len(elements):
        cur = elements[pos]
        pos += 1
        for i in range(nn):
            m[i] = cur[i]
        for gi in range(ngens):
            for i in range(dim):
                row = i * dim
                for j in range(dim):
                    acc = 0
                    for k in range(dim):
                        acc = add[acc * q + mul[m[row + k] * q + gflat[gi * nn + k * dim + j]]]
                    out[row + j] = acc
            prod_ = tuple([out[i] for i in range(nn)])
            if prod_ not in seen:
                if len(seen) >= limit:
                    return elements, True
                seen.add(prod_)
                elements.append(prod_)
    return elements, truncated


def orders_histogram(elements, n, tables):
    cdef int[:] mul = tables.mul
    cdef int[:] add = tables.add
    cdef int q = tables.q
    cdef int dim = n
    cdef int nn = dim * dim
    cdef int i, j, k, acc, row, order
    cdef int a[16]
    cdef int cur[16]
    cdef int nxt[16]
    cdef int one = tables.one
    cdef bint is_ident
    hist = {}
    for el in elements:
        for i in range(nn):
            a[i] = el[i]
            cur[i] = el[i]
        order = 1
        while True:
            is_ident = True
            for i in range(dim):
                for j in range(dim):
                    if cur[i * dim + j] != (one if i == j else 0):
                        is_ident = False
                        break
                if not is_ident:
                    break
            if is_ident:
                break
            for i in range(dim):
                row = i * dim
                for j in range(dim):
                    acc = 0
                    for k in range(dim):
                        acc = add[acc * q + mul[cur[row + k] * q + a[k * dim + j]]]
                    nxt[row + j] = acc
            for i in range(nn):
                cur[i] = nxt[i]
            order += 1
        hist[order] = hist.get(order, 0) + 1
    return hist


def gaussian_binomial(n, k, q):
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


cdef int _apply_and_reduce(int* g, int* basis, int* pivots, int dim_sub,
                           int[:] mul, int[:] add, int[:] neg, int q,
                           int* vec_in) nogil:
    """vec := g * vec_in reduced against the echelon basis; returns 1 if zero."""
    cdef int vec[4]
    cdef int i, k, acc, c, r, p
    for i in range(4):
        acc = 0
        for k in range(4):
            acc = add[acc * q + mul[g[i * 4 + k] * q + vec_in[k]]]
        vec[i] = acc
    for r in range(dim_sub):
        p = pivots[r]
        c = vec[p]
        if c != 0:
            c = neg[c]
            for i in range(4):
                vec[i] = add[vec[i] * q + mul[c * q + basis[r * 4 + i]]]
    for i in range(4):
        if vec[i] != 0:
            return 0
    return 1


def invariant_subspace(gens, dim, tables, cap):
    cdef int[:] mul = tables.mul
    cdef int[:] add = tables.add
    cdef int[:] neg = tables.neg
    cdef int q = tables.q
    cdef int d = dim
    cdef int i, j, r, c, gi, ok, nfree, t
    cdef int basis[12]
    cdef int pivots_c[3]
    cdef int free_r[9]
    cdef int free_c[9]
    cdef int values[9]
    cdef int vin[4]
    cdef int ngens = len(gens)
    assert tables.one == 1
    import array as _array
    flat = _array.array("i", [x for g in gens for x in g])
    cdef int[:] gflat = flat
    cdef bint done
    for pivots in combinations(range(4), d):
        for r in range(d):
            pivots_c[r] = pivots[r]
        nfree = 0
        for r in range(d):
            for c in range(pivots[r] + 1, 4):
                if c not in pivots:
                    free_r[nfree] = r
                    free_c[nfree] = c
                    nfree += 1
        for i in range(nfree):
            values[i] = 0
        while True:
            for r in range(d):
                for c in range(4):
                    basis[r * 4 + c] = 0
                basis[r * 4 + pivots_c[r]] = 1
            for i in range(nfree):
                basis[free_r[i] * 4 + free_c[i]] = values[i]
            ok = 1
            for gi in range(ngens):
                for r in range(d):
                    for i in range(4):
                        vin[i] = basis[r * 4 + i]
                    if not _apply_and_reduce(&gflat[gi * 16], basis, pivots_c, d,
                                             mul, add, neg, q, vin):
                        ok = 0
                        break
                if not ok:
                    break
            if ok:
                return tuple(tuple(basis[r * 4 + c] for c in range(4)) for r in range(d))
            # odometer over free values, rightmost fastest (matches itertools.product)
            done = True
            for i in range(nfree - 1, -1, -1):
                values[i] += 1
                if values[i] < q:
                    done = False
                    break
                values[i] = 0
            if done or nfree == 0:
                break
    return None


cdef void _image_rows(int* g, int* basis, int* rows,
                      int[:] mul, int[:] add, int q) nogil:
    cdef int r, i, k, acc
    for r in range(2):
        for i in range(4):
            acc = 0
            for k in range(4):
                acc = add[acc * q + mul[g[i * 4 + k] * q + basis[r * 4 + k]]]
            rows[r * 4 + i] = acc


cdef void _echelon2(int* rows, int[:] mul, int[:] add, int[:] neg, int[:] inv,
                    int q) nogil:
    cdef int rank = 0
    cdef int col, piv, r, i, pinv, c, tmp
    for col in range(4):
        piv = -1
        for r in range(rank, 2):
            if rows[r * 4 + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for i in range(4):
                tmp = rows[rank * 4 + i]
                rows[rank * 4 + i] = rows[piv * 4 + i]
                rows[piv * 4 + i] = tmp
        pinv = inv[rows[rank * 4 + col]]
        for i in range(4):
            rows[rank * 4 + i] = mul[pinv * q + rows[rank * 4 + i]]
        for r in range(2):
            if r != rank and rows[r * 4 + col] != 0:
                c = neg[rows[r * 4 + col]]
                for i in range(4):
                    rows[r * 4 + i] = add[rows[r * 4 + i] * q + mul[c * q + rows[rank * 4 + i]]]
        rank += 1
        if rank == 2:
            return


cdef int _rank4(int* b1, int* b2, int[:] mul, int[:] add, int[:] neg,
                int[:] inv, int q) nogil:
    cdef int rows[16]
    cdef int i, col, piv, r, pinv, c, tmp, rank
    for i in range(8):
        rows[i] = b1[i]
        rows[8 + i] = b2[i]
    rank = 0
    for col in range(4):
        piv = -1
        for r in range(rank, 4):
            if rows[r * 4 + col] != 0:
                piv = r
                break
        if piv < 0:
            continue
        if piv != rank:
            for i in range(4):
                tmp = rows[rank * 4 + i]
                rows[rank * 4 + i] = rows[piv * 4 + i]
                rows[piv * 4 + i] = tmp
        pinv = inv[rows[rank * 4 + col]]
        for i in range(4):
            rows[rank * 4 + i] = mul[pinv * q + rows[rank * 4 + i]]
        for r in range(4):
            if r != rank and rows[r * 4 + col] != 0:
                c = neg[rows[r * 4 + col]]
                for i in range(4):
                    rows[r * 4 + i] = add[rows[r * 4 + i] * q + mul[c * q + rows[rank * 4 + i]]]
        rank += 1
    return rank


def imprimitivity(gens, tables, cap):
    cdef int[:] mul = tables.mul
    cdef int[:] add = tables.add
    cdef int[:] neg = tables.neg
    cdef int[:] inv = tables.inv
    cdef int q = tables.q
    cdef int ngens = len(gens)
    cdef int i, r, c, gi, nfree, same, havep, ok
    cdef int basis[8]
    cdef int partner[8]
    cdef int img[8]
    cdef int pimg[8]
    cdef int free_r[4]
    cdef int free_c[4]
    cdef int values[4]
    cdef bint done
    assert tables.one == 1
    import array as _array
    flat = _array.array("i", [x for g in gens for x in g])
    cdef int[:] gflat = flat
    invariant_planes = []
    for pivots in combinations(range(4), 2):
        nfree = 0
        for r in range(2):
            for c in range(pivots[r] + 1, 4):
                if c not in pivots:
                    free_r[nfree] = r
                    free_c[nfree] = c
                    nfree += 1
        for i in range(nfree):
            values[i] = 0
        while True:
            for r in range(2):
                for c in range(4):
                    basis[r * 4 + c] = 0
                basis[r * 4 + pivots[r]] = 1
            for i in range(nfree):
                basis[free_r[i] * 4 + free_c[i]] = values[i]
            havep = 0
            ok = 1
            for gi in range(ngens):
                _image_rows(&gflat[gi * 16], basis, img, mul, add, q)
                _echelon2(img, mul, add, neg, inv, q)
                same = 1
                for i in range(8):
                    if img[i] != basis[i]:
                        same = 0
                        break
                if same:
                    continue
                if not havep:
                    for i in range(8):
                        partner[i] = img[i]
                    havep = 1
                else:
                    same = 1
                    for i in range(8):
                        if img[i] != partner[i]:
                            same = 0
                            break
                    if not same:
                        ok = 0
                        break
            if ok:
                basis_t = (tuple(basis[i] for i in range(4)),
                           tuple(basis[4 + i] for i in range(4)))
                if not havep:
                    invariant_planes.append(basis_t)
                    for other in invariant_planes[:-1]:
                        for i in range(4):
                            img[i] = other[0][i]
                            img[4 + i] = other[1][i]
                        if _rank4(img, basis, mul, add, neg, inv, q) == 4:
                            return other, basis_t
                else:
                    if _rank4(basis, partner, mul, add, neg, inv, q) == 4:
                        ok = 1
                        for gi in range(ngens):
                            _image_rows(&gflat[gi * 16], partner, pimg, mul, add, q)
                            _echelon2(pimg, mul, add, neg, inv, q)
                            same = 1
                            for i in range(8):
                                if pimg[i] != basis[i]:
                                    same = 0
                                    break
                            if not same:
                                same = 1
                                for i in range(8):
                                    if pimg[i] != partner[i]:
                                        same = 0
                                        break
                            if not same:
                                ok = 0
                                break
                        if ok:
                            partner_t = (tuple(partner[i] for i in range(4)),
                                         tuple(partner[4 + i] for i in range(4)))
                            return basis_t, partner_t
            done = True
            for i in range(nfree - 1, -1, -1):
                values[i] += 1
                if values[i] < q:
                    done = False
                    break
                values[i] = 0
            if done or nfree == 0:
                break
    return None
