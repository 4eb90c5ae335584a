"""Case classification for finite subgroups of GSp(4) over a small field.

A closed subgroup (explicit element list) is matched against the standard
maximal-subgroup taxonomy: invariant subspaces, stabilized plane
decompositions, semilinear (quadratic field) structure, the symmetric-cube
image of a 2x2 group, small cross-characteristic groups by order
certificate, and, in characteristic 2, invariant quadratic forms and Suzuki
orders.  Large image is recognized by order comparison plus irreducibility.
All witnesses re-verify by direct matrix computation; subspace answers are
exhaustive scans, so None is a proof at this scale.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ff, gsp4core, matops
from .backend import kernels
from .errors import TooManySubspaces, WrongCharacteristic
from .tables import field_tables

#: Cap on enumerated subspaces per scan.
DEFAULT_SUBSPACE_CAP = 5 * 10**6
#: Largest group order for which index-2 subgroups are searched.
INDEX2_SEARCH_CAP = 20000
#: Cap on enumerated algebra elements in field-generator searches.
ALGEBRA_ENUM_CAP = 300000

SMALL_GROUP_ORDERS = (520, 1440, 1920, 3840, 5040)
#: Characteristic-2 small groups, by order: S5, A6, an extension of C3^2 by D8.
CHAR2_SMALL_ORDERS = {120: "S5", 360: "A6", 72: "C3^2:D8"}


# -- invariant subspaces -------------------------------------------------------

@dataclass(frozen=True)
class InvariantSubspace:
    dim: int
    basis: tuple  # echelonized rows of element indices
    singularity: str  # totally-singular | non-singular | neither


def _gram_singularity(spec, basis):
    tables = field_tables(spec)
    form = gsp4core.canonical_form_entries(spec)
    d = len(basis)
    gram = []
    for a in range(d):
        row = []
        for b in range(d):
            jv = matops.mat_vec(form, basis[b], 4, tables)
            acc = 0
            for i in range(4):
                acc = tables.add[acc * tables.q
                                 + tables.mul[basis[a][i] * tables.q + jv[i]]]
            row.append(acc)
        gram.append(row)
    if all(x == 0 for row in gram for x in row):
        return "totally-singular"
    flat = tuple(x for row in gram for x in row)
    if matops._det([flat[i * d:(i + 1) * d] for i in range(d)], d, tables) != 0:
        return "non-singular"
    return "neither"


def find_invariant_subspace(closure, dim, cap=DEFAULT_SUBSPACE_CAP):
    """First invariant subspace of the given dimension, or None (exhaustive)."""
    closure.require_complete()
    spec = closure.spec
    q = spec.order
    count = kernels.gaussian_binomial(4, dim, q)
    if count > cap:
        raise TooManySubspaces(
            f"{count} subspaces of dimension {dim} over F_{q} exceed the cap {cap}"
        )
    tables = field_tables(spec)
    basis = kernels.invariant_subspace(list(closure.generators), dim, tables, cap)
    if basis is None:
        return None
    return InvariantSubspace(dim=dim, basis=basis,
                             singularity=_gram_singularity(spec, basis))


def find_imprimitivity(closure, cap=DEFAULT_SUBSPACE_CAP):
    """A pair of complementary planes permuted by every generator, or None."""
    closure.require_complete()
    spec = closure.spec
    count = kernels.gaussian_binomial(4, 2, spec.order)
    if count > cap:
        raise TooManySubspaces(
            f"{count} planes over F_{spec.order} exceed the cap {cap}"
        )
    tables = field_tables(spec)
    return kernels.imprimitivity(list(closure.generators), tables, cap)


# -- centralizer algebra and semilinear structure ------------------------------

def algebra_centralizer(spec, matrices, dim=4):
    """Basis of {X : Xg = gX for all g}, filtering incrementally so long
    element lists cost little once the space has stabilized."""
    tables = field_tables(spec)
    n2 = dim * dim
    basis = [tuple(tables.one if i == k else 0 for i in range(n2))
             for k in range(n2)]
    for g in matrices:
        if len(basis) <= 1 and basis and _is_scalar_flat(basis[0], dim):
            break
        rows = []
        for bmat in basis:
            xg = matops.mat_mul(bmat, g, dim, tables)
            gx = matops.mat_mul(g, bmat, dim, tables)
            rows.append(tuple(tables.add[a * tables.q + tables.neg[b]]
                              for a, b in zip(xg, gx)))
        # columns = current basis coefficients, rows transposed to equations
        eqs = [tuple(rows[m][pos] for m in range(len(basis)))
               for pos in range(n2)]
        coeff_null = matops.nullspace(eqs, len(basis), tables)
        new_basis = []
        for combo in coeff_null:
            acc = [0] * n2
            for m, c in enumerate(combo):
                if c:
                    for i in range(n2):
                        acc[i] = tables.add[acc[i] * tables.q
                                            + tables.mul[c * tables.q + basis[m][i]]]
            new_basis.append(tuple(acc))
        basis = new_basis
        if not basis:
            break
    return basis


def _is_scalar_flat(x, dim):
    d0 = x[0]
    for i in range(dim):
        for j in range(dim):
            if x[i * dim + j] != (d0 if i == j else 0):
                return False
    return True


def _quadratic_field_element(spec, x, tables):
    """(a, b) with x^2 = a*x + b*I and t^2 - a*t - b irreducible, or None."""
    x2 = matops.mat_mul(x, x, 4, tables)
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    a = None
    for i in range(4):
        for j in range(4):
            if i != j and x[i * 4 + j] != 0:
                a = mul[x2[i * 4 + j] * q + tables.inv[x[i * 4 + j]]]
                break
        if a is not None:
            break
    if a is None:
        return None  # diagonal: eigenvalues in the base field
    b = add[x2[0] * q + neg[mul[a * q + x[0]]]]
    expect = [add[mul[a * q + v] * q + (b if i % 5 == 0 else 0)]
              for i, v in enumerate(x)]
    if tuple(expect) != x2:
        return None
    # t^2 - a t - b must have no root in the base field
    for t in range(q):
        lhs = add[tables.pow(t, 2) * q
                  + neg[add[mul[a * q + t] * q + b]]]
        if lhs == 0:
            return None
    return a, b


def _find_field_generator(spec, basis):
    """Element of the span generating a quadratic field extension of the
    scalars, or None.  Full enumeration when feasible, else basis elements
    and pairwise combinations."""
    tables = field_tables(spec)
    q = tables.q
    d = len(basis)
    if d < 2:
        return None

    def combine(coeffs):
        acc = [0] * 16
        for m, c in enumerate(coeffs):
            if c:
                for i in range(16):
                    acc[i] = tables.add[acc[i] * q
                                        + tables.mul[c * q + basis[m][i]]]
        return tuple(acc)

    if q**d <= ALGEBRA_ENUM_CAP:
        from itertools import product
        candidates = (combine(cs) for cs in product(range(q), repeat=d))
    else:
        def gen():
            for bmat in basis:
                yield bmat
            for m1 in range(d):
                for m2 in range(m1 + 1, d):
                    for c in range(1, q):
                        yield combine([0] * m1 + [tables.one] + [0] * (m2 - m1 - 1)
                                      + [c] + [0] * (d - m2 - 1))
        candidates = gen()
    for x in candidates:
        if not any(x) or _is_scalar_flat(x, 4):
            continue
        rel = _quadratic_field_element(spec, x, tables)
        if rel is not None:
            return x, rel
    return None


def _normalizes_span(spec, gens, x):
    """Every g conjugates x into span{I, x}."""
    tables = field_tables(spec)
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    for g in gens:
        ginv = matops.mat_inv(g, 4, tables)
        y = matops.mat_mul(matops.mat_mul(g, x, 4, tables), ginv, 4, tables)
        # solve y = a*x + b*I from an off-diagonal nonzero slot of x
        a = None
        for i in range(4):
            for j in range(4):
                if i != j and x[i * 4 + j] != 0:
                    a = mul[y[i * 4 + j] * q + tables.inv[x[i * 4 + j]]]
                    break
            if a is not None:
                break
        if a is None:
            return False
        b = add[y[0] * q + neg[mul[a * q + x[0]]]]
        expect = tuple(add[mul[a * q + v] * q + (b if i % 5 == 0 else 0)]
                       for i, v in enumerate(x))
        if expect != tuple(y):
            return False
    return True


def _subgroup_from_squares(closure):
    """Smallest subgroup containing every square; the quotient by it is the
    largest elementary abelian 2-quotient."""
    spec = closure.spec
    tables = field_tables(spec)
    squares = []
    seen = set()
    for x in closure.elements:
        s = matops.mat_mul(x, x, closure.dim, tables)
        if s not in seen:
            seen.add(s)
            squares.append(s)
    gens = []
    known = {matops.identity(closure.dim, tables)}
    sub = None
    for s in squares:
        if s in known:
            continue
        gens.append(s)
        sub = gsp4core.close_matrices(spec, gens, dim=closure.dim)
        known = sub.element_set
    if sub is None:
        sub = gsp4core.close_matrices(
            spec, [matops.identity(closure.dim, tables)], dim=closure.dim)
    return sub


def index2_subgroups(closure):
    """Element lists of all index-2 subgroups (via the elementary abelian
    2-quotient of the group by its squares)."""
    closure.require_complete()
    if closure.order % 2:
        return []
    spec = closure.spec
    tables = field_tables(spec)
    ksub = _subgroup_from_squares(closure)
    if ksub.order == closure.order:
        return []
    coset_of = {}
    reps = []
    for x in closure.elements:
        if x in coset_of:
            continue
        label = len(reps)
        reps.append(x)
        for k in ksub.elements:
            coset_of[matops.mat_mul(x, k, closure.dim, tables)] = label
    nq = len(reps)
    mult = [[coset_of[matops.mat_mul(reps[i], reps[j], closure.dim, tables)]
             for j in range(nq)] for i in range(nq)]
    # coordinates over F_2
    basis_labels = []
    coords = {0: ()}
    for lbl in range(1, nq):
        if lbl in coords:
            continue
        k = len(basis_labels)
        basis_labels.append(lbl)
        for e, vec in list(coords.items()):
            coords[e] = vec + (0,)
            coords[mult[e][lbl]] = vec + (1,)
    k = len(basis_labels)
    out = []
    for mask in range(1, 2**k):
        sign = [(mask >> i) & 1 for i in range(k)]
        kernel = {lbl for lbl, vec in coords.items()
                  if sum(a * b for a, b in zip(vec, sign)) % 2 == 0}
        out.append([x for x in closure.elements if coset_of[x] in kernel])
    return out


def find_semilinear_structure(closure, index2_cap=INDEX2_SEARCH_CAP):
    """A matrix generating a quadratic field extension of the scalars that is
    centralized by the group or by an index-2 subgroup (and normalized by
    the whole group), or None.

    Groups larger than index2_cap skip the index-2 search; at that size the
    cases of interest are caught by the order-based recognizers instead.
    """
    closure.require_complete()
    spec = closure.spec
    tables = field_tables(spec)
    gens = list(closure.generators)
    cent = algebra_centralizer(spec, gens)
    if len(cent) >= 8:
        # tiny group: the centralizer is most of the matrix algebra, so a
        # quadratic field exists trivially; exhibit a block companion matrix
        x = _block_companion_field(spec)
        if x is not None and all(
            matops.mat_mul(x, g, 4, tables) == matops.mat_mul(g, x, 4, tables)
            for g in gens
        ):
            return {"generator": x, "subgroup": "full", "degenerate": True}
    found = _find_field_generator(spec, cent)
    if found is not None:
        return {"generator": found[0], "subgroup": "full", "degenerate": False}
    if closure.order <= index2_cap:
        for helems in index2_subgroups(closure):
            centh = algebra_centralizer(spec, helems)
            found = _find_field_generator(spec, centh)
            if found is not None and _normalizes_span(spec, gens, found[0]):
                return {"generator": found[0], "subgroup": "index2",
                        "subgroup_order": len(helems), "degenerate": False}
    return None


def _block_companion_field(spec):
    """diag(C_f, C_f) for the first irreducible monic quadratic f over the
    field, a standard quadratic-extension structure on the 4-space."""
    tables = field_tables(spec)
    q = tables.q
    for b in range(q):
        for c in range(q):
            # t^2 + b t + c with no root
            if all(tables.add[tables.add[tables.pow(t, 2) * q
                                         + tables.mul[b * q + t]] * q + c] != 0
                   for t in range(q)):
                x = [0] * 16
                negb = tables.neg[b]
                negc = tables.neg[c]
                for blk in (0, 2):
                    x[blk * 4 + blk + 1] = tables.one
                    x[(blk + 1) * 4 + blk] = negc
                    x[(blk + 1) * 4 + blk + 1] = negb
                return tuple(x)
    return None


# -- twisted cubic (symmetric cube of a 2x2 group) -----------------------------

def symm3_matrix(spec, h):
    """The 4x4 symmetric-cube matrix of h = [[a, c], [b, d]] acting on cubic
    monomials, with the classical coefficient-3 entries."""
    tables = field_tables(spec)
    q, mul, add = tables.q, tables.mul, tables.add

    def m(*xs):
        acc = tables.one
        for v in xs:
            acc = mul[acc * q + v]
        return acc

    def s(*xs):
        acc = 0
        for v in xs:
            acc = add[acc * q + v]
        return acc

    a, c, b, d = h
    three = s(tables.one, tables.one, tables.one)
    two = s(tables.one, tables.one)
    rows = [
        [m(a, a, a), m(a, a, c), m(a, c, c), m(c, c, c)],
        [m(three, a, a, b), s(m(a, a, d), m(two, a, b, c)),
         s(m(b, c, c), m(two, a, c, d)), m(three, c, c, d)],
        [m(three, a, b, b), s(m(b, b, c), m(two, a, b, d)),
         s(m(a, d, d), m(two, b, c, d)), m(three, c, d, d)],
        [m(b, b, b), m(b, b, d), m(b, d, d), m(d, d, d)],
    ]
    return tuple(x for row in rows for x in row)


def symm3_shape_params(spec, g):
    """(trace, det) of a 2x2 preimage candidate from the quartic charpoly of
    g, or None.  The eigenvalue multiset {a^3, a^2 b, a b^2, b^3} forces
    e1 = t^3 - 2 t d, e2 = d (t^2 - d)(t^2 - 2d), e3 = d^3 e1, e4 = d^6
    in terms of t = a + b and d = a b; the scan inverts these exactly."""
    tables = field_tables(spec)
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    coeffs = matops.charpoly(g, 4, tables)
    a1 = neg[coeffs[3]]
    a2 = coeffs[2]
    a3 = neg[coeffs[1]]
    a4 = coeffs[0]
    for dd in range(1, q):
        if tables.pow(dd, 6) != a4:
            continue
        if mul[tables.pow(dd, 3) * q + a1] != a3:
            continue
        two_d = add[dd * q + dd]
        for t in range(q):
            t3 = tables.pow(t, 3)
            if add[t3 * q + neg[mul[two_d * q + t]]] != a1:
                continue
            t2 = tables.pow(t, 2)
            e2 = mul[dd * q + mul[add[t2 * q + neg[dd]] * q
                                  + add[t2 * q + neg[two_d]]]]
            if e2 == a2:
                return t, dd
    return None


def _recover_preimage(spec, s):
    """h with symm3_matrix(h) == s, or None; resolves cube roots by trying
    every candidate and verifying entrywise."""
    tables = field_tables(spec)
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    three = add[add[tables.one * q + tables.one] * q + tables.one]
    two = add[tables.one * q + tables.one]
    if s[0] != 0:
        for a in tables.cube_roots[s[0]]:
            ia2 = inv[tables.pow(a, 2)]
            c = mul[s[1] * q + ia2]
            b = mul[s[4] * q + inv[mul[three * q + tables.pow(a, 2)]]]
            d = mul[add[s[5] * q + neg[mul[two * q + mul[a * q + mul[b * q + c]]]]]
                    * q + ia2]
            h = (a, c, b, d)
            if symm3_matrix(spec, h) == s:
                return h
        return None
    if s[3] != 0:
        for c in tables.cube_roots[s[3]]:
            ic2 = inv[tables.pow(c, 2)]
            d = mul[s[7] * q + inv[mul[three * q + tables.pow(c, 2)]]]
            b = mul[s[6] * q + ic2]
            h = (0, c, b, d)
            if symm3_matrix(spec, h) == s:
                return h
        return None
    return None


def test_twisted_cubic(closure):
    """Conjugating data identifying the group as a symmetric-cube image.

    Stage one checks every characteristic polynomial against the cubic
    eigenvalue shape (a proof of failure when it misses).  Stage two
    rebuilds the conjugation from the eigenbasis of a split generic element,
    pinning the column scalings through the monomial relations of the first
    row, then verifies every element entrywise.  Returns
    {"conjugator": P, "preimages": {g: h}} or None; for degenerate groups
    without a split generic element the exact stage may return None even
    though stage one passed (reported, not silent).
    """
    closure.require_complete()
    spec = closure.spec
    if spec.char < 5:
        raise WrongCharacteristic(
            f"the twisted-cubic case needs characteristic >= 5, got {spec.char}"
        )
    tables = field_tables(spec)
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv
    ident = matops.identity(4, tables)
    if closure.order == 1:
        return {"conjugator": ident,
                "preimages": {ident: (tables.one, 0, 0, tables.one)}}
    params = {}
    for g in closure.elements:
        pr = symm3_shape_params(spec, g)
        if pr is None:
            return None
        params[g] = pr

    def try_basis(g0, a, b):
        eigs = [tables.pow(a, 3), mul[tables.pow(a, 2) * q + b],
                mul[a * q + tables.pow(b, 2)], tables.pow(b, 3)]
        if len(set(eigs)) != 4:
            return None
        cols = []
        for lam in eigs:
            shifted = tuple(add[v * q + neg[lam]] if i % 5 == 0 else v
                            for i, v in enumerate(g0))
            null = matops.nullspace([shifted[i * 4:(i + 1) * 4]
                                     for i in range(4)], 4, tables)
            if len(null) != 1:
                return None
            cols.append(null[0])
        p0 = tuple(cols[j][i] for i in range(4) for j in range(4))
        p0inv = matops.mat_inv(p0, 4, tables)
        if p0inv is None:
            return None
        # pin the scalings from an element with nonzero top row
        for g in closure.elements:
            m = matops.mat_mul(matops.mat_mul(p0inv, g, 4, tables), p0, 4, tables)
            if 0 in (m[0], m[1], m[2], m[3]):
                continue
            mu3 = mul[mul[m[0] * q + m[2]] * q + inv[tables.pow(m[1], 2)]]
            mu4 = mul[mul[tables.pow(mu3, 2) * q
                          + mul[m[1] * q + m[3]]] * q
                      + inv[tables.pow(m[2], 2)]]
            if mu3 == 0 or mu4 == 0:
                continue
            dinv = (tables.one, tables.one, inv[mu3], inv[mu4])
            p = tuple(mul[p0[i * 4 + j] * q + dinv[j]]
                      for i in range(4) for j in range(4))
            pinv = matops.mat_inv(p, 4, tables)
            preimages = {}
            good = True
            for x in closure.elements:
                s = matops.mat_mul(matops.mat_mul(pinv, x, 4, tables), p, 4, tables)
                h = _recover_preimage(spec, s)
                if h is None:
                    good = False
                    break
                preimages[x] = h
            if good:
                return {"conjugator": p, "preimages": preimages}
        return None

    for g0 in closure.elements:
        t, dd = params[g0]
        # roots of y^2 - t y + d in the base field
        roots = [y for y in range(q)
                 if add[add[tables.pow(y, 2) * q + neg[mul[t * q + y]]] * q + dd] == 0]
        if len(roots) != 2:
            continue
        for a, b in (roots, roots[::-1]):
            res = try_basis(g0, a, b)
            if res is not None:
                return res
    return None


# -- characteristic 2: invariant quadratic forms -------------------------------

_PAIRS = [(i, j) for i in range(4) for j in range(i, 4)]


def _quad_eval(qform, v, tables):
    q, mul, add = tables.q, tables.mul, tables.add
    acc = 0
    for idx, (i, j) in enumerate(_PAIRS):
        acc = add[acc * q + mul[qform[idx] * q + mul[v[i] * q + v[j]]]]
    return acc


def _polar_matrix(qform, tables):
    m = [0] * 16
    for idx, (i, j) in enumerate(_PAIRS):
        if i != j:
            m[i * 4 + j] = qform[idx]
            m[j * 4 + i] = qform[idx]
    return tuple(m)


def invariant_quadratic_forms(closure):
    """Basis of the space of quadratic forms Q with Q(gx) = Q(x)."""
    spec = closure.spec
    tables = field_tables(spec)
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    rows = []
    for g in closure.generators:
        for slot, (i, j) in enumerate(_PAIRS):
            row = [0] * 10
            for idx, (k, l) in enumerate(_PAIRS):
                if i == j:
                    coef = mul[g[k * 4 + i] * q + g[l * 4 + i]]
                else:
                    coef = add[mul[g[k * 4 + i] * q + g[l * 4 + j]] * q
                               + mul[g[k * 4 + j] * q + g[l * 4 + i]]]
                row[idx] = coef
            row[slot] = add[row[slot] * q + neg[tables.one]]
            rows.append(tuple(row))
    return matops.nullspace(rows, 10, tables)


def _arf_type(spec, qform):
    """'plus' or 'minus' by the Arf invariant of a nondegenerate form."""
    tables = field_tables(spec)
    q, mul, add = tables.q, tables.mul, tables.add
    from .induced import symplectic_basis_change
    polar = _polar_matrix(qform, tables)
    change = symplectic_basis_change(spec, polar)
    cols = [tuple(change[i * 4 + j] for i in range(4)) for j in range(4)]
    u1, u2, v2, v1 = cols
    arf = add[mul[_quad_eval(qform, u1, tables) * q
                  + _quad_eval(qform, v1, tables)] * q
              + mul[_quad_eval(qform, u2, tables) * q
                    + _quad_eval(qform, v2, tables)]]
    artin_schreier = {add[tables.pow(x, 2) * q + x] for x in range(q)}
    return "plus" if arf in artin_schreier else "minus"


def test_orthogonal(closure, enum_cap=ALGEBRA_ENUM_CAP):
    """('plus'|'minus', form) for the first nondegenerate invariant
    quadratic form in enumeration order, or ('none', None)."""
    closure.require_complete()
    spec = closure.spec
    if spec.char != 2:
        raise WrongCharacteristic(
            f"quadratic-form analysis is for characteristic 2, got {spec.char}"
        )
    tables = field_tables(spec)
    sols = invariant_quadratic_forms(closure)
    if not sols:
        return "none", None
    d = len(sols)
    q = tables.q
    from itertools import product
    space = product(range(q), repeat=d) if q**d <= enum_cap else None
    if space is None:
        space = ([0] * m + [tables.one] + [0] * (d - m - 1) for m in range(d))
    for coeffs in space:
        qform = [0] * 10
        for m, c in enumerate(coeffs):
            if c:
                for i in range(10):
                    qform[i] = tables.add[qform[i] * q
                                          + tables.mul[c * q + sols[m][i]]]
        if not any(qform):
            continue
        polar = _polar_matrix(qform, tables)
        if matops.det(polar, 4, tables) != 0:
            return _arf_type(spec, tuple(qform)), tuple(qform)
    return "none", None


# -- Suzuki orders --------------------------------------------------------------

def suzuki_order(r):
    """2^{2r} (2^{2r} + 1)(2^r - 1); the group itself exists for odd r."""
    if r < 1:
        raise ValueError("r must be positive")
    return 2 ** (2 * r) * (2 ** (2 * r) + 1) * (2 ** r - 1)


def suzuki_divisibility(p, r_max):
    """All r <= r_max with p dividing suzuki_order(r), by modular arithmetic."""
    out = []
    for r in range(1, r_max + 1):
        t = pow(2, r, p)
        if (t * t * (t * t + 1) * (t - 1)) % p == 0:
            out.append(r)
    return out


# -- the classifier -------------------------------------------------------------

@dataclass(frozen=True)
class AschbacherReport:
    cases: tuple
    witnesses: dict
    large_image: bool
    group_order: int
    projective_order: int

    def to_json(self):
        wit = {}
        for k, v in self.witnesses.items():
            wit[k] = _jsonable(v)
        return {
            "cases": list(self.cases),
            "witnesses": wit,
            "large_image": self.large_image,
            "group_order": self.group_order,
            "projective_order": self.projective_order,
        }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, InvariantSubspace):
        return {"dim": v.dim, "basis": [list(r) for r in v.basis],
                "singularity": v.singularity}
    return v


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def classify(closure, subspace_cap=DEFAULT_SUBSPACE_CAP):
    """Match the closed group against every applicable case.

    Multiple labels may hold simultaneously; all matches are reported.  The
    small-group fallback label fires only when nothing else matched, so an
    imprimitive group of incidentally small order is not double-flagged.
    """
    closure.require_complete()
    spec = closure.spec
    char = spec.char
    r = spec.degree
    order = closure.order
    proj = gsp4core.projective_order(closure)
    cases = []
    witnesses = {}

    irreducible = True
    for dim in (1, 2, 3):
        sub = find_invariant_subspace(closure, dim, cap=subspace_cap)
        if sub is not None:
            irreducible = False
            if "Reducible" not in cases:
                cases.append("Reducible")
                witnesses["Reducible"] = sub

    pair = find_imprimitivity(closure, cap=subspace_cap)
    if pair is not None:
        cases.append("Imprimitive")
        witnesses["Imprimitive"] = {"V1": pair[0], "V2": pair[1]}

    semi = find_semilinear_structure(closure)
    if semi is not None:
        cases.append("Semilinear")
        witnesses["Semilinear"] = semi

    if char >= 5:
        cubic = test_twisted_cubic(closure)
        if cubic is not None:
            cases.append("TwistedCubic")
            witnesses["TwistedCubic"] = cubic

    if char == 2:
        kind, qform = test_orthogonal(closure)
        if kind == "plus":
            cases.append("OrthogonalPlus")
            witnesses["OrthogonalPlus"] = {"form": qform}
        elif kind == "minus":
            cases.append("OrthogonalMinus")
            witnesses["OrthogonalMinus"] = {"form": qform}
        if order in CHAR2_SMALL_ORDERS:
            cases.append("SmallExceptional")
            witnesses["SmallExceptional"] = {
                "order": order, "candidate": CHAR2_SMALL_ORDERS[order],
                "certificate": "order",
            }
        if irreducible:
            for s in _divisors(r):
                if s % 2 == 1 and order == suzuki_order(s):
                    cases.append("Suzuki")
                    witnesses["Suzuki"] = {"order": order, "r": s}
                    break
    else:
        if order in SMALL_GROUP_ORDERS and order % char != 0:
            cases.append("SmallExceptional")
            witnesses["SmallExceptional"] = {"order": order,
                                             "certificate": "order"}

    large = False
    for s in sorted(_divisors(r), reverse=True):
        sub_q = char**s
        if irreducible and order % gsp4core.sp4_order(sub_q) == 0:
            if order == gsp4core.gsp4_order(sub_q):
                cases.append(f"FullGSp({s})")
            cases.append(f"ContainsSp({s})")
            witnesses[f"ContainsSp({s})"] = {
                "order": order, "sp4_order": gsp4core.sp4_order(sub_q)}
            large = True
            break

    if not cases and not large:
        label = "SmallExceptional (unlisted)"
        cases.append(label)
        witnesses[label] = {"order": order, "projective_order": proj}

    return AschbacherReport(
        cases=tuple(cases),
        witnesses=witnesses,
        large_image=large,
        group_order=order,
        projective_order=proj,
    )


# -- 2x2 sub-classifier ----------------------------------------------------------

@dataclass(frozen=True)
class Gl2Class:
    label: str
    order: int
    projective_order: int
    witness: dict = field(default_factory=dict)


def _projective_lines(q):
    """Canonical representatives (first nonzero entry 1) of lines in F_q^2."""
    lines = [(1, x) for x in range(q)]
    lines.append((0, 1))
    return lines


def _line_image(g, line, tables):
    q, mul, add, inv = tables.q, tables.mul, tables.add, tables.inv
    w = []
    for i in range(2):
        acc = 0
        for k in range(2):
            acc = add[acc * q + mul[g[i * 2 + k] * q + line[k]]]
        w.append(acc)
    if w[0] != 0:
        c = inv[w[0]]
        return (tables.one, mul[c * q + w[1]])
    return (0, tables.one)


def _common_eigenvector(gens, spec):
    tables = field_tables(spec)
    for line in _projective_lines(tables.q):
        if all(_line_image(g, line, tables) == line for g in gens):
            return line
    return None


def _stable_line_pair(gens, spec):
    tables = field_tables(spec)
    lines = _projective_lines(tables.q)
    for i in range(len(lines)):
        for j in range(i + 1, len(lines)):
            pair = {lines[i], lines[j]}
            if all({_line_image(g, lines[i], tables),
                    _line_image(g, lines[j], tables)} == pair for g in gens):
                return (lines[i], lines[j])
    return None


def _embed_gens_quadratic(spec, gens):
    target = ff.make_field(spec.char, 2 * spec.degree)
    out = []
    for g in gens:
        out.append(tuple(ff.embed(spec.from_index(x), target).index for x in g))
    return target, out


def _projective_element_orders(closure):
    spec = closure.spec
    tables = field_tables(spec)
    scalars = {matops.scalar(2, tables, a) for a in range(1, tables.q)}
    orders = set()
    for x in closure.elements:
        cur = x
        n = 1
        while cur not in scalars:
            cur = matops.mat_mul(cur, x, 2, tables)
            n += 1
        orders.add(n)
    return orders


def psl2_order(q):
    return q * (q * q - 1) // (2 if q % 2 else 1)


def pgl2_order(q):
    return q * (q * q - 1)


def classify_gl2(closure):
    """Projective class of a closed 2x2 matrix group.

    Checked in order: common eigenvector (Borel), stabilized line pair over
    the field or its quadratic extension (Dihedral), projective order equal
    to a PSL/PGL order over a subfield, then the three exceptional orders
    with an element-order certificate.  The order-60 coincidence resolves to
    PSL2(5) because the PSL test runs first.
    """
    closure.require_complete()
    spec = closure.spec
    gens = list(closure.generators)
    order = closure.order
    proj = gsp4core.projective_order(closure)

    line = _common_eigenvector(gens, spec)
    if line is not None:
        return Gl2Class("Borel", order, proj, {"eigenvector": line})

    pair = _stable_line_pair(gens, spec)
    if pair is not None:
        return Gl2Class("Dihedral", order, proj,
                        {"lines": pair, "field": spec.order})
    ext, egens = _embed_gens_quadratic(spec, gens)
    pair = _stable_line_pair(egens, ext)
    if pair is not None:
        return Gl2Class("Dihedral", order, proj,
                        {"lines": pair, "field": ext.order})

    for s in _divisors(spec.degree):
        sub_q = spec.char**s
        if proj == psl2_order(sub_q):
            return Gl2Class(f"PSL2({sub_q})", order, proj,
                            {"projective_order": proj})
        if proj == pgl2_order(sub_q):
            return Gl2Class(f"PGL2({sub_q})", order, proj,
                            {"projective_order": proj})

    porders = _projective_element_orders(closure)
    if proj == 12 and porders <= {1, 2, 3}:
        return Gl2Class("A4", order, proj, {"element_orders": sorted(porders)})
    if proj == 24 and porders <= {1, 2, 3, 4}:
        return Gl2Class("S4", order, proj, {"element_orders": sorted(porders)})
    if proj == 60 and porders <= {1, 2, 3, 5}:
        return Gl2Class("A5", order, proj, {"element_orders": sorted(porders)})

    return Gl2Class("Unclassified", order, proj,
                    {"element_orders": sorted(porders)})
