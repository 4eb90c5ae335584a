"""Maximally induced 4-dimensional mod-l representations.

The local Galois group is presented by two topological generators, a tame
generator and a Frobenius, with the standard tame relation.  The
representation is pinned down by a character of order 2p on the unramified
quartic extension: order p on units (fixing the tame image t) and value -1
on the uniformizer (fixing the sign in the Frobenius image F).  The
deterministic root-of-unity and modulus choices make the two matrices
reproducible bit for bit; they present one representative of a conjugacy
class of equivalent representations.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ff, gsp4core, matops
from .backend import kernels
from .errors import (
    BadCongruence,
    NoSymplecticForm,
    NotPrime,
    PrimeClash,
    TooSmall,
)
from .tables import field_tables


@dataclass(frozen=True)
class InducedParams:
    p: int
    q: int
    ell: int
    field: ff.FieldSpec

    @property
    def degree(self):
        return self.field.degree


def multiplicative_order(a, n):
    """Order of a modulo n (a invertible), by direct iteration."""
    if n <= 1 or a % n == 0:
        raise ValueError("order undefined")
    k = 1
    acc = a % n
    while acc != 1:
        acc = (acc * a) % n
        k += 1
        if k > n:
            raise ValueError(f"{a} is not invertible modulo {n}")
    return k


def validate_params(p, q, ell, strict=True):
    """Check the arithmetic conditions and build the coefficient field.

    The field is the smallest F_{l^m} whose multiplicative group has order
    divisible by 2p, so that an order-p root of unity and the sign -1 both
    exist in it.
    """
    for name, value in (("p", p), ("q", q), ("ell", ell)):
        if not ff.is_prime(value):
            raise NotPrime(f"{name} = {value} is not prime")
    if ell in (p, q):
        raise PrimeClash(f"ell = {ell} collides with the pair (p, q)")
    if p % 4 != 1:
        raise BadCongruence(f"p = {p} is not 1 mod 4")
    if strict and p <= 7:
        raise TooSmall(f"p = {p} <= 7; the exclusion arguments need p > 7")
    if q < 5:
        raise BadCongruence(f"q = {q} < 5")
    if multiplicative_order(q, p) != 4:
        raise BadCongruence(f"q = {q} does not have order 4 modulo p = {p}")
    if ell == 2:
        raise BadCongruence("2^m - 1 is odd, so no field of characteristic 2 "
                            "contains an element of order 2p")
    m = 1
    while (ell**m - 1) % (2 * p) != 0:
        m += 1
        if m > 4 * p:
            raise BadCongruence("no embedding field found")  # unreachable
    return InducedParams(p=p, q=q, ell=ell, field=ff.make_field(ell, m))


@dataclass(frozen=True)
class InducedRep:
    """Generators of the induced image in symplectic coordinates.

    t and F satisfy F t F^-1 = t^q and F^4 = -I and preserve the canonical
    form with similitude 1.  natural_t / natural_F are the same elements in
    the induction basis (t diagonal, F a signed 4-cycle); form is the
    invariant form recovered in that basis and basis_change is the column
    matrix P with P^T * form * P equal to the canonical form.
    """

    params: InducedParams
    t: gsp4core.GroupElement
    F: gsp4core.GroupElement
    form: gsp4core.SymplecticForm
    natural_t: tuple
    natural_F: tuple
    basis_change: tuple
    alpha: int = 1

    def generators(self):
        return [self.t, self.F]

    def to_json(self):
        data = gsp4core.generators_to_json(self.params.field, [self.t, self.F])
        data["params"] = {"p": self.params.p, "q": self.params.q,
                          "ell": self.params.ell, "alpha": self.alpha}
        return data


def _natural_generators(params, alpha_idx=None):
    """(t, F) in the induction basis, as flat index tuples."""
    spec = params.field
    tables = field_tables(spec)
    zeta = ff.nth_root_of_unity(spec, params.p)
    diag = [(zeta ** pow(params.q, i, params.p)).index for i in range(4)]
    t = tuple(diag[i] if i == j else 0 for i in range(4) for j in range(4))
    f = [0] * 16
    # F e_{i+1} = e_i with the sign -1 = chi(q) on the wrap-around, so that
    # conjugation by F raises t to the q-th power and F^4 = -I
    f[0 * 4 + 1] = tables.one
    f[1 * 4 + 2] = tables.one
    f[2 * 4 + 3] = tables.one
    f[3 * 4 + 0] = tables.neg[tables.one]
    if alpha_idx is not None and alpha_idx != tables.one:
        f = [tables.mul[alpha_idx * tables.q + x] for x in f]
    return t, tuple(f)


def invariant_bilinear_forms(spec, gens):
    """Basis of {X : g^T X g = X for all g}, as flat 4x4 index tuples."""
    tables = field_tables(spec)
    q, mul, add, neg = tables.q, tables.mul, tables.add, tables.neg
    rows = []
    for g in gens:
        for i in range(4):
            for j in range(4):
                row = [0] * 16
                for k in range(4):
                    for l in range(4):
                        row[k * 4 + l] = mul[g[k * 4 + i] * q + g[l * 4 + j]]
                row[i * 4 + j] = add[row[i * 4 + j] * q + neg[tables.one]]
                rows.append(tuple(row))
    return matops.nullspace(rows, 16, tables)


def _is_alternating(x, tables):
    neg = tables.neg
    for i in range(4):
        if x[i * 4 + i] != 0:
            return False
        for j in range(4):
            if x[i * 4 + j] != neg[x[j * 4 + i]]:
                return False
    return True


def _normalize_first_entry(x, tables):
    for v in x:
        if v != 0:
            c = tables.inv[v]
            return matops.mat_scale(x, c, tables)
    return x


def _bilinear(form, u, v, tables):
    q, mul, add = tables.q, tables.mul, tables.add
    acc = 0
    for i in range(4):
        if u[i] == 0:
            continue
        for j in range(4):
            acc = add[acc * q + mul[u[i] * q + mul[form[i * 4 + j] * q + v[j]]]]
    return acc


def symplectic_basis_change(spec, form):
    """Column matrix P with P^T * form * P equal to the canonical form.

    Gram-Schmidt for alternating forms: extract two hyperbolic pairs, each
    time projecting onto the symplectic complement of the pairs so far, then
    order the basis to match the antidiagonal block shape.
    """
    tables = field_tables(spec)
    q, mul, add, neg, inv = tables.q, tables.mul, tables.add, tables.neg, tables.inv

    def reduce_vec(w, pairs):
        w = list(w)
        for (u, v) in pairs:
            c1 = _bilinear(form, w, v, tables)
            c2 = _bilinear(form, w, u, tables)
            for i in range(4):
                w[i] = add[w[i] * q + neg[mul[c1 * q + u[i]]]]
                w[i] = add[w[i] * q + mul[c2 * q + v[i]]]
        return tuple(w)

    def vectors():
        for idx in range(1, q**4):
            vec = []
            m = idx
            for _ in range(4):
                vec.append(m % q)
                m //= q
            yield tuple(vec)

    pairs = []
    for _ in range(2):
        u = None
        for w in vectors():
            r = reduce_vec(w, pairs)
            if any(r):
                u = r
                break
        if u is None:
            raise NoSymplecticForm("form is degenerate")
        v = None
        for w in vectors():
            r = reduce_vec(w, pairs)
            if _bilinear(form, u, r, tables) != 0:
                v = r
                break
        if v is None:
            raise NoSymplecticForm("form is degenerate")
        c = inv[_bilinear(form, u, v, tables)]
        v = tuple(mul[c * q + x] for x in v)
        pairs.append((u, v))
    (u1, v1), (u2, v2) = pairs
    cols = [u1, u2, v2, v1]
    return tuple(cols[j][i] for i in range(4) for j in range(4))


def build_induced(params, alpha=1):
    """Explicit matrix model: tame image t, Frobenius image F.

    The invariant form is recovered by solving the 16-unknown linear system
    over the field, normalized so its first nonzero entry is 1, and both
    generators are conjugated into the canonical symplectic coordinates.
    alpha is an unramified twist applied as a scalar on F (an integer
    reduced into the field, or a FieldElement).
    """
    spec = params.field
    tables = field_tables(spec)
    if isinstance(alpha, ff.FieldElement):
        alpha_el = alpha
    else:
        alpha_el = spec.from_int(alpha)
    if alpha_el.is_zero():
        raise ValueError("twist must be invertible")
    t_nat, f_plain = _natural_generators(params)
    _, f_nat = _natural_generators(params, alpha_idx=alpha_el.index)
    # the invariant form does not see the unramified twist's scalar, so it
    # is recovered from the untwisted pair
    sols = invariant_bilinear_forms(spec, [t_nat, f_plain])
    form_flat = None
    for x in sols:
        if _is_alternating(x, tables) and matops.det(x, 4, tables) != 0:
            form_flat = _normalize_first_entry(x, tables)
            break
    if form_flat is None:
        raise NoSymplecticForm(
            "no alternating nondegenerate invariant form; inconsistent input"
        )
    change = symplectic_basis_change(spec, form_flat)
    change_inv = matops.mat_inv(change, 4, tables)
    t_can = matops.mat_mul(matops.mat_mul(change_inv, t_nat, 4, tables),
                           change, 4, tables)
    f_can = matops.mat_mul(matops.mat_mul(change_inv, f_nat, 4, tables),
                           change, 4, tables)
    return InducedRep(
        params=params,
        t=gsp4core.GroupElement(spec, t_can),
        F=gsp4core.GroupElement(spec, f_can),
        form=gsp4core.SymplecticForm(spec, form_flat),
        natural_t=t_nat,
        natural_F=f_nat,
        basis_change=change,
        alpha=alpha_el.index,
    )


def check_mackey_irreducible(params):
    """(irreducible?, orbit) where orbit is {q^i mod p : i = 0..3}.

    The four Frobenius-conjugate characters are powers of the same order-p
    root of unity with exponents q^i mod p; the induction is irreducible
    exactly when these are pairwise distinct, i.e. q has order 4 mod p.
    """
    orbit = [pow(params.q, i, params.p) for i in range(4)]
    return len(set(orbit)) == 4, orbit


def is_irreducible_module(spec, gens, cap=10**7):
    """No invariant line or plane (exhaustive scans)."""
    tables = field_tables(spec)
    gens = [tuple(g) for g in gens]
    if kernels.invariant_subspace(gens, 1, tables, cap) is not None:
        return False
    return kernels.invariant_subspace(gens, 2, tables, cap) is None


def local_euler_data(rep, alphas=None):
    """Scan the unramified-twist family {t, alpha * F}.

    Returns a list of (alpha_index, group_order, irreducible).  Invariant
    subspaces are insensitive to scaling F, so irreducibility is constant
    along the family; the scan verifies that directly.
    """
    spec = rep.params.field
    tables = field_tables(spec)
    if alphas is None:
        alphas = [spec.from_index(i) for i in range(1, tables.q)]
    out = []
    for a in alphas:
        idx = a.index if isinstance(a, ff.FieldElement) else spec.from_int(a).index
        if idx == 0:
            raise ValueError("twist must be invertible")
        fa = tuple(tables.mul[idx * tables.q + x] for x in rep.F.entries)
        closure = gsp4core.close_matrices(spec, [rep.t.entries, fa])
        closure.require_complete()
        irr = is_irreducible_module(spec, [rep.t.entries, fa])
        out.append((idx, closure.order, irr))
    return out


def tensor_indecomposable_evidence(rep):
    """Commutativity of the centralizer of the derived subgroup.

    A decomposition of the module as a tensor product of two planes would
    put a full 2x2 matrix algebra (noncommutative) inside that centralizer,
    so a commutative centralizer is positive evidence.  Returns
    (commutative?, centralizer_dimension).
    """
    spec = rep.params.field
    tables = field_tables(spec)
    gens = [rep.t.entries, rep.F.entries]
    inverses = [matops.mat_inv(g, 4, tables) for g in gens]
    comms = []
    for i, g in enumerate(gens):
        for j, h in enumerate(gens):
            if i == j:
                continue
            gh = matops.mat_mul(g, h, 4, tables)
            comms.append(matops.mat_mul(matops.mat_mul(gh, inverses[i], 4, tables),
                                        inverses[j], 4, tables))
    derived = gsp4core.close_matrices(spec, comms)
    derived.require_complete()
    rows = []
    for g in derived.generators:
        for i in range(4):
            for j in range(4):
                row = [0] * 16
                for k in range(4):
                    row[i * 4 + k] = tables.add[row[i * 4 + k] * tables.q
                                                + g[k * 4 + j]]
                    row[k * 4 + j] = tables.add[row[k * 4 + j] * tables.q
                                                + tables.neg[g[i * 4 + k]]]
                rows.append(tuple(row))
    cent = matops.nullspace(rows, 16, tables)
    commutative = True
    for a in cent:
        for b in cent:
            ab = matops.mat_mul(a, b, 4, tables)
            ba = matops.mat_mul(b, a, 4, tables)
            if ab != ba:
                commutative = False
                break
        if not commutative:
            break
    return commutative, len(cent)
