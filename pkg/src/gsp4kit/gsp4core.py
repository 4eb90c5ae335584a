"""GSp(4) over a finite field with the fixed antidiagonal symplectic form.

The form is the 4x4 block matrix [[0, J], [-J, 0]] with J the 2x2
antidiagonal unit.  Group elements carry their similitude factor c
(g^T M g = c*M) computed and validated at construction.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import ff, matops
from .backend import kernels
from .errors import NotSimilitude, TruncatedClosure
from .tables import field_tables

#: Default cap on closure size (desk-scale groups).
DEFAULT_CLOSURE_CAP = 10**7


def canonical_form_entries(spec):
    """Index-encoded entries of the canonical form [[0, J], [-J, 0]]."""
    one = spec.one().index
    neg_one = (-spec.one()).index
    m = [[0] * 4 for _ in range(4)]
    m[0][3] = one
    m[1][2] = one
    m[2][1] = neg_one
    m[3][0] = neg_one
    return tuple(x for row in m for x in row)


@dataclass(frozen=True)
class SymplecticForm:
    spec: ff.FieldSpec
    entries: tuple  # flat 4x4 of element indices

    def __post_init__(self):
        tables = field_tables(self.spec)
        m = self.entries
        neg = tables.neg
        for i in range(4):
            if m[i * 4 + i] != 0:
                raise ValueError("form must have zero diagonal")
            for j in range(4):
                if m[i * 4 + j] != neg[m[j * 4 + i]]:
                    raise ValueError("form must be alternating")
        if matops.det(m, 4, tables) == 0:
            raise ValueError("form must be nondegenerate")


def canonical_form(spec):
    return SymplecticForm(spec, canonical_form_entries(spec))


def similitude_factor(entries, spec, form_entries=None):
    """The factor c with g^T M g = c*M, or NotSimilitude."""
    tables = field_tables(spec)
    m = form_entries or canonical_form_entries(spec)
    gt = matops.transpose(entries, 4)
    congr = matops.mat_mul(matops.mat_mul(gt, m, 4, tables), entries, 4, tables)
    c = None
    q, mul, inv = tables.q, tables.mul, tables.inv
    for pos in range(16):
        if m[pos] != 0:
            c = mul[congr[pos] * q + inv[m[pos]]]
            break
    if c == 0 or congr != matops.mat_scale(m, c, tables):
        raise NotSimilitude("matrix does not rescale the symplectic form")
    return c


@dataclass(frozen=True)
class GroupElement:
    """A 4x4 similitude with cached similitude factor (index-encoded)."""

    spec: ff.FieldSpec
    entries: tuple
    similitude: int = field(default=-1)

    def __post_init__(self):
        if self.similitude < 0:
            object.__setattr__(
                self, "similitude", similitude_factor(self.entries, self.spec)
            )

    def matrix(self):
        """Entries as FieldElement rows."""
        return [
            [self.spec.from_index(self.entries[i * 4 + j]) for j in range(4)]
            for i in range(4)
        ]

    def to_json(self):
        return [[list(self.spec.from_index(self.entries[i * 4 + j]).coeffs)
                 for j in range(4)] for i in range(4)]


def element_from_rows(spec, rows):
    """Build a GroupElement from rows of FieldElements (or ints)."""
    flat = []
    for row in rows:
        for x in row:
            if isinstance(x, ff.FieldElement):
                flat.append(x.index)
            else:
                flat.append(spec.from_int(x).index)
    return GroupElement(spec, tuple(flat))


@dataclass(frozen=True)
class SubgroupClosure:
    spec: ff.FieldSpec
    generators: tuple  # of flat entry tuples
    elements: tuple  # deterministic BFS order, identity first
    order: int
    truncated: bool
    dim: int = 4

    @property
    def element_set(self):
        return set(self.elements)

    def require_complete(self):
        if self.truncated:
            raise TruncatedClosure(
                f"closure truncated at {self.order} elements"
            )


def close_matrices(spec, entry_tuples, cap=DEFAULT_CLOSURE_CAP, dim=4):
    """Breadth-first closure of arbitrary invertible matrices (no similitude
    requirement); used directly by the 2x2 sub-classifier."""
    tables = field_tables(spec)
    elements, truncated = kernels.close_group(list(entry_tuples), dim, tables, cap)
    return SubgroupClosure(
        spec=spec,
        generators=tuple(entry_tuples),
        elements=tuple(elements),
        order=len(elements),
        truncated=truncated,
        dim=dim,
    )


def close_subgroup(gens, cap=DEFAULT_CLOSURE_CAP):
    """Closure of a list of GroupElements sharing a FieldSpec."""
    if not gens:
        raise ValueError("need at least one generator")
    spec = gens[0].spec
    if any(g.spec != spec for g in gens):
        raise ValueError("generators must share a field")
    return close_matrices(spec, [g.entries for g in gens], cap=cap, dim=4)


def sp4_order(q):
    """|Sp(4, F_q)| = q^4 (q^2 - 1)(q^4 - 1) for a prime power q."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    fac = ff.factorize(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    return q**4 * (q**2 - 1) * (q**4 - 1)


def gsp4_order(q):
    """|GSp(4, F_q)| = (q - 1) |Sp(4, F_q)|."""
    return (q - 1) * sp4_order(q)


def scalar_count(closure):
    """Number of scalar matrices a*I in the closure."""
    tables = field_tables(closure.spec)
    n = closure.dim
    count = 0
    members = closure.element_set
    for a in range(1, tables.q):
        if matops.scalar(n, tables, a) in members:
            count += 1
    return count


def projective_order(closure):
    """Order of the image in PGSp(4): |G| / #scalars."""
    closure.require_complete()
    return closure.order // scalar_count(closure)


def element_orders_histogram(closure):
    closure.require_complete()
    tables = field_tables(closure.spec)
    return kernels.orders_histogram(list(closure.elements), closure.dim, tables)


def symplectic_transvection(spec, v, c=1):
    """T(x) = x + c * <x, v> * v, a symplectic transvection for the
    canonical form (valid in every characteristic)."""
    tables = field_tables(spec)
    m = canonical_form_entries(spec)
    vec = [spec.from_int(x).index if isinstance(x, int) else x.index for x in v]
    jv = matops.mat_vec(m, vec, 4, tables)
    cidx = spec.from_int(c).index if isinstance(c, int) else c.index
    q, mul, add = tables.q, tables.mul, tables.add
    ident = matops.identity(4, tables)
    out = list(ident)
    for i in range(4):
        for j in range(4):
            t = mul[cidx * q + mul[vec[i] * q + jv[j]]]
            out[i * 4 + j] = add[out[i * 4 + j] * q + t]
    return GroupElement(spec, tuple(out))


def sp4_transvection_generators(spec):
    """Transvections T_v(1) over all projective lines; generates Sp(4, q)."""
    gens = []
    seen = set()
    q = spec.order
    for idx in range(1, q**4):
        vec = []
        m = idx
        for _ in range(4):
            vec.append(m % q)
            m //= q
        # canonical representative: first nonzero coordinate equals 1
        first = next(x for x in vec if x != 0)
        if first != spec.one().index:
            continue
        key = tuple(vec)
        if key in seen:
            continue
        seen.add(key)
        gens.append(symplectic_transvection(spec, [spec.from_index(x) for x in vec]))
    return gens


def generators_to_json(spec, gens):
    return {
        "field": spec.to_json(),
        "generators": [
            g.to_json() if isinstance(g, GroupElement)
            else GroupElement(spec, g).to_json()
            for g in gens
        ],
    }


def generators_from_json(data):
    f = data["field"]
    spec = ff.make_field(f["char"], f["deg"], modulus=list(f["modulus"]))
    gens = []
    for mat in data["generators"]:
        rows = [[spec.from_coeffs(entry) for entry in row] for row in mat]
        gens.append(element_from_rows(spec, rows))
    return spec, gens


def load_generators(path):
    with open(path) as fh:
        return generators_from_json(json.load(fh))
