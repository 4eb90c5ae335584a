"""Lookup tables for fast field arithmetic in the matrix kernels.

A field of order q is flattened to indices 0..q-1 (base-l digits of the
power-basis coordinates).  Addition and multiplication become flat q*q
tables, which both the Cython kernel and the pure-Python fallback consume.
"""

from __future__ import annotations

import functools
from array import array

from . import ff
from .errors import FieldTooLarge, ZeroElement

#: Largest field order for which tables are built (q*q entries each).
TABLE_CAP = 4096


@functools.lru_cache(maxsize=None)
def field_tables(spec):
    return FieldTables(spec)


class FieldTables:
    """Flat add/mul/neg/inv tables for a FieldSpec."""

    def __init__(self, spec):
        q = spec.order
        if q > TABLE_CAP:
            raise FieldTooLarge(
                f"field of order {q} exceeds the table cap {TABLE_CAP}"
            )
        self.spec = spec
        self.q = q
        elems = [spec.from_index(i) for i in range(q)]
        self.elems = elems
        add = array("i", bytes(0))
        mul = array("i", bytes(0))
        for a in elems:
            row_a = [(a + b).index for b in elems]
            add.extend(row_a)
            row_m = [(a * b).index for b in elems]
            mul.extend(row_m)
        self.add = add
        self.mul = mul
        self.neg = array("i", [(-a).index for a in elems])
        inv = array("i", [0] * q)
        for i in range(1, q):
            inv[i] = elems[i].inverse().index
        self.inv = inv
        self.one = spec.one().index

    def element(self, idx):
        return self.elems[idx]

    def pow(self, idx, e):
        if e < 0:
            if idx == 0:
                raise ZeroElement("zero has no inverse")
            idx, e = self.inv[idx], -e
        result = self.one
        q, mul = self.q, self.mul
        while e:
            if e & 1:
                result = mul[result * q + idx]
            idx = mul[idx * q + idx]
            e >>= 1
        return result

    @functools.cached_property
    def cube_roots(self):
        """cube_roots[y] = sorted list of x with x^3 = y."""
        roots = [[] for _ in range(self.q)]
        for x in range(self.q):
            roots[self.pow(x, 3)].append(x)
        return roots

    @functools.cached_property
    def order(self):
        """order[x] = multiplicative order (0 for x = 0)."""
        out = [0] * self.q
        for i in range(1, self.q):
            out[i] = ff.element_order(self.elems[i])
        return out
