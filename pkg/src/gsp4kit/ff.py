"""Exact arithmetic in prime fields F_l and extensions F_{l^r}.

Elements are coordinate vectors in the power basis of a root of a monic
irreducible modulus over F_l.  All choices (default modulus, multiplicative
generator, embedding root) are deterministic, lexicographic-first, so that
downstream matrix constructions are reproducible bit for bit.

Polynomials over F_l are plain coefficient lists in little-endian order:
[a0, a1, ..., an] is a0 + a1*X + ... + an*X^n.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

from .errors import (
    IncompatibleFields,
    NoSuchRoot,
    NotPrime,
    ReducibleModulus,
    ZeroElement,
)

#: Hard cap on field sizes: l^r - 1 is factored by trial division, so the
#: toolkit targets desk-scale fields, not cryptographic sizes.
MAX_FIELD_ORDER = 2**63


def is_prime(n):
    """Trial-division primality check (desk-scale inputs)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n):
    """Factor n by trial division; returns {prime: exponent}."""
    if n >= MAX_FIELD_ORDER:
        raise ValueError(f"{n} exceeds the trial-division cap 2^63")
    factors = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


# -- polynomial helpers over F_l ---------------------------------------------

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(out)


def poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, c in enumerate(a):
        out[i] = c
    for i, c in enumerate(b):
        out[i] = (out[i] - c) % p
    return _trim(out)


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(out)


def poly_divmod(a, b, p):
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(list(a))
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = (a[-1] * inv_lead) % p
        q[shift] = coef
        for i, cb in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * cb) % p
        _trim(a)
    return _trim(q), a


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv_lead = pow(a[-1], p - 2, p)
        a = [(c * inv_lead) % p for c in a]
    return a


def poly_powmod(a, e, mod, p):
    result = [1]
    base = poly_mod(a, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(modulus, p):
    """Monic polynomial irreducibility over F_p.

    Checks that gcd(X^{p^d} - X, f) is trivial for every d up to deg(f)/2,
    which rules out all factors of degree <= deg(f)/2 (roots included).
    """
    r = len(modulus) - 1
    if r < 1:
        return False
    if r == 1:
        return True
    xq = [0, 1]
    for d in range(1, r // 2 + 1):
        xq = poly_powmod(xq, p, modulus, p)
        g = poly_gcd(poly_sub(xq, [0, 1], p), modulus, p)
        if g != [1]:
            return False
    return True


# -- field spec and elements ---------------------------------------------------

@dataclass(frozen=True)
class FieldSpec:
    """A finite field F_{l^r} presented by a monic irreducible modulus."""

    char: int
    degree: int
    modulus: tuple  # little-endian, length degree + 1, monic

    @property
    def order(self):
        return self.char**self.degree

    def zero(self):
        return FieldElement(self, (0,) * self.degree)

    def one(self):
        return self.from_int(1)

    def from_int(self, n):
        coeffs = [0] * self.degree
        coeffs[0] = n % self.char
        return FieldElement(self, tuple(coeffs))

    def from_coeffs(self, coeffs):
        coeffs = [c % self.char for c in coeffs]
        coeffs = coeffs[: self.degree] + [0] * (self.degree - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def from_index(self, idx):
        """Inverse of FieldElement.index: base-l digits, least significant first."""
        coeffs = []
        for _ in range(self.degree):
            coeffs.append(idx % self.char)
            idx //= self.char
        return FieldElement(self, tuple(coeffs))

    def elements(self):
        """All field elements in index order."""
        return (self.from_index(i) for i in range(self.order))

    def gen(self):
        """The power-basis root x (equals l for prime fields only as index)."""
        if self.degree == 1:
            return self.from_int(1)
        return self.from_index(self.char)

    def to_json(self):
        return {"char": self.char, "deg": self.degree, "modulus": list(self.modulus)}

    def __repr__(self):
        if self.degree == 1:
            return f"F_{self.char}"
        return f"F_{self.char}^{self.degree}"


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.spec.degree:
            raise ValueError("coefficient vector has wrong length")

    @property
    def index(self):
        """Integer encoding sum(coeffs[i] * l^i); used as table index."""
        idx = 0
        for c in reversed(self.coeffs):
            idx = idx * self.spec.char + c
        return idx

    def is_zero(self):
        return not any(self.coeffs)

    def _check(self, other):
        if not isinstance(other, FieldElement) or other.spec != self.spec:
            raise IncompatibleFields("elements of different fields")

    def __add__(self, other):
        self._check(other)
        p = self.spec.char
        return FieldElement(
            self.spec, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __sub__(self, other):
        self._check(other)
        p = self.spec.char
        return FieldElement(
            self.spec, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs))
        )

    def __neg__(self):
        p = self.spec.char
        return FieldElement(self.spec, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        p = self.spec.char
        prod = poly_mul(list(self.coeffs), list(other.coeffs), p)
        prod = poly_mod(prod, list(self.spec.modulus), p)
        return self.spec.from_coeffs(prod)

    def inverse(self):
        if self.is_zero():
            raise ZeroElement("zero has no inverse")
        # extended Euclid in F_l[X] against the modulus
        p = self.spec.char
        a, b = list(self.spec.modulus), _trim(list(self.coeffs))
        s0, s1 = [], [1]
        while b:
            q, rem = poly_divmod(a, b, p)
            a, b = b, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(q, s1, p), p)
        inv_lead = pow(a[-1], p - 2, p)
        s0 = [(c * inv_lead) % p for c in s0]
        return self.spec.from_coeffs(s0)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def to_json(self):
        d = self.spec.to_json()
        d["coeffs"] = list(self.coeffs)
        return d

    def __repr__(self):
        return f"{list(self.coeffs)} in {self.spec!r}"


def element_from_json(d):
    spec = make_field(d["char"], d["deg"], modulus=list(d["modulus"]))
    return spec.from_coeffs(d["coeffs"])


# -- operations ---------------------------------------------------------------

def make_field(ell, r, modulus=None):
    """Build a validated FieldSpec for F_{l^r}.

    Without an explicit modulus, monic degree-r polynomials are searched in
    increasing order of their base-l coefficient encoding (constant term least
    significant) and the first irreducible one is taken.
    """
    if not is_prime(ell):
        raise NotPrime(f"{ell} is not prime")
    if r < 1:
        raise ValueError("degree must be >= 1")
    if ell**r >= MAX_FIELD_ORDER:
        raise ValueError("field order exceeds the 2^63 desk-scale cap")
    if modulus is not None:
        modulus = [c % ell for c in modulus]
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise ReducibleModulus("modulus must be monic of degree r")
        if not is_irreducible(modulus, ell):
            raise ReducibleModulus(f"{modulus} is reducible over F_{ell}")
        return FieldSpec(ell, r, tuple(modulus))
    if r == 1:
        return FieldSpec(ell, 1, (0, 1))  # modulus X
    for n in range(ell**r):
        cand = []
        m = n
        for _ in range(r):
            cand.append(m % ell)
            m //= ell
        cand.append(1)
        if is_irreducible(cand, ell):
            return FieldSpec(ell, r, tuple(cand))
    raise ReducibleModulus("no irreducible modulus found")  # unreachable


def element_order(x):
    """Exact multiplicative order, by factoring l^r - 1 and descending."""
    if x.is_zero():
        raise ZeroElement("the zero element has no multiplicative order")
    n = x.spec.order - 1
    order = n
    for prime in factorize(n):
        while order % prime == 0 and (x ** (order // prime)) == x.spec.one():
            order //= prime
    return order


@functools.lru_cache(maxsize=None)
def multiplicative_generator(spec):
    """First element, in index order, of full multiplicative order."""
    target = spec.order - 1
    for idx in range(1, spec.order):
        x = spec.from_index(idx)
        if element_order(x) == target:
            return x
    raise ZeroElement("no generator found")  # unreachable for a field


def nth_root_of_unity(spec, n):
    """Deterministic element of exact order n: g^((l^r - 1)/n) for the
    lexicographically smallest generator g."""
    if n < 1:
        raise NoSuchRoot("order must be positive")
    q1 = spec.order - 1
    if q1 % n != 0:
        raise NoSuchRoot(f"{n} does not divide {q1}")
    if n == 1:
        return spec.one()
    return multiplicative_generator(spec) ** (q1 // n)


@functools.lru_cache(maxsize=None)
def _embedding_root(source, target):
    """Deterministically chosen root of the source modulus in the target."""
    p = source.char
    mod = list(source.modulus)
    for idx in range(target.order):
        alpha = target.from_index(idx)
        acc = target.zero()
        power = target.one()
        for c in mod:
            if c:
                acc = acc + target.from_int(c) * power
            power = power * alpha
        if acc.is_zero():
            return alpha
    raise IncompatibleFields("source modulus has no root in target")


def embed(x, target):
    """Image of x under the fixed embedding F_{l^r} -> F_{l^{rk}}."""
    source = x.spec
    if source == target:
        return x
    if source.char != target.char or target.degree % source.degree != 0:
        raise IncompatibleFields(
            f"no embedding {source!r} -> {target!r}: degree or characteristic mismatch"
        )
    alpha = _embedding_root(source, target)
    acc = target.zero()
    power = target.one()
    for c in x.coeffs:
        if c:
            acc = acc + target.from_int(c) * power
        power = power * alpha
    return acc
