"""Screening of compatible-system Frobenius data for exceptional primes.

Input is a family of integer quartics P_p(X) = charpoly(Frob_p) indexed by
good primes p, together with weight data (m1, m2) and a central character.
For each residue characteristic ell in a range, executable shadows of the
exceptional-image case analysis run over F_ell:

  * irreducibility witness: a single p with P_p irreducible mod ell proves
    residual irreducibility; absence is only a candidate flag,
  * induced test: traces vanishing mod ell at all primes inert in a
    candidate quadratic field,
  * cube-shape test: every P_p mod ell matching the symmetric-cube
    eigenvalue identities, gated on the weight relation m1 = 2*m2,
  * tame inertia patterns: the four diagonal possibilities and the minimal
    projective element order they force,
  * small-group exclusion: whether that minimal order rules out the known
    exceptional group orders.

Flags are one-sided: a cleared flag carries a witness and is a proof; a
raised flag only marks a candidate for exact downstream analysis.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from . import ff
from .errors import (
    HypothesisViolated,
    NoData,
    NoInertSamples,
    ShapeViolation,
    WeightViolation,
)
from .primes import kronecker, primes_up_to

SMALL_GROUP_ORDERS = (520, 1440, 1920, 3840, 5040)
DEFAULT_DISC_BOUND = 100
DEFAULT_SEED = 20240901


# -- system data -----------------------------------------------------------------

@dataclass(frozen=True)
class CompatibleSystemData:
    bad_primes: frozenset
    conductor: int
    weights: tuple  # (m1, m2)
    central_character: dict  # prime -> +-1 (or constant); empty means trivial
    frobenius: dict  # prime -> (c4, c3, c2, c1, c0), c4 = 1

    @property
    def similitude_weight(self):
        return self.weights[0] + self.weights[1] + 3

    def omega(self, p):
        return self.central_character.get(p, 1)

    def trace(self, p):
        return -self.frobenius[p][1]

    def sample_primes(self):
        return sorted(self.frobenius)

    def to_json(self):
        return {
            "S": sorted(self.bad_primes),
            "conductor": self.conductor,
            "weights": list(self.weights),
            "central_character": (
                {str(p): v for p, v in self.central_character.items()}
                if self.central_character else "trivial"
            ),
            "frobenius": {str(p): list(c) for p, c in sorted(self.frobenius.items())},
        }


def expected_similitude(p, omega_p, w):
    return omega_p * p**w


def ingest(source):
    """Validate and load a system from a dict, JSON text, or file path.

    Every quartic must satisfy the symplectic functional equation
    (1, -a, b, -a*e, e^2) with e = omega(p) * p^(m1+m2+3); the first
    offender is named in the error.
    """
    if isinstance(source, str):
        try:
            data = json.loads(source)
        except json.JSONDecodeError:
            with open(source) as fh:
                data = json.load(fh)
    else:
        data = source
    try:
        s = frozenset(int(p) for p in data["S"])
        conductor = int(data["conductor"])
        m1, m2 = (int(x) for x in data["weights"])
        frob_raw = data["frobenius"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ShapeViolation(f"malformed system file: {exc}") from exc
    if m1 < m2 or m2 < 0:
        raise WeightViolation(f"weights must satisfy m1 >= m2 >= 0, got ({m1}, {m2})")
    cc_raw = data.get("central_character", "trivial")
    central = {}
    if cc_raw != "trivial":
        central = {int(p): int(v) for p, v in cc_raw.items()}
        vals = set(central.values())
        if not (vals <= {1, -1} or len(vals) == 1):
            bad = sorted(central)[0]
            raise ShapeViolation(
                "central character must be +-1-valued or constant", prime=bad
            )
    w = m1 + m2 + 3
    frobenius = {}
    for p_str, coeffs in frob_raw.items():
        p = int(p_str)
        if not ff.is_prime(p) or p in s:
            raise ShapeViolation(f"frobenius index {p} is not a good prime", prime=p)
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != 5 or coeffs[0] != 1:
            raise ShapeViolation(f"P_{p} is not a monic quartic", prime=p)
        e = expected_similitude(p, central.get(p, 1), w)
        c4, c3, c2, c1, c0 = coeffs
        if c0 != e * e or c1 != c3 * e:
            raise ShapeViolation(
                f"P_{p} violates the symplectic shape with e = {e}", prime=p
            )
        frobenius[p] = coeffs
    for divisor in ff.factorize(conductor):
        if divisor not in s:
            raise ShapeViolation(
                f"conductor prime {divisor} is not in S", prime=divisor
            )
    return CompatibleSystemData(
        bad_primes=s,
        conductor=conductor,
        weights=(m1, m2),
        central_character=central,
        frobenius=frobenius,
    )


# -- synthetic systems -------------------------------------------------------------

def make_trivial_system(m1=1, m2=0, prime_bound=200):
    """Fully split quartics (X-1)(X-p^(m2+1))(X-p^(m1+2))(X-p^(m1+m2+3))."""
    frob = {}
    for p in primes_up_to(prime_bound):
        roots = [1, p ** (m2 + 1), p ** (m1 + 2), p ** (m1 + m2 + 3)]
        frob[p] = _from_roots(roots)
    return CompatibleSystemData(
        bad_primes=frozenset(),
        conductor=1,
        weights=(m1, m2),
        central_character={},
        frobenius=frob,
    )


def _from_roots(roots):
    coeffs = [1]
    for r in roots:
        coeffs = [c for c in coeffs] + [0]
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] -= r * coeffs[i - 1]
    return tuple(coeffs)


def symm3_quartic(a, b):
    """Quartic with eigenvalue multiset {x^3, x^2 y, x y^2, y^3} where
    x + y = a, x*y = b: coefficients from the frozen cube identities."""
    e1 = a**3 - 2 * a * b
    e2 = b * (a * a - b) * (a * a - 2 * b)
    e3 = b**3 * e1
    e4 = b**6
    return (1, -e1, e2, -e3, e4)


def make_symm3_system(two_dim_data, m2):
    """System whose quartics are symmetric cubes of 2x2 data p -> (a_p, b_p);
    weights are forced to (2*m2, m2).  Requires b_p = +-p^(m2+1)."""
    frob = {}
    central = {}
    for p, (a, b) in two_dim_data.items():
        if abs(b) != p ** (m2 + 1):
            raise ShapeViolation(
                f"b_{p} = {b} is not +-{p}^{m2 + 1}", prime=p
            )
        frob[p] = symm3_quartic(a, b)
        central[p] = 1 if b > 0 else -1
    if set(central.values()) == {1}:
        central = {}
    return CompatibleSystemData(
        bad_primes=frozenset(),
        conductor=1,
        weights=(2 * m2, m2),
        central_character=central,
        frobenius=frob,
    )


def make_generic_system(seed=DEFAULT_SEED, m1=1, m2=0, prime_bound=200):
    """Seed-pinned pseudo-random symplectic quartics: a_p, b_p drawn in
    Weil-style ranges, trivial central character."""
    rng = random.Random(seed)
    w = m1 + m2 + 3
    frob = {}
    for p in primes_up_to(prime_bound):
        bound_a = max(4 * int(p ** (w / 2)), 10)
        a = rng.randrange(-bound_a, bound_a + 1)
        b = rng.randrange(-bound_a * bound_a, bound_a * bound_a + 1)
        e = p**w
        frob[p] = (1, -a, b, -a * e, e * e)
    return CompatibleSystemData(
        bad_primes=frozenset(),
        conductor=1,
        weights=(m1, m2),
        central_character={},
        frobenius=frob,
    )


# -- per-ell tests ------------------------------------------------------------------

def _poly_mod(coeffs, ell):
    """Little-endian coefficient list of P mod ell from (c4, .., c0)."""
    return [c % ell for c in reversed(coeffs)]


def factor_signature(coeffs, ell):
    """Rough factorization type of a monic quartic over F_ell: the number of
    roots (with multiplicity) plus an irreducibility bit."""
    poly = _poly_mod(coeffs, ell)
    roots = 0
    for x in range(ell):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % ell
        if acc == 0:
            roots += 1
    if roots:
        return f"{roots} roots"
    return "irreducible" if ff.is_irreducible(poly, ell) else "0 roots reducible"


def irreducibility_witness(system, ell):
    """Smallest sampled p with P_p irreducible mod ell (a proof of residual
    irreducibility), or None with factorization statistics."""
    stats = {}
    found = None
    samples = [p for p in system.sample_primes() if p != ell]
    if not samples:
        raise NoData("no sampled primes")
    for p in samples:
        sig = factor_signature(system.frobenius[p], ell)
        stats[sig] = stats.get(sig, 0) + 1
        if found is None and sig == "irreducible":
            found = p
    return found, stats


def fundamental_discriminants(primes, bound=DEFAULT_DISC_BOUND, extra=()):
    """Fundamental discriminants of the quadratic fields ramified only at
    the given primes (and possibly infinity), with |D| <= bound."""
    base = sorted(set(primes) | set(extra))
    out = set()
    for mask in range(1, 2 ** (len(base) + 1)):
        d = 1
        if mask & 1:
            d = -1
        for i, pr in enumerate(base):
            if mask & (2 << i):
                d *= pr
        if d == 1:
            continue
        disc = d if d % 4 == 1 else 4 * d
        if abs(disc) <= bound:
            out.add(disc)
    return sorted(out, key=lambda x: (abs(x), x))


def induced_test(system, ell, discriminants=None, disc_bound=DEFAULT_DISC_BOUND):
    """Per-discriminant check that all sampled traces at inert primes vanish
    mod ell; returns (flagged discriminants, evidence)."""
    if discriminants is None:
        discriminants = fundamental_discriminants(
            system.bad_primes, bound=disc_bound, extra=()
        )
        if not discriminants:
            # an unramified-outside-S field needs ramification somewhere;
            # with empty S only the archimedean place remains
            discriminants = [-4]
    flagged = []
    evidence = {}
    for disc in discriminants:
        inert = [p for p in system.sample_primes()
                 if p != ell and kronecker(disc, p) == -1]
        if not inert:
            evidence[disc] = "no inert samples"
            continue
        vanish = [p for p in inert if system.trace(p) % ell == 0]
        if len(vanish) == len(inert):
            flagged.append(disc)
            evidence[disc] = f"all {len(inert)} inert traces vanish"
        else:
            bad = next(p for p in inert if system.trace(p) % ell != 0)
            evidence[disc] = f"witness p = {bad}, trace != 0 mod {ell}"
    return flagged, evidence


def symm3_shape_mod(coeffs, ell):
    """(t, d) over F_ell with the quartic matching the cube eigenvalue
    identities, or None.  Same identities as the 4x4 recognizer's first
    stage, in plain modular arithmetic."""
    c4, c3, c2, c1, c0 = (c % ell for c in coeffs)
    e1, e2, e3, e4 = (-c3) % ell, c2, (-c1) % ell, c0
    for d in range(1, ell):
        if pow(d, 6, ell) != e4:
            continue
        if (pow(d, 3, ell) * e1) % ell != e3:
            continue
        for t in range(ell):
            if (t**3 - 2 * t * d) % ell != e1:
                continue
            if (d * (t * t - d) * (t * t - 2 * d)) % ell == e2:
                return t, d
    return None


def symm3_test(system, ell):
    """(flag, evidence): weight gate m1 = 2*m2, then the shape gate over
    every sampled prime."""
    m1, m2 = system.weights
    if m1 != 2 * m2:
        return False, {"weight_gate": f"m1 = {m1} != 2*m2 = {2 * m2}"}
    for p in system.sample_primes():
        if p == ell:
            continue
        if symm3_shape_mod(system.frobenius[p], ell) is None:
            return False, {"weight_gate": "passed",
                           "shape_witness": f"P_{p} mod {ell} off-shape"}
    return True, {"weight_gate": "passed", "shape_gate": "all samples on-shape"}


# -- inertia patterns ----------------------------------------------------------------

@dataclass(frozen=True)
class InertiaPattern:
    kind: str
    exponents: tuple  # entries {"level": 1, "exp": e} or {"level": 2, "a": a, "b": b}
    min_projective_order: int

    def psi_exponents(self, ell):
        """Diagonal exponents lifted to the order-(ell^2 - 1) character."""
        out = []
        for e in self.exponents:
            if e["level"] == 1:
                out.append((e["exp"] * (ell + 1)) % (ell * ell - 1))
            else:
                out.append((e["a"] + e["b"] * ell) % (ell * ell - 1))
        return tuple(sorted(out))


def _projective_diag_order(psi_exps, modulus):
    from math import gcd
    g = 0
    base = psi_exps[0]
    for e in psi_exps[1:]:
        g = gcd(g, (e - base) % modulus)
    g = gcd(g, modulus)
    return modulus // g if g else 1


def inertia_patterns(m1, m2, ell):
    """The four tame-inertia diagonal patterns with exponents substituted,
    each carrying the projective order of the diagonal element it forces."""
    if ell - 1 <= m1 + m2 + 3:
        raise HypothesisViolated(
            f"need ell - 1 > m1 + m2 + 3, got ell = {ell}, m1 + m2 + 3 = {m1 + m2 + 3}"
        )
    w = m1 + m2 + 3
    lv1 = lambda e: {"level": 1, "exp": e}
    lv2 = lambda a, b: {"level": 2, "a": a, "b": b}
    raw = [
        ("ordinary", (lv1(0), lv1(m2 + 1), lv1(m1 + 2), lv1(w))),
        ("level2-top", (lv2(w, 0), lv2(0, w), lv1(m2 + 1), lv1(m1 + 2))),
        ("level2-middle", (lv1(0), lv1(w), lv2(m2 + 1, m1 + 2), lv2(m1 + 2, m2 + 1))),
        ("level2-both", (lv2(w, 0), lv2(0, w), lv2(m2 + 1, m1 + 2), lv2(m1 + 2, m2 + 1))),
    ]
    out = []
    modulus = ell * ell - 1
    for kind, exps in raw:
        pat = InertiaPattern(kind=kind, exponents=exps, min_projective_order=0)
        order = _projective_diag_order(pat.psi_exponents(ell), modulus)
        out.append(InertiaPattern(kind=kind, exponents=exps,
                                  min_projective_order=order))
    return out


def small_group_exclusion(m1, m2, ell, orders=SMALL_GROUP_ORDERS):
    """(flag, evidence): the flag is raised when the minimal projective
    inertia element order fails to exclude some listed group order.

    Group exponents are unknown without fixing the groups, so divisibility
    by the order itself is used (conservative: can over-flag, never
    under-exclude)."""
    patterns = inertia_patterns(m1, m2, ell)
    min_order = min(p.min_projective_order for p in patterns)
    culprit = min(patterns, key=lambda p: p.min_projective_order)
    compatible = [o for o in orders if o % min_order == 0]
    if compatible:
        return True, {"min_order": min_order, "pattern": culprit.kind,
                      "undivided_orders": compatible}
    return False, {"min_order": min_order, "pattern": culprit.kind,
                   "excludes": list(orders)}


# -- the report ------------------------------------------------------------------------

@dataclass(frozen=True)
class ScreeningReport:
    system: CompatibleSystemData
    ell_range: tuple
    entries: tuple  # per-ell dicts

    def to_json(self):
        return {
            "ell_range": list(self.ell_range),
            "weights": list(self.system.weights),
            "entries": [dict(e) for e in self.entries],
        }

    def table(self):
        lines = [f"{'ell':>5}  flags"]
        for e in self.entries:
            flags = ", ".join(e["flags"]) if e["flags"] else "-"
            lines.append(f"{e['ell']:>5}  {flags}")
        return "\n".join(lines)


def screen(system, ell_min, ell_max, disc_bound=DEFAULT_DISC_BOUND):
    """Run every per-ell test over the prime range; deterministic."""
    entries = []
    for ell in primes_up_to(ell_max):
        if ell < ell_min or ell in system.bad_primes:
            continue
        flags = []
        evidence = {}
        witness, stats = irreducibility_witness(system, ell)
        if witness is None:
            flags.append("PossiblyReducible")
            evidence["reducible"] = {"factor_stats": stats}
        else:
            evidence["irreducible_witness"] = witness
        ind_flags, ind_ev = induced_test(system, ell, disc_bound=disc_bound)
        for disc in ind_flags:
            flags.append(f"PossiblyInduced({disc})")
        evidence["induced"] = {str(k): v for k, v in ind_ev.items()}
        s3, s3_ev = symm3_test(system, ell)
        if s3:
            flags.append("PossiblySymm3")
        evidence["symm3"] = s3_ev
        m1, m2 = system.weights
        try:
            sg, sg_ev = small_group_exclusion(m1, m2, ell)
            if sg:
                flags.append("PossiblySmallGroup")
            evidence["small_group"] = sg_ev
        except HypothesisViolated as exc:
            flags.append("WeightDegenerate")
            evidence["small_group"] = {"hypothesis": str(exc)}
        entries.append({"ell": ell, "flags": flags, "evidence": evidence})
    return ScreeningReport(system=system, ell_range=(ell_min, ell_max),
                           entries=tuple(entries))
