"""Constructive prime searches and certificate verification.

Two search targets: a single pair (p, q) with q of multiplicative order 4
modulo p and q splitting completely in an explicit multiquadratic field,
and a quadruple (p, 281, q, q') coupling two such pairs through a
quadratic-residue condition.  Searches emit certificates; an independent
verifier recomputes every congruence from scratch (trial-division
primality, direct Legendre symbols), so search bugs cannot self-certify.

"Splits completely in Q(i, sqrt(p_1), ..., sqrt(p_m))" is used throughout
in its decidable form: q = 1 mod 4 and each p_i a quadratic residue mod q,
with p_i = 2 meaning q = +-1 mod 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ff
from .errors import PrimeClash, SearchExhausted

#: Total candidates examined before a search gives up.
DEFAULT_SEARCH_CAP = 10**9
#: Candidates for the coupled second prime before the first is re-drawn.
INNER_SEARCH_CAP = 10**6

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def miller_rabin(n):
    """Deterministic primality for n < 2^64 (fixed witness set)."""
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def legendre(a, p):
    """Legendre symbol (a|p) for an odd prime p, values in {-1, 0, 1}."""
    t = pow(a % p, (p - 1) // 2, p)
    if t == p - 1:
        return -1
    return t


def kronecker(a, n):
    """Kronecker symbol (a|n), the full multiplicative extension."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -1
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def primes_up_to(bound):
    """Increasing list of primes <= bound (simple sieve)."""
    if bound < 2:
        return []
    flags = bytearray([1]) * (bound + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if flags[i]:
            flags[i * i::i] = bytearray(len(flags[i * i::i]))
    return [i for i in range(2, bound + 1) if flags[i]]


def splits_at(divisor_prime, q):
    """q splits in Q(sqrt(divisor_prime)): residue condition."""
    if divisor_prime == 2:
        return q % 8 in (1, 7)
    return legendre(divisor_prime, q) == 1


def sqrt_minus_one(p):
    """Smallest square root of -1 modulo a prime p = 1 mod 4."""
    if p % 4 != 1:
        raise ValueError(f"-1 is not a square mod {p}")
    for a in range(2, p):
        if legendre(a, p) == -1:
            s = pow(a, (p - 1) // 4, p)
            return min(s, p - s)
    raise ValueError(f"no square root of -1 mod {p}")


# -- certificates ----------------------------------------------------------------

@dataclass(frozen=True)
class PairCertificate:
    N: int
    p: int
    q: int
    checked_conditions: tuple = ()

    def to_json(self):
        return {"type": "pair", "N": self.N, "p": self.p, "q": self.q,
                "checked_conditions": list(self.checked_conditions)}


@dataclass(frozen=True)
class QuadCertificate:
    N: int
    k: int
    M: int
    p: int
    q: int
    q_prime: int
    p_prime: int = 281

    def to_json(self):
        return {"type": "quad", "N": self.N, "k": self.k, "M": self.M,
                "p": self.p, "p_prime": self.p_prime,
                "q": self.q, "q_prime": self.q_prime}


def certificate_from_json(d):
    if d.get("type") == "pair":
        return PairCertificate(N=d["N"], p=d["p"], q=d["q"],
                               checked_conditions=tuple(d.get("checked_conditions", ())))
    if d.get("type") == "quad":
        return QuadCertificate(N=d["N"], k=d["k"], M=d["M"], p=d["p"],
                               q=d["q"], q_prime=d["q_prime"],
                               p_prime=d.get("p_prime", 281))
    raise ValueError(f"unknown certificate type {d.get('type')!r}")


# -- searches --------------------------------------------------------------------

def _next_prime_1mod4(start, exclude=(), cap=DEFAULT_SEARCH_CAP):
    n = start
    seen = 0
    while seen < cap:
        if n % 4 == 1 and n not in exclude and miller_rabin(n):
            return n
        n += 1
        seen += 1
    raise SearchExhausted(f"no prime = 1 mod 4 found above {start}",
                          progress={"last": n})


def _order4_progression(p, start):
    """Ascending integers > start that are 1 mod 4 and +-sqrt(-1) mod p:
    the cheap congruences are folded into the iteration step."""
    s = sqrt_minus_one(p)
    modulus = 4 * p
    residues = sorted(r for r in range(modulus)
                      if r % 4 == 1 and r % p in (s, p - s))
    base = (start // modulus) * modulus
    while True:
        for r in residues:
            n = base + r
            if n > start:
                yield n
        base += modulus


def search_pair(N, p_min=None, cap=DEFAULT_SEARCH_CAP):
    """Smallest (p, q): p = 1 mod 4 above max(N, 7) (or p_min), then the
    smallest prime q >= 5 of order 4 mod p splitting completely in the
    multiquadratic field over the prime divisors of N."""
    if N < 1:
        raise ValueError("N must be >= 1")
    radical = sorted(ff.factorize(N))
    start = max(N, 7) + 1
    if p_min is not None:
        start = max(start, p_min)
    p = _next_prime_1mod4(start, cap=cap)
    seen = 0
    for q in _order4_progression(p, 4):
        if seen >= cap:
            raise SearchExhausted(
                f"no q found for p = {p} within {cap} candidates",
                progress={"p": p, "last_q": q},
            )
        seen += 1
        if all(splits_at(pi, q) for pi in radical) and miller_rabin(q):
            return PairCertificate(N=N, p=p, q=q)


def search_quad(N, k, cap=DEFAULT_SEARCH_CAP, inner_cap=INNER_SEARCH_CAP):
    """Coupled search: M = max(N, 24k+1) + 1, the smallest valid p, then
    ascending q and q' with q' a quadratic residue mod q.  When no q'
    matches a given q within inner_cap candidates, the next q is tried."""
    if N < 1 or k < 1:
        raise ValueError("N and k must be >= 1")
    if N % 281 == 0:
        raise PrimeClash("281 divides N")
    M = max(N, 24 * k + 1) + 1
    p = _next_prime_1mod4(max(M, 7) + 1, exclude=(281,), cap=cap)
    small = primes_up_to(M)

    seen = 0
    for q in _order4_progression(p, M):
        if seen >= cap:
            raise SearchExhausted(
                f"quad search exhausted after {cap} q candidates",
                progress={"M": M, "p": p, "last_q": q},
            )
        seen += 1
        if q in (p, 281) or not all(splits_at(pi, q) for pi in small):
            continue
        if not miller_rabin(q):
            continue
        # coupled inner search: only +-sqrt(-1) mod 281 residues are visited
        inner = 0
        for qp in _order4_progression(281, M):
            if inner >= inner_cap:
                break  # give up on this q, advance the outer sieve
            inner += 1
            if qp in (p, 281, q):
                continue
            if not all(splits_at(pi, qp) for pi in small if pi != 281):
                continue
            if miller_rabin(qp) and legendre(qp, q) == 1:
                return QuadCertificate(N=N, k=k, M=M, p=p, q=q, q_prime=qp)


# -- independent verification ----------------------------------------------------

def _cond(name, ok, detail=""):
    return {"name": name, "pass": bool(ok), "detail": detail}


def verify_certificate(cert):
    """Recompute every condition from scratch (trial-division primality,
    direct Legendre symbols); returns {"ok": bool, "conditions": [...]}."""
    if isinstance(cert, PairCertificate):
        conds = _verify_pair(cert)
    elif isinstance(cert, QuadCertificate):
        conds = _verify_quad(cert)
    else:
        raise TypeError(f"not a certificate: {cert!r}")
    return {"ok": all(c["pass"] for c in conds), "conditions": conds}


def _verify_pair(c):
    radical = sorted(ff.factorize(c.N)) if c.N > 1 else []
    out = [
        _cond("p prime", ff.is_prime(c.p), f"p = {c.p}"),
        _cond("q prime", ff.is_prime(c.q), f"q = {c.q}"),
        _cond("p = 1 mod 4", c.p % 4 == 1, f"{c.p} mod 4 = {c.p % 4}"),
        _cond("p > max(N, 7)", c.p > max(c.N, 7), f"N = {c.N}"),
        _cond("q >= 5", c.q >= 5),
        _cond("q^2 = -1 mod p", pow(c.q, 2, c.p) == c.p - 1,
              f"q^2 mod p = {pow(c.q, 2, c.p)}"),
        _cond("q = 1 mod 4", c.q % 4 == 1, f"{c.q} mod 4 = {c.q % 4}"),
    ]
    for pi in radical:
        out.append(_cond(f"splitting at {pi}", splits_at(pi, c.q),
                         f"({pi}|{c.q})"))
    return out


def _verify_quad(c):
    small = primes_up_to(c.M)
    out = [
        _cond("N >= 1 and k >= 1", c.N >= 1 and c.k >= 1),
        _cond("281 does not divide N", c.N % 281 != 0),
        _cond("M > N and M > 24k+1", c.M > c.N and c.M > 24 * c.k + 1,
              f"M = {c.M}"),
        _cond("M = max(N, 24k+1) + 1 (pinned minimal choice)",
              c.M == max(c.N, 24 * c.k + 1) + 1, f"M = {c.M}"),
        _cond("p prime, = 1 mod 4, > max(M,7), != 281",
              ff.is_prime(c.p) and c.p % 4 == 1
              and c.p > max(c.M, 7) and c.p != 281, f"p = {c.p}"),
        _cond("p' = 281 prime", c.p_prime == 281 and ff.is_prime(281)),
        _cond("q prime", ff.is_prime(c.q), f"q = {c.q}"),
        _cond("q' prime", ff.is_prime(c.q_prime), f"q' = {c.q_prime}"),
        _cond("{p, 281, q, q'} pairwise distinct",
              len({c.p, 281, c.q, c.q_prime}) == 4),
        _cond("(i) q, q' > M", c.q > c.M and c.q_prime > c.M),
        _cond("(ii) Legendre(q'|q) = 1", legendre(c.q_prime, c.q) == 1,
              f"({c.q_prime}|{c.q}) = {legendre(c.q_prime, c.q)}"),
        _cond("(iii) q^2 = -1 mod p and q'^2 = -1 mod 281",
              pow(c.q, 2, c.p) == c.p - 1
              and pow(c.q_prime, 2, 281) == 280),
        _cond("(iv) q = 1 mod 4 and all p_i <= M split in Q(sqrt(p_i))",
              c.q % 4 == 1 and all(splits_at(pi, c.q) for pi in small)),
        _cond("(v) q' = 1 mod 4 and all p'_i <= M, p'_i != 281, split",
              c.q_prime % 4 == 1
              and all(splits_at(pi, c.q_prime) for pi in small if pi != 281)),
    ]
    return out
