import json

import pytest
from hypothesis import given, settings, strategies as st

from gsp4kit import aschbacher, ff, matops, screener
from gsp4kit.errors import HypothesisViolated, NoData, ShapeViolation, WeightViolation
from gsp4kit.tables import field_tables


def _system_dict(frob, weights=(1, 0), S=(), conductor=1, cc="trivial"):
    return {
        "S": list(S),
        "conductor": conductor,
        "weights": list(weights),
        "central_character": cc,
        "frobenius": {str(p): list(c) for p, c in frob.items()},
    }


def _shaped(p, a, b, w):
    e = p**w
    return (1, -a, b, -a * e, e * e)


# -- ingest ---------------------------------------------------------------------

def test_ingest_roundtrip(tmp_path):
    frob = {5: _shaped(5, 2, 3, 4), 7: _shaped(7, -1, 0, 4)}
    data = _system_dict(frob)
    system = screener.ingest(data)
    assert system.weights == (1, 0)
    assert system.trace(5) == 2
    assert system.similitude_weight == 4
    # same result from JSON text and from a file
    text = json.dumps(data)
    assert screener.ingest(text).frobenius == system.frobenius
    path = tmp_path / "sys.json"
    path.write_text(text)
    assert screener.ingest(str(path)).frobenius == system.frobenius
    # to_json reproduces an ingestible document
    assert screener.ingest(system.to_json()).frobenius == system.frobenius


def test_ingest_rejects_bad_quartic_shape():
    frob = {5: _shaped(5, 2, 3, 4), 7: (1, -1, 0, -1 * 7**4, 7**8 + 1)}
    with pytest.raises(ShapeViolation) as exc:
        screener.ingest(_system_dict(frob))
    assert exc.value.prime == 7


def test_ingest_rejects_wrong_middle_coupling():
    # c1 must equal c3 * e
    frob = {5: (1, -2, 3, -3 * 5**4, 5**8)}
    with pytest.raises(ShapeViolation) as exc:
        screener.ingest(_system_dict(frob))
    assert exc.value.prime == 5


def test_ingest_rejects_bad_weights():
    with pytest.raises(WeightViolation):
        screener.ingest(_system_dict({}, weights=(0, 1)))
    with pytest.raises(WeightViolation):
        screener.ingest(_system_dict({}, weights=(1, -1)))


def test_ingest_rejects_bad_central_character():
    frob = {5: _shaped(5, 2, 3, 4)}
    data = _system_dict(frob, cc={"5": 2, "7": -1})
    with pytest.raises(ShapeViolation):
        screener.ingest(data)


def test_ingest_rejects_bad_prime_index():
    frob = {6: _shaped(6, 2, 3, 4)}
    with pytest.raises(ShapeViolation) as exc:
        screener.ingest(_system_dict(frob))
    assert exc.value.prime == 6


def test_ingest_rejects_conductor_outside_s():
    frob = {5: _shaped(5, 2, 3, 4)}
    with pytest.raises(ShapeViolation) as exc:
        screener.ingest(_system_dict(frob, conductor=11))
    assert exc.value.prime == 11


def test_central_character_enters_similitude():
    # with omega(p) = -1 the quartic must use e = -p^w
    p, w = 5, 4
    e = -(p**w)
    frob = {p: (1, -2, 3, -2 * e, e * e)}
    system = screener.ingest(_system_dict(frob, cc={str(p): -1}))
    assert system.omega(p) == -1


# -- symmetric-cube identities ------------------------------------------------------

def test_symm3_quartic_from_roots():
    # eigenvalues {x^3, x^2 y, x y^2, y^3} for (x, y) = (2, 3)
    x, y = 2, 3
    roots = [x**3, x * x * y, x * y * y, y**3]
    assert screener.symm3_quartic(x + y, x * y) == screener._from_roots(roots)


@settings(max_examples=60, deadline=None)
@given(entries=st.tuples(*[st.integers(0, 10)] * 4))
def test_symm3_quartic_matches_matrix_charpoly(entries):
    """The integer identities agree with the charpoly of the explicit
    4x4 cube matrix over F_11."""
    spec = ff.make_field(11, 1)
    tables = field_tables(spec)
    h = entries
    s = aschbacher.symm3_matrix(spec, h)
    coeffs = matops.charpoly(s, 4, tables)
    a = (h[0] + h[3]) % 11
    b = (h[0] * h[3] - h[1] * h[2]) % 11
    quartic = screener.symm3_quartic(a, b)
    # charpoly returns [c0..c4]; quartic is (c4..c0)
    for i, c in enumerate(reversed(quartic)):
        assert coeffs[i] == spec.from_int(c).index


def test_symm3_shape_mod_golden():
    q = screener.symm3_quartic(3, 2)
    t, d = screener.symm3_shape_mod(q, 101)
    assert (t, d) == (3, 2)
    assert screener.symm3_shape_mod((1, -1, 0, -7, 5), 101) is None


def test_factor_signature():
    # (X-1)(X-2)(X-3)(X-4) mod 7 has 4 roots
    assert screener.factor_signature(screener._from_roots([1, 2, 3, 4]), 7) == "4 roots"
    # X^4 + X + 1 is irreducible over F_2... use a known F_7 irreducible
    assert screener.factor_signature((1, 0, 0, -1, 1), 7) in (
        "irreducible", "0 roots reducible")


def test_irreducibility_witness_requires_data():
    system = screener.CompatibleSystemData(
        bad_primes=frozenset(), conductor=1, weights=(1, 0),
        central_character={}, frobenius={})
    with pytest.raises(NoData):
        screener.irreducibility_witness(system, 7)


# -- discriminants and the induced test -----------------------------------------------

def test_fundamental_discriminants():
    assert screener.fundamental_discriminants([]) == [-4]
    discs = screener.fundamental_discriminants([2, 3])
    assert discs == [-3, -4, -8, 8, 12, -24, 24]
    for d in discs:
        assert d % 4 in (0, 1)
    assert screener.fundamental_discriminants([2, 3], bound=10) == [-3, -4, -8, 8]


def test_induced_test_flags_inert_trace_vanishing():
    """Traces zero exactly at p inert in Q(i): the -4 flag must raise."""
    w = 4
    frob = {}
    for p in screener.primes_up_to(100):
        if p == 2:
            continue
        a = 0 if p % 4 == 3 else p
        frob[p] = _shaped(p, a, p, w)
    system = screener.ingest(_system_dict(frob))
    flagged, evidence = screener.induced_test(system, 7, discriminants=[-4])
    assert flagged == [-4]
    assert "vanish" in evidence[-4]


def test_induced_test_witness_clears():
    system = screener.make_generic_system()
    flagged, evidence = screener.induced_test(system, 7, discriminants=[-4])
    assert flagged == []
    assert "witness" in evidence[-4]


def test_symm3_test_weight_gate():
    generic = screener.make_generic_system()  # weights (1, 0)
    flag, ev = screener.symm3_test(generic, 7)
    assert not flag and "weight_gate" in ev


def test_symm3_test_flags_cube_system():
    data = {p: (p % 7 - 3, p * p) for p in screener.primes_up_to(100)}
    system = screener.make_symm3_system(data, 1)
    assert system.weights == (2, 1)
    for ell in (7, 11, 13):
        flag, ev = screener.symm3_test(system, ell)
        assert flag, ev


def test_make_symm3_system_rejects_bad_determinant():
    with pytest.raises(ShapeViolation):
        screener.make_symm3_system({5: (1, 24)}, 1)


# -- inertia patterns -------------------------------------------------------------------

def test_inertia_patterns_golden_11():
    pats = {p.kind: p for p in screener.inertia_patterns(0, 0, 11)}
    assert pats["ordinary"].psi_exponents(11) == (0, 12, 24, 36)
    assert pats["ordinary"].min_projective_order == 10
    assert pats["level2-top"].psi_exponents(11) == (3, 12, 24, 33)
    assert pats["level2-top"].min_projective_order == 40
    assert pats["level2-middle"].psi_exponents(11) == (0, 13, 23, 36)
    assert pats["level2-middle"].min_projective_order == 120
    assert pats["level2-both"].psi_exponents(11) == (3, 13, 23, 33)
    assert pats["level2-both"].min_projective_order == 12
    # pairwise distinct exponent data
    seen = {p.psi_exponents(11) for p in pats.values()}
    assert len(seen) == 4


def test_inertia_hypothesis_gate():
    with pytest.raises(HypothesisViolated):
        screener.inertia_patterns(1, 0, 5)
    # boundary: ell - 1 must strictly exceed m1 + m2 + 3
    with pytest.raises(HypothesisViolated):
        screener.inertia_patterns(0, 0, 3)
    screener.inertia_patterns(0, 0, 5)  # 4 > 3, fine


def test_small_group_exclusion():
    flag, ev = screener.small_group_exclusion(0, 0, 11)
    assert flag  # min order 10 divides 520, 1440, ...
    assert ev["min_order"] == 10
    assert 520 in ev["undivided_orders"]
    # a prime where the forced order divides none of the listed orders
    flag2, ev2 = screener.small_group_exclusion(0, 0, 23)
    assert not flag2
    assert ev2["min_order"] == 22


# -- end-to-end screening ------------------------------------------------------------------

def test_screen_trivial_system_reducible_everywhere():
    report = screener.screen(screener.make_trivial_system(), 7, 97)
    assert len(report.entries) == 22
    for e in report.entries:
        assert "PossiblyReducible" in e["flags"]


def test_screen_symm3_system_flagged_everywhere():
    data = {p: (p % 7 - 3, p * p) for p in screener.primes_up_to(200)}
    system = screener.make_symm3_system(data, 1)
    report = screener.screen(system, 7, 97)
    for e in report.entries:
        assert "PossiblySymm3" in e["flags"]


SYSTEM_FLAGS = ("PossiblyReducible", "PossiblySymm3")


def test_screen_generic_system_clears_system_flags():
    report = screener.screen(screener.make_generic_system(), 7, 97)
    assert len(report.entries) == 22
    clean = 0
    for e in report.entries:
        assert not any(f.startswith("PossiblyInduced") for f in e["flags"])
        assert not any(f in SYSTEM_FLAGS for f in e["flags"])
        if not e["flags"]:
            clean += 1
    # PossiblySmallGroup is arithmetic in ell alone and fires whenever
    # ell - 1 divides a listed order; some residue characteristics always carry it
    assert clean >= 5


def test_screen_determinism_and_json():
    r1 = screener.screen(screener.make_generic_system(), 7, 31)
    r2 = screener.screen(screener.make_generic_system(), 7, 31)
    assert r1.to_json() == r2.to_json()
    text = r1.table()
    assert text.splitlines()[0].strip().startswith("ell")


def test_screen_skips_bad_primes():
    frob = {p: _shaped(p, 1, 1, 4) for p in screener.primes_up_to(100) if p > 11}
    system = screener.ingest(_system_dict(frob, S=[11], conductor=11))
    report = screener.screen(system, 7, 31)
    assert all(e["ell"] != 11 for e in report.entries)
