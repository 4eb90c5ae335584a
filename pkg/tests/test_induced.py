import pytest

from gsp4kit import ff, gsp4core, induced, matops
from gsp4kit.errors import BadCongruence, NotPrime, PrimeClash, TooSmall
from gsp4kit.tables import field_tables


@pytest.fixture(scope="module")
def rep_13_5_3():
    params = induced.validate_params(13, 5, 3)
    return induced.build_induced(params)


def test_validate_params_accepts():
    params = induced.validate_params(13, 5, 3)
    assert params.p == 13 and params.q == 5 and params.ell == 3
    assert params.field.order == 3**3  # smallest field with 26 | order - 1


def test_validate_params_rejections():
    with pytest.raises(NotPrime):
        induced.validate_params(12, 5, 3)
    with pytest.raises(PrimeClash):
        induced.validate_params(13, 5, 13)
    with pytest.raises(PrimeClash):
        induced.validate_params(13, 5, 5)
    with pytest.raises(BadCongruence):
        induced.validate_params(17, 2, 3)  # q too small
    with pytest.raises(BadCongruence):
        induced.validate_params(13, 3, 7)  # 3 has order 3 mod 13, not 4
    with pytest.raises(BadCongruence):
        induced.validate_params(13, 5, 2)
    with pytest.raises(TooSmall):
        induced.validate_params(5, 2, 3)


def test_defining_relations(rep_13_5_3):
    rep = rep_13_5_3
    spec = rep.t.spec
    tables = field_tables(spec)
    t, f = rep.t.entries, rep.F.entries
    assert matops.mat_order(t, 4, tables) == 13
    assert matops.mat_order(f, 4, tables) == 8
    # F^4 = -I
    f4 = matops.mat_pow(f, 4, 4, tables)
    assert f4 == matops.mat_neg(matops.identity(4, tables), tables)
    # F t F^-1 = t^q
    finv = matops.mat_inv(f, 4, tables)
    conj = matops.mat_mul(matops.mat_mul(f, t, 4, tables), finv, 4, tables)
    assert conj == matops.mat_pow(t, 5, 4, tables)


def test_generators_are_isometries(rep_13_5_3):
    assert rep_13_5_3.t.similitude == 1
    assert rep_13_5_3.F.similitude == 1


def test_group_order_and_histogram(rep_13_5_3):
    closure = gsp4core.close_subgroup(list(rep_13_5_3.generators()))
    assert closure.order == 104  # 8p
    hist = gsp4core.element_orders_histogram(closure)
    assert hist == {1: 1, 2: 1, 4: 26, 8: 52, 13: 12, 26: 12}
    assert gsp4core.projective_order(closure) == 52


def test_irreducible_no_invariant_line_or_plane(rep_13_5_3):
    spec = rep_13_5_3.t.spec
    gens = [g.entries for g in rep_13_5_3.generators()]
    assert induced.is_irreducible_module(spec, gens)


def test_invariant_form_is_unique_and_alternating(rep_13_5_3):
    rep = rep_13_5_3
    spec = rep.t.spec
    forms = induced.invariant_bilinear_forms(
        spec, [rep.natural_t, rep.natural_F])
    assert len(forms) == 1
    tables = field_tables(spec)
    form = forms[0]
    assert matops.det(form, 4, tables) != 0
    for i in range(4):
        assert form[i * 4 + i] == 0
        for j in range(4):
            assert form[i * 4 + j] == tables.neg[form[j * 4 + i]]


def test_basis_change_normalizes_form(rep_13_5_3):
    rep = rep_13_5_3
    spec = rep.t.spec
    tables = field_tables(spec)
    p = rep.basis_change
    pt = matops.transpose(p, 4)
    lhs = matops.mat_mul(matops.mat_mul(pt, rep.form.entries, 4, tables),
                         p, 4, tables)
    assert lhs == gsp4core.canonical_form_entries(spec)


def test_mackey_orbit_regular(rep_13_5_3):
    ok, orbit = induced.check_mackey_irreducible(rep_13_5_3.params)
    assert ok
    assert sorted(orbit) == [1, 5, 8, 12]  # powers of q = 5 mod 13


def test_trace_zero_off_diagonal_cosets(rep_13_5_3):
    """Elements t^j F^i with i not divisible by 4 have zero trace."""
    rep = rep_13_5_3
    spec = rep.t.spec
    tables = field_tables(spec)
    t, f = rep.t.entries, rep.F.entries
    cur_t = matops.identity(4, tables)
    for _ in range(13):
        cur = cur_t
        for i in range(1, 8):
            cur = matops.mat_mul(cur, f, 4, tables)
            if i % 4 != 0:
                trace = 0
                for d in range(4):
                    trace = tables.add[trace * tables.q + cur[d * 4 + d]]
                assert trace == 0
        cur_t = matops.mat_mul(cur_t, t, 4, tables)


def test_twists_stay_irreducible(rep_13_5_3):
    data = induced.local_euler_data(rep_13_5_3)
    assert len(data) == 26  # all nonzero scalars of F_27
    assert all(irr for _, _, irr in data)
    assert {order for _, order, _ in data} == {104, 1352}


def test_tensor_indecomposable_evidence(rep_13_5_3):
    commutative, dim = induced.tensor_indecomposable_evidence(rep_13_5_3)
    assert commutative
    assert dim == 4


def test_alpha_twist_changes_similitude():
    params = induced.validate_params(13, 5, 3)
    spec = params.field
    rep = induced.build_induced(params, alpha=2)
    tables = field_tables(spec)
    expected = tables.pow(spec.from_int(2).index, 2)
    assert rep.F.similitude == expected


def test_json_export(rep_13_5_3):
    data = rep_13_5_3.to_json()
    spec, gens = gsp4core.generators_from_json(data)
    assert [g.entries for g in gens] == [g.entries
                                         for g in rep_13_5_3.generators()]
