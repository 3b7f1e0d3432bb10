import pytest

from ribbonx.catalog import doubled_nichols, dkn_ribbon, nichols, trivial, z2
from ribbonx.errors import MissingRMatrix, ParentMismatch
from ribbonx.field import one, scalar
from ribbonx.hopf import (Element, HopfData, apply_antipode, check_hopf_morphism, comultiply,
                          drinfeld_double, drinfeld_element, drinfeld_inverse, enumerate_grouplikes,
                          find_ribbon_elements, invert_element, is_factorizable, is_unimodular,
                          left_integrals, monodromy, monodromy_inverse, pivot_grouplike, right_integrals, same_span,
                          TensorElement, tensor_invert, tensor_of, verify_drinfeld_properties, verify_hopf_axioms,
                          verify_ribbon, verify_rmatrix)


def strings(xs):
    return sorted(tuple(sorted(x.to_strings().items())) for x in xs)


def test_group_relation(zz):
    g = zz.basis(1)
    assert g * g == zz.one()


def test_nilpotent_relations(k1):
    K, x = k1.basis(k1.named["K"]), k1.basis(k1.named["xi1"])
    assert x * x == k1.zero()
    assert K * x == -(x * K)
    assert x * (K * x) == k1.zero()


def test_monodromy_inverse(dk1):
    X = TensorElement(dk1, monodromy(dk1))
    Y = tensor_invert(X)
    assert Y * X == tensor_of(dk1.one(), dk1.one())
    assert Y.terms == monodromy_inverse(dk1)


@pytest.mark.parametrize("name", ["k1", "k2", "h4", "z2", "dk1"])
def test_axioms_pass(name):
    from ribbonx.catalog import by_name
    assert verify_hopf_axioms(by_name(name)).passed


def test_axioms_dk2(dk2):
    assert verify_hopf_axioms(dk2).passed


def test_corrupted_antipode_fails(k1):
    o = one(k1.level)
    bad = HopfData(k1.dim, k1.labels, k1.mult_table, k1.unit_vec, k1.comult_table,
                   k1.counit_vec, [{i: o} for i in range(k1.dim)], level=k1.level)
    rep = verify_hopf_axioms(bad, mode="exhaustive")
    assert not rep["antipode"].passed
    assert rep["antipode"].witness is not None


@pytest.mark.parametrize("fixture", ["dk1", "zz", "h4", "dk2"])
def test_rmatrix_pass(fixture, request):
    assert verify_rmatrix(request.getfixturevalue(fixture)).passed


def test_rmatrix_required(k1):
    with pytest.raises(MissingRMatrix):
        verify_rmatrix(k1)


def test_drinfeld_element_z2(zz):
    assert drinfeld_element(zz) == zz.one()
    assert verify_drinfeld_properties(zz).passed


def test_drinfeld_inverse_dk2(dk2):
    assert drinfeld_element(dk2) * drinfeld_inverse(dk2) == dk2.one()


def test_drinfeld_properties_dk1(dk1):
    rep = verify_drinfeld_properties(dk1)
    assert rep.passed
    assert pivot_grouplike(dk1) == dk1.basis(dk1.named["K"]) * dk1.basis(dk1.named["Kbar"])


def test_ribbon_examples(zz, dk1, dk2):
    assert verify_ribbon(zz, zz.basis(1)).passed
    for i in (0, 1):
        assert verify_ribbon(dk2, dkn_ribbon(dk2, i)).passed
    uK = drinfeld_element(dk1) * dk1.basis(dk1.named["K"])
    rep = verify_ribbon(dk1, uK)
    assert not rep.passed
    assert not rep["square_is_uSu"].passed


def test_integrals(zz, k1, dk1):
    assert strings(left_integrals(zz)) == strings([zz.one() + zz.basis(1)])
    assert is_unimodular(zz)
    K, x = k1.basis(k1.named["K"]), k1.basis(k1.named["xi1"])
    assert same_span(left_integrals(k1), [x + K * x])
    assert same_span(right_integrals(k1), [x - K * x])
    assert not is_unimodular(k1)
    assert is_unimodular(dk1)


def test_factorizability(zz, dk1):
    assert is_factorizable(dk1) == (True, 16)
    assert is_factorizable(zz) == (False, 1)


def test_grouplikes(zz, dk1):
    for n in (1, 2, 3):
        H = nichols(n)
        assert strings(enumerate_grouplikes(H)) == strings([H.one(), H.basis(H.named["K"])])
    assert len(enumerate_grouplikes(zz)) == 2
    K, Kb = dk1.basis(dk1.named["K"]), dk1.basis(dk1.named["Kbar"])
    assert strings(enumerate_grouplikes(dk1)) == strings([dk1.one(), K, Kb, K * Kb])


def test_ribbon_census(zz, dk1, dk2):
    assert find_ribbon_elements(dk1) == []
    found = find_ribbon_elements(dk2)
    assert strings(found) == strings([dkn_ribbon(dk2, 0), dkn_ribbon(dk2, 1)])
    # both 1 and g pass every ribbon condition in F[Z2]
    assert strings(find_ribbon_elements(zz)) == strings([zz.one(), zz.basis(1)])


def test_double_dimensions():
    assert drinfeld_double(nichols(1)).dim == 16
    assert drinfeld_double(nichols(2)).dim == 64
    D = drinfeld_double(z2())
    assert D.dim == 4
    assert verify_hopf_axioms(D).passed
    assert verify_rmatrix(D).passed


def test_identity_morphism(k1):
    o = one(k1.level)
    rep = check_hopf_morphism([{i: o} for i in range(k1.dim)], k1, k1)
    assert rep.passed and rep.data["rank"] == k1.dim


def test_non_multiplicative_map_fails(k1):
    o = one(k1.level)
    cols = [{i: o} for i in range(k1.dim)]
    cols[k1.named["xi1"]] = {k1.named["K"]: scalar(2)}
    rep = check_hopf_morphism(cols, k1, k1)
    assert not rep.passed
    assert rep.failures()[0].witness is not None


def test_element_arithmetic(k1, zz):
    K = k1.basis(k1.named["K"])
    assert invert_element(K) == K
    assert apply_antipode(apply_antipode(K)) == K
    assert comultiply(K) == tensor_of(K, K)
    with pytest.raises(ParentMismatch):
        K * zz.one()


def test_trivial_algebra():
    F = trivial()
    assert F.dim == 1 and verify_hopf_axioms(F).passed


def test_element_from_strings(dk1):
    u = drinfeld_element(dk1)
    assert Element(dk1, {dk1.labels.index(k): scalar(v) for k, v in u.to_strings().items()}) == u


def test_doubled_nichols_levels():
    H = doubled_nichols(1, level=16)
    assert H.level == 16 and verify_hopf_axioms(H).passed
