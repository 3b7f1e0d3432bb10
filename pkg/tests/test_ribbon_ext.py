import pytest

from ribbonx.catalog import trivial, z2
from ribbonx.errors import MissingRMatrix, NotRibbon
from ribbonx.hopf import (Element, is_factorizable, same_span, verify_hopf_axioms, verify_ribbon,
                          verify_rmatrix)
from ribbonx.ribbon_ext import (check_integrals_transfer, double_of_extension_demo,
                                extension_report, ktilde_candidates, presentation_crosscheck_dkn,
                                ribbon_extension, ribbon_tensor_decomposition,
                                sommerhauser_decomposition)


def test_extension_of_trivial_is_group_algebra():
    ext = ribbon_extension(trivial())
    Ht = ext.extended
    assert Ht.dim == 2
    v = Ht.ribbon
    assert v * v == Ht.one()
    Z = z2()
    rep = extension_report(ext)
    assert rep.passed
    # the map 1 -> 1, v~ -> g is an isomorphism onto F[Z2]
    assert Ht.mult_table == Z.mult_table and Ht.comult_table == Z.comult_table


def test_dimension_doubles(ext1):
    assert ext1.extended.dim == 32
    assert ext1.extended.dim == 2 * ext1.base.dim


def test_extension_report_dk1(ext1):
    rep = extension_report(ext1)
    assert rep.passed
    fac, rank = is_factorizable(ext1.extended)
    assert not fac and rank <= 16


def test_extension_ribbon_dk2(dk2):
    ext = ribbon_extension(dk2)
    Ht = ext.extended
    assert verify_ribbon(Ht, Ht.ribbon).passed
    assert verify_rmatrix(Ht).passed


def test_extension_requires_r(k1):
    with pytest.raises(MissingRMatrix):
        ribbon_extension(k1)


def test_integral_transfer_z2():
    ext = ribbon_extension(z2())
    rep = check_integrals_transfer(ext)
    assert rep.passed
    Ht = ext.extended
    g = Element(Ht, {1: Ht.one().vec[0]})
    expected = (Ht.one() + g) * (Ht.one() + Ht.ribbon)
    assert rep.data["left_integral"] == [expected.to_strings()]


@pytest.mark.parametrize("fixture,unimodular", [("h4", False), ("dk1", True)])
def test_integral_transfer(fixture, unimodular, request):
    rep = check_integrals_transfer(ribbon_extension(request.getfixturevalue(fixture)))
    assert rep.passed
    assert rep.data["unimodular"] == [unimodular, unimodular]


@pytest.mark.parametrize("fixture", ["zz", "h4", "dk2"])
def test_ribbon_tensor_decomposition(fixture, request):
    assert ribbon_tensor_decomposition(request.getfixturevalue(fixture)).passed


def test_tensor_decomposition_needs_ribbon(dk1):
    with pytest.raises(NotRibbon):
        ribbon_tensor_decomposition(dk1)


@pytest.mark.parametrize("fixture", ["zz", "h4", "dk1", "dk2"])
def test_sommerhauser(fixture, request):
    _, C, rep = sommerhauser_decomposition(request.getfixturevalue(fixture))
    assert rep.passed
    assert verify_hopf_axioms(C).passed


def test_sommerhauser_h4_noncommuting(h4):
    spec, C, rep = sommerhauser_decomposition(h4)
    assert rep.data["weak_action_nontrivial"]
    x = h4.named["xi1"]
    o = h4.one().vec[next(iter(h4.unit_vec))]
    e = next(iter(h4.unit_vec))
    xi_1 = Element(C, {2 * x: o})
    one_g = Element(C, {2 * e + 1: o})
    assert xi_1 * one_g == -(one_g * xi_1)


def test_sommerhauser_z2_trivial(zz):
    _, _, rep = sommerhauser_decomposition(zz)
    assert not rep.data["weak_action_nontrivial"]
    assert rep.data["cocycle_trivial"]


def test_presentation_n1(ext1, dk1):
    rep, kt = presentation_crosscheck_dkn(1, ext1)
    assert rep.passed
    K = ext1.lift(dk1.basis(dk1.named["K"]))
    Kb = ext1.lift(dk1.basis(dk1.named["Kbar"]))
    assert kt * kt == K * Kb
    assert rep.data["chosen"] == "u*v~^-1"
    assert rep.data["relation_families"] == 13


def test_ktilde_candidates_agree_up_to_inverse(ext1):
    c = ktilde_candidates(ext1)
    a, b = c["u*v~^-1"], c["u^-1*v~"]
    assert a * b == ext1.extended.one()


@pytest.mark.slow
def test_presentation_n3():
    rep, _ = presentation_crosscheck_dkn(3)
    assert rep.passed


def test_double_of_extension():
    rep = double_of_extension_demo()
    assert rep.passed
    assert rep.data["dims"] == [2, 4, 8, 64]


def test_sidecar(ext1):
    side = ext1.sidecar()
    assert set(side) == {"v_index", "embedding", "projection"}
    assert side["v_index"]["block"] == [16, 32]
    assert same_span([ext1.extended.ribbon], [ext1.times_v(ext1.base.one())])
