from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ribbonx.catalog import (by_name, doubled_nichols, double_identification, drinfeld_closed_forms,
                             nichols, sum_by_length_check, sweedler_h4)
from ribbonx.errors import SizeLimitExceeded
from ribbonx.field import imag_unit, scalar
from ribbonx.hopf import (Element, apply_antipode, casimir_like, check_hopf_morphism,
                          drinfeld_double, drinfeld_element, drinfeld_inverse, pivot_grouplike,
                          verify_hopf_axioms, verify_ribbon, verify_rmatrix)
from ribbonx.ribbon_ext import RibbonExtension


def test_nichols_dimensions():
    assert [nichols(n).dim for n in (1, 2, 3)] == [4, 8, 16]
    assert verify_hopf_axioms(nichols(2)).passed


def test_h4_is_first_nichols(k1, h4):
    assert h4.labels == k1.labels
    assert h4.mult_table == k1.mult_table
    assert h4.comult_table == k1.comult_table
    assert verify_rmatrix(h4).passed
    assert verify_ribbon(h4, h4.one()).passed
    x = h4.basis(h4.named["xi1"])
    assert apply_antipode(x, 2) == -x


@pytest.mark.parametrize("n", [1, 2])
def test_double_identification(n):
    D, DK = drinfeld_double(nichols(n)), doubled_nichols(n)
    rep = check_hopf_morphism(double_identification(n, D, DK), DK, D, check_r=True)
    assert rep.passed
    assert rep.data["bijective"]


def test_generic_double_cross_relation():
    D = drinfeld_double(nichols(1))
    DK = doubled_nichols(1, with_r=False)
    cols = double_identification(1, D, DK)
    img = lambda name: Element(D, cols[DK.named[name]])
    x, xb, K, Kb = img("xi1"), img("xibar1"), img("K"), img("Kbar")
    assert x * xb == D.one() - K * Kb - xb * x


@pytest.mark.parametrize("n", [1, 2])
def test_closed_forms(n):
    H = doubled_nichols(n)
    forms = drinfeld_closed_forms(n, H)
    u = drinfeld_element(H)
    assert forms["u"] == u
    assert forms["u_inv"] == drinfeld_inverse(H)
    assert forms["S_u"] == apply_antipode(u)
    assert forms["uS_u"] == casimir_like(H)
    assert forms["uSu_inv"] == pivot_grouplike(H)


def test_closed_form_specifics(dk1, dk2):
    K, Kb = dk1.basis(dk1.named["K"]), dk1.basis(dk1.named["Kbar"])
    assert drinfeld_closed_forms(1, dk1)["uSu_inv"] == K * Kb
    f2 = drinfeld_closed_forms(2, dk2)
    assert f2["S_u"] == f2["u"]
    assert f2["uSu_inv"] == dk2.one()


def test_pivot_grouplike_dk3():
    H = doubled_nichols(3)
    assert pivot_grouplike(H) == H.basis(H.named["K"]) * H.basis(H.named["Kbar"])


def test_sum_by_length_constant():
    H = doubled_nichols(1, with_r=False)
    assert sum_by_length_check(1, {0: H.one(), 1: H.one()}, H).passed


def test_sum_by_length_special_case():
    H = doubled_nichols(2, with_r=False)
    KKb = H.basis(H.named["K"]) * H.basis(H.named["Kbar"])
    f = {k: (H.one() - KKb) * Fraction((-1) ** ((k + 1) // 2), 2) for k in range(3)}
    assert sum_by_length_check(2, f, H).passed


_H2 = doubled_nichols(2, with_r=False)
_GROUP = [_H2.one(), _H2.basis(_H2.named["K"]), _H2.basis(_H2.named["Kbar"]),
          _H2.basis(_H2.named["K"]) * _H2.basis(_H2.named["Kbar"])]
gauss = st.tuples(st.integers(-4, 4), st.integers(-4, 4)).map(
    lambda p: scalar(p[0]) + scalar(p[1]) * imag_unit())


@settings(max_examples=20)
@given(st.lists(st.lists(gauss, min_size=4, max_size=4), min_size=3, max_size=3))
def test_sum_by_length_random(coeffs):
    f = {}
    for k, cs in enumerate(coeffs):
        acc = _H2.zero()
        for c, g in zip(cs, _GROUP):
            acc = acc + g * c
        f[k] = acc
    assert sum_by_length_check(2, f, _H2).passed


def test_by_name():
    assert by_name("k2").dim == 8
    assert by_name("DK1").dim == 16
    assert by_name("trivial").dim == 1
    ext = by_name("tilde:z2")
    assert isinstance(ext, RibbonExtension) and ext.extended.dim == 4
    with pytest.raises(KeyError):
        by_name("q7")


def test_size_cap(monkeypatch):
    monkeypatch.setenv("RIBBONX_MAX_DIM", "100")
    with pytest.raises(SizeLimitExceeded):
        doubled_nichols(3)
    assert doubled_nichols(2).dim == 64


def test_sweedler_name():
    assert sweedler_h4().name == "H4"
