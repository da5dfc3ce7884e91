import pytest

from knotgauss.codes import parse_code
from knotgauss.gauss import mirror
from knotgauss.oracles import (
    BudgetExceeded,
    ConwayPoly,
    LaurentPoly,
    conway,
    jones,
    jones_naive,
    signature,
    signature_and_det,
    symmetric_signature,
    vassiliev_from_jones,
)

TREFOIL_V = LaurentPoly({1: 1, 3: 1, 4: -1})
FIG8_V = LaurentPoly({-2: 1, -1: -1, 0: 1, 1: -1, 2: 1})


def test_laurent_arithmetic():
    p = LaurentPoly({1: 2, -1: 1})
    assert p * LaurentPoly({0: 1}) == p
    assert p - p == 0
    assert p.inverted() == LaurentPoly({-1: 2, 1: 1})
    assert p(1) == 3
    assert str(TREFOIL_V) == "t+t^3-t^4"


def test_jones_examples(trefoil):
    assert jones(parse_code("")) == 1
    assert jones(trefoil) == TREFOIL_V
    assert jones(mirror(trefoil)) == LaurentPoly({-1: 1, -3: 1, -4: -1})


def test_jones_figure_eight(fixtures):
    assert jones(fixtures["4_1"]) == FIG8_V


def test_jones_routes_agree(fixtures):
    for name, d in fixtures.items():
        assert jones(d) == jones_naive(d), name


def test_vassiliev_from_jones():
    assert vassiliev_from_jones(TREFOIL_V) == (1, 4)
    assert vassiliev_from_jones(LaurentPoly({0: 1})) == (0, 0)
    assert vassiliev_from_jones(FIG8_V) == (-1, 0)


def test_conway_examples(trefoil, fixtures):
    assert conway(parse_code("")) == ConwayPoly((1,))
    assert conway(trefoil) == ConwayPoly((1, 0, 1))
    assert conway(fixtures["4_1"]) == ConwayPoly((1, 0, -1))


def test_conway_truncation(fixtures):
    full = conway(fixtures["7_2"])
    assert conway(fixtures["7_2"], max_degree=2).a2 == full.a2


def test_alexander_from_conway():
    assert ConwayPoly((1, 0, 1)).alexander() == LaurentPoly({-1: 1, 0: -1, 1: 1})
    assert ConwayPoly((1, 0, 1)).signed_determinant() == -3


def test_signature_examples(trefoil, fixtures):
    assert signature_and_det(parse_code("")).to_dict()["sigma_paper"] == 0
    sd = signature_and_det(trefoil)
    assert (sd.sigma_paper, sd.det_signed, sd.det_abs) == (2, -3, 3)
    assert sd.sigma_standard == -2
    sd = signature_and_det(fixtures["!10_145"])
    assert (sd.sigma_paper, sd.det_signed) == (2, -3)


def test_signature_flips_under_mirror(fixtures):
    for d in fixtures.values():
        assert signature(mirror(d)) == -signature(d)


def test_goeritz_determinant_matches_conway(fixtures):
    for d in fixtures.values():
        sd = signature_and_det(d)
        assert abs(sd.det_signed) == sd.det_abs


def test_symmetric_signature():
    assert symmetric_signature([[2, 1], [1, 2]]) == (2, 3)
    assert symmetric_signature([[0, 1], [1, 0]])[0] == 0


def test_budgets(fixtures):
    with pytest.raises(BudgetExceeded):
        jones(fixtures["9_40"], budget=5)
    with pytest.raises(BudgetExceeded):
        conway(fixtures["9_40"], budget=5)
