from knotgauss.codes import parse_code
from knotgauss.constructions import pretzel_diagram, twist_knot_diagram
from knotgauss.invariants import config_census, linked_pairs, lk, report, v2, v3
from knotgauss.planar import connected_sum


def test_linked_pair_counts(trefoil, kink):
    assert lk(trefoil) == 3
    assert lk(kink) == 0
    assert [p[:2] for p in linked_pairs(trefoil)] == [(0, 1), (0, 2), (1, 2)]


def test_v2_values(trefoil, kink):
    assert v2(trefoil) == 1
    assert v2(kink) == 0
    assert v2(parse_code("")) == 0
    assert v2(pretzel_diagram(3, 5, 7)) == 18


def test_v2_patterns_agree(fixtures):
    for d in fixtures.values():
        assert v2(d, pattern="THHT") == v2(d)


def test_v2_basepoint_free(fixtures):
    d = fixtures["7_2"]
    assert {v2(d, b) for b in range(d.n)} == {v2(d)}


def test_v3_values(trefoil, fixtures):
    assert v3(trefoil) == 4
    assert v3(fixtures["!6_1"]) == -4
    for n in (3, 5, 7, 9):
        assert v3(twist_knot_diagram(n)) == 0


def test_trefoil_census(trefoil):
    cen = config_census(trefoil)
    assert (cen.n33, cen.n420, cen.lk) == (1, 0, 3)
    assert cen.w33 == 1 and cen.linked_term == 3
    assert cen.v3 == 4


def test_two_kinks_census():
    cen = config_census(parse_code("O1+U1+O2+U2+"))
    assert (cen.n33, cen.n420, cen.lk, cen.v3) == (0, 0, 0, 0)


def test_census_of_double_trefoil(trefoil):
    cen = config_census(connected_sum(trefoil, trefoil))
    assert cen.n33 == 2
    assert cen.lk == 6


def test_census_dict_uses_one_based_labels(trefoil):
    d = config_census(trefoil).to_dict()
    assert d["linked"][0][:2] == [1, 2]
    assert d["lk"] == 3


def test_report(trefoil):
    rep = report(trefoil)
    assert rep.to_dict() == {"v2": 1, "v3": 4, "lk": 3, "writhe": 3, "c": 3, "s": 2, "g": 1,
                             "status": "Positive"}
