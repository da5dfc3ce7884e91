import pytest

from knotgauss.codes import ChordMatching, check_diagram, realize
from knotgauss.constructions import twist_knot_diagram
from knotgauss.enumerate import (
    BudgetExceeded,
    DiagramFilter,
    canonical_offsets,
    check_lemmas,
    diagram_key,
    enumerate_diagrams,
    enumerate_shadows,
    extremal_search,
    shadow_count,
    theorem_filter,
    verify_theorem,
)
from knotgauss.gauss import lemma_checks
from knotgauss.invariants import v3


def _all_matchings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for m in _all_matchings(rest):
            yield [(a, points[i])] + m


def _brute_force_shadows(c):
    classes = set()
    for pairs in _all_matchings(list(range(2 * c))):
        m = ChordMatching.from_pairs(pairs)
        if realize(m):
            classes.add(canonical_offsets(m.partner))
    return len(classes)


def test_small_shadow_counts():
    assert [shadow_count(c) for c in range(1, 8)] == [1, 1, 3, 5, 15, 43, 172]


@pytest.mark.parametrize("c", range(1, 7))
def test_shadow_count_matches_brute_force(c):
    assert shadow_count(c) == _brute_force_shadows(c)


def test_shadow_count_independent_of_workers():
    assert shadow_count(6, jobs=2) == shadow_count(6, jobs=1)


def test_trefoil_shadow_is_listed():
    trefoil = canonical_offsets(ChordMatching.from_pairs([(0, 3), (1, 4), (2, 5)]).partner)
    assert trefoil in {canonical_offsets(m.partner) for m, _ in enumerate_shadows(3)}


def test_positive_reduced_connected_c3_is_trefoil(trefoil):
    found = list(enumerate_diagrams(DiagramFilter(3, 3, positivity=0, connected=True, reduced=True)))
    assert [diagram_key(d) for d in found] == [diagram_key(trefoil)]


def test_positive_reduced_c2_is_empty():
    assert list(enumerate_diagrams(DiagramFilter(2, 2, positivity=0, reduced=True))) == []


def test_almost_positive_c3_includes_twist_unknot():
    keys = {diagram_key(d) for d in enumerate_diagrams(DiagramFilter(3, 3, positivity=1, connected=True))}
    assert diagram_key(twist_knot_diagram(3)) in keys


def test_emitted_diagrams_are_valid():
    for d in enumerate_diagrams(DiagramFilter(1, 6, positivity=None)):
        check_diagram(d)
        assert lemma_checks(d).ok


def test_lemmas_hold_up_to_eight():
    rep = check_lemmas(8)
    assert rep.passed and rep.scanned > 100000


def test_filter_validation():
    with pytest.raises(ValueError):
        DiagramFilter(-1, 3)
    with pytest.raises(ValueError):
        theorem_filter("nope", 5)


def test_verify_lm2_small():
    rep = verify_theorem("LM2", 7)
    assert rep.passed
    assert rep.to_dict(timing=False)["counterexamples"] == []


def test_verify_lk43_exceptions():
    rep = verify_theorem("LK43", 9)
    assert rep.details["failing_crossing_numbers"] == [3, 4]


def test_verify_budget():
    with pytest.raises(BudgetExceeded):
        verify_theorem("TH1", 10)


def test_sigma_histogram():
    rep = verify_theorem("SIGMA", 7)
    assert rep.passed
    for key in rep.details["genus_signature_histogram"]:
        g, sigma = (int(part.split("=")[1]) for part in key.split(","))
        assert sigma >= 2
        assert (sigma == 2) == (g == 1)


def test_extremal_ratio_below_nine():
    res = extremal_search("max-lk/v2", DiagramFilter(1, 8, positivity=0, connected=True, no_clasp=True))
    assert res.value <= 4


def test_extremal_min_v3_two_negative():
    res = extremal_search("min-v3", DiagramFilter(6, 6, positivity=2, connected=True))
    assert res.value == -4
    assert all(v3(w) == -4 for w in res.witnesses)


def test_extremal_is_monotone():
    small = extremal_search("max-lk/v2", DiagramFilter(1, 8, positivity=0, connected=True, no_clasp=True))
    large = extremal_search("max-lk/v2", DiagramFilter(1, 9, positivity=0, connected=True, no_clasp=True))
    assert large.value >= small.value


def test_extremal_rejects_unknown_objective():
    with pytest.raises(ValueError):
        extremal_search("max-v3", DiagramFilter(1, 3))
