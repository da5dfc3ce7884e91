import pytest

from knotgauss.codes import DiagramError, parse_code
from knotgauss.constructions import (
    DoubleSpec,
    pretzel_diagram,
    torus_braid_diagram,
    twist_knot_diagram,
    whitehead_double,
)
from knotgauss.invariants import v2, v3
from knotgauss.oracles import conway, jones
from knotgauss.planar import genus, positivity_status, reduce


def _same_up_to_mirror(a, b):
    return jones(a) in (jones(b), jones(b).inverted())


@pytest.mark.parametrize("n", range(1, 10))
def test_twist_unknot_diagrams(n):
    d = twist_knot_diagram(n)
    assert d.c == n
    assert positivity_status(d).name == "AlmostPositive"
    assert v2(d) == 0 and v3(d) == 0
    assert jones(d) == 1


def test_one_crossing_twist_is_negative_kink():
    assert twist_knot_diagram(1).signs == (-1,)


@pytest.mark.parametrize("n, name", [(3, "3_1"), (4, "4_1"), (5, "5_2"), (6, "6_1")])
def test_alternating_twist_knots(n, name, fixtures):
    d = twist_knot_diagram(n, variant="Alternating")
    assert _same_up_to_mirror(d, fixtures[name])


def test_twist_rejects_bad_input():
    with pytest.raises((ValueError, DiagramError)):
        twist_knot_diagram(0)
    with pytest.raises(ValueError):
        twist_knot_diagram(3, variant="nope")


def test_pretzel_examples(trefoil):
    d = pretzel_diagram(1, 1, 1)
    assert d.writhe == 3
    assert jones(d) == jones(trefoil)
    assert v2(d) == 1
    assert genus(pretzel_diagram(3, 3, 3)).g == 1
    assert v2(pretzel_diagram(3, 3, 3)) == 7


def test_pretzel_errors():
    with pytest.raises(ValueError):
        pretzel_diagram(0, 3, 3)
    with pytest.raises(DiagramError):
        pretzel_diagram(2, 2, 3)


def test_torus_diagrams(trefoil):
    t23 = torus_braid_diagram(2, 3)
    assert jones(t23) == jones(trefoil)
    assert positivity_status(t23).name == "Positive"
    t25 = torus_braid_diagram(2, 5)
    assert t25.c == 5 and v2(t25) == 3
    assert v2(torus_braid_diagram(3, 4)) == 5


def test_torus_rejects_bad_input():
    with pytest.raises((ValueError, DiagramError)):
        torus_braid_diagram(2, 4)
    with pytest.raises((ValueError, DiagramError)):
        torus_braid_diagram(1, 3)


def test_double_of_unknot():
    for sign in (1, -1):
        d = whitehead_double(parse_code(""), sign)
        assert v3(d) == 0
        assert jones(d) == 1
        assert reduce(d).c <= d.c


def test_double_of_trefoil(trefoil):
    plus = whitehead_double(trefoil, 1)
    minus = whitehead_double(trefoil, -1)
    assert plus.c == 20
    assert v3(plus) == 8 and v3(minus) == -8
    # untwisted doubles have trivial Alexander polynomial, hence v2 = 0
    assert v2(plus) == 0 and v2(minus) == 0


def test_double_crossing_count(fixtures):
    for name in ("3_1", "4_1", "5_2"):
        k = fixtures[name]
        assert whitehead_double(k, 1).c == 4 * k.c + 2 * abs(k.writhe) + 2


def test_double_twists_change_framing(trefoil):
    # framing away from zero turns the double into a twisted one: its Conway polynomial stops being 1
    twisted = whitehead_double(trefoil, 1, twists=1)
    assert conway(twisted, budget=24).coeffs != (1,)


def test_double_spec_validates():
    with pytest.raises(ValueError):
        DoubleSpec(None, 0)
