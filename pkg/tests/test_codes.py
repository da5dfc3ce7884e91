import pytest

from knotgauss.codes import (
    ChordMatching,
    DiagramError,
    NotRealizableError,
    build_diagram,
    canonical_gauss_code,
    decorate,
    load_fixtures,
    parse_code,
    parse_gauss_code,
    parse_pd_code,
    realize,
)


def test_parse_trefoil_code():
    code = parse_gauss_code("O1+U2+O3+U1+O2+U3+")
    assert code.crossings == 3
    assert code.signed
    assert {e.sign for e in code.entries} == {1}
    assert str(code) == "O1+U2+O3+U1+O2+U3+"


def test_parse_ignores_whitespace_and_commas():
    assert str(parse_gauss_code("O1+, U1+")) == "O1+U1+"
    assert parse_gauss_code("o1 u1").entries[0].sign is None


def test_kink_code():
    assert parse_gauss_code("O1+U1+").crossings == 1


@pytest.mark.parametrize("text", ["O1+U2+", "O1+O1+", "O1+U1-", "O1+U1+X", "O0+U0+", "O1+U1+O2U2"])
def test_malformed_gauss_codes(text):
    with pytest.raises(DiagramError):
        parse_gauss_code(text)


def test_canonical_code_is_rotation_invariant():
    a = parse_gauss_code("O1+U2+O3+U1+O2+U3+")
    b = parse_gauss_code("U1+O2+U3+O1+U2+O3+")
    assert canonical_gauss_code(a) == canonical_gauss_code(b)


def test_pd_trefoil():
    d = parse_pd_code("X(1,5,2,4) X(3,1,4,6) X(5,3,6,2)")
    assert d.c == 3
    assert abs(d.writhe) == 3


def test_empty_pd_is_unknot():
    assert parse_code("").c == 0
    assert parse_pd_code("").c == 0


def test_pd_arity_error():
    with pytest.raises(DiagramError):
        parse_pd_code("X(1,2,3)")


def test_pd_round_trip(fixtures):
    # the basepoint may move, so compare up to rotation
    for name, d in fixtures.items():
        again = parse_pd_code(d.pd_code())
        assert canonical_gauss_code(again.to_code()) == canonical_gauss_code(d.to_code()), name


def test_realize_examples():
    assert not realize(ChordMatching.from_pairs([(0, 2), (1, 3)]))
    trefoil = realize(ChordMatching.from_pairs([(0, 3), (1, 4), (2, 5)]))
    assert trefoil
    assert trefoil.face_count() == 5
    assert realize(ChordMatching.from_pairs([(0, 1)]))


def test_realize_reports_a_reason():
    res = realize(ChordMatching.from_pairs([(0, 2), (1, 3)]))
    assert res.reason


@pytest.mark.parametrize("pairs", [[(0, 0)], [(0, 1), (1, 2)], [(0, 5)]])
def test_bad_matchings(pairs):
    with pytest.raises(DiagramError):
        ChordMatching.from_pairs(pairs)


def test_build_trefoil_and_kink(trefoil, kink):
    assert trefoil.c == 3 and trefoil.writhe == 3
    assert kink.c == 1 and kink.writhe == 1


def test_build_rejects_nonplanar_code():
    with pytest.raises(NotRealizableError):
        build_diagram(parse_gauss_code("O1+O2+U1+U2+"))


def test_build_rejects_impossible_signs():
    # a trefoil shadow cannot carry crossings of mixed handedness with these passages
    with pytest.raises(DiagramError):
        build_diagram(parse_gauss_code("O1+U2+O3+U1+O2+U3-"))


def test_unsigned_code_gets_positive_orientation():
    d = build_diagram(parse_gauss_code("O1U2O3U1O2U3"))
    assert d.writhe == 3


def test_decorate_realizes_requested_signs():
    emb = realize(ChordMatching.from_pairs([(0, 3), (1, 4), (2, 5)]))
    for signs in [(1, 1, 1), (1, -1, 1), (-1, -1, -1)]:
        d = decorate(emb, signs)
        assert d.signs == signs
        assert d.is_planar()


def test_fixtures_load(fixtures):
    assert fixtures["unknot"].c == 0
    assert fixtures["3_1"].c == 3
    assert fixtures["9_40"].c == 9
    assert fixtures["!10_145"].c == 10


def test_fixture_env_override(tmp_path, monkeypatch):
    path = tmp_path / "mine.gauss"
    path.write_text("# comment\nkink\tO1+U1+\n")
    monkeypatch.setenv("KNOTGAUSS_FIXTURES", str(path))
    assert list(load_fixtures()) == ["kink"]
