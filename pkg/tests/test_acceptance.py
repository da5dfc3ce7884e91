"""End-to-end acceptance checks.

Each criterion test prints one ``PASS``/``FAIL`` line; the lines are
repeated in the terminal summary so they show up without ``-s``.
"""

from fractions import Fraction

from knotgauss.codes import decorate, realize
from knotgauss.constructions import pretzel_diagram, torus_braid_diagram, whitehead_double
from knotgauss.enumerate import (
    DiagramFilter,
    check_loop_signature,
    check_pretzels,
    check_symmetry,
    check_whitehead,
    extremal_search,
    oracle_identity_suite,
    verify_theorem,
)
from knotgauss.gauss import mirror
from knotgauss.invariants import lk, v2, v3
from knotgauss.oracles import conway, jones, signature_and_det
from knotgauss.planar import connected_sum, positivity_status

_ORACLE_CACHE = {}


def _report(board, number, ok, what):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {what}"
    print(line)
    board.append(line)
    return ok


def _identity_suite():
    if "rep" not in _ORACLE_CACHE:
        _ORACLE_CACHE["rep"] = oracle_identity_suite(max_c=7)
    return _ORACLE_CACHE["rep"]


def test_criterion_01_v3_matches_jones(scoreboard):
    rep = _identity_suite()
    bad = rep.details["failures_by_check"]["v3-jones"]
    ok = _report(scoreboard, 1, bad == 0 and rep.scanned > 0,
                 f"v3 = -V''(1)/3 - V'''(1)/9 on {rep.scanned} diagrams, c <= 7, {bad} mismatches")
    assert ok


def test_criterion_02_v2_matches_jones_conway_and_basepoints(scoreboard):
    rep = _identity_suite()
    f = rep.details["failures_by_check"]
    bad = f["v2-jones"] + f["v2-conway"] + f["basepoint"]
    ok = _report(scoreboard, 2, bad == 0 and rep.scanned > 0,
                 f"v2 = -V''(1)/6 = a2, basepoint free, on {rep.scanned} diagrams; {f}")
    assert ok


def test_criterion_03_v3_nonnegative_almost_positive(scoreboard):
    rep = verify_theorem("TH1", 8)
    ok = _report(scoreboard, 3, rep.passed and rep.scanned > 0,
                 f"v3 >= 0 on {rep.scanned} almost positive diagrams, c <= 8")
    assert ok, rep.counterexamples[:5]


def test_criterion_04_zero_sets_are_twist_diagrams(scoreboard):
    th2 = verify_theorem("TH2", 8)
    th3 = verify_theorem("TH3", 8)
    ok = _report(scoreboard, 4, th2.passed and th3.passed,
                 f"{{v3=0}} and {{v2=0}} equal the twist diagrams on {th2.scanned} diagrams; "
                 f"zero set {th2.details.get('zero_set')}")
    assert ok, (th2.counterexamples[:5], th3.counterexamples[:5])


def test_criterion_05_linking_bounds(scoreboard):
    lm2 = verify_theorem("LM2", 9)
    lk43 = verify_theorem("LK43", 9)
    ok = _report(scoreboard, 5, lm2.passed and lk43.passed,
                 f"lk >= 3 floor((c-1)/2) on {lm2.scanned} bireduced diagrams; "
                 f"lk >= 4c/3 fails at c in {lk43.details['failing_crossing_numbers']}")
    assert ok, (lm2.counterexamples[:5], lk43.counterexamples[:5])


def test_criterion_06_t2bar_identity(scoreboard):
    rep = verify_theorem("T2BAR", 8)
    ok = _report(scoreboard, 6, rep.passed and rep.scanned > 0,
                 f"dlk = 4 dv2 at {rep.details.get('sites')} sites on {rep.scanned} positive diagrams")
    assert ok, rep.counterexamples[:5]


def test_criterion_07_ratio_21_over_5(fixtures, scoreboard):
    shadow = realize(fixtures["9_40"].matching)
    d = decorate(shadow, [1] * 9)
    same = jones(d) == jones(fixtures["8_19"])
    ok = _report(scoreboard, 7, lk(d) == 21 and v2(d) == 5 and same,
                 f"positive 9_40 shadow: lk={lk(d)}, v2={v2(d)}, ratio {Fraction(lk(d), v2(d))}, "
                 f"Jones {jones(d)} matches 8_19: {same}")
    assert ok


def test_criterion_07_search_finds_same_ratio():
    flt = DiagramFilter(1, 9, positivity=0, connected=True, no_clasp=True)
    res = extremal_search("max-lk/v2", flt)
    assert res.value == Fraction(21, 5)
    assert v2(res.witness) == 5 and lk(res.witness) == 21


def test_criterion_08_whitehead_doubles(fixtures, scoreboard):
    names = ["unknot", "3_1", "4_1", "5_1", "5_2", "6_1"]
    rep = check_whitehead({n: fixtures[n] for n in names})
    biggest = max(row["c"] for row in rep.details["doubles"].values())
    ok = _report(scoreboard, 8, rep.passed and rep.scanned == 12,
                 f"v3(w+-(K)) = +-8 v2(K) for {', '.join(names)}; largest double {biggest} crossings")
    assert ok, rep.counterexamples


def test_criterion_08_doubles_are_untwisted(fixtures):
    # 5_2 doubles have 32 crossings, past the skein budget
    for name in ["3_1", "4_1"]:
        for sign in (1, -1):
            assert conway(whitehead_double(fixtures[name], sign)).coeffs == (1,)


def test_criterion_09_pretzel_formula(scoreboard):
    rep = check_pretzels((1, 3, 5, 7))
    ok = _report(scoreboard, 9, rep.passed and rep.scanned == 64 + 16,
                 f"v2(P(p,q,r)) = (pq+pr+qr+1)/4 and the P(p,q,-1) zero rule over {rep.scanned} cases")
    assert ok, rep.counterexamples


def test_criterion_09_pretzel_spot_values():
    assert v2(pretzel_diagram(3, 5, 7)) == 18
    assert v2(pretzel_diagram(1, 5, -1)) == 0
    assert v2(pretzel_diagram(3, 3, -1)) != 0


def test_criterion_10_six_crossing_examples(fixtures, scoreboard):
    a, b = v3(fixtures["!6_1"]), v3(fixtures["!6_2"])
    ok = _report(scoreboard, 10, a == -4 and b == -4, f"v3(!6_1) = {a}, v3(!6_2) = {b}")
    assert ok
    assert fixtures["!6_1"].c == 6 and fixtures["!6_2"].c == 6


def test_criterion_11_signature_suite(trefoil, scoreboard):
    sd = signature_and_det(trefoil)
    sigma = verify_theorem("SIGMA", 9)
    loops = check_loop_signature(samples=1000, seed=0)
    ok = _report(scoreboard, 11, sd.sigma_paper == 2 and sd.det_signed == -3 and sigma.passed and loops.passed
                 and loops.scanned == 1000,
                 f"trefoil (sigma, det) = ({sd.sigma_paper}, {sd.det_signed}); "
                 f"sigma >= 2, = 2 iff g = 1 on {sigma.scanned} diagrams; "
                 f"loop moves never raise sigma on {loops.scanned} samples (seed 0)")
    assert ok, (sigma.counterexamples[:5], loops.counterexamples[:5])


def test_criterion_12_symmetry_and_additivity(fixtures, scoreboard):
    rep = check_symmetry(6, partners=[fixtures["3_1"], fixtures["4_1"]])
    bad = []
    for name, d in fixtures.items():
        m = mirror(d)
        if v2(m) != v2(d) or v3(m) != -v3(d):
            bad.append(name)
        for other in fixtures.values():
            s = connected_sum(d, other)
            if v2(s) != v2(d) + v2(other) or v3(s) != v3(d) + v3(other):
                bad.append(f"{name}#")
                break
    ok = _report(scoreboard, 12, rep.passed and not bad,
                 f"mirror and connected-sum rules on {rep.scanned} diagrams c <= 6 "
                 f"and {len(fixtures)} fixtures")
    assert ok, (rep.counterexamples[:5], bad)


def test_torus_4_5_matches_conway(scoreboard):
    d = torus_braid_diagram(4, 5)
    ok = _report(scoreboard, "T(4,5)", v2(d) == 15 and conway(d, max_degree=2).a2 == 15,
                 f"v2 = {v2(d)}, Conway a2 = {conway(d, max_degree=2).a2}, {positivity_status(d)}")
    assert ok
