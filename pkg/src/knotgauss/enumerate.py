"""Exhaustive enumeration of small knot shadows and decorated diagrams.

Shadows are chord matchings in which every chord joins an even position to
an odd one (a necessary condition for planarity), so there are c! candidates
instead of (2c-1)!!.  A matching is emitted only when it is its own canonical
form: the least partner-offset sequence over all rotations and reflections
of the circle.  The candidate space is partitioned by the partner of
position 0; each partition is scanned independently and the results are
merged in canonical order, so the output does not depend on the number of
workers.
"""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Iterator, Sequence

from .codes import ChordMatching, Embedding, KnotDiagram, chord_index, decorate, \
    interlacement_masks, realize
from .constructions import pretzel_diagram, twist_knot_diagram, whitehead_double
from .gauss import lemma_checks, mirror, split_arcs, to_gauss_diagram
from .invariants import lk, v2, v3
from .oracles import conway, jones, signature_and_det, vassiliev_from_jones
from .planar import (PARALLEL, REVERSE, MoveNotApplicable, applicable_loops, apply_t2bar,
                     connected_sum, find_clasps, genus, is_bireduced, loop_move)

log = logging.getLogger(__name__)

SHADOW_BUDGET = 9


class BudgetExceeded(ValueError):
    """Requested crossing number is beyond the enumeration budget."""


# ---------------------------------------------------------------------------
# Canonical forms


def offsets(partner: Sequence[int]) -> tuple[int, ...]:
    n = len(partner)
    return tuple((q - p) % n for p, q in enumerate(partner))


def _reflected(d: tuple[int, ...]) -> tuple[int, ...]:
    n = len(d)
    return tuple((n - d[(-i) % n]) % n for i in range(n))


def canonical_offsets(partner: Sequence[int]) -> tuple[int, ...]:
    """Least offset sequence over the 2n rotations and reflections."""
    d = offsets(partner)
    if not d:
        return d
    e = _reflected(d)
    n = len(d)
    return min(min(d[r:] + d[:r] for r in range(n)), min(e[r:] + e[:r] for r in range(n)))


def is_canonical(partner: Sequence[int]) -> bool:
    d = offsets(partner)
    n = len(d)
    for r in range(1, n):
        if d[r:] + d[:r] < d:
            return False
    e = _reflected(d)
    for r in range(n):
        if e[r:] + e[:r] < d:
            return False
    return True


def partner_from_offsets(d: Sequence[int]) -> tuple[int, ...]:
    n = len(d)
    return tuple((p + d[p]) % n for p in range(n))


def symmetries(partner: Sequence[int]) -> list[tuple[int, ...]]:
    """Dihedral position maps (old position -> new position) fixing the shadow."""
    n = len(partner)
    d = offsets(partner)
    e = _reflected(d)
    out = []
    for r in range(n):
        if d[r:] + d[:r] == d:
            out.append(tuple((i - r) % n for i in range(n)))
        if e[r:] + e[:r] == d:
            out.append(tuple((-i - r) % n for i in range(n)))
    return out


def diagram_key(d: KnotDiagram) -> tuple:
    """Canonical key of a decorated diagram: shadow offsets with signs.

    Over/under data is left out: on a fixed shadow it is determined by the
    signs up to turning the whole diagram over, which is an isotopy.
    """
    n = d.n
    if n == 0:
        return ()
    seq = tuple((off, d.signs[x]) for off, x in zip(offsets(d.partner), d.word))
    rseq = tuple(((n - seq[(-i) % n][0]) % n, seq[(-i) % n][1]) for i in range(n))
    return min(min(seq[r:] + seq[:r] for r in range(n)),
               min(rseq[r:] + rseq[:r] for r in range(n)))


def diagram_code(key: tuple) -> str:
    """Human readable form of a ``diagram_key``."""
    return " ".join(f"{off}{'+' if s > 0 else '-'}" for off, s in key)


# ---------------------------------------------------------------------------
# Shadows


def _scan_partition(c: int, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Canonical realizable shadows whose position 0 is matched to 2k+1."""
    n = 2 * c
    odds = [p for p in range(1, n, 2) if p != 2 * k + 1]
    out = []
    partner = [0] * n
    partner[0], partner[2 * k + 1] = 2 * k + 1, 0
    for perm in permutations(odds):
        for i, o in enumerate(perm, 1):
            partner[2 * i] = o
            partner[o] = 2 * i
        if not is_canonical(partner):
            continue
        emb = realize(ChordMatching(tuple(partner)))
        if emb:
            out.append((tuple(partner), emb.eps))
    return out


def _run_partitions(c: int, jobs: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    parts = list(range(c))
    if jobs > 1 and c >= 7:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_scan_partition, [c] * len(parts), parts))
    else:
        chunks = [_scan_partition(c, k) for k in parts]
    merged = [item for chunk in chunks for item in chunk]
    merged.sort(key=lambda it: offsets(it[0]))
    return merged


_SHADOW_CACHE: dict[int, list] = {}


def enumerate_shadows(c: int, jobs: int = 1) -> Iterator[tuple[ChordMatching, Embedding]]:
    """Every realizable shadow with c crossings once, up to circle symmetries."""
    if c > SHADOW_BUDGET:
        raise BudgetExceeded(f"c = {c} exceeds the shadow budget {SHADOW_BUDGET}")
    if c < 0:
        raise ValueError("crossing number must be non-negative")
    if c not in _SHADOW_CACHE:
        if c == 0:
            _SHADOW_CACHE[c] = [((), ())]
        else:
            _SHADOW_CACHE[c] = _run_partitions(c, jobs)
    for partner, eps in _SHADOW_CACHE[c]:
        m = ChordMatching(partner)
        comps = realize(m).components if partner else ()
        yield m, Embedding(m, eps, comps)


def shadow_count(c: int, jobs: int = 1) -> int:
    return sum(1 for _ in enumerate_shadows(c, jobs))


# ---------------------------------------------------------------------------
# Decorated diagrams


@dataclass(frozen=True)
class DiagramFilter:
    """Structural and sign filters for ``enumerate_diagrams``.

    ``positivity`` is None (all sign patterns) or the number of negative
    crossings: 0 for positive, 1 for almost positive, k for k-negative.
    """

    min_c: int = 0
    max_c: int = 0
    positivity: int | None = 0
    connected: bool = False
    reduced: bool = False
    bireduced: bool = False
    no_clasp: bool = False
    unique: bool = True

    def __post_init__(self):
        if self.min_c < 0 or self.max_c < 0:
            raise ValueError("crossing range bounds must be non-negative")

    def describe(self) -> dict:
        pos = self.positivity
        name = ("any" if pos is None else
                "Positive" if pos == 0 else "AlmostPositive" if pos == 1 else f"KNegative({pos})")
        return {"crossings": [self.min_c, self.max_c], "positivity": name,
                "connected": self.connected, "reduced": self.reduced,
                "bireduced": self.bireduced, "no_clasp": self.no_clasp}


def sign_patterns(c: int, negatives: int | None) -> Iterator[tuple[int, ...]]:
    if negatives is None:
        yield from product((1, -1), repeat=c)
        return
    if negatives > c:
        return
    for neg in combinations(range(c), negatives):
        s = [1] * c
        for x in neg:
            s[x] = -1
        yield tuple(s)


def _pattern_is_canonical(partner, syms, signs) -> bool:
    """Whether a sign pattern is least among its images under shadow symmetries."""
    if len(syms) <= 1:
        return True
    idx = chord_index(partner)
    base = tuple(signs[idx[p]] for p in range(len(partner)))
    for sym in syms:
        img = [0] * len(base)
        for p, q in enumerate(sym):
            img[q] = base[p]
        if tuple(img) < base:
            return False
    return True


def enumerate_diagrams(flt: DiagramFilter, jobs: int = 1) -> Iterator[KnotDiagram]:
    if flt.max_c > SHADOW_BUDGET:
        raise BudgetExceeded(f"c = {flt.max_c} exceeds the shadow budget {SHADOW_BUDGET}")
    return _diagrams(flt, jobs)


def _diagrams(flt: DiagramFilter, jobs: int) -> Iterator[KnotDiagram]:
    for c in range(flt.min_c, flt.max_c + 1):
        for m, emb in enumerate_shadows(c, jobs):
            partner = m.partner
            if flt.reduced or flt.bireduced:
                if any(mask == 0 for mask in interlacement_masks(partner)):
                    continue
            if flt.connected and c > 1:
                if split_arcs(partner) is not None:
                    continue
            syms = symmetries(partner) if flt.unique else []
            for signs in sign_patterns(c, flt.positivity):
                if flt.unique and not _pattern_is_canonical(partner, syms, signs):
                    continue
                d = decorate(emb, signs)
                if flt.no_clasp and any(cl.kind in (REVERSE, PARALLEL) for cl in find_clasps(d)):
                    continue
                if flt.bireduced and not is_bireduced(d):
                    continue
                yield d


# ---------------------------------------------------------------------------
# Theorem verification

THEOREMS = ("TH1", "TH2", "TH3", "LM2", "LK43", "T2BAR", "SIGMA")


@dataclass
class TheoremReport:
    theorem: str
    filter: dict
    max_c: int
    scanned: int = 0
    counterexamples: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self, timing: bool = True) -> dict:
        out = {"theorem": self.theorem, "filter": self.filter, "max_crossings": self.max_c,
               "scanned": self.scanned, "counterexamples": list(self.counterexamples),
               "details": self.details, "pass": self.passed}
        if timing:
            out["elapsed"] = round(self.elapsed, 3)
        return out


def _twist_keys(max_c: int) -> dict[tuple, int]:
    return {diagram_key(twist_knot_diagram(n)): n for n in range(1, max_c + 1)}


def _check_th1(flt, jobs, rep):
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        if v3(d) < 0:
            rep.counterexamples.append(d.gauss_code())


def _check_zero_set(invariant, flt, jobs, rep):
    """{invariant = 0} must be exactly the twist unknot and one-crossing diagrams."""
    expected = {}
    for key, n in _twist_keys(flt.max_c).items():
        d = twist_knot_diagram(n)
        if flt.min_c <= d.c and (d.c <= 1 or split_arcs(d.partner) is None):
            expected[key] = n
    found = set()
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        val = invariant(d)
        if val < 0:
            rep.counterexamples.append(d.gauss_code())
        elif val == 0:
            key = diagram_key(d)
            found.add(key)
            if key not in expected:
                rep.counterexamples.append(d.gauss_code())
    for key, n in sorted(expected.items(), key=lambda kv: kv[1]):
        if key not in found:
            rep.counterexamples.append(f"missing twist diagram n={n}")
    rep.details["zero_set"] = sorted(expected[k] for k in found if k in expected)


def _lm2_bound(c: int) -> int:
    return 3 * ((c - 1) // 2)


def _check_lm2(flt, jobs, rep):
    plain = DiagramFilter(flt.min_c, flt.max_c, 0, connected=flt.connected, reduced=True)
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        if lk(d) < _lm2_bound(d.c):
            rep.counterexamples.append(d.gauss_code())
    # the same bound on merely reduced diagrams, for comparison only
    weak = [d.gauss_code() for d in enumerate_diagrams(plain, jobs) if lk(d) < _lm2_bound(d.c)]
    rep.details["reduced_only_failures"] = len(weak)
    rep.details["reduced_only_examples"] = weak[:5]


def _check_lk43(flt, jobs, rep):
    failing = {}
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        if 3 * lk(d) < 4 * d.c:
            failing.setdefault(d.c, d.gauss_code())
    expected = {c for c in (3, 4) if flt.min_c <= c <= flt.max_c}
    rep.details["failing_crossing_numbers"] = sorted(failing)
    rep.details["expected_exceptions"] = sorted(expected)
    for c, code in sorted(failing.items()):
        if c not in expected:
            rep.counterexamples.append(code)
    for c in sorted(expected - set(failing)):
        rep.counterexamples.append(f"no exception found at c={c}")


def _check_t2bar(flt, jobs, rep):
    sites = 0
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        if d.c == 0:
            continue
        base_lk, base_v2, base_g = lk(d), v2(d), genus(d)
        for at in range(d.c):
            try:
                e = apply_t2bar(d, at)
            except MoveNotApplicable:
                continue
            sites += 1
            g = genus(e)
            if (lk(e) - base_lk != 4 * (v2(e) - base_v2) or g.g != base_g.g
                    or g.s != base_g.s + 2 or e.c != d.c + 2):
                rep.counterexamples.append(f"{d.gauss_code()} @ {at + 1}")
    rep.details["sites"] = sites


def _check_sigma(flt, jobs, rep):
    hist: dict[str, int] = {}
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        sigma = signature_and_det(d, with_conway=False).sigma_paper
        g = genus(d).g
        key = f"g={g},sigma={sigma}"
        hist[key] = hist.get(key, 0) + 1
        if d.c == 0:
            continue
        if sigma < 2 or (sigma == 2) != (g == 1):
            rep.counterexamples.append(d.gauss_code())
    rep.details["genus_signature_histogram"] = dict(sorted(hist.items()))


_DEFAULT_FILTERS = {
    "TH1": dict(positivity=1),
    "TH2": dict(positivity=1, connected=True),
    "TH3": dict(positivity=1, connected=True),
    "LM2": dict(positivity=0, connected=True, bireduced=True),
    "LK43": dict(positivity=0, connected=True, bireduced=True),
    "T2BAR": dict(positivity=0),
    "SIGMA": dict(positivity=0, reduced=True),
}


def theorem_filter(theorem: str, max_c: int, min_c: int | None = None) -> DiagramFilter:
    theorem = theorem.upper()
    if theorem not in _DEFAULT_FILTERS:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    lo = min_c if min_c is not None else 1
    return DiagramFilter(min_c=lo, max_c=max_c, **_DEFAULT_FILTERS[theorem])


def verify_theorem(theorem: str, max_c: int, jobs: int = 1,
                   flt: DiagramFilter | None = None) -> TheoremReport:
    """Exhaustively check one statement on every diagram the filter admits."""
    theorem = theorem.upper()
    flt = flt or theorem_filter(theorem, max_c)
    if flt.max_c > SHADOW_BUDGET:
        raise BudgetExceeded(f"c = {flt.max_c} exceeds the shadow budget {SHADOW_BUDGET}")
    rep = TheoremReport(theorem, flt.describe(), flt.max_c)
    start = time.perf_counter()
    if theorem == "TH1":
        _check_th1(flt, jobs, rep)
    elif theorem == "TH2":
        _check_zero_set(v3, flt, jobs, rep)
    elif theorem == "TH3":
        _check_zero_set(v2, flt, jobs, rep)
    elif theorem == "LM2":
        _check_lm2(flt, jobs, rep)
    elif theorem == "LK43":
        _check_lk43(flt, jobs, rep)
    elif theorem == "T2BAR":
        _check_t2bar(flt, jobs, rep)
    elif theorem == "SIGMA":
        _check_sigma(flt, jobs, rep)
    else:
        raise ValueError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")
    rep.elapsed = time.perf_counter() - start
    log.info("%s up to c=%d: %d diagrams, %d counterexamples", theorem, flt.max_c,
             rep.scanned, len(rep.counterexamples))
    return rep


def check_loop_signature(samples: int = 1000, seed: int = 0, max_c: int = 9,
                         jobs: int = 1) -> TheoremReport:
    """Sampled check that a loop move never raises sigma_paper on positive diagrams."""
    flt = DiagramFilter(1, max_c, positivity=0)
    rep = TheoremReport("LOOP-SIGMA", flt.describe(), max_c)
    start = time.perf_counter()
    pool = [d for d in enumerate_diagrams(flt, jobs) if applicable_loops(d)]
    rng = random.Random(seed)
    if samples <= len(pool):
        picked = rng.sample(pool, samples)
    else:
        picked = [rng.choice(pool) for _ in range(samples)]
    for d in picked:
        k, side = rng.choice(applicable_loops(d))
        e = loop_move(d, k, side)
        rep.scanned += 1
        before = signature_and_det(d, with_conway=False).sigma_paper
        after = signature_and_det(e, with_conway=False).sigma_paper
        if after > before:
            rep.counterexamples.append(f"{d.gauss_code()} loop {k + 1} {side}")
    rep.details.update(seed=seed, samples=samples, pool=len(pool))
    rep.elapsed = time.perf_counter() - start
    return rep


IDENTITY_CHECKS = ("v2-jones", "v3-jones", "v2-conway", "basepoint")


def oracle_identity_suite(checks: Sequence[str] = IDENTITY_CHECKS, max_c: int = 7,
                          jobs: int = 1) -> TheoremReport:
    """Gauss sums against the polynomial oracles on every decorated diagram.

    Every shadow with at most ``max_c`` crossings is taken with all 2^c
    over/under assignments, without symmetry reduction.
    """
    checks = [ch.lower() for ch in checks]
    for ch in checks:
        if ch not in IDENTITY_CHECKS:
            raise ValueError(f"unknown identity check {ch!r}; expected one of {IDENTITY_CHECKS}")
    flt = DiagramFilter(0, max_c, positivity=None, unique=False)
    rep = TheoremReport("ORACLE:" + ",".join(checks), flt.describe(), max_c)
    start = time.perf_counter()
    need_jones = "v2-jones" in checks or "v3-jones" in checks
    failures = dict.fromkeys(checks, 0)
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        g = to_gauss_diagram(d)
        a, b = v2(g), v3(g)
        bad = []
        if need_jones:
            j2, j3 = vassiliev_from_jones(jones(d))
            if "v2-jones" in checks and j2 != a:
                bad.append("v2-jones")
            if "v3-jones" in checks and j3 != b:
                bad.append("v3-jones")
        if "v2-conway" in checks and conway(d, max_degree=2).a2 != a:
            bad.append("v2-conway")
        if "basepoint" in checks and d.n:
            if any(v2(g, p) != a for p in range(d.n)) or v2(g, pattern="THHT") != a:
                bad.append("basepoint")
        for name in bad:
            failures[name] += 1
        if bad:
            rep.counterexamples.append(f"{d.gauss_code()} ({','.join(bad)})")
    rep.details["failures_by_check"] = failures
    rep.elapsed = time.perf_counter() - start
    return rep


def check_lemmas(max_c: int = 8, jobs: int = 1) -> TheoremReport:
    """ev and 2C on every decorated diagram, eev on every positive one."""
    flt = DiagramFilter(0, max_c, positivity=None)
    rep = TheoremReport("LEMMAS", flt.describe(), max_c)
    start = time.perf_counter()
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        if not lemma_checks(d, positive_only=True).ok:
            rep.counterexamples.append(d.gauss_code())
    rep.elapsed = time.perf_counter() - start
    return rep


def check_symmetry(max_c: int = 6, partners: Sequence[KnotDiagram] = (),
                   jobs: int = 1) -> TheoremReport:
    """Mirror (anti)symmetry of v2, v3 and additivity under connected sum.

    Every enumerated diagram is summed with itself, its mirror and each of
    ``partners``.
    """
    flt = DiagramFilter(0, max_c, positivity=None)
    rep = TheoremReport("SYMMETRY", flt.describe(), max_c)
    start = time.perf_counter()
    pvals = [(p, v2(p), v3(p)) for p in partners]
    for d in enumerate_diagrams(flt, jobs):
        rep.scanned += 1
        a, b = v2(d), v3(d)
        m = mirror(d)
        bad = v2(m) != a or v3(m) != -b
        for e, ea, eb in [(d, a, b), (m, a, -b)] + pvals:
            s = connected_sum(d, e)
            bad = bad or v2(s) != a + ea or v3(s) != b + eb
        if bad:
            rep.counterexamples.append(d.gauss_code())
    rep.elapsed = time.perf_counter() - start
    return rep


def check_whitehead(companions: dict[str, KnotDiagram]) -> TheoremReport:
    """v3 of the untwisted doubles w+- equals +-8 v2 of the companion."""
    rep = TheoremReport("WHITEHEAD", {"companions": sorted(companions)},
                        max((d.c for d in companions.values()), default=0))
    start = time.perf_counter()
    rows = {}
    for name, k in sorted(companions.items()):
        base = v2(k)
        for sign in (1, -1):
            w = whitehead_double(k, sign)
            rep.scanned += 1
            got = v3(w)
            rows[f"{name}{'+' if sign > 0 else '-'}"] = {"c": w.c, "v3": got, "expected": 8 * sign * base}
            if got != 8 * sign * base:
                rep.counterexamples.append(f"{name} clasp {sign:+d}: {w.gauss_code()}")
    rep.details["doubles"] = rows
    rep.elapsed = time.perf_counter() - start
    return rep


def check_pretzels(values: Sequence[int] = (1, 3, 5, 7)) -> TheoremReport:
    """v2(P(p,q,r)) = (pq+pr+qr+1)/4, and v2(P(p,q,-1)) = 0 iff p = 1 or q = 1."""
    rep = TheoremReport("PRETZEL", {"parameters": list(values)}, 0)
    start = time.perf_counter()
    for p, q, r in product(values, repeat=3):
        rep.scanned += 1
        if 4 * v2(pretzel_diagram(p, q, r)) != p * q + p * r + q * r + 1:
            rep.counterexamples.append(f"P({p},{q},{r})")
    for p, q in product(values, repeat=2):
        rep.scanned += 1
        zero = v2(pretzel_diagram(p, q, -1)) == 0
        if zero != (p == 1 or q == 1):
            rep.counterexamples.append(f"P({p},{q},-1)")
    rep.elapsed = time.perf_counter() - start
    return rep


# ---------------------------------------------------------------------------
# Extremal search

OBJECTIVES = ("max-lk/v2", "min-v3", "min-v2")


@dataclass
class ExtremalResult:
    objective: str
    value: Fraction | int | None
    witnesses: list[KnotDiagram]
    scanned: int
    skipped: int = 0

    @property
    def witness(self) -> KnotDiagram | None:
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self) -> dict:
        val = self.value
        if isinstance(val, Fraction):
            val = f"{val.numerator}/{val.denominator}" if val.denominator != 1 else val.numerator
        return {"objective": self.objective, "value": val,
                "witness": self.witness.gauss_code() if self.witness else None,
                "witnesses": [w.gauss_code() for w in self.witnesses],
                "scanned": self.scanned, "skipped_v2_zero": self.skipped}


def extremal_search(objective: str, flt: DiagramFilter, jobs: int = 1) -> ExtremalResult:
    """Optimum of an objective over the filtered stream, with all tied witnesses.

    ``max-lk/v2`` skips diagrams with v2 = 0 and counts them in ``skipped``.
    """
    objective = objective.lower().replace("_", "-")
    if objective not in OBJECTIVES:
        raise ValueError(f"unknown objective {objective!r}; expected one of {OBJECTIVES}")
    best = None
    wits: list[KnotDiagram] = []
    scanned = skipped = 0
    for d in enumerate_diagrams(flt, jobs):
        scanned += 1
        if objective == "max-lk/v2":
            b = v2(d)
            if b == 0:
                skipped += 1
                continue
            score = Fraction(lk(d), b)
        elif objective == "min-v3":
            score = -v3(d)
        else:
            score = -v2(d)
        if best is None or score > best:
            best, wits = score, [d]
        elif score == best:
            wits.append(d)
    if best is not None and objective != "max-lk/v2":
        best = -best
    return ExtremalResult(objective, best, wits, scanned, skipped)
