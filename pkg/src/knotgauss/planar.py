"""Faces, Seifert circles, clasps and diagram moves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .codes import DiagramError, KnotDiagram, diagram_from_word
from . import gauss
from .gauss import GaussDiagram, pair_relation, to_gauss_diagram


class MoveNotApplicable(ValueError):
    """The requested move's precondition does not hold."""


Dart = tuple[int, int]
Face = tuple[Dart, ...]

REVERSE = "Reverse"
PARALLEL = "Parallel"
RESOLVED = "Resolved"


def planar_faces(crossings: Sequence[Sequence[int]]) -> list[Face]:
    """Faces of a planar code given as counterclockwise edge ids per crossing.

    A dart ``(x, k)`` leaves crossing x along slot k with corner k (between
    slots k and k+1) on its left; the next dart of that face leaves the far
    end of the edge along the slot clockwise from the arrival slot.
    """
    if not crossings:
        return [(), ()]
    occ: dict[int, list[Dart]] = {}
    for x, cr in enumerate(crossings):
        for k, e in enumerate(cr):
            occ.setdefault(e, []).append((x, k))
    seen = set()
    out = []
    for x in range(len(crossings)):
        for k in range(4):
            if (x, k) in seen:
                continue
            face = []
            dart = (x, k)
            while dart not in seen:
                seen.add(dart)
                face.append(dart)
                a, b = occ[crossings[dart[0]][dart[1]]]
                y, j = b if a == dart else a
                dart = (y, (j - 1) % 4)
            if dart != (x, k):
                raise DiagramError("face traversal failed: corrupt embedding")
            out.append(tuple(face))
    return out


def faces(d: KnotDiagram) -> list[Face]:
    code, _ = d.planar_code()
    fs = planar_faces(code)
    if len(fs) != d.c + 2:
        raise DiagramError(f"{len(fs)} faces for {d.c} crossings: corrupt embedding")
    return fs


def seifert_circle_count(d: KnotDiagram) -> int:
    """Cycles of the oriented smoothing: position p continues at partner(p)+1."""
    n = d.n
    if n == 0:
        return 1
    partner = d.partner
    seen = bytearray(n)
    s = 0
    for p0 in range(n):
        if seen[p0]:
            continue
        s += 1
        p = p0
        while not seen[p]:
            seen[p] = 1
            p = (partner[p] + 1) % n
    return s


@dataclass(frozen=True)
class GenusReport:
    c: int
    s: int
    g: int


def genus(d: KnotDiagram) -> GenusReport:
    s = seifert_circle_count(d)
    twice = d.c - s + 1
    if twice % 2 or twice < 0:
        raise DiagramError(f"c={d.c}, s={s} give a non-integral genus")
    return GenusReport(d.c, s, twice // 2)


@dataclass(frozen=True)
class ClaspRecord:
    crossings: tuple[int, int]
    kind: str


def find_clasps(d: KnotDiagram) -> list[ClaspRecord]:
    """One record per digon face bounded by two distinct crossings."""
    if d.c < 2:
        return []
    g = to_gauss_diagram(d)
    out = []
    for face in faces(d):
        if len(face) != 2 or face[0][0] == face[1][0]:
            continue
        x, y = sorted((face[0][0], face[1][0]))
        if d.signs[x] != d.signs[y]:
            kind = RESOLVED
        elif g.interleaved(x, y):
            kind = PARALLEL
        else:
            kind = REVERSE
        out.append(ClaspRecord((x, y), kind))
    return out


def delete_crossings(d: KnotDiagram, doomed: set[int]) -> KnotDiagram:
    keep = [p for p in range(d.n) if d.word[p] not in doomed]
    return diagram_from_word([d.word[p] for p in keep], [d.over[p] for p in keep], d.signs)


def nugatory_crossings(d: KnotDiagram) -> set[int]:
    masks = to_gauss_diagram(d).masks
    return {x for x, m in enumerate(masks) if m == 0}


def reduce(d: KnotDiagram) -> KnotDiagram:
    """Remove nugatory crossings until none are left."""
    while True:
        doomed = nugatory_crossings(d)
        if not doomed:
            return d
        d = delete_crossings(d, doomed)


def is_reduced(d: KnotDiagram) -> bool:
    return not nugatory_crossings(d)


def is_bireduced(d: KnotDiagram) -> bool:
    """No parallel pair p, q with equal interlacement that is not a digon."""
    g = to_gauss_diagram(d)
    masks = g.masks
    candidates = []
    for p in range(d.c):
        for q in range(p + 1, d.c):
            if (masks[p] >> q) & 1 or masks[p] != masks[q]:
                continue
            candidates.append((p, q))
    if not candidates:
        return True
    digons = {frozenset(cl.crossings) for cl in find_clasps(d)}
    for p, q in candidates:
        if frozenset((p, q)) in digons:
            continue
        if pair_relation(g, p, q).kind == gauss.PARALLEL:
            return False
    return True


def _first_planar(candidates):
    for word, over, signs in candidates:
        d = diagram_from_word(word, over, signs, check=False)
        if d.is_planar():
            return d
    return None


def apply_t2bar(d: KnotDiagram, at: int, variant: str = "reverse") -> KnotDiagram:
    """Extend the twist region at crossing ``at`` by a reverse clasp.

    The word ``A x B x C`` becomes ``A x y z B z y x C`` with y, z carrying
    the sign of x.  Only the reverse (antiparallel) variant exists; asking
    for the parallel variant raises MoveNotApplicable.
    """
    if variant != "reverse":
        raise MoveNotApplicable("t2bar only inserts reverse clasps; parallel strands rejected")
    if not 0 <= at < d.c:
        raise IndexError(f"crossing {at} out of range")
    f, s = d.first[at], d.second[at]
    y, z = d.c, d.c + 1
    w = d.signs[at]
    signs = list(d.signs) + [w, w]
    word = list(d.word)
    over = list(d.over)
    candidates = []
    for oy, oz in ((not over[f], over[f]), (over[f], not over[f]),
                   (not over[f], not over[f]), (over[f], over[f])):
        nw = word[:f + 1] + [y, z] + word[f + 1:s] + [z, y] + word[s:]
        no = over[:f + 1] + [oy, oz] + over[f + 1:s] + [not oz, not oy] + over[s:]
        candidates.append((nw, no, signs))
    out = _first_planar(candidates)
    if out is None:
        raise MoveNotApplicable(f"no planar reverse clasp at crossing {at + 1}")
    return out


def resolve_clasp(d: KnotDiagram, clasp: ClaspRecord) -> KnotDiagram:
    """Reidemeister II: delete both crossings of a resolved clasp."""
    if clasp.kind != RESOLVED:
        raise MoveNotApplicable(f"{clasp.kind} clasp cannot be resolved")
    return delete_crossings(d, set(clasp.crossings))


def side_arc(d: KnotDiagram, k: int, side: str) -> list[int]:
    f, s = d.first[k], d.second[k]
    if side.lower() == "left":
        return list(range(f + 1, s))
    if side.lower() == "right":
        return [p % d.n for p in range(s + 1, f + d.n)]
    raise ValueError(f"side must be Left or Right, got {side!r}")


def loop_move(d: KnotDiagram | GaussDiagram, k: int, side: str = "Left",
              passage: str = "over") -> KnotDiagram | GaussDiagram:
    """Retract the loop of crossing k on the chosen side.

    The segment is switched to pass entirely over (or under) the rest of the
    diagram and pulled back, which deletes k and every crossing on the
    segment; nugatory crossings are reduced afterwards.  The end state does
    not depend on ``passage``.
    """
    if passage not in ("over", "under"):
        raise ValueError("passage must be 'over' or 'under'")
    as_gauss = isinstance(d, GaussDiagram)
    kd = from_gauss_diagram(d) if as_gauss else d
    arc = side_arc(kd, k, side)
    inside = [kd.word[p] for p in arc]
    if len(inside) != len(set(inside)):
        raise MoveNotApplicable("the loop segment has self-crossings")
    out = reduce(delete_crossings(kd, set(inside) | {k}))
    return to_gauss_diagram(out) if as_gauss else out


def loop_switches(d: KnotDiagram, k: int, side: str = "Left", passage: str = "over") -> list[int]:
    """Crossings that must be switched before the loop can be retracted."""
    want_over = passage == "over"
    return sorted(d.word[p] for p in side_arc(d, k, side) if d.over[p] != want_over)


def applicable_loops(d: KnotDiagram) -> list[tuple[int, str]]:
    out = []
    for k in range(d.c):
        for side in ("Left", "Right"):
            inside = [d.word[p] for p in side_arc(d, k, side)]
            if len(inside) == len(set(inside)):
                out.append((k, side))
    return out


def from_gauss_diagram(g: GaussDiagram) -> KnotDiagram:
    word = list(g.arrow_at)
    over = list(g.is_head)
    return diagram_from_word(word, over, g.signs)


def connected_sum(a: KnotDiagram, b: KnotDiagram) -> KnotDiagram:
    """Splice b into the base edge of a (the edge before position 0)."""
    word = list(a.word) + [x + a.c for x in b.word]
    over = list(a.over) + list(b.over)
    return diagram_from_word(word, over, list(a.signs) + list(b.signs))


@dataclass(frozen=True)
class Positivity:
    negatives: int

    @property
    def name(self) -> str:
        if self.negatives == 0:
            return "Positive"
        if self.negatives == 1:
            return "AlmostPositive"
        return f"KNegative({self.negatives})"

    def __str__(self) -> str:
        return self.name


def positivity_status(d: KnotDiagram) -> Positivity:
    return Positivity(sum(1 for s in d.signs if s < 0))
