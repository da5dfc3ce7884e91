"""Parameterized diagram families: twist knots, pretzels, torus braids and
untwisted Whitehead doubles.

Planar families are wired port by port: every crossing has four slots in
counterclockwise order and each edge joins two ports.  Crossing signs are
then read off the geometry by ``from_planar`` rather than declared.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Sequence

from .codes import (ChordMatching, DiagramError, KnotDiagram, decorate, diagram_from_word,
                    from_planar, realize)

ALTERNATING = "Alternating"
ALMOST_POSITIVE_UNKNOT = "AlmostPositiveUnknot"

DOUBLE_BUDGET = 12

Port = tuple[int, int]


def _assemble(n: int, links: Sequence[tuple[Port, Port]], axes: Sequence[int]) -> KnotDiagram:
    """Diagram from port-to-port edges; ``axes[x]`` picks the over-strand slots."""
    crossings = [[0] * 4 for _ in range(n)]
    used = set()
    for label, (p, q) in enumerate(links, 1):
        for x, k in (p, q):
            if (x, k) in used:
                raise DiagramError(f"port {(x, k)} wired twice")
            used.add((x, k))
            crossings[x][k] = label
    if len(used) != 4 * n:
        raise DiagramError("some crossing ports are not wired")
    return from_planar(crossings, axes)


# ---------------------------------------------------------------------------
# Twist knots


def _twist_word(n: int) -> tuple[list[int], int]:
    """Shadow word of the n-crossing twist diagram and the clasp-end crossing.

    Odd n:  a v1..vm p a vm..v1 p      (m = n - 2)
    Even n: k v1..vm k p vm..v1 p      (m = n - 2)
    Crossing ids are 0-based; the returned crossing is the one that carries
    the negative sign in the almost positive variant.
    """
    m = n - 2
    vs = list(range(1, m + 1))
    a, p = 0, m + 1
    if n % 2:
        word = [a] + vs + [p, a] + vs[::-1] + [p]
    else:
        word = [a] + vs + [a, p] + vs[::-1] + [p]
    return word, p


def twist_knot_diagram(n: int, variant: str = ALMOST_POSITIVE_UNKNOT) -> KnotDiagram:
    """n-crossing twist diagram.

    ``AlmostPositiveUnknot`` gives the unknotted diagram with exactly one
    negative crossing (n = 1 is a negative kink).  ``Alternating`` puts
    alternating over/under passages on the same shadow, which for n >= 3
    is the standard diagram of the twist knot with n crossings.
    """
    if n < 1:
        raise ValueError(f"twist diagrams need n >= 1, got {n}")
    variant = _variant(variant)
    if n == 1:
        if variant == ALTERNATING:
            return diagram_from_word([0, 0], [True, False], [1])
        return diagram_from_word([0, 0], [True, False], [-1])
    word, neg = _twist_word(n)
    emb = realize(ChordMatching(_partner(word)))
    if variant == ALTERNATING:
        over = [p % 2 == 0 for p in range(2 * n)]
        first = {}
        for p, x in enumerate(word):
            first.setdefault(x, p)
        # a crossing's sign is eps when its first passage is under
        signs = [-emb.eps[x] if over[first[x]] else emb.eps[x] for x in range(n)]
        return diagram_from_word(word, over, signs)
    signs = [1] * n
    signs[neg] = -1
    return decorate(emb, signs)


def _partner(word: Sequence[int]) -> tuple[int, ...]:
    seen: dict[int, int] = {}
    partner = [0] * len(word)
    for p, x in enumerate(word):
        if x in seen:
            partner[p], partner[seen[x]] = seen[x], p
        else:
            seen[x] = p
    return tuple(partner)


def _variant(name: str) -> str:
    key = name.lower().replace("_", "").replace("-", "")
    if key in ("alternating", "alt"):
        return ALTERNATING
    if key in ("almostpositiveunknot", "apu"):
        return ALMOST_POSITIVE_UNKNOT
    raise ValueError(f"unknown twist variant {name!r}")


# ---------------------------------------------------------------------------
# Pretzels
#
# Column i holds |p_i| crossings stacked top to bottom; slots are
# [NE, NW, SW, SE].  Tops of neighbouring columns are joined, the last
# column's top wraps around to the first, and likewise at the bottom.

NE, NW, SW, SE = 0, 1, 2, 3


def _pretzel_links(params: Sequence[int]) -> tuple[int, list[tuple[Port, Port]], list[int]]:
    links = []
    cols = []
    x = 0
    for p in params:
        ids = list(range(x, x + abs(p)))
        x += abs(p)
        cols.append(ids)
        for u, v in zip(ids, ids[1:]):
            links.append(((u, SW), (v, NW)))
            links.append(((u, SE), (v, NE)))
    k = len(cols)
    for i in range(k):
        j = (i + 1) % k
        links.append(((cols[i][0], NE), (cols[j][0], NW)))
        links.append(((cols[i][-1], SE), (cols[j][-1], SW)))
    return x, links, cols


@lru_cache(maxsize=None)
def _pretzel_positive_axis() -> int:
    n, links, _ = _pretzel_links((1, 1, 1))
    for ax in (0, 1):
        if from_planar(_wire(n, links), [ax] * n).writhe == 3:
            return ax
    raise AssertionError("no handedness gives a positive P(1,1,1)")


def _wire(n: int, links) -> list[list[int]]:
    crossings = [[0] * 4 for _ in range(n)]
    for label, ((x, k), (y, j)) in enumerate(links, 1):
        crossings[x][k] = crossings[y][j] = label
    return crossings


def pretzel_diagram(p: int, q: int, r: int) -> KnotDiagram:
    """Standard three-column pretzel diagram P(p, q, r).

    Handedness is fixed so that P(1, 1, 1) is the positive trefoil diagram.
    """
    params = (p, q, r)
    if any(v == 0 for v in params):
        raise ValueError("pretzel parameters must be non-zero")
    if sum(1 for v in params if v % 2 == 0) > 1:
        raise DiagramError(f"P{params} is a link, not a knot")
    n, links, cols = _pretzel_links(params)
    pos = _pretzel_positive_axis()
    axes = [0] * n
    for v, ids in zip(params, cols):
        for x in ids:
            axes[x] = pos if v > 0 else 1 - pos
    return _assemble(n, links, axes)


# ---------------------------------------------------------------------------
# Torus knots as positive braid closures


def torus_braid_diagram(p: int, q: int) -> KnotDiagram:
    """Closure of (s_1 ... s_{p-1})^q on p strands, all crossings positive."""
    if p < 2 or q < 2:
        raise ValueError("torus braid needs p, q >= 2")
    if gcd(p, q) != 1:
        raise DiagramError(f"T({p},{q}) is a link: gcd is {gcd(p, q)}")
    word = [i for _ in range(q) for i in range(p - 1)]
    n = len(word)
    links = []
    top: list[Port | None] = [None] * p
    cur: list[Port | None] = [None] * p
    for x, i in enumerate(word):
        for pos, slot in ((i, NW), (i + 1, NE)):
            if cur[pos] is None:
                top[pos] = (x, slot)
            else:
                links.append((cur[pos], (x, slot)))
        cur[i], cur[i + 1] = (x, SW), (x, SE)
    for i in range(p):
        links.append((cur[i], top[i]))
    for ax in (0, 1):
        d = _assemble(n, links, [ax] * n)
        if all(s > 0 for s in d.signs):
            return d
    raise AssertionError("braid closure has mixed signs")


# ---------------------------------------------------------------------------
# Untwisted Whitehead doubles
#
# Each companion crossing becomes a 2x2 grid.  Around a companion crossing
# the doubled half-edge at slot k has ports (k, a) and (k, b), a first in
# counterclockwise order.  Grid crossings sit at (sx, sy) in {-1, 1}^2 with
# slots [E, N, W, S] and companion slot k pointing in direction k * 90deg.

E_, N_, W_, S_ = 0, 1, 2, 3
_GRID = [(1, -1), (1, 1), (-1, 1), (-1, -1)]


def _grid_port(sx: int, sy: int, slot: int) -> tuple[str, object]:
    """Where a grid crossing's slot leads: ('ext', (k, side)) or ('int', (pos, slot))."""
    if slot == E_:
        return ("ext", (0, "a" if sy < 0 else "b")) if sx > 0 else ("int", ((1, sy), W_))
    if slot == W_:
        return ("ext", (2, "b" if sy < 0 else "a")) if sx < 0 else ("int", ((-1, sy), E_))
    if slot == N_:
        return ("ext", (1, "a" if sx > 0 else "b")) if sy > 0 else ("int", ((sx, 1), S_))
    return ("ext", (3, "b" if sx > 0 else "a")) if sy < 0 else ("int", ((sx, -1), N_))


@dataclass(frozen=True)
class DoubleSpec:
    """Input of ``whitehead_double``; ``clasp_sign`` is the + or - of w+-."""

    companion: KnotDiagram
    clasp_sign: int

    def __post_init__(self):
        if self.clasp_sign not in (1, -1):
            raise ValueError("clasp_sign must be +1 or -1")


def whitehead_double(companion: KnotDiagram, clasp_sign: int, twists: int = 0) -> KnotDiagram:
    """Untwisted Whitehead double w+ (clasp_sign = 1) or w- (clasp_sign = -1).

    The clasp label follows the identity v3(w+-(K)) = +-8 v2(K).  Under the
    crossing-sign convention used here the two clasp crossings of w+ are
    negative: with ``twists=-1`` and clasp crossings positive the unknot's
    double is the positive trefoil, so w+ = D-(K) in that (Rudolph) naming.

    The blackboard 2-parallel of the companion picks up framing w, which is
    cancelled by |w| full twists of the band on one edge, so the result has
    4c + 2|w| + 2 crossings.  ``twists`` sets a different framing, in full
    twists relative to the untwisted double.
    """
    spec = DoubleSpec(companion, clasp_sign)
    d = spec.companion
    if d.c > DOUBLE_BUDGET:
        raise ValueError(f"companion has {d.c} crossings; the budget is {DOUBLE_BUDGET}")
    # planar crossings 0 and 1 are the clasp, so crossing id 0 is C1
    c1, c2 = 0, 1
    links: list[tuple[Port, Port]] = [((c1, W_), (c2, S_)), ((c1, N_), (c2, E_))]
    axes: list[int] = [0, 0]

    ext: dict[tuple[int, int, str], Port] = {}
    if d.c:
        code, over_axis = d.planar_code()
        for x in range(d.c):
            ids = {}
            for sx, sy in _GRID:
                ids[(sx, sy)] = len(axes)
                axes.append(over_axis[x])
            for (sx, sy), gid in ids.items():
                for slot in range(4):
                    kind, where = _grid_port(sx, sy, slot)
                    if kind == "ext":
                        k, side = where
                        ext[(x, k, side)] = (gid, slot)
                    else:
                        pos, jslot = where
                        if gid < ids[pos]:
                            links.append(((gid, slot), (ids[pos], jslot)))
        occ: dict[int, list[tuple[int, int]]] = {}
        for x, cr in enumerate(code):
            for k, e in enumerate(cr):
                occ.setdefault(e, []).append((x, k))
        edges = sorted(occ.items())
        for e, ((x, k), (y, j)) in edges[1:]:
            links.append((ext[(x, k, "a")], ext[(y, j, "b")]))
            links.append((ext[(x, k, "b")], ext[(y, j, "a")]))
        (x, k), (y, j) = edges[0][1]
        south, north = ext[(x, k, "a")], ext[(x, k, "b")]
        end_north, end_south = ext[(y, j, "a")], ext[(y, j, "b")]
        w = d.writhe
    else:
        # the band leaves the clasp on the right and comes back on the left
        south, north = (c1, E_), (c2, N_)
        w = 0

    # band twists between the doubled strands, slots [NE, NW, SW, SE]
    extra = twists - w
    twist_axis = 1 if extra > 0 else 0
    for _ in range(2 * abs(extra)):
        t = len(axes)
        axes.append(twist_axis)
        links.append((south, (t, SW)))
        links.append((north, (t, NW)))
        south, north = (t, SE), (t, NE)

    # clasp ends, slots [E, N, W, S]
    left_top, left_bottom = (c2, W_), (c1, S_)
    right_top, right_bottom = (c2, N_), (c1, E_)
    links += [(north, left_top), (south, left_bottom)]
    if d.c:
        links += [(right_top, end_north), (right_bottom, end_south)]
    for ax in (1, 0):
        out = _assemble(len(axes), links, [ax, ax] + axes[2:])
        if out.signs[0] == -clasp_sign:
            return out
    raise AssertionError("clasp sign could not be realized")
