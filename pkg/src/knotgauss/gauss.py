"""Chord and arrow combinatorics on Gauss diagrams."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .codes import DiagramError, KnotDiagram, diagram_from_word

LINKED = "Linked"
PARALLEL = "Parallel"
NONPARALLEL = "NonParallel"


@dataclass(frozen=True)
class GaussDiagram:
    """Arrows ``(tail, head, sign)`` on the points ``0..2c-1``.

    The tail sits at the under-passage and the head at the over-passage.
    """

    arrows: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        n = 2 * len(self.arrows)
        used = sorted(p for t, h, _ in self.arrows for p in (t, h))
        if used != list(range(n)):
            raise DiagramError("arrow endpoints must use every position exactly once")
        for t, h, w in self.arrows:
            if w not in (1, -1):
                raise DiagramError(f"arrow sign must be +-1, got {w}")

    @property
    def c(self) -> int:
        return len(self.arrows)

    @property
    def n(self) -> int:
        return 2 * len(self.arrows)

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(w for _, _, w in self.arrows)

    @cached_property
    def arrow_at(self) -> tuple[int, ...]:
        at = [0] * self.n
        for a, (t, h, _) in enumerate(self.arrows):
            at[t] = at[h] = a
        return tuple(at)

    @cached_property
    def is_head(self) -> tuple[bool, ...]:
        hd = [False] * self.n
        for t, h, _ in self.arrows:
            hd[h] = True
        return tuple(hd)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Interlacement bitmask of every arrow."""
        at = self.arrow_at
        out = []
        for t, h, _ in self.arrows:
            lo, hi = min(t, h), max(t, h)
            m = 0
            for p in range(lo + 1, hi):
                m ^= 1 << at[p]
            out.append(m)
        return tuple(out)

    def interleaved(self, a: int, b: int) -> bool:
        return bool((self.masks[a] >> b) & 1)

    def interlacement(self, a: int) -> set[int]:
        m = self.masks[a]
        return {b for b in range(self.c) if (m >> b) & 1}


def to_gauss_diagram(d: KnotDiagram) -> GaussDiagram:
    """One arrow per crossing; positions are those of the diagram's word."""
    return GaussDiagram(tuple(zip(d.under_pos, d.over_pos, d.signs)))


def as_gauss(g: GaussDiagram | KnotDiagram) -> GaussDiagram:
    return g if isinstance(g, GaussDiagram) else to_gauss_diagram(g)


@dataclass(frozen=True)
class PairRelation:
    kind: str
    distinguished: int | None = None


def _endpoints(g: GaussDiagram, a: int, b: int) -> list[tuple[int, int, bool]]:
    """The four endpoints of a and b in circle order: (position, arrow, is_head)."""
    pts = []
    for x in (a, b):
        t, h, _ = g.arrows[x]
        pts += [(t, x, False), (h, x, True)]
    pts.sort()
    return pts


def pair_relation(g: GaussDiagram, a: int, b: int) -> PairRelation:
    if a == b:
        raise ValueError("pair_relation needs two distinct arrows")
    if not (0 <= a < g.c and 0 <= b < g.c):
        raise IndexError(f"arrow id out of range 0..{g.c - 1}")
    pts = _endpoints(g, a, b)
    if g.interleaved(a, b):
        for i, (_, x, head) in enumerate(pts):
            _, y, nxt_head = pts[(i + 1) % 4]
            if head and y != x and not nxt_head:
                return PairRelation(LINKED, x)
        raise AssertionError("interleaved pair without a distinguished arrow")
    tails = [i for i, (_, _, head) in enumerate(pts) if not head]
    if (tails[1] - tails[0]) % 4 in (1, 3):
        return PairRelation(PARALLEL)
    return PairRelation(NONPARALLEL)


def distinguished_flags(g: GaussDiagram) -> dict[tuple[int, int], int]:
    """Distinguished arrow of every interleaved pair (a < b)."""
    out = {}
    for a in range(g.c):
        m = g.masks[a] >> (a + 1)
        b = a + 1
        while m:
            if m & 1:
                out[(a, b)] = pair_relation(g, a, b).distinguished
            m >>= 1
            b += 1
    return out


@dataclass
class LemmaReport:
    ev: bool
    two_c: bool
    eev: bool | None
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.ev and self.two_c and self.eev is not False

    def to_dict(self) -> dict:
        return {"ev": self.ev, "2C": self.two_c, "eev": self.eev,
                "failures": list(self.failures)}


def lemma_checks(g: GaussDiagram | KnotDiagram, positive_only: bool = False) -> LemmaReport:
    """Check the even-valence, 2C and (for positive diagrams) eev properties."""
    g = as_gauss(g)
    masks = g.masks
    fails = []
    ev = True
    for a, m in enumerate(masks):
        if m.bit_count() % 2:
            ev = False
            fails.append(f"ev: arrow {a + 1} has odd interlacement")
    two_c = True
    for a in range(g.c):
        for b in range(a + 1, g.c):
            if not (masks[a] >> b) & 1 and (masks[a] & masks[b]).bit_count() == 1:
                two_c = False
                fails.append(f"2C: arrows {a + 1},{b + 1} have a single common neighbour")
    eev = None
    if positive_only and all(w > 0 for w in g.signs):
        eev = True
        balance = [0] * g.c
        for (a, b), dist in distinguished_flags(g).items():
            balance[a] += 1 if dist == a else -1
            balance[b] += 1 if dist == b else -1
        for a, bal in enumerate(balance):
            if bal:
                eev = False
                fails.append(f"eev: arrow {a + 1} is unbalanced by {bal}")
    return LemmaReport(ev, two_c, eev, fails)


def split_arcs(partner: Sequence[int]) -> tuple[list[int], list[int]] | None:
    """Cut the circle into two partner-closed non-empty arcs, if possible."""
    n = len(partner)
    for i in range(n):
        open_ends = 0
        for length in range(1, n - 1):
            q = (i + length - 1) % n
            if (partner[q] - i) % n < length - 1:
                open_ends -= 1
            else:
                open_ends += 1
            if open_ends == 0:
                arc = [(i + t) % n for t in range(length)]
                rest = [(i + length + t) % n for t in range(n - length)]
                return arc, rest
    return None


def is_prime(g: GaussDiagram | KnotDiagram) -> bool:
    g = as_gauss(g)
    partner = [0] * g.n
    for t, h, _ in g.arrows:
        partner[t], partner[h] = h, t
    return split_arcs(partner) is None


def split(d: KnotDiagram) -> tuple[KnotDiagram, KnotDiagram] | None:
    """Summands of a composite diagram (None when prime)."""
    arcs = split_arcs(d.partner)
    if arcs is None:
        return None
    parts = []
    for arc in arcs:
        arc = sorted(arc)
        parts.append(diagram_from_word([d.word[p] for p in arc], [d.over[p] for p in arc],
                                       d.signs))
    return parts[0], parts[1]


def prime_factors(d: KnotDiagram) -> list[KnotDiagram]:
    parts = split(d)
    if parts is None:
        return [d]
    return prime_factors(parts[0]) + prime_factors(parts[1])


def mirror(d: KnotDiagram) -> KnotDiagram:
    """Swap every over/under passage; all crossing signs flip."""
    return KnotDiagram(d.word, tuple(not o for o in d.over), tuple(-s for s in d.signs))


def reverse(d: KnotDiagram) -> KnotDiagram:
    """Traverse the knot backwards; crossing signs are unchanged."""
    return diagram_from_word(d.word[::-1], d.over[::-1], d.signs)


def mirror_gauss(g: GaussDiagram) -> GaussDiagram:
    return GaussDiagram(tuple((h, t, -w) for t, h, w in g.arrows))
