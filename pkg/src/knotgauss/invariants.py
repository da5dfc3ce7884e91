"""Gauss-sum invariants: linked pairs, v2 and v3.

Conventions (checked against the Jones polynomial on every diagram with up to
seven crossings and every over/under choice):

* v2 counts interleaved pairs whose endpoints, read from the basepoint, form
  ``head_b, tail_a, tail_b, head_a``, weighted by ``w_a * w_b``.
* v3 = sum over pairwise-interleaved triples of ``w w w``
       + sum over (base chord, two non-interleaved parallel arrows crossing it)
         of ``w w w``
       + sum over all interleaved pairs of ``(w_p + w_q) / 2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codes import KnotDiagram
from .gauss import GaussDiagram, as_gauss, distinguished_flags
from .planar import genus, positivity_status


def linked_pairs(g: GaussDiagram | KnotDiagram) -> list[tuple[int, int, int]]:
    """Interleaved pairs ``(a, b, distinguished)`` with a < b."""
    g = as_gauss(g)
    return [(a, b, dist) for (a, b), dist in sorted(distinguished_flags(g).items())]


def lk(g: GaussDiagram | KnotDiagram) -> int:
    return sum(m.bit_count() for m in as_gauss(g).masks) // 2


def _pairs(g: GaussDiagram):
    masks = g.masks
    for a in range(g.c):
        m = masks[a] >> (a + 1)
        b = a + 1
        while m:
            if m & 1:
                yield a, b
            m >>= 1
            b += 1


def v2(g: GaussDiagram | KnotDiagram, basepoint: int = 0, pattern: str = "HTTH") -> int:
    """Polyak-Viro sum for the Casson invariant.

    ``basepoint`` b places the base point on the edge entering position b.
    ``pattern`` ``"THHT"`` selects the alternative arrow picture; both give
    the same value.
    """
    g = as_gauss(g)
    n = g.n
    if n == 0:
        return 0
    want = tuple(ch == "H" for ch in pattern)
    total = 0
    for a, b in _pairs(g):
        ta, ha, wa = g.arrows[a]
        tb, hb, wb = g.arrows[b]
        pts = sorted([((ta - basepoint) % n, False), ((ha - basepoint) % n, True),
                      ((tb - basepoint) % n, False), ((hb - basepoint) % n, True)])
        if tuple(h for _, h in pts) == want:
            total += wa * wb
    return total


@dataclass
class ConfigCensus:
    n33: int = 0
    n420: int = 0
    w33: int = 0
    w420: int = 0
    linked_term: int = 0
    linked: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def lk(self) -> int:
        return len(self.linked)

    @property
    def v3(self) -> int:
        return self.w33 + self.w420 + self.linked_term

    def to_dict(self) -> dict:
        return {"n33": self.n33, "n420": self.n420, "w33": self.w33, "w420": self.w420,
                "linked_term": self.linked_term, "lk": self.lk,
                "linked": [[a + 1, b + 1, d + 1] for a, b, d in self.linked]}


def _parallel_heads(g: GaussDiagram, base: int, x: int, y: int) -> bool:
    """Heads of x and y lie on the same side of the base chord."""
    t, h, _ = g.arrows[base]
    lo, hi = min(t, h), max(t, h)
    return (lo < g.arrows[x][1] < hi) == (lo < g.arrows[y][1] < hi)


def config_census(g: GaussDiagram | KnotDiagram, with_pairs: bool = True) -> ConfigCensus:
    g = as_gauss(g)
    masks = g.masks
    w = g.signs
    cen = ConfigCensus()
    for a, b in _pairs(g):
        cen.linked_term += (w[a] + w[b]) // 2
        # third chord of a (3,3) triple, counted once with c > b
        m = (masks[a] & masks[b]) >> (b + 1)
        c = b + 1
        while m:
            if m & 1:
                cen.n33 += 1
                cen.w33 += w[a] * w[b] * w[c]
            m >>= 1
            c += 1
    for base in range(g.c):
        nbrs = [x for x in range(g.c) if (masks[base] >> x) & 1]
        for i, x in enumerate(nbrs):
            for y in nbrs[i + 1:]:
                if (masks[x] >> y) & 1:
                    continue
                if _parallel_heads(g, base, x, y):
                    cen.n420 += 1
                    cen.w420 += w[base] * w[x] * w[y]
    if with_pairs:
        cen.linked = linked_pairs(g)
    return cen


def v3(g: GaussDiagram | KnotDiagram) -> int:
    return config_census(g, with_pairs=False).v3


@dataclass(frozen=True)
class InvariantReport:
    v2: int
    v3: int
    lk: int
    writhe: int
    c: int
    s: int
    g: int
    status: str

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def report(d: KnotDiagram) -> InvariantReport:
    gd = as_gauss(d)
    gr = genus(d)
    return InvariantReport(v2(gd), v3(gd), lk(gd), d.writhe, gr.c, gr.s, gr.g,
                           positivity_status(d).name)
