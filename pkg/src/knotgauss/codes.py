"""Knot diagram encodings.

A knot diagram is stored as a signed Gauss word: positions ``0..2c-1`` along
the curve, each carrying a crossing id (0-based, first-visit order) and an
over/under flag, plus one sign per crossing.  The planar rotation at every
crossing is not stored; it follows from the signs and over/under flags:

    eps(x) = sign(x) * (+1 if the first passage of x is under else -1)

where ``eps = +1`` means the counterclockwise order of the four half-edges at
``x`` is ``in_f, out_s, out_f, in_s`` (f = first passage, s = second) and
``eps = -1`` means ``in_f, in_s, out_f, out_s``.  In words, eps = +1 when the
second strand crosses the first from left to right.

Text formats:

* Gauss code: tokens ``[OU]<label>[+-]``, e.g. ``O1+U2+O3+U1+O2+U3+``.
* PD code: ``X(a,b,c,d)`` terms listed counterclockwise from the incoming
  under-strand.
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from importlib import resources
from typing import Iterable, Sequence


class DiagramError(ValueError):
    """Malformed or inconsistent diagram data."""


class NotRealizableError(DiagramError):
    """The underlying chord matching is not the shadow of a planar curve."""


# ---------------------------------------------------------------------------
# Signed Gauss codes


@dataclass(frozen=True)
class GaussEntry:
    over: bool
    label: int
    sign: int | None

    def token(self) -> str:
        s = "" if self.sign is None else ("+" if self.sign > 0 else "-")
        return f"{'O' if self.over else 'U'}{self.label}{s}"


@dataclass(frozen=True)
class SignedGaussCode:
    entries: tuple[GaussEntry, ...]

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def crossings(self) -> int:
        return len(self.entries) // 2

    @property
    def signed(self) -> bool:
        return all(e.sign is not None for e in self.entries)

    def __str__(self) -> str:
        return format_gauss_code(self)


_TOKEN = re.compile(r"([OUou])(\d+)([+-]?)")


def parse_gauss_code(text: str) -> SignedGaussCode:
    """Parse ``O1+U2+...``; whitespace (and commas) between tokens is ignored."""
    s = "".join(text.replace(",", " ").split())
    entries = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise DiagramError(f"bad Gauss token at offset {pos}: {s[pos:pos + 8]!r}")
        passage, label, sign = m.groups()
        if int(label) < 1:
            raise DiagramError(f"crossing labels are positive integers, got {label}")
        entries.append(GaussEntry(
            passage in "Oo", int(label), {"+": 1, "-": -1, "": None}[sign]))
        pos = m.end()
    code = SignedGaussCode(tuple(entries))
    validate_gauss_code(code)
    return code


def validate_gauss_code(code: SignedGaussCode) -> None:
    seen: dict[int, list[GaussEntry]] = {}
    for e in code.entries:
        seen.setdefault(e.label, []).append(e)
    for label, occ in seen.items():
        if len(occ) != 2:
            raise DiagramError(f"label {label} occurs {len(occ)} times, expected 2")
        if occ[0].over == occ[1].over:
            kind = "Over" if occ[0].over else "Under"
            raise DiagramError(f"label {label} has two {kind} passages")
        if occ[0].sign != occ[1].sign:
            raise DiagramError(f"label {label} carries inconsistent signs")
    signed = [e.sign is not None for e in code.entries]
    if any(signed) and not all(signed):
        raise DiagramError("mixed signed and unsigned tokens")


def format_gauss_code(code: SignedGaussCode) -> str:
    return "".join(e.token() for e in code.entries)


def _relabel(entries: Sequence[GaussEntry]) -> tuple[GaussEntry, ...]:
    ids: dict[int, int] = {}
    out = []
    for e in entries:
        if e.label not in ids:
            ids[e.label] = len(ids) + 1
        out.append(GaussEntry(e.over, ids[e.label], e.sign))
    return tuple(out)


def canonical_gauss_code(code: SignedGaussCode) -> str:
    """Least token sequence over all rotations, after first-visit relabeling."""
    ent = code.entries
    if not ent:
        return ""

    def key(seq):
        return tuple((e.label, 0 if e.over else 1, e.sign or 0) for e in seq)

    best = min((_relabel(ent[r:] + ent[:r]) for r in range(len(ent))), key=key)
    return "".join(e.token() for e in best)


# ---------------------------------------------------------------------------
# Chord matchings and realizability


@dataclass(frozen=True)
class ChordMatching:
    """Perfect matching of the points ``0..2c-1``; ``partner[i]`` is i's mate."""

    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        n = len(p)
        if n % 2:
            raise DiagramError("a chord matching needs an even number of points")
        for i, j in enumerate(p):
            if not 0 <= j < n or j == i or p[j] != i:
                raise DiagramError(f"point {i} is not properly matched")

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> ChordMatching:
        pairs = list(pairs)
        partner = [-1] * (2 * len(pairs))
        for a, b in pairs:
            if not (0 <= a < len(partner) and 0 <= b < len(partner)):
                raise DiagramError(f"chord ({a},{b}) out of range")
            if partner[a] != -1 or partner[b] != -1:
                raise DiagramError(f"point of chord ({a},{b}) used twice")
            partner[a], partner[b] = b, a
        return cls(tuple(partner))

    @property
    def size(self) -> int:
        return len(self.partner) // 2

    @property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((i, j) for i, j in enumerate(self.partner) if i < j)


def chord_index(partner: Sequence[int]) -> list[int]:
    """Chord id at each position, chords numbered by their first endpoint."""
    idx = [-1] * len(partner)
    k = 0
    for i, j in enumerate(partner):
        if i < j:
            idx[i] = idx[j] = k
            k += 1
    return idx


def interlacement_masks(partner: Sequence[int]) -> list[int]:
    """Bitmask of interleaved chords for every chord (first-endpoint order)."""
    idx = chord_index(partner)
    masks = []
    for i, j in enumerate(partner):
        if i < j:
            m = 0
            for p in range(i + 1, j):
                m ^= 1 << idx[p]
            masks.append(m)
    return masks


def _bits(m: int):
    while m:
        low = m & -m
        yield low.bit_length() - 1
        m ^= low


@dataclass(frozen=True)
class Embedding:
    """Planar witness: one rotation bit per chord (first-endpoint order).

    ``eps[x] = +1`` means the counterclockwise order at crossing x is
    ``in_f, out_s, out_f, in_s``.  ``components`` gives the interlacement
    component of each chord; each component can be flipped independently.
    """

    matching: ChordMatching
    eps: tuple[int, ...]
    components: tuple[int, ...]

    def flipped(self) -> Embedding:
        """Global orientation flip (mirror image of the plane)."""
        return Embedding(self.matching, tuple(-e for e in self.eps), self.components)

    def face_count(self) -> int:
        return face_count(self.matching.partner, self.eps)


@dataclass(frozen=True)
class NotRealizable:
    reason: str

    def __bool__(self) -> bool:
        return False


def face_count(partner: Sequence[int], eps: Sequence[int]) -> int:
    """Number of faces of the rotation system given by ``eps`` per chord."""
    n = len(partner)
    if n == 0:
        return 2
    nxt = [0] * (2 * n)
    k = 0
    for f, s in enumerate(partner):
        if f > s:
            continue
        in_f, out_f, in_s, out_s = 2 * f, 2 * f + 1, 2 * s, 2 * s + 1
        if eps[k] > 0:
            cyc = (in_f, out_s, out_f, in_s)
        else:
            cyc = (in_f, in_s, out_f, out_s)
        for t in range(4):
            nxt[cyc[t]] = cyc[(t + 1) % 4]
        k += 1
    seen = bytearray(2 * n)
    faces = 0
    for h0 in range(2 * n):
        if seen[h0]:
            continue
        faces += 1
        h = h0
        while not seen[h]:
            seen[h] = 1
            p, kind = divmod(h, 2)
            twin = 2 * ((p + 1) % n) if kind else 2 * ((p - 1) % n) + 1
            h = nxt[twin]
    return faces


def solve_rotations(partner: Sequence[int]) -> tuple[list[int], list[int]] | str:
    """Rotation bits making the curve planar, or a reason string.

    Necessary and sufficient conditions (checked exhaustively against face
    counting for c <= 6): every chord has even interlacement, every
    non-interleaved pair has an even number of common interleaved chords, and
    for interleaved chords a, b the product eps_a * eps_b equals
    (-1) ** (1 + common(a, b) + first(a) + first(b)).  The last relation is
    propagated over each interlacement component.
    """
    firsts = [i for i, j in enumerate(partner) if i < j]
    c = len(firsts)
    masks = interlacement_masks(partner)
    for a in range(c):
        if masks[a].bit_count() % 2:
            return f"chord {a + 1} has odd interlacement"
    for a in range(c):
        ma = masks[a]
        for b in range(a + 1, c):
            if not (ma >> b) & 1 and (ma & masks[b]).bit_count() % 2:
                return f"chords {a + 1} and {b + 1} share an odd number of neighbours"
    eps = [0] * c
    comp = [-1] * c
    ncomp = 0
    for s in range(c):
        if eps[s]:
            continue
        eps[s] = 1
        comp[s] = ncomp
        queue = deque([s])
        while queue:
            a = queue.popleft()
            ma = masks[a]
            for b in _bits(ma):
                parity = 1 + (ma & masks[b]).bit_count() + firsts[a] + firsts[b]
                want = eps[a] if parity % 2 == 0 else -eps[a]
                if eps[b] == 0:
                    eps[b] = want
                    comp[b] = ncomp
                    queue.append(b)
                elif eps[b] != want:
                    return f"rotation constraint fails on chords {a + 1} and {b + 1}"
        ncomp += 1
    return eps, comp


def realize(m: ChordMatching) -> Embedding | NotRealizable:
    """Decide planarity of the curve with self-intersection pattern ``m``."""
    sol = solve_rotations(m.partner)
    if isinstance(sol, str):
        return NotRealizable(sol)
    eps, comp = sol
    emb = Embedding(m, tuple(eps), tuple(comp))
    if emb.face_count() != m.size + 2:
        return NotRealizable("face count violates the Euler relation")
    return emb


# ---------------------------------------------------------------------------
# Knot diagrams


@dataclass(frozen=True)
class KnotDiagram:
    """Signed Gauss word of a planar knot diagram.

    ``word[p]`` is the crossing at position p (crossings numbered 0.. in
    first-visit order), ``over[p]`` whether that passage is the over-strand,
    ``signs[x]`` the writhe sign of crossing x.
    """

    word: tuple[int, ...]
    over: tuple[bool, ...]
    signs: tuple[int, ...]

    @property
    def c(self) -> int:
        return len(self.signs)

    @property
    def n(self) -> int:
        return len(self.word)

    @cached_property
    def first(self) -> tuple[int, ...]:
        f = [-1] * self.c
        for p in range(self.n - 1, -1, -1):
            f[self.word[p]] = p
        return tuple(f)

    @cached_property
    def second(self) -> tuple[int, ...]:
        s = [-1] * self.c
        for p, x in enumerate(self.word):
            s[x] = p
        return tuple(s)

    @cached_property
    def partner(self) -> tuple[int, ...]:
        f, s = self.first, self.second
        return tuple(s[x] if p == f[x] else f[x] for p, x in enumerate(self.word))

    @property
    def matching(self) -> ChordMatching:
        return ChordMatching(self.partner)

    @cached_property
    def eps(self) -> tuple[int, ...]:
        return tuple(sg if not self.over[f] else -sg
                     for sg, f in zip(self.signs, self.first))

    @property
    def writhe(self) -> int:
        return sum(self.signs)

    @cached_property
    def under_pos(self) -> tuple[int, ...]:
        return tuple(s if self.over[f] else f for f, s in zip(self.first, self.second))

    @cached_property
    def over_pos(self) -> tuple[int, ...]:
        return tuple(f if self.over[f] else s for f, s in zip(self.first, self.second))

    def planar_code(self) -> tuple[tuple[tuple[int, int, int, int], ...], tuple[int, ...]]:
        """Counterclockwise edge ids per crossing plus over-axis (0 or 1).

        Edge p runs from position p to position p+1.  Slot 0 is always the
        incoming edge of the first passage.
        """
        n = self.n
        code = []
        axis = []
        for x in range(self.c):
            f, s = self.first[x], self.second[x]
            in_f, out_f, in_s, out_s = (f - 1) % n, f, (s - 1) % n, s
            if self.eps[x] > 0:
                code.append((in_f, out_s, out_f, in_s))
            else:
                code.append((in_f, in_s, out_f, out_s))
            axis.append(0 if self.over[f] else 1)
        return tuple(code), tuple(axis)

    def is_planar(self) -> bool:
        return face_count(self.partner, [self.eps[x] for x in range(self.c)]) == self.c + 2

    def gauss_code(self) -> str:
        return "".join(
            f"{'O' if o else 'U'}{x + 1}{'+' if self.signs[x] > 0 else '-'}"
            for x, o in zip(self.word, self.over))

    def to_code(self) -> SignedGaussCode:
        return parse_gauss_code(self.gauss_code())

    def pd_code(self) -> str:
        return to_pd_code(self)

    def __str__(self) -> str:
        return self.gauss_code()


def diagram_from_word(word: Sequence[int], over: Sequence[bool],
                      signs: dict[int, int] | Sequence[int], check: bool = True) -> KnotDiagram:
    """Build a diagram from arbitrary crossing labels, relabeling first-visit.

    ``signs`` is indexed by the original labels.
    """
    ids: dict[int, int] = {}
    new_word = []
    for x in word:
        if x not in ids:
            ids[x] = len(ids)
        new_word.append(ids[x])
    new_signs = [0] * len(ids)
    for x, i in ids.items():
        new_signs[i] = signs[x]
    d = KnotDiagram(tuple(new_word), tuple(bool(o) for o in over), tuple(new_signs))
    if check:
        check_diagram(d)
    return d


def check_diagram(d: KnotDiagram) -> None:
    if len(d.over) != d.n or d.n != 2 * d.c:
        raise DiagramError("word, over/under flags and signs disagree in length")
    for x in range(d.c):
        f, s = d.first[x], d.second[x]
        if f < 0 or s == f or d.word.count(x) != 2:
            raise DiagramError(f"crossing {x + 1} does not occur exactly twice")
        if d.over[f] == d.over[s]:
            raise DiagramError(f"crossing {x + 1} needs one over and one under passage")
        if d.signs[x] not in (1, -1):
            raise DiagramError(f"crossing {x + 1} has sign {d.signs[x]}")
    if not d.is_planar():
        raise DiagramError("signs and over/under flags do not describe a planar diagram")


def decorate(emb: Embedding, signs: Sequence[int]) -> KnotDiagram:
    """Diagram on a realized shadow with the given crossing signs.

    The over/under choice follows from the signs: the first passage of x is
    the under-passage exactly when sign(x) == eps(x).
    """
    partner = emb.matching.partner
    idx = chord_index(partner)
    over = [False] * len(partner)
    for p, q in enumerate(partner):
        if p < q:
            x = idx[p]
            first_under = signs[x] == emb.eps[x]
            over[p] = not first_under
            over[q] = first_under
    return KnotDiagram(tuple(idx), tuple(over), tuple(signs))


def build_diagram(code: SignedGaussCode) -> KnotDiagram:
    """Diagram with the code's over/under data and declared signs.

    For unsigned codes each interlacement component takes the orientation
    that maximizes the writhe.
    """
    ent = _relabel(code.entries)
    word = [e.label - 1 for e in ent]
    over = [e.over for e in ent]
    c = len(ent) // 2
    partner = [0] * len(ent)
    firstpos: dict[int, int] = {}
    for p, x in enumerate(word):
        if x in firstpos:
            partner[p], partner[firstpos[x]] = firstpos[x], p
        else:
            firstpos[x] = p
    emb = realize(ChordMatching(tuple(partner)))
    if not emb:
        raise NotRealizableError(f"matching is not realizable: {emb.reason}")
    under_first = [1 if not over[firstpos[x]] else -1 for x in range(c)]
    if code.signed:
        declared = [ent[firstpos[x]].sign for x in range(c)]
        flip: dict[int, int] = {}
        for x in range(c):
            ratio = declared[x] * under_first[x] * emb.eps[x]
            if flip.setdefault(emb.components[x], ratio) != ratio:
                raise DiagramError(
                    "declared signs are not achievable by any planar embedding")
        signs = declared
    else:
        total: dict[int, int] = {}
        for x in range(c):
            k = emb.components[x]
            total[k] = total.get(k, 0) + emb.eps[x] * under_first[x]
        signs = [emb.eps[x] * under_first[x] * (1 if total[emb.components[x]] >= 0 else -1)
                 for x in range(c)]
    d = KnotDiagram(tuple(word), tuple(over), tuple(signs))
    check_diagram(d)
    return d


# ---------------------------------------------------------------------------
# Planar codes and PD codes


def from_planar(crossings: Sequence[Sequence[int]], over_axis: Sequence[int],
                pd: bool = False) -> KnotDiagram:
    """Diagram from counterclockwise edge labels at each crossing.

    ``over_axis[x]`` is 0 when slots 0 and 2 of crossing x carry the
    over-strand, 1 for slots 1 and 3.  The traversal starts along slot 0 of
    crossing 0 towards slot 2.  With ``pd=True`` every under-strand must
    enter at slot 0 (PD convention); positions are then rotated so that
    position 0 follows the under-passage of the first listed crossing.
    """
    c = len(crossings)
    if c == 0:
        return KnotDiagram((), (), ())
    occ: dict[int, list[tuple[int, int]]] = {}
    for x, cr in enumerate(crossings):
        if len(cr) != 4:
            raise DiagramError(f"crossing {x + 1} has arity {len(cr)}, expected 4")
        for k, e in enumerate(cr):
            occ.setdefault(e, []).append((x, k))
    for e, where in occ.items():
        if len(where) != 2:
            raise DiagramError(f"edge label {e} used {len(where)} times, expected 2")
    start = (0, 0)
    visits: list[tuple[int, int]] = []
    x, k = start
    while True:
        visits.append((x, k))
        out = (k + 2) % 4
        a, b = occ[crossings[x][out]]
        x, k = b if a == (x, out) else a
        if (x, k) == start or len(visits) > 2 * c:
            break
    if (x, k) != start or len(visits) != 2 * c:
        raise DiagramError("diagram has more than one component")
    slots: dict[int, list[int]] = {}
    for x, k in visits:
        slots.setdefault(x, []).append(k)
    signs = {}
    for x in range(c):
        ks = slots.get(x, [])
        if len(ks) != 2 or (ks[0] - ks[1]) % 2 == 0:
            raise DiagramError(f"crossing {x + 1} is not traversed along both strands")
        kf, ksec = ks
        eps = 1 if (ksec - kf) % 4 == 3 else -1
        first_over = kf % 2 == over_axis[x]
        signs[x] = eps if not first_over else -eps
    over = [k % 2 == over_axis[x] for x, k in visits]
    if pd:
        for (x, k), o in zip(visits, over):
            if not o and k != 0:
                raise DiagramError(
                    f"PD term {x + 1} does not start at the incoming under-strand")
        u0 = next(i for i, (x, k) in enumerate(visits) if x == 0 and not over[i])
        r = (u0 + 1) % len(visits)
        visits = visits[r:] + visits[:r]
        over = over[r:] + over[:r]
    d = diagram_from_word([x for x, _ in visits], over, signs, check=False)
    try:
        check_diagram(d)
    except DiagramError as err:
        raise DiagramError(f"non-planar incidence: {err}") from None
    return d


_PD_TERM = re.compile(r"[Xx]\s*[\(\[]([^\)\]]*)[\)\]]")


def parse_pd_code(text: str) -> KnotDiagram:
    """Parse ``X(a,b,c,d) ...`` (also accepts ``PD[X[...], ...]``)."""
    body = text.strip()
    if body.startswith("PD"):
        body = body[2:].strip().lstrip("[(").rstrip("])")
    crossings = []
    pos = 0
    for m in _PD_TERM.finditer(body):
        gap = body[pos:m.start()].strip(" ,;\t\n")
        if gap:
            raise DiagramError(f"unexpected text in PD code: {gap!r}")
        pos = m.end()
        try:
            args = [int(a) for a in m.group(1).split(",")]
        except ValueError:
            raise DiagramError(f"non-integer edge label in {m.group(0)!r}") from None
        if len(args) != 4:
            raise DiagramError(f"PD term {m.group(0)!r} has arity {len(args)}, expected 4")
        crossings.append(tuple(args))
    if body[pos:].strip(" ,;\t\n"):
        raise DiagramError(f"unexpected text in PD code: {body[pos:]!r}")
    return from_planar(crossings, [1] * len(crossings), pd=True)


def to_pd_code(d: KnotDiagram) -> str:
    """PD code with edges numbered 1..2c (edge p+1 leaves position p)."""
    code, axis = d.planar_code()
    terms = []
    for x, (cr, a) in enumerate(zip(code, axis)):
        u = d.under_pos[x]
        in_u = (u - 1) % d.n
        # under-strand slots are those not on the over axis
        k = next(k for k in range(4) if k % 2 != a and cr[k] == in_u
                 and cr[(k + 2) % 4] == u)
        rot = cr[k:] + cr[:k]
        terms.append("X(" + ",".join(str(e + 1) for e in rot) + ")")
    return " ".join(terms)


def parse_code(text: str) -> KnotDiagram:
    """Accept either a Gauss code or a PD code."""
    t = text.strip()
    if t == "" or t[0] in "Xx" or t.startswith("PD"):
        return parse_pd_code(t)
    return build_diagram(parse_gauss_code(t))


# ---------------------------------------------------------------------------
# Fixtures

FIXTURE_ENV = "KNOTGAUSS_FIXTURES"


def fixture_path() -> str:
    env = os.environ.get(FIXTURE_ENV)
    if env:
        return env
    return str(resources.files("knotgauss") / "fixtures" / "knots.gauss")


def load_fixtures(path: str | None = None) -> dict[str, KnotDiagram]:
    """Named diagrams from a ``name<TAB>code`` file (``#`` starts a comment)."""
    path = path or fixture_path()
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].rstrip("\n")
            if not line.strip():
                continue
            if "\t" not in line:
                raise DiagramError(f"{path}:{lineno}: expected name<TAB>code")
            name, code = line.split("\t", 1)
            out[name.strip()] = parse_code(code)
    return out
