"""Independent polynomial and signature invariants used as ground truth.

* Jones polynomial from the Kauffman bracket, evaluated by a frontier
  dynamic program (``jones``) or by plain state enumeration
  (``jones_naive``).  ``<X(a,b,c,d)> = A <P[a,b] P[c,d]> + A^-1 <P[a,d] P[b,c]>``
  with ``a`` the incoming under-strand and entries counterclockwise.
* Conway polynomial by skein recursion, switching crossings until the
  diagram is descending.
* Signature and determinant from the Goeritz matrix with the
  Gordon-Litherland correction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .codes import KnotDiagram
from .planar import planar_faces

JONES_BUDGET = 24
CONWAY_BUDGET = 20


class BudgetExceeded(ValueError):
    """Input is larger than the oracle's crossing budget."""


class LaurentPoly:
    """Integer Laurent polynomial in one variable, stored sparsely."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> LaurentPoly:
        return cls({e: c})

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return LaurentPoly({e: c * other for e, c in self.terms.items()})
        out: dict[int, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def inverted(self) -> LaurentPoly:
        """Substitute t -> 1/t."""
        return LaurentPoly({-e: c for e, c in self.terms.items()})

    def __call__(self, value: int = 1) -> Fraction:
        return sum((Fraction(value) ** e * c for e, c in self.terms.items()), Fraction(0))

    def derivative_at_one(self, k: int) -> int:
        """k-th derivative evaluated at t = 1 (falling factorial sum)."""
        total = 0
        for e, c in self.terms.items():
            f = 1
            for i in range(k):
                f *= e - i
            total += c * f
        return total

    def __repr__(self) -> str:
        return f"LaurentPoly({dict(sorted(self.terms.items()))})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            mag = abs(c)
            if e == 0:
                body = str(mag)
            else:
                power = "t" if e == 1 else f"t^{e}"
                body = power if mag == 1 else f"{mag}*{power}"
            parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts)
        return s[1:] if s.startswith("+") else s


# ---------------------------------------------------------------------------
# Kauffman bracket and Jones polynomial

_D_LOOP = {2: -1, -2: -1}   # the loop value -A^2 - A^-2


def _mul_loop(poly: dict[int, int], loops: int) -> dict[int, int]:
    for _ in range(loops):
        out: dict[int, int] = {}
        for e, c in poly.items():
            for de, dc in _D_LOOP.items():
                out[e + de] = out.get(e + de, 0) + c * dc
        poly = out
    return poly


def _smoothings(cr: Sequence[int], axis: int):
    """(A-pairs, B-pairs) of edge ids; A joins each under slot to its ccw successor."""
    u = 0 if axis == 1 else 1
    a = ((cr[u], cr[u + 1]), (cr[(u + 2) % 4], cr[(u + 3) % 4]))
    b = ((cr[u + 1], cr[(u + 2) % 4]), (cr[(u + 3) % 4], cr[u]))
    return a, b


def _processing_order(crossings: Sequence[Sequence[int]]) -> list[int]:
    c = len(crossings)
    done = [False] * c
    seen: dict[int, int] = {}
    order = []
    for _ in range(c):
        best, score = -1, -1
        for x in range(c):
            if done[x]:
                continue
            s = sum(1 for e in crossings[x] if seen.get(e, 0) == 1)
            if s > score:
                best, score = x, s
        done[best] = True
        order.append(best)
        for e in crossings[best]:
            seen[e] = seen.get(e, 0) + 1
    return order


def _join(conn: dict[int, int], p: int, q: int) -> int:
    """Connect open ends p and q; return 1 if a loop closes."""
    if p == q and p not in conn:
        return 1
    if p in conn and q in conn:
        u = conn.pop(p)
        if u == q:
            del conn[q]
            return 1
        v = conn.pop(q)
        conn[u] = v
        conn[v] = u
        return 0
    if q in conn:
        p, q = q, p
    if p in conn:
        u = conn.pop(p)
        conn[u] = q
        conn[q] = u
        return 0
    conn[p] = q
    conn[q] = p
    return 0


def bracket(crossings: Sequence[Sequence[int]], axis: Sequence[int]) -> dict[int, int]:
    """Kauffman bracket in A (exponent -> coefficient), normalized <O> = 1."""
    if not crossings:
        return {0: 1}
    states: dict[tuple, dict[int, int]] = {(): {0: 1}}
    for x in _processing_order(crossings):
        apairs, bpairs = _smoothings(crossings[x], axis[x])
        new: dict[tuple, dict[int, int]] = {}
        for key, poly in states.items():
            for pairs, shift in ((apairs, 1), (bpairs, -1)):
                conn = {}
                for u, v in key:
                    conn[u] = v
                    conn[v] = u
                loops = 0
                for p, q in pairs:
                    loops += _join(conn, p, q)
                nkey = tuple(sorted((u, v) for u, v in conn.items() if u < v))
                contrib = _mul_loop({e + shift: c for e, c in poly.items()}, loops)
                acc = new.setdefault(nkey, {})
                for e, c in contrib.items():
                    acc[e] = acc.get(e, 0) + c
        states = {k: {e: c for e, c in p.items() if c} for k, p in new.items()}
    final = states[()]
    # divide by one loop factor: the last closed loop is the normalization
    return _divide_loop(final)


def _divide_loop(poly: dict[int, int]) -> dict[int, int]:
    """Exact division by the loop value -A^2 - A^-2."""
    rem = dict(poly)
    out: dict[int, int] = {}
    low = min(poly)
    while rem and max(rem) - 2 >= low + 2:
        top = max(rem)
        q = -rem[top]
        out[top - 2] = q
        for de, dc in _D_LOOP.items():
            e = top - 2 + de
            rem[e] = rem.get(e, 0) - q * dc
            if rem[e] == 0:
                del rem[e]
    if rem:
        raise ArithmeticError("bracket is not divisible by the loop value")
    return out


def bracket_naive(crossings: Sequence[Sequence[int]], axis: Sequence[int]) -> dict[int, int]:
    """Same as ``bracket`` by summing over all 2^c states."""
    if not crossings:
        return {0: 1}
    edges = sorted({e for cr in crossings for e in cr})
    index = {e: i for i, e in enumerate(edges)}
    smooth = [_smoothings(cr, a) for cr, a in zip(crossings, axis)]
    out: dict[int, int] = {}
    for choice in product((0, 1), repeat=len(crossings)):
        parent = list(range(len(edges)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for x, ch in enumerate(choice):
            for p, q in smooth[x][ch]:
                rp, rq = find(index[p]), find(index[q])
                if rp != rq:
                    parent[rp] = rq
        loops = sum(1 for i in range(len(edges)) if find(i) == i)
        a_exp = choice.count(0) - choice.count(1)
        for e, c in _mul_loop({a_exp: 1}, loops - 1).items():
            out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c}


def _jones_from_bracket(br: dict[int, int], writhe: int) -> LaurentPoly:
    sign = -1 if writhe % 2 else 1
    terms: dict[int, int] = {}
    for e, c in br.items():
        a_exp = e - 3 * writhe
        if a_exp % 4:
            raise ArithmeticError("bracket exponent not a multiple of 4 for a knot")
        terms[-a_exp // 4] = terms.get(-a_exp // 4, 0) + sign * c
    return LaurentPoly(terms)


def jones(d: KnotDiagram, budget: int = JONES_BUDGET) -> LaurentPoly:
    """Jones polynomial V(t) = (-A^3)^(-w) <D> at A = t^(-1/4)."""
    if d.c > budget:
        raise BudgetExceeded(f"{d.c} crossings exceed the Jones budget of {budget}")
    code, axis = d.planar_code()
    return _jones_from_bracket(bracket(code, axis), d.writhe)


def jones_naive(d: KnotDiagram, budget: int = 16) -> LaurentPoly:
    if d.c > budget:
        raise BudgetExceeded(f"{d.c} crossings exceed the state-sum budget of {budget}")
    code, axis = d.planar_code()
    return _jones_from_bracket(bracket_naive(code, axis), d.writhe)


def vassiliev_from_jones(V: LaurentPoly) -> tuple[int, int]:
    """(v2, v3) = (-V''(1)/6, -V''(1)/3 - V'''(1)/9)."""
    d2 = V.derivative_at_one(2)
    d3 = V.derivative_at_one(3)
    if d2 % 6:
        raise ArithmeticError(f"V''(1) = {d2} is not divisible by 6")
    v3 = Fraction(-d2, 3) - Fraction(d3, 9)
    if v3.denominator != 1:
        raise ArithmeticError(f"v3 = {v3} is not an integer")
    return -d2 // 6, int(v3)


# ---------------------------------------------------------------------------
# Conway polynomial


@dataclass(frozen=True)
class ConwayPoly:
    """Coefficients of z^0, z^1, z^2, ... (odd ones vanish for knots)."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    @property
    def a2(self) -> int:
        return self.coefficient(2)

    def signed_determinant(self) -> int:
        """Delta(-1) = sum a_2k (-4)^k."""
        return sum(self.coefficient(2 * k) * (-4) ** k for k in range((len(self.coeffs) + 1) // 2))

    def alexander(self) -> LaurentPoly:
        """Delta(t) by z^2 = t - 2 + 1/t (knots only)."""
        base = LaurentPoly({1: 1, 0: -2, -1: 1})
        out = LaurentPoly()
        power = LaurentPoly({0: 1})
        for k in range((len(self.coeffs) + 1) // 2):
            if self.coefficient(2 * k + 1):
                raise ValueError("odd Conway coefficient: not a knot")
            out = out + power * self.coefficient(2 * k)
            power = power * base
        return out

    def __str__(self) -> str:
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                body = "1" if k == 0 else ("z" if k == 1 else f"z^{k}")
                if k and abs(c) != 1:
                    body = f"{abs(c)}*{body}"
                elif k == 0:
                    body = str(abs(c))
                parts.append(("-" if c < 0 else "+") + body)
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s


# oriented crossing: (under_in, under_out, over_in, over_out, sign)
_Cross = tuple[int, int, int, int, int]


def _oriented_crossings(d: KnotDiagram) -> list[_Cross]:
    n = d.n
    return [((u - 1) % n, u, (o - 1) % n, o, s)
            for u, o, s in zip(d.under_pos, d.over_pos, d.signs)]


def _components(cross: Sequence[_Cross]):
    """Components as lists of (edge, crossing, via_under) in traversal order."""
    head: dict[int, tuple[int, bool]] = {}
    for x, (ui, uo, oi, oo, _) in enumerate(cross):
        head[ui] = (x, True)
        head[oi] = (x, False)
    unvisited = set(head)
    comps = []
    while unvisited:
        e0 = min(unvisited)
        comp = []
        e = e0
        while True:
            unvisited.discard(e)
            x, under = head[e]
            comp.append((e, x, under))
            e = cross[x][1] if under else cross[x][3]
            if e == e0:
                break
        comps.append(comp)
    return comps


def _rename(cross: list[_Cross], old: int, new: int) -> list[_Cross]:
    return [tuple(new if e == old else e for e in cr[:4]) + (cr[4],) for cr in cross]


def _conway(cross: list[_Cross], loops: int, max_deg: int) -> list[int]:
    if max_deg < 0:
        return []
    comps = _components(cross)
    k = len(comps) + loops
    if loops and k > 1:
        return []
    if k - 1 > max_deg:
        return []
    visited: set[int] = set()
    bad = None
    for comp in comps:
        for _, x, under in comp:
            if x in visited:
                continue
            if under:
                bad = x
                break
            visited.add(x)
        if bad is not None:
            break
    if bad is None:
        return [1] if k == 1 else []
    ui, uo, oi, oo, s = cross[bad]
    switched = list(cross)
    switched[bad] = (oi, oo, ui, uo, -s)
    result = _conway(switched, loops, max_deg)
    rest = [cr for i, cr in enumerate(cross) if i != bad]
    new_loops = loops
    # smoothing: ui continues as oo and oi continues as uo
    a2, b2 = oi, uo
    if ui == oo:
        new_loops += 1
    else:
        rest = _rename(rest, oo, ui)
        a2 = ui if a2 == oo else a2
        b2 = ui if b2 == oo else b2
    if a2 == b2:
        new_loops += 1
    else:
        rest = _rename(rest, b2, a2)
    smoothed = _conway(rest, new_loops, max_deg - 1)
    out = list(result) + [0] * max(0, len(smoothed) + 1 - len(result))
    for i, c in enumerate(smoothed):
        out[i + 1] += s * c
    while out and out[-1] == 0:
        out.pop()
    return out[:max_deg + 1]


def conway(d: KnotDiagram, max_degree: int | None = None,
           budget: int = CONWAY_BUDGET) -> ConwayPoly:
    """Conway polynomial, optionally truncated above ``max_degree``."""
    if d.c > budget:
        raise BudgetExceeded(f"{d.c} crossings exceed the Conway budget of {budget}")
    if d.c == 0:
        return ConwayPoly((1,))
    deg = d.c if max_degree is None else max_degree
    return ConwayPoly(tuple(_conway(_oriented_crossings(d), 0, deg)))


# ---------------------------------------------------------------------------
# Signature


@dataclass(frozen=True)
class SigDetReport:
    sigma_paper: int
    det_signed: int | None
    det_abs: int

    @property
    def sigma_standard(self) -> int:
        return -self.sigma_paper

    def to_dict(self) -> dict:
        return {"sigma_paper": self.sigma_paper, "sigma_standard": self.sigma_standard,
                "det_signed": self.det_signed, "det_abs": self.det_abs}


def symmetric_signature(matrix: Sequence[Sequence[int]]) -> tuple[int, Fraction]:
    """(signature, determinant) of a symmetric matrix by exact congruence."""
    m = [[Fraction(v) for v in row] for row in matrix]
    size = len(m)
    sig = 0
    det = Fraction(1)
    for k in range(size):
        piv = next((i for i in range(k, size) if m[i][i] != 0), None)
        if piv is None:
            j = next((j for j in range(k + 1, size) if m[k][j] != 0), None)
            if j is None:
                det = Fraction(0)
                continue
            # row and column k += row and column j: a congruence of determinant 1
            for t in range(size):
                m[k][t] += m[j][t]
            for t in range(size):
                m[t][k] += m[t][j]
            piv = k
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            for row in m:
                row[k], row[piv] = row[piv], row[k]
        p = m[k][k]
        det *= p
        sig += 1 if p > 0 else -1
        for i in range(k + 1, size):
            f = m[i][k] / p
            if f:
                for t in range(k, size):
                    m[i][t] -= f * m[k][t]
        for i in range(k + 1, size):
            m[i][k] = Fraction(0)
            m[k][i] = Fraction(0)
    return sig, det


def goeritz(d: KnotDiagram):
    """Goeritz matrix (white faces, first one deleted) and correction mu."""
    code, axis = d.planar_code()
    fs = planar_faces(code)
    face_of = {}
    for i, f in enumerate(fs):
        for dart in f:
            face_of[dart] = i
    color = {0: 0}
    stack = [0]
    adj: dict[int, set[int]] = {}
    for x in range(d.c):
        for k in range(4):
            a, b = face_of[(x, k)], face_of[(x, (k + 1) % 4)]
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
    while stack:
        f = stack.pop()
        for h in adj.get(f, ()):
            if h not in color:
                color[h] = 1 - color[f]
                stack.append(h)
            elif color[h] == color[f]:
                raise ValueError("faces are not two-colourable")
    white = sorted(f for f in color if color[f] == 0)
    windex = {f: i for i, f in enumerate(white)}
    size = len(white)
    G = [[0] * size for _ in range(size)]
    mu = 0
    for x in range(d.c):
        corners = [face_of[(x, k)] for k in range(4)]
        a = axis[x]
        eta = 1 if color[corners[a]] == 1 else -1
        # out-slots: 2 and 1 (eps = +1) or 2 and 3 (eps = -1); corner between them
        oc = 1 if d.eps[x] > 0 else 2
        if color[corners[oc]] == 1:
            mu += eta
        wc = [f for f in corners if color[f] == 0]
        i, j = windex[wc[0]], windex[wc[1]]
        if i != j:
            G[i][j] -= eta
            G[j][i] -= eta
            G[i][i] += eta
            G[j][j] += eta
    return [row[1:] for row in G[1:]], mu


def signature_and_det(d: KnotDiagram, with_conway: bool = True) -> SigDetReport:
    """Signature (positive knots positive) and Delta(-1)."""
    if d.c == 0:
        return SigDetReport(0, 1, 1)
    G, mu = goeritz(d)
    sig, det = symmetric_signature(G)
    sigma_standard = sig - mu
    det_signed = conway(d).signed_determinant() if with_conway else None
    return SigDetReport(-sigma_standard, det_signed, abs(int(det)))


def signature(d: KnotDiagram) -> int:
    return signature_and_det(d, with_conway=False).sigma_paper
