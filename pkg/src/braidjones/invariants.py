"""Bracket and Jones values of braid closures, computed two independent ways.

The fast route closes a 3-strand word through the representation in
``tlrep``: with I(b) the exponent sum of the word,

    <closure(b)> = trace(rho(b)) + A^I(b) * (delta^2 - 2)
    f            = (-A^3)^(-I(b)) * <closure(b)>

and f, as a function of A, evaluated at A is the Jones value at t = A^-4.

The oracle route is a Kauffman bracket state sum over all 2^c smoothings of
the closed braid diagram.  The smoothing of a positive crossing weighted A
is the vertical (identity) one and the cup-cap smoothing carries A^-1,
mirrored for inverse crossings; each state contributes

    A^(#A-smoothings - #B-smoothings) * delta^(circles - 1)

so the unknot evaluates to 1.  This is the convention under which the state
sum reproduces the trace formula above, matching rho(sigma_i) = A*I +
A^-1*U_i term by term.  Circles are counted with a union-find over planar
Temperley-Lieb diagrams.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .braid import BraidWord, exponent_sum
from .tlrep import ReprParams, rho_word

__all__ = [
    "InvariantValues",
    "TLDiagram",
    "identity_diagram",
    "cup_cap",
    "compose_tl",
    "closure_loop_count",
    "bracket_state_sum",
    "evaluate",
]

MAX_STRANDS = 8
MAX_LETTERS = 20


@dataclass(frozen=True)
class InvariantValues:
    """Closure invariants at one parameter point: t = A^-4 and jones = f."""

    trace: complex
    bracket: complex
    f: complex
    t: complex
    jones: complex


class _UnionFind:
    def __init__(self, size: int) -> None:
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[ry] = rx


@dataclass(frozen=True)
class TLDiagram:
    """Planar perfect pairing of 2n boundary points: top 0..n-1, bottom n..2n-1.

    ``loops`` counts the closed circles absorbed by earlier compositions.
    Pairings are stored canonically (each pair sorted, pairs sorted), and
    planarity is validated: in the boundary's circular order (top left to
    right, then bottom right to left) the chords must not cross.
    """

    strands: int
    matching: tuple[tuple[int, int], ...]
    loops: int = 0

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise ValueError(f"need at least 1 strand, got {self.strands}")
        if self.loops < 0:
            raise ValueError("loop count cannot be negative")
        pairs = tuple(sorted(tuple(sorted(p)) for p in self.matching))
        object.__setattr__(self, "matching", pairs)
        points = [q for p in pairs for q in p]
        if sorted(points) != list(range(2 * self.strands)):
            raise ValueError("matching must pair every boundary point exactly once")
        if not self._is_planar():
            raise ValueError("matching is not planar")

    def _is_planar(self) -> bool:
        n = self.strands
        # circular boundary position: top j -> j, bottom j -> 2n-1-j
        circ = lambda q: q if q < n else 2 * n - 1 - (q - n)
        partner = {}
        for a, b in self.matching:
            pa, pb = circ(a), circ(b)
            partner[pa], partner[pb] = pb, pa
        stack: list[int] = []
        for pos in range(2 * n):
            if partner[pos] > pos:
                stack.append(pos)
            elif not stack or stack[-1] != partner[pos]:
                return False
            else:
                stack.pop()
        return True


def identity_diagram(n: int) -> TLDiagram:
    """Each top point wired straight through to the bottom point below it."""
    return TLDiagram(n, tuple((j, n + j) for j in range(n)))


def cup_cap(n: int, i: int) -> TLDiagram:
    """The elementary diagram e_i: cup joining top points i-1, i, cap below."""
    if not 1 <= i <= n - 1:
        raise ValueError(f"cup position {i} out of range for {n} strands")
    pairs = [(i - 1, i), (n + i - 1, n + i)]
    pairs += [(j, n + j) for j in range(n) if j not in (i - 1, i)]
    return TLDiagram(n, tuple(pairs))


def compose_tl(d1: TLDiagram, d2: TLDiagram) -> TLDiagram:
    """Stack d2 under d1, tracing connections and absorbing closed circles.

    The glued middle boundary disappears; every interior cycle increments
    the loop count, and carried loop counts add.
    """
    if d1.strands != d2.strands:
        raise ValueError(f"strand counts differ: {d1.strands} != {d2.strands}")
    n = d1.strands
    # point ids: d1 occupies 0..2n-1, d2 occupies 2n..4n-1
    uf = _UnionFind(4 * n)
    for a, b in d1.matching:
        uf.union(a, b)
    for a, b in d2.matching:
        uf.union(2 * n + a, 2 * n + b)
    for j in range(n):
        uf.union(n + j, 2 * n + j)
    free = list(range(n)) + [3 * n + j for j in range(n)]
    by_root: dict[int, list[int]] = {}
    for q in free:
        by_root.setdefault(uf.find(q), []).append(q)
    new_point = lambda q: q if q < n else n + (q - 3 * n)
    matching = tuple(tuple(new_point(q) for q in pair) for pair in by_root.values())
    components = len({uf.find(q) for q in range(4 * n)})
    circles = components - n
    return TLDiagram(n, matching, d1.loops + d2.loops + circles)


def closure_loop_count(d: TLDiagram) -> int:
    """Circles of the braid-style closure (top j joined to bottom j)."""
    n = d.strands
    uf = _UnionFind(2 * n)
    for a, b in d.matching:
        uf.union(a, b)
    for j in range(n):
        uf.union(j, n + j)
    return len({uf.find(q) for q in range(2 * n)}) + d.loops


def bracket_state_sum(b: BraidWord, A: complex) -> complex:
    """Kauffman bracket of the braid closure by full smoothing enumeration.

    Exponential-cost oracle (2^letters states), guarded to at most
    MAX_STRANDS strands and MAX_LETTERS letters.  Independent of the
    representation route in ``evaluate``.
    """
    if b.strands > MAX_STRANDS:
        raise ValueError(f"state sum limited to {MAX_STRANDS} strands")
    c = len(b.letters)
    if c > MAX_LETTERS:
        raise ValueError(f"state sum limited to {MAX_LETTERS} letters")
    a = complex(A)
    delta = -(a**2) - a**-2
    total = 0j
    for mask in range(1 << c):
        exp_a = 0
        diagram = identity_diagram(b.strands)
        for j, g in enumerate(b.letters):
            a_branch = not (mask >> j) & 1
            exp_a += 1 if a_branch else -1
            if (g.sign == 1) != a_branch:
                diagram = compose_tl(diagram, cup_cap(b.strands, g.index))
        circles = closure_loop_count(diagram)
        total += a**exp_a * delta ** (circles - 1)
    return total


def evaluate(b: BraidWord, params: ReprParams) -> InvariantValues:
    """Trace-formula invariants of the closure of a 3-strand word.

    ``jones`` equals ``f``: the normalized invariant as a function of A,
    evaluated here, is the Jones value at t = A^-4, and t is reported
    alongside to pin down the fourth-root branch.  Powers of -A^3 are taken
    as integer powers of a unit complex number, so no branch cuts arise.
    """
    trace = complex(np.trace(rho_word(b, params)))
    i_b = exponent_sum(b)
    a = params.A
    bracket = trace + a**i_b * (params.delta**2 - 2.0)
    f = (-(a**3)) ** (-i_b) * bracket
    return InvariantValues(trace=trace, bracket=bracket, f=f, t=a**-4, jones=f)
