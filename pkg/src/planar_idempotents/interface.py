"""Interface graphs: the middle row of the stacked product ``a + a``.

Vertices are ``1..n``.  ``lower_edges`` are copies of the upper-row edges of
the diagram (drawn below the line) and ``upper_edges`` copies of its
lower-row edges (drawn above).  A vertex is *down-active* if it ends a
transversal in the upper row and *up-active* if it does so in the lower
row.

Everything here works from the two semi-words of the diagram: the left
semi-word describes the upper row, the right one the lower row read
left to right, and in both the level of an edge is the height of the
semi-word just before its opening ``U``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .diagram import D, Diagram, DiagramError, U, diagram_of_pair, multiply, pair_of

ACTIVE = -2
INERT = -1

CYCLE = "Cycle"
INERT_PATH = "InertPath"
TRANS_ACTIVE = "TransActivePath"
CIS_ACTIVE = "CisActivePath"
MIXED = "MixedPath"


class Half(NamedTuple):
    """One row of a diagram, seen from its semi-word.

    ``link[v]`` is the 0-based partner of vertex v in this row, or
    ``ACTIVE`` / ``INERT``.  ``ret[v]`` is True when v opens an edge at
    level 0.
    """

    word: str
    link: tuple
    ret: tuple
    active: tuple
    rank: int


@lru_cache(maxsize=1 << 18)
def half_of(word: str) -> Half:
    link = [INERT] * len(word)
    ret = [False] * len(word)
    stack = []
    for v, s in enumerate(word):
        if s == U:
            ret[v] = not stack
            stack.append(v)
        elif s == D:
            if not stack:
                raise DiagramError(f"semi-word {word!r} dips below zero")
            w = stack.pop()
            link[v], link[w] = w, v
    for v in stack:
        link[v] = ACTIVE
        ret[v] = False
    return Half(word, tuple(link), tuple(ret), tuple(stack), len(stack))


@dataclass(frozen=True)
class GammaComponent:
    kind: str
    vertices: tuple  # 1-based, ascending
    length: int
    u: int = 0  # level-0 edges from the upper row of the diagram
    l: int = 0  # level-0 edges from the lower row
    llt: bool = True

    @property
    def is_cycle(self) -> bool:
        return self.kind == CYCLE


@dataclass(frozen=True)
class InterfaceGraph:
    degree: int
    upper_edges: frozenset  # from the diagram's lower row
    lower_edges: frozenset  # from the diagram's upper row
    up_active: tuple
    down_active: tuple
    top: Half = field(repr=False, compare=False)  # upper row of the diagram
    bottom: Half = field(repr=False, compare=False)  # lower row


def _edges(half: Half) -> frozenset:
    return frozenset((v + 1, w + 1) for v, w in enumerate(half.link) if w > v)


def gamma(d: Diagram) -> InterfaceGraph:
    left, right, _ = pair_of(d)
    return gamma_of_pair(left, right)


def gamma_of_pair(left: str, right: str) -> InterfaceGraph:
    top, bottom = half_of(left), half_of(right)
    return InterfaceGraph(
        degree=len(left),
        upper_edges=_edges(bottom),
        lower_edges=_edges(top),
        up_active=tuple(v + 1 for v in bottom.active),
        down_active=tuple(v + 1 for v in top.active),
        top=top,
        bottom=bottom,
    )


def walk(top: Half, bottom: Half):
    """Yield ``(kind, vertices, length, u, l)`` for each Gamma-component.

    Vertices are 0-based and in traversal order.
    """
    n = len(top.link)
    tl, bl = top.link, bottom.link
    tr, br = top.ret, bottom.ret
    seen = bytearray(n)
    for v in range(n):
        if seen[v]:
            continue
        # go along the top-row edge first
        verts = [v]
        seen[v] = 1
        u = l = 0
        w = v
        on_top = True
        closed = False
        while True:
            x = tl[w] if on_top else bl[w]
            if x < 0:
                break
            if on_top:
                u += tr[w] or tr[x]
            else:
                l += br[w] or br[x]
            if x == v:
                closed = True
                break
            seen[x] = 1
            verts.append(x)
            w = x
            on_top = not on_top
        if closed:
            yield CYCLE, verts, len(verts), u, l
            continue
        end_a, side_a = w, on_top  # free side of this terminus
        # then the other way round
        w = v
        on_top = False
        while True:
            x = tl[w] if on_top else bl[w]
            if x < 0:
                break
            seen[x] = 1
            verts.insert(0, x)
            w = x
            on_top = not on_top
        end_b, side_b = w, on_top
        state_a = tl[end_a] if side_a else bl[end_a]
        state_b = tl[end_b] if side_b else bl[end_b]
        length = len(verts) - 1
        if state_a == ACTIVE and state_b == ACTIVE:
            kind = TRANS_ACTIVE if length % 2 == 0 else CIS_ACTIVE
        elif state_a == INERT and state_b == INERT:
            kind = INERT_PATH
        else:
            kind = MIXED
        yield kind, verts, length, 0, 0


def left_of_leftmost(top: Half, bottom: Half):
    """Return a test ``v -> bool``: is vertex v left of the leftmost transversal?

    The leftmost transversal is the trans-active path through the first
    down-active vertex.  Drop a ray from v below the line: it crosses that
    path once for each of its below-line arcs enclosing v, and once more
    on the way to the far left if v lies right of the path's downward
    stub.  Even parity means v is on the left.  With no transversal
    every vertex counts as left.
    """
    if not top.active:
        return lambda v: True
    tl, bl = top.link, bottom.link
    j1 = top.active[0]
    arcs = []
    w, on_top = j1, False
    while True:
        x = tl[w] if on_top else bl[w]
        if x < 0:
            break
        if on_top:
            arcs.append((min(w, x), max(w, x)))
        w, on_top = x, not on_top

    def test(v):
        crossings = v > j1
        for a, b in arcs:
            crossings += a < v < b
        return crossings % 2 == 0

    return test


def components(g: InterfaceGraph) -> list[GammaComponent]:
    is_left = left_of_leftmost(g.top, g.bottom)
    out = []
    for kind, verts, length, u, l in walk(g.top, g.bottom):
        vs = tuple(sorted(v + 1 for v in verts))
        out.append(GammaComponent(kind, vs, length, u, l, is_left(verts[0])))
    return out


def cycles(top: Half, bottom: Half) -> list[tuple[int, int, bool]]:
    """``(u, l, llt)`` for each cycle, without building component objects."""
    is_left = left_of_leftmost(top, bottom)
    return [(u, l, is_left(verts[0])) for kind, verts, _, u, l in walk(top, bottom) if kind == CYCLE]


def _structurally_idempotent(top: Half, bottom: Half) -> bool:
    if top.rank != bottom.rank:
        return False
    for kind, *_ in walk(top, bottom):
        if kind in (MIXED, CIS_ACTIVE):
            return False
    return True


def is_idempotent(d: Diagram) -> bool:
    left, right, _ = pair_of(d)
    return _structurally_idempotent(half_of(left), half_of(right))


def pair_is_idempotent(left: str, right: str) -> bool:
    return _structurally_idempotent(half_of(left), half_of(right))


def hat_word(word: str) -> str:
    """Close up consecutive pairs of open U's: 2nd, 4th, ... become D."""
    h = half_of(word)
    out = list(word)
    for v in h.active[1::2]:
        out[v] = D
    return "".join(out)


def hat(d: Diagram) -> Diagram:
    left, right, _ = pair_of(d)
    if not pair_is_idempotent(left, right):
        raise DiagramError("hat is only defined on idempotents")
    return diagram_of_pair(hat_word(left), hat_word(right))


def self_floating_count(d: Diagram) -> int:
    left, right, _ = pair_of(d)
    top, bottom = half_of(left), half_of(right)
    if not _structurally_idempotent(top, bottom):
        return multiply(d, d)[1]
    return sum(1 for kind, *_ in walk(top, bottom) if kind in (CYCLE, INERT_PATH))

