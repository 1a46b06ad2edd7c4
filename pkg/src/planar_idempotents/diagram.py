"""Motzkin and Jones diagrams in the unfolded-position encoding.

A diagram of degree ``n`` lives on 2n positions.  Upper vertex ``i``
(1-based) sits at position ``i - 1`` and lower vertex ``j'`` at position
``2n - j``, so reading positions left to right visits ``1, ..., n, n', ..., 1'``.
Every edge becomes a pair of positions and planarity is the usual
non-crossing condition on intervals.
"""

from __future__ import annotations

from typing import Iterable, Sequence

NONE = -1

U, F, D = "U", "F", "D"
SYMBOL_ORDER = {U: 0, F: 1, D: 2}
STEP = {U: 1, F: 0, D: -1}
COMPLEMENT = {U: D, F: F, D: U}


class DiagramError(ValueError):
    """Raised for malformed diagrams, words or semi-word pairs."""


class Diagram:
    """A planar partial matching on the 2n unfolded positions.

    ``mate[p]`` is the partner position of ``p`` or :data:`NONE` for a
    singleton.  Instances are immutable and hash by their mate tuple.
    """

    __slots__ = ("n", "mate")

    def __init__(self, n: int, mate: Iterable[int], check: bool = True):
        mate = tuple(mate)
        if check:
            _validate(n, mate)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mate", mate)

    @classmethod
    def trusted(cls, n: int, mate: tuple) -> "Diagram":
        # hot path: caller guarantees validity
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "mate", mate)
        return obj

    @classmethod
    def from_blocks(
        cls,
        n: int,
        upper: Iterable[tuple[int, int]] = (),
        lower: Iterable[tuple[int, int]] = (),
        transversals: Iterable[tuple[int, int]] = (),
    ) -> "Diagram":
        """Build from 1-based vertex pairs.

        ``upper`` holds pairs of upper vertices, ``lower`` pairs of lower
        vertices (given without primes) and ``transversals`` pairs
        ``(i, j)`` meaning the edge ``{i, j'}``.
        """
        mate = [NONE] * (2 * n)

        def up(i):
            return i - 1

        def low(j):
            return 2 * n - j

        def join(p, q):
            if not (0 <= p < 2 * n and 0 <= q < 2 * n):
                raise DiagramError(f"vertex out of range for degree {n}")
            if mate[p] != NONE or mate[q] != NONE or p == q:
                raise DiagramError("vertex used twice")
            mate[p], mate[q] = q, p

        for a, b in upper:
            join(up(a), up(b))
        for a, b in lower:
            join(low(a), low(b))
        for a, b in transversals:
            join(up(a), low(b))
        return cls(n, mate)

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.n == other.n and self.mate == other.mate

    def __hash__(self):
        return hash((self.n, self.mate))

    def __lt__(self, other: "Diagram") -> bool:
        return _word_key(word_of(self)) < _word_key(word_of(other))

    def __repr__(self):
        return f"Diagram({self.n}, {word_of(self)!r})"

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted position pairs."""
        return [(p, q) for p, q in enumerate(self.mate) if q > p]

    def blocks(self) -> dict[str, list[tuple[int, int]]]:
        """Edges in vertex notation, split into upper, lower and transversal."""
        n = self.n
        out = {"upper": [], "lower": [], "transversals": []}
        for p, q in self.edges():
            if q < n:
                out["upper"].append((p + 1, q + 1))
            elif p >= n:
                out["lower"].append(tuple(sorted((2 * n - p, 2 * n - q))))
            else:
                out["transversals"].append((p + 1, 2 * n - q))
        out["lower"].sort()
        return out

    def is_jones(self) -> bool:
        return NONE not in self.mate


def _validate(n, mate):
    if not isinstance(n, int) or n < 1:
        raise DiagramError(f"degree must be a positive integer, got {n!r}")
    if len(mate) != 2 * n:
        raise DiagramError(f"mate array has length {len(mate)}, expected {2 * n}")
    for p, q in enumerate(mate):
        if q == NONE:
            continue
        if not (0 <= q < 2 * n) or q == p or mate[q] != p:
            raise DiagramError(f"mate is not a partial involution at position {p}")
    stack = []
    for p, q in enumerate(mate):
        if q == NONE:
            continue
        if q > p:
            stack.append(p)
        elif not stack or stack.pop() != q:
            raise DiagramError("edges cross")


def _word_key(word):
    return tuple(SYMBOL_ORDER[s] for s in word)


def identity(n: int) -> Diagram:
    return Diagram.trusted(n, tuple(2 * n - 1 - p for p in range(2 * n)))


def empty(n: int) -> Diagram:
    """The all-singleton diagram of rank 0."""
    return Diagram.trusted(n, (NONE,) * (2 * n))


def word_of(d: Diagram) -> str:
    return "".join(F if q == NONE else (U if q > p else D) for p, q in enumerate(d.mate))


def check_word(word: Sequence[str], length: int | None = None) -> None:
    if length is not None and len(word) != length:
        raise DiagramError(f"word {word!r} has length {len(word)}, expected {length}")
    z = 0
    for s in word:
        if s not in STEP:
            raise DiagramError(f"bad symbol {s!r} in {word!r}")
        z += STEP[s]
        if z < 0:
            raise DiagramError(f"word {word!r} dips below zero")
    if z != 0:
        raise DiagramError(f"word {word!r} does not return to zero")


def diagram_of(word: Sequence[str]) -> Diagram:
    """Rebuild the diagram from a Motzkin word by stack matching."""
    if len(word) == 0 or len(word) % 2:
        raise DiagramError(f"word length must be positive and even, got {len(word)}")
    check_word(word)
    mate = [NONE] * len(word)
    stack = []
    for p, s in enumerate(word):
        if s == U:
            stack.append(p)
        elif s == D:
            q = stack.pop()
            mate[p], mate[q] = q, p
    return Diagram.trusted(len(word) // 2, tuple(mate))


def partial_sums(word: Sequence[str]) -> list[int]:
    """The z-sequence (z_0, ..., z_2n)."""
    z = [0]
    for s in word:
        z.append(z[-1] + STEP[s])
    return z


def levels(word: Sequence[str]) -> list[int]:
    """Level of each position: min of the partial sums either side."""
    z = partial_sums(word)
    return [min(z[i], z[i + 1]) for i in range(len(word))]


def semiword_rank(half: Sequence[str]) -> int:
    """Final height of a semi-word, or raise if some prefix goes negative."""
    z = 0
    for s in half:
        z += STEP[s]
        if z < 0:
            raise DiagramError(f"semi-word {half!r} dips below zero")
    return z


def pair_of(d: Diagram) -> tuple[str, str, int]:
    """Split into (left, right, rank): the matched semi-word pair."""
    w = word_of(d)
    n = d.n
    left = w[:n]
    right = "".join(COMPLEMENT[s] for s in reversed(w[n:]))
    return left, right, rank(d)


def diagram_of_pair(left: str, right: str, k: int | None = None) -> Diagram:
    n = len(left)
    if n == 0 or len(right) != n:
        raise DiagramError("semi-words must be non-empty and of equal length")
    kl = semiword_rank(left)
    kr = semiword_rank(right)
    if kl != kr:
        raise DiagramError(f"unmatched ranks {kl} and {kr}")
    if k is not None and k != kl:
        raise DiagramError(f"declared rank {k} but semi-words have rank {kl}")
    return diagram_of(left + "".join(COMPLEMENT[s] for s in reversed(right)))


def rank(d: Diagram) -> int:
    n = d.n
    return sum(1 for q in d.mate[:n] if q >= n)


def transpose(d: Diagram) -> Diagram:
    """Swap the upper and lower rows (the anti-involution of the monoid)."""
    last = 2 * d.n - 1
    return Diagram.trusted(
        d.n, tuple(NONE if d.mate[last - p] == NONE else last - d.mate[last - p] for p in range(last + 1))
    )


def multiply(a: Diagram, b: Diagram) -> tuple[Diagram, int]:
    """Product ``ab`` and the number of floating components.

    Nodes 0..n-1 are the top row (upper row of ``a``), n..2n-1 the
    interface and 2n..3n-1 the bottom row (lower row of ``b``).
    """
    n = a.n
    if b.n != n:
        raise DiagramError(f"degree mismatch: {a.n} vs {b.n}")
    two = 2 * n
    # each node has at most one a-edge and one b-edge
    via_a = [NONE] * (3 * n)
    via_b = [NONE] * (3 * n)
    am, bm = a.mate, b.mate
    for p in range(two):
        q = am[p]
        if q != NONE:
            via_a[p if p < n else n + two - 1 - p] = q if q < n else n + two - 1 - q
        q = bm[p]
        if q != NONE:
            via_b[n + p if p < n else two + two - 1 - p] = n + q if q < n else two + two - 1 - q

    seen = bytearray(3 * n)
    mate = [NONE] * two

    def out_pos(v):
        return v if v < n else 4 * n - 1 - v

    for start in list(range(n)) + list(range(two, 3 * n)):
        if seen[start]:
            continue
        seen[start] = 1
        # top nodes only have a-edges, bottom nodes only b-edges
        v = start
        use_a = start < n
        while True:
            w = via_a[v] if use_a else via_b[v]
            if w == NONE:
                break
            seen[w] = 1
            v = w
            use_a = not use_a
        # a path that dies in the interface leaves start a singleton
        if v != start and not n <= v < two:
            mate[out_pos(start)] = out_pos(v)
            mate[out_pos(v)] = out_pos(start)

    floating = 0
    for v in range(n, two):
        if seen[v]:
            continue
        floating += 1
        # walk both directions
        for use_a in (True, False):
            w = v
            flag = use_a
            while True:
                x = via_a[w] if flag else via_b[w]
                if x == NONE or seen[x]:
                    break
                seen[x] = 1
                w = x
                flag = not flag
        seen[v] = 1
    return Diagram.trusted(n, tuple(mate)), floating


def is_partial_jones(d: Diagram) -> bool:
    """Can the singletons be paired off without creating a crossing?

    Two singletons can be joined exactly when they sit in the same region
    cut out by the existing edges, so completion is possible iff every
    region holds an even number of singletons.
    """
    counts = {}
    stack = [NONE]
    for p, q in enumerate(d.mate):
        if q == NONE:
            counts[stack[-1]] = counts.get(stack[-1], 0) ^ 1
        elif q > p:
            stack.append(p)
        else:
            stack.pop()
    return not any(counts.values())


def jones_completions(d: Diagram) -> list[Diagram]:
    """All planar completions of ``d`` to a Jones diagram, by backtracking."""
    n = d.n
    found = []
    mate = list(d.mate)

    def crosses(i, j):
        # does any existing edge have exactly one end strictly inside (i, j)?
        for p in range(i + 1, j):
            q = mate[p]
            if q != NONE and not (i < q < j):
                return True
        return False

    def solve():
        try:
            i = mate.index(NONE)
        except ValueError:
            found.append(Diagram.trusted(n, tuple(mate)))
            return
        for j in range(i + 1, 2 * n):
            if mate[j] == NONE and not crosses(i, j):
                mate[i], mate[j] = j, i
                solve()
                mate[i] = mate[j] = NONE

    solve()
    return found
