"""Semi-words, the seed set of rank-0/1 idempotents, and per-seed fibre data."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .diagram import D, Diagram, DiagramError, F, U, diagram_of_pair, pair_of
from .interface import CYCLE, GammaComponent, Half, components, gamma_of_pair, half_of, left_of_leftmost, walk

MOTZKIN = "motzkin"
JONES = "jones"
MONOIDS = (MOTZKIN, JONES)

WITH_F = "with-F"
NO_F = "no-F"


def _alphabet(alphabet: str) -> tuple:
    if alphabet == WITH_F:
        return (U, F, D)
    if alphabet == NO_F:
        return (U, D)
    raise ValueError(f"unknown alphabet {alphabet!r}")


def _reachable(height: int, remaining: int, k: int, with_flat: bool) -> bool:
    gap = abs(height - k)
    if gap > remaining:
        return False
    return with_flat or (remaining - gap) % 2 == 0


def semiwords(n: int, k: int, alphabet: str = WITH_F, prefix: str = "") -> Iterator[str]:
    """Every semi-word of length n ending at height k, in U < F < D order."""
    symbols = _alphabet(alphabet)
    with_flat = F in symbols
    height = 0
    for s in prefix:
        if s not in symbols:
            return
        height += 1 if s == U else (-1 if s == D else 0)
        if height < 0:
            return
    if len(prefix) > n or not (0 <= k <= n):
        return
    if not _reachable(height, n - len(prefix), k, with_flat):
        return
    yield from _extend(prefix, height, n - len(prefix), k, symbols, with_flat)


def _extend(word, height, remaining, k, symbols, with_flat):
    if remaining == 0:
        yield word
        return
    for s in symbols:
        h = height + (1 if s == U else (-1 if s == D else 0))
        if h >= 0 and _reachable(h, remaining - 1, k, with_flat):
            yield from _extend(word + s, h, remaining - 1, k, symbols, with_flat)


@lru_cache(maxsize=None)
def semiword_list(n: int, k: int, alphabet: str = WITH_F) -> tuple:
    return tuple(semiwords(n, k, alphabet))


def seed_ranks(monoid: str, n: int) -> tuple:
    if monoid == MOTZKIN:
        return (0, 1) if n >= 1 else (0,)
    if monoid == JONES:
        return (n % 2,)
    raise ValueError(f"unknown monoid {monoid!r}")


def monoid_alphabet(monoid: str) -> str:
    return WITH_F if monoid == MOTZKIN else NO_F


def seed_pairs(monoid: str, n: int, prefixes: Sequence[str] | None = None) -> Iterator[tuple[Half, Half]]:
    """Seeds as pairs of halves, optionally restricted to left-word prefixes.

    Rank-0 pairs come first, then rank 1; within a rank the order is
    lexicographic in (left, right).
    """
    alphabet = monoid_alphabet(monoid)
    for k in seed_ranks(monoid, n):
        rights = [half_of(w) for w in semiword_list(n, k, alphabet)]
        if prefixes is None:
            lefts = semiword_list(n, k, alphabet)
        else:
            lefts = sorted(
                (w for p in prefixes for w in semiwords(n, k, alphabet, p)),
                key=lambda w: [(U, F, D).index(s) for s in w],
            )
        # rank-1 Motzkin pairs can fail to be idempotent; Jones ones cannot
        check = monoid == MOTZKIN and k == 1
        for lw in lefts:
            top = half_of(lw)
            for bottom in rights:
                if check and not _rank_one_idempotent(top, bottom):
                    continue
                yield top, bottom


def _rank_one_idempotent(top: Half, bottom: Half) -> bool:
    # the path leaving the open U of the upper row must end at the open U
    # of the lower row; every other component is then a cycle or inert path
    tl, bl = top.link, bottom.link
    w, on_top = top.active[0], False
    while True:
        x = tl[w] if on_top else bl[w]
        if x < 0:
            break
        w, on_top = x, not on_top
    return w == bottom.active[0] and not on_top


def seed_stream(monoid: str, n: int) -> Iterator[Diagram]:
    for top, bottom in seed_pairs(monoid, n):
        yield diagram_of_pair(top.word, bottom.word)


@dataclass(frozen=True)
class SeedProfile:
    seed: Diagram
    parity: int
    cycles: tuple  # of GammaComponent
    fibre_vector: tuple
    fibre_size: int
    sigma: tuple
    kauffman_weight: int | None


def elementary_symmetric(xs: Sequence[int]) -> list[int]:
    """Coefficients of prod(1 + x t), lowest degree first."""
    coeffs = [1]
    for x in xs:
        if x == 0:
            continue
        coeffs.append(0)
        for i in range(len(coeffs) - 1, 0, -1):
            coeffs[i] += x * coeffs[i - 1]
    return coeffs


def profile(seed: Diagram) -> SeedProfile:
    left, right, r = pair_of(seed)
    if r > 1:
        raise DiagramError(f"seeds have rank 0 or 1, got rank {r}")
    g = gamma_of_pair(left, right)
    comps = components(g)
    if any(c.kind in ("MixedPath", "CisActivePath") for c in comps):
        raise DiagramError("seed is not idempotent")
    cyc = tuple(c for c in comps if c.kind == CYCLE)
    xs = tuple(c.u * c.l for c in cyc if c.llt)
    sigma = elementary_symmetric(xs)
    sigma += [0] * (len(xs) + 1 - len(sigma))
    size = 1
    for x in xs:
        size *= 1 + x
    weight = _kauffman_literal(cyc) if seed.is_jones() else None
    return SeedProfile(seed, r, cyc, xs, size, tuple(sigma), weight)


def _kauffman_literal(cyc: Sequence[GammaComponent]) -> int:
    if any(not c.llt for c in cyc):
        return 0
    if not cyc:
        return 1
    out = 1
    for c in cyc:
        out *= c.u * c.l
    return out


def _kauffman_product(cyc: Sequence[GammaComponent]) -> int:
    out = 1
    for c in cyc:
        out *= c.u * c.l
    return out


def kauffman_weight(seed: Diagram) -> int:
    """Number of cycle-free idempotents in the fibre over a Jones seed."""
    if not seed.is_jones():
        raise DiagramError("Kauffman weights are defined for Jones seeds only")
    p = profile(seed)
    unified = _kauffman_product(p.cycles)
    if unified != p.kauffman_weight:
        raise AssertionError(f"Kauffman weight formulas disagree on {seed!r}")
    return p.kauffman_weight


def fibre_terms(top: Half, bottom: Half) -> tuple[list[int], int]:
    """Fast path used by the engine: (fibre vector, all-cycles u*l product).

    Cycles right of the leftmost transversal never carry a level-0 edge,
    so they contribute nothing to either quantity; the tests check this.
    """
    xs = []
    weight = 1
    for kind, _, _, u, l in walk(top, bottom):
        if kind == CYCLE:
            x = u * l
            weight *= x
            if x:
                xs.append(x)
    return xs, weight


def special_pairs(top: Half, bottom: Half) -> list[list[tuple[int, int]]]:
    """For each LLT cycle, its special pairs as (upper-row D, lower-row D).

    Each entry names the closing vertex of a level-0 edge in the upper row
    and of one in the lower row; deleting both edges is the mutation.
    """
    is_left = left_of_leftmost(top, bottom)
    out = []
    for kind, verts, _, _, _ in walk(top, bottom):
        if kind != CYCLE or not is_left(verts[0]):
            continue
        ups = [top.link[v] for v in verts if top.ret[v]]
        lows = [bottom.link[v] for v in verts if bottom.ret[v]]
        if ups and lows:
            out.append([(a, b) for a in ups for b in lows])
    return out
