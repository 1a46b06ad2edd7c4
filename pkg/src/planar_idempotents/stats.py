"""Explicit fibre expansion and the cycle/path statistics of Jones idempotents.

``e[c][p]`` counts idempotents with c cycles and p paths in their interface
graph; for Jones elements p is the rank.  ``s1`` and ``s2`` are the return
statistics: over LLT cycles, the sum of ``u + l`` and the sum of ``u1 * l2``
over ordered pairs of distinct cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import Iterator

from .diagram import U, diagram_of_pair
from .engine import count_idempotents
from .interface import CYCLE, half_of, left_of_leftmost, walk
from .seeds import JONES, MOTZKIN, seed_pairs, special_pairs


def _flip(word: str, positions) -> str:
    out = list(word)
    for v in positions:
        out[v] = U
    return "".join(out)


def fibre_words(monoid: str, n: int) -> Iterator[tuple[str, str]]:
    """Every idempotent as a (left, right) semi-word pair, fibre by fibre.

    A mutation removes one upper and one lower level-0 edge of an LLT
    cycle.  In word form the closing D of each becomes U; the freed
    vertices join the active ones and are matched up in order when the
    diagram is rebuilt.
    """
    for top, bottom in seed_pairs(monoid, n):
        per_cycle = special_pairs(top, bottom)
        # a cycle contributes either nothing or one of its special pairs
        choices = [[None] + pairs for pairs in per_cycle]
        for pick in product(*choices):
            ups = [p[0] for p in pick if p is not None]
            lows = [p[1] for p in pick if p is not None]
            yield _flip(top.word, ups), _flip(bottom.word, lows)


def enumerate_idempotents(monoid: str, n: int):
    if n == 0:
        return
    for left, right in fibre_words(monoid, n):
        yield diagram_of_pair(left, right)


def cycle_stats(left: str, right: str) -> tuple[int, int, int, int]:
    """(cycles, paths, S1 term, S2 term) for one idempotent."""
    top, bottom = half_of(left), half_of(right)
    is_left = left_of_leftmost(top, bottom)
    c = paths = 0
    su = sl = sul = 0
    for kind, verts, _, u, l in walk(top, bottom):
        if kind == CYCLE:
            c += 1
            if is_left(verts[0]):
                su += u
                sl += l
                sul += u * l
        else:
            paths += 1
    return c, paths, su + sl, su * sl - sul


@dataclass
class StatsGrid:
    n: int
    e: list
    s1: list
    s2: list

    @property
    def meandric_even(self) -> int:
        return self.at(self.e, 1, 0)

    @property
    def meandric_odd(self) -> int:
        return self.at(self.e, 0, 1)

    def at(self, grid, c, p) -> int:
        # out-of-range entries are zero
        if 0 <= c < len(grid) and 0 <= p <= self.n:
            return grid[c][p]
        return 0

    def column(self, grid, p) -> int:
        """Sum over c at fixed p."""
        if not 0 <= p <= self.n:
            return 0
        return sum(row[p] for row in grid)

    def row(self, grid, c) -> int:
        """Sum over p at fixed c."""
        if not 0 <= c < len(grid):
            return 0
        return sum(grid[c])

    @property
    def total(self) -> int:
        return sum(map(sum, self.e))


def _empty_grid(n):
    return [[0] * (n + 1) for _ in range(n // 2 + 1)]


def stats_grid(n: int, monoid: str = JONES) -> StatsGrid:
    if n == 0:
        return StatsGrid(0, [[1]], [[0]], [[0]])
    e, s1, s2 = _empty_grid(n), _empty_grid(n), _empty_grid(n)
    for left, right in fibre_words(monoid, n):
        c, p, a, b = cycle_stats(left, right)
        e[c][p] += 1
        s1[c][p] += a
        s2[c][p] += b
    return StatsGrid(n, e, s1, s2)


def grids(n_max: int) -> list[StatsGrid]:
    return [stats_grid(n) for n in range(n_max + 1)]


def meandric(n_max: int, grid_list=None) -> list[int]:
    """(m_2, ..., m_{n_max}) read off the grids."""
    gs = grid_list or grids(n_max)
    out = []
    for n in range(2, n_max + 1):
        g = gs[n]
        m = g.meandric_even if n % 2 == 0 else g.meandric_odd
        if n % 2 == 0 and m != gs[n - 1].meandric_odd:
            raise AssertionError(f"m_{n} != m_{n - 1}")
        out.append(m)
    return out


def catalan(k: int) -> int:
    return comb(2 * k, k) // (k + 1)


def backward_difference(seq: dict, n: int, k: int) -> int | None:
    """k-th backward difference at n, or None if a term is missing."""
    total = 0
    for i in range(k + 1):
        term = seq.get(n - i)
        if term is None:
            return None
        total += (-1) ** i * comb(k, i) * term
    return total


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


def _depth_seq(gs, grid_name, k):
    # n -> sum over c of grid[c][n - 2k]; zero where n - 2k < 0
    return {g.n: g.column(getattr(g, grid_name), g.n - 2 * k) for g in gs}


def depth_difference_in_range(n: int, k: int) -> bool:
    """Range in which the depth-k difference identities are claimed.

    Every term of the k-th difference must itself satisfy n >= 3k - 1,
    so the stencil n, n-1, ..., n-k lies in range: n - k >= 3k - 1.
    """
    return n - k >= 3 * k - 1


def verify_identities(n_max: int, closed_form_min: int = 5, literal_range: bool = False) -> list[Check]:
    """Check the recurrence, closed forms and difference identities up to n_max.

    With ``literal_range`` the depth-k differences are also checked at
    every n >= 3k - 1 rather than only where the whole stencil is in range.
    """
    gs = grids(n_max)
    checks = []

    def record(name, bad):
        checks.append(Check(name, not bad, "; ".join(bad[:5])))

    # recurrence, with e_{0;0,0} = 1 and S at degree 0 zero
    bad = []
    for n in range(1, n_max + 1):
        g, h = gs[n], gs[n - 1]
        for c in range(n // 2 + 1):
            for p in range(n + 1):
                rhs = h.at(h.e, c - 1, p + 1) + h.at(h.e, c, p - 1) + h.at(h.s1, c + 1, p - 1) + h.at(h.s2, c + 2, p - 1)
                if g.e[c][p] != rhs:
                    bad.append(f"(n,c,p)=({n},{c},{p}): {g.e[c][p]} != {rhs}")
    record("recurrence", bad)

    bad = []
    for k in range(1, n_max // 2 + 1):
        even = gs[2 * k].column(gs[2 * k].e, 0)
        odd = gs[2 * k - 1].column(gs[2 * k - 1].e, 1)
        if not even == odd == catalan(k) ** 2:
            bad.append(f"k={k}: {even}, {odd}, C_k^2={catalan(k) ** 2}")
        if 2 * k + 1 <= n_max:
            g, h = gs[2 * k], gs[2 * k + 1]
            rhs = h.column(h.e, 1) - g.column(g.e, 0) - g.column(g.s1, 0) - g.column(g.s2, 0)
            if g.column(g.e, 2) != rhs:
                bad.append(f"k={k}: e_(2k;.,2)={g.column(g.e, 2)} != {rhs}")
    record("catalan squares", bad)

    bad = []
    for n in range(2, n_max + 1):
        g = gs[n]
        if g.at(g.s1, 1, n - 2) != 2:
            bad.append(f"S1_({n};1,{n - 2})={g.at(g.s1, 1, n - 2)}")
        if n >= closed_form_min:
            for name, grid, c, want in (
                ("S1", g.s1, 1, 4 * n - 8),
                ("S1", g.s1, 2, 2 * n - 2),
                ("S2", g.s2, 2, 2),
            ):
                if g.at(grid, c, n - 4) != want:
                    bad.append(f"{name}_({n};{c},{n - 4})={g.at(grid, c, n - 4)} != {want}")
    record("return sums", bad)

    bad = []
    for n in range(2, n_max + 1):
        g = gs[n]
        if g.column(g.e, n - 2) != 3 * n - 5:
            bad.append(f"n={n}: {g.column(g.e, n - 2)} != {3 * n - 5}")
        if n >= closed_form_min and 2 * g.column(g.e, n - 4) != n * (9 * n - 35):
            bad.append(f"n={n}: depth 2 count {g.column(g.e, n - 4)}")
    record("depth 1 and 2", bad)

    bad = []
    for k in range(1, 4):
        z = _depth_seq(gs, "e", k)
        s1 = _depth_seq(gs, "s1", k)
        s2 = _depth_seq(gs, "s2", k)
        for n in range(3 * k - 1, n_max + 1):
            if not (literal_range or depth_difference_in_range(n, k)):
                continue
            got = backward_difference(z, n, k)
            if got is not None and got != 3**k:
                bad.append(f"k={k} n={n}: difference of e is {got}, want {3**k}")
            got = backward_difference(s1, n, k - 1)
            if got is not None and got != 2 * 3 ** (k - 1):
                bad.append(f"k={k} n={n}: difference of S1 is {got}, want {2 * 3 ** (k - 1)}")
            got = backward_difference(s2, n, k - 1)
            if got is not None and got != 0:
                bad.append(f"k={k} n={n}: difference of S2 is {got}, want 0")
    record("depth differences", bad)

    bad = []
    for n in range(3, n_max + 1, 2):
        m_odd = gs[n].meandric_odd
        h = gs[n - 1]
        rhs = h.at(h.s1, 1, 0) + h.at(h.s2, 2, 0)
        if m_odd != rhs:
            bad.append(f"m_{n}={m_odd} != {rhs}")
        if n + 1 <= n_max and gs[n + 1].meandric_even != m_odd:
            bad.append(f"m_{n + 1} != m_{n}")
    record("meandric", bad)

    bad = []
    for n in range(1, n_max + 1):
        g, h = gs[n], gs[n - 1]
        lhs = g.row(g.e, 0) - h.row(h.e, 0)
        rhs = h.row(h.s1, 1) + h.row(h.s2, 2)
        if lhs != rhs:
            bad.append(f"n={n}: {lhs} != {rhs}")
    record("cycle-free differences", bad)

    bad = []
    for g in gs[1:]:
        ref = count_idempotents(JONES, g.n).by_rank
        cols = [g.column(g.e, p) for p in range(g.n + 1)]
        if cols != ref:
            bad.append(f"n={g.n}")
    record("grid marginals", bad)
    return checks


def d_star_report(n_max: int, monoid: str = JONES) -> list[tuple[int, int, int, float]]:
    """(n, d*_n, rank attaining it, d*_n / e_n) for n = 1..n_max."""
    out = []
    for n in range(1, n_max + 1):
        rep = count_idempotents(monoid, n)
        best = max(rep.by_rank)
        out.append((n, best, rep.by_rank.index(best), best / rep.total))
    return out


def motzkin_diagonals(n_max: int) -> list[tuple[int, int]]:
    """(d, d-th difference along the r = n - d diagonal) where defined.

    Reported only: the value 1 is an observation from the tables.
    """
    rows = {n: count_idempotents(MOTZKIN, n).by_rank for n in range(n_max + 1)}
    out = []
    for d in range(1, n_max + 1):
        seq = {n: rows[n][n - d] for n in range(d, n_max + 1)}
        for n in range(2 * d, n_max + 1):
            v = backward_difference(seq, n, d)
            if v is not None:
                out.append((d, n, v))
    return out
