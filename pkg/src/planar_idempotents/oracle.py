"""Brute-force reference counts: square every element and compare.

Nothing here uses the fibre machinery.  Elements come from all matched
semi-word pairs and idempotency is decided by multiplication alone.
"""

from __future__ import annotations

import time
from collections import defaultdict
from itertools import product
from typing import Iterator

from .diagram import Diagram, diagram_of_pair, is_partial_jones, multiply, rank
from .engine import BRUTE, CountReport, ResourceLimitError

MOTZKIN = "motzkin"
JONES = "jones"

MAX_BRUTE = {MOTZKIN: 9, JONES: 14}


def guard(monoid: str, n: int, force: bool = False) -> None:
    cap = MAX_BRUTE[monoid]
    if n > cap and not force:
        raise ResourceLimitError(f"brute {monoid} n={n} exceeds n<={cap}; use force to override")


def _semiwords(n: int, k: int, symbols: str) -> list[str]:
    # plain filter over all words; fine at oracle sizes
    out = []
    for w in product(symbols, repeat=n):
        h = 0
        for s in w:
            h += 1 if s == "U" else (-1 if s == "D" else 0)
            if h < 0:
                break
        else:
            if h == k:
                out.append("".join(w))
    return out


def semiword_table(monoid: str, n: int) -> dict[int, list[str]]:
    symbols = "UFD" if monoid == MOTZKIN else "UD"
    table = {}
    for k in range(n + 1):
        words = _semiwords(n, k, symbols)
        if words:
            table[k] = words
    return table


def enumerate_monoid(monoid: str, n: int) -> Iterator[Diagram]:
    if monoid not in (MOTZKIN, JONES):
        raise ValueError(f"unknown monoid {monoid!r}")
    for k, words in semiword_table(monoid, n).items():
        for left in words:
            for right in words:
                yield diagram_of_pair(left, right, k)


def is_idempotent_by_product(d: Diagram) -> bool:
    return multiply(d, d)[0] == d


def brute_count(monoid: str, n: int, force: bool = False) -> CountReport:
    guard(monoid, n, force)
    start = time.perf_counter()
    if n == 0:
        return CountReport(monoid, 0, BRUTE, 1, [1], 1 if monoid == JONES else None, 1, 0.0)
    by_rank = [0] * (n + 1)
    kauffman = 0
    seen = 0
    for d in enumerate_monoid(monoid, n):
        seen += 1
        square, floating = multiply(d, d)
        if square == d:
            by_rank[rank(d)] += 1
            kauffman += floating == 0
    return CountReport(
        monoid,
        n,
        BRUTE,
        sum(by_rank),
        by_rank,
        kauffman if monoid == JONES else None,
        seen,
        time.perf_counter() - start,
    )


def brute_kauffman(n: int, force: bool = False) -> int:
    """Jones idempotents whose square has no floating component."""
    return brute_count(JONES, n, force).kauffman_total


def brute_pj_count(n: int, force: bool = False) -> int:
    guard(MOTZKIN, n, force)
    if n == 0:
        return 1
    return sum(1 for d in enumerate_monoid(MOTZKIN, n) if is_partial_jones(d) and is_idempotent_by_product(d))


def _close_pairs(word: str) -> str:
    # 2nd, 4th, ... unmatched U become D; written out independently
    out = list(word)
    open_stack = []
    for i, s in enumerate(word):
        if s == "U":
            open_stack.append(i)
        elif s == "D":
            open_stack.pop()
    for i in open_stack[1::2]:
        out[i] = "D"
    return "".join(out)


def project(left: str, right: str) -> tuple[str, str]:
    return _close_pairs(left), _close_pairs(right)


def brute_fibre_partition(monoid: str, n: int, force: bool = False) -> dict[tuple[str, str], list[Diagram]]:
    """Brute idempotents grouped by their rank-0/1 projection."""
    guard(monoid, n, force)
    blocks = defaultdict(list)
    for k, words in semiword_table(monoid, n).items():
        for left in words:
            for right in words:
                d = diagram_of_pair(left, right, k)
                if is_idempotent_by_product(d):
                    blocks[project(left, right)].append(d)
    return dict(blocks)
