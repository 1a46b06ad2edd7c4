"""Idempotent counts by summing fibre sizes over the seed set.

Work is split by prefixes of the left semi-word.  Each worker folds its
share of seeds into exact integer partials, and the partials are summed,
so the result does not depend on how many workers ran or in which order
they finished.
"""

from __future__ import annotations

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .diagram import is_partial_jones, diagram_of_pair
from .seeds import JONES, MOTZKIN, NO_F, WITH_F, elementary_symmetric, fibre_terms, seed_pairs, seed_ranks

log = logging.getLogger(__name__)

FIBRE = "fibre"
BRUTE = "brute"
DEFAULT_PREFIX_DEPTH = 4


class ResourceLimitError(RuntimeError):
    """The requested size is beyond the configured guard."""


class WorkerError(RuntimeError):
    """A worker failed; no partial result is reported."""


@dataclass
class Limits:
    motzkin: int = 12
    jones: int = 20

    def check(self, monoid: str, n: int, force: bool = False) -> None:
        cap = getattr(self, monoid)
        if n > cap and not force:
            raise ResourceLimitError(f"{monoid} n={n} exceeds the fibre-method guard n<={cap}; use force to override")


LIMITS = Limits()


@dataclass
class CountReport:
    monoid: str
    n: int
    method: str
    total: int
    by_rank: list
    kauffman_total: int | None = None
    work_items: int = 0
    wall_time: float = field(default=0.0, compare=False)

    def by_depth(self) -> list:
        """Counts indexed by depth (n - rank) / 2; Jones only."""
        return [self.by_rank[self.n - 2 * d] for d in range(self.n // 2 + 1)]


@dataclass(frozen=True)
class WorkPartition:
    ranges: tuple  # one tuple of prefixes per worker
    workers: int


def _prefixes(monoid: str, n: int, depth: int) -> list[str]:
    alphabet = WITH_F if monoid == MOTZKIN else NO_F
    symbols = "UFD" if alphabet == WITH_F else "UD"
    depth = min(depth, n)
    ranks = seed_ranks(monoid, n)
    out = []

    def grow(word, h):
        if len(word) == depth:
            rem = n - depth
            if any(abs(h - k) <= rem and (alphabet == WITH_F or (rem - abs(h - k)) % 2 == 0) for k in ranks):
                out.append(word)
            return
        for s in symbols:
            h2 = h + {"U": 1, "F": 0, "D": -1}[s]
            if h2 >= 0:
                grow(word + s, h2)

    grow("", 0)
    return out


def partition(monoid: str, n: int, workers: int, depth: int = DEFAULT_PREFIX_DEPTH) -> WorkPartition:
    if workers < 1:
        raise ValueError("need at least one worker")
    prefixes = _prefixes(monoid, n, depth)
    ranges = tuple(tuple(prefixes[i::workers]) for i in range(workers))
    return WorkPartition(ranges, workers)


def _fold(monoid: str, n: int, prefixes) -> tuple:
    """Partial (by_rank, kauffman, seeds) over the seeds of some prefixes."""
    by_rank = [0] * (n + 1)
    kauffman = 0
    seeds = 0
    for top, bottom in seed_pairs(monoid, n, prefixes):
        seeds += 1
        xs, weight = fibre_terms(top, bottom)
        p = top.rank
        if xs:
            for k, s in enumerate(elementary_symmetric(xs)):
                by_rank[2 * k + p] += s
        else:
            by_rank[p] += 1
        kauffman += weight
    return by_rank, kauffman, seeds


def _trivial(monoid, n, method):
    # degree 0: the empty diagram is the only element
    return CountReport(monoid, 0, method, 1, [1], 1 if monoid == JONES else None, 0, 0.0)


def partitioned_count(
    monoid: str,
    n: int,
    workers: int = 1,
    depth: int = DEFAULT_PREFIX_DEPTH,
    force: bool = False,
    parallel: bool = True,
) -> CountReport:
    """Fibre-method count with the seed space split across ``workers``.

    With ``parallel`` false the ranges are folded one after another in
    this process, which exercises the same merge.
    """
    if monoid not in (MOTZKIN, JONES):
        raise ValueError(f"unknown monoid {monoid!r}")
    if n == 0:
        return _trivial(monoid, n, FIBRE)
    if n < 0:
        raise ValueError("n must be non-negative")
    LIMITS.check(monoid, n, force)
    start = time.perf_counter()
    part = partition(monoid, n, workers, depth)
    if workers == 1 or not parallel:
        partials = [_fold(monoid, n, r) for r in part.ranges]
    else:
        try:
            with ProcessPoolExecutor(max_workers=workers) as pool:
                futures = [pool.submit(_fold, monoid, n, r) for r in part.ranges]
                partials = [f.result() for f in futures]
        except Exception as exc:
            raise WorkerError(f"worker failed: {exc}") from exc
    by_rank = [0] * (n + 1)
    kauffman = seeds = 0
    for b, k, s in partials:
        for r, v in enumerate(b):
            by_rank[r] += v
        kauffman += k
        seeds += s
    elapsed = time.perf_counter() - start
    log.debug("%s n=%d: %d seeds in %.2fs", monoid, n, seeds, elapsed)
    return CountReport(
        monoid,
        n,
        FIBRE,
        sum(by_rank),
        by_rank,
        kauffman if monoid == JONES else None,
        seeds,
        elapsed,
    )


def count_idempotents(monoid: str, n: int, workers: int = 1, force: bool = False) -> CountReport:
    return partitioned_count(monoid, n, workers, force=force)


def count_kauffman(n: int, workers: int = 1, force: bool = False) -> CountReport:
    """Jones count with ``kauffman_total`` = idempotents with no floating loop."""
    return partitioned_count(JONES, n, workers, force=force)


def xi_zero_count(n: int, workers: int = 1) -> int:
    """Idempotents of the monoid with floating loops sent to zero (adds 0 itself)."""
    return count_kauffman(n, workers).kauffman_total + 1


def pj_lower_bound(n: int) -> int:
    """Sum of fibre sizes over the seeds lying in the partial Jones monoid."""
    if n == 0:
        return 1
    LIMITS.check(MOTZKIN, n)
    total = 0
    for top, bottom in seed_pairs(MOTZKIN, n):
        if not is_partial_jones(diagram_of_pair(top.word, bottom.word)):
            continue
        size = 1
        for x in fibre_terms(top, bottom)[0]:
            size *= 1 + x
        total += size
    return total


def count_planar_partition(n: int, workers: int = 1, force: bool = False) -> int:
    """Idempotents of the planar partition monoid on n points, via J_2n."""
    return count_idempotents(JONES, 2 * n, workers, force).total
