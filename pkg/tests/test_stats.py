from planar_idempotents.diagram import diagram_of, pair_of
from planar_idempotents.engine import count_idempotents
from planar_idempotents.interface import hat_word, is_idempotent
from planar_idempotents.oracle import enumerate_monoid
from planar_idempotents.stats import (
    backward_difference,
    cycle_stats,
    d_star_report,
    enumerate_idempotents,
    fibre_words,
    meandric,
    motzkin_diagonals,
    stats_grid,
    verify_identities,
)


def test_enumeration_counts():
    assert sum(1 for _ in enumerate_idempotents("jones", 4)) == 12
    assert sum(1 for _ in enumerate_idempotents("motzkin", 3)) == 31


def test_enumeration_matches_brute_as_sets():
    for monoid, n_max in (("jones", 8), ("motzkin", 5)):
        for n in range(1, n_max + 1):
            got = list(enumerate_idempotents(monoid, n))
            assert len(got) == len(set(got))
            want = {d for d in enumerate_monoid(monoid, n) if is_idempotent(d)}
            assert set(got) == want


def test_m8_example_fibre():
    left, right, _ = pair_of(diagram_of("UDUFUUDDDUUUFDDD"))
    fibre = {(l, r) for l, r in fibre_words("motzkin", 8) if (hat_word(l), hat_word(r)) == (left, right)}
    assert fibre == {(left, right), ("UUUFUUDD", "UUUFDDUU")}


def test_grid_examples():
    assert stats_grid(7).column(stats_grid(7).e, 5) == 16
    g = stats_grid(12)
    assert g.column(g.e, 8) == 438
    assert g.total == 96138


def test_grid_support():
    for n in range(1, 9):
        g = stats_grid(n)
        for c, row in enumerate(g.e):
            for p, v in enumerate(row):
                if v:
                    assert 2 * c + p <= n and (n - p) % 2 == 0


def test_grid_marginals():
    for n in range(1, 11):
        g = stats_grid(n)
        assert [g.column(g.e, p) for p in range(n + 1)] == count_idempotents("jones", n).by_rank


def test_return_sums_closed_forms():
    for n in range(5, 11):
        g = stats_grid(n)
        assert g.at(g.s1, 1, n - 2) == 2
        assert g.at(g.s1, 1, n - 4) == 4 * n - 8
        assert g.at(g.s1, 2, n - 4) == 2 * n - 2
        assert g.at(g.s2, 2, n - 4) == 2


def test_zero_sum_cases():
    for n in range(1, 9):
        g = stats_grid(n)
        for c in range(n // 2 + 1):
            for p in range(n + 1):
                if c == 0 or (n - p) % 2 or n - p < 2 * c:
                    assert g.s1[c][p] == 0
                # p = 0 is not a zero case: the meandric identity needs S2 at p = 0
                if c <= 1 or (n - p) % 2 or n - p < 2 * c or p in (n, n - 2):
                    assert g.s2[c][p] == 0
    g = stats_grid(4)
    assert g.s2[2][0] == 2


def test_transpose_invariance():
    # transposing swaps the semi-words, and so u with l
    for n in range(1, 9):
        s1 = s2 = 0
        for left, right in fibre_words("jones", n):
            a, b = cycle_stats(left, right), cycle_stats(right, left)
            assert a[:2] == b[:2]
            s1 += a[2] - b[2]
            s2 += a[3] - b[3]
        assert s1 == 0 and s2 == 0


def test_meandric():
    m = meandric(10)
    assert m[0] == 1
    assert m == [1, 2, 2, 8, 8, 42, 42, 262, 262]
    g4 = stats_grid(4)
    assert stats_grid(5).meandric_odd == g4.at(g4.s1, 1, 0) + g4.at(g4.s2, 2, 0)


def test_identities_pass():
    checks = verify_identities(10)
    assert all(c.ok for c in checks), [c for c in checks if not c.ok]


def test_literal_range_differences():
    # the differences read at the first n of the stated range reach back
    # outside it and do not hold there
    checks = {c.name: c for c in verify_identities(10, literal_range=True)}
    assert not checks["depth differences"].ok
    assert "k=2 n=5" in checks["depth differences"].detail


def test_backward_difference():
    seq = {n: n * n for n in range(10)}
    assert backward_difference(seq, 5, 2) == 2
    assert backward_difference(seq, 1, 2) is None


def test_d_star():
    rows = {n: (d, r, f) for n, d, r, f in d_star_report(12)}
    assert rows[3][:2] == (4, 1) and round(rows[3][2], 3) == 0.8
    assert rows[4][:2] == (7, 2)
    assert round(rows[12][2], 3) == 0.575


def test_motzkin_diagonals_reported():
    out = motzkin_diagonals(8)
    assert all(v == 1 for d, n, v in out if d <= 3)
