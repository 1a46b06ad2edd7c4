"""The eleven acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL`` line (visible with
``pytest -v``) before asserting, so a run shows the whole scoreboard.
Expected values are transcribed from the published tables.
"""

import json
import os
from math import comb

import pytest

from planar_idempotents import cli, engine, oracle, stats
from planar_idempotents.diagram import diagram_of, diagram_of_pair, pair_of, rank, word_of
from planar_idempotents.interface import is_idempotent
from planar_idempotents.seeds import profile

MOTZKIN_TABLE = {
    0: [1],
    1: [1, 1],
    2: [4, 2, 1],
    3: [16, 11, 3, 1],
    4: [81, 48, 19, 4, 1],
    5: [441, 266, 93, 28, 5, 1],
    6: [2601, 1492, 549, 152, 38, 6, 1],
    7: [16129, 9042, 3211, 947, 226, 49, 7, 1],
    8: [104329, 56712, 20004, 5784, 1480, 316, 61, 8, 1],
}
MOTZKIN_TOTALS = [1, 2, 7, 31, 153, 834, 4839, 29612, 188695]

# rank r -> count, for n = 1..9
JONES_TABLE = {
    1: {1: 1},
    2: {0: 1, 2: 1},
    3: {1: 4, 3: 1},
    4: {0: 4, 2: 7, 4: 1},
    5: {1: 25, 3: 10, 5: 1},
    6: {0: 25, 2: 57, 4: 13, 6: 1},
    7: {1: 196, 3: 98, 5: 16, 7: 1},
    8: {0: 196, 2: 522, 4: 148, 6: 19, 8: 1},
    9: {1: 1764, 3: 1006, 5: 207, 7: 22, 9: 1},
}
JONES_TOTALS = {10: 8944, 11: 31192, 12: 96138, 13: 342562, 14: 1083028, 15: 3923351, 16: 12656024}
KAUFFMAN = [1, 1, 3, 5, 15, 31]
PJ_BOUNDS = [2, 7, 21, 98]
PJ_TRUTHS = [2, 7, 24, 103, 416, 1998]


def report(capsys, number, ok, detail=""):
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


def cli_json(args):
    import contextlib
    import io

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(args + ["--format", "json"])
    assert code == 0
    data = json.loads(buf.getvalue())
    return data.get("reports", [data])


def test_criterion_01_motzkin_table(capsys):
    rows = cli_json(["count", "--monoid", "motzkin", "--n-max", "8", "--by-rank"])
    got = {r["n"]: [int(v) for v in r["by_rank"]] for r in rows}
    totals = [int(r["total"]) for r in rows]
    ok = got == MOTZKIN_TABLE and totals == MOTZKIN_TOTALS
    assert report(capsys, 1, ok, f"Motzkin n=0..8 totals {totals}")


def test_criterion_02_jones_table(capsys):
    rows = cli_json(["count", "--monoid", "jones", "--n-max", "9", "--by-rank"])
    got = {r["n"]: {k: int(v) for k, v in enumerate(r["by_rank"]) if int(v)} for r in rows}
    ok = got == JONES_TABLE and rows[-1]["total"] == "3000"
    assert report(capsys, 2, ok, f"Jones n=1..9, e_9 = {rows[-1]['total']}")


def test_criterion_03_jones_totals(capsys):
    got = {n: engine.count_idempotents("jones", n).total for n in JONES_TOTALS}
    ok = got == JONES_TOTALS
    detail = f"Jones n=10..16 single-threaded: {list(got.values())}"
    if os.environ.get("ACCEPTANCE_SLOW"):
        t20 = engine.partitioned_count("jones", 20, workers=os.cpu_count() or 1).total
        ok = ok and t20 == 1878551444
        detail += f"; n=20 {t20}"
    assert report(capsys, 3, ok, detail)


def test_criterion_04_kauffman(capsys):
    fibre = [engine.count_kauffman(n).kauffman_total for n in range(1, 9)]
    brute = [oracle.brute_kauffman(n) for n in range(1, 9)]
    xi0 = [engine.xi_zero_count(n) for n in range(1, 7)]
    ok = fibre[:6] == KAUFFMAN and fibre == brute and xi0 == [k + 1 for k in KAUFFMAN]
    assert report(capsys, 4, ok, f"e^xi n=1..8 {fibre}, brute agrees: {fibre == brute}")


def _blocks_ok(monoid, n):
    blocks = oracle.brute_fibre_partition(monoid, n)
    sizes_ok = all(len(m) == profile(diagram_of_pair(l, r)).fibre_size for (l, r), m in blocks.items())
    no_high_rank = all(rank(diagram_of_pair(l, r)) <= 1 for l, r in blocks)
    return sizes_ok and no_high_rank, len(blocks)


def test_criterion_05_oracle_equivalence(capsys):
    bad = []
    for monoid, n_max in (("motzkin", 8), ("jones", 12)):
        for n in range(1, n_max + 1):
            if engine.count_idempotents(monoid, n).by_rank != oracle.brute_count(monoid, n).by_rank:
                bad.append(f"{monoid} {n}")
    for monoid, n_max in (("motzkin", 7), ("jones", 10)):
        for n in range(1, n_max + 1):
            ok, count = _blocks_ok(monoid, n)
            if not ok:
                bad.append(f"{monoid} {n} blocks")
    _, m7 = _blocks_ok("motzkin", 7)
    ok = not bad and m7 == 25171
    assert report(capsys, 5, ok, f"M_7 fibres {m7}; failures {bad}")


def test_criterion_06_partial_jones(capsys):
    bounds = [engine.pj_lower_bound(n) for n in range(1, 5)]
    truths = [oracle.brute_pj_count(n) for n in range(1, 7)]
    ok = bounds == PJ_BOUNDS and truths == PJ_TRUTHS
    detail = f"bounds {bounds} (published {PJ_BOUNDS}), truths {truths}"
    assert report(capsys, 6, ok, detail)


def _depth_differences(gs, stencil):
    bad = []
    for k in range(1, 4):
        z = {g.n: g.column(g.e, g.n - 2 * k) for g in gs}
        s1 = {g.n: g.column(g.s1, g.n - 2 * k) for g in gs}
        s2 = {g.n: g.column(g.s2, g.n - 2 * k) for g in gs}
        for n in range(3 * k - 1, 13):
            if stencil and not stats.depth_difference_in_range(n, k):
                continue
            checks = (
                (stats.backward_difference(z, n, k), 3**k, "e"),
                (stats.backward_difference(s1, n, k - 1), 2 * 3 ** (k - 1), "S1"),
                (stats.backward_difference(s2, n, k - 1), 0, "S2"),
            )
            for got, want, name in checks:
                if got is not None and got != want:
                    bad.append(f"k={k} n={n} {name}: {got}!={want}")
    return bad


def test_criterion_07_cycle_path_identities(capsys):
    gs = stats.grids(12)
    names = {c.name: c.ok for c in stats.verify_identities(10)}
    closed = []
    for n in range(5, 13):
        g = gs[n]
        if g.column(g.e, n - 2) != 3 * n - 5 or 2 * g.column(g.e, n - 4) != n * (9 * n - 35):
            closed.append(n)
        if (g.at(g.s1, 1, n - 2), g.at(g.s1, 1, n - 4), g.at(g.s1, 2, n - 4), g.at(g.s2, 2, n - 4)) != (
            2,
            4 * n - 8,
            2 * n - 2,
            2,
        ):
            closed.append(n)
    for k in range(1, 7):
        c2 = comb(2 * k, k) // (k + 1)
        if gs[2 * k].column(gs[2 * k].e, 0) != c2 * c2 or gs[2 * k - 1].column(gs[2 * k - 1].e, 1) != c2 * c2:
            closed.append(f"cor k={k}")
    literal = _depth_differences(gs, stencil=False)
    whole_stencil = _depth_differences(gs, stencil=True)
    base_ok = names["recurrence"] and names["meandric"] and not closed
    ok = base_ok and not literal
    detail = (
        f"recurrence {names['recurrence']}, meandric {names['meandric']}, closed forms {not closed}; "
        f"differences over n>=3k-1: {len(literal)} failures {literal[:4]}; "
        f"with the whole stencil in range: {len(whole_stencil)} failures"
    )
    assert base_ok and not whole_stencil
    assert report(capsys, 7, ok, detail)


def test_criterion_08_structure(capsys):
    bad = []
    for monoid, n_max in (("motzkin", 5), ("jones", 8)):
        for n in range(1, n_max + 1):
            for d in oracle.enumerate_monoid(monoid, n):
                if is_idempotent(d) != oracle.is_idempotent_by_product(d):
                    bad.append(word_of(d))
    for n in range(1, 6):
        for d in oracle.enumerate_monoid("motzkin", n):
            left, right, k = pair_of(d)
            if diagram_of_pair(left, right, k) != d or diagram_of(word_of(d)) != d:
                bad.append(word_of(d))

    def ballot(n, k, flat):
        # paths of length n from height 0 to height k staying >= 0
        row = {0: 1}
        for _ in range(n):
            nxt = {}
            for h, c in row.items():
                for step in (1, 0, -1) if flat else (1, -1):
                    if h + step >= 0:
                        nxt[h + step] = nxt.get(h + step, 0) + c
            row = nxt
        return row.get(k, 0)

    sizes = []
    for n in range(1, 9):
        for monoid, flat in (("motzkin", True), ("jones", False)):
            per_rank = {}
            for d in oracle.enumerate_monoid(monoid, n):
                per_rank[rank(d)] = per_rank.get(rank(d), 0) + 1
            want = {k: ballot(n, k, flat) ** 2 for k in range(n + 1) if ballot(n, k, flat)}
            if per_rank != want or sum(per_rank.values()) != cli.monoid_size(monoid, n):
                sizes.append((monoid, n))
    ok = not bad and not sizes
    assert report(capsys, 8, ok, f"mismatches {len(bad)}, size errors {sizes}")


def test_criterion_09_work_ratio(capsys):
    fib = engine.count_idempotents("jones", 12)
    brute = oracle.brute_count("jones", 12)
    ok = (fib.work_items, brute.work_items) == (17424, 208012)
    for n in range(1, 8):
        f, b = engine.count_idempotents("motzkin", n), oracle.brute_count("motzkin", n)
        ok = ok and f.work_items == b.by_rank[0] + b.by_rank[1] and b.work_items == cli.monoid_size("motzkin", n)
    assert report(capsys, 9, ok, f"Jones n=12 ratio {fib.work_items}/{brute.work_items}")


def test_criterion_10_parallel_determinism(capsys):
    results = {}
    for monoid, n in (("jones", 12), ("motzkin", 8)):
        runs = []
        for k in (1, 2, 4, 8):
            r = engine.partitioned_count(monoid, n, k)
            runs.append((r.total, tuple(r.by_rank), r.kauffman_total, r.work_items))
        results[(monoid, n)] = len(set(runs)) == 1
    ok = all(results.values())
    assert report(capsys, 10, ok, f"{results}")


def test_criterion_11_eggbox(tmp_path, capsys):
    words, grid = cli.eggbox("motzkin", 4, 1)
    m41 = cli.pbm(grid)
    _, jgrid = cli.eggbox("jones", 4, 2)
    j42 = cli.pbm(jgrid)

    def parse(text):
        lines = text.split("\n")
        w, h = map(int, lines[1].split())
        bits = [int(b) for line in lines[2:] for b in line.split()]
        return lines[0], w, h, sum(bits)

    cells = cli.figure_mapping(words)
    mapped = [c["grid_cell"] for c in cells]
    ok = parse(m41) == ("P1", 12, 12, 48) and parse(j42) == ("P1", 3, 3, 7)
    # the report documents where the figure's cells land and their status
    ok = ok and len(cells) == 3 and all(grid[r - 1][c - 1] == int(x["idempotent"]) for (r, c), x in zip(mapped, cells))
    detail = "; ".join(f"{tuple(c['figure_cell'])}->{tuple(c['grid_cell'])} idempotent={c['idempotent']}" for c in cells)
    assert report(capsys, 11, ok, detail)


@pytest.mark.skipif(not os.environ.get("ACCEPTANCE_SLOW"), reason="set ACCEPTANCE_SLOW=1 for n=24")
def test_stretch_jones_24():
    assert engine.partitioned_count("jones", 24, workers=os.cpu_count() or 1, force=True).total == 302879546290
