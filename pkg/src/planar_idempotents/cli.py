"""Command line: idempotent tables, verification suites and eggbox bitmaps.

Exit status is 0 on success, 1 when a verification fails, 2 for usage
errors and 3 when a resource guard refuses the request.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from math import comb

from . import engine, oracle, stats
from .diagram import diagram_of_pair, pair_of
from .engine import CountReport, ResourceLimitError
from .interface import is_idempotent, pair_is_idempotent
from .seeds import JONES, MOTZKIN, monoid_alphabet, profile, semiword_list

SCHEMA = 1
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3

MONOIDS = ("motzkin", "jones", "kauffman", "pjones", "planar-partition")
SUITES = ("tables", "oracle", "recurrences", "structure", "kauffman", "pjones", "parallel", "all")

# known values used by the tables suite
TABLE_MOTZKIN = {
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
# Jones by depth d = 0, 1, 2, ...
TABLE_JONES = {
    1: [1],
    2: [1, 1],
    3: [1, 4],
    4: [1, 7, 4],
    5: [1, 10, 25],
    6: [1, 13, 57, 25],
    7: [1, 16, 98, 196],
    8: [1, 19, 148, 522, 196],
    9: [1, 22, 207, 1006, 1764],
    10: [1, 25, 275, 1673, 5206, 1764],
    11: [1, 28, 352, 2550, 10837, 17424],
    12: [1, 31, 438, 3664, 19261, 55319, 17424],
}
JONES_TOTALS = {
    10: 8944,
    11: 31192,
    12: 96138,
    13: 342562,
    14: 1083028,
    15: 3923351,
    16: 12656024,
    20: 1878551444,
    24: 302879546290,
}
KAUFFMAN = {1: 1, 2: 1, 3: 3, 4: 5, 5: 15, 6: 31}
PJ_BOUNDS = {1: 2, 2: 7, 3: 21, 4: 98}
PJ_TRUTH = {1: 2, 2: 7, 3: 24, 4: 103, 5: 416, 6: 1998}
PJ_BRUTE_DEFAULT_MAX = 6


def motzkin_number(m: int) -> int:
    return sum(comb(m, 2 * k) * comb(2 * k, k) // (k + 1) for k in range(m // 2 + 1))


def monoid_size(monoid: str, n: int) -> int:
    return motzkin_number(2 * n) if monoid == MOTZKIN else stats.catalan(n)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- count


def _count_one(monoid, n, method, threads, force):
    if method == "brute":
        return oracle.brute_count(monoid, n, force)
    return engine.partitioned_count(monoid, n, threads, force=force)


def _report_dict(rep: CountReport, command: str, monoid: str | None = None) -> dict:
    d = {
        "schema": SCHEMA,
        "command": command,
        "monoid": monoid or rep.monoid,
        "n": rep.n,
        "method": rep.method,
        "total": str(rep.total),
        "by_rank": [str(v) for v in rep.by_rank],
        "work_items": str(rep.work_items),
    }
    if rep.n >= 1:
        d["fraction"] = f"{rep.total / monoid_size(rep.monoid, rep.n):.3f}"
    if rep.monoid == JONES:
        d["by_depth"] = [str(v) for v in rep.by_depth()]
    return d


def run_count(args) -> tuple[list[dict], str]:
    ns = _n_values(args)
    command = args.echo or "count"
    rows = []
    if args.monoid in (MOTZKIN, JONES):
        for n in ns:
            rows.append(_report_dict(_count_one(args.monoid, n, args.method, args.threads, args.force), command))
        return rows, "count"
    if args.monoid == "kauffman":
        for n in ns:
            if args.method == "brute":
                k = 1 if n == 0 else oracle.brute_kauffman(n, args.force)
            else:
                k = engine.count_kauffman(n, args.threads, args.force).kauffman_total if n else 1
            rows.append(_scalar(command, "kauffman", n, args.method, k, xi_zero=str(k + 1)))
        return rows, "scalar"
    if args.monoid == "pjones":
        for n in ns:
            bound = engine.pj_lower_bound(n)
            extra = {"lower_bound": str(bound)}
            if args.method == "brute" or n <= PJ_BRUTE_DEFAULT_MAX or args.force:
                truth = oracle.brute_pj_count(n, args.force)
                extra["brute_count"] = str(truth)
                total = truth
                method = "brute"
            else:
                total = bound
                method = "fibre-lower-bound"
            rows.append(_scalar(command, "pjones", n, method, total, **extra))
        return rows, "scalar"
    if args.monoid == "planar-partition":
        for n in ns:
            if args.method == "brute":
                v = oracle.brute_count(JONES, 2 * n, args.force).total
            else:
                v = engine.count_planar_partition(n, args.threads, args.force) if n else 1
            rows.append(_scalar(command, "planar-partition", n, args.method, v))
        return rows, "scalar"
    raise UsageError(f"unknown monoid {args.monoid}")


def _scalar(command, monoid, n, method, total, **extra):
    d = {"schema": SCHEMA, "command": command, "monoid": monoid, "n": n, "method": method, "total": str(total)}
    d.update(extra)
    return d


def _n_values(args) -> list[int]:
    if args.n is not None and args.n_max is not None:
        raise UsageError("give --n or --n-max, not both")
    if args.n is not None:
        if args.n < 0:
            raise UsageError("--n must be non-negative")
        return [args.n]
    if args.n_max is not None:
        lo = 0 if args.monoid == MOTZKIN else 1
        return list(range(lo, args.n_max + 1))
    raise UsageError("one of --n or --n-max is required")


def _grid_rows(rows, kind, args):
    """Table layout: one column per n, one row per rank or depth."""
    header = ["", *[str(r["n"]) for r in rows]]
    body = []
    if kind == "count":
        if args.by_depth and rows[0]["monoid"] == JONES:
            depth = max(len(r["by_depth"]) for r in rows)
            for d in range(depth):
                body.append([f"d={d}", *[_get(r["by_depth"], d) for r in rows]])
        elif args.by_rank or args.by_depth:
            top = max(len(r["by_rank"]) for r in rows)
            jones = rows[0]["monoid"] == JONES
            for k in range(top):
                # blank where no element of that rank can exist
                cells = ["" if jones and (r["n"] - k) % 2 else _get(r["by_rank"], k) for r in rows]
                body.append([f"r={k}", *cells])
        body.append(["total", *[r["total"] for r in rows]])
        body.append(["fraction", *[r.get("fraction", "") for r in rows]])
    else:
        keys = [k for k in rows[0] if k not in ("schema", "command", "monoid", "n")]
        for k in keys:
            body.append([k, *[str(r.get(k, "")) for r in rows]])
    return header, body


def _get(xs, i):
    return xs[i] if i < len(xs) else ""


def render(rows, kind, args) -> str:
    if args.format == "json":
        if len(rows) == 1:
            return json.dumps(rows[0], indent=2)
        return json.dumps(
            {"schema": SCHEMA, "command": rows[0]["command"], "monoid": rows[0]["monoid"], "reports": rows},
            indent=2,
        )
    header, body = _grid_rows(rows, kind, args)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        w.writerows(body)
        return buf.getvalue().rstrip("\n")
    widths = [max(len(row[i]) for row in [header, *body]) for i in range(len(header))]
    lines = [f"{rows[0]['monoid']} ({rows[0]['method']})"]
    for row in [header, *body]:
        lines.append("  ".join(c.rjust(w) for c, w in zip(row, widths)))
    return "\n".join(lines)


# ---------------------------------------------------------------- verify


def _suite_tables(n_max, monoid, threads):
    out = []
    if monoid in (None, MOTZKIN):
        for n in range(0, min(n_max, 8) + 1):
            got = engine.partitioned_count(MOTZKIN, n, threads).by_rank
            out.append((f"motzkin n={n} by rank", got == TABLE_MOTZKIN[n], f"{got}"))
    if monoid in (None, JONES):
        for n in range(1, min(n_max, 12) + 1):
            got = engine.partitioned_count(JONES, n, threads).by_depth()
            out.append((f"jones n={n} by depth", got == TABLE_JONES[n], f"{got}"))
        for n, want in JONES_TOTALS.items():
            if 13 <= n <= n_max:
                got = engine.partitioned_count(JONES, n, threads, force=True).total
                out.append((f"jones n={n} total", got == want, f"{got}"))
    return out


def _suite_oracle(n_max, monoid, threads):
    out = []
    for m in (MOTZKIN, JONES) if monoid is None else (monoid,):
        for n in range(1, n_max + 1):
            if n > oracle.MAX_BRUTE[m]:
                break
            fib = engine.partitioned_count(m, n, threads)
            brute = oracle.brute_count(m, n)
            ok = fib.by_rank == brute.by_rank and fib.kauffman_total == brute.kauffman_total
            out.append((f"{m} n={n} fibre = brute", ok, f"{fib.by_rank} vs {brute.by_rank}"))
            if (m == MOTZKIN and n <= 7) or (m == JONES and n <= 10):
                bad = _fibre_partition_errors(m, n)
                out.append((f"{m} n={n} fibre blocks", not bad, "; ".join(bad[:3])))
    return out


def _fibre_partition_errors(monoid, n):
    blocks = oracle.brute_fibre_partition(monoid, n)
    bad = []
    seeds = 0
    for (left, right), members in blocks.items():
        seed = diagram_of_pair(left, right)
        p = profile(seed)
        seeds += 1
        if len(members) != p.fibre_size:
            bad.append(f"seed {left}/{right}: block {len(members)} != {p.fibre_size}")
    n_seeds = engine.partitioned_count(monoid, n).work_items
    if seeds != n_seeds:
        bad.append(f"{seeds} blocks but {n_seeds} seeds")
    return bad


def _suite_recurrences(n_max, monoid, threads):
    return [(c.name, c.ok, c.detail) for c in stats.verify_identities(n_max)]


def _suite_structure(n_max, monoid, threads):
    out = []
    for m in (MOTZKIN, JONES) if monoid is None else (monoid,):
        for n in range(1, min(n_max, 5 if m == MOTZKIN else 8) + 1):
            bad = 0
            size = 0
            for d in oracle.enumerate_monoid(m, n):
                size += 1
                left, right, _ = pair_of(d)
                if diagram_of_pair(left, right) != d:
                    bad += 1
                if is_idempotent(d) != oracle.is_idempotent_by_product(d):
                    bad += 1
            out.append((f"{m} n={n} structure", bad == 0 and size == monoid_size(m, n), f"{bad} bad of {size}"))
    return out


def _suite_kauffman(n_max, monoid, threads):
    out = []
    for n in range(1, n_max + 1):
        got = engine.count_kauffman(n, threads).kauffman_total
        want = KAUFFMAN.get(n)
        if want is not None:
            out.append((f"kauffman n={n} table", got == want, str(got)))
        if n <= 8:
            brute = oracle.brute_kauffman(n)
            out.append((f"kauffman n={n} fibre = brute", got == brute, f"{got} vs {brute}"))
    return out


def _suite_pjones(n_max, monoid, threads):
    out = []
    for n in range(1, min(n_max, 6) + 1):
        if n in PJ_BOUNDS:
            got = engine.pj_lower_bound(n)
            out.append((f"pjones n={n} bound", got == PJ_BOUNDS[n], str(got)))
        got = oracle.brute_pj_count(n)
        out.append((f"pjones n={n} brute", got == PJ_TRUTH[n], str(got)))
    return out


def _suite_parallel(n_max, monoid, threads):
    out = []
    for m, n in ((JONES, min(n_max, 12)), (MOTZKIN, min(n_max, 8))):
        if monoid not in (None, m):
            continue
        base = engine.partitioned_count(m, n, 1)
        for k in (2, 4, 8):
            r = engine.partitioned_count(m, n, k)
            ok = (r.by_rank, r.kauffman_total, r.work_items) == (base.by_rank, base.kauffman_total, base.work_items)
            out.append((f"{m} n={n} workers={k}", ok, str(r.total)))
    return out


SUITE_FUNCS = {
    "tables": _suite_tables,
    "oracle": _suite_oracle,
    "recurrences": _suite_recurrences,
    "structure": _suite_structure,
    "kauffman": _suite_kauffman,
    "pjones": _suite_pjones,
    "parallel": _suite_parallel,
}


def run_verify(args) -> tuple[dict, bool]:
    n_max = args.n_max if args.n_max is not None else 8
    monoid = args.monoid if args.monoid in (MOTZKIN, JONES) else None
    if args.monoid not in (None, MOTZKIN, JONES):
        raise UsageError("verify takes --monoid motzkin or jones")
    if not args.force:
        for m in (MOTZKIN, JONES) if monoid is None else (monoid,):
            if args.suite in ("oracle", "all") and n_max > oracle.MAX_BRUTE[m]:
                oracle.guard(m, n_max)
    suites = SUITE_FUNCS if args.suite == "all" else {args.suite: SUITE_FUNCS[args.suite]}
    results = []
    for name, fn in suites.items():
        for label, ok, detail in fn(n_max, monoid, args.threads):
            results.append({"suite": name, "check": label, "ok": ok, "detail": detail})
    passed = all(r["ok"] for r in results)
    notes = []
    if args.suite in ("recurrences", "all"):
        for d, n, v in stats.motzkin_diagonals(min(n_max, 8)):
            notes.append(f"motzkin diagonal d={d} n={n}: difference {v}")
    report = {
        "schema": SCHEMA,
        "command": "verify",
        "suite": args.suite,
        "n_max": n_max,
        "verdict": "PASS" if passed else "FAIL",
        "results": results,
        "observations": notes,
    }
    return report, passed


def render_verify(report, fmt) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    lines = []
    for r in report["results"]:
        mark = "PASS" if r["ok"] else "FAIL"
        line = f"{mark}  {r['suite']:<12} {r['check']}"
        if not r["ok"]:
            line += f"  [{r['detail']}]"
        lines.append(line)
    for note in report["observations"]:
        lines.append(f"info  {note}")
    lines.append(report["verdict"])
    return "\n".join(lines)


# ---------------------------------------------------------------- eggbox

# The rank-1 class of M_4 as ordered in the published figure, as left
# semi-words; the figure's three example cells are (row, column) pairs.
FIGURE_ORDER = ["FFFU", "UDFU", "UFDU", "FUDU", "FFUF", "UDUF", "FUFF", "FUUD", "UFFF", "UUDF", "UUFD", "UFUD"]
FIGURE_CELLS = [(2, 10), (6, 10), (11, 10)]


def eggbox(monoid: str, n: int, k: int) -> tuple[list[str], list[list[int]]]:
    if monoid not in (MOTZKIN, JONES):
        raise UsageError("eggbox takes --monoid motzkin or jones")
    if not 0 <= k <= n or (monoid == JONES and (n - k) % 2):
        raise UsageError(f"no rank-{k} class in {monoid} of degree {n}")
    words = list(semiword_list(n, k, monoid_alphabet(monoid)))
    grid = [[int(pair_is_idempotent(left, right)) for right in words] for left in words]
    return words, grid


def pbm(grid) -> str:
    h = len(grid)
    w = len(grid[0]) if grid else 0
    rows = [" ".join(str(b) for b in row) for row in grid]
    return "\n".join(["P1", f"{w} {h}", *rows]) + "\n"


def figure_mapping(words) -> list[dict]:
    """Where the figure's example cells land in this grid.

    The figure's columns carry the upper graph (left semi-word) and its
    rows the lower graph (right semi-word).
    """
    out = []
    for row, col in FIGURE_CELLS:
        left, right = FIGURE_ORDER[col - 1], FIGURE_ORDER[row - 1]
        out.append(
            {
                "figure_cell": [row, col],
                "left": left,
                "right": right,
                "grid_cell": [words.index(left) + 1, words.index(right) + 1],
                "idempotent": pair_is_idempotent(left, right),
            }
        )
    return out


def run_eggbox(args) -> tuple[dict, str]:
    if args.n is None or args.rank is None:
        raise UsageError("eggbox needs --n and --rank")
    words, grid = eggbox(args.monoid, args.n, args.rank)
    report = {
        "schema": SCHEMA,
        "command": "eggbox",
        "monoid": args.monoid,
        "n": args.n,
        "rank": args.rank,
        "size": len(words),
        "set_pixels": str(sum(map(sum, grid))),
        "order": words,
    }
    if args.monoid == MOTZKIN and args.n == 4 and args.rank == 1:
        report["figure_cells"] = figure_mapping(words)
        report["figure_note"] = (
            "rows are left semi-words and columns right semi-words, both in U<F<D order; "
            "the published figure lists the classes in a different order with upper graphs "
            "on columns, so its cells map as shown; cell (2,10) is not idempotent there either"
        )
    return report, pbm(grid)


# ---------------------------------------------------------------- stats


def run_stats(args) -> dict:
    if args.n is None:
        raise UsageError("stats needs --n")
    g = stats.stats_grid(args.n)
    return {
        "schema": SCHEMA,
        "command": "stats",
        "monoid": JONES,
        "n": args.n,
        "e": [[str(v) for v in row] for row in g.e],
        "s1": [[str(v) for v in row] for row in g.s1],
        "s2": [[str(v) for v in row] for row in g.s2],
        "d_star": [[str(a), str(b), str(r), f"{f:.3f}"] for a, b, r, f in stats.d_star_report(max(args.n, 1))],
    }


def render_stats(report, fmt) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    lines = [f"jones n={report['n']}: rows c = cycles, columns p = paths"]
    for name in ("e", "s1", "s2"):
        lines.append(name)
        for c, row in enumerate(report[name]):
            lines.append(f"  c={c}  " + " ".join(v.rjust(6) for v in row))
    lines.append("n  d*  rank  fraction")
    for row in report["d_star"]:
        lines.append("  ".join(row))
    return "\n".join(lines)


# ---------------------------------------------------------------- main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planar-idempotents", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="cmd", required=True)

    def common(sp, monoid_choices, default_monoid=None):
        sp.add_argument("--monoid", choices=monoid_choices, default=default_monoid, required=default_monoid is None)
        sp.add_argument("--n", type=int)
        sp.add_argument("--n-max", type=int)
        sp.add_argument("--threads", type=int, default=1)
        sp.add_argument("--format", choices=("table", "json", "csv"), default="table")
        sp.add_argument("--out")
        sp.add_argument("--force", action="store_true", help="override resource guards")

    c = sub.add_parser("count", help="idempotent counts")
    common(c, MONOIDS)
    c.add_argument("--method", choices=("fibre", "brute"), default="fibre")
    c.add_argument("--by-rank", action="store_true")
    c.add_argument("--by-depth", action="store_true")
    c.set_defaults(echo=None)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--monoid", choices=(MOTZKIN, JONES))
    v.add_argument("--n-max", type=int)
    v.add_argument("--threads", type=int, default=1)
    v.add_argument("--format", choices=("table", "json"), default="table")
    v.add_argument("--out")
    v.add_argument("--force", action="store_true")

    e = sub.add_parser("eggbox", help="write a PBM of one D-class")
    e.add_argument("--monoid", choices=(MOTZKIN, JONES), required=True)
    e.add_argument("--n", type=int, required=True)
    e.add_argument("--rank", type=int, required=True)
    e.add_argument("--out", help="PBM path; the bitmap goes to stdout if omitted")
    e.add_argument("--format", choices=("table", "json"), default="table")

    s = sub.add_parser("stats", help="cycle/path grids for the Jones monoid")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--format", choices=("table", "json"), default="table")
    s.add_argument("--out")
    return p


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    try:
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be at least 1")
        if args.cmd == "count":
            args.echo = " ".join(argv if argv is not None else sys.argv[1:])
            rows, kind = run_count(args)
            _emit(render(rows, kind, args), args.out)
            return EXIT_OK
        if args.cmd == "verify":
            report, passed = run_verify(args)
            _emit(render_verify(report, args.format), args.out)
            return EXIT_OK if passed else EXIT_FAIL
        if args.cmd == "eggbox":
            report, bitmap = run_eggbox(args)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(bitmap)
                if args.format == "json":
                    print(json.dumps(report, indent=2))
                else:
                    print(f"{report['monoid']} n={report['n']} rank {report['rank']}: "
                          f"{report['size']}x{report['size']}, {report['set_pixels']} set pixels -> {args.out}")
                    for cell in report.get("figure_cells", []):
                        print(f"  figure {tuple(cell['figure_cell'])} = {cell['left']}/{cell['right']} "
                              f"-> grid {tuple(cell['grid_cell'])}, idempotent: {cell['idempotent']}")
                    if "figure_note" in report:
                        print(f"  note: {report['figure_note']}")
            else:
                sys.stdout.write(bitmap)
            return EXIT_OK
        if args.cmd == "stats":
            _emit(render_stats(run_stats(args), args.format), args.out)
            return EXIT_OK
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except engine.WorkerError as exc:
        print(f"run error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_USAGE
