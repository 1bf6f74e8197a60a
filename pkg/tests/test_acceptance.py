"""Acceptance criteria, one test each.

Every test prints a single ``ACCEPTANCE <n> PASS|FAIL ...`` line, also when
pytest captures output. Run directly with ``python tests/test_acceptance.py``
for the same lines without pytest.
"""

import contextlib
import io
import json
import time

import pytest

from nchull import checks
from nchull.cli import main

_reporter = {"capsys": None}


def _uncaptured():
    cap = _reporter["capsys"]
    return cap.disabled() if cap is not None else contextlib.nullcontext()


def emit(line):
    with _uncaptured():
        print(line)


def report(num, ok, text):
    emit(f"\nACCEPTANCE {num} {'PASS' if ok else 'FAIL'} {text.rstrip()}")
    return ok


@pytest.fixture(autouse=True)
def _line_output(capsys):
    _reporter["capsys"] = capsys
    yield
    _reporter["capsys"] = None


def test_1_triangle_with_midpoints():
    t0 = time.perf_counter()
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["stats", "--shape", "[1;1;1]"])
    out = buf.getvalue()
    elapsed = time.perf_counter() - t0
    ok = (
        code == 0
        and "ranks: 1,12,34,35,12,1" in out
        and "elements: 95" in out
        and "graded: true" in out
        and "rank_symmetric: false" in out
        and elapsed < 5
    )
    assert report(1, ok, f"[1;1;1] ranks 1,12,34,35,12,1, 95 elements, graded, not rank-symmetric ({elapsed:.2f}s)")


def test_2_segments_are_boolean():
    res = checks.check_segments(10)
    assert report(2, res.ok, f"segment:2..10 isomorphic to Bool(n-1) ({res.cases} shapes) {res.counterexample or ''}")


def test_3_catalan():
    res = checks.check_catalan(9)
    sizes = [res.data[n] for n in range(3, 10)]
    ok = res.ok and sizes == [5, 14, 42, 132, 429, 1430, 4862] and res.elapsed < 60
    assert report(3, ok, f"all-blank n=3..9 sizes {sizes} ({res.elapsed:.1f}s)")


def test_4_symmetric_chains():
    res = checks.check_scd(8, 10)
    ok = res.ok and res.elapsed < 600
    assert report(4, ok, f"scd verified on {res.cases} shapes with a blank side n<=8 and segments n<=10 ({res.elapsed:.1f}s) {res.counterexample or ''}")


def test_5_boolean_bijection_and_union():
    res = checks.check_boolean(7)
    assert report(5, res.ok, f"atom sets <-> cg trees and Bool(tree) union, {res.cases} shapes n<=7 ({res.elapsed:.1f}s) {res.counterexample or ''}")


def test_6_fuss_catalan():
    res = checks.check_fuss_catalan(6)
    counts = [res.data[n] for n in range(3, 7)]
    ok = res.ok and counts == [3, 12, 55, 273]
    assert report(6, ok, f"cg trees on all-blank n=3..6: {counts}")


def test_7_hull_poset():
    res = checks.check_hullposet(7, interval_n=6)
    assert report(7, res.ok, f"H(n) rank counts, extremes n<=7, Boolean intervals n<=6, {res.cases} cases ({res.elapsed:.1f}s) {res.counterexample or ''}")


def test_8_oracle_equivalence():
    parts = [
        checks.check_oracle_partitions(7),
        checks.check_oracle_trees(7),
        checks.check_subforests(7),
        checks.check_rank_convexity(6),
    ]
    ok = all(r.ok for r in parts)
    detail = ", ".join(f"{r.name}: {r.cases}" for r in parts)
    bad = next((r.counterexample for r in parts if not r.ok), "")
    assert report(8, ok, f"{detail} {bad}")


def test_9_no_blank_scan():
    res = checks.scan_no_blank(8)
    tri = res.data.get("[1;1;1]", {})
    ok = res.ok and tri.get("rank_symmetric") is False
    asym = sorted(k for k, v in res.data.items() if not v["rank_symmetric"])
    report(9, ok, f"{res.cases} no-blank shapes n<=8; not rank-symmetric: {', '.join(asym)}")
    for shape, row in res.data.items():
        emit(f"  scan {shape}: ranks {','.join(map(str, row['ranks']))} symmetric={str(row['rank_symmetric']).lower()}")
    assert ok


def test_leaf_criterion_scan_data():
    """Not an acceptance criterion; reports shapes where the two tree criteria differ."""
    res = checks.scan_leaf_criterion(6)
    emit(f"\n  leaf-corner criterion vs convex geodesics: {res.cases} noncrossing trees, differing shapes {json.dumps(res.data, sort_keys=True)}")
    assert res.cases > 0



if __name__ == "__main__":
    import sys

    failed = 0
    for name, fn in list(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
