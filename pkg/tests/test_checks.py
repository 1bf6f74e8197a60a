import pytest

from nchull import checks
from nchull.configuration import parse_shape


@pytest.mark.parametrize("name,thunk", checks.default_suite(4), ids=lambda v: v if isinstance(v, str) else "")
def test_suite_small(name, thunk):
    res = thunk()
    assert res.ok, res.counterexample
    assert res.cases > 0 and res.elapsed >= 0


def test_counting_helpers():
    assert [checks.catalan(n) for n in range(1, 8)] == [1, 2, 5, 14, 42, 132, 429]
    assert [checks.fuss_catalan(n) for n in range(2, 7)] == [1, 3, 12, 55, 273]


def test_shapes_upto_dedupes_rotations_only():
    shapes = {str(c) for c in checks.shapes_upto(5)}
    assert "[0;0;1]" in shapes and "[0;1;0]" not in shapes
    assert "segment:5" in shapes and len(shapes) == len(checks.shapes_upto(5))
    # [0;1;2] and [0;2;1] are mirror images but not rotations
    assert {"[0;1;2]", "[0;2;1]"} <= {str(c) for c in checks.shapes_upto(6)}


def test_stats_check_reports_mismatch():
    res = checks.check_stats(parse_shape("[0;0;0]"), expected_ranks=[1, 3, 2])
    assert not res.ok and "[1, 3, 1]" in res.counterexample
    assert checks.check_stats(parse_shape("[0;0;0]"), [1, 3, 1]).ok


def test_fail_keeps_first_counterexample():
    res = checks.CheckResult("x")
    res.fail("first")
    res.fail("second")
    assert res.counterexample == "first" and res.as_dict()["ok"] is False


def test_no_blank_scan_small():
    res = checks.scan_no_blank(7)
    assert res.ok
    assert set(res.data) == {"[1;1;1]", "[1;1;2]"}
    assert res.data["[1;1;1]"]["ranks"] == [1, 12, 34, 35, 12, 1]


def test_leaf_scan_small():
    res = checks.scan_leaf_criterion(5)
    assert res.cases > 0 and res.data == {}
