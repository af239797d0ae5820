import json

import pytest

from detcover.cover import ADAPTIVE, THEOREM, run_cover, verify_cover
from detcover.polyform import parse_form
from detcover.variety import COMPLETE_INTERSECTION, VarietyError, make_variety


def test_conic_b5_one_form_per_class(conic):
    rep = run_cover(conic, 5)
    assert rep.D == 4
    assert rep.N_actual == len(rep.records) == 4
    assert all(F.degree == 4 for F in rep.hypersurfaces)
    assert rep.all_true


def test_projective_line_height_one(line):
    rep = run_cover(line, 1)
    assert rep.primes == [2]
    assert sorted(str(F) for F in rep.hypersurfaces) == ["x0", "x1"]
    assert rep.all_true


def test_theorem_mode_uses_planned_primes(conic):
    rep = run_cover(conic, 5, mode=THEOREM)
    assert len(rep.primes) == 10
    assert rep.all_true


def test_report_is_deterministic(fermat_cubic):
    a = json.dumps(run_cover(fermat_cubic, 10).to_json(), sort_keys=True, default=str)
    b = json.dumps(run_cover(fermat_cubic, 10).to_json(), sort_keys=True, default=str)
    assert a == b
    assert "timing_seconds" not in a


def test_timing_opt_in(conic):
    assert "timing_seconds" in run_cover(conic, 5, with_timing=True).to_json()


def test_adaptive_note(conic):
    assert any("empirical" in note for note in run_cover(conic, 5).notes)


def test_verify_detects_missing_form(conic):
    rep = run_cover(conic, 8)
    partial = rep.hypersurfaces[:1]
    result = verify_cover(conic, 8, partial)
    assert not result["covered"] and result["uncovered"]


def test_verify_detects_improper_form(conic):
    f = parse_form("x0^2 + x1^2 - x2^2", 3)
    result = verify_cover(conic, 5, [f * parse_form("x0^2", 3)])
    assert result["covered"] and not result["proper"]


def test_verify_detects_wrong_degree(conic):
    result = verify_cover(conic, 5, [parse_form("x0*x1", 3)])
    assert not result["degree_uniform"]


def test_rejects_complete_intersection():
    X = make_variety(["x0^2 - x1*x3", "x2^2 - x0*x3"], 3, COMPLETE_INTERSECTION)
    with pytest.raises(VarietyError):
        run_cover(X, 3)


def test_rejects_bad_mode(conic):
    with pytest.raises(ValueError):
        run_cover(conic, 5, mode="fast")


@pytest.mark.parametrize("B", [3, 6.5, 12])
def test_cusp_cover_skips_singular_point(cusp, B):
    rep = run_cover(cusp, B, mode=ADAPTIVE)
    assert rep.all_true
    assert verify_cover(cusp, B, rep.hypersurfaces)["covered"]
