from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest

from ietkit.cli import main

from conftest import FROZEN_CROSSING

F = Fraction

SVG_NS = "{http://www.w3.org/2000/svg}"


def run_cli(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_power_curve(tmp_path, d: int):
    rows = [[0] * i + [1] for i in range(1, d + 1)]
    path = tmp_path / f"power{d}.json"
    path.write_text(json.dumps({"d": d, "coeffs": rows}))
    return str(path)


# ---------------------------------------------------------------------------
# omega


def test_omega_exact_output(capsys):
    code, out, err = run_cli(capsys, "omega", "--perm", "2,1")
    assert (code, err) == (0, "")
    assert out == "[[0,-1],[1,0]]\n"


def test_omega_larger_example(capsys):
    code, out, _ = run_cli(capsys, "omega", "--perm", "3,1,2")
    assert code == 0
    assert json.loads(out) == [[0, -1, -1], [1, 0, 0], [1, 0, 0]]


def test_bad_permutation_is_a_validation_error(capsys):
    code, out, err = run_cli(capsys, "omega", "--perm", "2,2")
    assert code == 2
    assert out == ""
    assert err.startswith("error:")


# ---------------------------------------------------------------------------
# suspend


def test_suspend_reports_simple_parallelogram(capsys):
    code, out, _ = run_cli(
        capsys, "suspend", "--perm", "2,1", "--lengths", "1,1", "--heights", "1,-1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["simple"] is True
    assert payload["witness"] is None
    assert payload["top_chain"] == [["0/1", "0/1"], ["1/1", "1/1"], ["2/1", "0/1"]]
    assert payload["bottom_chain"] == [["0/1", "0/1"], ["1/1", "-1/1"], ["2/1", "0/1"]]
    assert payload["return_profile"] == ["1/1", "1/1"]
    assert payload["first_slope_vs_bottom_first"] == 1
    # sigma^{-1}(d) = 1 here, so the last-symbol comparison is kappa_1 vs itself
    assert payload["first_slope_vs_bottom_last"] == 0


def _frozen_args() -> list[str]:
    return [
        "--perm", ",".join(str(v) for v in FROZEN_CROSSING["perm"]),
        "--lengths", ",".join(str(v) for v in FROZEN_CROSSING["lengths"]),
        "--heights", ",".join(str(v) for v in FROZEN_CROSSING["heights"]),
    ]


def test_suspend_crossing_payload_and_exit(capsys):
    code, out, _ = run_cli(capsys, "suspend", *_frozen_args())
    assert code == 0  # informational by default
    payload = json.loads(out)
    assert payload["simple"] is False
    w = payload["witness"]
    assert w["classification"] == "ProperCrossing"
    assert [w["chain_a"], w["index_a"]] == [FROZEN_CROSSING["chain_a"], FROZEN_CROSSING["index_a"]]
    assert [w["chain_b"], w["index_b"]] == [FROZEN_CROSSING["chain_b"], FROZEN_CROSSING["index_b"]]
    assert w["locus"] == ["8/3", "0/1"]


def test_suspend_require_simple_sets_exit_code(capsys):
    code, out, err = run_cli(capsys, "suspend", *_frozen_args(), "--require-simple")
    assert code == 3
    assert json.loads(out)["simple"] is False  # payload still emitted
    assert "require-simple" in err


def test_suspend_svg_geometry(capsys, tmp_path):
    svg_path = tmp_path / "curve.svg"
    code, _, _ = run_cli(capsys, "suspend", *_frozen_args(), "--svg", str(svg_path))
    assert code == 0
    root = ET.fromstring(svg_path.read_text())
    polylines = root.findall(f"{SVG_NS}polyline")
    assert len(polylines) == 2
    top_pts = [tuple(float(c) for c in p.split(",")) for p in polylines[0].get("points").split()]
    # y axis is flipped so that positive heights point up on screen
    assert top_pts[0] == (0.0, 0.0)
    assert top_pts[1] == (1.0, -3.0)
    circles = root.findall(f"{SVG_NS}circle")
    assert len(circles) == 1
    assert float(circles[0].get("cx")) == pytest.approx(8 / 3)
    assert float(circles[0].get("cy")) == 0.0
    x, y, w, h = (float(v) for v in root.get("viewBox").split())
    assert x < 0 < x + w and y < 0 < y + h


def test_suspend_svg_for_simple_curve_has_no_marks(capsys, tmp_path):
    svg_path = tmp_path / "simple.svg"
    run_cli(capsys, "suspend", "--perm", "2,1", "--lengths", "1,1",
            "--heights", "1,-1", "--svg", str(svg_path))
    root = ET.fromstring(svg_path.read_text())
    assert root.findall(f"{SVG_NS}circle") == []


# ---------------------------------------------------------------------------
# check


def test_check_hexagon(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--perm", "3,2,1", "--lengths", "1,1,1", "--heights", "1,0,-1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "PositivePairByLemma"
    assert payload["monotonicity"] == "StrictlyDecreasing"
    assert payload["simple"] is True
    assert payload["positivity"] == "AllPositive"
    assert payload["chains_exchanged"] is False
    assert payload["connection_check_advised"] is True
    assert payload["slopes"] == ["1/1", "0/1", "-1/1"]


def test_check_reducible_exit_code(capsys):
    code, out, err = run_cli(
        capsys, "check", "--perm", "1,2", "--lengths", "1,1", "--heights", "1,-1"
    )
    assert code == 4
    assert out == ""
    assert "error:" in err


def test_check_accepts_rational_and_decimal_scalars(capsys):
    code, out, _ = run_cli(
        capsys, "check", "--perm", "3,2,1", "--lengths", "1,3/2,0.25", "--heights", "1,0,-1"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["verdict"] == "PositivePairByLemma"
    assert payload["slopes"][0] == "1/1"


# ---------------------------------------------------------------------------
# scan


def test_scan_power_family(capsys, tmp_path):
    curve = write_power_curve(tmp_path, 4)
    code, out, _ = run_cli(
        capsys, "scan", "--perm", "4,3,2,1", "--curve", curve,
        "--from", "0.5", "--to", "4", "--samples", "100",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload == {
        "exceptional": [],
        "fractions": {"PositivePairByMirroredLemma": "1/1"},
        "samples": 100,
    }


def test_scan_output_is_byte_stable(capsys, tmp_path):
    curve = write_power_curve(tmp_path, 3)
    args = ("scan", "--perm", "3,1,2", "--curve", curve,
            "--from", "0.5", "--to", "2.5", "--samples", "33")
    _, first, _ = run_cli(capsys, *args)
    _, second, _ = run_cli(capsys, *args)
    assert first == second


def test_scan_jobs_matches_serial(capsys, tmp_path):
    curve = write_power_curve(tmp_path, 3)
    args = ["scan", "--perm", "3,2,1", "--curve", curve,
            "--from", "0.5", "--to", "4", "--samples", "30"]
    _, serial, _ = run_cli(capsys, *args)
    _, parallel, _ = run_cli(capsys, *args, "--jobs", "3")
    assert serial == parallel


def test_scan_lists_exceptional_samples(capsys, tmp_path):
    # widths (s, s): tied slopes whenever the derivative heights tie too
    path = tmp_path / "ties.json"
    path.write_text(json.dumps({"d": 2, "coeffs": [[0, 1], [0, 1]]}))
    code, out, _ = run_cli(
        capsys, "scan", "--perm", "2,1", "--curve", str(path),
        "--from", "0.5", "--to", "1.5", "--samples", "3",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["fractions"] == {"DegenerateTies": "1/1"}
    assert [e["verdict"] for e in payload["exceptional"]] == ["DegenerateTies"] * 3
    assert payload["exceptional"][0]["s"] == "1/2"


def test_scan_domain_violation_exit_code(capsys, tmp_path):
    curve = write_power_curve(tmp_path, 2)
    code, out, err = run_cli(
        capsys, "scan", "--perm", "2,1", "--curve", curve,
        "--from", "-1", "--to", "1", "--samples", "5",
    )
    assert code == 5
    assert out == ""


def test_scan_domain_violation_same_under_jobs(capsys, tmp_path):
    curve = write_power_curve(tmp_path, 2)
    code, _, _ = run_cli(
        capsys, "scan", "--perm", "2,1", "--curve", curve,
        "--from", "-1", "--to", "1", "--samples", "5", "--jobs", "4",
    )
    assert code == 5


def test_scan_curve_file_problems_are_validation_errors(capsys, tmp_path):
    missing = str(tmp_path / "nope.json")
    assert run_cli(capsys, "scan", "--perm", "2,1", "--curve", missing,
                   "--from", "1", "--to", "2", "--samples", "3")[0] == 2

    bad_json = tmp_path / "bad.json"
    bad_json.write_text("{не json")
    assert run_cli(capsys, "scan", "--perm", "2,1", "--curve", str(bad_json),
                   "--from", "1", "--to", "2", "--samples", "3")[0] == 2

    wrong_d = tmp_path / "wrongd.json"
    wrong_d.write_text(json.dumps({"d": 3, "coeffs": [[0, 1], [0, 1]]}))
    assert run_cli(capsys, "scan", "--perm", "2,1", "--curve", str(wrong_d),
                   "--from", "1", "--to", "2", "--samples", "3")[0] == 2

    curve = write_power_curve(tmp_path, 2)
    assert run_cli(capsys, "scan", "--perm", "3,2,1", "--curve", curve,
                   "--from", "1", "--to", "2", "--samples", "3")[0] == 2
    assert run_cli(capsys, "scan", "--perm", "2,1", "--curve", curve,
                   "--from", "2", "--to", "1", "--samples", "3")[0] == 2


# ---------------------------------------------------------------------------
# orbit and connections


def test_orbit_periodic_rotation(capsys):
    code, out, _ = run_cli(
        capsys, "orbit", "--perm", "2,1", "--lengths", "1,1",
        "--x0", "1/4", "--iters", "1000", "--refine", "2",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["iterations"] == 1000
    assert payload["frequencies"] == ["1/2", "1/2"]
    assert payload["expected"] == ["1/2", "1/2"]
    assert payload["discrepancy"] == "0/1"
    assert payload["discrepancy_float"] == 0.0
    assert payload["refinement_cells"] == 2
    assert payload["empirical"] is True


def test_orbit_rejects_point_outside_domain(capsys):
    code, _, err = run_cli(
        capsys, "orbit", "--perm", "2,1", "--lengths", "1,1",
        "--x0", "5", "--iters", "10",
    )
    assert code == 2
    assert "error:" in err


def test_connections_finds_first_hit(capsys):
    code, out, _ = run_cli(
        capsys, "connections", "--perm", "2,1", "--lengths", "1,1", "--max-m", "3"
    )
    assert code == 0
    assert json.loads(out) == {
        "connections": [{"i": 1, "j": 1, "m": 2}],
        "max_m": 3,
    }


def test_connections_empty_result(capsys):
    code, out, _ = run_cli(
        capsys, "connections", "--perm", "2,1", "--lengths", "1,1597/987", "--max-m", "100"
    )
    assert code == 0
    assert json.loads(out)["connections"] == []
