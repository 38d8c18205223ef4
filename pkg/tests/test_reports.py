import json
import math

import numpy as np
import pytest

from trivortex import (
    DetectedVortex,
    FieldGrid,
    SourceArrangement,
    Window,
    conic_from_arrangement,
    detect_vortices,
    enumerate_lattice,
    match,
    predict_all,
    sample_grid,
)
from trivortex.reports import (
    DETECTION_FIELDS,
    PREDICTION_FIELDS,
    arrangement_dict,
    ellipse_dict,
    fmt,
    lattice_entries,
    match_dict,
    raster_bytes,
    read_detections_csv,
    read_predictions_csv,
    write_detections_csv,
    write_json_report,
    write_predictions_csv,
    write_raster,
)


def grid_from(values):
    return FieldGrid(
        values=np.asarray(values, dtype=complex),
        origin_x=0.0,
        origin_y=0.0,
        step=1.0,
        z0=None,
        model_tag="planewave",
    )


def parse_pgm(data):
    magic, dims, maxval, payload = data.split(b"\n", 3)
    w, h = (int(t) for t in dims.split())
    return magic, w, h, int(maxval), payload


def test_pgm_layout():
    grid = grid_from(np.arange(12).reshape(3, 4) + 0j)
    magic, w, h, maxval, payload = parse_pgm(raster_bytes(grid, "amplitude"))
    assert magic == b"P5"
    assert (w, h) == (4, 3)
    assert maxval == 255
    assert len(payload) == 12


def test_amplitude_spans_full_range_top_row_is_max_y():
    values = np.array([[0.0, 1.0], [2.0, 4.0]], dtype=complex)
    _, w, h, _, payload = parse_pgm(raster_bytes(grid_from(values), "amplitude"))
    img = np.frombuffer(payload, dtype=np.uint8).reshape(h, w)
    # first payload row is the largest y, i.e. the last grid row
    assert img[0].tolist() == [128, 255]
    assert img[1].tolist() == [0, 64]


def test_constant_amplitude_renders_black():
    values = np.full((3, 3), 2.5 + 0j)
    _, _, _, _, payload = parse_pgm(raster_bytes(grid_from(values), "amplitude"))
    assert set(payload) == {0}


def test_phase_mapping_reference():
    values = np.array([[1.0, 1j], [-1.0, -1j]], dtype=complex)
    _, w, h, _, payload = parse_pgm(raster_bytes(grid_from(values), "phase"))
    img = np.frombuffer(payload, dtype=np.uint8).reshape(h, w)
    # angle chi maps to rint(255 (chi + pi) / 2 pi); -1 wraps to -pi, not +pi
    assert img[1, 0] == round(255 * 0.5)
    assert img[1, 1] == round(255 * 0.75)
    assert img[0, 0] == 0
    assert img[0, 1] == round(255 * 0.25)


def test_background_subtracted_kind_differs(arr60):
    grid = sample_grid(arr60, Window(10.0), 64, "exact", 25.0)
    plain = raster_bytes(grid, "phase")
    flat = raster_bytes(grid, "phase_bg_subtracted", arr=arr60)
    assert plain != flat
    assert len(plain) == len(flat)


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        raster_bytes(grid_from(np.ones((2, 2))), "intensity")


def test_raster_bytes_deterministic(arr60, tmp_path):
    grid = sample_grid(arr60, Window(10.0), 32, "exact", 25.0)
    assert raster_bytes(grid, "amplitude") == raster_bytes(grid, "amplitude")
    p1, p2 = tmp_path / "a.pgm", tmp_path / "b.pgm"
    write_raster(grid, "amplitude", p1)
    write_raster(grid, "amplitude", p2)
    assert p1.read_bytes() == p2.read_bytes()


def test_predictions_roundtrip_exact(arr175, tmp_path):
    preds = predict_all(arr175, 25.0)
    path = tmp_path / "preds.csv"
    write_predictions_csv(preds, path, arr175.lambda0)
    back = read_predictions_csv(path, arr175.lambda0, 25.0)
    assert len(back) == len(preds)
    for a, b in zip(preds, back):
        assert (a.m, a.n, a.branch) == (b.m, b.n, b.branch)
        # unit wavelength makes the .17g round trip bit-exact
        assert a.theta == b.theta
        assert a.r_perp == b.r_perp
        assert a.x == b.x and a.y == b.y


def test_detections_roundtrip(tmp_path):
    dets = [
        DetectedVortex(charge=1, pixel=(3, 4), position=(0.123456789012345, -2.5), plaquette_min_amplitude=0.007),
        DetectedVortex(charge=-1, pixel=(0, 0), position=(-1.0 / 3.0, 2.0 / 7.0), plaquette_min_amplitude=0.2),
    ]
    path = tmp_path / "dets.csv"
    write_detections_csv(dets, path, 1.0)
    back = read_detections_csv(path, 1.0)
    assert [(d.charge, d.position, d.plaquette_min_amplitude) for d in back] == [
        (d.charge, d.position, d.plaquette_min_amplitude) for d in dets
    ]
    assert all(d.pixel == (-1, -1) for d in back)


def test_csv_header_guard(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("m,n,surprise\n", encoding="utf-8")
    with pytest.raises(ValueError):
        read_predictions_csv(path, 1.0, 25.0)
    with pytest.raises(ValueError):
        read_detections_csv(path, 1.0)


def test_csv_uses_lf_only(arr175, tmp_path):
    path = tmp_path / "preds.csv"
    write_predictions_csv(predict_all(arr175, 25.0), path, 1.0)
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.split(b"\n", 1)[0].decode() == ",".join(PREDICTION_FIELDS)

    path2 = tmp_path / "dets.csv"
    write_detections_csv([], path2, 1.0)
    assert path2.read_bytes() == (",".join(DETECTION_FIELDS) + "\n").encode()


def test_json_report_sorted_and_stable(tmp_path):
    report = {"zeta": 1, "alpha": {"b": [1.5, None], "a": True}}
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    write_json_report(report, p1)
    write_json_report(report, p2)
    raw = p1.read_text(encoding="utf-8")
    assert raw == p2.read_text(encoding="utf-8")
    assert raw.endswith("\n")
    assert raw.index('"alpha"') < raw.index('"zeta"')
    assert json.loads(raw) == report


def test_fmt_is_17g():
    assert fmt(1.0 / 3.0) == "0.33333333333333331"
    for x in (0.1, 2.0 / 3.0, 1e-300, 12345.6789):
        assert float(fmt(x)) == x


def test_lattice_entries_structure(arr60):
    points = enumerate_lattice(arr60)
    entries = lattice_entries(arr60, points)
    assert [(e["m"], e["n"]) for e in entries] == points
    for e in entries:
        assert e["depth"] > 0.0
        assert e["near_boundary"] is False


def test_match_dict_shape(arr60):
    z0 = 25.0
    grid = sample_grid(arr60, Window(15.0), 128, "exact", z0)
    preds = [p for p in predict_all(arr60, z0) if abs(p.x) <= 15 and abs(p.y) <= 15]
    report = match(preds, detect_vortices(grid), tolerance=2.0)
    d = match_dict(report, arr60.lambda0, 2.0)
    assert d["tolerance_over_lambda0"] == pytest.approx(2.0)
    assert d["matched_count"] == len(report.pairs)
    assert len(d["pairs"]) == len(report.pairs)
    assert d["rms_residual_over_lambda0"] == pytest.approx(report.rms_residual)
    assert set(d) >= {
        "pairs",
        "unmatched_predictions",
        "unmatched_detections",
        "rejected_beyond_tolerance",
    }


def test_stdout_sink(arr175, capsys):
    write_predictions_csv(predict_all(arr175, 25.0), "-", 1.0)
    out = capsys.readouterr().out
    assert out.splitlines()[0] == ",".join(PREDICTION_FIELDS)
    assert len(out.splitlines()) == 13


def test_arrangement_dict_units():
    arr = SourceArrangement(lambda0=0.5, r2=3.0, r3=2.0, theta3=1.2, phi2=0.3, phi3=-0.4)
    d = arrangement_dict(arr)
    assert d["lambda0"] == 0.5
    assert d["r2_over_lambda0"] == pytest.approx(6.0)
    assert d["r3_over_lambda0"] == pytest.approx(4.0)
    assert d["theta3_rad"] == 1.2
    assert d["phi2_rad"] == 0.3
    assert d["phi3_rad"] == -0.4
    assert d["amplitudes"] == [1.0, 1.0, 1.0]


def test_ellipse_dict_degenerate_center_is_null():
    arr = SourceArrangement(lambda0=1.0, r2=3.0, r3=3.0, theta3=0.0)
    d = ellipse_dict(conic_from_arrangement(arr))
    assert d["kind"] == "degenerate_line"
    assert d["center_m"] is None
    assert d["center_n"] is None
