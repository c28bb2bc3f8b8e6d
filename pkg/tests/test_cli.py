import math

import pytest

from translines.cli import RunConfig, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_verify_actions_pass(capsys):
    code, out, _ = run(capsys, "verify-actions", "--samples", "200")
    assert code == 0
    assert out.count("PASS") == 6


def test_verify_actions_single_case_and_csv(capsys, tmp_path):
    dest = tmp_path / "v.csv"
    code, out, _ = run(capsys, "verify-actions", "--case", "A3", "--case", "A6", "--samples", "50", "--out", str(dest))
    assert code == 0
    lines = dest.read_text().splitlines()
    assert lines[0] == "case,homomorphism,conjugation,commutator,pass"
    assert [ln.split(",")[0] for ln in lines[1:]] == ["A3", "A6"]


def test_verify_actions_failure_exit(capsys):
    code, out, err = run(capsys, "verify-actions", "--case", "A1", "--tol", "1e-30", "--samples", "20")
    assert code == 1
    assert "FAIL" in out and "violation:" in err


def test_case_subset_reproduces_full_run(capsys, tmp_path):
    run(capsys, "verify-actions", "--samples", "30", "--out", str(tmp_path / "all.csv"))
    run(capsys, "verify-actions", "--case", "A4", "--samples", "30", "--out", str(tmp_path / "one.csv"))
    full = dict(ln.split(",", 1) for ln in (tmp_path / "all.csv").read_text().splitlines()[1:])
    one = dict(ln.split(",", 1) for ln in (tmp_path / "one.csv").read_text().splitlines()[1:])
    assert one["A4"] == full["A4"]


def test_map_line_log(capsys):
    code, out, _ = run(capsys, "map-line", "--map", "log", "--a", "2", "--b", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# LogCurve,-2,0.69314718055994529,0"
    assert lines[1] == "x,y"
    assert len(lines) == 102


def test_map_line_range_and_figure(capsys, tmp_path):
    fig = tmp_path / "img.png"
    code, out, _ = run(capsys, "map-line", "--map", "parabola", "--a", "1", "--b", "0",
                       "--range", "-1", "1", "--samples", "3", "--figure", str(fig))
    assert code == 0
    assert out.splitlines()[2:] == ["-1,0", "0,0", "1,2"]
    assert fig.read_bytes()[:4] == b"\x89PNG"


def test_map_line_inadmissible(capsys):
    code, _, err = run(capsys, "map-line", "--map", "log", "--a", "-1", "--b", "1")
    assert code == 2 and "log map requires a>0" in err


def test_map_line_horizontal(capsys):
    code, _, err = run(capsys, "map-line", "--map", "log", "--a", "0", "--b", "3")
    assert code == 2 and "horizontal" in err.lower()


def test_map_line_tolerance_failure(capsys):
    code, _, err = run(capsys, "map-line", "--map", "complexlog", "--a", "1", "--b", "1", "--tol", "1e-300")
    assert code == 1 and "off the translate" in err


def test_arrange(capsys, tmp_path):
    code, out, _ = run(capsys, "arrange", "--n", "4", "--out", str(tmp_path))
    assert code == 0
    assert out.strip() == "N=128, M=64, I=256, st_ratio=0.427826"
    assert len((tmp_path / "points.csv").read_text().splitlines()) == 129
    assert len((tmp_path / "lines.csv").read_text().splitlines()) == 65


def test_arrange_mapped(capsys, tmp_path):
    fig = tmp_path / "arr.png"
    code, out, _ = run(capsys, "arrange", "--n", "2", "--map", "parabola", "--out", str(tmp_path),
                       "--figure", str(fig))
    assert code == 0
    assert "map=parabola, pullback_I=16, residual_I=16" in out
    curves = (tmp_path / "curves.csv").read_text().splitlines()
    assert curves[0] == "family,u,v,branch" and len(curves) == 9
    assert (tmp_path / "image_points.csv").exists()
    assert fig.stat().st_size > 0


def test_count_unit_distances(capsys, tmp_path):
    code, out, err = run(capsys, "count-unit-distances", "--n", "8", "16", "32", "64")
    assert code == 0
    assert out.splitlines() == ["N,count", "512,1184", "4096,19072", "32768,305664", "262144,4892672"]
    assert "slope=1.334688" in err
    dest = tmp_path / "u.csv"
    fig = tmp_path / "u.png"
    code, out, _ = run(capsys, "count-unit-distances", "--n", "2", "3", "4", "--out", str(dest), "--figure", str(fig))
    assert code == 0 and "slope=" in out
    assert dest.read_text().splitlines()[1] == "8,4"
    assert fig.exists()


def test_count_unit_distances_small(capsys):
    code, out, _ = run(capsys, "count-unit-distances", "--n", "2")
    assert code == 0 and out.splitlines() == ["N,count", "8,4"]


@pytest.mark.parametrize("argv", [
    ["count-unit-distances", "--n", "0"],
    ["arrange", "--n", "-3"],
    ["map-line", "--map", "circle", "--a", "1", "--b", "1"],
    ["verify-actions", "--case", "A9"],
    ["verify-actions", "--tol", "0"],
    ["verify-actions", "--threads", "0"],
    ["nonsense"],
    [],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_help_exits_zero(capsys):
    code, out, _ = run(capsys, "--help")
    assert code == 0 and "PCG64" in out


def test_run_config_validation():
    with pytest.raises(ValueError):
        RunConfig("x", tol=-1)
    with pytest.raises(ValueError):
        RunConfig("x", seed=-1)
    assert RunConfig("x").samples == 1000


# ---------- SVG export --------------------------------------------------------

def test_export_svg_two_series(capsys, tmp_path):
    src = tmp_path / "s.csv"
    src.write_text("x,y\n0,0\n1,1\n2,0\n\n0,1\n2,1\n")
    code, out, _ = run(capsys, "export-svg", str(src))
    assert code == 0
    assert out.startswith("<svg") or out.startswith("<?xml")
    assert out.count("<polyline") == 2
    assert 'width="800"' in out and 'height="600"' in out


def test_export_svg_points_style(capsys, tmp_path):
    src = tmp_path / "s.csv"
    src.write_text("0,0\n1,1\n")
    code, out, _ = run(capsys, "export-svg", str(src), "--style", "lines+points")
    assert code == 0 and "<circle" in out


def test_export_svg_from_map_line(capsys, tmp_path):
    data = tmp_path / "m.csv"
    assert run(capsys, "map-line", "--map", "log", "--a", "2", "--b", "4", "--out", str(data))[0] == 0
    svg = tmp_path / "m.svg"
    assert run(capsys, "export-svg", str(data), "--out", str(svg))[0] == 0
    assert svg.read_text().count("<polyline") == 1


def test_export_svg_errors(capsys, tmp_path):
    empty = tmp_path / "e.csv"
    empty.write_text("x,y\n")
    code, _, err = run(capsys, "export-svg", str(empty))
    assert code == 2 and "no point rows" in err
    bad = tmp_path / "b.csv"
    bad.write_text("x,y\n0,0\n1,abc\n")
    code, _, err = run(capsys, "export-svg", str(bad))
    assert code == 2 and "3" in err
    flat = tmp_path / "f.csv"
    flat.write_text("1,1\n1,1\n")
    assert run(capsys, "export-svg", str(flat))[0] == 2
    assert run(capsys, "export-svg", str(tmp_path / "missing.csv"))[0] == 2


# ---------- determinism -------------------------------------------------------

def _verify_csv(capsys, path, *extra):
    assert run(capsys, "verify-actions", "--samples", "300", "--seed", "7", "--out", str(path), *extra)[0] == 0
    return path.read_bytes()


def test_same_seed_same_bytes(capsys, tmp_path):
    assert _verify_csv(capsys, tmp_path / "a.csv") == _verify_csv(capsys, tmp_path / "b.csv")


def test_different_seed_differs(capsys, tmp_path):
    a = _verify_csv(capsys, tmp_path / "a.csv")
    assert run(capsys, "verify-actions", "--samples", "300", "--seed", "8", "--out", str(tmp_path / "c.csv"))[0] == 0
    assert a != (tmp_path / "c.csv").read_bytes()


def test_threads_bit_identical(capsys, tmp_path):
    assert _verify_csv(capsys, tmp_path / "a.csv") == _verify_csv(capsys, tmp_path / "t.csv", "--threads", "4")
    for k in ("1", "3"):
        d = tmp_path / f"arr{k}"
        run(capsys, "arrange", "--n", "3", "--map", "log", "--out", str(d), "--threads", k)
    for name in ("points.csv", "lines.csv", "curves.csv", "image_points.csv"):
        assert (tmp_path / "arr1" / name).read_bytes() == (tmp_path / "arr3" / name).read_bytes()
    one = tmp_path / "u1.csv"
    many = tmp_path / "u4.csv"
    run(capsys, "count-unit-distances", "--n", "5", "9", "17", "--out", str(one))
    run(capsys, "count-unit-distances", "--n", "5", "9", "17", "--out", str(many), "--threads", "4")
    assert one.read_bytes() == many.read_bytes()
