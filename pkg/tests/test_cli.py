import csv
import json
import math

import pytest

from capmap import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "capmap/1"
    return doc


def test_parse_number():
    assert cli.parse_number("sqrt3") == pytest.approx(math.sqrt(3))
    assert cli.parse_number("sqrt(3)") == pytest.approx(math.sqrt(3))
    assert cli.parse_number("13/3") == pytest.approx(13 / 3)
    assert cli.parse_number("-13/3+4*sqrt(35)/3*i", allow_complex=True) == pytest.approx(
        complex(-13 / 3, 4 * math.sqrt(35) / 3))
    assert cli.parse_number("2i", allow_complex=True) == 2j
    with pytest.raises(Exception):
        cli.parse_number("__import__('os')")


def test_capacity(capsys):
    assert run_json(capsys, "capacity", "--sides", "6", "9", "13")["kappa"] == pytest.approx(3.805336, abs=5e-6)
    doc = run_json(capsys, "capacity", "--apex", "1.5707963267948966", "--verify-sc")
    assert doc["kappa"] == pytest.approx(0.4756344438799819, rel=1e-14)
    assert abs(doc["kappa_difference"]) < 1e-8
    assert run_json(capsys, "capacity", "--apex", "90", "--degrees")["kappa"] == pytest.approx(doc["kappa"])


def test_invalid_geometry(capsys):
    code, _, err = run(capsys, "capacity", "--sides", "1", "1", "3")
    assert code == 2 and "triangle inequality" in err
    assert run(capsys, "capacity", "--apex", "4")[0] == 2
    assert run(capsys, "center", "--apex", "1", "--radius", "1.5")[0] == 2
    assert run(capsys, "center", "--apex", "1", "--nodes", "100")[0] == 2


def test_center(capsys):
    doc = run_json(capsys, "center", "--apex", "1.0471975511965976")
    assert doc["center"]["re"] == pytest.approx(1 / math.sqrt(3), abs=1e-9)
    doc = run_json(capsys, "center", "--apex", "1.5707963267948966", "--closed-form")
    assert doc["center"]["re"] == pytest.approx(0.5045039334500261, abs=1e-9)
    assert doc["lambda_closed_form"] == pytest.approx(0.5045039334500261, abs=1e-11)
    doc = run_json(capsys, "center", "--unit-legs-right")
    assert doc["center"]["re"] == pytest.approx(0.3567381524778001, abs=1e-9)
    assert doc["center"]["im"] == pytest.approx(0.3567381524778001, abs=1e-9)
    doc = run_json(capsys, "center", "--vertices", "0", "6", "-13/3+4*sqrt(35)/3*i")
    assert doc["kappa"] == pytest.approx(3.805336, abs=1e-5)
    assert run(capsys, "center", "--apex", "1.0", "--closed-form")[0] == 2


def test_halfdisk(capsys):
    doc = run_json(capsys, "halfdisk", "--inner")
    assert doc["y0"] == pytest.approx(0.4858682717566457, abs=1e-9)
    assert doc["max_inner_radius"] == pytest.approx(0.6005662120015552, abs=1e-9)
    assert "outer_radius" not in doc
    doc = run_json(capsys, "halfdisk", "--outer")
    assert doc["outer_radius"] == pytest.approx(0.7698003589195010, abs=1e-9)
    assert doc["outer_center"]["im"] == pytest.approx(0.3849001794597505, abs=1e-9)
    code, out, _ = run(capsys, "halfdisk")
    assert code == 0 and "y0" in out and "outer_center" in out


def test_optimize(capsys):
    doc = run_json(capsys, "optimize-kappa")
    assert doc["theta_star"] == pytest.approx(2.5360873621, abs=1e-8)
    assert doc["kappa_star_source"] == "derived"


def test_prevertices(capsys):
    doc = run_json(capsys, "prevertices", "--vertices", "0", "1", "i*sqrt3", "--mirror")
    a2 = doc["prevertices"][1]
    assert a2["re"] == pytest.approx(0, abs=1e-10) and a2["im"] == pytest.approx(1)
    assert abs(doc["residue"]) < 1e-12


def test_map_grid_csv(capsys, tmp_path):
    path = tmp_path / "grid.csv"
    code, _, _ = run(capsys, "map-grid", "--sides", "1", "sqrt3", "2", "--circles", "3",
                     "--rays", "4", "--samples", "64", "--out", str(path))
    assert code == 0
    lines = path.read_text().splitlines()
    meta = json.loads(lines[0][2:])
    assert meta["schema"] == "capmap/1" and len(meta["radii"]) == 3 and "center" in meta
    rows = list(csv.reader(lines[1:]))
    assert tuple(rows[0]) == cli.CSV_COLUMNS
    assert len(rows) - 1 == (3 + 4) * 64
    assert {r[0] for r in rows[1:]} == {"circle", "ray"}


def test_map_grid_json(capsys):
    code, out, _ = run(capsys, "map-grid", "--apex", "1.2", "--circles", "2", "--rays", "0",
                       "--samples", "64", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["columns"] == list(cli.CSV_COLUMNS) and len(doc["records"]) == 128


def test_map_grid_errors(capsys, tmp_path):
    assert run(capsys, "map-grid", "--apex", "1", "--circles", "0")[0] == 2
    assert run(capsys, "map-grid", "--apex", "1", "--out", str(tmp_path / "no" / "x.csv"))[0] == 4


def test_json_precision(capsys):
    doc = run_json(capsys, "capacity", "--apex", "1.5707963267948966")
    assert float(repr(doc["kappa"])) == doc["kappa"]
    assert len(repr(doc["kappa"]).replace("0.", "")) >= 15


def test_argparse_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["capacity"])
    assert exc.value.code == 2
