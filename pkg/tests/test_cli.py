import json
import subprocess
import sys
from pathlib import Path

import pytest

from arrhocolim.arrangement import serialize_arrangement
from arrhocolim.cli import main
from arrhocolim.fiber_census import Slab, SlabFamily, serialize_family
from arrhocolim.fixtures import all_equal_circle, three_arc_circle, two_slab_family

DATA = Path(__file__).resolve().parent.parent / "data"


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def _run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_homology_of_arrangement(tmp_path, capsys):
    path = _write(tmp_path, "a.json", serialize_arrangement(three_arc_circle()))
    code, out, _ = _run(capsys, "homology", "--input", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["union"] == {"betti": [1, 1], "torsion": [[], []]}
    assert doc["config"]["command"] == "homology"


def test_corrupted_cells_exit_one_and_name_the_cell(capsys):
    code, out, _ = _run(capsys, "homology", "--input", str(DATA / "corrupted-triangle.json"))
    doc = json.loads(out)
    assert code == 1
    assert doc["validation"]["ok"] is False
    assert [v["cell"] for v in doc["validation"]["violations"]] == [6]


def test_missing_input_is_usage_error(capsys):
    code, _, err = _run(capsys, "homology", "--input", "/nonexistent/file.json")
    assert code == 2
    assert "cannot read" in err


def test_malformed_arrangement_is_usage_error(tmp_path, capsys):
    path = _write(tmp_path, "bad.json", json.dumps({"format": "arr-v1", "ambient": {"n_vertices": 2, "maximal_simplices": [[0, 9]]}}))
    code, _, err = _run(capsys, "hocolim", "--input", path)
    assert code == 2
    assert "vertex 9" in err


def test_unknown_flag_exits_two():
    with pytest.raises(SystemExit) as e:
        main(["census", "--bogus"])
    assert e.value.code == 2


def test_hocolim_reports_checks(tmp_path, capsys):
    path = _write(tmp_path, "eq.json", serialize_arrangement(all_equal_circle()))
    code, out, _ = _run(capsys, "hocolim", "--input", path, "--m", "1")
    doc = json.loads(out)
    assert code == 0
    assert doc["homology"] == {"betti": [1, 2, 1], "torsion": [[], [], []]}
    assert [c["check"] for c in doc["checks"]] == ["hocolim-oracle", "truncation", "union-comparison"]
    assert all(c["pass"] for c in doc["checks"])


def test_hocolim_m_out_of_range(tmp_path, capsys):
    path = _write(tmp_path, "eq.json", serialize_arrangement(all_equal_circle()))
    code, _, _ = _run(capsys, "hocolim", "--input", path, "--m", "5")
    assert code == 2


def test_verify_passes(capsys):
    code, out, err = _run(capsys, "verify", "--trials", "3", "--seed", "4")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] is True
    assert doc["instances"] >= 3
    assert "failures" in err


def test_verify_corrupted_input(capsys):
    code, out, _ = _run(capsys, "verify", "--input", str(DATA / "corrupted-triangle.json"), "--trials", "0")
    assert code == 1
    assert json.loads(out)["failures"][0]["check"] == "complex-valid"


def test_census_two_slab(tmp_path, capsys):
    path = _write(tmp_path, "s.json", serialize_family(two_slab_family()))
    code, out, _ = _run(capsys, "census", "--input", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["census"]["distinct_count"] == 3
    assert doc["census"]["critical_values"] == ["0/1", "1/1", "3/1", "4/1"]


def test_census_single_slab_csv(tmp_path, capsys):
    path = _write(tmp_path, "s.json", serialize_family(SlabFamily((Slab(0, 0, 0, 1, 0, 1),))))
    out_path = tmp_path / "census.csv"
    code, stdout, _ = _run(capsys, "census", "--input", path, "--format", "csv", "--out", str(out_path))
    assert code == 0
    assert "distinct signatures: 2" in stdout
    rows = out_path.read_text().splitlines()
    assert rows[0].startswith("z_lo,z_hi,")
    assert len({r.split(",")[3] for r in rows[1:]}) == 2


def test_census_boxes(capsys):
    code, out, _ = _run(capsys, "census", "--input", str(DATA / "three-boxes.json"), "--grid-res", "4")
    doc = json.loads(out)
    assert code == 0
    assert doc["census"]["approximate"] is True


def test_census_sweep(capsys):
    code, out, _ = _run(capsys, "census", "--sweep-n", "2,3,4", "--trials", "3")
    doc = json.loads(out)
    assert code == 0
    assert doc["growth_fit"]["slope"] <= 2.5
    assert len(doc["sweep"]) == 9


def test_census_sweep_csv_has_fit_line(capsys):
    code, out, _ = _run(capsys, "census", "--sweep-n", "2,3,4", "--trials", "2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[-1].startswith("# growth_fit slope=")


@pytest.mark.parametrize("value", ["2,3", "1,x,3", "0,2,3"])
def test_census_bad_sweep_list(value):
    with pytest.raises(SystemExit) as e:
        main(["census", "--sweep-n", value])
    assert e.value.code == 2


def test_census_needs_an_input(capsys):
    code, _, _ = _run(capsys, "census")
    assert code == 2


def test_census_bad_family(tmp_path, capsys):
    path = _write(tmp_path, "f.json", json.dumps({"format": "slab-v1", "slabs": [{"a": "1/0"}]}))
    code, _, err = _run(capsys, "census", "--input", path)
    assert code == 2
    assert "slabs[0]" in err


def test_thicken_check_single(capsys):
    code, out, _ = _run(capsys, "thicken-check", "--n", "4", "--m", "1")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] is True
    assert doc["checks"][0]["lhs"]["betti"] == [1, 3]


def test_thicken_check_bad_m(capsys):
    code, _, _ = _run(capsys, "thicken-check", "--n", "3", "--m", "3")
    assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "arrhocolim", "--version"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.startswith("arrhocolim ")
