import json

import pytest

from gtorus.cli import main, read_matrix, write_matrix
from gtorus.errors import InputError
from gtorus.linalg import FramedPoint
from gtorus.scalars import COMPLEX, GAUSSIAN, GaussianRational


@pytest.fixture
def write(tmp_path):
    def _write(name, doc):
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
        return str(path)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_stratify_witness(capsys, write):
    path = write("w.json", {"scalar": "gaussian-rational", "rows": [[1, 0], [-1, 1], [1, 1], [0, 1]]})
    code, out, _ = run(capsys, "stratify", path)
    doc = json.loads(out)
    assert code == 0
    assert doc["polytope"]["kind"] == "Octahedron" and doc["dim"] == 8
    assert doc["pattern"] == ["12", "13", "14", "23", "24", "34"]
    assert doc["stabilizer"] == {"dim": 1, "basis": [[1, 1, 1, 1]]}


def test_orbit_on_p34(capsys, write):
    path = write("m.json", {"rows": [[[1, 0], [0, 0]], [[0, 0], [1, 0]], [1, 1], [1, 1]]})
    code, out, _ = run(capsys, "orbit", path)
    doc = json.loads(out)
    assert code == 0 and doc["param"] == "1" and doc["stratum"] == "P34"
    assert doc["closure_model"] == "SingularToric6_1pt" and doc["local_model"] == "Smooth"


def test_orbit_indeterminate(capsys, write):
    path = write("v.json", {"rows": [[1, 0], [0, 1], [0, 0], [0, 0]]})
    doc = json.loads(run(capsys, "orbit", path)[1])
    assert doc["param"] == "indeterminate" and doc["closure_model"] == "Point"


def test_moment(capsys, write):
    path = write("w.json", {"scalar": "gaussian-rational", "rows": [[1, 0], [-1, 1], [1, 1], [0, 1]]})
    doc = json.loads(run(capsys, "moment", path)[1])
    assert doc["moment"] == pytest.approx([1 / 3, 2 / 3, 2 / 3, 1 / 3])
    assert doc["stratum"] == "octahedron"


def test_cp5_stratify(capsys, write):
    path = write("z.json", {"z": [1, 0, 0, 0, 0, 1]})
    doc = json.loads(run(capsys, "cp5-stratify", path)[1])
    assert doc == {"polytope_vertices": ["12", "34"], "param": [0.0, 0.0, 1.0], "on_quadric": False}


def test_homology(capsys):
    code, out, _ = run(capsys, "homology", "--space", "g42")
    assert code == 0 and out.strip() == "H0=Z H5=Z others 0"
    doc = json.loads(run(capsys, "--json", "homology", "--space", "cp5")[1])
    assert doc["homology"][7] == "Z"


def test_morse_check(capsys):
    code, out, _ = run(capsys, "morse-check", "--chart", "12")
    doc = json.loads(out)
    assert code == 0 and doc["gradient_norm"] <= 1e-6
    assert doc["reference_match"] is False and doc["analytic_match"] is True


def test_lattice_and_complex(capsys):
    code, out, _ = run(capsys, "lattice", "--format", "dot")
    assert code == 0 and out.startswith("digraph strata")
    doc = json.loads(run(capsys, "lattice", "--format", "json")[1])
    assert doc["counts_by_dim"] == [6, 12, 11, 6, 1]
    doc = json.loads(run(capsys, "complex", "--format", "json")[1])
    assert len(doc["cells"]) == 36
    doc = json.loads(run(capsys, "complex", "--without-main")[1])
    assert len(doc["cells"]) == 35


def test_export_polytope(capsys, tmp_path):
    code, out, _ = run(capsys, "export-polytope", "octahedron", "--format", "off")
    lines = out.splitlines()
    assert code == 0 and lines[1].split()[:2] == ["6", "8"]
    doc = json.loads(run(capsys, "export-polytope", "P13,24", "--format", "json")[1])
    assert doc["dim"] == 2 and len(doc["vertices"]) == 4
    doc = json.loads(run(capsys, "export-polytope", "V12")[1])
    assert [v["coords"] for v in doc["vertices"]] == [[1, 1, 0, 0]]
    target = tmp_path / "oct.csv"
    assert run(capsys, "export-polytope", "octahedron", "--format", "csv", "-o", str(target))[0] == 0
    assert target.read_text().startswith("record,id,label")


def test_unknown_stratum(capsys):
    code, _, err = run(capsys, "export-polytope", "P12,13")
    assert code == 2 and "UnknownStratum" in err


def test_malformed_json_reports_location(capsys, write):
    path = write("bad.json", '{"rows": [[1, 0],\n  [0, 1], [1 1], [0, 0]]}')
    code, _, err = run(capsys, "stratify", path)
    assert code == 2 and "line 2, column" in err


@pytest.mark.parametrize("doc", [{"rows": [[1, 0]]}, {"cols": []}, {"rows": [[1, 0], [0, 1], [1, 1], ["x", 0]]},
                                 {"scalar": "octonion", "rows": [[1, 0], [0, 1], [0, 0], [0, 0]]}])
def test_bad_matrices(capsys, write, doc):
    code, _, err = run(capsys, "stratify", write("m.json", doc))
    assert code == 2 and "InputError" in err


def test_rank_deficient_input(capsys, write):
    code, _, err = run(capsys, "stratify", write("r.json", {"rows": [[1, 2], [2, 4], [0, 0], [3, 6]]}))
    assert code == 2 and "RankDeficient" in err


def test_missing_file(capsys):
    assert run(capsys, "orbit", "/nonexistent/file.json")[0] == 2


def test_matrix_round_trip():
    for field, rows in ((GAUSSIAN, ((GaussianRational(1, 2), 0), (0, 1), (3, GaussianRational(0, -1)), (1, 1))),
                        (COMPLEX, ((0.1 + 2j, -1.5), (0, 1), (1e-7, 2), (3, 4j)))):
        X = FramedPoint(rows, field)
        assert read_matrix(write_matrix(X), COMPLEX) == X


def test_read_matrix_error_location():
    with pytest.raises(InputError) as exc:
        read_matrix('{"rows": [\n\n  [1, 0],, ]}', COMPLEX)
    assert exc.value.line == 3


def test_commands_are_deterministic(capsys, write):
    path = write("w.json", {"rows": [[1, 0], [-1, 1], [1, 1], [0, 1]]})
    for argv in (("orbit", path), ("lattice",), ("verify", "--criterion", "7", "--seed", "5")):
        assert run(capsys, *argv) == run(capsys, *argv)


def test_verify_exit_code_and_report(capsys, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "--criterion", "1", "--criterion", "3", "--report", str(report))
    assert code == 0 and "FAIL" not in out
    doc = json.loads(report.read_text())
    assert doc["criteria"] == {"1": "pass", "3": "pass"}
    code, out, _ = run(capsys, "verify", "--criterion", "4")
    assert code == 1 and "FAIL  04.lattice.triangle" in out and "[reference]" in out


def test_verify_json_no_timings(capsys):
    a = run(capsys, "--json", "verify", "--criterion", "5", "--no-timings")
    b = run(capsys, "verify", "--criterion", "5", "--no-timings", "--json")
    assert a == b and json.loads(a[1])["checks"][0]["elapsed"] == 0.0


def test_config_errors(capsys, monkeypatch):
    monkeypatch.setenv("GT_SEED", "not-a-number")
    assert run(capsys, "verify", "--criterion", "3")[0] == 2
    monkeypatch.setenv("GT_SEED", "7")
    code, out, _ = run(capsys, "verify", "--criterion", "3")
    assert code == 0 and out.startswith("seed=7 ")
    code, out, _ = run(capsys, "--seed", "9", "verify", "--criterion", "3")
    assert out.startswith("seed=9 ")
    assert run(capsys, "verify", "--criterion", "99")[0] == 2


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["homology", "--space", "torus"])
    assert exc.value.code == 2
