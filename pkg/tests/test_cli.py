import json

import pytest

from nilmetric import catalog as C
from nilmetric.cli import main
from nilmetric.liealg import load_algebra


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out)


def test_classify_h3_lorentz(capsys):
    code, data = run_json(capsys, "classify", "--builtin", "h3_lorentz", "--format", "json")
    assert code == 0
    assert data["scalar_curvature"] == "1/2"
    assert data["structural_conclusions"] == ["SPLIT_EQ_AUT", "ISO_EQ_SPLIT"]


def test_isotropy_and_ahc_dimensions(capsys):
    assert run_json(capsys, "isotropy", "--builtin", "rxh3")[1]["dimension"] == 1
    code, data = run_json(capsys, "ahc", "--builtin", "free3_neutral")
    assert code == 0 and data["dimension"] == 15 and data["constraint_residual"] == "exact-zero"
    assert run_json(capsys, "derivations", "--builtin", "rxh3")[1]["dimension"] == 1


def test_json_is_stable(capsys):
    first = run(capsys, "isotropy", "--builtin", "htype6")[1]
    assert run(capsys, "isotropy", "--builtin", "htype6")[1] == first


def test_validate_exit_codes(capsys):
    assert run_json(capsys, "validate", "--builtin", "iso7")[0] == 0
    code, data = run_json(capsys, "validate", "--builtin", "iso7_printed")
    assert code == 2 and data["jacobi_failures"] == [[1, 3, 4], [2, 3, 5]]
    assert run(capsys, "isotropy", "--builtin", "iso7_printed")[0] == 2


def test_precondition_errors(capsys):
    code, out, err = run(capsys, "isotropy", "--builtin", "free3_neutral")
    assert code == 3 and "center degenerate" in err
    code, _, err = run(capsys, "ahc", "--builtin", "h3_riemannian")
    assert code == 3 and "ad-invariant" in err


def test_io_errors(capsys, tmp_path):
    assert run(capsys, "classify", "--file", str(tmp_path / "missing.json"))[0] == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "classify", "--file", str(bad))[0] == 4
    bad.write_text('{"dim": 2, "metric": [{"i": 1, "j": 9, "value": "1"}]}')
    assert run(capsys, "classify", "--file", str(bad))[0] == 4
    assert run(capsys, "classify", "--builtin", "nope")[0] == 4
    bad.write_text('{"dim": 2, "metric": [{"i": 1, "j": 1, "value": "1"}]}')
    assert run(capsys, "classify", "--file", str(bad))[0] == 2      # singular metric
    assert run(capsys, "classify")[0] == 4                           # no input source
    assert run(capsys, "classify", "--builtin", "h3_lorentz", "--file", "x")[0] == 4
    assert run(capsys, "geodesic", "--builtin", "h3_lorentz", "--w", "1,0", "--u", "0,0,1")[0] == 4
    assert run(capsys, "geodesic", "--builtin", "h3_lorentz", "--w", "1,0,0",
               "--tmax", "-1")[0] == 4


@pytest.mark.parametrize("name", sorted(C.ALGEBRAS) + ["abelian_2_1", "free3_split"])
def test_catalog_dump_round_trip(capsys, tmp_path, name):
    code, out, _ = run(capsys, "catalog", "dump", name)
    assert code == 0
    path = tmp_path / f"{name}.json"
    path.write_text(out)
    alg, comp = load_algebra(path)
    obj = C.builtin(name)
    if name == "free3_split":
        assert alg == obj.algebra and comp == obj.complement
    else:
        assert alg == obj and comp is None


def test_file_input_with_complement(capsys, tmp_path):
    _, out, _ = run(capsys, "catalog", "dump", "free3_split")
    path = tmp_path / "f.json"
    path.write_text(out)
    code, data = run_json(capsys, "ahc", "--file", str(path))
    assert code == 0 and data["dimension"] == 15
    code, data = run_json(capsys, "classify", "--file", str(path))
    assert data["center_nondegenerate"] is False


def test_geodesic_csv(capsys):
    code, out, _ = run(capsys, "geodesic", "--builtin", "h3_lorentz", "--w", "1,0,0",
                       "--u", "0,0,1", "--tmax", "1", "--samples", "11")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "t,b_1,b_2,a_1,residual" and len(lines) == 12
    t, b1 = map(float, lines[-1].split(",")[:2])
    assert t == 1.0 and abs(b1 - 1.1752011936438014) < 1e-12
    code, _, err = run(capsys, "geodesic", "--builtin", "h3_lorentz", "--w", "1,0,0",
                       "--u", "0,0,1", "--samples", "11", "--tol", "1e-12")
    assert code == 2 and "exceeds" in err
    code, _, _ = run(capsys, "geodesic", "--builtin", "h3_lorentz", "--w", "1,0,1")
    assert code == 3


def test_report_and_text_format(capsys):
    code, data = run_json(capsys, "report", "--builtin", "oscillator4")
    assert code == 0 and data["nilradical"] == [["0", "1", "0", "0"], ["0", "0", "1", "0"],
                                                ["0", "0", "0", "1"]]
    code, data = run_json(capsys, "report", "--builtin", "h3_lorentz")
    assert data["scalar_curvature"] == "1/2" and data["j_maps"] == [[["0", "1"], ["1", "0"]]]
    code, out, _ = run(capsys, "classify", "--builtin", "htype6", "--format", "text")
    assert code == 0 and "scalar_curvature: -2" in out


def test_catalog_list_and_entries(capsys):
    code, data = run_json(capsys, "catalog", "list")
    assert "h3_lorentz" in data["algebras"] and "chartM4" in data["charts"]
    assert run_json(capsys, "catalog", "dump", "psi2")[1]["kind"] == "map"
    assert run_json(capsys, "catalog", "dump", "iso7_n")[1]["basis"][0] == \
        ["1", "0", "0", "-1", "0", "0", "0"]


def test_check_example(capsys):
    code, data = run_json(capsys, "check-example", "h3_lorentz")
    assert code == 0 and data["ok"] and "seconds" not in data
    code, data = run_json(capsys, "check-example", "3")
    assert code == 0 and data["example"] == "rxh3"
    assert run(capsys, "check-example", "99")[0] == 4
