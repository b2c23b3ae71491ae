import json

import pytest

from liefusion.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_rootsys_json(capsys):
    code, out = run(capsys, "rootsys", "--algebra", "G2")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "liefusion/1"
    assert data["cartan_matrix"] == [[2, -1], [-3, 2]]
    assert data["dual_coxeter"] == 4


def test_weights_listing(capsys):
    code, out = run(capsys, "weights", "--algebra", "C2", "--level", "1")
    data = json.loads(out)
    assert code == 0
    assert len(data["admissible"]) == 3
    assert data["admissible"][0]["conformal_weight"] == "0"


def test_fusion_example(capsys):
    code, out = run(
        capsys, "fusion", "--algebra", "C2", "--level", "2",
        "--charge", "1,0", "--source", "0,1", "--target", "1,1",
    )
    data = json.loads(out)
    assert code == 0
    assert data["rule"] == data["oracle"] == 1
    assert data["agree"] is True


def test_fusion_unsupported_charge(capsys):
    code, out = run(
        capsys, "fusion", "--algebra", "G2", "--level", "2",
        "--charge", "0,1", "--source", "0,0", "--target", "0,1",
    )
    data = json.loads(out)
    assert code == 0
    assert data["rule"] is None
    assert data["oracle"] == 1
    assert data["agree"] is None


def test_tensor_three_routes(capsys):
    code, out = run(
        capsys, "tensor", "--algebra", "G2",
        "--charge", "1,0", "--source", "1,0", "--target", "1,0",
    )
    data = json.loads(out)
    assert code == 0 and data["agree"] is True


def test_tensor_graph_dot_and_json(capsys):
    code, out = run(capsys, "tensor-graph", "--height", "1")
    assert code == 0
    assert out.startswith("graph")
    assert '"1,0" -- "1,0"' in out
    code, out = run(capsys, "tensor-graph", "--height", "2", "--json")
    data = json.loads(out)
    assert [0, 0] in data["nodes"]


def test_lattice_commands(tmp_path, capsys):
    gram = tmp_path / "gram.json"
    gram.write_text("[[2]]")
    code, out = run(capsys, "lattice", "--gram", str(gram), "--op", "cocycle")
    assert code == 0
    assert json.loads(out)["basis_values"] == [[1]]
    code, out = run(
        capsys, "lattice", "--gram", str(gram), "--op", "fusion",
        "--charge", "1/2", "--source", "1/2", "--target", "1",
    )
    assert json.loads(out)["fusion"] == 1
    code, out = run(capsys, "lattice", "--gram", str(gram), "--op", "dual")
    assert json.loads(out)["dual_basis"] == [["1/2"]]


def test_probe_small(capsys):
    code, out = run(
        capsys, "probe", "--charge", "1", "--norm", "1",
        "--order", "0", "--cutoffs", "3,5", "--modes", "2",
    )
    data = json.loads(out)
    assert code == 0 and data["verdict"] == "PASS"


def test_compress_check(capsys):
    code, out = run(
        capsys, "compress-check", "--algebra", "C2", "--level", "2",
        "--charge", "1,0", "--source", "1,0", "--target", "2,0",
        "--shift", "1,0", "--source1", "0,0", "--target1", "1,0",
        "--sublevel", "1",
    )
    data = json.loads(out)
    assert code == 0
    assert data["reduction_conditions"]["a"] is True


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["fusion", "--algebra", "C2"])
    assert exc.value.code == 2
    code = main(["fusion", "--algebra", "C2", "--level", "2", "--charge", "9,9",
                 "--source", "0,0", "--target", "0,0"])
    assert code == 2


def test_verify_e8_report(capsys):
    code, out = run(capsys, "verify-e8", "--seed", "7")
    data = json.loads(out)
    assert code == 0
    assert data["passed"] is True
    claims = {r["claim"]: r for r in data["results"]}
    assert claims["adjoint-branching"]["status"] == "pass"
    anchors = [r["anchor"] for r in data["results"]]
    assert len(anchors) == len({r["claim"] for r in data["results"]})
