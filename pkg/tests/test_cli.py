import json
import subprocess
import sys
from pathlib import Path

import pytest

from ncomplexes import PrimeField, indecomposable, random_ncomplex
from ncomplexes.cli import main
from ncomplexes.decompose import decompose
from ncomplexes.document import dumps, loads
from ncomplexes.ncomplex import SummandMultiset

GOLDEN = Path(__file__).parent / "golden"


def cli(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    f7 = PrimeField(7)

    def put(name, M):
        path = tmp_path / name
        path.write_text(dumps(M))
        return str(path)

    return f7, put, tmp_path


def test_validate_ok_and_violation(capsys):
    assert cli(["validate", str(GOLDEN / "m3_0_2.json")], capsys)[0] == 0
    code, out, _ = cli(["--json", "validate", str(GOLDEN / "bad_d2.json")], capsys)
    assert code == 2
    report = json.loads(out)
    assert report["status"] == "invalid" and report["result"] == {"kind": "nilpotency", "degree": 0}


def test_malformed_inputs_exit_1(capsys, tmp_path):
    assert cli(["validate", str(GOLDEN / "truncated.json")], capsys)[0] == 1
    assert cli(["validate", str(tmp_path / "missing.json")], capsys)[0] == 1
    code, _, err = cli(["decompose", str(GOLDEN / "truncated.json")], capsys)
    assert code == 1 and "invalid JSON" in err
    with pytest.raises(SystemExit) as exc:
        main(["ext", "a.json", "b.json"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_stdin(capsys, monkeypatch):
    text = (GOLDEN / "m3_0_1.json").read_text()
    code, out, _ = cli(["decompose", "-"], capsys, stdin=text, monkeypatch=monkeypatch)
    assert code == 0 and out == "M[0]^1 x 1\n"


def test_ah_messages(capsys, files):
    f7, put, _ = files
    code, out, _ = cli(["ah", put("p.json", indecomposable(f7, 3, 4, 2))], capsys)
    assert code == 0 and out == "acyclic (projective/injective)\n"
    from ncomplexes import NComplex
    code, out, _ = cli(["ah", put("z.json", NComplex.zero(f7, 3))], capsys)
    assert code == 0 and out == "zero complex: empty table\n"
    code, out, _ = cli(["ah", "--json", put("m.json", indecomposable(f7, 3, 0, 1))], capsys)
    assert json.loads(out)["result"]["entries"] == [{"i": 0, "a": 2, "dim": 1}, {"i": 1, "a": 1, "dim": 1}]


def test_random_then_validate_then_decompose(capsys, files):
    _, _, tmp = files
    for seed in range(5):
        out_path = str(tmp / f"r{seed}.json")
        code, out, _ = cli(["random", "--N", "4", "--p", "13", "--seed", str(seed), "--window", "-1", "3",
                            "--max", "6", "-o", out_path], capsys)
        assert code == 0
        truth = out.splitlines()[1:]
        assert cli(["validate", out_path], capsys)[0] == 0
        code, out, _ = cli(["decompose", out_path], capsys)
        assert out.splitlines() == truth


def test_random_is_deterministic(capsys):
    argv = ["random", "--N", "3", "--p", "5", "--seed", "9"]
    assert cli(argv, capsys)[1] == cli(argv, capsys)[1]


def test_tensor_auto_then_decompose(capsys, files):
    f7, put, tmp = files
    a, b = put("a.json", indecomposable(f7, 3, 0, 0)), put("b.json", indecomposable(f7, 3, 2, 0))
    out_path = str(tmp / "t.json")
    assert cli(["tensor", a, b, "--q", "auto", "-o", out_path], capsys)[0] == 0
    assert decompose(loads(Path(out_path).read_text())) == SummandMultiset({(2, 0): 1})
    assert cli(["decompose", out_path], capsys)[1] == "M[2]^0 x 1\n"


def test_tensor_q_errors(capsys, files):
    f7, put, _ = files
    a = put("a.json", indecomposable(f7, 3, 0, 1))
    assert cli(["tensor", a, a, "--q", "6"], capsys)[0] == 2
    assert cli(["tensor", a, a, "--q", "2"], capsys)[0] == 0
    assert cli(["tensor", a, a, "--q", "two"], capsys)[0] == 1
    f4 = put("f4.json", indecomposable(PrimeField(5), 3, 0, 0))
    assert cli(["tensor", f4, f4], capsys)[0] == 2  # no cube root of unity in F_5


def test_mismatched_inputs_exit_2(capsys, files):
    f7, put, _ = files
    a = put("a.json", indecomposable(f7, 3, 0, 1))
    b = put("b.json", indecomposable(f7, 4, 0, 1))
    assert cli(["hom", a, b], capsys)[0] == 2
    neg = put("neg.json", indecomposable(f7, 3, -1, 1))
    assert cli(["ext", neg, a, "-n", "1"], capsys)[0] == 2
    assert cli(["ext", a, a, "-n", "-1"], capsys)[0] == 1


def test_contract_canonical(capsys, files):
    f7, put, _ = files
    m = put("m.json", indecomposable(f7, 4, 0, 2))
    code, out, _ = cli(["contract", m, "-e", "5", "-a", "1", "--canonical"], capsys)
    assert code == 0 and loads(out).N == 2
    assert cli(["contract", m, "-e", "0", "-a", "4"], capsys)[0] == 2


def test_fusion_command(capsys):
    code, out, _ = cli(["fusion", "--N", "4", "--p", "5", "1", "2", "0", "3"], capsys)
    assert code == 0 and out == "M[1]^3 x 1, M[2]^3 x 1, M[3]^3 x 1\n"
    assert cli(["fusion", "--N", "3", "--p", "5", "0", "1", "0", "1"], capsys)[0] == 2
    assert cli(["fusion", "--N", "3", "--p", "7", "0", "3", "0", "1"], capsys)[0] == 1


def test_hom_ext_agree_with_library(capsys, files):
    f7, put, _ = files
    from ncomplexes.homext import ext_dim, hom_dim
    A, _ = random_ncomplex(f7, 3, (0, 3), 4, 1)
    B, _ = random_ncomplex(f7, 3, (0, 3), 5, 2)
    a, b = put("a.json", A), put("b.json", B)
    assert cli(["hom", a, b], capsys)[1] == f"{hom_dim(A, B)}\n"
    assert json.loads(cli(["ext", a, b, "-n", "2", "--json"], capsys)[1])["result"]["ext_dim"] == ext_dim(A, B, 2)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ncomplexes", "fusion", "--N", "3", "--p", "7", "0", "1", "0", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "M[0]^2 x 1, M[1]^0 x 1\n"
