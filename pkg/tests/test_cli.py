import json
import math
import subprocess
import sys

import pytest

from quatmod import cli
from quatmod.fixtures import matrix_to_json
from quatmod.qalg import MatQuat, QuatAlgebra


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_gamma_and_ck(capsys):
    code, doc = run(capsys, "gamma", "--m", "2", "--s", "3")
    assert code == 0 and abs(doc["value"][0] - 2 * math.pi ** 2) < 1e-10
    code, doc = run(capsys, "ck", "--n", "2", "--k", "5", "--s", "5")
    assert code == 0 and abs(doc["value"][0] - math.pi / 9) < 1e-14
    assert doc["flags"]["modulo_algebraic_factor"] is True


def test_exponent_commands(capsys):
    code, doc = run(capsys, "exponent", "--n", "2", "--k", "5", "--mu", "4")
    assert code == 0 and doc["value"] == "15"
    code, doc = run(capsys, "exponent", "--kind", "nearly-holo", "--m", "2", "--l", "6", "--mu", "4")
    assert doc["value"] == {"alpha": 4, "beta": 18}
    code, doc = run(capsys, "exponent", "--n", "2", "--k", "3", "--mu", "3")
    assert code == 3 and doc["error"] == "precondition"
    code, _ = run(capsys, "exponent", "--mu", "3")
    assert code == 2


def test_lvalue(capsys, tmp_path):
    code, doc = run(capsys, "lvalue", "--s", "2")
    assert code == 0 and abs(doc["value"][0] - math.pi ** 2 / 6) < 1e-4
    code, doc = run(capsys, "lvalue", "--s", "2", "--chi-modulus", "4", "--chi-table", "[1, -1]",
                    "--pmax", "20000")
    assert abs(doc["value"][0] - 0.915965594177219) < 1e-4
    sat = tmp_path / "sat.json"
    sat.write_text(json.dumps({"n": 1, "k": 0, "level": 1,
                               "satake": {str(p): [1] for p in (2, 3, 5, 7, 11, 13)}}))
    code, doc = run(capsys, "lvalue", "--s", "4", "--fixture", str(sat), "--pmax", "13", "--variant", "s_dependent")
    assert code == 0 and doc["flags"]["euler_factor_variant"] == "s_dependent"
    code, doc = run(capsys, "lvalue", "--s", "1")
    assert code == 3


def test_pfaffian_command(capsys, tmp_path):
    code, doc = run(capsys, "pfaffian", "--size", "6", "--seed", "3")
    assert code == 0 and doc["residual_pf2_minus_det"] < 1e-8
    m = tmp_path / "a.json"
    m.write_text(json.dumps([[0, 2], [-2, 0]]))
    code, doc = run(capsys, "pfaffian", "--matrix", str(m))
    assert doc["value"] == [2.0, 0.0]
    m.write_text(json.dumps([[1, 2], [-2, 0]]))
    assert run(capsys, "pfaffian", "--matrix", str(m))[0] == 3


def test_coset_and_rho(capsys):
    code, doc = run(capsys, "coset", "--t", "1", "--m", "1", "--r", "0")
    assert code == 0 and doc["member_of_G_N"] is True
    assert doc["value"]["matrix"][2][1] == ["1", "0", "0", "0"]
    code, doc = run(capsys, "coset", "--t", "1", "--m", "1", "--r", "1", "--modified")
    assert code == 0 and doc["member_of_G_N"]
    code, doc = run(capsys, "embed-rho", "--m", "1", "--r", "1", "--seed", "5")
    assert code == 0 and doc["identity_R_omega_R"] and doc["member_of_G_N"]
    assert run(capsys, "coset", "--t", "2", "--m", "1")[0] == 3


def test_embed_rho_rejects_non_member(capsys, tmp_path):
    alg = QuatAlgebra(-1, -3)
    g = tmp_path / "g.json"
    g.write_text(json.dumps(matrix_to_json(MatQuat.identity(alg, 2).scale(2))))
    code, doc = run(capsys, "embed-rho", "--m", "1", "--g1", str(g))
    assert code == 3 and doc["type"] == "GroupError"


def test_embed_iota(capsys, tmp_path):
    code, doc = run(capsys, "embed-iota", "--m", "1", "--r", "1", "--seed", "2")
    assert code == 0
    assert doc["residuals"]["delta_identity"] < 1e-8
    z = tmp_path / "z.json"
    z.write_text(json.dumps({"matrix": [[[0, 1], [0, 0]], [[0, 0], [0, 1]]]}))
    code, doc = run(capsys, "embed-iota", "--m", "1", "--z1", str(z), "--z2", str(z))
    assert code == 0 and doc["value"]["matrix"][0][0] == pytest.approx([0.0, 1.0])
    z.write_text(json.dumps({"matrix": [[[0, -1], [0, 0]], [[0, 0], [0, -1]]]}))
    assert run(capsys, "embed-iota", "--m", "1", "--z1", str(z))[0] == 3


def test_fourier_commands(capsys, tmp_path):
    alg = QuatAlgebra(-1, -3)
    h = tmp_path / "h.json"
    h.write_text(json.dumps(matrix_to_json(MatQuat.identity(alg, 1))))
    code, doc = run(capsys, "fourier", "--m", "1", "--l", "3", "--h", str(h))
    assert code == 0 and abs(doc["value"][0] - math.exp(-2 * math.pi)) < 1e-15
    assert doc["flags"]["modulo_A_n"] is True and doc["positivity"] == "positive_definite"
    h.write_text(json.dumps(matrix_to_json(MatQuat(alg, [[-1]]))))
    code, doc = run(capsys, "fourier", "--m", "1", "--l", "3", "--h", str(h))
    assert doc["value"] == [0.0, 0.0]
    code, doc = run(capsys, "fourier-sum", "--m", "1", "--l", "3", "--bound", "0")
    assert doc["value"] == [0.0, 0.0] and doc["terms"] == 0
    code, doc = run(capsys, "fourier-sum", "--m", "2", "--l", "4", "--bound", "3")
    assert code == 0 and doc["terms"] > 0
    assert run(capsys, "fourier", "--m", "1", "--l", "1", "--h", str(h))[0] == 3


def test_verify_suite_and_usage(capsys):
    code, doc = run(capsys, "verify", "qalg", "--seed", "1")
    assert code == 0 and doc["failures"] == 0 and doc["cases_run"] > 0
    code, doc = run(capsys, "verify", "bogus")
    assert code == 2 and doc["error"] == "usage"
    assert run(capsys, "nonexistent")[0] == 2


def test_human_summary_goes_to_stderr(capsys):
    assert cli.main(["gamma", "--m", "1", "--s", "4", "--human"]) == 0
    cap = capsys.readouterr()
    json.loads(cap.out)
    assert cap.err.startswith("Gamma_1")


def test_same_seed_gives_identical_bytes():
    cmd = [sys.executable, "-m", "quatmod", "verify", "all", "--seed", "42", "--pmax", "20000"]
    a = subprocess.run(cmd, capture_output=True, env={"QUATMOD_THREADS": "4", "PATH": ""})
    b = subprocess.run(cmd, capture_output=True, env={"QUATMOD_THREADS": "1", "PATH": ""})
    assert a.returncode == 0, a.stdout[-2000:]
    assert a.stdout == b.stdout
