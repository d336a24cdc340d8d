import json
from fractions import Fraction as F

import pytest

from bianchi import GroupElem, Point, ReductionCertificate, context, in_fundamental_domain
from bianchi.cli import main
from oracles import exhaustive_group_counts


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_reduce_witness_point(capsys):
    code, out, _ = run(capsys, "reduce", "--d", "1", "--z", "7/4", "0", "--t", "1/4")
    assert code == 0
    obj = json.loads(out)
    assert obj["D_sq"] == "16"
    assert obj["bound_ok"] is True
    cert = ReductionCertificate.from_json(1, obj)
    assert in_fundamental_domain(context(1), cert.image)


def test_reduce_identity(capsys):
    code, out, _ = run(capsys, "reduce", "--d", "2", "--z", "0", "0", "--t2", "4")
    assert code == 0
    obj = json.loads(out)
    assert obj["branch"] == "already_in_F"
    assert obj["height_sq"] == "1"


def test_reduce_general_point(capsys):
    code, out, _ = run(
        capsys, "reduce", "--d", "5", "--z", "1/3", "1/7", "--t2", "1/50"
    )
    assert code == 0
    assert json.loads(out)["bound_ok"] is True


def test_reduce_exit_codes(capsys):
    code, _, err = run(capsys, "reduce", "--d", "4", "--z", "0", "0", "--t2", "1")
    assert code == 2 and "squarefree" in err
    code, _, _ = run(capsys, "reduce", "--d", "1", "--z", "x", "0", "--t2", "1")
    assert code == 3
    code, _, _ = run(capsys, "reduce", "--d", "1", "--z", "0", "0", "--t2", "-1")
    assert code == 3
    code, _, _ = run(capsys, "reduce", "--d", "1", "--z", "0", "0")
    assert code == 3


def test_verify_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "reduce", "--d", "1", "--z", "7/4", "0", "--t", "1/4")
    path = tmp_path / "cert.json"
    path.write_text(out)
    code, out2, _ = run(capsys, "verify", "--d", "1", "--file", str(path))
    assert code == 0
    assert json.loads(out2)["verified"] is True


def test_verify_detects_tampering(capsys, tmp_path):
    _, out, _ = run(capsys, "reduce", "--d", "1", "--z", "7/4", "0", "--t", "1/4")
    obj = json.loads(out)
    obj["height_sq"] = "1000000"
    path = tmp_path / "cert.json"
    path.write_text(json.dumps(obj))
    code, out2, _ = run(capsys, "verify", "--d", "1", "--file", str(path))
    assert code == 1
    assert json.loads(out2)["verified"] is False


def test_reduce_form(capsys):
    code, out, _ = run(
        capsys, "reduce-form", "--d", "1", "--a", "2", "--b", "0", "1", "--dd", "1"
    )
    assert code == 0
    obj = json.loads(out)
    f_red = obj["f_red"]
    disc = f_red["a"] * f_red["dd"] - (
        context(1).alg(*f_red["b"]).norm()
    )
    assert disc == 1  # discriminant preserved
    code, _, _ = run(
        capsys, "reduce-form", "--d", "1", "--a", "1", "--b", "1", "1", "--dd", "1"
    )
    assert code == 4


def test_membership(capsys):
    code, out, _ = run(capsys, "membership", "--d", "1", "--z", "7/4", "0", "--t2", "1/16")
    assert code == 0
    obj = json.loads(out)
    assert obj["in_B"] is False and obj["in_F"] is False
    assert obj["m_star"] == "1/8"


def test_count_row_matches_oracle(capsys):
    code, out, _ = run(capsys, "count", "--d", "1", "--tsq", "1")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "T_sq,N,N_tilde,X"
    n_oracle, nt_oracle = exhaustive_group_counts(1, 1)
    assert lines[1] == f"1,{n_oracle},{nt_oracle},6"
    fit = json.loads(lines[2])
    assert fit["slope_N"] is None and fit["rows"] == 1


def test_count_fit_output(capsys):
    code, out, _ = run(capsys, "count", "--d", "1", "--tsq", "4,9,16,25,36")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 7
    fit = json.loads(lines[-1])
    assert fit["rows"] == 5 and 2.5 < fit["slope_N"] < 5.5
    code, _, _ = run(capsys, "count", "--d", "1", "--tsq", "")
    assert code == 3


def test_sharpness_rows(capsys):
    code, out, _ = run(capsys, "sharpness", "--n-max", "10")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "n,height_sq,D_sq,ratio"
    assert lines[1] == "2,9,16,3/16"
    assert lines[9] == "10,9801,400,99/400"
    ratios = [F(line.split(",")[3]) for line in lines[1:]]
    assert all(F(1, 8) < r < F(1, 4) for r in ratios)
    assert ratios == sorted(ratios)


def test_determinism(capsys):
    _, out1, _ = run(capsys, "reduce", "--d", "3", "--z", "5/3", "-7/9", "--t2", "2/7")
    _, out2, _ = run(capsys, "reduce", "--d", "3", "--z", "5/3", "-7/9", "--t2", "2/7")
    assert out1 == out2
    _, out1, _ = run(capsys, "count", "--d", "2", "--tsq", "1,4,9")
    _, out2, _ = run(capsys, "count", "--d", "2", "--tsq", "9,4,1,4")
    assert out1 == out2  # grid is sorted and deduplicated
