"""Command line surface, certificates and exit codes."""

import io
import json
import os
import subprocess
import sys

import pytest

from danielewski.certificates import dumps, emit_certificate, verify_certificate
from danielewski.cli import run_command
from danielewski.errors import CertificateError, VerificationError

R0 = {"variables": ["X", "Y", "Z"], "relation": "X^2+Y^3+Z^7", "designated": "X"}


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def rings(tmp_path):
    return {
        "A11": write(tmp_path, "A11.json", {**R0, "r": "x", "s": "y"}),
        "Ax2y": write(tmp_path, "Ax2y.json", {**R0, "r": "x^2", "s": "y"}),
        "Axz": write(tmp_path, "Axz.json", {**R0, "r": "x", "s": "z"}),
        "P1": write(tmp_path, "P1.json", {**R0, "r": "x*(x-1)", "s": "y"}),
        "P2": write(tmp_path, "P2.json", {**R0, "r": "x^2*(x-1)", "s": "y"}),
        "R0": write(tmp_path, "R0.json", R0),
        "bad": write(tmp_path, "bad.json", {**R0, "r": "x", "s": "x"}),
        "fam": write(tmp_path, "fam.json", {
            "params": ["t"], "images": {"X": "t^21*X", "Y": "t^14*Y", "Z": "t^6*Z"},
            "specializations": [1, 2, 3, -1]}),
    }


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_nf(rings):
    assert run("nf", rings["A11"], "x*u") == (0, "y*v + 1\n", "")
    assert run("nf", rings["R0"], "x^2")[1] == "-y^3 - z^7\n"


@pytest.mark.parametrize(
    "argv, code",
    [
        (("nf", "{A11}", "x**2"), 3),
        (("nf", "missing.json", "x"), 3),
        (("nf", "{bad}", "x"), 1),
        (("recognize-aut", "{A11}", "--image", "u=u+y"), 1),
        (("lift-aut", "{P1}", "--image", "X=-X"), 1),
        (("lnd-check", "{A11}", "--image", "u=u*y", "--image", "v=u*x", "--max-iter", "6"), 2),
        (("radical-pow", "{R0}", "X", "X*(X-1),Y", "--nmax", "4"), 2),
        (("stable-iso", "{A11}", "{Axz}", "--nmax", "2"), 2),
        (("nosuchcommand",), 3),
    ],
)
def test_exit_codes(rings, argv, code):
    argv = [a.format(**rings) for a in argv]
    assert run(*argv)[0] == code


@pytest.mark.parametrize(
    "argv",
    [
        ("gb", "{R0}", "X,Y"),
        ("member", "{R0}", "Z^7", "X,Y"),
        ("member", "{R0}", "X", "X^2,Y"),
        ("ideal-eq", "{R0}", "X,Y", "X,Y^2"),
        ("ideal-eq", "{R0}", "X,Y", "X,Y,Z^7"),
        ("radical-pow", "{R0}", "Z", "X,Y"),
        ("dim0", "{R0}", "X"),
        ("height2", "{A11}"),
        ("lnd-check", "{A11}"),
        ("lnd-exp", "{A11}", "--image", "u=z*y", "--image", "v=z*x"),
        ("recognize-aut", "{A11}", "--image", "u=u+y*z", "--image", "v=v+x*z"),
        ("lift-aut", "{Ax2y}", "--image", "X=-X"),
        ("conjugate", "{Ax2y}", "--t", "x*z+1"),
        ("conjugate", "{Ax2y}", "--params", "t", "--map", "X=t^21*X", "--map", "Y=t^14*Y",
         "--map", "Z=t^6*Z"),
        ("stable-iso", "{A11}", "{Ax2y}"),
        ("ongelijk", "{P1}", "{P2}", "--aut", "{fam}"),
        ("demo", "ss1", "2", "3", "1", "2"),
    ],
)
def test_certificates_verify(rings, tmp_path, argv):
    path = str(tmp_path / "cert.json")
    argv = [a.format(**rings) for a in argv]
    code, _, err = run(*argv, "--out", path)
    assert code == 0, err
    text = open(path, encoding="utf-8").read()
    assert text.endswith("\n")
    cert = json.loads(text)
    assert cert["verified"] is True
    assert dumps(cert) == text
    assert run("verify", path)[0] == 0


def test_conjugation_reports_lambda(rings):
    code, out, _ = run("conjugate", rings["Ax2y"], "--params", "t", "--map", "X=t^21*X",
                       "--map", "Y=t^14*Y", "--map", "Z=t^6*Z")
    assert code == 0
    assert json.loads(out)["data"]["multiple_of_E"] == "((1)/(t^56))"


def test_tampered_certificate_is_rejected(rings, tmp_path):
    path = str(tmp_path / "m.json")
    run("member", rings["R0"], "Z^7", "X,Y", "--out", path)
    cert = json.load(open(path))
    cert["data"]["cofactors"][0] = "X + 1"
    with pytest.raises(CertificateError):
        verify_certificate(cert)
    bad = write(tmp_path, "bad_cert.json", cert)
    assert run("verify", bad)[0] == 1


def test_tampered_stable_iso(rings, tmp_path):
    path = str(tmp_path / "s.json")
    run("stable-iso", rings["A11"], rings["Ax2y"], "--out", path)
    cert = json.load(open(path))
    cert["data"]["theta"]["T"] = "T2"
    with pytest.raises(CertificateError):
        verify_certificate(cert)


def test_unverified_certificates_are_not_emitted():
    with pytest.raises(VerificationError):
        emit_certificate({"kind": "gb", "verified": False})


def test_fm06_grid_demo():
    code, out, _ = run("demo", "fm06-grid")
    assert code == 0
    lines = out.splitlines()
    rows = lines[2:11]
    for i, row in enumerate(rows):
        cells = row.split("|")[1].split()
        assert cells == ["T" if j == i else "." for j in range(9)]
    assert "diagonal only: true" in out
    assert "ideals equal over QQ(t): false" in out
    assert "roundtrip_verified: true" in out


def test_dim0_reports_unit_ideal(rings):
    code, out, _ = run("dim0", rings["R0"], "X,X-1")
    data = json.loads(out)["data"]
    assert code == 0 and data["proper"] is False and data["groebner"]["basis"] == ["1"]


def test_selftest(rings):
    code, out, _ = run("selftest", rings["A11"], "--samples", "10", "--seed", "3")
    assert code == 0 and "0 failures" in out


def test_bit_stable_across_hash_seeds(rings, tmp_path):
    outputs = []
    for seed in ("0", "12345"):
        path = str(tmp_path / f"s{seed}.json")
        env = dict(os.environ, PYTHONHASHSEED=seed)
        subprocess.run(
            [sys.executable, "-m", "danielewski.cli", "stable-iso", rings["P1"], rings["P2"],
             "--out", path],
            check=True, env=env,
        )
        outputs.append(open(path, "rb").read())
    assert outputs[0] == outputs[1]
