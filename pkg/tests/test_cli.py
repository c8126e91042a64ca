import json

import pytest

from diskops import cli
from diskops import serialize as ser


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_verify_zero(capsys):
    code, out = run(capsys, "verify", "--a", "0,0", "--modes", "32")
    assert code == 0
    checks = json.loads(out)["results"]["checks"]
    assert all(c["residual"] <= 1e-13 for c in checks)


def test_verify_half(capsys):
    code, out = run(capsys, "verify", "--a", "0.5,0", "--modes", "128")
    assert code == 0 and json.loads(out)["summary"]["passed"]


def test_verify_near_boundary_exit_2(capsys):
    code, out = run(capsys, "verify", "--a", "0.95,0")
    assert code == 2
    assert "ResidualTooLarge" in json.loads(out)["summary"]["error"]


@pytest.mark.parametrize("argv", [["verify", "--modes", "8"], ["verify", "--a", "1.2,0"],
                                  ["verify", "--a", "x"], ["bogus"], ["geodesic", "--a", "0"]])
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == 64


def test_spectrum(capsys):
    code, out = run(capsys, "spectrum", "--a", "0.6,0")
    res = json.loads(out)["results"]
    assert code == 0 and res["eigenvalues_inside_gap"] == 0 and res["gap_edge"] == pytest.approx(0.8)


def test_angles_negative_b(capsys):
    code, out = run(capsys, "angles", "--a", "0.3,0", "--b", "-0.4,0")
    res = json.loads(out)["results"]
    assert code == 0
    assert sum(c >= 1 - 1e-6 for c in res["cosines"]) == 1


def test_geodesic(capsys):
    code, out = run(capsys, "geodesic", "--a-polar", "0.5,0")
    res = json.loads(out)["results"]
    assert code == 0
    assert res["endpoint_residual"] <= 1e-5 and res["normZ"] <= 1.5707963267948966


def test_sweep_csv(tmp_path):
    out = tmp_path / "s.csv"
    code = cli.main(["sweep", "--radii", "0.3", "--angles", "2", "--modes", "32", "--format", "csv",
                     "--out", str(out)])
    assert code == 0
    assert out.read_text().splitlines()[0] == "re_a,im_a,gap_edge,triple_norm,top_cosine"


def test_payload_deterministic(capsys):
    _, o1 = run(capsys, "spectrum", "--a", "0.3,0.1", "--modes", "32")
    _, o2 = run(capsys, "spectrum", "--a", "0.3,0.1", "--modes", "32")
    r1, r2 = json.loads(o1)["results"], json.loads(o2)["results"]
    assert ser.dumps(r1).encode() == ser.dumps(r2).encode()
