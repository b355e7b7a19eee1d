import json
import subprocess
import sys

import pytest

from projplanes.cli import main
from projplanes.graph import complete, write_graph
from projplanes.pg import gf, pg2
from projplanes.plane import read_plane, write_plane

K3 = write_graph(complete(3))


@pytest.fixture
def files(tmp_path):
    (tmp_path / "k3.graph").write_text(K3)
    (tmp_path / "fano.plane").write_text(write_plane(pg2(gf(2))))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_encode_writes_plane_and_log(files, capsys):
    code, _ = run(capsys, "encode", "-i", files / "k3.graph", "-o", files / "k3.plane",
                  "--log", files / "k3.steplog")
    assert code == 0
    plane = read_plane((files / "k3.plane").read_text())
    assert len(plane.points) == 3 * 3 + 3 + 17
    assert (files / "k3.steplog").read_text().startswith("steplog v1\n")


def test_decode_round_trip(files, capsys):
    run(capsys, "encode", "-i", files / "k3.graph", "-o", files / "k3.plane")
    code, out = run(capsys, "decode", "-i", files / "k3.plane")
    assert code == 0
    assert out.out.count("\ne ") == 3


def test_check_pappus_on_fano(files, capsys):
    code, out = run(capsys, "check", "pappus", "-i", files / "fano.plane")
    assert code == 0 and "holds" in out.out


def test_check_desargues_violation_exit_code(files, capsys):
    code, out = run(capsys, "freeext", "-i", files / "fano.plane", "--levels", "0", "--desargues-search",
                    "-o", files / "same.plane")
    assert code == 2 and "projective" in out.err
    (files / "quad.plane").write_text("plane v1\np a\np b\np c\np d\n")
    code, out = run(capsys, "freeext", "-i", files / "quad.plane", "--levels", "0",
                    "--desargues-search", "-o", files / "q0.plane")
    assert code == 1 and "verdict noncollinear" in out.out


def test_check_axioms_machine_format(files, capsys):
    code, out = run(capsys, "check", "axioms", "-i", files / "fano.plane", "--projective", "--format", "machine")
    assert code == 0
    assert json.loads(out.out)["ok"] is True


def test_iso_and_aut(files, capsys):
    text = (files / "fano.plane").read_text()
    (files / "copy.plane").write_text(text.replace("(", "[").replace(")", "]"))
    code, out = run(capsys, "iso", files / "fano.plane", files / "copy.plane")
    assert code == 0 and out.out.startswith("iso v1\n")
    run(capsys, "encode", "-i", files / "k3.graph", "-o", files / "k3.plane")
    code, out = run(capsys, "iso", files / "fano.plane", files / "k3.plane")
    assert code == 1 and out.out == "none\n"
    code, out = run(capsys, "aut", files / "fano.plane")
    assert code == 0 and "order 168" in out.out


def test_peel_and_plus(files, capsys):
    code, out = run(capsys, "peel", "-i", files / "fano.plane")
    assert code == 0 and "pass plane is confined" in out.out
    code, out = run(capsys, "plus", "-i", files / "k3.graph", "--budget", "2", "--line-stages", "1",
                    "-o", files / "p.plane", "--log", files / "p.stagelog", "--scan")
    assert code == 0 and "t=4" in out.out
    assert (files / "p.stagelog").read_text().endswith("truncated true\n")


def test_pg2_and_moduli(files, capsys):
    code, out = run(capsys, "pg2", "--show-modulus")
    assert code == 0 and "4 x^2 + x + 1" in out.out
    code, _ = run(capsys, "pg2", "--q", "3", "-o", files / "pg3.plane")
    assert code == 0 and len(read_plane((files / "pg3.plane").read_text()).points) == 13


def test_validate_assets(capsys):
    code, out = run(capsys, "validate-assets")
    assert code == 0 and out.out.endswith("verdict ok\n")


@pytest.mark.parametrize("argv", [["pg2", "--q", "6"], ["pg2"], ["decode", "-i", "/nonexistent"]])
def test_input_errors_exit_2(argv, capsys):
    code, out = run(capsys, *argv)
    assert code == 2 and out.err.startswith("error:")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 2


def test_console_script_runs(files):
    proc = subprocess.run([sys.executable, "-m", "projplanes.cli", "check", "pappus", "-i",
                           str(files / "fano.plane")], capture_output=True, text=True)
    assert proc.returncode == 0 and "verdict holds" in proc.stdout
