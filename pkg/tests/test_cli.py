import json
import subprocess
import sys

import pytest

from arithrand.boolfun import Anf
from arithrand.cli import main
from arithrand.sequence import BitSequence


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_gen_legendre(capsys):
    assert run(capsys, "gen", "--kind", "legendre", "--p", "5", "--length", "9")[:2] == (0, "011000110\n")


def test_gen_liouville(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "liouville", "--length", "10")
    assert (code, out) == (0, "0110101100\n")


def test_gen_raw_file(capsys, tmp_path):
    code, _, _ = run(capsys, "gen", "--kind", "legendre", "--p", "101", "--length", "500",
                     "--format", "raw", "--out-dir", str(tmp_path), "--out", "l101.bin")
    assert code == 0
    seq = BitSequence.load(tmp_path / "l101.bin")
    assert len(seq) == 500 and seq.term(101) == 0


def test_gen_patched(capsys):
    code, out, _ = run(capsys, "gen", "--kind", "legendre", "--p", "5", "--length", "20", "--patched")
    assert code == 0 and out[9] == str(1 - int(out[4]))


def test_out_escape_rejected(capsys, tmp_path):
    code, _, err = run(capsys, "gen", "--kind", "liouville", "--length", "5",
                       "--out-dir", str(tmp_path), "--out", "../x.txt")
    assert code == 2 and "escapes" in err
    assert not (tmp_path.parent / "x.txt").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--kind", "legendre", "--length", "5"],
        ["gen", "--kind", "liouville", "--p", "5", "--length", "5"],
        ["gen", "--kind", "legendre", "--p", "9", "--length", "5"],
        ["gen", "--kind", "liouville", "--length", "0"],
        ["anf", "--kind", "liouville"],
        ["corr", "--kind", "liouville", "--n", "5", "--k", "2", "--shifts", "3,1"],
    ],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith(f"usage: ") and argv[0] in err.splitlines()[0]


def test_argparse_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--kind", "nonsense", "--length", "3"])
    assert exc.value.code == 2


def test_capacity_exit_code(capsys):
    code, _, err = run(capsys, "anf", "--kind", "f2-liouville", "--r", "25")
    assert code == 3 and "capacity" in err


def test_budget_exit_code(capsys):
    code, _, _ = run(capsys, "corr", "--kind", "liouville", "--n", "500", "--k", "3", "--budget", "1000")
    assert code == 3


def test_anf_dump(capsys):
    code, out, err = run(capsys, "anf", "--kind", "legendre", "--p", "5", "--c", "1")
    assert code == 0
    a, meta = Anf.parse(out)
    assert a.monomials() == [0, 1, 3]
    assert meta["kind"] == "legendre-5"
    assert "deg=2 spr=3" in err


def test_anf_report(capsys):
    code, out, _ = run(capsys, "anf", "--report", "--p-max", "20")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "p,r,class_mod8,nqr,c,deg,spr"
    assert "5,2,5,2,1,2,3" in lines
    assert len(lines) == 1 + 2 * 7


def test_lcprofile(capsys):
    code, out, _ = run(capsys, "lcprofile", "--kind", "legendre", "--p", "5", "--length", "9")
    assert code == 0
    assert [l.split(",")[1] for l in out.splitlines()[1:]] == ["0", "2", "2", "2", "3", "3", "4", "4", "4"]


def test_lcprofile_from_input(capsys, tmp_path):
    path = tmp_path / "s.txt"
    path.write_text("0001\n")
    code, out, _ = run(capsys, "lcprofile", "--input", str(path), "--length", "4")
    assert code == 0 and out.splitlines()[-1] == "4,4,4"


def test_lattice_and_corr(capsys):
    assert run(capsys, "lattice", "--kind", "liouville", "--n", "40")[1].startswith("N=40 level=")
    code, out, _ = run(capsys, "corr", "--kind", "legendre", "--p", "101", "--n", "100", "--k", "2")
    assert code == 0 and out.startswith("k=2 N=100 C=")


def test_verify_pass(capsys):
    code, out, err = run(capsys, "verify", "--suite", "lc-exact", "--suite", "carlitz", "--p-max", "200")
    assert code == 0
    report = json.loads(out)
    assert report["passed"] and [s["name"] for s in report["suites"]] == ["lc-exact", "carlitz"]
    assert err.count("[PASS]") == 2


def test_verify_failure_exit_code(capsys):
    code, out, err = run(capsys, "verify", "--suite", "corollary2", "--p-max", "20")
    assert code == 1
    assert "[FAIL] corollary2" in err and "witness=" in err


def test_verify_help_lists_suites(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--help"])
    out = capsys.readouterr().out
    for name in ("lc-exact", "theorem4", "corollary3", "theorem1", "carlitz", "prop-cross"):
        assert name in out


def test_figure_cli(capsys, tmp_path):
    code, _, err = run(capsys, "figure", "--id", "3", "--p", "103", "--out-dir", str(tmp_path))
    assert code == 0
    assert len(list((tmp_path / "figure3").glob("*/data.csv"))) == 1
    code, _, err = run(capsys, "figure", "--id", "3", "--p", "103", "--out-dir", str(tmp_path))
    assert "(cached)" in err


def test_nqr_dist_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "nqr-dist", "--x", "1000", "--out-dir", str(tmp_path))
    assert code == 0 and out.startswith("k,p_k,count,observed,predicted")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "arithrand", "gen", "--kind", "legendre", "--p", "3",
                           "--length", "6"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "010010\n"
