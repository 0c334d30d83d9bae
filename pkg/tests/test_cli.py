import shlex
from pathlib import Path

import pytest

from typenfuzzy import DATA_DIR, FELIX_FDL
from typenfuzzy.cli import main

GOLDEN = Path(__file__).parent / "golden"
CASES = [line.split("\t") for line in (GOLDEN / "cases.txt").read_text().splitlines() if line]


def argv(cmd):
    return shlex.split(cmd.format(felix=FELIX_FDL, golden=GOLDEN, overlap=DATA_DIR / "overlap30.txt"))


def run(capsys, args):
    status = main(args)
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize("name,cmd", CASES, ids=[c[0] for c in CASES])
def test_golden(capsys, name, cmd):
    status, out, err = run(capsys, argv(cmd))
    assert status == 0, err
    assert out == (GOLDEN / f"{name}.out").read_text()


@pytest.mark.parametrize("name,cmd", CASES[:6], ids=[c[0] for c in CASES[:6]])
def test_deterministic(capsys, name, cmd):
    first = run(capsys, argv(cmd))
    assert run(capsys, argv(cmd)) == first


def test_check_clean(capsys):
    assert run(capsys, ["check", str(FELIX_FDL)]) == (0, "", "")


def test_check_reports_diagnostics(capsys):
    path = GOLDEN.parent / "corpus" / "invalid" / "partition_overlap.fdl"
    status, out, err = run(capsys, ["check", str(path)])
    assert status == 1 and out == ""
    assert f"{path}:10:12: PARTITION" in err


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.csv"
    status, out, _ = run(capsys, ["-o", str(target), "eval", str(FELIX_FDL), "--set", "young_type1", "--at", "27"])
    assert status == 0 and out == ""
    assert target.read_text() == "0.9\n"


def test_output_must_not_clobber_input(capsys, tmp_path):
    src = tmp_path / "f.fdl"
    src.write_text(FELIX_FDL.read_text())
    with pytest.raises(SystemExit) as info:
        main(["-o", str(src), "check", str(src)])
    assert info.value.code == 2
    assert src.read_text() == FELIX_FDL.read_text()


def test_numeric_selector_off_grid(capsys):
    status, out, _ = run(capsys, ["eval", str(FELIX_FDL), "--set", "young_type1", "--at", "43.5"])
    assert status == 0 and out == "0.45\n"


def test_domain(capsys):
    status, out, _ = run(capsys, ["domain", str(FELIX_FDL), "--set", "young_type2"])
    lines = out.splitlines()
    assert status == 0 and lines[0] == "set,element,value,top"
    assert "young_type2[1],27,27,0.57" in lines


def test_plot_needs_range(capsys):
    status, _, err = run(capsys, ["plot", str(FELIX_FDL), "--shape", "comfort"])
    assert status == 1 and "--from" in err
    status, out, _ = run(capsys, ["plot", str(FELIX_FDL), "--shape", "comfort", "--from", "15",
                                  "--to", "30", "--grid-size", "4"])
    assert out == "input,degree\n15,0\n20,0.8333333333333334\n25,0.8333333333333334\n30,0\n"


@pytest.mark.parametrize("args,needle", [
    (["eval", "{felix}", "--set", "old", "--at", "27"], "no fuzzy set named 'old'"),
    (["eval", "{felix}", "--set", "young_type1", "--at", "felix"], "not an element"),
    (["slice", "{felix}", "--set", "young_type1", "--at", "27"], "error:"),
    (["tally", "{felix}", "--world", "mars", "--log", "{felix}"], "no world named"),
    (["check", "/nonexistent.fdl"], "cannot read"),
])
def test_failures_exit_1(capsys, args, needle):
    status, out, err = run(capsys, [a.format(felix=FELIX_FDL) for a in args])
    assert status == 1 and needle in err


def test_unknown_outcome_in_log_exit_1(capsys, tmp_path):
    log = tmp_path / "bad.log"
    log.write_text("a\nz\n")
    status, _, err = run(capsys, ["tally", str(FELIX_FDL), "--world", "tf_crisp", "--log", str(log)])
    assert status == 1 and "'z'" in err


@pytest.mark.parametrize("args", [[], ["eval", str(FELIX_FDL)], ["frobnicate", "x"],
                                  ["plot", str(FELIX_FDL), "--shape", "comfort", "--grid-size", "0"]])
def test_usage_errors_exit_2(args):
    with pytest.raises(SystemExit) as info:
        main(args)
    assert info.value.code == 2
