import io
import subprocess
import sys

import pytest

from pmc_phylo import cli
from pmc_phylo.formats import parse_character_matrix, parse_matrix

from conftest import GOLDEN_CSV

VARIANT_CSV = """taxon,chi1,chi2,chi3,chi4
a,0,0,?,?
b,0,1,?,?
c,0,?,0,?
d,0,?,1,?
e,0,?,?,0
f,0,?,?,1
g,1,0,?,?
h,1,1,?,?
i,2,?,0,?
j,2,?,1,?
k,3,?,?,0
l,3,?,?,1
"""


def run(*argv):
    out = io.StringIO()
    code = cli.main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def files(tmp_path):
    golden = tmp_path / "golden.csv"
    golden.write_text(GOLDEN_CSV)
    variant = tmp_path / "variant.csv"
    variant.write_text(VARIANT_CSV)
    weights = tmp_path / "w.txt"
    weights.write_text("chi1 2\n")
    return golden, variant, weights


def test_variant_csv_is_the_split_set():
    cs = parse_character_matrix(VARIANT_CSV)
    assert [len(c) for c in cs.characters] == [4, 2, 2, 2]


def test_solve(files):
    golden, variant, _ = files
    code, text = run("solve", str(golden))
    assert code == 0 and text.strip().endswith(";")
    code, text = run("solve", str(variant))
    assert code == 1 and text.strip() == "INCOMPATIBLE"


def test_solve_with_oracle(files):
    golden, variant, _ = files
    assert run("--oracle", "solve", str(golden))[0] == 0
    assert run("--oracle", "solve", str(variant))[0] == 1


def test_solve_from_stdin(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(GOLDEN_CSV))
    code, text = run("solve", "-")
    assert code == 0 and text.endswith(";\n")


def test_maxcompat(tmp_path):
    m = tmp_path / "m.csv"
    m.write_text("taxon,x,y\na,0,0\nb,0,1\nc,1,0\nd,1,1\n")
    w = tmp_path / "w.txt"
    w.write_text("y 3\n")
    code, text = run("--oracle", "maxcompat", str(m), "--weights", str(w))
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == "characters: y" and lines[1] == "weight: 3"
    code, _ = run("maxcompat", str(m))
    assert code == 0


def test_maxcompat_rejects_multi_state(files):
    golden, _, _ = files
    assert run("maxcompat", str(golden))[0] == 2


def test_unique(files, tmp_path):
    golden, variant, _ = files
    code, text = run("--oracle", "unique", str(golden))
    assert code == 1 and text.strip() == "NotTernary"
    code, text = run("unique", str(variant))
    assert code == 1 and text.strip() == "NoPerfectPhylogeny"
    pinned = tmp_path / "pinned.csv"
    pinned.write_text("taxon,q,pa,pb,pc,pd\na,0,0,1,?,1\nb,0,1,0,1,?\nc,1,1,1,0,1\nd,1,?,?,1,0\n")
    code, text = run("--oracle", "unique", str(pinned))
    assert code == 0
    assert text.splitlines()[0] == "Unique" and text.splitlines()[1].endswith(";")


def test_stats(files):
    golden, _, weights = files
    code, text = run("--oracle", "stats", str(golden), "--weights", str(weights))
    assert code == 0
    rows = dict(line.split(": ", 1) for line in text.splitlines())
    assert rows["vertices"] == "10"
    assert rows["pmc_bound_holds"] == "yes"
    assert rows["mfi_indicator"] == "0" and rows["mfi_weighted"] == "0"
    assert rows["separators"] == rows["oracle_separators"]
    assert rows["pmcs"] == rows["oracle_pmcs"]
    assert rows["oracle_mfi_indicator"] == "0"
    assert float(rows["seconds"]) >= 0


def test_gen_is_deterministic(tmp_path):
    code, a = run("gen", "--taxa", "8", "--chars", "5", "--seed", "7", "--missing", "0.2")
    _, b = run("gen", "--taxa", "8", "--chars", "5", "--seed", "7", "--missing", "0.2")
    _, c = run("gen", "--taxa", "8", "--chars", "5", "--seed", "8", "--missing", "0.2")
    assert code == 0 and a == b != c
    m = parse_matrix(a)
    assert len(m.taxa) == 8 and len(m.names) == 5
    target = tmp_path / "out.csv"
    assert run("gen", "--taxa", "8", "--chars", "5", "--seed", "7", "--missing", "0.2",
               "-o", str(target))[0] == 0
    assert target.read_text() == a


def test_gen_tree_model_is_compatible(monkeypatch):
    for seed in range(5):
        _, text = run("gen", "--taxa", "9", "--chars", "6", "--states", "3", "--model", "tree",
                      "--seed", str(seed))
        monkeypatch.setattr(sys, "stdin", io.StringIO(text))
        assert run("solve", "-")[0] == 0


def test_pig_dot(files):
    golden, _, _ = files
    code, text = run("pig", "--dot", str(golden))
    assert code == 0 and text.count("label=") == 10
    code, text = run("pig", "--dot", "--fill", str(golden))
    assert code == 0


@pytest.mark.parametrize("argv", [[], ["bogus"], ["solve"], ["solve", "x", "--nope"],
                                  ["gen", "--taxa", "3"], ["pig", "x.csv"]])
def test_usage_errors_exit_2(argv, capsys):
    assert cli.main(argv, io.StringIO()) == 2


def test_input_errors_exit_2(tmp_path, files, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("taxon,x\na,0\na,1\n")
    assert run("solve", str(bad))[0] == 2
    assert "duplicate taxon" in capsys.readouterr().err
    assert run("solve", str(tmp_path / "missing.csv"))[0] == 2
    golden, _, _ = files
    w = tmp_path / "neg.txt"
    w.write_text("chi1 -1\n")
    assert run("stats", str(golden), "--weights", str(w))[0] == 2
    assert run("gen", "--taxa", "0", "--chars", "1")[0] == 2
    assert run("gen", "--taxa", "3", "--chars", "1", "--missing", "2")[0] == 2


def test_oracle_refusal_is_an_input_error(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("PMC_PHYLO_ORACLE_CAP", "3")
    m = tmp_path / "m.csv"
    m.write_text(GOLDEN_CSV)
    assert run("--oracle", "stats", str(m))[0] == 2
    assert "oracle cap" in capsys.readouterr().err


def test_oracle_mismatch_exits_3(files, monkeypatch, capsys):
    golden, _, _ = files
    monkeypatch.setattr(cli, "solve_perfect_phylogeny", lambda cs: None)
    assert run("--oracle", "solve", str(golden))[0] == 3
    assert "oracle disagrees" in capsys.readouterr().err


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "pmc_phylo.cli", "--help"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "maxcompat" in proc.stdout
