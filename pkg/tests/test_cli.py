import json
import subprocess
import sys

import pytest

from perfectlike.catalog import parse_code, parse_partition, read_partition
from perfectlike.cli import main

SHORT_FILE = "# shortened ternary Hamming code\nq 3\nn 3\n0 0 0\n2 2 1\n1 1 2\n"


@pytest.fixture
def short_file(tmp_path):
    path = tmp_path / "short.txt"
    path.write_text(SHORT_FILE)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_bounds(capsys):
    assert run(capsys, "bounds", "--q", "3", "--n", "3", "--lambda", "1")[:2] == (0, "3\n")
    assert run(capsys, "bounds", "--q", "3", "--n", "12", "--mu", "1")[:2] == (0, "21324\n")
    assert run(capsys, "bounds", "--q", "4", "--n", "4", "--lambda", "4", "--dist2")[:2] == (0, "64\n")
    code, out, _ = run(capsys, "bounds", "--q", "3", "--n", "4", "--lambda", "1")
    assert code == 1 and out.startswith("not applicable")
    code, out, _ = run(capsys, "bounds", "--q", "3", "--n", "3", "--lambda", "1", "--mu", "6", "--tsv")
    assert out == "packing\t3\ncovering\t24\n"


def test_bounds_table(capsys):
    code, out, _ = run(capsys, "bounds", "--q", "3", "--table", "21", "--lambda", "1", "--mu", "6", "--tsv")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "n\tpacking\tdist2\tcovering"
    assert lines[1].split("\t")[:2] == ["3", "3"] and len(lines) == 4


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["bounds", "--q", "3", "--bogus"])
    assert e.value.code == 2
    assert run(capsys, "bounds", "--q", "3")[0] == 2
    assert run(capsys, "lengthen", "search", "--q", "4")[0] == 2
    assert run(capsys, "repro", "99")[0] == 2
    assert run(capsys, "bounds", "--q", "3", "--n", "3", "--lambda", "0")[0] == 2


def test_verify(capsys, short_file, tmp_path):
    assert run(capsys, "verify", short_file, "--kind", "packing")[0] == 0
    code, out, err = run(capsys, "verify", short_file, "--kind", "perfect")
    assert code == 1 and out.startswith("FAIL")
    code, out, _ = run(capsys, "verify", short_file, "--kind", "cr")
    assert code == 0 and out.splitlines()[1:] == ["0 6 0", "1 3 2", "0 6 0"]
    assert run(capsys, "verify", short_file, "--kind", "mds")[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("q 3\nn 3\n0 0 3\n")
    code, _, err = run(capsys, "verify", str(bad), "--kind", "packing")
    assert code == 2 and "line 3" in err
    assert run(capsys, "verify", str(tmp_path / "missing.txt"), "--kind", "packing")[0] == 2


def test_spectra(capsys, short_file):
    code, out, _ = run(capsys, "spectra", short_file)
    assert code == 0 and out == "A 1 0 0 2\nB 1 0 6 2\n"
    code, out, _ = run(capsys, "spectra", short_file, "--tsv")
    assert out == "A\t1/1\t0/1\t0/1\t2/1\nB\t1/1\t0/1\t6/1\t2/1\n"


def test_construct(capsys, tmp_path):
    code, out, _ = run(capsys, "construct", "shorten", "--q", "3", "--m", "2")
    C = parse_code(out)
    assert code == 0 and C.params == (3, 3, 3)
    out_file = tmp_path / "h.txt"
    assert run(capsys, "construct", "hamming", "--q", "3", "--m", "2", "--out", str(out_file))[0] == 0
    assert run(capsys, "verify", str(out_file), "--kind", "perfect")[0] == 0
    code, out, _ = run(capsys, "construct", "cosetpack", "--q", "3", "--m", "2", "--lambda", "2")
    assert parse_code(out).params == (3, 6, 2)
    code, out, _ = run(capsys, "construct", "theorem4", "--m", "3")
    desc = json.loads(out)
    assert desc["size"] == 4**17 and desc["n"] == 20 and desc["min_distance"] == 3
    code, out, _ = run(capsys, "construct", "dpart", "--q", "2", "--m", "3")
    assert len(parse_partition(out)) == 4
    assert run(capsys, "construct", "cosetpack", "--q", "3", "--m", "2")[0] == 2


def test_lengthen_commands(capsys, short_file, tmp_path):
    out_file = tmp_path / "long.txt"
    code, out, _ = run(capsys, "lengthen", "code", short_file, "--out", str(out_file))
    assert code == 0 and out.startswith("LENGTHENABLE")
    assert run(capsys, "verify", str(out_file), "--kind", "perfect")[0] == 0
    core_file = tmp_path / "core.txt"
    code, out, _ = run(capsys, "lengthen", "partition", "--name", "h44-partition", "--out", str(core_file))
    assert code == 1
    assert "UNSAT: conflict core of 3 classes: 2 3 C" in out
    assert read_partition(core_file).labels == ["2", "3", "C"]
    code, out, _ = run(capsys, "lengthen", "classify-h33")
    assert code == 0 and "40 partitions" in out and "2 equivalence classes" in out


def test_catalog_export(capsys, tmp_path):
    code, out, _ = run(capsys, "catalog", "list")
    assert code == 0 and out.startswith("h44-partition")
    code, out, _ = run(capsys, "catalog", "export", "--name", "h44-partition")
    P = parse_partition(out)
    assert len(P) == 16 and len(P.ambient) == 256


def test_module_entry_point(short_file):
    proc = subprocess.run([sys.executable, "-m", "perfectlike", "spectra", short_file],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "A 1 0 0 2\nB 1 0 6 2\n"
