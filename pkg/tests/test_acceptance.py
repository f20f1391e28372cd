"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import subprocess
import sys

import pytest

from perfectlike.repro import CRITERIA, render, run

SEED = 7


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    (result,) = run([number], seed=SEED)
    with capsys.disabled():
        print()
        print(f"criterion {number:>2}: {'PASS' if result.ok else 'FAIL'}  {result.title}")
        for line in result.lines:
            print(f"    {line}")
    assert result.ok, "\n".join(result.lines)


def test_render_format():
    (result,) = run([1], seed=SEED)
    text = render([result], verbose=False)
    assert text == f" 1  PASS  {result.title}\n1/1 criteria passed\n"


def test_repro_output_is_byte_identical():
    cmd = [sys.executable, "-m", "perfectlike", "repro", "all", "--seed", str(SEED)]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    assert first.returncode == 0, first.stdout.decode() + first.stderr.decode()
    assert first.stdout == second.stdout
    assert first.stdout.decode().splitlines()[-1] == f"{len(CRITERIA)}/{len(CRITERIA)} criteria passed"
