"""The twelve acceptance criteria, one test each.

All checks run once per session against tests/data/expected_tables.json; the
PASS/FAIL line of every criterion is printed in the terminal summary.
"""
import json
from pathlib import Path

import pytest

from khinv.acceptance import run_all

EXPECTED = json.loads((Path(__file__).parent / "data" / "expected_tables.json").read_text())
LINES = []


@pytest.fixture(scope="module")
def results():
    out = {}
    for res in run_all(EXPECTED):
        out[res.number] = res
        LINES.append(res.line())
        LINES.extend(res.extra)
    return out


@pytest.mark.parametrize("number", range(1, 13), ids=lambda n: f"{n:02d}")
def test_criterion(results, number):
    res = results[number]
    print(res.line())
    assert res.passed or not res.gating, res.line()
