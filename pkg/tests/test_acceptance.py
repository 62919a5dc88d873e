"""End-to-end acceptance criteria 1-10.

One timed ``travlab selftest`` run supplies the verdicts of suites 1-9;
criterion 10 is that run's wall time.  Each test appends a one-line
pass/fail summary, printed at the end of the pytest session.
"""

import json
import subprocess
import sys
import time

import pytest

TIME_LIMIT = 15 * 60


@pytest.fixture(scope="module")
def selftest_run():
    start = time.perf_counter()
    proc = subprocess.run([sys.executable, "-m", "travlab", "selftest", "--format", "json"],
                          capture_output=True, text=True, timeout=2 * TIME_LIMIT)
    elapsed = time.perf_counter() - start
    suites = {}
    if proc.stdout.strip():
        suites = {s["criterion"]: s for s in json.loads(proc.stdout)["suites"]}
    return proc, suites, elapsed


def record(log, number, passed, text):
    line = f"criterion {number} {'PASS' if passed else 'FAIL'} {text}"
    log.append(line)
    print(line)


@pytest.mark.parametrize("number", range(1, 10))
def test_criterion(number, selftest_run, acceptance_log):
    proc, suites, _ = selftest_run
    suite = suites.get(number)
    if suite is None:
        record(acceptance_log, number, False, f"no result (exit {proc.returncode}): {proc.stderr[-300:]}")
        pytest.fail(f"suite {number} produced no result")
    record(acceptance_log, number, suite["passed"], f"{suite['name']}: {suite['detail']}")
    assert suite["passed"], suite["detail"]


def test_criterion_10_selftest_time(selftest_run, acceptance_log):
    proc, suites, elapsed = selftest_run
    passed = proc.returncode == 0 and len(suites) == 9 and elapsed < TIME_LIMIT
    record(acceptance_log, 10, passed,
           f"selftest of suites 1-9: exit {proc.returncode}, {elapsed:.1f}s (limit {TIME_LIMIT}s)")
    assert proc.returncode == 0
    assert elapsed < TIME_LIMIT
