"""Acceptance criteria 1-9: one test per criterion subpart, plus runtime limits.

Each block runs once (timed) when this module is collected; the individual
subpart results are then asserted separately, so a failing subpart shows up
as its own red test with the measured value in the message.
"""
import pytest

from nilmetric.checks import EXAMPLES, run_example

pytestmark = pytest.mark.acceptance

RUNTIME_LIMITS = {  # seconds
    "h3_lorentz": 1.0, "pseudo_htype": 1.0, "rxh3": 1.0, "free3_neutral": 10.0, "iso7": 1.0,
    "oscillator4": 1.0, "manifold": 10.0, "geodesics": 30.0, "properties": 30.0,
}

RESULTS = {name: run_example(name) for name in EXAMPLES}

for _name, _res in RESULTS.items():
    print(f"[{EXAMPLES[_name][0]}] {_name}: {'PASS' if _res.ok else 'FAIL'} ({_res.seconds:.2f}s)")
    for _c in _res.checks:
        print(f"    {'PASS' if _c.ok else 'FAIL'}  {_c.name}  {_c.detail}")

SUBPARTS = [pytest.param(name, i, id=f"{EXAMPLES[name][0]}-{name}-{c.name}")
            for name, res in RESULTS.items() for i, c in enumerate(res.checks)]


@pytest.mark.parametrize("name,index", SUBPARTS)
def test_criterion_subpart(name, index):
    check = RESULTS[name].checks[index]
    print(f"{'PASS' if check.ok else 'FAIL'}: [{EXAMPLES[name][0]}] {check.name} {check.detail}")
    assert check.ok, f"{check.name}: {check.detail}"


@pytest.mark.parametrize("name", list(EXAMPLES), ids=lambda n: f"{EXAMPLES[n][0]}-{n}")
def test_criterion_runtime(name):
    res = RESULTS[name]
    print(f"[{EXAMPLES[name][0]}] {name}: {res.seconds:.3f}s (limit {RUNTIME_LIMITS[name]}s)")
    assert res.seconds < RUNTIME_LIMITS[name]


def test_every_criterion_has_subparts():
    assert set(RUNTIME_LIMITS) == set(EXAMPLES)
    assert all(RESULTS[name].checks for name in EXAMPLES)
