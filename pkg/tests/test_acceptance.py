"""Acceptance criteria at their stated sizes and tolerances.

Each test records one PASS/FAIL line; the lines are printed in the pytest
terminal summary, or directly when this file is run as a script.
"""
import json
import math
import sys
import time

import pytest

from thermoforge import cli
from thermoforge.veribench import TrialConfig, run_suite

LINES = []

# criterion number, summary, suite, trials, seed
CRITERIA = [
    (1, "Lorenz-curve vs LP verdicts agree", "thermo_vs_lp", 1000, 42),
    (2, "fine-graining equivalence on rational weights", "fine_grain", 500, 7),
    (3, "catalytic verdict matches the alpha scan; non-catalytic implies catalytic", "scan_consistency", 1000, 3),
    (4, "Helmholtz limit at alpha = 1 +/- 1e-6", "helmholtz", 200, 4),
    (5, "additivity across the alpha grid", "additivity", 200, 5),
    (6, "data processing under LP witnesses", "data_processing", 500, 6),
    (7, "irreversibility and equality cases", "irreversibility", 1000, 8),
    (8, "Carnot identity and local-operation comparison", "carnot", 500, 9),
    (9, "weighted heat bound on spontaneous cycles", "clausius", 500, 10),
    (10, "equal-temperature reduction to single-bath path", "reduction", 300, 11),
    (11, "asymmetry zero, invariance and rejection", "asymmetry", 100, 12),
    (12, "asymptotic smoothed divergences", "asymptotics", 1, 0),
]

D1_REFERENCE = 0.082283


def _record(n, text, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {text}" + (f" ({detail})" if detail else "")
    LINES.append(line)
    return line


@pytest.mark.parametrize("n,text,suite,trials,seed", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(n, text, suite, trials, seed):
    t0 = time.perf_counter()
    rep = run_suite(suite, TrialConfig(seed=seed, trials=trials))
    ok = rep.failed == 0 and rep.undecided == 0 and rep.passed == rep.trials
    extra = ""
    if suite == "asymptotics":
        ok = ok and abs(rep.stats["d1"] - D1_REFERENCE) <= 5e-7
        extra = f", d1={rep.stats['d1']:.6f}"
    detail = f"{rep.passed}/{rep.trials} passed, {rep.failed} failed, {rep.undecided} undecided{extra}, " \
             f"{time.perf_counter() - t0:.1f}s"
    line = _record(n, text, ok, detail)
    assert ok, (line, rep.counterexamples[:3])


def test_criterion_13_determinism(capsys):
    outs = []
    for _ in range(2):
        code = cli.main(["bench", "--seed", "2024", "--trials", "50", "--suite", "all"])
        outs.append((code, capsys.readouterr().out))
    ok = outs[0] == outs[1] and outs[0][0] == 0 and len(json.loads(outs[0][1])["suites"]) == len(CRITERIA)
    line = _record(13, "bench reports byte-identical across runs", ok, f"{len(outs[0][1])} bytes")
    assert ok, line


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
