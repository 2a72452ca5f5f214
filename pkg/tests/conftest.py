import json
import time
from pathlib import Path

import pytest

from germlab.cli import family_problem, germ_problem
from germlab.family import family_profile

ROOT = Path(__file__).resolve().parent.parent
PROBLEMS = ROOT / "problems"
SEED = 20240101

# A-finite germs of the bundled corpus (one-off problems, not families)
CORPUS = ["example1", "example2", "fold", "cusp", "cone"]
SMALL = ["example1", "fold", "cusp", "cone"]


def problem_data(name):
    return json.loads((PROBLEMS / f"{name}.json").read_text())


def germ(name, seed=SEED):
    P, _ = germ_problem(problem_data(name), seed)
    return P


def family(name, t=None):
    return family_problem(problem_data(name), t)


_analyses = {}


def analysis(name, seed=SEED):
    """analyze() results are shared between test modules; Example 2 takes a while."""
    from germlab.invariants import analyze

    key = (name, seed)
    if key not in _analyses:
        start = time.perf_counter()
        rep = analyze(germ(name, seed), seed, 3)
        _analyses[key] = (rep, time.perf_counter() - start)
    return _analyses[key]


@pytest.fixture(scope="session")
def bs_profile():
    start = time.perf_counter()
    prof = family_profile(family("briancon_speder"), SEED, 3)
    return prof, time.perf_counter() - start


def random_signatures(count, seed=0):
    """``count`` realizable signatures with n in {2, 3, 4}, weights <= 6, degrees <= 30."""
    import random

    from germlab.errors import NonRealizableError
    from germlab.weighted import wh_invariants, wh_signature

    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice((2, 3, 4))
        w = [rng.randint(1, 6) for _ in range(n)]
        df = [rng.randint(1, 30) for _ in range(2)]
        dp = [rng.randint(1, 30) for _ in range(n - 2)]
        sig = wh_signature(w, df, dp)
        try:
            out.append((sig, wh_invariants(sig)))
        except NonRealizableError:
            pass
    return out


ACCEPTANCE = {}


def record_criterion(number, title, ok, detail=""):
    line = f"criterion {number} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
    ACCEPTANCE[number] = line
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
