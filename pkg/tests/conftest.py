import json
import os
import sys

import pytest

from semidiv import class_group, conic_classes, from_equations, from_inequalities, normalize

HERE = os.path.dirname(__file__)
sys.path.insert(0, HERE)
PROBLEMS = os.path.join(os.path.dirname(HERE), "problems")

# K[U^2, UV, V^2, XW, YW, XZ, YZ]: a Veronese piece glued to Segre(2,2).
VS_GENERATORS = [
    (2, 0, 0, 0, 0, 0), (1, 1, 0, 0, 0, 0), (0, 2, 0, 0, 0, 0),
    (0, 0, 1, 0, 0, 1), (0, 0, 0, 1, 0, 1), (0, 0, 1, 0, 1, 0), (0, 0, 0, 1, 1, 0),
]

ACCEPTANCE = {}


def record(n, ok, detail):
    """Store one acceptance outcome; ``n`` is 1..8 or (8, part) for a property suite."""
    ACCEPTANCE[n] = (ok, detail)
    label = n if isinstance(n, int) else f"{n[0]} [{n[1]}]"
    print(f"criterion {label}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="session")
def z2():
    return normalize([(1, 0), (0, 1)])


@pytest.fixture(scope="session")
def quad():
    return from_inequalities([[0, 1], [2, -1]])


@pytest.fixture(scope="session")
def segre():
    return from_equations(5, [[1, 1, -1, -1, -1]])


@pytest.fixture(scope="session")
def segre_G(segre):
    return class_group(segre)


@pytest.fixture(scope="session")
def vs():
    return normalize(VS_GENERATORS)


@pytest.fixture(scope="session")
def tor3():
    return normalize([(1, 0), (1, 3)], "ambient")


@pytest.fixture(scope="session")
def tor22():
    return normalize([(1, 0, 0), (0, 1, 0), (1, 1, 2)], "ambient")


@pytest.fixture(scope="session")
def corpus(z2, quad, segre, vs, tor3, tor22):
    return {"z2": z2, "quad": quad, "segre": segre, "vs": vs, "tor3": tor3, "tor22": tor22}


@pytest.fixture
def problem_path():
    return lambda name: os.path.join(PROBLEMS, name)


def load_json(name):
    with open(os.path.join(PROBLEMS, name)) as fh:
        return json.load(fh)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    parts = {k[1]: v for k, v in ACCEPTANCE.items() if isinstance(k, tuple)}
    lines = {k: v for k, v in ACCEPTANCE.items() if isinstance(k, int)}
    if parts:
        failed = [name for name, (ok, _) in parts.items() if not ok]
        detail = (f"{len(parts)} property suites, failing: {', '.join(failed)}" if failed
                  else f"{len(parts)} property suites")
        lines[8] = (not failed, detail)
    for n in sorted(lines):
        ok, detail = lines[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="session")
def segre_conic(segre, segre_G):
    return conic_classes(segre, segre_G)
