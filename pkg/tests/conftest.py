from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import strategies as st

from erric.graph import Graph
from erric.solver import certify

# criterion number -> (title, outcome); filled by the acceptance module
CRITERIA: dict[int, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        CRITERIA[num] = [title, "PASS" if rep.outcome == "passed" else "FAIL"]


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        title, res = CRITERIA[num]
        terminalreporter.write_line(f"criterion {num:2d}: {res}  {title}")


# -- shared helpers ---------------------------------------------------------------------


def checked(g: Graph, code):
    """Run the post-hoc structural checks on a solver result and pass it through."""
    if code is not None:
        certify(g, code)
    return code


@st.composite
def graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    bits = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, [p for p, b in zip(pairs, bits) if b])


def dense_random_graph(n: int, rng: random.Random) -> Graph:
    p = rng.uniform(0.35, 0.8)
    return Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def admitting_graph(n: int, rng: random.Random, p: float = 0.5, tries: int = 200_000) -> Graph:
    """Random G(n, p) conditioned on admitting an ERR:IC (rejection sampling)."""
    from erric.existence import check_existence

    for _ in range(tries):
        g = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])
        if check_existence(g).exists:
            return g
    raise RuntimeError(f"no admitting G({n}, {p}) sample")
