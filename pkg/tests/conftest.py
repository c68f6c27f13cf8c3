from __future__ import annotations

import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from gallai.oracle import random_planar_graph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def planar_graphs(draw, lo: int = 3, hi: int = 12, density: float | None = None):
    n = draw(st.integers(lo, hi))
    d = density if density is not None else draw(st.sampled_from([1.0, 1.5, 2.0, 2.5, 3.0]))
    seed = draw(st.integers(0, 10_000))
    return random_planar_graph(n, max(n - 1, int(d * n)), seed)


def pytest_terminal_summary(terminalreporter):
    from acceptance_log import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[k])
