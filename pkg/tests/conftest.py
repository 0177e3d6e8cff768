import math

import numpy as np
import pytest
from hypothesis import strategies as st

from weakmeter import DichotomicObservable, Transition, TwoLevelState, state_from_ratio

AAV_POST_RATIO = -99 / 101


def random_state(rng: np.random.Generator) -> TwoLevelState:
    z = rng.normal(size=2) + 1j * rng.normal(size=2)
    return TwoLevelState.from_amplitudes(z[0], z[1])


def random_transition(rng: np.random.Generator, min_overlap: float = 0.0) -> Transition:
    while True:
        t = Transition(random_state(rng), random_state(rng))
        ov = abs(np.conj(t.post.c1) * t.pre.c1 + np.conj(t.post.c2) * t.pre.c2)
        if ov > min_overlap:
            return t


@pytest.fixture
def aav():
    return Transition(state_from_ratio(1.0), state_from_ratio(AAV_POST_RATIO))


@pytest.fixture
def symmetric():
    s = state_from_ratio(1.0)
    return Transition(s, s)


@pytest.fixture
def sz():
    return DichotomicObservable(1.0, -1.0)


finite = st.floats(min_value=-1e3, max_value=1e3, allow_nan=False, allow_infinity=False)


@st.composite
def states(draw):
    parts = [draw(finite) for _ in range(4)]
    n = math.hypot(*parts)
    if n < 1e-6:
        parts, n = [1.0, 0.0, 0.0, 0.0], 1.0
    return TwoLevelState.from_amplitudes(complex(parts[0], parts[1]), complex(parts[2], parts[3]))


@st.composite
def transitions(draw):
    return Transition(draw(states()), draw(states()))


ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def record(number: int, ok: bool, detail: str) -> None:
    """Log an acceptance criterion outcome and fail the calling test if needed."""
    ACCEPTANCE_RESULTS[number] = (bool(ok), detail)
    assert ok, f"criterion {number}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[number]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {detail}")
