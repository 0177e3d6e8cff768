import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weakmeter import (
    DichotomicObservable,
    InvalidRatio,
    InvalidState,
    Transition,
    TwoLevelState,
    overlap,
    parse_complex,
    path_amplitudes,
    state_from_ratio,
)

from conftest import finite, states, transitions

R = 1 / math.sqrt(2)


@pytest.mark.parametrize(
    "r, expected",
    [(0, (1, 0)), (1, (R, R)), (1j, (R, 1j * R))],
)
def test_state_from_ratio_examples(r, expected):
    s = state_from_ratio(r)
    assert s.c1 == pytest.approx(expected[0], abs=1e-15)
    assert s.c2 == pytest.approx(expected[1], abs=1e-15)


@pytest.mark.parametrize("r", [float("nan"), complex(float("inf"), 0), complex(0, float("nan"))])
def test_state_from_ratio_rejects_non_finite(r):
    with pytest.raises(InvalidRatio):
        state_from_ratio(r)


@given(re=finite, im=finite)
def test_state_from_ratio_normalized_with_positive_first_component(re, im):
    s = state_from_ratio(complex(re, im))
    assert abs(abs(s.c1) ** 2 + abs(s.c2) ** 2 - 1) < 1e-12
    assert s.c1.imag == 0 and s.c1.real > 0


def test_state_rejects_unnormalized():
    with pytest.raises(InvalidState):
        TwoLevelState(1.0, 1.0)


def test_observable_requires_ordered_eigenvalues():
    with pytest.raises(ValueError):
        DichotomicObservable(-1.0, 1.0)
    with pytest.raises(ValueError):
        DichotomicObservable(1.0, 1.0)


def test_path_amplitudes_examples(sz):
    psi = state_from_ratio(1)
    pa = path_amplitudes(Transition(psi, state_from_ratio(0)), sz)
    assert pa.a1 == pytest.approx(R) and pa.a2 == 0
    pa = path_amplitudes(Transition(psi, psi), sz)
    assert pa.a1 == pytest.approx(0.5) and pa.a2 == pytest.approx(0.5)


def test_aav_route_ratio(aav, sz):
    pa = path_amplitudes(aav, sz)
    assert pa.a2 / pa.a1 == pytest.approx(-99 / 101, rel=1e-14)


def test_overlap_examples(aav):
    s = state_from_ratio(0.3 - 2j)
    assert overlap(Transition(s, s)) == pytest.approx(1, abs=1e-15)
    assert overlap(Transition(TwoLevelState(1, 0), TwoLevelState(0, 1))) == 0
    # direct arithmetic, cross-checked by np.vdot on the raw vectors
    expected = (1 - 99 / 101) / (math.sqrt(2) * math.sqrt(1 + (99 / 101) ** 2))
    brute = np.vdot(np.array([1, -99 / 101]) / math.hypot(1, 99 / 101), np.array([1, 1]) / math.sqrt(2))
    assert expected == pytest.approx(brute, abs=1e-15)
    assert overlap(aav) == pytest.approx(expected, abs=1e-15)
    assert abs(overlap(aav)) == pytest.approx(0.00996, abs=5e-5)


@given(t=transitions())
def test_routes_sum_to_overlap(t):
    pa = path_amplitudes(t)
    assert abs(pa.a1 + pa.a2 - overlap(t)) < 1e-12
    brute = np.vdot([t.post.c1, t.post.c2], [t.pre.c1, t.pre.c2])
    assert abs(overlap(t) - brute) < 1e-12


@given(t=transitions(), a=st.floats(0, 2 * math.pi), b=st.floats(0, 2 * math.pi))
def test_route_moduli_phase_invariant(t, a, b):
    pa = path_amplitudes(t)
    pb = path_amplitudes(Transition(t.pre.with_phase(a), t.post.with_phase(b)))
    assert abs(abs(pa.a1) - abs(pb.a1)) < 1e-12
    assert abs(abs(pa.a2) - abs(pb.a2)) < 1e-12


@pytest.mark.parametrize(
    "text, value",
    [("0.5-0.5i", 0.5 - 0.5j), ("1", 1), ("-i", -1j), ("2i", 2j), ("1e-3+2i", 0.001 + 2j), ("-0.25", -0.25)],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+2k", "i i"])
def test_parse_complex_rejects_garbage(text):
    with pytest.raises(InvalidRatio):
        parse_complex(text)


@given(s=states())
def test_state_json_reals_roundtrip(s):
    back = TwoLevelState.from_reals(s.to_reals())
    assert cmath.isclose(back.c1, s.c1, abs_tol=1e-14)
    assert cmath.isclose(back.c2, s.c2, abs_tol=1e-14)
