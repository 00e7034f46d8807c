"""Worked four-qubit examples: |psi1> = (|0000>+|1011>+|1101>+|1111>)/2 and
|psi2> = (|0000>+|1001>+|1110>+|1111>)/2."""
import math
import time

import pytest

from measures.concurrence import cut_q_concurrence, evaluate, measure_value
from measures.spec import Family, MeasureSpec
from oracle import gm_value, me_value
from tensor_core.library import psi1_state, psi2_state

CUT_VALUES = {
    "psi1": {(1,): 3 / 8, (2,): 3 / 8, (3,): 3 / 8, (4,): 3 / 8, (1, 2): 1 / 2, (1, 3): 1 / 2, (1, 4): 3 / 8},
    "psi2": {(1,): 3 / 8, (2,): 1 / 2, (3,): 1 / 2, (4,): 3 / 8, (1, 2): 5 / 8, (1, 3): 5 / 8, (1, 4): 3 / 8},
}
STATES = {"psi1": psi1_state, "psi2": psi2_state}

# Frozen regression values. Each one equals the dense oracle to 1e-12 (checked below)
# and the closed form: 2-GM psi1 = 3888^(1/14)/2, 2-GM psi2 = 10800^(1/14)/2,
# 3-GM psi1 = 590490000^(1/12)/6 = (25/48)^(1/6), 3-GM psi2 = 2816^(1/12)/2 = (11/16)^(1/12).
GM_VALUES = {
    ("psi1", 2): 3888 ** (1 / 14) / 2,
    ("psi2", 2): 10800 ** (1 / 14) / 2,
    ("psi1", 3): 590490000 ** (1 / 12) / 6,
    ("psi2", 3): 2816 ** (1 / 12) / 2,
}


@pytest.mark.parametrize("name", STATES)
def test_cut_q2_values(name):
    psi = STATES[name]()
    for cut, expected in CUT_VALUES[name].items():
        assert cut_q_concurrence(psi, cut, 2.0) == pytest.approx(expected, abs=1e-12)
        complement = tuple(i for i in range(1, 5) if i not in cut)
        assert cut_q_concurrence(psi, complement, 2.0) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("name", STATES)
@pytest.mark.parametrize("k", [2, 3])
def test_me_values(name, k):
    start = time.perf_counter()
    result = evaluate(STATES[name](), MeasureSpec(Family.KME, k))
    assert result.value == pytest.approx(math.sqrt(3) / 2, abs=1e-9)
    assert time.perf_counter() - start < 5.0


@pytest.mark.parametrize("name, k", GM_VALUES)
def test_gm_values(name, k):
    psi = STATES[name]()
    value = measure_value(psi, MeasureSpec(Family.KGM, k))
    assert gm_value(psi.amps, psi.dims, k) == pytest.approx(GM_VALUES[name, k], abs=1e-12)
    assert value == pytest.approx(GM_VALUES[name, k], abs=1e-9)


def test_radicals_agree_with_rational_forms():
    assert GM_VALUES["psi1", 2] == pytest.approx((3 / 4) ** (5 / 14), rel=1e-14)
    assert GM_VALUES["psi2", 2] == pytest.approx((15 * math.sqrt(3) / 32) ** (1 / 7), rel=1e-14)
    assert GM_VALUES["psi1", 3] == pytest.approx((25 / 48) ** (1 / 6), rel=1e-14)
    assert GM_VALUES["psi2", 3] == pytest.approx((11 / 16) ** (1 / 12), rel=1e-14)


def test_gm_separates_states_that_me_cannot():
    for k in (2, 3):
        me = [measure_value(STATES[name](), MeasureSpec(Family.KME, k)) for name in STATES]
        assert me[0] == pytest.approx(me[1], abs=1e-12)
        gm = [measure_value(STATES[name](), MeasureSpec(Family.KGM, k)) for name in STATES]
        assert abs(gm[0] - gm[1]) > 1e-3


@pytest.mark.parametrize("name", STATES)
def test_me_matches_oracle(name):
    psi = STATES[name]()
    for k in (2, 3):
        assert measure_value(psi, MeasureSpec(Family.KME, k)) == pytest.approx(me_value(psi.amps, psi.dims, k),
                                                                               abs=1e-12)
