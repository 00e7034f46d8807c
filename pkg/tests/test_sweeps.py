import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from measures.spec import Family
from oracle import gm_value
from sweeps.detection import KinkDetector, OrderReversal, find_order_reversal
from sweeps.runner import SweepConfig, run_sweep
from tensor_core.library import fig1_state, fig2_state
from utils.errors import InvalidParam
from utils.output import frame_to_csv


def test_kink_detector_finds_the_corner_of_abs():
    values = np.abs(np.linspace(-1.0, 1.0, 101))
    assert KinkDetector().detect(values).tolist() == [50]


def test_kink_detector_ignores_smooth_curves():
    assert KinkDetector().detect(np.sin(np.linspace(0.0, math.pi, 2001))).size == 0
    assert KinkDetector().detect(np.full(50, 0.3)).size == 0
    assert KinkDetector().detect([1.0, 2.0]).size == 0


def test_kink_factor_must_be_positive():
    with pytest.raises(ValueError):
        KinkDetector(0)


def test_order_reversal():
    witness = find_order_reversal([0.0, 1.0, 2.0], [0.1, 0.5, 0.3], [0.1, 0.2, 0.3])
    assert witness == OrderReversal(theta_1=2.0, theta_2=1.0, gm_1=0.3, gm_2=0.5, me_1=0.3, me_2=0.2)
    assert find_order_reversal([0.0, 1.0, 2.0], [0.1, 0.2, 0.3], [0.1, 0.2, 0.3]) is None
    # ties in ME are not a reversal
    assert find_order_reversal([0.0, 1.0], [0.5, 0.1], [0.2, 0.2]) is None


def test_sweep_config_validation():
    with pytest.raises(ValidationError):
        SweepConfig(steps=1)
    with pytest.raises(ValidationError):
        SweepConfig(theta_start=2.0, theta_end=1.0)
    with pytest.raises(ValidationError):
        SweepConfig(theta_end=float("inf"))
    with pytest.raises(InvalidParam):
        run_sweep(SweepConfig(family=Family.KME, steps=3))
    with pytest.raises(InvalidParam):
        run_sweep(SweepConfig(state_template="no-such-template", steps=3))


def test_small_sweep_layout():
    frame = run_sweep(SweepConfig(steps=5))
    assert list(frame.columns) == ["theta", "value_gm", "value_me"]
    assert len(frame) == 5
    assert frame["theta"].iloc[0] == 0.0 and frame["theta"].iloc[-1] == pytest.approx(math.pi)
    # theta = 0 is |0011>, a product state
    assert frame["value_gm"].iloc[0] == 0.0 and frame["value_me"].iloc[0] == 0.0
    assert (frame["value_me"] <= frame["value_gm"] + 1e-12).all()


@pytest.mark.parametrize("template", [fig1_state, fig2_state])
@pytest.mark.parametrize("k", [2, 3])
def test_sweep_points_match_dense_oracle(template, k):
    name = "fig1" if template is fig1_state else "fig2"
    frame = run_sweep(SweepConfig(k=k, steps=4, theta_start=0.2, theta_end=2.8, state_template=name))
    for theta, value in zip(frame["theta"], frame["value_gm"]):
        psi = template(theta)
        assert value == pytest.approx(gm_value(psi.amps, psi.dims, k), abs=1e-12)


def test_sweep_csv_is_reproducible():
    cfg = SweepConfig(steps=7, state_template="fig2")
    first, second = frame_to_csv(run_sweep(cfg)), frame_to_csv(run_sweep(cfg))
    assert first == second
    assert first.startswith("theta,value_gm,value_me\n")
    assert "\r" not in first
    assert len(first.strip().split("\n")) == 8


def test_alpha_sweep_reports_smallest_partition_score():
    frame = run_sweep(SweepConfig(family=Family.ALPHAKGM, k=2, param=0.5, steps=5, state_template="fig2"))
    assert (frame["value_me"] <= frame["value_gm"] + 1e-12).all()


def test_custom_template_matches_builtin(tmp_path):
    def pairs(vec):
        return [[float(z.real), float(z.imag)] for z in vec]

    path = tmp_path / "template.json"
    path.write_text(json.dumps({"dims": [2, 2, 2, 2], "sin_amplitudes": pairs(fig1_state(math.pi / 2).amps),
                                "cos_amplitudes": pairs(fig1_state(0.0).amps)}), encoding="utf-8")
    custom = run_sweep(SweepConfig(steps=6, state_template=str(path)))
    builtin = run_sweep(SweepConfig(steps=6, state_template="fig1"))
    np.testing.assert_allclose(custom.to_numpy(), builtin.to_numpy(), atol=1e-12)


def test_fig1_me_curve_has_kinks_and_gm_curve_has_none():
    frame = run_sweep(SweepConfig(steps=2001, state_template="fig1"))
    detector = KinkDetector()
    assert detector.detect(frame["value_me"]).size >= 2
    assert detector.detect(frame["value_gm"]).size == 0


def test_fig2_gm_and_me_order_states_differently():
    frame = run_sweep(SweepConfig(steps=2001, state_template="fig2"))
    witness = find_order_reversal(frame["theta"], frame["value_gm"], frame["value_me"])
    assert witness is not None
    assert witness.me_1 > witness.me_2 and witness.gm_1 < witness.gm_2


def test_parallel_sweep_matches_serial():
    cfg = SweepConfig(steps=6, state_template="fig2")
    np.testing.assert_allclose(run_sweep(cfg, n_jobs=2).to_numpy(), run_sweep(cfg, n_jobs=1).to_numpy(), atol=1e-14)
