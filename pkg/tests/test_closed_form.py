import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import pam_ber_transitions, qam_ber_transitions
from qamber.closed_form import (
    BerCurve,
    NotBracketedError,
    PamConfig,
    QamConfig,
    ber_curve,
    db_to_linear,
    ebn0_db_at,
    erfc,
    erfc_diff,
    generic_labeled_bit_bers,
    generic_labeled_pam_ber,
    loss_at,
    pam_alpha,
    pam_ber,
    pam_bit_ber,
    pam_bit_terms,
    psi,
    qam_alpha,
    qam_bit_ber_i,
    qam_bit_ber_q,
    qam_bit_terms_i,
    qam_bit_terms_q,
    qam_conditional_ber,
)
from qamber.graycode import LabelTransform, apply_transform, brgc

# mpmath, 40 digits
ERFC_1 = 0.15729920705028513066
PAM2_E4 = 0.027614371357891659387
PAM3_E10 = 0.026532708797565157964
PAM4_E20 = 0.039867878239091703315


def test_erfc_special_values():
    assert erfc(0.0) == 1.0
    assert erfc(-math.inf) == 2.0
    assert erfc(math.inf) == 0.0
    assert erfc(1.0) == pytest.approx(ERFC_1, rel=1e-14)


def test_erfc_against_mpmath():
    xs = np.concatenate([np.linspace(-6, 6, 601), [-5.999, 1e-8, -1e-8, 0.47, 3.3]])
    with mp.workdps(40):
        ref = np.array([float(mp.erfc(float(x))) for x in xs])
    assert np.max(np.abs(erfc(xs) - ref) / ref) <= 1e-12


def test_erfc_tails():
    with mp.workdps(40):
        for x in (6.5, 10.0, 20.0, 26.0):
            assert erfc(x) == pytest.approx(float(mp.erfc(x)), rel=1e-12)
    assert erfc(28.0) <= 1e-300
    for x in (-6.5, -10.0, -30.0):
        assert abs(erfc(x) - 2.0) <= 1e-15


def test_erfc_diff_avoids_cancellation():
    # both arguments deep in the negative tail
    with mp.workdps(40):
        want = float(mp.erfc(-12) - mp.erfc(-8))
    assert erfc_diff(-12.0, -8.0) == pytest.approx(want, rel=1e-12)
    assert erfc_diff(-math.inf, 0.0) == 1.0
    assert erfc_diff(0.0, math.inf) == 1.0


@pytest.mark.parametrize(
    "K, ebn0, expected",
    [(1, 1.0, 1.0), (2, 5.0, math.sqrt(2)), (3, 10.0, math.sqrt(90 / 63))],
)
def test_pam_alpha(K, ebn0, expected):
    assert pam_alpha(K, ebn0) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize(
    "mi, mq, ebn0, expected",
    [(1, 1, 3.7, math.sqrt(3.7)), (2, 2, 5.0, math.sqrt(2)), (3, 2, 1.0, math.sqrt(15 / 78))],
)
def test_qam_alpha(mi, mq, ebn0, expected):
    assert qam_alpha(mi, mq, ebn0) == pytest.approx(expected, rel=1e-15)


def test_psi():
    assert psi(0.7, 1.0, 2.0, 5.0, 0.0) == pytest.approx(erfc(0.7 * 3.0))
    assert psi(1, 1, -1, 5, 0) == 1.0
    assert psi(2, 0, 0, 1, math.pi / 2) == pytest.approx(erfc(2.0), rel=1e-15)
    assert psi(1, -math.inf, 3, 4, 0.2) == 2.0
    assert psi(1, math.inf, 3, 4, 0.2) == 0.0


@pytest.mark.parametrize("ebn0", [0.1, 0.5, 1.0, 3.0, 10.0])
def test_bpsk_reduction(ebn0):
    assert pam_bit_ber(1, 1, ebn0) == pytest.approx(0.5 * math.erfc(math.sqrt(ebn0)), abs=1e-15)


def test_pam_ber_frozen_values():
    assert pam_ber(1, 1.0) == pytest.approx(ERFC_1 / 2, rel=1e-13)
    assert pam_ber(2, 4.0) == pytest.approx(PAM2_E4, rel=1e-12)
    assert pam_ber(3, 10.0) == pytest.approx(PAM3_E10, rel=1e-12)
    assert pam_ber(4, 20.0) == pytest.approx(PAM4_E20, rel=1e-12)


@pytest.mark.parametrize("K", range(1, 7))
@pytest.mark.parametrize("ebn0", [0.3, 4.0, 40.0])
def test_pam_ber_matches_transition_oracle(K, ebn0):
    assert pam_ber(K, ebn0) == pytest.approx(pam_ber_transitions(K, ebn0), rel=1e-11, abs=1e-300)


def test_high_snr_limit():
    assert pam_bit_ber(3, 2, db_to_linear(80)) == 0.0
    assert qam_conditional_ber(QamConfig(3, 3, db_to_linear(80), 0.0)) == 0.0


@pytest.mark.parametrize("K", range(1, 7))
def test_pam_ber_strictly_decreasing(K):
    values = [pam_ber(K, db_to_linear(db)) for db in np.arange(0, 30.01, 0.5)]
    nonzero = [v for v in values if v > 0]
    assert all(a > b for a, b in zip(nonzero, nonzero[1:]))


def test_generic_labeling_matches_formula_path():
    for K, e in ((1, 1.0), (2, 4.0), (3, 2.5), (4, 7.0)):
        assert generic_labeled_pam_ber(brgc(K), e) == pytest.approx(pam_ber(K, e), abs=1e-12)
    assert generic_labeled_pam_ber(brgc(1), 2.0) == pytest.approx(0.5 * math.erfc(math.sqrt(2.0)), abs=1e-15)


def test_transformed_g3_same_ber():
    g3p = apply_transform(brgc(3), LabelTransform((3, 2, 1), (0, 1, 0)))
    for e in (0.5, 3.0, 30.0):
        assert generic_labeled_pam_ber(g3p, e) == pytest.approx(generic_labeled_pam_ber(brgc(3), e), abs=1e-12)


def test_natural_labeling_differs():
    # binary-counting labels are not Gray, so the BER must move
    natural = [tuple(int(b) for b in f"{i:03b}") for i in range(8)]
    assert generic_labeled_pam_ber(natural, 10.0) > pam_ber(3, 10.0) * 1.1


def test_labeling_invariance_random():
    rng = np.random.default_rng(11)
    for K in range(1, 5):
        ref = pam_ber(K, 3.0)
        for _ in range(50):
            seq = apply_transform(brgc(K), LabelTransform.random(K, rng))
            assert abs(generic_labeled_pam_ber(seq, 3.0) - ref) <= 1e-12


@pytest.mark.parametrize("theta", [0.0, math.pi / 8, 0.3, -1.0])
@pytest.mark.parametrize("ebn0", [0.5, 4.0])
def test_qpsk_hand_reduction(theta, ebn0):
    cfg = QamConfig(1, 1, ebn0, theta)
    a = math.sqrt(ebn0)
    c, s = math.cos(theta), math.sin(theta)
    per_bit_error = 0.25 * math.erfc(a * (c + s)) + 0.25 * math.erfc(a * (c - s))
    # qam_bit_ber_* are averaged over the two bits of a symbol
    assert qam_bit_ber_i(cfg, 1) == pytest.approx(per_bit_error / 2, abs=1e-15)
    assert qam_bit_ber_q(cfg, 1) == pytest.approx(per_bit_error / 2, abs=1e-15)
    assert qam_conditional_ber(cfg) == pytest.approx(per_bit_error, abs=1e-15)


@pytest.mark.parametrize("e", [0.1, 1.0, 10.0])
def test_qpsk_unrotated(e):
    assert qam_conditional_ber(QamConfig(1, 1, e, 0.0)) == pytest.approx(0.5 * math.erfc(math.sqrt(e)), abs=1e-12)


@pytest.mark.parametrize("mi, mq", [(1, 1), (2, 2), (3, 2), (1, 4), (3, 3)])
@pytest.mark.parametrize("theta", [0.0, math.radians(1), math.radians(5), 0.6])
def test_qam_matches_transition_oracle(mi, mq, theta):
    e = db_to_linear(9.0)
    got = qam_conditional_ber(QamConfig(mi, mq, e, theta))
    assert got == pytest.approx(qam_ber_transitions(mi, mq, e, theta), rel=1e-11)


def _pam_terms_at_alpha(K, k, alpha):
    # pick the PAM Eb/N0 that yields the requested alpha
    return pam_bit_terms(K, k, alpha**2 * (4**K - 1) / (3 * K))


@pytest.mark.parametrize("mi, mq", [(2, 1), (3, 3), (4, 2)])
def test_unrotated_bits_reduce_to_pam_terms(mi, mq):
    cfg = QamConfig(mi, mq, 6.0, 0.0)
    alpha = qam_alpha(mi, mq, 6.0)
    norm = 2 * (mi + mq) * 2**mi * 2**mq
    for k in range(1, mi + 1):
        want = math.fsum(_pam_terms_at_alpha(mi, k, alpha)) * 2**mq / norm
        assert qam_bit_ber_i(cfg, k) == pytest.approx(want, abs=1e-15)
    for k in range(1, mq + 1):
        want = math.fsum(_pam_terms_at_alpha(mq, k, alpha)) * 2**mi / norm
        assert qam_bit_ber_q(cfg, k) == pytest.approx(want, abs=1e-15)


def test_square_qam_unrotated_i_equals_q():
    cfg = QamConfig(3, 3, 8.0, 0.0)
    for k in range(1, 4):
        assert qam_bit_ber_i(cfg, k) == pytest.approx(qam_bit_ber_q(cfg, k), abs=1e-16)


def test_qam_bit_index_checked():
    with pytest.raises(ValueError):
        qam_bit_ber_i(QamConfig(2, 1, 1.0, 0.0), 3)
    with pytest.raises(ValueError):
        qam_bit_ber_q(QamConfig(2, 1, 1.0, 0.0), 2)


@pytest.mark.parametrize("bad", [dict(mi=0, mq=1, ebn0=1.0), dict(mi=1, mq=1, ebn0=0.0), dict(mi=1, mq=1, ebn0=1.0, theta=4.0)])
def test_qam_config_validation(bad):
    with pytest.raises(ValueError):
        QamConfig(**bad)


def test_pam_config_validation():
    with pytest.raises(ValueError):
        PamConfig(0, 1.0)
    with pytest.raises(ValueError):
        PamConfig(2, -1.0)


configs = st.tuples(
    st.integers(1, 5), st.integers(1, 5),
    st.floats(-10, 35).map(db_to_linear),
    st.floats(-math.pi, math.pi),
)


@settings(max_examples=150, deadline=None)
@given(configs)
def test_theta_symmetry_and_bounds(c):
    mi, mq, e, theta = c
    a = qam_conditional_ber(QamConfig(mi, mq, e, theta))
    b = qam_conditional_ber(QamConfig(mi, mq, e, -theta))
    assert abs(a - b) <= 1e-12
    assert 0.0 <= a <= 1.0
    for k in range(1, mi + 1):
        assert np.all(qam_bit_terms_i(QamConfig(mi, mq, e, theta), k) >= 0)
    for k in range(1, mq + 1):
        assert np.all(qam_bit_terms_q(QamConfig(mi, mq, e, theta), k) >= 0)


def test_ber_curve_qpsk_grid():
    curve = ber_curve(QamConfig(1, 1, 1.0, 0.0), [0.0, 5.0, 10.0])
    want = [0.5 * math.erfc(math.sqrt(db_to_linear(db))) for db in (0.0, 5.0, 10.0)]
    np.testing.assert_allclose(curve.ber, want, rtol=1e-13)
    assert curve.label == "qam:2x2"


def test_ber_curve_validation():
    with pytest.raises(ValueError):
        ber_curve(PamConfig(2, 1.0), [])
    with pytest.raises(ValueError):
        ber_curve(PamConfig(2, 1.0), [0.0, 0.0])


def test_unrotated_curves_strictly_decrease():
    grid = np.arange(0, 20.01, 1.0)
    for cfg in (QamConfig(2, 2, 1, 0.0), QamConfig(4, 1, 1, 0.0), PamConfig(3, 1.0)):
        y = ber_curve(cfg, grid).ber
        assert np.all(np.diff(y) < 0)


def test_rotated_64qam_curve_lies_above():
    grid = np.arange(0, 20.01, 1.0)
    ref = ber_curve(QamConfig(3, 3, 1, 0.0), grid).ber
    imp = ber_curve(QamConfig(3, 3, 1, math.pi / 180), grid).ber
    assert np.all(imp > ref)


def test_ebn0_at_refines_to_tolerance():
    curve = ber_curve(QamConfig(2, 2, 1, 0.0), np.arange(0, 20.1, 2.0))
    db = ebn0_db_at(curve, 1e-3)
    got = qam_conditional_ber(QamConfig(2, 2, db_to_linear(db), 0.0))
    assert abs(got - 1e-3) <= 1e-6 * 1e-3


def test_ebn0_at_interpolates_without_evaluator():
    curve = BerCurve(np.array([0.0, 10.0]), np.array([1e-2, 1e-4]))
    assert ebn0_db_at(curve, 1e-3) == pytest.approx(5.0)


def test_loss_identical_curves_is_zero():
    curve = ber_curve(QamConfig(1, 1, 1, 0.0), np.arange(0, 15.1, 0.5))
    assert loss_at(curve, curve, 1e-3) == 0.0


def test_loss_not_bracketed():
    curve = ber_curve(QamConfig(1, 1, 1, 0.0), np.arange(0, 5.1, 0.5))
    with pytest.raises(NotBracketedError):
        loss_at(curve, curve, 1e-9)


def test_rotation_floor_not_bracketed():
    # 20 degrees pushes the outer 64-QAM points across decision lines: the BER floors
    grid = np.arange(0, 60.1, 2.0)
    floor = ber_curve(QamConfig(3, 3, 1, math.radians(20)), grid)
    with pytest.raises(NotBracketedError):
        ebn0_db_at(floor, 1e-6)


def test_transformed_labeling_moves_error_between_bits():
    g3 = brgc(3)
    g3p = apply_transform(g3, LabelTransform((3, 2, 1), (0, 1, 0)))
    a = generic_labeled_bit_bers(g3, 10.0)
    b = generic_labeled_bit_bers(g3p, 10.0)
    assert a == pytest.approx(b[::-1], abs=1e-15)
    assert a[0] != pytest.approx(a[2])
    assert a == pytest.approx([pam_bit_ber(3, k, 10.0) for k in (1, 2, 3)], abs=1e-15)
