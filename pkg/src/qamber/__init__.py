"""Exact BER of Gray-coded PAM and phase-rotated rectangular QAM over AWGN."""

from .closed_form import (
    BerCurve,
    NotBracketedError,
    PamConfig,
    QamConfig,
    ber,
    ber_curve,
    db_to_linear,
    ebn0_db_at,
    erfc,
    generic_labeled_bit_bers,
    generic_labeled_pam_ber,
    loss_at,
    pam_alpha,
    pam_ber,
    pam_bit_ber,
    psi,
    qam_alpha,
    qam_bit_ber_i,
    qam_bit_ber_q,
    qam_conditional_ber,
)
from .graycode import (
    BitColumn,
    GrayCodeSequence,
    LabelTransform,
    apply_transform,
    bit_column,
    brgc,
    is_gray,
)
from .montecarlo import BerEstimate, SimJob, gaussian_pair, simulate
from .pam_layout import (
    BitLayout,
    brute_force_layout,
    decide_bit,
    decide_bits,
    delta,
    layout,
    position_sets,
    region_length,
    region_sets,
)

__version__ = "0.1.0"
