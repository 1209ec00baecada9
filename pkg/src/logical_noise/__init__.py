"""Effective logical Pauli channels for stabilizer-encoded quantum memories,
with an exact secret-key-rate analysis for memory-corrected repeater chains."""

__version__ = "0.1.0"

from .channels import (
    ChannelTypeError,
    LogicalChannel1Q,
    LogicalChannel2Q,
    NoiseKind,
    effective_channel_1q,
    effective_channel_2q,
    logical_alpha,
    prob_1q,
    prob_2q,
    worst_case_mu,
)
from .codes import (
    CodeParseError,
    CodeValidationError,
    StabilizerCode,
    get_code,
    parse_code_file,
    validate_code,
)
from .decoder import (
    LogicalClass,
    Strategy,
    SyndromeTable,
    build_table,
    correct_and_classify,
    error_space_count,
)
from .pauli import CheckMatrix, GroupSet, PauliOp, commutes, mul, syndrome, weight
from .poly import Poly
from .repeater import (
    Encoding,
    RateResult,
    RepeaterParams,
    Scheme,
    avg_waiting_cutoff2,
    avg_waiting_parallel,
    catalog_encoding,
    dephasing_expectation,
    link_success_prob,
    qbers,
    secret_key_fraction,
    secret_key_rate,
    threshold_mu,
)

__all__ = [name for name in dir() if not name.startswith("_")]
