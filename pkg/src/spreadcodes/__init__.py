"""Spread codes over finite fields and their algebraic unique decoder."""

from .decoder import DecodeOutcome, decode, recover_f_lambda
from .errors import (
    AmbientMismatch,
    DecodeFailure,
    DimensionMismatch,
    EnumerationTooLarge,
    FieldTooLarge,
    InvalidParams,
    NotMonic,
    NotPrime,
    Reducible,
    SearchSpaceTooLarge,
    Singular,
    SpreadCodeError,
    UnsupportedParams,
    VerificationFailed,
)
from .fields import ExtField, FieldElement, PrimeField, find_irreducible, irreducible_check
from .harness import ChannelConfig, ExperimentReport, channel_transmit, oracle_decode, run_experiment
from .matrices import Matrix, companion, diagonalizer
from .polynomials import UniPoly, roots_in_field
from .spreadcode import (
    Message,
    SpreadCode,
    Subspace,
    build_code,
    encode,
    enumerate_codewords,
    intersection_dim,
    is_codeword,
    subspace_distance,
    verify_spread,
)

__version__ = "0.1.0"
