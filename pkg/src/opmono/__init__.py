"""Centrality of Hermitian matrices and local monotonicity of matrix functions."""

from .calculus import apply, divided_difference, frechet, loewner_matrix
from .centrality import (
    CentralityVerdict,
    ViolationCertificate,
    commuting_order_gap,
    decide,
    monotone_commuting_check,
    spectral_pair,
    verify_certificate,
)
from .errors import *  # noqa: F401,F403
from .functions import (
    ConditionReport,
    FunctionSeed,
    builtin_seed,
    chain_inequality_check,
    parse_fnspec,
    verify_conditions,
)
from .hermitian import (
    HermitianMatrix,
    SpectralDecomposition,
    eigh,
    min_eigenvalue,
    random_hermitian,
)
from .witness import Witness2, build_L, find_t0, negative_direction, witness_2x2

__version__ = "0.1.0"
