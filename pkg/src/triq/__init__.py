"""Robust and fragile entanglement of canonical three-qubit states."""

from .classify import analyze, analyze_named, classify_pair, heisenberg_hamiltonian, table_one
from .criteria import concurrence, conditional_tsallis, ppt_test, three_tangle, tsallis_entropy
from .errors import InvalidInputError, NumericalError, TriqError, VerificationError
from .states import ParametricParams, canonical_state, density, parametric_state

__version__ = "0.1.0"
