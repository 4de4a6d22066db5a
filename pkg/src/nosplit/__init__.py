"""Numerical checks of the no-splitting theorem for a single unknown qubit."""

__version__ = "0.1.0"

from .states import BlochAngles, bloch_state, fidelity_pure, reduced, schmidt, trace_distance
from .splitcheck import (
    AngleGrid,
    constraint_residuals,
    output_entanglement,
    proof_coefficients,
    splitting_residual,
)
from .searcher import SearchOptions, haar_unitary, search_splitter
from .combiner import combiner_statistics, parity_branches, run_combiner
from .gatelang import compile_program, parse_program
