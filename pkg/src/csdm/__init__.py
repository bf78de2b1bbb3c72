"""Resonance energies of complex-rotated Hamiltonians via Direct Measurement circuits."""

from .cxlinalg import EigenDecomposition, eig, eigvec_for, sector_eig
from .gauss1d import ModelParams, build_matrix, build_pauli
from .hamio import fixture_h2minus, fixture_model_n5, parse, serialize
from .lcu import MeasurementResult, run_direct_measurement
from .pauli import LcuHamiltonian, PauliString, PauliSum, jw_ladder, jw_one_body, jw_two_body, to_lcu, to_matrix
from .resonance import (
    TrajectoryPoint,
    measure_eigenvalue,
    recover_cubic,
    recover_shift,
    recover_square,
    stationary_point,
    trajectory_scan,
)

__all__ = [
    "EigenDecomposition", "eig", "eigvec_for", "sector_eig",
    "ModelParams", "build_matrix", "build_pauli",
    "fixture_h2minus", "fixture_model_n5", "parse", "serialize",
    "MeasurementResult", "run_direct_measurement",
    "LcuHamiltonian", "PauliString", "PauliSum", "jw_ladder", "jw_one_body", "jw_two_body", "to_lcu", "to_matrix",
    "TrajectoryPoint", "measure_eigenvalue", "recover_cubic", "recover_shift", "recover_square",
    "stationary_point", "trajectory_scan",
]

__version__ = "0.1.0"
