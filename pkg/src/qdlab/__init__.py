"""Quantum dilogarithms, Whittaker and Hallnäs–Ruijsenaars wavefunctions,
and the exact cluster and operator algebra behind them."""

from .errors import (AccuracyLoss, CoefficientPole, ConfigError, EvaluationError, NotLaurent, PinchedContour,
                     PoleHit, QdError)
from .laurent import LaurentPoly, QRational
from .qdilog import QdContext, double_sine, log_phib, phib, psi_q_compact
from .qseries import GeneralizedPartition2, SpecialPoint, macdonald_poly, qpoch, whittaker_poly
from .wavefun import (hr_renormalized, hr_wavefunction, phi_matrix_coeff, whittaker_gg, whittaker_mb,
                      whittaker_tilde)

__version__ = "0.1.0"

__all__ = [
    "AccuracyLoss", "CoefficientPole", "ConfigError", "EvaluationError", "NotLaurent", "PinchedContour", "PoleHit",
    "QdError", "LaurentPoly", "QRational", "QdContext", "double_sine", "log_phib", "phib", "psi_q_compact",
    "GeneralizedPartition2", "SpecialPoint", "macdonald_poly", "qpoch", "whittaker_poly", "hr_renormalized",
    "hr_wavefunction", "phi_matrix_coeff", "whittaker_gg", "whittaker_mb", "whittaker_tilde",
]
