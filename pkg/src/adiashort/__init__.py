"""Zero-excess-work driving protocols for weakly driven, thermally isolated systems."""
from .protocol import (Protocol, SingularTerm, build_quench, build_ramp, build_universal,
                       fourier_of_gdot, is_time_reversal_symmetric)
from .relaxation import (CosineMode, ExponentialMode, IsingChainParams, RelaxationSpectrum,
                         eval_psi, eval_psi_derivative, laplace_psi, make_ising_spectrum)
from .series import SeriesCoefficients, is_shortcut_candidate, laurent_coefficients, waiting_time
from .shortcut import (CombSolution, asymptotic_decay_check, build_shortcut, solve_comb,
                       verify_shortcut)
from .work import (DriveParams, WorkResult, euler_lagrange_residual, excess_work_extrapolated,
                   excess_work_quadrature, excess_work_spectral, normalized_work,
                   optimal_excess_work)

__version__ = "0.1.0"
