"""Two-parameter family of operator monotone functions and their monotone metrics.

f(t) = (p/q)(t^q - 1)/(t^p - 1), 0 < p <= q <= 1, together with its integral
representations, matrix functions and the associated quantum metrics.
"""

from .errors import ConvergenceError, DimensionError, DomainError
from .matrix import (
    EigenSystem,
    HermitianMatrix,
    MonotonicityReport,
    apply_function,
    eigh,
    jacobi_eigh,
    loewner_leq,
    monotonicity_suite,
    sample_ordered_pair,
)
from .metric import (
    AxiomReport,
    DensityMatrix,
    MetricValue,
    StochasticMap,
    apply_stochastic,
    axiom_suite,
    metric_eval,
)
from .quadrature import QuadratureConfig, QuadratureOutcome, integrate_adaptive
from .representations import (
    ando_average,
    canonical_reconstruct,
    exponential_reconstruct,
    extract_weight_numeric,
    fop_reconstruct,
)
from .scalar import (
    ComplexPoint,
    ExponentPair,
    ImLogParts,
    beta_closed_form,
    canonical_density,
    eval_f,
    eval_f_complex,
    eval_g,
    eval_g_complex,
    fop_weight,
    im_log_parts,
    mc_function,
    sharp,
    weight_h,
)

__version__ = "0.1.0"
