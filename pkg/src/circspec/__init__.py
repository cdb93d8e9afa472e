"""circspec: the power spectrum of Dyson's circular ensembles (beta = 1, 2, 4)
at finite matrix size and in the bulk scaling limit, computed along four
mutually cross-validating routes: structured determinants, a discrete
Painleve-V recurrence, Nystrom Fredholm determinants, and sigma-Painleve
ODE integration."""

from .exceptions import (
    BranchTrackingError,
    CircspecError,
    InstabilityError,
    PoleError,
    PrecisionEscalationRequired,
    ResourceError,
    SingularityError,
    SmallDivisorError,
)
from .finitedet import (
    EnsembleLabel,
    GenFnSample,
    coe_gen_fn,
    cse_gen_fn,
    cue_gen_fn,
    gen_fn,
    number_variance,
    orthogonal_gen_fn,
    xi_series,
)
from .fredholm import (
    KernelSpec,
    e_inf_beta,
    e_orthogonal_limit,
    finite_cue_fredholm,
    finite_orthogonal_fredholm,
    fredholm_det,
)
from .painleve import (
    PainleveTrajectory,
    integrate_sigma_piii,
    integrate_sigma_pvi_cue,
    integrate_sigma_pvi_orth,
    sigma_piii_conjectured_asymptote,
)
from .quadrature import GridFunction, cos_power_integral, integrate, tail_integral
from .recurrence import gen_fn_from_recurrence, orthogonal_from_unitary
from .spectrum import (
    SpectrumEntry,
    SpectrumTable,
    TailSpec,
    assemble_finite_spectrum,
    assemble_limit_spectrum,
    covariance_asymptote,
    number_variance_asymptotic,
    small_omega_asymptote,
    spectrum_at_zero_asymptotic,
    spectrum_at_zero_exact,
    spectrum_at_zero_variance_integral,
)

__version__ = "0.1.0"
