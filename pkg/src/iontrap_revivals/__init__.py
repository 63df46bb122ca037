"""Collapse, perfect revivals, cat states and hybrid Bell states of a trapped ion.

Exact dynamics of the nonlinear Jaynes-Cummings (ion-trap) interaction in a
truncated Fock space, together with the large-coherent-state approximations
in the linear and quadratic eigenfrequency regimes.
"""

__version__ = "0.1.0"

from .specfun import (  # noqa: E402
    SpecialPoint,
    bessel_j1,
    find_special_points,
    h_derivative,
    laguerre_assoc,
)
from .hilbert import (  # noqa: E402
    EXCITED,
    GROUND,
    ElectronicState,
    JointState,
    ModeState,
    TruncationError,
    cat_state,
    coherent_state,
    default_truncation,
    fidelity,
    joint_product,
    purity,
    reduced_electronic_density,
    reduced_mode_density,
)
from .dynamics import (  # noqa: E402
    ModelParams,
    eigenfrequency,
    evolve_exact,
    expectation_I,
    frequency_table,
    population_inversion,
    propagate,
)
from .approx import (  # noqa: E402
    RegimeCoeffs,
    RegimeError,
    TimeScales,
    W_approx_linear,
    F_functions_linear,
    approx_state_linear,
    approx_state_quadratic,
    coefficients_at,
    regime_coefficients,
    time_scales,
)
from .protocols import (  # noqa: E402
    BELL_LABELS,
    BellLabel,
    MagicPoint,
    bell_fidelity,
    bell_input,
    bell_output_ideal,
    cat_prep_initial,
    magic_N,
    nearest_magic,
)
from .analysis import (  # noqa: E402
    average_fidelity_curve,
    inversion_curve,
    wigner,
    wigner_at,
)
