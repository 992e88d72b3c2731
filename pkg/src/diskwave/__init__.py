"""diskwave: periodic traveling gravity waves on deep constant-vorticity flows.

A spectral library built around the conformal parametrization of the free
surface by a holomorphic function on the unit disk.  The zero-gravity
problem has an exact rational solution family; Newton continuation from it
produces overhanging waves and waves that touch themselves to enclose a
bubble of air.
"""

from .errors import (
    BracketError,
    ContinuationError,
    ConvergenceError,
    DiskwaveError,
    QuadratureError,
    SingularJacobianError,
    StagnationError,
)
from .exact import (
    CriticalAmplitudes,
    FlowField,
    ParamSet,
    a_max,
    bernoulli_of_A,
    crapper_w,
    exact_Q_closed_form,
    nondimensionalize,
    omega_of_A,
    profile_z_exact,
    stream_function,
    verify_exact_identities,
)
from .geometry import (
    IntersectionReport,
    OverhangReport,
    ProfileCurve,
    TouchingResult,
    chord_slope_matrix,
    crest_trough_height,
    find_touching_A,
    is_overhanging,
    reconstruct_profile,
    self_intersections,
)
from .linear import (
    LinearMatrix,
    MeromorphicCoefficients,
    apply_L,
    apply_L0,
    assemble_L_matrix,
    contour_residue,
    eliminated_f_minus1,
    lemma_checks,
    min_singular_value,
    monodromy_exponent,
    ode_coefficients,
    ode_p,
    ode_q,
    ode_q_simplified,
)
from .solver import (
    ContinuationTrace,
    NewtonReport,
    continue_in_A,
    continue_in_G,
    jacobian_fd_check,
    newton_solve,
)
from .spectral import (
    GridFn,
    HolomorphicBoundaryFn,
    basis_direction,
    closed_form_Qw_at_crapper,
    commutator_Q_fft,
    commutator_Q_quadrature,
    grid_alpha,
    grid_zeta,
    hilbert,
    hilbert_finite_depth,
    linearized_F_apply,
    project_even,
    residual_F,
    spectral_derivative,
    synthesize_even,
)

__version__ = "0.1.0"
