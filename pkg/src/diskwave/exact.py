"""Closed-form zero-gravity wave family and its flow field.

For zero gravity the free surface

    z(alpha; A) = alpha - 4i*A*exp(-i*alpha) / (1 + A*exp(-i*alpha))

together with the parameter maps

    Omega(A) = (1 - A^2) / (1 - 3A^2),
    B(A)     = ((1 + A^2) / (1 - 3A^2))^2 / 2,

is an exact traveling-wave solution of the constant-vorticity problem on
infinite depth.  On the disk side the same surface is the rational function
w(zeta; A) = -4i*A*zeta / (1 + A*zeta).  The family is the ground-truth
oracle for every numerical operator in this package: this module carries
the closed forms, the two critical amplitudes (overhang onset and
self-touching), the residue-calculus value of the commutator at the exact
wave, and the interior stream function.

Amplitudes are restricted to A in [0, 1/2), which covers every physical
member of the family and the nonphysical tail used by the touching-wave
search.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .spectral import GridFn, HolomorphicBoundaryFn, grid_zeta

__all__ = [
    "ParamSet",
    "CriticalAmplitudes",
    "FlowField",
    "omega_of_A",
    "bernoulli_of_A",
    "crapper_w",
    "profile_z_exact",
    "a_max",
    "exact_Q_closed_form",
    "verify_exact_identities",
    "stream_function",
    "nondimensionalize",
]

COEFF_TRUNCATION = 1e-17  # |A|^N below this decides the default series length


@dataclass(frozen=True)
class ParamSet:
    """Dimensionless parameters of one wave configuration.

    Attributes
    ----------
    A : float
        Amplitude parameter of the underlying zero-gravity family,
        in [0, 1/2) for all solver entry points.  NaN when the parameters
        did not come from the family (see `nondimensionalize`).
    G : float
        Gravity parameter.
    Omega : float
        Vorticity parameter.
    Bernoulli : float
        Bernoulli constant.
    """

    A: float
    G: float
    Omega: float
    Bernoulli: float

    @classmethod
    def from_family(cls, A: float, G: float = 0.0) -> "ParamSet":
        """Parameters with Omega and B slaved to the amplitude A."""
        return cls(A=float(A), G=float(G), Omega=omega_of_A(A), Bernoulli=bernoulli_of_A(A))

    def with_gravity(self, G: float) -> "ParamSet":
        return ParamSet(self.A, float(G), self.Omega, self.Bernoulli)


@dataclass(frozen=True)
class CriticalAmplitudes:
    """The two thresholds of the zero-gravity family.

    overhang_threshold : amplitude above which the profile overhangs
        (sqrt(2) - 1).
    a_max : amplitude at which the profile first touches itself.
    maximizer_alpha : argmax of phi(alpha) = 2*sin(alpha)/alpha - cos(alpha),
        the parameter location of the touching point.
    """

    overhang_threshold: float
    a_max: float
    maximizer_alpha: float


@dataclass(frozen=True)
class FlowField:
    """Stream function data at one interior point (alpha, beta), beta <= 0."""

    psi: float
    psi_beta: float
    location: tuple


def _check_family_amplitude(A: float):
    if not 0.0 <= A < 1.0 / math.sqrt(3.0):
        raise ValueError(f"amplitude A={A} outside [0, 1/sqrt(3)) where the parameter maps are defined")


def omega_of_A(A: float) -> float:
    """Vorticity parameter Omega(A) = (1 - A^2)/(1 - 3A^2) of the family."""
    _check_family_amplitude(A)
    return (1.0 - A * A) / (1.0 - 3.0 * A * A)


def bernoulli_of_A(A: float) -> float:
    """Bernoulli constant B(A) = ((1 + A^2)/(1 - 3A^2))^2 / 2 of the family."""
    _check_family_amplitude(A)
    return 0.5 * ((1.0 + A * A) / (1.0 - 3.0 * A * A)) ** 2


def default_mode_count(A: float) -> int:
    """Smallest N with |A|^N below the coefficient truncation threshold."""
    if A <= 0.0:
        return 8
    return max(8, int(math.ceil(math.log(COEFF_TRUNCATION) / math.log(A))))


def crapper_w(A: float, N: int | None = None) -> HolomorphicBoundaryFn:
    """Truncated series of the exact wave w(zeta; A) = -4i*A*zeta/(1 + A*zeta).

    The geometric expansion gives the zeta^n coefficient -4i*(-1)^(n-1)*A^n,
    purely imaginary as required by the symmetry.  The default truncation
    keeps every coefficient above 1e-17.
    """
    if not 0.0 <= A < 0.5:
        raise ValueError(f"amplitude A={A} outside [0, 1/2)")
    if N is None:
        N = default_mode_count(A)
    if N < 1:
        raise ValueError("need at least one mode")
    n = np.arange(N + 1)
    c = 4.0 * (-A) ** n
    c[0] = 0.0
    return HolomorphicBoundaryFn(c)


def _exact_boundary_z(A: float, alpha: np.ndarray) -> np.ndarray:
    e = np.exp(-1j * alpha)
    return alpha - 4j * A * e / (1.0 + A * e)


def profile_z_exact(A: float, M: int):
    """Sample the exact surface z(alpha; A) at alpha_j = 2*pi*j/M.

    The crest-to-trough height of the family is 8A/(1 - A^2), attained
    between alpha = pi (crest) and alpha = 0 (trough).
    """
    from .geometry import ProfileCurve  # deferred: geometry sits above this module

    if not 0.0 <= A < 0.5:
        raise ValueError(f"amplitude A={A} outside [0, 1/2)")
    alpha = 2.0 * np.pi * np.arange(M) / M
    z = _exact_boundary_z(A, alpha)
    zeta = np.exp(-1j * alpha)
    margin = float(np.min(np.abs((1.0 - A * zeta) ** 2 / (1.0 + A * zeta) ** 2)))
    return ProfileCurve(
        alpha=alpha,
        x=z.real,
        y=z.imag,
        stagnation_margin=margin,
        source=crapper_w(A) if A > 0 else crapper_w(0.0, 1),
    )


def _phi(alpha):
    """2*sin(a)/a - cos(a), extended by its limit 1 at a = 0."""
    alpha = np.asarray(alpha, dtype=float)
    out = np.where(
        np.abs(alpha) < 1e-9,
        1.0 + alpha**2 / 6.0,
        2.0 * np.sin(np.where(alpha == 0, 1.0, alpha)) / np.where(alpha == 0, 1.0, alpha)
        - np.cos(alpha),
    )
    return out if out.ndim else float(out)


def _phi_prime(alpha: float) -> float:
    return 2.0 * (alpha * math.cos(alpha) - math.sin(alpha)) / alpha**2 + math.sin(alpha)


def a_max() -> CriticalAmplitudes:
    """Critical amplitudes of the family.

    The touching amplitude is m - sqrt(m^2 - 1) with
    m = max over [-pi, pi] of (2*sin(a)/a - cos(a)); the maximum is interior,
    so a bounded scalar minimization is polished by bisection on the
    derivative, giving the maximizer to machine precision.
    """
    res = minimize_scalar(
        lambda t: -_phi(t), bounds=(0.01, math.pi), method="bounded",
        options={"xatol": 1e-12},
    )
    lo, hi = res.x - 1e-4, res.x + 1e-4
    flo = _phi_prime(lo)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        fm = _phi_prime(mid)
        if fm == 0.0 or hi - lo < 1e-16:
            lo = hi = mid
            break
        if (fm > 0) == (flo > 0):
            lo, flo = mid, fm
        else:
            hi = mid
    alpha_star = 0.5 * (lo + hi)
    m = float(_phi(alpha_star))
    return CriticalAmplitudes(
        overhang_threshold=math.sqrt(2.0) - 1.0,
        a_max=m - math.sqrt(m * m - 1.0),
        maximizer_alpha=alpha_star,
    )


def exact_Q_closed_form(A: float, M: int) -> GridFn:
    """Commutator Q at the exact wave by residue calculus:

        Q(w(.; A)) = -8*(A - 1/A)^(-2) * (A/(zeta + A) - (1/A)/(zeta + 1/A))

    on |zeta| = 1, real on the grid.  The A -> 0 limit is the zero function
    and is returned directly at A = 0.
    """
    if not 0.0 <= A < 0.5:
        raise ValueError(f"amplitude A={A} outside [0, 1/2)")
    if A == 0.0:
        return GridFn(np.zeros(M), even=True)
    zeta = grid_zeta(M)
    q = -8.0 / (A - 1.0 / A) ** 2 * (A / (zeta + A) - (1.0 / A) / (zeta + 1.0 / A))
    return GridFn(q.real, even=True)


def _imag_w_boundary(A: float, zeta: np.ndarray) -> np.ndarray:
    w = -4j * A * zeta / (1.0 + A * zeta)
    return w.imag


def verify_exact_identities(A: float, M: int) -> dict:
    """Evaluate both sides of the four closed-form identities of the family
    on the boundary grid and return the maximum discrepancies.

    numerator_factorization : 1 + Omega*(Im w + Q) against
        (1 - 2*Omega)*(zeta - A)(zeta - 1/A)/((zeta + A)(zeta + 1/A)).
    conformal_derivative : 1 - i*zeta*w_zeta against
        ((zeta - 1/A)/(zeta + 1/A))^2.
    speed_modulus : |1 - i*zeta*w_zeta|^2 against the square of the rational
        factor above.
    dynamic_condition : the rational form of the zero-gravity dynamic
        boundary condition, invariant under zeta -> 1/zeta.

    All four are independent in the sense that each side is evaluated from
    its own closed form, never from the other side.
    """
    if not 0.0 < A < 0.5:
        raise ValueError(f"amplitude A={A} outside (0, 1/2)")
    Om = omega_of_A(A)
    B = bernoulli_of_A(A)
    zeta = grid_zeta(M)
    R = (zeta - A) * (zeta - 1.0 / A) / ((zeta + A) * (zeta + 1.0 / A))

    imw = _imag_w_boundary(A, zeta)
    Q = exact_Q_closed_form(A, M).values
    lhs1 = 1.0 + Om * (imw + Q)
    res1 = float(np.max(np.abs(lhs1 - (1.0 - 2.0 * Om) * R)))

    lhs2 = 1.0 - 1j * zeta * (-4j * A / (1.0 + A * zeta) ** 2)
    rhs2 = ((zeta - 1.0 / A) / (zeta + 1.0 / A)) ** 2
    res2 = float(np.max(np.abs(lhs2 - rhs2)))

    res3 = float(np.max(np.abs(np.abs(lhs2) ** 2 - (R.real) ** 2)))

    c = A * (1.0 + A * A) / (1.0 - A * A)
    lhs4 = (1.0 - 2.0 * Om * (zeta**2 - 2.0 * c * zeta + 1.0)
            / ((zeta + A) * (zeta + 1.0 / A))) ** 2
    rhs4 = 2.0 * B * R**2
    res4 = float(np.max(np.abs(lhs4 - rhs4)))

    return {
        "numerator_factorization": res1,
        "conformal_derivative": res2,
        "speed_modulus": res3,
        "dynamic_condition": res4,
    }


def stream_function(A: float, alpha, beta) -> FlowField:
    """Stream function of the exact wave at interior points.

    With zeta = exp(-i*(alpha + i*beta)) (so |zeta| = e^beta <= 1 for
    beta <= 0) and y = beta + Im w(zeta),

        psi = -beta - Omega*y^2/2
              - 4*Omega/(A^2 - 1) * Re(A^2*((1 - 2A^2)*zeta^2 + 1)/(1 + A*zeta)^2),

        psi_beta = -1 - Omega*y*x_alpha
              - 8*Omega*A^2/(A^2 - 1) * Re(zeta*((1 - 2A^2)*zeta - A)/(1 + A*zeta)^3).

    The harmonic correction decays like |zeta| = e^beta, so psi_beta
    approaches the shear profile -1 - Omega*y*x_alpha at depth, and psi
    vanishes identically on the surface beta = 0.
    """
    if not 0.0 <= A < 0.5:
        raise ValueError(f"amplitude A={A} outside [0, 1/2)")
    alpha = np.asarray(alpha, dtype=float)
    beta = np.asarray(beta, dtype=float)
    if np.any(beta > 1e-15):
        raise ValueError("stream function is defined on beta <= 0")
    Om = omega_of_A(A)
    zeta = np.exp(beta - 1j * alpha)
    y = beta - 4.0 * np.real(A * zeta / (1.0 + A * zeta))
    harm = A * A * ((1.0 - 2.0 * A * A) * zeta**2 + 1.0) / (1.0 + A * zeta) ** 2
    psi = -beta - 0.5 * Om * y * y - 4.0 * Om / (A * A - 1.0) * np.real(harm)
    x_alpha = np.real((1.0 - A * zeta) ** 2 / (1.0 + A * zeta) ** 2)
    harm_b = zeta * ((1.0 - 2.0 * A * A) * zeta - A) / (1.0 + A * zeta) ** 3
    psi_beta = (
        -1.0
        - Om * y * x_alpha
        - 8.0 * Om * A * A / (A * A - 1.0) * np.real(harm_b)
    )
    if psi.ndim == 0:
        return FlowField(float(psi), float(psi_beta), (float(alpha), float(beta)))
    return FlowField(psi, psi_beta, (alpha, beta))


def nondimensionalize(omega: float, g: float, b: float, c: float, k: float) -> ParamSet:
    """Dimensionless parameters from dimensional ones.

    Omega = omega/(c*k), G = g/(k*c^2), B = b/c^2 for wave speed c > 0 and
    wavenumber k > 0.  The family amplitude A is not determined by the
    dimensional data, so it is returned as NaN; pick an A before handing
    the result to the solver.
    """
    if c <= 0 or k <= 0:
        raise ValueError("wave speed c and wavenumber k must be positive")
    return ParamSet(
        A=float("nan"),
        G=g / (k * c * c),
        Omega=omega / (c * k),
        Bernoulli=b / (c * c),
    )
