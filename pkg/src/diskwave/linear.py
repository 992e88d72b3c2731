"""The linearized boundary operator and its residue-calculus diagnostics.

About the exact zero-gravity wave, the linearization of the Bernoulli
residual factors through the generalized Riemann-Hilbert operator

    L(A)v = Im( (1 - 2*Omega)*zeta*(zeta - A)(zeta + 1/A)
                 / ((zeta + A)(zeta - 1/A)) * v_zeta
                - Omega*v
                + 4*A*Omega*zeta*(v - v(-A)) / (zeta + A)^2 ),

acting on symmetric holomorphic v.  At A = 0 its matrix in the basis
i*zeta^n is diag(n - 1): a one-dimensional kernel (i*zeta) and cokernel
(cos alpha).  For A in (0, 1/2) the operator is invertible; the proof runs
through a complex ODE v' + p*v = q with meromorphic coefficients, and this
module replays every residue identity of that argument numerically with
contour quadrature as the independent oracle.

One printed constant of the elimination step is ambiguous in its source
(quadratic versus cubic denominator); `lemma_checks` decides it by testing
which candidate annihilates the residue of q at zeta = A, and reports the
verdict.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import QuadratureError
from .exact import omega_of_A
from .spectral import GridFn, HolomorphicBoundaryFn, basis_direction, grid_zeta, project_even


@dataclass
class LinearMatrix:
    """Dense truncation of L(A): column n = cosine modes of L(A)(i*zeta^n)."""

    entries: np.ndarray
    A: float
    N: int


@dataclass
class MeromorphicCoefficients:
    """Residues and Laurent data of the ODE coefficients p and q.

    p has simple poles at 0 and -A only; q has simple poles at 0, +-A.
    p0, p1 (resp. q0, q1) are the constant and linear Taylor coefficients of
    the regular parts at zeta = -A.  ``f_minus1`` is the residue parameter
    of the kernel function; it is real whenever v(-A) is purely imaginary,
    as the symmetry class forces on the real axis.
    """

    A: float
    v_at_negA: complex
    f_minus1: complex
    p_res_0: float
    p_res_A: float
    p_res_negA: float
    p0: float
    p1: float
    q_res_A: complex
    q_res_negA: complex
    q0: complex
    q1: complex


def _rh_coefficient(A: float, zeta: np.ndarray) -> np.ndarray:
    """(1 - 2*Omega)*zeta*(zeta - A)(zeta + 1/A) / ((zeta + A)(zeta - 1/A)),
    written with (A*zeta + 1)/(A*zeta - 1) so the A -> 0 limit is regular."""
    Om = omega_of_A(A)
    return (1.0 - 2.0 * Om) * zeta * (zeta - A) * (A * zeta + 1.0) / (
        (zeta + A) * (A * zeta - 1.0)
    )


def apply_L(A: float, v: HolomorphicBoundaryFn, M: int | None = None) -> GridFn:
    """Evaluate L(A)v on the boundary grid."""
    if not 0.0 <= A < 0.5:
        raise ValueError(f"amplitude A={A} outside [0, 1/2)")
    if M is None:
        M = v.default_grid()
    Om = omega_of_A(A)
    zeta = grid_zeta(M)
    vb = v.eval(zeta)
    v_negA = v.eval(-A)
    inner = (
        _rh_coefficient(A, zeta) * v.eval_deriv(zeta)
        - Om * vb
        + 4.0 * A * Om * zeta * (vb - v_negA) / (zeta + A) ** 2
    )
    return GridFn(np.imag(inner), even=True)


def apply_L0(A: float, v: HolomorphicBoundaryFn, M: int | None = None) -> GridFn:
    """Principal part only: the classical Riemann-Hilbert action on v_zeta."""
    if not 0.0 <= A < 0.5:
        raise ValueError(f"amplitude A={A} outside [0, 1/2)")
    if M is None:
        M = v.default_grid()
    zeta = grid_zeta(M)
    return GridFn(np.imag(_rh_coefficient(A, zeta) * v.eval_deriv(zeta)), even=True)


def assemble_L_matrix(A: float, N: int, M: int | None = None) -> LinearMatrix:
    """Dense (N+1) x (N+1) truncation of L(A) in the i*zeta^n basis."""
    if M is None:
        M = max(4 * N, 16)
    entries = np.empty((N + 1, N + 1))
    for n in range(N + 1):
        entries[:, n] = project_even(apply_L(A, basis_direction(n, N), M), N)
    return LinearMatrix(entries=entries, A=A, N=N)


def min_singular_value(m: LinearMatrix) -> float:
    """Smallest singular value of the dense truncation."""
    return float(np.linalg.svd(m.entries, compute_uv=False)[-1])


def monodromy_exponent(A: float) -> float:
    """Exponent (A^2 - 1)/(A^2 + 1) of the multi-valued homogeneous solution
    C*((zeta + A)/(zeta + 1/A))^2 * zeta^exponent; non-integer for A > 0."""
    return (A * A - 1.0) / (A * A + 1.0)


def contour_residue(fn, center: complex, radius: float, K: int = 256) -> complex:
    """(1/2*pi*i) * closed contour integral of fn around ``center``.

    Trapezoid rule on K points, spectrally accurate for fn analytic in a
    neighborhood of the circle.  The node count is doubled until two
    consecutive values agree; failure to converge signals a pole on or very
    near the contour.
    """
    prev = None
    k = K
    for _ in range(5):
        theta = 2.0 * np.pi * np.arange(k) / k
        ring = np.exp(1j * theta)
        with np.errstate(divide="ignore", invalid="ignore"):
            samples = fn(center + radius * ring) * ring
        if not np.all(np.isfinite(samples)):
            raise QuadratureError(
                f"integrand not finite on the contour around {center} (radius {radius})"
            )
        val = complex(radius * np.mean(samples))
        if prev is not None and abs(val - prev) <= 1e-11 * max(1.0, abs(val)):
            return val
        prev = val
        k *= 2
    raise QuadratureError(
        f"contour integral around {center} (radius {radius}) did not converge under doubling"
    )


def _laurent_coefficient(fn, center: complex, radius: float, order: int, K: int = 256) -> complex:
    """Coefficient of (zeta - center)^order in the Laurent expansion of fn."""
    return contour_residue(lambda z: fn(z) / (z - center) ** (order + 1), center, radius, K)


def eliminated_f_minus1(A: float, v_at_negA: complex) -> complex:
    """Residue parameter that removes the pole of q at zeta = A:

        f_{-1} = 2i*A*(1 + A^2) * v(-A) / (1 - 3A^2).

    Real for purely imaginary v(-A)."""
    return 2j * A * (1.0 + A * A) * v_at_negA / (1.0 - 3.0 * A * A)


def ode_p(A: float):
    """The coefficient p of the kernel ODE v' + p*v = q, as a callable.

        p = (1-A^2)/(1+A^2)/zeta - 2/(zeta + A) + 2/(zeta + 1/A).
    """
    c0 = (1.0 - A * A) / (1.0 + A * A)

    def p(z):
        z = np.asarray(z, dtype=complex)
        return c0 / z - 2.0 / (z + A) + 2.0 / (z + 1.0 / A)

    return p


def ode_q(A: float, v_at_negA: complex, f_minus1: complex | None = None):
    """The right side q of the kernel ODE, as a callable.

    Built from the unexpanded form
        q = (zeta + A)(zeta - 1/A) / ((1-2*Omega)*zeta*(zeta - A)(zeta + 1/A))
            * (4*A*Omega*v(-A)*zeta/(zeta + A)^2
               + i*f_{-1}*(1/(zeta + A) + 1/(A^2 (zeta + 1/A)) - 1/A)),
    which is exactly what the holomorphy argument produces before any
    partial-fraction simplification.  With ``f_minus1=None`` the eliminated
    value is substituted, removing the pole at zeta = A.
    """
    Om = omega_of_A(A)
    if f_minus1 is None:
        f_minus1 = eliminated_f_minus1(A, v_at_negA)

    def q(z):
        z = np.asarray(z, dtype=complex)
        front = (z + A) * (z - 1.0 / A) / ((1.0 - 2.0 * Om) * z * (z - A) * (z + 1.0 / A))
        inner = 4.0 * A * Om * v_at_negA * z / (z + A) ** 2 + 1j * f_minus1 * (
            1.0 / (z + A) + 1.0 / (A * A * (z + 1.0 / A)) - 1.0 / A
        )
        return front * inner

    return q


def ode_q_simplified(A: float, v_at_negA: complex):
    """Partial-fraction form of q after eliminating f_{-1}:

        q = 2*v(-A) * ( 1/zeta - 1/(zeta + A) - 1/(zeta + 1/A)
                        + 2*(1-A^2)/(A*(1+A^2)) / (zeta + 1/A)^2 ).
    """
    c = 2.0 * (1.0 - A * A) / (A * (1.0 + A * A))

    def q(z):
        z = np.asarray(z, dtype=complex)
        return 2.0 * v_at_negA * (
            1.0 / z - 1.0 / (z + A) - 1.0 / (z + 1.0 / A) + c / (z + 1.0 / A) ** 2
        )

    return q


def ode_coefficients(A: float, v_at_negA: complex, f_minus1: complex | None = None) -> MeromorphicCoefficients:
    """Closed-form residues and Laurent data of p and q.

    The q data (residue at -A and the Taylor coefficients q0, q1 of its
    regular part there) are those of the eliminated q; the residue of q at
    +A is reported for the actual ``f_minus1`` handed in, so a wrong
    elimination constant shows up there instead of silently vanishing.
    """
    if not 0.0 < A < 0.5:
        raise ValueError(f"amplitude A={A} outside (0, 1/2)")
    A2 = A * A
    v = complex(v_at_negA)
    if f_minus1 is None:
        f_minus1 = eliminated_f_minus1(A, v)
    res_qA = (
        2.0 * (1.0 - A2) ** 2 / (1.0 + A2) ** 2 * v
        + 1j * (1.0 - A2) ** 2 * (1.0 - 3.0 * A2) / (A * (1.0 + A2) ** 3) * f_minus1
    )
    return MeromorphicCoefficients(
        A=A,
        v_at_negA=v,
        f_minus1=complex(f_minus1),
        p_res_0=(1.0 - A2) / (1.0 + A2),
        p_res_A=0.0,
        p_res_negA=-2.0,
        p0=-(1.0 - 4.0 * A2 - A2 * A2) / (A * (1.0 - A2) * (1.0 + A2)),
        p1=-(1.0 - 3.0 * A2 + 5.0 * A2**2 + A2**3) / (A2 * (1.0 - A2) ** 2 * (1.0 + A2)),
        q_res_A=res_qA,
        q_res_negA=-2.0 * v,
        q0=-2.0 * v / (A * (1.0 + A2)),
        q1=-2.0 * (1.0 - A2 + 2.0 * A2 * A2) * v / (A2 * (1.0 - A2) ** 2 * (1.0 + A2)),
    )


def _candidate_elimination_constants(A: float, v: complex) -> dict:
    base = 2j * A * (1.0 + A * A) * v
    return {
        "plus_quadratic": base / (1.0 - 3.0 * A * A),
        "minus_quadratic": -base / (1.0 - 3.0 * A * A),
        "minus_cubic": -base / (1.0 - 3.0 * A**3),
    }


def lemma_checks(A: float, v_at_negA: complex = 1j, K: int = 256) -> dict:
    """Numerical replay of the kernel-triviality argument.

    Every residue and Laurent coefficient entering the argument is computed
    twice: from its closed form and by contour quadrature of the actual
    meromorphic functions p and q.  Items:

    1. elimination: which candidate elimination constant annihilates
       Res(q, A); emits the denominator verdict (quadratic vs cubic).
    2. simplified q: the eliminated q against its partial-fraction form.
    3. Res(q, -A) = -2 v(-A).
    4. the closing identity (p0^2 + p1) v(-A) - p0 q0 - q1 = 4 v(-A)/(1-A^2)^2
       with quadrature-computed Laurent data.
    5. Res(p, 0) = (1 - A^2)/(1 + A^2), inside (0, 1).

    Degenerate branch: v(-A) = 0 forces f_{-1} = 0 and q identically zero.
    """
    if not 0.0 < A < 0.5:
        raise ValueError(f"amplitude A={A} outside (0, 1/2)")
    v = complex(v_at_negA)
    radius = 0.5 * A  # half the distance to the nearest other pole of {0, +-A, -1/A}
    p = ode_p(A)
    closed = ode_coefficients(A, v)

    # item 1: elimination constant
    candidate_residuals = {}
    for name, f1 in _candidate_elimination_constants(A, v).items():
        qf = ode_q(A, v, f_minus1=f1)
        candidate_residuals[name] = abs(contour_residue(qf, A, radius, K))
    if v == 0:
        verdict_key, denominator = "degenerate", "none"
    else:
        verdict_key = min(candidate_residuals, key=candidate_residuals.get)
        denominator = "quadratic" if verdict_key.endswith("quadratic") else "cubic"

    q = ode_q(A, v)  # eliminated constant from here on
    q_simpl = ode_q_simplified(A, v)

    # item 2: simplified partial fractions, sampled on a pole-free circle
    ring = 0.7 * np.exp(2j * np.pi * np.arange(360) / 360)
    simplified_err = float(np.max(np.abs(q(ring) - q_simpl(ring))))

    # item 3
    res_q_negA = contour_residue(q, -A, radius, K)
    res_q_negA_err = abs(res_q_negA - (-2.0 * v))

    # item 4: Laurent data by quadrature, then the closing identity
    p0 = _laurent_coefficient(p, -A, radius, 0, K)
    p1 = _laurent_coefficient(p, -A, radius, 1, K)
    q0 = _laurent_coefficient(q, -A, radius, 0, K)
    q1 = _laurent_coefficient(q, -A, radius, 1, K)
    combination = (p0 * p0 + p1) * v - p0 * q0 - q1
    combination_err = abs(combination - 4.0 * v / (1.0 - A * A) ** 2)

    # item 5
    res_p_0 = contour_residue(p, 0.0, radius, K)
    res_p_0_err = abs(res_p_0 - closed.p_res_0)

    errors = {
        "elimination_residual": (0.0 if v == 0 else candidate_residuals[verdict_key]),
        "simplified_q": simplified_err,
        "residue_q_at_negA": res_q_negA_err,
        "combination": combination_err,
        "residue_p_at_0": res_p_0_err,
        "residue_p_at_A": abs(contour_residue(p, A, radius, K)),
        "residue_p_at_negA": abs(contour_residue(p, -A, radius, K) - (-2.0)),
        "laurent_p0": abs(p0 - closed.p0),
        "laurent_p1": abs(p1 - closed.p1),
        "laurent_q0": abs(q0 - closed.q0),
        "laurent_q1": abs(q1 - closed.q1),
    }
    return {
        "A": A,
        "v_at_negA": v,
        "f_minus1": closed.f_minus1,
        "candidate_residuals": candidate_residuals,
        "elimination_verdict": verdict_key,
        "denominator_verdict": denominator,
        "errors": errors,
        "max_abs_error": max(errors.values()),
        "residue_p_at_0_value": res_p_0.real,
        "residue_p_at_0_in_unit_interval": bool(0.0 < res_p_0.real < 1.0),
        "monodromy_exponent": monodromy_exponent(A),
    }
