"""Newton iteration on the Bernoulli residual and parameter continuation.

The Newton system is square with no auxiliary constraints: the unknowns are
the N+1 real coefficients c_0..c_N of w and the equations are the cosine
modes 0..N of the residual.  The coefficient encoding keeps every iterate
in the symmetric class (purely imaginary Taylor coefficients), so the
residual carries no sine content and nothing needs to be pinned; the
linearization about the exact zero-gravity wave is invertible for every
amplitude in (0, 1/2).

Continuation in the gravity parameter G (or in the amplitude A, with the
vorticity and Bernoulli constants slaved to A) warm-starts each Newton
solve from the neighboring solution, so a single continuation is
inherently sequential; independent continuations for different (A, G)
targets share no state and run concurrently without coordination.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContinuationError, SingularJacobianError
from .exact import ParamSet, crapper_w, default_mode_count
from .spectral import (
    GridFn,
    HolomorphicBoundaryFn,
    _linearized_values,
    _residual_values,
    basis_direction,
    project_even,
)

DEFAULT_TOL = 1e-11
DEFAULT_MAX_ITER = 25
DEFAULT_MAX_HALVINGS = 5
COND_LIMIT = 1e12


@dataclass
class NewtonReport:
    iterations: int
    residual_history: list
    final_residual: float
    stagnation_margin: float
    converged: bool


@dataclass
class ContinuationTrace:
    """Solution branch: one (params, w, report) triple per converged step."""

    steps: list
    direction: str  # which parameter was varied: "G" or "A"

    def __len__(self):
        return len(self.steps)

    @property
    def final_params(self) -> ParamSet:
        return self.steps[-1][0]

    @property
    def final_w(self) -> HolomorphicBoundaryFn:
        return self.steps[-1][1]


def _validate_entry_amplitude(A: float):
    if not (0.0 <= A < 0.5):  # also rejects NaN
        raise ValueError(f"solver entry needs amplitude A in [0, 1/2), got {A}")


def newton_solve(
    w0: HolomorphicBoundaryFn,
    params: ParamSet,
    M: int | None = None,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    max_halvings: int = DEFAULT_MAX_HALVINGS,
    cond_limit: float = COND_LIMIT,
):
    """Newton's method for F(w; params) = 0.

    Jacobian columns are exact directional derivatives along the basis
    directions i*zeta^n.  Full steps with fallback to halving when the
    residual norm fails to decrease.  Convergence is measured by the max
    norm of the full grid residual, tail modes included.

    Returns
    -------
    (w, report) : the final iterate and a NewtonReport.  ``report.converged``
    is False when the iteration stalled or ran out of iterations.

    Raises
    ------
    StagnationError
        If an iterate leaves the admissible set.
    SingularJacobianError
        If the Newton matrix condition estimate exceeds ``cond_limit``.
    """
    _validate_entry_amplitude(params.A)
    c = np.array(w0.coeffs, dtype=float)
    N = len(c) - 1
    if M is None:
        M = max(4 * N, 16)

    w = HolomorphicBoundaryFn(c)
    r = _residual_values(w, params, M)
    rnorm = float(np.max(np.abs(r)))
    history = [rnorm]
    iterations = 0

    for _ in range(max_iter):
        if rnorm <= tol:
            break
        J = np.empty((N + 1, N + 1))
        for n in range(N + 1):
            v = basis_direction(n, N)
            J[:, n] = project_even(GridFn(_linearized_values(w, params, v, M), even=True), N)
        cond = np.linalg.cond(J)
        if not np.isfinite(cond) or cond > cond_limit:
            raise SingularJacobianError(cond)
        rhs = -project_even(GridFn(r, even=True), N)
        dc = np.linalg.solve(J, rhs)

        accepted = False
        scale = 1.0
        for _ in range(max_halvings + 1):
            trial = HolomorphicBoundaryFn(c + scale * dc)
            r_trial = _residual_values(trial, params, M)
            rn_trial = float(np.max(np.abs(r_trial)))
            if rn_trial < rnorm:
                c = trial.coeffs
                w = trial
                r, rnorm = r_trial, rn_trial
                accepted = True
                break
            scale *= 0.5
        iterations += 1
        if not accepted:
            history.append(rnorm)
            break
        history.append(rnorm)

    return w, NewtonReport(
        iterations=iterations,
        residual_history=history,
        final_residual=rnorm,
        stagnation_margin=w.stagnation_margin(M),
        converged=rnorm <= tol,
    )


def continue_in_G(
    A: float,
    G_target: float,
    n_steps: int,
    N: int | None = None,
    M: int | None = None,
    tol: float = DEFAULT_TOL,
    **newton_kw,
) -> ContinuationTrace:
    """March the branch from the exact wave at G = 0 to G_target.

    G is stepped linearly; each Newton solve is warm-started from the
    previous step.  Omega and B stay slaved to A throughout.  A returned
    trace contains only converged steps; any failure raises a
    ContinuationError carrying the step index and the partial trace.
    """
    _validate_entry_amplitude(A)
    if A == 0.0:
        raise ValueError("continuation needs A > 0 (the linearization at A = 0 has a kernel)")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if N is None:
        N = max(default_mode_count(A), 64)

    gravities = [0.0] if G_target == 0.0 else list(np.linspace(0.0, G_target, n_steps + 1))
    w = crapper_w(A, N)
    steps = []
    for idx, G in enumerate(gravities):
        params = ParamSet.from_family(A, G)
        try:
            w, report = newton_solve(w, params, M=M, tol=tol, **newton_kw)
        except Exception as exc:
            raise ContinuationError(idx, ContinuationTrace(steps, "G"), str(exc)) from exc
        if not report.converged:
            raise ContinuationError(
                idx, ContinuationTrace(steps, "G"),
                f"Newton stalled at G={G:.6g} with residual {report.final_residual:.3e}",
            )
        steps.append((params, w, report))
    return ContinuationTrace(steps, "G")


def continue_in_A(
    G: float,
    A_from: float,
    A_to: float,
    n_steps: int,
    N: int | None = None,
    M: int | None = None,
    tol: float = DEFAULT_TOL,
    **newton_kw,
) -> ContinuationTrace:
    """March the branch in amplitude at fixed gravity.

    At every amplitude the vorticity and Bernoulli constants are reset to
    their family values Omega(A), B(A).  The anchor at A_from is reached by
    gravity continuation from the exact wave; subsequent amplitudes warm
    start from the neighbor.
    """
    for a in (A_from, A_to):
        if not (0.0 < a < 0.5):
            raise ValueError(f"amplitude range must lie inside (0, 1/2), got {a}")
    if n_steps < 1:
        raise ValueError("n_steps must be at least 1")
    if N is None:
        N = max(default_mode_count(max(A_from, A_to)), 64)

    seed_steps = max(1, int(math.ceil(abs(G) / 0.005)))
    amplitudes = list(np.linspace(A_from, A_to, n_steps + 1))
    steps = []
    try:
        seed = continue_in_G(A_from, G, seed_steps, N=N, M=M, tol=tol, **newton_kw)
    except ContinuationError as exc:
        raise ContinuationError(0, ContinuationTrace([], "A"),
                                f"anchor solve failed: {exc}") from exc
    w = seed.final_w
    steps.append(seed.steps[-1])
    for idx, A in enumerate(amplitudes[1:], start=1):
        params = ParamSet.from_family(A, G)
        try:
            w, report = newton_solve(w, params, M=M, tol=tol, **newton_kw)
        except Exception as exc:
            raise ContinuationError(idx, ContinuationTrace(steps, "A"), str(exc)) from exc
        if not report.converged:
            raise ContinuationError(
                idx, ContinuationTrace(steps, "A"),
                f"Newton stalled at A={A:.6g} with residual {report.final_residual:.3e}",
            )
        steps.append((params, w, report))
    return ContinuationTrace(steps, "A")


def jacobian_fd_check(
    w: HolomorphicBoundaryFn,
    params: ParamSet,
    n_probes: int = 10,
    eps: float = 1e-5,
    M: int | None = None,
    seed: int = 0,
) -> float:
    """Max relative error of the analytic linearization against central
    differences of the residual over random coefficient directions.

    Probes are normalized in the graph norm ||(1 + n) d_n||_2, which keeps
    the finite-difference truncation constant uniform in the truncation
    order: the linearization is first order in v (it contains zeta*v_zeta),
    so an unweighted high-mode probe would inflate the O(eps^2) remainder
    of the difference quotient without testing anything new.
    """
    if M is None:
        M = w.default_grid()
    rng = np.random.default_rng(seed)
    N = w.N
    weights = 1.0 + np.arange(N + 1)
    worst = 0.0
    for _ in range(n_probes):
        d = rng.standard_normal(N + 1)
        d /= np.linalg.norm(weights * d)  # excludes the zero probe by construction
        v = HolomorphicBoundaryFn(d)
        plus = _residual_values(HolomorphicBoundaryFn(w.coeffs + eps * d), params, M)
        minus = _residual_values(HolomorphicBoundaryFn(w.coeffs - eps * d), params, M)
        fd = (plus - minus) / (2.0 * eps)
        an = _linearized_values(w, params, v, M)
        err = float(np.max(np.abs(fd - an))) / max(float(np.max(np.abs(an))), 1e-300)
        worst = max(worst, err)
    return worst
