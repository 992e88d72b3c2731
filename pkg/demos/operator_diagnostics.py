"""Diagnostics of the linearized operator and the residue-calculus replay.

Solvability of the wave problem near the exact family rests on the
invertibility of a generalized Riemann-Hilbert operator L(A).  Its dense
truncations are assembled here and scanned for singular values; the kernel
argument behind invertibility, which runs through a complex ODE
v' + p v = q with meromorphic coefficients, is replayed numerically with
contour quadrature.  One constant of that argument is recovered from the
numerics rather than trusted: the elimination constant's denominator comes
out quadratic, 1 - 3A^2 (with a positive sign), and the replay emits that
verdict.  The finite-depth transform and its convergence to the deep-water
Hilbert transform close the tour.
"""

import numpy as np

import diskwave as dw
# 1. the operator at A = 0 is an explicit shifted diagonal
m0 = dw.assemble_L_matrix(0.0, 8)
print("L(0) truncation, N = 8: diagonal", np.round(np.diag(m0.entries), 12))
print(f"  off-diagonal mass: {np.max(np.abs(m0.entries - np.diag(np.diag(m0.entries)))):.1e}")
print("  kernel direction i*zeta and cokernel cos(alpha) are visible as the zero row/column\n")

# 2. invertibility scan across the amplitude range
print("smallest singular value of the N = 64 truncation:")
print("   A      sigma_min(N=64)   sigma_min(N=32)")
for A in np.linspace(0.05, 0.45, 9):
    s64 = dw.min_singular_value(dw.assemble_L_matrix(A, 64))
    s32 = dw.min_singular_value(dw.assemble_L_matrix(A, 32))
    print(f"  {A:.2f}   {s64:12.6f}      {s32:12.6f}")
print("  bounded away from zero on (0, 1/2), and stable under truncation\n")

# 3. the factorization tying L(A) to the full linearized residual
A, M = 0.3, 512
w = dw.crapper_w(A, 128)
params = dw.ParamSet.from_family(A)
Om = dw.omega_of_A(A)
zeta = dw.grid_zeta(M)
prefactor = -(1 - 2 * Om) * np.real((zeta + A) * (zeta + 1 / A) / ((zeta - A) * (zeta - 1 / A)))
worst = 0.0
for n in range(9):
    v = dw.basis_direction(n, 128)
    lhs = dw.linearized_F_apply(w, params, v, M).values
    worst = max(worst, float(np.max(np.abs(lhs - prefactor * dw.apply_L(A, v, M).values))))
print(f"factorization of the linearized residual through L(A): defect {worst:.2e}\n")

# 4. residue replay of the kernel-triviality argument
print("residue replay (contour quadrature vs closed forms):")
for A in (0.2, 0.3, 0.4):
    rep = dw.lemma_checks(A, 1j)
    errs = rep["errors"]
    print(f"  A = {A}: max error {rep['max_abs_error']:.2e};"
          f" Res(p,0) = {rep['residue_p_at_0_value']:.12f} in (0,1);"
          f" denominator verdict: {rep['denominator_verdict']}")
    print(f"        candidate |Res(q, A)|: "
          + ", ".join(f"{k}={v:.2e}" for k, v in rep["candidate_residuals"].items()))
print("  only the quadratic-denominator constant kills the pole of q at +A\n")

# 5. finite depth: the transform converges to the Hilbert transform
M = 128
f = dw.synthesize_even(np.array([0.0, 2.0, 1.0, 0.5]), M)
print("finite-depth transform vs deep water, band-limited test function:")
for H in (3.0, 5.0, 10.0):
    diff = dw.hilbert_finite_depth(f, H).values - dw.hilbert(f).values
    print(f"  H = {H:5.1f}: ||T_H f - H f||_inf = {np.max(np.abs(diff)):.3e}"
          f"   (2 e^(-2H) ||f||_inf = {2 * np.exp(-2 * H) * np.max(np.abs(f.values)):.3e})")
