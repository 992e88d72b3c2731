"""Tour of the exact zero-gravity wave family.

The family is parametrized by an amplitude A in [0, 1/2).  Every member is
a closed-form traveling wave on an infinitely deep constant-vorticity flow
with no gravity: the surface is rational in exp(-i*alpha), the vorticity
and Bernoulli constants are explicit functions of A, and the stream
function is available at every interior point.  Two critical amplitudes
organize the family: above sqrt(2)-1 the profile overhangs, and at
a_max = 0.45467... it touches itself above the trough, trapping a bubble
of air.  This script walks through all of it and renders the four regimes.
"""

from pathlib import Path

import numpy as np

import diskwave as dw
from diskwave.cli import write_profile_svg

OUT = Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)

crit = dw.a_max()
print("critical amplitudes of the family")
print(f"  overhang onset   : {crit.overhang_threshold:.16f}  (= sqrt(2) - 1)")
print(f"  touching wave    : {crit.a_max:.16f}")
print(f"  touch location   : alpha = {crit.maximizer_alpha:.12f}")
print()

print(" A      Omega(A)    B(A)       height 8A/(1-A^2)   regime")
for A in (0.0, 0.1, 0.2, 0.3, crit.overhang_threshold, 0.43, crit.a_max, 0.47):
    p = dw.ParamSet.from_family(A)
    h = 8 * A / (1 - A * A)
    if A < crit.overhang_threshold:
        regime = "graph"
    elif A < crit.a_max:
        regime = "overhanging"
    elif abs(A - crit.a_max) < 1e-12:
        regime = "touching"
    else:
        regime = "self-intersecting (nonphysical)"
    print(f" {A:.4f}  {p.Omega:9.6f}  {p.Bernoulli:9.6f}  {h:12.6f}        {regime}")
print()

# the four regimes, rendered one period each
print("rendering the four regimes to", OUT)
for tag, A in [
    ("graph", 0.8 * crit.a_max),
    ("overhanging", 0.97 * crit.a_max),
    ("touching", crit.a_max),
    ("self_intersecting", 1.06 * crit.a_max),
]:
    profile = dw.profile_z_exact(A, 1024)
    report = dw.self_intersections(profile)
    over = dw.is_overhanging(profile)
    write_profile_svg(str(OUT / f"family_{tag}.svg"), profile)
    print(f"  A = {A:.6f}: overhanging={over.overhanging}, "
          f"intersections={report.count} ({report.classification})")
print()

# every member really solves the free-surface problem: residual at machine zero
print("zero-gravity Bernoulli residual across the family")
for A in (0.1, 0.25, 0.4, 0.45):
    w = dw.crapper_w(A)
    r = dw.residual_F(w, dw.ParamSet.from_family(A))
    print(f"  A = {A:.2f}: max |F| = {r.max_norm():.2e}  (series length N = {w.N})")
print()

# the flow beneath the surface: psi vanishes on the surface and tends to a
# shear flow at depth
A = 0.3
alpha = np.linspace(0, 2 * np.pi, 16, endpoint=False)
surface = dw.stream_function(A, alpha, 0.0)
print(f"stream function at A = {A}")
print(f"  max |psi| on the surface     : {np.max(np.abs(surface.psi)):.2e}")
for beta in (-1.0, -3.0, -10.0):
    ff = dw.stream_function(A, 0.7, beta)
    print(f"  psi_beta at beta = {beta:5.1f}     : {ff.psi_beta:+.8f}")
print("  (psi_beta tends to -1 - Omega*y*x_alpha: the shear of the base flow)")
