"""Profile reconstruction and self-intersection analysis.

A wave profile is the curve z(alpha) = alpha + w(exp(-i*alpha)) with the
periodicity convention z(alpha + 2*pi) = z(alpha) + 2*pi.  The symmetric
coefficient encoding makes x odd and y even in alpha, so the trough sits at
alpha = 0 (x = 0) and the crest at alpha = pi.

Self-intersections of the surface are zeros of the chord-slope function

    f(a, a') = (z(a) - z(a')) / (a - a'),

whose diagonal limit is z_alpha.  For symmetric profiles every intersection
on the trough or crest vertical reduces to a one-dimensional sign analysis
of x(alpha), which stays robust arbitrarily close to tangency; a 2-d Newton
refinement covers generic candidate pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import BracketError, StagnationError
from .spectral import HolomorphicBoundaryFn, _signed_modes

TROUGH_BAND = 0.2          # |s + t| mod 2pi band treated by the 1-d symmetric path
DEDUP_RADIUS = 1e-4        # periodic metric radius for merging refined zeros
MERGE_RADIUS = 1e-5        # zeros closer than this count as one (tangency proxy)
DET_TOLERANCE = 1e-8       # normalized Jacobian determinant for tangency
GAP_TOLERANCE = 1e-8       # |x| at a trough-line minimum that counts as touching


@dataclass
class ProfileCurve:
    """Sampled free surface with x(alpha + 2*pi) = x(alpha) + 2*pi."""

    alpha: np.ndarray
    x: np.ndarray
    y: np.ndarray
    stagnation_margin: float
    source: HolomorphicBoundaryFn | None = None

    def __len__(self):
        return len(self.alpha)

    @property
    def z(self) -> np.ndarray:
        return self.x + 1j * self.y

    def interpolant(self) -> "_TrigCurve":
        return _TrigCurve(self.z - self.alpha)

    def x_alpha(self) -> np.ndarray:
        """dx/dalpha on the grid by spectral differentiation of x - alpha."""
        return 1.0 + _deriv_real(self.x - self.alpha)

    def y_alpha(self) -> np.ndarray:
        return _deriv_real(self.y)

    def symmetry_defect(self) -> float:
        """Max violation of x(-a) = -x(a), y(-a) = y(a) on the grid."""
        M = len(self.alpha)
        j = np.arange(1, M)
        ex = np.abs(self.x[j] + self.x[M - j] - 2.0 * np.pi)
        ey = np.abs(self.y[j] - self.y[M - j])
        return float(max(ex.max(), ey.max()))


@dataclass
class IntersectionReport:
    """Distinct self-intersections modulo the (a, a') swap symmetry."""

    count: int
    locations: list          # entries (alpha, alpha_prime, x, y)
    classification: str      # "none" | "transversal" | "tangential"
    min_gap: float           # smallest |z(a) - z(a')| over candidate pairs
    failures: list = field(default_factory=list)


@dataclass
class OverhangReport:
    overhanging: bool
    alpha_star: float        # location of the most negative x_alpha
    min_x_alpha: float

    def __bool__(self):
        return self.overhanging


@dataclass
class TouchingResult:
    """Output of the touching-amplitude bisection."""

    A: float
    profile: ProfileCurve
    report: IntersectionReport
    history: list            # (A probed, signed trough-line gap)


def _deriv_real(values: np.ndarray) -> np.ndarray:
    M = len(values)
    k = _signed_modes(M)
    return np.real(np.fft.ifft(1j * k * np.fft.fft(values)))


class _TrigCurve:
    """Trigonometric interpolant of the periodic part of a profile.

    Evaluates the unwrapped curve z(s) = s + p(s) and its derivative for any
    real s, where p is the 2*pi-periodic part recovered from the samples.
    """

    def __init__(self, periodic_part: np.ndarray):
        M = len(periodic_part)
        self.modes = _signed_modes(M)
        self.coeffs = np.fft.fft(periodic_part) / M

    def z(self, s):
        s = np.asarray(s, dtype=float)
        phase = np.exp(1j * np.multiply.outer(s, self.modes))
        return s + phase @ self.coeffs

    def dz(self, s):
        s = np.asarray(s, dtype=float)
        phase = np.exp(1j * np.multiply.outer(s, self.modes))
        return 1.0 + phase @ (1j * self.modes * self.coeffs)

    def x(self, s):
        return np.real(self.z(s))


def reconstruct_profile(w: HolomorphicBoundaryFn, M: int) -> ProfileCurve:
    """Profile z(alpha) = alpha + w(exp(-i*alpha)) on an M-point grid.

    Raises StagnationError when the surface velocity factor vanishes on the
    grid, since the conformal parametrization degenerates there.
    """
    alpha = 2.0 * np.pi * np.arange(M) / M
    wb = w.boundary_values(M)
    margin = w.stagnation_margin(M)
    if margin <= 1e-12:
        raise StagnationError(margin, 1e-12)
    return ProfileCurve(
        alpha=alpha, x=alpha + wb.real, y=wb.imag,
        stagnation_margin=margin, source=w,
    )


def chord_slope_matrix(p: ProfileCurve) -> np.ndarray:
    """f on the pair grid, indexed [j, k] = ((z(a_j + d_k) - z(a_j)) / d_k)
    with d_k = 2*pi*k/M; the k = 0 column carries the diagonal limit z_alpha.
    """
    M = len(p)
    Z = p.z
    za = p.x_alpha() + 1j * p.y_alpha()
    out = np.empty((M, M), dtype=complex)
    out[:, 0] = za
    j = np.arange(M)
    for k in range(1, M):
        shifted = Z[(j + k) % M] + 2.0 * np.pi * ((j + k) >= M)
        out[:, k] = (shifted - Z) / (2.0 * np.pi * k / M)
    return out


def _local_minima_2d(F: np.ndarray) -> list:
    """Grid local minima of F over (j periodic, k clamped), k >= 1."""
    M = F.shape[0]
    sub = F[:, 1:]
    up = np.roll(sub, 1, axis=0)
    down = np.roll(sub, -1, axis=0)
    left = np.empty_like(sub)
    left[:, 1:] = sub[:, :-1]
    left[:, 0] = np.inf
    right = np.empty_like(sub)
    right[:, :-1] = sub[:, 1:]
    right[:, -1] = np.inf
    mask = (sub <= up) & (sub <= down) & (sub <= left) & (sub <= right)
    jj, kk = np.nonzero(mask)
    return list(zip(jj.tolist(), (kk + 1).tolist()))


def _refine_pair(curve: _TrigCurve, s: float, t: float):
    """2-d Newton on z(s) - z(t) = 0.  Returns (s, t, gap, ndet, converged)."""
    for _ in range(60):
        g = complex(curve.z(s) - curve.z(t))
        ds = complex(curve.dz(s))
        dt = complex(curve.dz(t))
        det = -ds.real * dt.imag + ds.imag * dt.real
        scale = abs(ds) * abs(dt)
        if abs(g) < 1e-13:
            return s, t, abs(g), abs(det) / scale, True
        if abs(det) < 1e-14 * scale:
            return s, t, abs(g), abs(det) / scale, abs(g) < 1e-9
        # solve [[ds.re, -dt.re], [ds.im, -dt.im]] [es, et] = -g
        es = (-g.real * (-dt.imag) - (-dt.real) * (-g.imag)) / det
        et = (ds.real * (-g.imag) - (-g.real) * ds.imag) / det
        step = math.hypot(es, et)
        if step > 0.5:
            es *= 0.5 / step
            et *= 0.5 / step
        s += es
        t += et
    g = complex(curve.z(s) - curve.z(t))
    ds, dt = complex(curve.dz(s)), complex(curve.dz(t))
    det = -ds.real * dt.imag + ds.imag * dt.real
    return s, t, abs(g), abs(det) / (abs(ds) * abs(dt)), abs(g) < 1e-9


def _normalize_pair(s: float, t: float):
    """Canonical representative: t in [0, 2*pi), s = t + d with d in (0, 2*pi)."""
    if s < t:
        s, t = t, s
    shift = math.floor(t / (2.0 * math.pi))
    t -= 2.0 * math.pi * shift
    s -= 2.0 * math.pi * shift
    return s, t


def _min_x_on_half_period(curve: _TrigCurve, n_scan: int = 2001):
    """Minimum of x over the trough-side arc [0.05, pi], refined locally."""
    a = np.linspace(0.05, math.pi, n_scan)
    vals = curve.x(a)
    i = int(np.argmin(vals))
    lo = a[max(i - 1, 0)]
    hi = a[min(i + 1, n_scan - 1)]
    res = minimize_scalar(lambda s: float(curve.x(s)), bounds=(lo, hi),
                          method="bounded", options={"xatol": 1e-14})
    return float(res.fun), float(res.x)


def _symmetric_line_intersections(curve: _TrigCurve, M: int, gap_tol: float):
    """Intersections of a symmetric profile on the trough/crest verticals.

    The symmetric pair {a, -a} meets on the trough line exactly when
    x(a) = 0, and {a, 2*pi - a} meets on the crest line when x(a) = pi.
    On the trough side the signed minimum of x over the half period decides
    everything: positive means clear, a dip within gap_tol of zero is the
    tangential (touching) case, and a negative dip gives the two transversal
    crossings bracketed around the minimizer.  This stays robust arbitrarily
    close to tangency, where a generic 2-d zero search degenerates.
    """
    locations = []
    tangential = False

    minval, argmin = _min_x_on_half_period(curve)
    min_gap = 2.0 * abs(minval)
    if abs(minval) <= gap_tol:
        ystar = float(np.imag(curve.z(argmin)))
        locations.append((argmin, 2.0 * math.pi - argmin, 0.0, ystar))
        tangential = True
    elif minval < 0.0:
        xfun = lambda s: float(curve.x(s))
        left = argmin
        while xfun(left) <= 0.0 and left > 1e-6:
            left = max(left - 0.05, 1e-6)
        right = argmin
        while xfun(right) <= 0.0 and right < math.pi:
            right = min(right + 0.05, math.pi)
        for lo, hi in ((left, argmin), (argmin, right)):
            if xfun(lo) * xfun(hi) < 0:
                root = brentq(xfun, lo, hi, xtol=1e-14)
                ystar = float(np.imag(curve.z(root)))
                locations.append((float(root), 2.0 * math.pi - float(root), 0.0, ystar))
                min_gap = 0.0
        # catch any further trough-line crossings away from the main dip
        a_grid = np.linspace(1e-6, math.pi - 1e-9, 4 * M)
        vals = curve.x(a_grid)
        sgn = np.sign(vals)
        for i in np.nonzero(sgn[1:] * sgn[:-1] < 0)[0]:
            root = brentq(xfun, a_grid[i], a_grid[i + 1], xtol=1e-14)
            if all(abs(root - loc[0]) > 1e-8 for loc in locations):
                ystar = float(np.imag(curve.z(root)))
                locations.append((float(root), 2.0 * math.pi - float(root), 0.0, ystar))
                min_gap = 0.0

    # crest line: interior sign changes of x - pi away from the crest itself
    a_grid = np.linspace(1e-6, math.pi - 0.05, 4 * M)
    vals = curve.x(a_grid) - math.pi
    sgn = np.sign(vals)
    for i in np.nonzero(sgn[1:] * sgn[:-1] < 0)[0]:
        root = brentq(lambda s: float(curve.x(s)) - math.pi,
                      a_grid[i], a_grid[i + 1], xtol=1e-14)
        ystar = float(np.imag(curve.z(root)))
        locations.append((float(root), 2.0 * math.pi - float(root), math.pi, ystar))
        min_gap = 0.0
    return locations, tangential, min_gap


def self_intersections(
    p: ProfileCurve,
    threshold_factor: float = 0.2,
    gap_tol: float = GAP_TOLERANCE,
) -> IntersectionReport:
    """Locate and classify self-intersections of one profile.

    Candidate pairs are grid local minima of |f| below
    threshold_factor * median(|f|) on the pair grid (a, a + d) with
    d in (0, 2*pi); the window suffices for every amplitude this library
    produces, since period-shifted copies stay more than a wavelength apart
    horizontally.  Candidates on the trough/crest verticals of a symmetric
    profile are resolved by the 1-d sign analysis of x; generic candidates
    are refined by 2-d Newton and deduplicated in the periodic metric.

    Tangency is declared when two refined zeros merge (closer than the
    merge radius), when the normalized refinement Jacobian determinant
    drops below tolerance, or, on the symmetric path, when the extremum of
    x clears the line by less than ``gap_tol``.
    """
    if p.stagnation_margin <= 0:
        raise StagnationError(p.stagnation_margin, 0.0)
    M = len(p)
    curve = p.interpolant()
    symmetric = p.symmetry_defect() < 1e-9

    F = np.abs(chord_slope_matrix(p))
    threshold = threshold_factor * float(np.median(F))
    minima = [(j, k) for j, k in _local_minima_2d(F) if F[j, k] < threshold]

    locations = []
    failures = []
    tangential = False
    min_gap = math.inf

    if symmetric:
        sym_locs, sym_tang, sym_gap = _symmetric_line_intersections(curve, M, gap_tol)
        locations.extend(sym_locs)
        tangential = tangential or sym_tang
        min_gap = min(min_gap, sym_gap)

    refined = []
    for j, k in minima:
        t0 = 2.0 * np.pi * j / M
        s0 = t0 + 2.0 * np.pi * k / M
        if symmetric and abs(((s0 + t0) + math.pi) % (2.0 * math.pi) - math.pi) < TROUGH_BAND:
            continue  # handled by the symmetric 1-d path
        s, t, gap, ndet, ok = _refine_pair(curve, s0, t0)
        if not ok:
            if gap > 1e-7:
                failures.append((s0, t0, gap))
            continue
        refined.append((*_normalize_pair(s, t), ndet))

    # deduplicate refined zeros in the periodic metric on (t, d)
    kept = []
    for s, t, ndet in refined:
        d = s - t
        merged = False
        for m in kept:
            dt = abs(((t - m["t"]) + math.pi) % (2.0 * math.pi) - math.pi)
            dd = abs(d - m["d"])
            if math.hypot(dt, dd) < DEDUP_RADIUS:
                if math.hypot(dt, dd) > 0 and math.hypot(dt, dd) < MERGE_RADIUS:
                    m["merging"] = True
                merged = True
                break
        if not merged:
            kept.append({"t": t, "d": d, "ndet": ndet, "merging": False})

    for m in kept:
        s = m["t"] + m["d"]
        zs = complex(curve.z(s))
        locations.append((s % (2.0 * math.pi), m["t"], zs.real, zs.imag))
        min_gap = min(min_gap, 0.0)
        if m["ndet"] < DET_TOLERANCE or m["merging"]:
            tangential = True

    count = len(locations)
    if count == 0:
        classification = "none"
        if not np.isfinite(min_gap):
            min_gap = float(np.min(F[:, 1:])) * 2.0 * np.pi / M  # crude clearance scale
    else:
        classification = "tangential" if tangential else "transversal"
    return IntersectionReport(
        count=count,
        locations=locations,
        classification=classification,
        min_gap=float(min_gap),
        failures=failures,
    )


def is_overhanging(p: ProfileCurve) -> OverhangReport:
    """Whether y fails to be a graph over x, i.e. min x_alpha < 0.

    The grid minimum of x_alpha is polished by bounded minimization of the
    interpolant's derivative; the witness alpha of the minimum is returned.
    """
    xa = p.x_alpha()
    i = int(np.argmin(xa))
    M = len(p)
    h = 2.0 * np.pi / M
    curve = p.interpolant()
    res = minimize_scalar(
        lambda s: float(np.real(curve.dz(s))),
        bounds=(p.alpha[i] - h, p.alpha[i] + h),
        method="bounded",
        options={"xatol": 1e-13},
    )
    mn = float(res.fun)
    return OverhangReport(overhanging=mn < 0.0, alpha_star=float(res.x) % (2.0 * np.pi),
                          min_x_alpha=mn)


def crest_trough_height(p: ProfileCurve) -> float:
    """Vertical crest-to-trough distance y(pi) - y(0) from grid values."""
    M = len(p)
    if M % 2 != 0:
        raise ValueError("need an even number of samples so that alpha = pi is a grid point")
    return float(p.y[M // 2] - p.y[0])


def find_touching_A(
    G: float,
    bracket: tuple,
    tol: float = 1e-6,
    N: int | None = None,
    M: int = 512,
    n_steps: int | None = None,
    profile_M: int = 2048,
) -> TouchingResult:
    """Amplitude A*(G) at which the solution branch first touches itself.

    Bisection on the signed trough-line gap: the minimum of x(alpha) over
    the trough-side half period is positive below touching, negative (two
    transversal crossings) above, and zero exactly at the touching wave.
    Every probe is solved by gravity continuation warm-started from the
    nearest previously solved amplitude.

    The report of the returned profile classifies the intersection as
    tangential at the resolution of the bisection: the gap tolerance is
    scaled from the gap slope across the final bracket.

    Raises
    ------
    BracketError
        If the bracket endpoints do not straddle the touching transition.
    """
    from .errors import DiskwaveError
    from .exact import ParamSet, crapper_w, default_mode_count
    from .solver import continue_in_G, newton_solve

    a_lo, a_hi = float(bracket[0]), float(bracket[1])
    if not (0.0 < a_lo < a_hi < 0.5):
        raise BracketError(f"bracket ({a_lo}, {a_hi}) must satisfy 0 < lo < hi < 1/2")
    if N is None:
        N = max(default_mode_count(a_hi), 64)
    if n_steps is None:
        n_steps = max(2, int(math.ceil(abs(G) / 0.005)))

    solutions: dict[float, HolomorphicBoundaryFn] = {}

    def solve_at(A: float) -> HolomorphicBoundaryFn:
        if G == 0.0:
            w = crapper_w(A, N)
            solutions[A] = w
            return w
        if solutions:
            nearest = min(solutions, key=lambda a: abs(a - A))
            w0 = solutions[nearest].copy_with(solutions[nearest].coeffs)
            params = ParamSet.from_family(A, G)
            try:
                w, rep = newton_solve(w0, params, M=M)
                if rep.converged:
                    solutions[A] = w
                    return w
            except DiskwaveError:
                pass  # fall back to a fresh continuation from the exact wave
        trace = continue_in_G(A, G, n_steps, N=N, M=M)
        w = trace.steps[-1][1]
        solutions[A] = w
        return w

    def signed_gap(A: float):
        w = solve_at(A)
        prof = reconstruct_profile(w, profile_M)
        minx, argmin = _min_x_on_half_period(prof.interpolant())
        return minx, argmin, prof

    history = []
    g_lo, _, _ = signed_gap(a_lo)
    history.append((a_lo, g_lo))
    if g_lo <= 0:
        raise BracketError(f"lower endpoint A={a_lo} already self-intersects (gap {g_lo:.3e})")
    g_hi, _, _ = signed_gap(a_hi)
    history.append((a_hi, g_hi))
    if g_hi > 0:
        raise BracketError(f"upper endpoint A={a_hi} does not self-intersect (gap {g_hi:.3e})")

    lo, hi, glo, ghi = a_lo, a_hi, g_lo, g_hi
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid, _, _ = signed_gap(mid)
        history.append((mid, g_mid))
        if g_mid <= 0:
            hi, ghi = mid, g_mid
        else:
            lo, glo = mid, g_mid

    A_star = 0.5 * (lo + hi)
    g_star, _, profile = signed_gap(A_star)
    history.append((A_star, g_star))
    slope = abs(ghi - glo) / max(hi - lo, 1e-300)
    gap_tol = max(1e-10, slope * (hi - lo), 1.5 * abs(g_star))
    report = self_intersections(profile, gap_tol=gap_tol)
    return TouchingResult(A=A_star, profile=profile, report=report, history=history)
