"""Fourier-grid machinery on the unit circle.

Everything here works with real 2*pi-periodic functions sampled on the
uniform grid alpha_j = 2*pi*j/M and with holomorphic functions on the unit
disk represented by truncated power series

    w(zeta) = sum_{n=0}^{N} i*c_n * zeta**n,   c_n real,

whose purely imaginary Taylor coefficients encode the reflection symmetry
w(conj(zeta)) = -conj(w(zeta)).  On the boundary zeta = exp(-i*alpha) this
makes Im w even in alpha and Re w odd in alpha.

The module provides the periodic Hilbert transform and its finite-depth
variant, the commutator operator

    Q(y) = y*H(y_alpha) - H(y*y_alpha)

by an FFT route and by an independent singular-quadrature route, the
free-surface Bernoulli residual F for a wave configuration, and the exact
directional derivative of F.

Every operation is a pure function of its arguments with no shared mutable
state, so concurrent evaluation for different configurations is safe.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import StagnationError

# Margin below which a configuration is treated as stagnant (outside the
# admissible open set where the conformal map is a diffeomorphism).
STAGNATION_TOLERANCE = 1e-6


def grid_alpha(M: int) -> np.ndarray:
    """Uniform grid alpha_j = 2*pi*j/M, j = 0..M-1."""
    return 2.0 * np.pi * np.arange(M) / M


def grid_zeta(M: int) -> np.ndarray:
    """Boundary points zeta_j = exp(-i*alpha_j) of the unit circle."""
    return np.exp(-1j * grid_alpha(M))


@dataclass
class GridFn:
    """Real 2*pi-periodic function sampled at alpha_j = 2*pi*j/M.

    The ``even`` tag marks functions known to satisfy f(-alpha) = f(alpha)
    on the grid, i.e. boundary traces of functions with f(conj zeta) = f(zeta).
    """

    values: np.ndarray
    even: bool = False

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 1 or len(self.values) % 2 != 0:
            raise ValueError("GridFn needs a 1-d array with an even number of samples")

    def __len__(self):
        return len(self.values)

    @property
    def alpha(self) -> np.ndarray:
        return grid_alpha(len(self.values))

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.values)))

    def check_even(self, tol: float = 1e-12) -> float:
        """Max deviation from the even symmetry values[j] == values[M-j]."""
        v = self.values
        return float(np.max(np.abs(v - np.roll(v[::-1], 1))))


@dataclass
class HolomorphicBoundaryFn:
    """Truncated power series w(zeta) = sum_n i*c_n zeta^n with real c_n.

    The real storage of the coefficients enforces the reflection symmetry
    w(conj zeta) = -conj(w(zeta)) exactly, which is what keeps every grid
    quantity derived from w either even or odd in alpha.
    """

    coeffs: np.ndarray

    def __post_init__(self):
        self.coeffs = np.asarray(self.coeffs, dtype=float)
        if self.coeffs.ndim != 1 or len(self.coeffs) == 0:
            raise ValueError("coeffs must be a non-empty 1-d real array")

    @property
    def N(self) -> int:
        return len(self.coeffs) - 1

    def default_grid(self) -> int:
        # products of band-limited functions are exactly resolved at M = 4N
        return max(4 * self.N, 16)

    def boundary_values(self, M: int) -> np.ndarray:
        """Complex trace w(exp(-i*alpha_j)), j = 0..M-1."""
        return 1j * _eval_series_fft(self.coeffs, M)

    def imag_trace(self, M: int) -> GridFn:
        """Im w on the boundary grid (even in alpha)."""
        return GridFn(self.boundary_values(M).imag, even=True)

    def zwz_trace(self, M: int) -> np.ndarray:
        """Trace of zeta * w_zeta(zeta) on the boundary grid."""
        n = np.arange(len(self.coeffs))
        return 1j * _eval_series_fft(n * self.coeffs, M)

    def one_minus_izwz(self, M: int) -> np.ndarray:
        """Trace of 1 - i*zeta*w_zeta, the complex surface velocity factor z_alpha."""
        return 1.0 - 1j * self.zwz_trace(M)

    def stagnation_margin(self, M: int | None = None) -> float:
        """min |1 - i*zeta*w_zeta| over the boundary grid."""
        if M is None:
            M = self.default_grid()
        return float(np.min(np.abs(self.one_minus_izwz(M))))

    def eval(self, zeta) -> np.ndarray | complex:
        """Evaluate w at arbitrary points of the closed disk."""
        zeta = np.asarray(zeta, dtype=complex)
        return 1j * np.polynomial.polynomial.polyval(zeta, self.coeffs)

    def eval_deriv(self, zeta) -> np.ndarray | complex:
        """Evaluate w_zeta at arbitrary points of the closed disk."""
        zeta = np.asarray(zeta, dtype=complex)
        n = np.arange(1, len(self.coeffs))
        return 1j * np.polynomial.polynomial.polyval(zeta, n * self.coeffs[1:])

    def copy_with(self, coeffs: np.ndarray) -> "HolomorphicBoundaryFn":
        return HolomorphicBoundaryFn(np.asarray(coeffs, dtype=float))


def basis_direction(n: int, N: int) -> HolomorphicBoundaryFn:
    """The direction i*zeta^n inside the truncation of order N."""
    c = np.zeros(N + 1)
    c[n] = 1.0
    return HolomorphicBoundaryFn(c)


def _eval_series_fft(coeffs: np.ndarray, M: int) -> np.ndarray:
    """sum_n coeffs[n] * exp(-i*n*alpha_j) for j = 0..M-1 via one FFT."""
    if len(coeffs) > M:
        raise ValueError(f"grid of {M} points cannot carry {len(coeffs)} modes")
    buf = np.zeros(M, dtype=complex)
    buf[: len(coeffs)] = coeffs
    return np.fft.fft(buf)


def _signed_modes(M: int) -> np.ndarray:
    """Integer mode numbers in FFT order, Nyquist zeroed."""
    k = np.fft.fftfreq(M, d=1.0 / M)
    k = k.copy()
    if M % 2 == 0:
        k[M // 2] = 0.0
    return k


def _hilbert_values(values: np.ndarray) -> np.ndarray:
    M = len(values)
    k = _signed_modes(M)
    return np.real(np.fft.ifft(-1j * np.sign(k) * np.fft.fft(values)))


def _deriv_values(values: np.ndarray) -> np.ndarray:
    M = len(values)
    k = _signed_modes(M)
    return np.real(np.fft.ifft(1j * k * np.fft.fft(values)))


def hilbert(f: GridFn) -> GridFn:
    """Periodic Hilbert transform, the Fourier multiplier -i*sgn(n).

    The mean is annihilated; the (unrepresentable) Nyquist mode is dropped.
    Even input maps to odd output and vice versa.
    """
    return GridFn(_hilbert_values(f.values), even=False)


def hilbert_finite_depth(f: GridFn, H: float) -> GridFn:
    """Finite-depth transform: multiplier -i*coth(n*H) for n != 0, 0 for n = 0.

    Converges to the Hilbert transform as H -> infinity since
    coth(n*H) - sgn(n) = sgn(n) * 2/(exp(2|n|H) - 1).
    """
    if H <= 0:
        raise ValueError("depth parameter H must be positive")
    M = len(f.values)
    k = _signed_modes(M)
    mult = np.zeros(M, dtype=complex)
    nz = k != 0
    mult[nz] = -1j / np.tanh(k[nz] * H)
    return GridFn(np.real(np.fft.ifft(mult * np.fft.fft(f.values))), even=False)


def spectral_derivative(f: GridFn) -> GridFn:
    """d/dalpha by the Fourier multiplier i*n."""
    return GridFn(_deriv_values(f.values), even=False)


def project_even(f: GridFn, N: int) -> np.ndarray:
    """Cosine coefficients a_0..a_N of an even grid function.

    The synthesis `synthesize_even` inverts this exactly for band-limited
    input.  Warns when the grid is too coarse to resolve N modes.
    """
    M = len(f.values)
    if M < 2 * N + 2:
        warnings.warn(f"grid M={M} aliases modes up to N={N}", stacklevel=2)
    spec = np.fft.rfft(f.values)
    a = 2.0 * spec.real / M
    a[0] *= 0.5
    return a[: N + 1].copy()


def synthesize_even(a: np.ndarray, M: int) -> GridFn:
    """Even grid function sum_n a_n cos(n*alpha) on an M-point grid."""
    a = np.asarray(a, dtype=float)
    alpha = grid_alpha(M)
    n = np.arange(len(a))
    return GridFn(np.cos(np.outer(alpha, n)) @ a, even=True)


def _dealiased_product(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Pointwise product with 3/2-rule zero padding.

    The two factors are synthesized on a 3/2 finer grid, multiplied there,
    and the result truncated back to the original band.  Quadratic products
    of functions occupying the lower 2/3 of the band come back alias-free.
    """
    M = len(f)
    Mf = 3 * M // 2
    if Mf % 2:
        Mf += 1
    F = np.fft.rfft(f)
    G = np.fft.rfft(g)
    fu = np.fft.irfft(F, n=Mf) * (Mf / M)
    gu = np.fft.irfft(G, n=Mf) * (Mf / M)
    P = np.fft.rfft(fu * gu)[: M // 2 + 1]
    return np.fft.irfft(P, n=M) * (M / Mf)


def _commutator_values(y: np.ndarray) -> np.ndarray:
    ya = _deriv_values(y)
    return _dealiased_product(y, _hilbert_values(ya)) - _hilbert_values(
        _dealiased_product(y, ya)
    )


def commutator_Q_fft(y: GridFn) -> GridFn:
    """Q(y) = y*H(y_alpha) - H(y*y_alpha) with spectral differentiation.

    Products are dealiased by the 3/2 rule.  Input must be even; the output
    is even again and insensitive to adding constants to y.
    """
    if not y.even:
        raise ValueError("commutator expects an even-tagged grid function")
    return GridFn(_commutator_values(y.values), even=True)


def commutator_Q_quadrature(y: GridFn) -> GridFn:
    """Independent route to Q(y): the singular-integral form

        Q(y)(a) = 1/(8*pi) * int (y(a) - y(a'))^2 csc((a - a')/2)^2 da'

    by the trapezoid rule, with the diagonal replaced by its finite limit
    4*y_alpha(a)^2.  The integrand is smooth and periodic, so the trapezoid
    rule converges spectrally.
    """
    if not y.even:
        raise ValueError("commutator expects an even-tagged grid function")
    v = y.values
    M = len(v)
    alpha = grid_alpha(M)
    ya = _deriv_values(v)
    da = alpha[:, None] - alpha[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        kernel = (v[:, None] - v[None, :]) ** 2 / np.sin(0.5 * da) ** 2
    np.fill_diagonal(kernel, 4.0 * ya**2)
    integral = kernel.sum(axis=1) * (2.0 * np.pi / M)
    return GridFn(integral / (8.0 * np.pi), even=True)


def _commutator_linearized(y: np.ndarray, eta: np.ndarray) -> np.ndarray:
    """Directional derivative of the commutator: bilinearity gives

        Q'(y)[eta] = eta*H(y_a) + y*H(eta_a) - H((y*eta)_a).
    """
    ya = _deriv_values(y)
    ea = _deriv_values(eta)
    return (
        _dealiased_product(eta, _hilbert_values(ya))
        + _dealiased_product(y, _hilbert_values(ea))
        - _hilbert_values(_deriv_values(_dealiased_product(y, eta)))
    )


def _residual_values(w: HolomorphicBoundaryFn, params, M: int) -> np.ndarray:
    y = w.boundary_values(M).imag
    T = w.one_minus_izwz(M)
    margin = float(np.min(np.abs(T)))
    if margin <= STAGNATION_TOLERANCE:
        raise StagnationError(margin, STAGNATION_TOLERANCE)
    num = 1.0 + params.Omega * (y + _commutator_values(y))
    return 0.5 * num**2 / np.abs(T) ** 2 + params.G * y - params.Bernoulli


def residual_F(w: HolomorphicBoundaryFn, params, M: int | None = None) -> GridFn:
    """Free-surface Bernoulli residual of a configuration.

        F(w) = (1 + Omega*(Im w + Q(w)))^2 / (2*|1 - i*zeta*w_zeta|^2)
               + G*Im w - B           on |zeta| = 1.

    The quotient is evaluated pointwise on the grid; the denominator stays
    bounded away from zero inside the admissible set, which is enforced via
    the stagnation margin.

    Parameters
    ----------
    w : HolomorphicBoundaryFn
    params : ParamSet
        Supplies G, Omega and Bernoulli.
    M : int, optional
        Grid size, defaults to 4*N.

    Raises
    ------
    StagnationError
        If min |1 - i*zeta*w_zeta| falls to the stagnation tolerance.
    """
    if M is None:
        M = w.default_grid()
    return GridFn(_residual_values(w, params, M), even=True)


def _linearized_values(
    w: HolomorphicBoundaryFn, params, v: HolomorphicBoundaryFn, M: int
) -> np.ndarray:
    y = w.boundary_values(M).imag
    T = w.one_minus_izwz(M)
    margin = float(np.min(np.abs(T)))
    if margin <= STAGNATION_TOLERANCE:
        raise StagnationError(margin, STAGNATION_TOLERANCE)
    eta = v.boundary_values(M).imag
    zvz = v.zwz_trace(M)
    absT2 = np.abs(T) ** 2
    num = 1.0 + params.Omega * (y + _commutator_values(y))
    return (
        (num / absT2) * params.Omega * (eta + _commutator_linearized(y, eta))
        - (num**2 / absT2**2) * np.imag(np.conj(T) * zvz)
        + params.G * eta
    )


def linearized_F_apply(
    w: HolomorphicBoundaryFn, params, v: HolomorphicBoundaryFn, M: int | None = None
) -> GridFn:
    """Gateaux derivative of `residual_F` at w in the direction v.

    The derivative of the commutator term uses its bilinearity, so the
    whole expression is exact in Fourier space; no singular integrals and
    no finite differencing are involved.
    """
    if M is None:
        M = w.default_grid()
    return GridFn(_linearized_values(w, params, v, M), even=True)


def closed_form_Qw_at_crapper(
    A: float, v: HolomorphicBoundaryFn, M: int | None = None
) -> GridFn:
    """Derivative of the commutator at the exact zero-gravity wave.

    At w = w(.; A) the directional derivative collapses by residue calculus
    to the one-line formula

        Q'(w(A))[v] = Im(-4*A*zeta*(v(zeta) - v(-A)) / (zeta + A)^2),

    nonlocal only through the point value v(-A).
    """
    if not 0 < A < 0.5:
        raise ValueError("closed form requires 0 < A < 1/2")
    if M is None:
        M = v.default_grid()
    zeta = grid_zeta(M)
    vb = v.boundary_values(M)
    v_negA = v.eval(-A)
    return GridFn(
        np.imag(-4.0 * A * zeta * (vb - v_negA) / (zeta + A) ** 2), even=True
    )
