"""Typed exceptions shared across the solver stack."""


class DiskwaveError(Exception):
    """Base class for all library errors."""


class StagnationError(DiskwaveError):
    """The configuration left the admissible set: 1 - i*zeta*w_zeta came too
    close to zero somewhere on the unit circle (a surface stagnation point)."""

    def __init__(self, margin, threshold):
        self.margin = float(margin)
        self.threshold = float(threshold)
        super().__init__(
            f"stagnation margin {self.margin:.3e} at or below threshold {self.threshold:.3e}"
        )


class SingularJacobianError(DiskwaveError):
    """Newton matrix is numerically singular (condition estimate too large)."""

    def __init__(self, cond):
        self.cond = float(cond)
        super().__init__(f"Jacobian condition estimate {self.cond:.3e} exceeds limit")


class ConvergenceError(DiskwaveError):
    """An iteration failed to reach its tolerance."""


class ContinuationError(DiskwaveError):
    """A parameter-continuation step failed.  Carries the failing step index
    and the partial trace accumulated so far."""

    def __init__(self, step, trace, message):
        self.step = int(step)
        self.trace = trace
        super().__init__(f"continuation failed at step {step}: {message}")


class BracketError(DiskwaveError):
    """A bisection bracket does not straddle the sought transition."""


class QuadratureError(DiskwaveError):
    """Contour quadrature failed to converge under node doubling, typically
    because the contour passes too close to a pole."""
