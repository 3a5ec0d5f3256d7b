"""Exception types shared across the package."""


class MlqmError(Exception):
    """Base class for every error raised by this package."""


class NonPositiveConstant(MlqmError, ValueError):
    """A model constant violates its sign requirement."""

    def __init__(self, field: str, value, requirement: str = "> 0"):
        self.field = field
        self.value = value
        super().__init__(f"{field} must be {requirement}, got {value!r}")


class BetaOutOfRange(MlqmError, ValueError):
    """beta lies outside [0, 1] while the natural-units convention is active."""


class NonPositiveInput(MlqmError, ValueError):
    """An input that must be strictly positive is not."""


class InvalidQuantumNumber(MlqmError, ValueError):
    """Quantum number must be an integer >= 1 (or a real >= 0 for sweeps)."""


class NonPositiveEnergy(MlqmError, ValueError):
    """Energy argument must be strictly positive."""


class OutOfDomain(MlqmError, ValueError):
    """A position sample lies outside the box [0, a]."""


class RootBracketFailure(MlqmError, ArithmeticError):
    """A root bracket that should exist by construction does not.

    Unreachable for valid inputs; raised instead of silently returning a
    wrong level so that numerics bugs surface loudly.
    """


class GridTooSmall(MlqmError, ValueError):
    """Finite-difference grid has fewer interior points than allowed."""


class ConvergenceFailure(MlqmError, ArithmeticError):
    """The eigensolver could not certify convergence."""

    def __init__(self, message: str, iterations: int = 0, worst_residual: float = float("nan")):
        self.iterations = iterations
        self.worst_residual = worst_residual
        super().__init__(f"{message} (iterations={iterations}, worst residual={worst_residual:.3e})")


class DegenerateFit(MlqmError, ArithmeticError):
    """Convergence-order fit converged below the round-off measurement floor."""


class OutsideFirstOrderDomain(MlqmError, ValueError):
    """1 - 3*beta*p**2 <= 0: the first-order amplitude loses meaning.

    Reduce beta or p; the closed-form eigenfunction is only valid to first
    order in the deformation.
    """


class ConfigError(MlqmError, ValueError):
    """Bad CLI flag or config-file input; maps to exit code 2."""
