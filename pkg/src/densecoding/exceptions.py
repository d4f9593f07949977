"""Exception hierarchy.

Every error raised by the library derives from :class:`DenseCodingError`.
``ParameterError`` marks bad user input; the others signal numerical
failures or violated physical invariants.
"""


class DenseCodingError(Exception):
    """Base class for all library errors."""


class ParameterError(DenseCodingError, ValueError):
    """A parameter lies outside its admissible range."""


class DimensionError(DenseCodingError, ValueError):
    """Matrix shapes are incompatible with the requested operation."""


class NumericalError(DenseCodingError, ArithmeticError):
    """A numerical routine failed or produced an out-of-range value."""


class NotHermitianError(NumericalError):
    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"matrix is not Hermitian (max residual {self.residual:.3e})")


class ConvergenceError(NumericalError):
    def __init__(self, sweeps, off_norm):
        self.sweeps = sweeps
        self.off_norm = float(off_norm)
        super().__init__(
            f"Jacobi iteration did not converge after {sweeps} sweeps "
            f"(off-diagonal norm {self.off_norm:.3e})"
        )


class InvalidStateError(NumericalError):
    """A matrix failed density-matrix validation.

    Attributes
    ----------
    invariant : str
        One of ``"hermitian"``, ``"trace"``, ``"psd"``, ``"shape"``.
    residual : float
        The offending numeric residual (Hermiticity defect, trace error, or
        most negative eigenvalue).
    """

    def __init__(self, invariant, residual, detail=""):
        self.invariant = invariant
        self.residual = float(residual)
        msg = f"invalid density matrix: {invariant} violated (residual {self.residual:.3e})"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class PostSelectionError(NumericalError):
    """Post-selection weight is too small to normalize the state."""

    def __init__(self, weight):
        self.weight = float(weight)
        super().__init__(f"post-selection weight {self.weight:.3e} is effectively zero")
