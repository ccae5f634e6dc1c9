"""Exception taxonomy: input problems exit 2 at the CLI, failed checks exit 1."""


class FFTowerError(Exception):
    """Base class for package-specific errors."""


class InputError(FFTowerError):
    """Invalid parameters or violated preconditions."""


class BudgetError(InputError):
    """Requested computation exceeds the configured work budget."""


class VerificationError(FFTowerError):
    """A verification stage produced a result that should be impossible."""


class NoGammaFound(FFTowerError):
    """The candidate set T was empty; carries the power-set report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
