# utils/errors.py

class EnthierError(ValueError):
    """Base class for every input or state error raised by the library.

    The CLI reports ``code`` in its machine-readable error record.
    """

    @property
    def code(self) -> str:
        return type(self).__name__


class InvalidState(EnthierError):
    pass


class InvalidSubset(EnthierError):
    pass


class NotPSD(EnthierError):
    pass


class IncompatibleDims(EnthierError):
    pass


class BudgetExceeded(EnthierError):
    pass


class InvalidK(EnthierError):
    pass


class InvalidPartition(EnthierError):
    pass


class InvalidParam(EnthierError):
    pass


class InvalidFile(EnthierError):
    pass
