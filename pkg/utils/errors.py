"""
Error hierarchy - one exception class per failure kind
The CLI maps each top-level class to its own exit code
"""

from typing import Optional


class MartensiteError(Exception):
    """Base class for every error raised by the toolkit"""
    exit_code = 1


class AlloySpecError(MartensiteError):
    """Exception raised when an alloy spec document fails to parse or validate"""
    exit_code = 2

    def __init__(self, message: str, field_path: Optional[str] = None):
        self.field_path = field_path
        if field_path:
            message = f"{field_path}: {message}"
        super().__init__(message)


class PreconditionError(MartensiteError, ValueError):
    """Exception raised when an operation is called outside its domain"""
    exit_code = 2


class NumericalFailure(MartensiteError):
    """Exception raised when a solver fails or a residual contract is broken"""
    exit_code = 3


class DegenerateWellsError(NumericalFailure):
    """Exception raised when the two wells coincide at the given matrix"""
    pass


class NonMonotoneCurveError(NumericalFailure):
    """Exception raised when a tabulated equal-energy curve is not increasing"""
    pass


class TwinPartnerMissingError(NumericalFailure):
    """Exception raised when the parent matrix has no rank-one partner on the product well"""

    def __init__(self, tau: float):
        self.tau = tau
        super().__init__(f"no rank-one partner on the product well at tau={tau!r}")


class RegimeError(MartensiteError):
    """Exception raised when the requested analysis does not apply to the input"""
    exit_code = 4


class WellsNeverExchangeError(RegimeError):
    """Exception raised when the energy difference of two wells never changes sign"""
    pass


class NoMetastabilityLossError(RegimeError):
    """Exception raised when the parent stays metastable over the whole parameter range"""
    pass
