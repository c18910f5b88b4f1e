"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed instance, out-of-range parameter or dimension mismatch."""


class HypothesisRefusal(RuntimeError):
    """An instance does not satisfy the zero-free condition a routine relies on.

    Attributes
    ----------
    report : HypothesisReport or None
        The failing report, when one was produced.
    index : int or None
        The variable index whose row sum is violated worst.
    """

    def __init__(self, message, report=None, index=None):
        super().__init__(message)
        self.report = report
        self.index = index


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured work, order or size budget.

    Attributes
    ----------
    estimate : float or None
        Estimated cost (work units or required order) of the refused request.
    """

    def __init__(self, message, estimate=None, diagnostics=None):
        super().__init__(message)
        self.estimate = estimate
        self.diagnostics = diagnostics or {}


class MapCertificationError(BudgetExceeded):
    """No map in the searched family sends a disk of radius > 1 into the region."""
