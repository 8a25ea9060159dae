"""Exception hierarchy.

Every validation failure names the hypothesis it violates so the CLI can
report it and pick an exit code.
"""

from __future__ import annotations


class HypertreeError(ValueError):
    """Base class; ``hypothesis`` is a short machine-readable tag."""

    hypothesis = "validation"
    exit_code = 2


class DimensionError(HypertreeError):
    hypothesis = "dimension"


class DomainError(HypertreeError):
    hypothesis = "domain"


class DivisibilityError(HypertreeError):
    hypothesis = "divisibility"


class RegimeError(HypertreeError):
    """A closed form is undefined for these parameters (e.g. kr - k - r <= 0)."""

    hypothesis = "positivity"


class ContractError(HypertreeError):
    hypothesis = "contract"


class BudgetError(HypertreeError):
    """An exhaustive or rejection computation ran past its configured budget."""

    hypothesis = "budget"
    exit_code = 3

    def __init__(self, message: str, *, rejection_rate: float | None = None):
        super().__init__(message)
        self.rejection_rate = rejection_rate
