"""
Validation utilities for solver configuration and input data.
"""
import math
from typing import Any, Dict, Generic, Iterable, List, Optional, TypeVar

import numpy as np

from utils.error_handlers import ValidationError

# Generic type of validated values
T = TypeVar('T')


class ValidationResult(Generic[T]):
    """Result of a validation."""
    def __init__(self, is_valid: bool, value: Optional[T] = None, errors: Optional[Dict[str, str]] = None):
        self.is_valid = is_valid
        self.value = value
        self.errors = errors or {}

    def __bool__(self) -> bool:
        return self.is_valid


def validate_number(value: Any, field_name: str, min_value: Optional[float] = None,
                    max_value: Optional[float] = None, min_inclusive: bool = True,
                    allow_inf: bool = False) -> ValidationResult[float]:
    """
    Validate a real number against an interval.

    Args:
        value: The value to validate.
        field_name: Field name used in error messages.
        min_value: Lower bound, or None.
        max_value: Upper bound (inclusive), or None.
        min_inclusive: Whether the lower bound is attained.
        allow_inf: Whether ±∞ is acceptable.

    Returns:
        A validation result.
    """
    try:
        number = float(value)
    except (TypeError, ValueError):
        return ValidationResult(False, None, {field_name: f"{field_name} must be a number."})

    if math.isnan(number) or (math.isinf(number) and not allow_inf):
        return ValidationResult(False, None, {field_name: f"{field_name} must be finite."})

    if min_value is not None:
        too_small = number < min_value if min_inclusive else number <= min_value
        if too_small:
            relation = ">=" if min_inclusive else ">"
            return ValidationResult(False, None, {field_name: f"{field_name} must be {relation} {min_value}."})

    if max_value is not None and number > max_value:
        return ValidationResult(False, None, {field_name: f"{field_name} must be <= {max_value}."})

    return ValidationResult(True, number)


def validate_integer(value: Any, field_name: str, min_value: Optional[int] = None,
                     max_value: Optional[int] = None) -> ValidationResult[int]:
    """
    Validate an integer count.

    Args:
        value: The value to validate.
        field_name: Field name used in error messages.
        min_value: Lower bound (inclusive), or None.
        max_value: Upper bound (inclusive), or None.

    Returns:
        A validation result.
    """
    if isinstance(value, bool):
        return ValidationResult(False, None, {field_name: f"{field_name} must be an integer."})
    try:
        number = int(value)
    except (TypeError, ValueError):
        return ValidationResult(False, None, {field_name: f"{field_name} must be an integer."})
    if number != value and not (isinstance(value, str) and str(number) == value.strip()):
        return ValidationResult(False, None, {field_name: f"{field_name} must be an integer."})

    if min_value is not None and number < min_value:
        return ValidationResult(False, None, {field_name: f"{field_name} must be >= {min_value}."})
    if max_value is not None and number > max_value:
        return ValidationResult(False, None, {field_name: f"{field_name} must be <= {max_value}."})

    return ValidationResult(True, number)


def validate_choice(value: Any, field_name: str, choices: Iterable[Any]) -> ValidationResult[Any]:
    """
    Validate that a value is one of a fixed set of choices.

    Args:
        value: The value to validate.
        field_name: Field name used in error messages.
        choices: Allowed values.

    Returns:
        A validation result.
    """
    choices = list(choices)
    if value not in choices:
        return ValidationResult(False, None, {field_name: f"{field_name} must be one of {choices}."})
    return ValidationResult(True, value)


def raise_on_errors(results: List[ValidationResult]) -> None:
    """
    Raise a ValidationError listing every failed result.

    Args:
        results: Validation results to check.

    Raises:
        ValidationError: If at least one result is invalid.
    """
    errors: Dict[str, str] = {}
    for result in results:
        if not result:
            errors.update(result.errors)
    if errors:
        field = next(iter(errors))
        raise ValidationError("; ".join(errors.values()), field=field)


def require_finite(values: np.ndarray, name: str) -> None:
    """
    Check that an array holds only finite numbers.

    Args:
        values: The array.
        name: Name used in the error message.

    Raises:
        ValidationError: On NaN or infinite entries.
    """
    values = np.asarray(values, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValidationError(f"{name} must be finite", field=name)
