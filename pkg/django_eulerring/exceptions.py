from typing import Any, Optional, Tuple, Type, Union


class EulerRingException(Exception):
    """Base exception for every error raised by django_eulerring.

    Args:
        message (str): Human readable description.
        witness (Optional[Any]): The offending object (generator name, basis pair,
            evaluation point, ...) when one is available.
    """

    def __init__(self, message: str, witness: Optional[Any] = None) -> None:
        super().__init__(message)
        self.message = message
        self.witness = witness

    def __str__(self) -> str:
        if self.witness is None:
            return self.message
        return f"{self.message} (witness: {self.witness})"


class EulerRingFieldTypeError(EulerRingException, TypeError):
    """Raised when an argument of a public entry point has the wrong type."""

    def __init__(self, method: str, field: str, value: Any, expected: Any) -> None:
        super().__init__(
            f"{method}: `{field}` expected {expected}, got {type(value).__name__} ({value!r})"
        )
        self.method = method
        self.field = field
        self.value = value
        self.expected = expected

    @classmethod
    def if_not_validated(
        cls,
        method: str,
        field: str,
        value: Any,
        expected: Union[Type, Tuple[Type, ...]],
    ) -> None:
        """
        Raise if `value` is not an instance of `expected`.

        Args:
            method (str): Qualified name of the calling method, used in the message.
            field (str): Name of the validated argument.
            value (Any): The value to validate.
            expected (Union[Type, Tuple[Type, ...]]): Accepted type(s).

        Raises:
            EulerRingFieldTypeError: If the validation fails.
        """
        if not isinstance(value, expected):
            raise cls(method, field, value, expected)


class AlgebraMismatchError(EulerRingException, ValueError):
    """Operands live in different algebras."""


class DegreeError(EulerRingException, ValueError):
    """Invalid, mixed or unsupported degree."""


class DifferentialError(EulerRingException):
    """A differential does not square to zero; `witness` names the generator."""


class ClosureError(EulerRingException):
    """A selected span is not closed under bracket or differential."""


class DegeneratePairingError(EulerRingException):
    """A pairing, Gram matrix or linear system is singular."""


class ModelShapeError(EulerRingException):
    """The model is not of a shape the requested construction supports."""


class InvalidSpaceSpec(EulerRingException, ValueError):
    """Invalid space descriptor given on the command line."""
