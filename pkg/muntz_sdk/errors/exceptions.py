from enum import IntEnum
from typing import Any, Optional


class ExitCode(IntEnum):
    """Process exit codes used by the `muntz` command line."""

    OK = 0
    INTERNAL = 1
    REJECTED = 2


class MuntzSDKError(Exception):
    """Base error class for all errors originating from the Muntz SDK.

    All specific SDK errors will extend this class.
    You can use this class to catch any error thrown by the SDK.
    """

    def __init__(
        self,
        message: str,
        code: str,
        exit_code: ExitCode = ExitCode.INTERNAL,
        details: Optional[Any] = None,
        cause: Optional[Exception] = None,
    ) -> None:
        """Create a new MuntzSDKError.

        Args:
            message: A human-readable description of the error.
            code: A unique machine-readable error code.
            exit_code: Exit code the command line reports for this error.
            details: Optional structured data about the failure.
            cause: Optional original error that led to this error.
        """
        super().__init__(message)
        self.name = self.__class__.__name__
        self.code = code
        self.exit_code = exit_code
        self.details = details
        self.cause = cause


class InputRejectedError(MuntzSDKError, ValueError):
    """Error thrown when an input violates the precondition of an operation.

    The message names the violated precondition; `details` carries the offending values.
    """

    def __init__(
        self,
        message: str,
        details: Optional[Any] = None,
        cause: Optional[Exception] = None,
        code: str = "input_rejected",
    ) -> None:
        """Create a new InputRejectedError.

        Args:
            message: A human-readable description of the violated precondition.
            details: Optional offending values.
            cause: Optional original error (typically a pydantic ValidationError).
            code: Machine-readable error code, overridden by subclasses.
        """
        super().__init__(message, code=code, exit_code=ExitCode.REJECTED, details=details, cause=cause)


class IllConditionedError(InputRejectedError):
    """Error thrown when a floating-point Gram system is numerically singular.

    The exponent pair whose monomials are closest to collinear is reported in `pair`.
    """

    def __init__(
        self,
        message: str,
        pair: tuple[float, float],
        condition: float,
        cause: Optional[Exception] = None,
    ) -> None:
        super().__init__(
            message,
            details={"pair": list(pair), "condition": condition},
            cause=cause,
            code="ill_conditioned",
        )
        self.pair = pair
        self.condition = condition


class CertificateError(MuntzSDKError):
    """Error thrown when a proven bound is violated beyond numeric slack.

    A certificate failure never depends on user input; it signals an implementation bug.
    """

    def __init__(self, message: str, details: Optional[Any] = None) -> None:
        super().__init__(message, code="certificate_failure", exit_code=ExitCode.INTERNAL, details=details)


class IntegrationError(MuntzSDKError):
    """Error thrown when a quadrature sample is not a finite number."""

    def __init__(self, message: str, location: float, value: float, cause: Optional[Exception] = None) -> None:
        """Create a new IntegrationError.

        Args:
            message: A human-readable description of the failure.
            location: Abscissa at which the integrand was sampled.
            value: The offending sample value.
            cause: Optional original error raised by the integrand.
        """
        super().__init__(
            message,
            code="integration_error",
            exit_code=ExitCode.INTERNAL,
            details={"location": location, "value": value},
            cause=cause,
        )
        self.location = location
        self.value = value
