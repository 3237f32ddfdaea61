from .exceptions import (
    CertificateError,
    ExitCode,
    IllConditionedError,
    InputRejectedError,
    IntegrationError,
    MuntzSDKError,
)

__all__ = [
    "MuntzSDKError",
    "InputRejectedError",
    "IllConditionedError",
    "CertificateError",
    "IntegrationError",
    "ExitCode",
]
