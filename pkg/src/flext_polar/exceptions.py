"""FLEXT-Polar Exceptions - Consolidated Class Structure.

Single consolidated class containing ALL polar toolkit exceptions following FLEXT
patterns. Individual exceptions available as nested classes for organization.
"""

from __future__ import annotations

from collections.abc import Mapping
from enum import Enum

from flext_polar.constants import (
    EXIT_CONFIG,
    EXIT_FAILURE,
    EXIT_INFEASIBLE,
    EXIT_IO,
    EXIT_USAGE,
)


class FlextPolarErrorCodes(Enum):
    """Error codes for polar toolkit operations."""

    POLAR_ERROR = "POLAR_ERROR"
    POLAR_PARAMETER_ERROR = "POLAR_PARAMETER_ERROR"
    POLAR_CONFIGURATION_ERROR = "POLAR_CONFIGURATION_ERROR"
    POLAR_FILE_ERROR = "POLAR_FILE_ERROR"
    POLAR_FORMAT_ERROR = "POLAR_FORMAT_ERROR"
    POLAR_INFEASIBLE_SCHEDULE = "POLAR_INFEASIBLE_SCHEDULE"

    @property
    def exit_code(self) -> int:
        """Process exit code reported by the CLI for this error code."""
        return _EXIT_CODES[self]


_EXIT_CODES: dict[FlextPolarErrorCodes, int] = {
    FlextPolarErrorCodes.POLAR_ERROR: EXIT_FAILURE,
    FlextPolarErrorCodes.POLAR_PARAMETER_ERROR: EXIT_USAGE,
    FlextPolarErrorCodes.POLAR_CONFIGURATION_ERROR: EXIT_CONFIG,
    FlextPolarErrorCodes.POLAR_FILE_ERROR: EXIT_IO,
    FlextPolarErrorCodes.POLAR_FORMAT_ERROR: EXIT_IO,
    FlextPolarErrorCodes.POLAR_INFEASIBLE_SCHEDULE: EXIT_INFEASIBLE,
}


# =============================================================================
# CONSOLIDATED EXCEPTIONS CLASS - Single class containing ALL polar exceptions
# =============================================================================


class FlextPolarExceptions:
    """Single consolidated class containing ALL polar toolkit exceptions."""

    class Error(Exception):
        """Base polar toolkit error."""

        def __init__(
            self,
            message: str = "Polar operation failed",
            *,
            error_code: str | None = None,
            context: Mapping[str, object] | None = None,
            cause: Exception | None = None,
        ) -> None:
            """Initialize error with code, context and optional cause."""
            super().__init__(message)
            self.message = message
            self.error_code = error_code or FlextPolarErrorCodes.POLAR_ERROR.value
            self.context: dict[str, object] = dict(context) if context else {}
            self.cause = cause
            if cause is not None:
                self.__cause__ = cause

        @property
        def exit_code(self) -> int:
            """CLI exit code for this error."""
            try:
                return FlextPolarErrorCodes(self.error_code).exit_code
            except ValueError:
                return EXIT_FAILURE

        def __str__(self) -> str:
            if not self.context:
                return self.message
            details = ", ".join(f"{key}={value}" for key, value in self.context.items())
            return f"{self.message} ({details})"

    class ParameterError(Error):
        """Invalid argument to a coding, decoding or model operation."""

        def __init__(
            self,
            message: str = "Invalid parameter",
            *,
            error_code: str | None = None,
            context: Mapping[str, object] | None = None,
            cause: Exception | None = None,
            parameter: str | None = None,
        ) -> None:
            """Initialize parameter error."""
            parameter_context = dict(context) if context else {}
            if parameter is not None:
                parameter_context["parameter"] = parameter

            super().__init__(
                message,
                error_code=error_code
                or FlextPolarErrorCodes.POLAR_PARAMETER_ERROR.value,
                context=parameter_context,
                cause=cause,
            )

    class ConfigurationError(Error):
        """Invalid schedule, delay model or simulation configuration."""

        def __init__(
            self,
            message: str = "Polar configuration error",
            *,
            error_code: str | None = None,
            context: Mapping[str, object] | None = None,
            cause: Exception | None = None,
            config_key: str | None = None,
        ) -> None:
            """Initialize configuration error."""
            config_context = dict(context) if context else {}
            if config_key is not None:
                config_context["config_key"] = config_key

            super().__init__(
                message,
                error_code=error_code
                or FlextPolarErrorCodes.POLAR_CONFIGURATION_ERROR.value,
                context=config_context,
                cause=cause,
            )

    class FileError(Error):
        """File operation error."""

        def __init__(
            self,
            message: str = "File operation failed",
            *,
            error_code: str | None = None,
            context: Mapping[str, object] | None = None,
            cause: Exception | None = None,
            file_path: str | None = None,
            operation: str | None = None,
        ) -> None:
            """Initialize file error."""
            file_context = dict(context) if context else {}
            if file_path is not None:
                file_context["file_path"] = file_path
            if operation is not None:
                file_context["operation"] = operation

            super().__init__(
                message,
                error_code=error_code or FlextPolarErrorCodes.POLAR_FILE_ERROR.value,
                context=file_context,
                cause=cause,
            )

    class FormatError(FileError):
        """Malformed code, schedule or frame file."""

        def __init__(
            self,
            message: str = "Malformed input file",
            *,
            error_code: str | None = None,
            context: Mapping[str, object] | None = None,
            cause: Exception | None = None,
            file_path: str | None = None,
        ) -> None:
            """Initialize format error."""
            super().__init__(
                message,
                error_code=error_code or FlextPolarErrorCodes.POLAR_FORMAT_ERROR.value,
                context=context,
                cause=cause,
                file_path=file_path,
                operation="parse",
            )

    class InfeasibleScheduleError(Error):
        """A single node cannot fit into one pipeline stage."""

        def __init__(
            self,
            message: str = "Pipeline schedule infeasible",
            *,
            error_code: str | None = None,
            context: Mapping[str, object] | None = None,
            cause: Exception | None = None,
            node: str | None = None,
            delay: float | None = None,
            budget: float | None = None,
        ) -> None:
            """Initialize infeasible-schedule error naming the offending node."""
            schedule_context = dict(context) if context else {}
            if node is not None:
                schedule_context["node"] = node
            if delay is not None:
                schedule_context["delay"] = delay
            if budget is not None:
                schedule_context["budget"] = budget

            super().__init__(
                message,
                error_code=error_code
                or FlextPolarErrorCodes.POLAR_INFEASIBLE_SCHEDULE.value,
                context=schedule_context,
                cause=cause,
            )
            self.node = node


# =============================================================================
# BACKWARD COMPATIBILITY - Legacy class aliases
# =============================================================================

FlextPolarError = FlextPolarExceptions.Error
FlextPolarParameterError = FlextPolarExceptions.ParameterError
FlextPolarConfigurationError = FlextPolarExceptions.ConfigurationError
FlextPolarFileError = FlextPolarExceptions.FileError
FlextPolarFormatError = FlextPolarExceptions.FormatError
FlextPolarInfeasibleScheduleError = FlextPolarExceptions.InfeasibleScheduleError

__all__ = [
    "FlextPolarConfigurationError",
    "FlextPolarError",
    "FlextPolarErrorCodes",
    "FlextPolarExceptions",
    "FlextPolarFileError",
    "FlextPolarFormatError",
    "FlextPolarInfeasibleScheduleError",
    "FlextPolarParameterError",
]
