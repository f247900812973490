"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """An operation received data that violates its preconditions."""


class InvalidConfigError(ValueError):
    """A configuration value is out of its allowed range."""


class PngError(ValueError):
    """PNG stream could not be decoded; message carries the byte offset."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


class ManifestError(ValueError):
    """Manifest file is malformed; message carries the line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"{message} (line {line})"
        super().__init__(message)
        self.line = line


class TrainingDivergedError(RuntimeError):
    """A non-finite loss or gradient appeared during optimization."""
