"""Failure classes shared by all dcanum subpackages"""


class ShapeError(ValueError):
    """Array shapes or lengths do not match the expected layout"""


class ConfigError(ValueError):
    """Invalid configuration value or layer plan"""


class CorruptionError(ValueError):
    """Internal bookkeeping (e.g. pooling switches) is inconsistent"""


class DomainError(ValueError):
    """Input outside of the mathematical domain of a function"""


class ValidationError(ValueError):
    """Validation cannot be carried out on the given model or data"""


class _OffsetError(ValueError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super(_OffsetError, self).__init__(message)
        #: byte offset at which decoding failed
        self.offset = offset


class ProtocolError(_OffsetError):
    """Malformed or unexpected wire message"""


class FormatError(_OffsetError):
    """Malformed dataset or model file"""


class LifecycleError(RuntimeError):
    """Component used before it was started or after it was stopped"""


class NumericError(ArithmeticError):
    """Training produced non-finite values"""


class TransportError(ConnectionError):
    """Message transport failed after all retries"""
