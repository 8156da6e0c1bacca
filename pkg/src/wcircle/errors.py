"""Exception types shared across the package.

Every error carries enough structured context to be serialized as JSON by the
CLI (module, operation, offending values).
"""

from __future__ import annotations


class WCircleError(Exception):
    """Base class; subclasses set `module` and accept a context dict."""

    module = "wcircle"

    def __init__(self, message, operation="", **context):
        super().__init__(message)
        self.message = message
        self.operation = operation
        self.context = context

    def to_dict(self):
        return {
            "error": type(self).__name__,
            "module": self.module,
            "operation": self.operation,
            "message": self.message,
            "context": {k: _jsonable(v) for k, v in self.context.items()},
        }


def _jsonable(v):
    try:
        import numpy as np

        if isinstance(v, np.generic):
            return v.item()
        if isinstance(v, np.ndarray):
            return v.tolist()
    except ImportError:  # pragma: no cover
        pass
    return v


class NonZeroMean(WCircleError):
    module = "trigpoly"


class GridTooCoarse(WCircleError):
    module = "trigpoly"


class NotPositive(WCircleError):
    module = "measure"


class NotDiffeo(WCircleError):
    module = "measure"


class NotSolvable(WCircleError):
    module = "calculus"


class SingularGram(WCircleError):
    module = "connection"


class ShockReached(WCircleError):
    module = "geodesic"


class TooLarge(WCircleError):
    module = "transport"


class UnequalMasses(WCircleError):
    module = "transport"


class ConfigInvalid(WCircleError):
    module = "cli"
