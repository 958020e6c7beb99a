"""Exception hierarchy shared by every module."""

from __future__ import annotations


class HamDiscError(Exception):
    """Base class for all errors raised by hamdisc."""


class StructuralError(HamDiscError, ValueError):
    """An object does not fit its host: bad path, cycle, forest, or file."""


class ParameterError(HamDiscError, ValueError):
    pass


class RefusalError(HamDiscError):
    """Exact enumeration refused because the input exceeds its size limit."""


class PreconditionError(HamDiscError, ValueError):
    pass


class NotFoundError(HamDiscError):
    """A constructive search gave up.

    ``stage`` names the pipeline stage that failed, ``reason`` is either
    ``"precondition"`` (the guarantee did not apply) or ``"budget"``.
    """

    def __init__(self, message: str, stage: str = "", reason: str = "budget", **info):
        super().__init__(message)
        self.stage = stage
        self.reason = reason
        self.info = info

    def tagged(self, stage: str) -> "NotFoundError":
        if not self.stage:
            self.stage = stage
        return self


class TooShortError(NotFoundError):
    def __init__(self, message: str, path=None, **info):
        super().__init__(message, stage="gallai-roy", reason="precondition", **info)
        self.path = path


class PartialHarvestError(NotFoundError):
    def __init__(self, message: str, paths=None, **info):
        super().__init__(message, stage="harvest", reason="precondition", **info)
        self.paths = list(paths or [])
        self.count = len(self.paths)


class BoundViolationError(NotFoundError):
    def __init__(self, message: str, result=None, **info):
        super().__init__(message, stage="bounds", reason="precondition", **info)
        self.result = result


class ConstructionFailedError(NotFoundError):
    def __init__(self, message: str, clause: str = "", **info):
        super().__init__(message, stage="partition", reason="precondition", **info)
        self.clause = clause
