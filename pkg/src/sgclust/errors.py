"""Exception hierarchy shared across the package.

DataError covers ingestion and malformed-input problems; MethodError covers
algorithmic failures (non-convergence, violated preconditions of a clustering
method). The CLI maps these onto distinct exit codes.
"""


class SgclustError(Exception):
    pass


class DataError(SgclustError):
    pass


class EdgeListParseError(DataError):
    def __init__(self, message, path=None, line_no=None):
        self.path = path
        self.line_no = line_no
        prefix = ""
        if path is not None:
            prefix = f"{path}:"
        if line_no is not None:
            prefix += f"{line_no}:"
        super().__init__(f"{prefix} {message}" if prefix else message)


class UndefinedStatError(DataError):
    pass


class MethodError(SgclustError):
    pass


class EigenSolverError(MethodError):
    """Iterative eigensolver failed to reach the residual tolerance."""

    def __init__(self, message, best_residual=None):
        self.best_residual = best_residual
        if best_residual is not None:
            message = f"{message} (best residual {best_residual:.3e})"
        super().__init__(message)


class NotPositiveDefiniteError(MethodError):
    pass


class NotBalancedError(MethodError):
    pass


class NotConnectedError(MethodError):
    pass


class AugmentationError(MethodError):
    pass


class WalkLengthError(MethodError):
    pass


class ConvergenceError(MethodError):
    pass
