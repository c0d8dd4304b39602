"""Exception types raised by the numerical core."""


class SingularElement(Exception):
    """Algebra element is singular to working tolerance; no inverse returned."""


class SingularFrameOperator(Exception):
    """Frame operator has a numerically zero eigenvalue; direct inversion refused."""


class NotAFrame(Exception):
    """Operation requires a family whose lower frame bound is positive."""


class NoConvergence(Exception):
    """Iteration hit its step limit before reaching the requested residual."""

    def __init__(self, message, residual=None, iterations=None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations
