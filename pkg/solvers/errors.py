"""
Solver Errors
Exceptions raised by the projection and least-squares layer
"""


class InfeasibleConstraintError(ValueError):
    """Raised when a constraint set is empty or badly parameterised"""


class NonFiniteInputError(ValueError):
    """Raised when a design matrix or target contains NaN or inf"""


class SolverConvergenceError(RuntimeError):
    """Raised when an inner iterative routine fails to converge"""

    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual
