"""
Custom exception classes for the isoperimetric profile toolkit
Provides a clear exception hierarchy for domain, feasibility and solver errors
"""


class IsoprofileError(Exception):
    """Base exception for all application errors"""

    pass


class DomainError(IsoprofileError, ValueError):
    """Raised when an argument lies outside an operation's domain"""

    pass


class NoSolutionError(DomainError):
    """Raised when an implicit equation has no solution for the given input"""

    pass


class BranchError(DomainError):
    """Raised when a branch-specific quantity is requested off its branch"""

    pass


class InfeasibleRegionError(IsoprofileError):
    """Raised when a candidate region does not fit inside the notched square"""

    pass


class SolverError(IsoprofileError):
    """Raised when numerical root-finding fails"""

    pass


class BracketError(SolverError):
    """Raised when a bracket shows no sign change"""

    pass


class ConvergenceError(SolverError):
    """Raised when the root-finder does not converge within max_iter"""

    pass


class BreakpointError(SolverError):
    """Raised when derived constants violate their ordering invariants"""

    pass


class ConfigurationError(IsoprofileError):
    """Raised when application configuration or parameters are invalid"""

    pass
