"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class GeometryError(ValueError):
    """A vertex-mapped element is degenerate (non-positive Jacobian)."""


class SingularMatrixError(ValueError):
    """A matrix expected to be positive definite has lambda_min <= 0."""
