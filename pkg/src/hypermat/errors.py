"""Error types shared across the package."""


class SingularTensorError(ValueError):
    """An inverse or a determinant-normalized quantity was requested for a
    tensor whose determinant is exactly zero."""
