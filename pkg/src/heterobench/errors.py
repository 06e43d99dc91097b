"""Exception types shared across the toolkit."""


class ValidationError(ValueError):
    """Raised when inputs violate a documented contract.

    Covers malformed files (with line numbers where applicable), inconsistent
    metadata, out-of-range indices, and degenerate inputs for which a metric
    is undefined. The CLI maps this to exit code 1; genuine I/O failures
    (OSError) map to exit code 2.
    """
