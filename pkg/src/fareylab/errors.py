"""Error taxonomy shared across the package.

The CLI maps these onto its exit-code contract: usage/domain problems
exit 2, work-budget refusals exit 3, arithmetic capacity exits 4.
"""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class UsageError(ValueError):
    """Invalid command line, config file, or run configuration."""


class ResourceError(RuntimeError):
    """Predicted or actual work exceeds the configured budget or capacity."""


class CapacityError(RuntimeError):
    """Exact arithmetic would exceed representable capacity.

    Python integers are arbitrary precision, so ordinary counting never
    raises this; it guards memory-backed structures and keeps the exit
    code contract honest.
    """
