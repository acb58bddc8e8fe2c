"""Engine error types.

DomainError covers invalid inputs and out-of-range parameters; CapacityError
covers sample spaces too large for the requested enumeration strategy. The CLI
maps them to exit codes 2 and 3, the HTTP service to statuses 400 and 413.
"""


class DomainError(ValueError):
    """Invalid input or out-of-range parameter."""


class CapacityError(RuntimeError):
    """Full enumeration was requested but the space exceeds the limit."""
