"""Exception hierarchy shared by the library and the CLI."""


class FractunnelError(Exception):
    """Base class for all library errors."""


class DomainError(FractunnelError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class RegimeError(DomainError):
    """The energy lies in the wrong scattering regime for the requested path.

    Forbidden-regime operations need 0 < E < V_r; allowed-regime ones need E > V_r.
    """


class SingularityError(DomainError):
    """A formula hit a removable or genuine singularity (e.g. gamma == 0)."""


class ConfigError(FractunnelError):
    """Malformed configuration file or option."""
