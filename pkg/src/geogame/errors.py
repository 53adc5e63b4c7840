"""Exception hierarchy for the geoengineering game solver."""


class GeoGameError(Exception):
    """Base class for all solver errors."""


class DomainError(GeoGameError, ValueError):
    """An input lies outside the domain of the model (non-finite value, z <= 0)."""


class SingularAgreement(GeoGameError, ArithmeticError):
    """The deviation and punishment losses of a player coincide.

    The minimum discount factor ratio is undefined there: cooperating is
    never rational for that player at the given agreement temperature.
    """

    def __init__(self, player: str, y_tilde: float, message: str | None = None):
        self.player = player
        self.y_tilde = y_tilde
        super().__init__(
            message
            or f"agreement y_tilde={y_tilde!r} is singular for player {player}: "
            "deviation loss equals non-cooperative loss, cooperation is never rational"
        )


class NoSustainableRange(GeoGameError, ArithmeticError):
    """The quadratic bounding the sustainable agreements has no real root."""


class OptimizationFailed(GeoGameError, RuntimeError):
    """The scalar minimizer could not find any well-defined probe point."""
