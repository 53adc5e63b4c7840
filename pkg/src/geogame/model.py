"""Domain types and closed-form losses of the two-player geoengineering game.

Player H prefers a cooler climate (``y_star_h <= 0`` by convention), player C
a warmer one (``y_star_c >= 0``). Each player deploys a signed quantity ``g``;
the realized temperature is the sum of both deployments. Losses are quadratic
in the temperature miss plus ``z`` times the squared deployments of both
players.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "Scenario",
    "Deployment",
    "Agreement",
    "loss",
    "nash_deployment",
    "nash_temperature",
    "cooperative_loss",
    "noncooperative_loss",
    "deviation_best_response",
    "deviation_loss",
]


def _require_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise DomainError(f"{name} must be finite, got {value!r}")


def _require_positive_z(z: float) -> None:
    _require_finite(z=z)
    if z <= 0:
        raise DomainError(f"risk factor z must be > 0, got {z!r}")


@dataclass(frozen=True)
class Scenario:
    """Exogenous parameters of one game: both preferred temperatures and the risk factor."""

    y_star_h: float
    y_star_c: float
    z: float

    def __post_init__(self) -> None:
        _require_finite(y_star_h=self.y_star_h, y_star_c=self.y_star_c)
        _require_positive_z(self.z)
        # normalise ints (e.g. from the CLI grid) so downstream arithmetic is float
        object.__setattr__(self, "y_star_h", float(self.y_star_h))
        object.__setattr__(self, "y_star_c", float(self.y_star_c))
        object.__setattr__(self, "z", float(self.z))

    def preference(self, player: str) -> float:
        """Return the preferred temperature of ``"H"`` or ``"C"``."""
        if player == "H":
            return self.y_star_h
        if player == "C":
            return self.y_star_c
        raise ValueError(f"unknown player {player!r}, expected 'H' or 'C'")

    def swapped(self) -> Scenario:
        return Scenario(self.y_star_c, self.y_star_h, self.z)


@dataclass(frozen=True)
class Deployment:
    """Signed geoengineering units of both players; negative values cool."""

    g_h: float
    g_c: float

    def __post_init__(self) -> None:
        _require_finite(g_h=self.g_h, g_c=self.g_c)

    @property
    def temperature(self) -> float:
        return self.g_h + self.g_c


@dataclass(frozen=True)
class Agreement:
    """A negotiated temperature reached by an even split of the deployment."""

    y_tilde: float

    def __post_init__(self) -> None:
        _require_finite(y_tilde=self.y_tilde)
        object.__setattr__(self, "y_tilde", float(self.y_tilde))

    @property
    def g_h(self) -> float:
        return 0.5 * self.y_tilde

    @property
    def g_c(self) -> float:
        return 0.5 * self.y_tilde

    @property
    def deployment(self) -> Deployment:
        return Deployment(self.g_h, self.g_c)


def loss(y_star_i: float, y: float, g_own: float, g_other: float, z: float) -> float:
    """One-period loss of a player.

    Args:
        y_star_i: Preferred temperature of the player.
        y: Realized temperature.
        g_own: Deployment of the player.
        g_other: Deployment of the opponent.
        z: Risk factor weighting both squared deployments.

    Returns:
        ``(y_star_i - y)**2 + z * (g_own**2 + g_other**2)``.

    Raises:
        DomainError: If any input is non-finite or ``z <= 0``.
    """
    _require_finite(y_star_i=y_star_i, y=y, g_own=g_own, g_other=g_other)
    _require_positive_z(z)
    return (y_star_i - y) ** 2 + z * (g_own**2 + g_other**2)


def nash_deployment(s: Scenario) -> Deployment:
    """Mutual best responses of the one-shot game."""
    z = s.z
    denom = z * z + 2.0 * z
    g_h = (s.y_star_h * (z + 1.0) - s.y_star_c) / denom
    g_c = (s.y_star_c * (z + 1.0) - s.y_star_h) / denom
    return Deployment(g_h, g_c)


def nash_temperature(s: Scenario) -> float:
    """Temperature realized in the non-cooperative equilibrium."""
    return (s.y_star_h + s.y_star_c) / (s.z + 2.0)


def cooperative_loss(y_star_i: float, a: Agreement, z: float) -> float:
    """Per-period loss while both players honour the agreement."""
    _require_finite(y_star_i=y_star_i)
    _require_positive_z(z)
    y_tilde = a.y_tilde
    return (y_star_i - y_tilde) ** 2 + 0.5 * z * y_tilde**2


def noncooperative_loss(y_star_i: float, s: Scenario) -> float:
    """Per-period loss of a player with preference ``y_star_i`` on the punishment path.

    Uses the expanded form with everything over ``(z**2 + 2z)**2``, where the
    Nash deployments of ``s`` have been substituted into the loss.
    """
    _require_finite(y_star_i=y_star_i)
    y_h, y_c, z = s.y_star_h, s.y_star_c, s.z
    d = z * z + 2.0 * z
    miss = y_star_i * d - (y_h + y_c) * (z + 1.0) + y_c + y_h
    risk = z * ((y_h * (z + 1.0) - y_c) ** 2 + (y_c * (z + 1.0) - y_h) ** 2)
    return (miss**2 + risk) / (d * d)


def deviation_best_response(y_star_i: float, a: Agreement, z: float) -> float:
    """Loss-minimizing deployment of a deviator while the opponent still plays ``y_tilde / 2``."""
    _require_finite(y_star_i=y_star_i)
    _require_positive_z(z)
    return (y_star_i - 0.5 * a.y_tilde) / (z + 1.0)


def deviation_loss(y_star_i: float, a: Agreement, z: float) -> float:
    """One-period loss of a player who deviates optimally from the agreement."""
    g_dev = deviation_best_response(y_star_i, a, z)
    half = 0.5 * a.y_tilde
    return (y_star_i - (half + g_dev)) ** 2 + z * (half**2 + g_dev**2)
