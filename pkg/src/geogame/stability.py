"""Minimum discount factors of grim-trigger agreements and the sustainable range.

A player keeps an agreement when ``delta >= (L_d - L_c) / (L_d - L_nc)``
where ``L_c``, ``L_d`` and ``L_nc`` are its cooperative, one-shot deviation
and punishment losses. The agreement as a whole needs the larger of the two
players' thresholds.
"""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NoSustainableRange, SingularAgreement
from .model import (
    Agreement,
    Scenario,
    cooperative_loss,
    deviation_loss,
    nash_temperature,
    noncooperative_loss,
)

SINGULAR_RTOL = 1e-12
TIE_ATOL = 1e-9
DEFAULT_SHRINK = 0.9999

PLAYERS = ("H", "C")


@dataclass(frozen=True)
class PlayerLosses:
    cooperative: float
    deviation: float
    noncooperative: float


@dataclass(frozen=True)
class StabilityReport:
    """Per-player minimum discount factors and the binding one."""

    delta_h: float
    delta_c: float
    delta_min: float
    binding_player: str  # "H", "C" or "tie"


@dataclass(frozen=True)
class SustainableRange:
    """Interval of agreement temperatures both players prefer to the punishment path.

    ``raw_lower``/``raw_upper`` are the exact roots; ``lower``/``upper`` are
    those roots multiplied by ``shrink``.
    """

    lower: float
    upper: float
    shrink: float
    raw_lower: float
    raw_upper: float

    def __contains__(self, y_tilde: float) -> bool:
        return self.lower <= y_tilde <= self.upper


def player_losses(y_star_i: float, s: Scenario, a: Agreement) -> PlayerLosses:
    return PlayerLosses(
        cooperative=cooperative_loss(y_star_i, a, s.z),
        deviation=deviation_loss(y_star_i, a, s.z),
        noncooperative=noncooperative_loss(y_star_i, s),
    )


def _player_label(y_star_i: float, s: Scenario) -> str:
    if y_star_i == s.y_star_h:
        return "H"
    if y_star_i == s.y_star_c:
        return "C"
    return "?"


def delta_min_player(
    y_star_i: float, s: Scenario, a: Agreement, *, player: str | None = None
) -> float:
    """Smallest discount factor at which a player with preference ``y_star_i`` keeps ``a``.

    Raises:
        SingularAgreement: When the deviation and punishment losses coincide
            (relative tolerance ``1e-12``); the ratio has no meaning there.
    """
    losses = player_losses(y_star_i, s, a)
    denom = losses.deviation - losses.noncooperative
    if abs(denom) < SINGULAR_RTOL * max(1.0, abs(losses.deviation)):
        raise SingularAgreement(player or _player_label(y_star_i, s), a.y_tilde)
    return (losses.deviation - losses.cooperative) / denom


def stability_report(s: Scenario, a: Agreement) -> StabilityReport:
    delta_h = delta_min_player(s.y_star_h, s, a, player="H")
    delta_c = delta_min_player(s.y_star_c, s, a, player="C")
    if abs(delta_h - delta_c) < TIE_ATOL:
        binding = "tie"
    else:
        binding = "H" if delta_h > delta_c else "C"
    return StabilityReport(delta_h, delta_c, max(delta_h, delta_c), binding)


def delta_min(s: Scenario, y_tilde: float) -> float:
    """Binding minimum discount factor of the agreement ``y_tilde``."""
    return stability_report(s, Agreement(y_tilde)).delta_min


def delta_min_objective(s: Scenario) -> Callable[[float], float]:
    """``y_tilde -> delta_min`` for a fixed scenario; raises on singular points."""

    def objective(y_tilde: float) -> float:
        return delta_min(s, y_tilde)

    return objective


def unguarded_delta_min_objective(s: Scenario) -> Callable[[float], float]:
    """Raw floating-point ``delta_min`` with no singularity handling.

    Near-singular denominators produce huge values of either sign and an exact
    zero produces an infinity, so a negative blow-up for one player silently
    hands the maximum to the other. Kept to reproduce that failure mode.
    """

    def objective(y_tilde: float) -> float:
        a = Agreement(y_tilde)
        ratios = []
        for y_star in (s.y_star_c, s.y_star_h):
            pl = player_losses(y_star, s, a)
            with np.errstate(divide="ignore", invalid="ignore"):
                ratios.append(
                    float(
                        np.float64(pl.deviation - pl.cooperative)
                        / np.float64(pl.deviation - pl.noncooperative)
                    )
                )
        delta_c, delta_h = ratios
        return delta_c if delta_h < delta_c else delta_h

    return objective


def _boundary_root(y_star: float, l_nc: float, z: float, sign: float) -> float:
    # roots of (1 + z/2) y^2 - 2 y_star y + y_star^2 - l_nc = 0
    k = 1.0 + 0.5 * z
    centre = y_star / k
    radicand = centre * centre - (y_star * y_star - l_nc) / k
    if radicand < 0:
        raise NoSustainableRange(
            f"negative radicand {radicand!r} for preference {y_star!r}, z={z!r}"
        )
    return centre + sign * math.sqrt(radicand)


def sustainable_range(s: Scenario, shrink: float = DEFAULT_SHRINK) -> SustainableRange:
    """Agreement temperatures at which cooperation beats the punishment path for both players.

    The upper end is where H's cooperative loss reaches its non-cooperative
    loss, the lower end the same for C. Both raw roots are scaled by
    ``shrink`` to keep the search off the exact boundary.

    Raises:
        DomainError: For the joint-zero scenario, where the range collapses to
            a point, or a non-positive ``shrink``.
        NoSustainableRange: If either quadratic has no real root.
    """
    if s.y_star_h == 0 and s.y_star_c == 0:
        raise DomainError("sustainable range is degenerate when both preferences are 0")
    if not (math.isfinite(shrink) and shrink > 0):
        raise DomainError(f"shrink must be finite and > 0, got {shrink!r}")
    raw_upper = _boundary_root(s.y_star_h, noncooperative_loss(s.y_star_h, s), s.z, +1.0)
    raw_lower = _boundary_root(s.y_star_c, noncooperative_loss(s.y_star_c, s), s.z, -1.0)
    return SustainableRange(
        lower=shrink * raw_lower,
        upper=shrink * raw_upper,
        shrink=shrink,
        raw_lower=raw_lower,
        raw_upper=raw_upper,
    )


def most_stable_temperature_closed_form(s: Scenario) -> float:
    """Agreement temperature with the lowest ``delta_min``; coincides with the Nash temperature."""
    return nash_temperature(s)
