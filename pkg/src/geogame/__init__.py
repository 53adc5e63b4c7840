"""Nash equilibria and agreement stability in a two-player solar geoengineering game."""

from .errors import (
    DomainError,
    GeoGameError,
    NoSustainableRange,
    OptimizationFailed,
    SingularAgreement,
)
from .model import (
    Agreement,
    Deployment,
    Scenario,
    cooperative_loss,
    deviation_best_response,
    deviation_loss,
    loss,
    nash_deployment,
    nash_temperature,
    noncooperative_loss,
)
from .optimize import OptimizeResult, minimize_scalar
from .stability import (
    StabilityReport,
    SustainableRange,
    delta_min,
    delta_min_player,
    most_stable_temperature_closed_form,
    stability_report,
    sustainable_range,
)
from .sweep import (
    SweepCell,
    SweepConfig,
    SweepSurface,
    most_stable_agreement,
    run_sweep,
    surface_to_records,
)

__version__ = "0.1.0"
