"""Bounded derivative-free scalar minimization (Brent's fmin)."""

from __future__ import annotations

import math
from collections.abc import Callable
from dataclasses import dataclass

from .errors import DomainError, OptimizationFailed, SingularAgreement

DEFAULT_TOL = 1e-8

_GOLDEN = 0.5 * (3.0 - math.sqrt(5.0))
_SQRT_EPS = math.sqrt(2.220446049250313e-16)


@dataclass(frozen=True)
class OptimizeResult:
    minimizer: float
    objective: float
    evaluations: int


def minimize_scalar(
    f: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float = DEFAULT_TOL,
    *,
    guard: bool = True,
) -> OptimizeResult:
    """Minimize ``f`` on ``[lower, upper]`` by golden sections and parabolic steps.

    The iteration is Brent's ``fmin``: it stops once the bracket around the
    best point is within ``2 * (tol/3 + sqrt(eps) * |x|)``. For a non-unimodal
    ``f`` the result is a local minimum inside the bounds. Probes never come
    closer than ``2 * tol1`` to either bound, so a minimum sitting exactly on
    a bound is only approached to within that distance.

    With ``guard`` on, a probe where ``f`` raises :class:`SingularAgreement` or
    returns a non-finite value scores ``+inf``, and no parabola is fitted
    through such points. With ``guard`` off, exceptions propagate.

    Raises:
        DomainError: If the bounds are not finite with ``lower < upper`` or ``tol <= 0``.
        OptimizationFailed: If every probe point was singular.
    """
    if not (math.isfinite(lower) and math.isfinite(upper) and lower < upper):
        raise DomainError(f"need finite lower < upper, got [{lower!r}, {upper!r}]")
    if not (math.isfinite(tol) and tol > 0):
        raise DomainError(f"tol must be finite and > 0, got {tol!r}")

    evaluations = 0

    def evaluate(x: float) -> float:
        nonlocal evaluations
        evaluations += 1
        if not guard:
            return f(x)
        try:
            value = f(x)
        except SingularAgreement:
            return math.inf
        return value if math.isfinite(value) else math.inf

    a, b = lower, upper
    x = w = v = a + _GOLDEN * (b - a)
    fx = fw = fv = evaluate(x)
    d = e = 0.0
    tol3 = tol / 3.0

    while True:
        xm = 0.5 * (a + b)
        tol1 = _SQRT_EPS * abs(x) + tol3
        t2 = 2.0 * tol1
        if abs(x - xm) <= t2 - 0.5 * (b - a):
            break

        p = q = r = 0.0
        if abs(e) > tol1 and math.isfinite(fx) and math.isfinite(fw) and math.isfinite(fv):
            r = (x - w) * (fx - fv)
            q = (x - v) * (fx - fw)
            p = (x - v) * q - (x - w) * r
            q = 2.0 * (q - r)
            if q > 0.0:
                p = -p
            else:
                q = -q
            r = e
            e = d

        if abs(p) >= abs(0.5 * q * r) or p <= q * (a - x) or p >= q * (b - x):
            e = (b - x) if x < xm else (a - x)
            d = _GOLDEN * e
        else:
            d = p / q
            u = x + d
            # keep away from the bracket ends
            if u - a < t2 or b - u < t2:
                d = tol1 if x < xm else -tol1

        # keep away from x
        if abs(d) >= tol1:
            u = x + d
        elif d > 0.0:
            u = x + tol1
        else:
            u = x - tol1
        fu = evaluate(u)

        if fu <= fx:
            if u < x:
                b = x
            else:
                a = x
            v, w, x = w, x, u
            fv, fw, fx = fw, fx, fu
        else:
            if u < x:
                a = u
            else:
                b = u
            if fu <= fw or w == x:
                v, w = w, u
                fv, fw = fw, fu
            elif fu <= fv or v == x or v == w:
                v, fv = u, fu

    if math.isinf(fx) and fx > 0:
        raise OptimizationFailed(
            f"every probe in [{lower!r}, {upper!r}] was singular ({evaluations} evaluations)"
        )
    return OptimizeResult(minimizer=x, objective=fx, evaluations=evaluations)
