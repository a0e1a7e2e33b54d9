"""Closed-form Arps decline kernels.

Three classical decline shapes, parameterized by initial rate ``qi``
(mmscf/day), nominal decline rate ``di`` (1/day), and exponent ``b``:

    exponential (b = 0):   q(t) = qi * exp(-di * t)
    harmonic    (b = 1):   q(t) = qi / (1 + di * t)
    hyperbolic (0<b<1):    q(t) = qi * (1 + b * di * t)^(-1/b)

Every kernel comes in three flavors: rate at elapsed time, incremental
volume between two rates, and time to decline between two rates.  Volume
and time operate on a rate interval anchored at the *current* rate, not
the fitted initial rate, so forecasts can be re-anchored at today's
production without refitting.

Units are fixed throughout the package: days, mmscf/day, mmscf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError

# Below this distance from b=0 (or b=1) the hyperbolic forms are evaluated
# via the exponential (or harmonic) closed forms: the (q/qi)^(1-b) and
# (qi/q)^b - 1 terms lose all significance there.
_B_LIMIT_EPS = 1e-7

_LN10 = math.log(10.0)


class DeclineKind(Enum):
    """The three Arps decline regimes, distinguished by the exponent b."""

    EXPONENTIAL = "exponential"
    HARMONIC = "harmonic"
    HYPERBOLIC = "hyperbolic"


@dataclass(frozen=True)
class DeclineParameters:
    """A fitted (or assumed) Arps decline model.

    Attributes:
        kind: decline regime; fixes the admissible range of ``b``.
        qi:   initial rate, mmscf/day.  Strictly positive.
        di:   nominal decline rate, 1/day.  Strictly positive.
        b:    decline exponent.  0 for exponential, 1 for harmonic,
              strictly inside (0, 1) for hyperbolic.
    """

    kind: DeclineKind
    qi: float
    di: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.qi) and self.qi > 0):
            raise ValidationError(f"qi must be positive, got {self.qi}")
        if not (math.isfinite(self.di) and self.di > 0):
            raise ValidationError(f"di must be positive, got {self.di}")
        if not (math.isfinite(self.b) and 0.0 <= self.b <= 1.0):
            raise ValidationError(f"b must lie in [0, 1], got {self.b}")
        if self.kind is DeclineKind.EXPONENTIAL and self.b != 0.0:
            raise ValidationError(f"exponential decline requires b = 0, got {self.b}")
        if self.kind is DeclineKind.HARMONIC and self.b != 1.0:
            raise ValidationError(f"harmonic decline requires b = 1, got {self.b}")
        if self.kind is DeclineKind.HYPERBOLIC and not 0.0 < self.b < 1.0:
            raise ValidationError(
                f"hyperbolic decline requires 0 < b < 1, got {self.b}"
            )

    @classmethod
    def exponential(cls, qi: float, di: float) -> "DeclineParameters":
        return cls(DeclineKind.EXPONENTIAL, qi, di, 0.0)

    @classmethod
    def harmonic(cls, qi: float, di: float) -> "DeclineParameters":
        return cls(DeclineKind.HARMONIC, qi, di, 1.0)

    @classmethod
    def hyperbolic(cls, qi: float, di: float, b: float) -> "DeclineParameters":
        return cls(DeclineKind.HYPERBOLIC, qi, di, b)

    def reanchored(self, q_start: float) -> "DeclineParameters":
        """Same decline shape, restarted from rate ``q_start`` at t = 0."""
        return DeclineParameters(self.kind, q_start, self.di, self.b)


@dataclass(frozen=True)
class RateInterval:
    """A decline interval from a starting rate down to an abandonment rate."""

    q_start: float
    q_ab: float

    def __post_init__(self):
        if not (math.isfinite(self.q_ab) and self.q_ab > 0):
            raise ValidationError(f"abandonment rate must be positive, got {self.q_ab}")
        if not (math.isfinite(self.q_start) and self.q_start >= self.q_ab):
            raise ValidationError(
                f"q_start ({self.q_start}) must be >= q_ab ({self.q_ab})"
            )


# ---------------------------------------------------------------------------
# Bare rate kernels.  Accept scalars or arrays; validation of t happens in
# rate_at so vectorized callers (fitters, forecasts) pay it once.
# ---------------------------------------------------------------------------


def exponential_rate(t, qi: float, di: float):
    """q(t) = qi * exp(-di * t)."""
    return qi * np.exp(-di * np.asarray(t, dtype=float))


def harmonic_rate(t, qi: float, di: float):
    """q(t) = qi / (1 + di * t)."""
    return qi / (1.0 + di * np.asarray(t, dtype=float))


def hyperbolic_rate(t, qi: float, di: float, b: float):
    """q(t) = qi * (1 + b * di * t)^(-1/b), for 0 < b < 1.

    Evaluated as qi * exp(-log1p(b*di*t)/b), which stays accurate as
    b*di*t underflows toward zero.  Near the regime boundaries the
    exponential/harmonic forms take over.
    """
    if not 0.0 < b < 1.0:
        raise ValidationError(f"hyperbolic kernel requires 0 < b < 1, got {b}")
    if b < _B_LIMIT_EPS:
        return exponential_rate(t, qi, di)
    if 1.0 - b < _B_LIMIT_EPS:
        return harmonic_rate(t, qi, di)
    t = np.asarray(t, dtype=float)
    return qi * np.exp(-np.log1p(b * di * t) / b)


# ---------------------------------------------------------------------------
# Typed dispatch layer.
# ---------------------------------------------------------------------------


def rate_at(params: DeclineParameters, t):
    """Model rate after ``t`` days of decline.

    Accepts a scalar or an array of elapsed times; negative times are
    rejected.  Returns a float for scalar input, an ndarray otherwise.
    """
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValidationError("elapsed time must be finite")
    if np.any(arr < 0):
        raise ValidationError("elapsed time must be non-negative")

    if params.kind is DeclineKind.EXPONENTIAL:
        out = exponential_rate(arr, params.qi, params.di)
    elif params.kind is DeclineKind.HARMONIC:
        out = harmonic_rate(arr, params.qi, params.di)
    else:
        out = hyperbolic_rate(arr, params.qi, params.di, params.b)
    return float(out) if np.isscalar(t) or np.ndim(t) == 0 else out


def cumulative_between(params: DeclineParameters, interval: RateInterval) -> float:
    """Incremental recoverable volume (mmscf) declining from q_start to q_ab.

    The interval's q_start plays the role of the initial rate in the
    closed forms; the fitted qi in ``params`` is not used here.

        exponential:  Q = (q_start - q_ab) / di
        harmonic:     Q = (q_start / di) * ln(q_start / q_ab)
        hyperbolic:   Q = q_start / ((1-b) di) * [1 - (q_ab/q_start)^(1-b)]
    """
    qs, qa = interval.q_start, interval.q_ab
    if qs == qa:
        return 0.0
    di, b = params.di, params.b

    if params.kind is DeclineKind.EXPONENTIAL:
        return (qs - qa) / di
    if params.kind is DeclineKind.HARMONIC:
        return (qs / di) * math.log(qs / qa)
    if b < _B_LIMIT_EPS:
        return (qs - qa) / di
    if 1.0 - b < _B_LIMIT_EPS:
        return (qs / di) * math.log(qs / qa)
    # 1 - (qa/qs)^(1-b) via expm1 keeps significance when b is near 0 or 1.
    return qs / ((1.0 - b) * di) * -math.expm1((1.0 - b) * math.log(qa / qs))


def time_between_rates(params: DeclineParameters, interval: RateInterval) -> float:
    """Days for the rate to decline from q_start down to q_ab.

        exponential:  dt = ln(q_start / q_ab) / di
        harmonic:     dt = (q_start/q_ab - 1) / di
        hyperbolic:   dt = ((q_start/q_ab)^b - 1) / (b * di)
    """
    qs, qa = interval.q_start, interval.q_ab
    if qs == qa:
        return 0.0
    di, b = params.di, params.b

    if params.kind is DeclineKind.EXPONENTIAL:
        return math.log(qs / qa) / di
    if params.kind is DeclineKind.HARMONIC:
        return (qs / qa - 1.0) / di
    if b < _B_LIMIT_EPS:
        return math.log(qs / qa) / di
    if 1.0 - b < _B_LIMIT_EPS:
        return (qs / qa - 1.0) / di
    return math.expm1(b * math.log(qs / qa)) / (b * di)


def nominal_decline_from_semilog_slope(slope: float) -> float:
    """Convert a base-10 semilog slope (per day) into a nominal decline rate.

    A straight line log10(q) = intercept + slope * t is the exponential
    model in disguise: q = 10**intercept * exp(slope * ln(10) * t), so
    di = |slope| * ln(10).  The slope must be negative (a decline).
    """
    if not (math.isfinite(slope) and slope < 0):
        raise ValidationError(f"no decline: semilog slope must be negative, got {slope}")
    return -slope * _LN10
