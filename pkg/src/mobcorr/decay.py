"""Closed-form least squares for competing decay laws.

Models, for integer x >= 3:

    EXP_SQRT_LOG               y = C * x * exp(-c * sqrt(log x))
    EXP_SQRT_LOG_UNNORMALIZED  y = C * exp(-c * sqrt(log x))
    INV_SQRT_LOGLOG            y = C * x / sqrt(log log x)

Each model is linear after a log transform, e.g. for EXP_SQRT_LOG
log(y/x) = log C - c * sqrt(log x) regressed on sqrt(log x).  Fits
solve the 2x2 normal equations (or take the mean, for the 1-parameter
model) in closed form; there is no iterative optimizer and no seed.
rss lives in the transformed log space.

c_hat is reported as fitted: a rising series legitimately produces a
negative value, and clamping would hide it.  On decaying data, which is
what these models are for, c_hat comes out nonnegative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EXP_SQRT_LOG = "EXP_SQRT_LOG"
EXP_SQRT_LOG_UNNORMALIZED = "EXP_SQRT_LOG_UNNORMALIZED"
INV_SQRT_LOGLOG = "INV_SQRT_LOGLOG"

ALL_MODELS = (EXP_SQRT_LOG, EXP_SQRT_LOG_UNNORMALIZED, INV_SQRT_LOGLOG)

_PARAM_COUNT = {EXP_SQRT_LOG: 2, EXP_SQRT_LOG_UNNORMALIZED: 2, INV_SQRT_LOGLOG: 1}

# rss below this is numerical noise on an exact fit; ranking ties there.
_RSS_FLOOR = 1e-12


class DegenerateDataError(ValueError):
    """Design matrix without two distinct abscissae."""


@dataclass(frozen=True)
class DecayFit:
    model_id: str
    c_hat: float
    C_hat: float
    rss: float
    n_points: int


def _response(model_id: str, x: int, y: float) -> float:
    lx = math.log(x)
    if model_id == EXP_SQRT_LOG:
        return math.log(y) - lx
    if model_id == EXP_SQRT_LOG_UNNORMALIZED:
        return math.log(y)
    if model_id == INV_SQRT_LOGLOG:
        return math.log(y) - lx + 0.5 * math.log(math.log(lx))
    raise ValueError(f"unknown model: {model_id!r}")


def model_value(model_id: str, c: float, C: float, x: int) -> float:
    """y predicted at x; INV_SQRT_LOGLOG ignores c."""
    lx = math.log(x)
    if model_id == EXP_SQRT_LOG:
        return C * x * math.exp(-c * math.sqrt(lx))
    if model_id == EXP_SQRT_LOG_UNNORMALIZED:
        return C * math.exp(-c * math.sqrt(lx))
    if model_id == INV_SQRT_LOGLOG:
        return C * x / math.sqrt(math.log(lx))
    raise ValueError(f"unknown model: {model_id!r}")


def synthetic_points(model_id: str, c: float, C: float, xs) -> list[tuple[int, float]]:
    """Exact model data on the given abscissae."""
    return [(int(x), model_value(model_id, c, C, int(x))) for x in xs]


def default_ladder() -> list[int]:
    """Geometric x = 10^k for k = 1..8; near-uniform in sqrt(log x)."""
    return [10**k for k in range(1, 9)]


def fit_decay(points, model_id: str) -> DecayFit:
    """Closed-form least squares in the model's transformed coordinates.

    Points with x < 3 are dropped (log log x must be positive); the
    caller filters nonpositive y and keeps its own count of drops.
    """
    if model_id not in _PARAM_COUNT:
        raise ValueError(f"unknown model: {model_id!r}")
    usable = [(int(x), float(y)) for x, y in points if int(x) >= 3]
    if any(y <= 0.0 for _, y in usable):
        raise ValueError("y values must be positive (filter zeros before fitting)")
    if len(usable) < 2:
        raise DegenerateDataError("need at least 2 points with x >= 3")
    zs = [_response(model_id, x, y) for x, y in usable]
    n = len(usable)
    if _PARAM_COUNT[model_id] == 1:
        intercept = math.fsum(zs) / n
        c_hat = 0.0
        fitted = [intercept] * n
    else:
        if len({x for x, _ in usable}) < 2:
            raise DegenerateDataError("all abscissae equal; the slope is unconstrained")
        ss = [math.sqrt(math.log(x)) for x, _ in usable]
        sum_s = math.fsum(ss)
        sum_z = math.fsum(zs)
        sum_ss = math.fsum(s * s for s in ss)
        sum_sz = math.fsum(s * z for s, z in zip(ss, zs))
        denom = n * sum_ss - sum_s * sum_s
        if denom <= 0.0:
            raise DegenerateDataError("abscissae do not separate in sqrt(log x)")
        slope = (n * sum_sz - sum_s * sum_z) / denom
        intercept = (sum_z - slope * sum_s) / n
        c_hat = -slope
        fitted = [intercept + slope * s for s in ss]
    rss = math.fsum((z - f) ** 2 for z, f in zip(zs, fitted))
    return DecayFit(
        model_id=model_id,
        c_hat=c_hat,
        C_hat=math.exp(intercept),
        rss=rss,
        n_points=n,
    )


def compare_models(points, models) -> list[DecayFit]:
    """All fits on the identical point set, ranked by rss.

    Ties (rss at the noise floor) break toward fewer parameters, then
    lexicographic model id.
    """
    models = list(models)
    if not models:
        raise ValueError("models must be nonempty")
    fits = [fit_decay(points, m) for m in models]

    def key(f: DecayFit):
        rss = 0.0 if f.rss < _RSS_FLOOR else f.rss
        return (rss, _PARAM_COUNT[f.model_id], f.model_id)

    return sorted(fits, key=key)
