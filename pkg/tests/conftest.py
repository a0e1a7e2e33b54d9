"""Shared fixtures: worked-example parameter sets and synthetic histories."""

from pathlib import Path

import numpy as np
import pytest

from dcakit import (
    DeclineKind,
    DeclineParameters,
    ProductionHistory,
    RateInterval,
    rate_at,
)

DATA_DIR = Path(__file__).parent / "data"

# Well-5 worked-example constants: current rate 2.6755 mmscf/d declining to
# the 0.03 mmscf/d economic limit, with 10941.9205 mmscf produced to date.
Q_CURRENT = 2.6755
Q_ABANDON = 0.03
NP_TO_DATE = 10941.9205


@pytest.fixture
def paper_interval() -> RateInterval:
    return RateInterval(Q_CURRENT, Q_ABANDON)


@pytest.fixture
def paper_exponential() -> DeclineParameters:
    return DeclineParameters.exponential(qi=Q_CURRENT, di=0.0134)


@pytest.fixture
def paper_harmonic() -> DeclineParameters:
    return DeclineParameters.harmonic(qi=Q_CURRENT, di=0.0039)


@pytest.fixture
def paper_hyperbolic() -> DeclineParameters:
    return DeclineParameters.hyperbolic(qi=Q_CURRENT, di=0.0039, b=2e-5)


@pytest.fixture
def well5_csv() -> Path:
    return DATA_DIR / "well5_synthetic.csv"


def synthetic_history(
    params: DeclineParameters,
    n: int = 250,
    spacing: float = 1.0,
    noise: float = 0.0,
    rng: np.random.Generator | None = None,
    np_mmscf: float | None = None,
) -> ProductionHistory:
    """History sampled exactly from ``params``, optionally with additive noise.

    Additive noise is clipped away from zero so every stored rate stays
    positive.
    """
    t = np.arange(n, dtype=float) * spacing
    q = rate_at(params, t)
    if noise > 0.0:
        assert rng is not None, "noisy histories need an explicit rng"
        q = np.maximum(q + rng.normal(0.0, noise, size=n), 1e-6)
    return ProductionHistory(t, q, np_mmscf=np_mmscf)


def random_params(kind: DeclineKind, rng: np.random.Generator) -> DeclineParameters:
    """Plausible gas-well parameters for randomized property tests."""
    qi = rng.uniform(0.5, 30.0)
    di = rng.uniform(0.002, 0.03)
    if kind is DeclineKind.EXPONENTIAL:
        return DeclineParameters.exponential(qi, di)
    if kind is DeclineKind.HARMONIC:
        return DeclineParameters.harmonic(qi, di)
    return DeclineParameters.hyperbolic(qi, di, rng.uniform(0.05, 0.95))


def random_interval(
    params: DeclineParameters, rng: np.random.Generator
) -> RateInterval:
    """A decline interval starting at qi with a bounded start/abandon ratio."""
    ratio = rng.uniform(2.0, 25.0)
    return RateInterval(params.qi, params.qi / ratio)
