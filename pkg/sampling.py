"""
PolyBisect Sampling Module
Seeded random rational sites: numerators uniform in [-N, N] over a fixed
denominator, filtered for general position by rejection.
"""
import logging
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from config import DEFAULT_SEED, SAMPLE_DENOMINATOR, SAMPLE_MAX_REJECTIONS, SAMPLE_NUMERATOR_RANGE
from errors import SamplingExhausted
from exact_core import QVector
from performance_monitor import performance_monitor
from polytope import Family, UnitBall, is_weak_general_position

from bisector import genericity

logger = logging.getLogger(__name__)


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_site(rng: np.random.Generator, dim: int, sum_zero: bool = False,
                numerator_range: int = SAMPLE_NUMERATOR_RANGE,
                denominator: int = SAMPLE_DENOMINATOR) -> QVector:
    """
    A nonzero rational point. With sum_zero the last coordinate balances the
    others, so it may leave [-N, N].
    """
    if numerator_range < 1:
        raise SamplingExhausted("numerator range must be at least 1")
    while True:
        free = dim - 1 if sum_zero else dim
        nums = [int(k) for k in rng.integers(-numerator_range, numerator_range + 1, size=free)]
        if sum_zero:
            nums.append(-sum(nums))
        if any(nums):
            return QVector(tuple(Fraction(k, denominator) for k in nums))


def is_sample_generic(ball: UnitBall, a: QVector) -> bool:
    if ball.family == Family.VREP:
        return is_weak_general_position(ball, a)
    return bool(genericity(ball, a).general)


def random_generic_site(ball: UnitBall, rng: np.random.Generator,
                        max_rejections: int = SAMPLE_MAX_REJECTIONS, **kwargs) -> QVector:
    """Sample until the site is in general position (weak general position for V-representations)."""
    for attempt in range(max_rejections + 1):
        a = random_site(rng, ball.dim, ball.sum_zero, **kwargs)
        performance_monitor.update_metrics(sites_sampled=1)
        if is_sample_generic(ball, a):
            return a
        performance_monitor.update_metrics(sites_rejected=1)
        logger.debug(f"Rejected non-generic site {a} for {ball.name}")
    raise SamplingExhausted(f"no generic site for {ball.name} after {max_rejections} rejections")


def random_generic_pair(ball: UnitBall, rng: np.random.Generator, **kwargs) -> Tuple[QVector, QVector]:
    return random_generic_site(ball, rng, **kwargs), random_generic_site(ball, rng, **kwargs)
