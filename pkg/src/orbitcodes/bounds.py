"""Closed-form rate and distance bounds, with a Monte Carlo volume oracle.

The rate lower bounds come from the volume of the constraint polytope on
the dominant digit variables: with C+1 integration variables the volume is

    (r^(C+1) - max(0, r - rho)^(C+1)) / (C+1)!        (balanced, C = 2m)

and for the tunable construction, with the decoupled z variable
contributing a factor r,

    gamma^(2m+1) * r * (r^(2m+1) - max(0, r-rho)^(2m+1)) / (2m+1)!

Both saturate once rho exceeds r.  Closed forms are exact rationals; the
Monte Carlo estimator is an independent oracle for them.  Distance bounds
combine the degree (Singleton-type) bound 1 - rho with the expander bound
(1-r) * ((1-r) - sigma_2), clipped at zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from orbitcodes.errors import ParameterError


def _validate(r: Fraction, rho: Fraction, m: int, gamma: Fraction | None = None):
    if not (0 < r < 1):
        raise ParameterError(f"r must lie in (0, 1), got {r}")
    if not (0 < rho <= 1):
        raise ParameterError(f"rho must lie in (0, 1], got {rho}")
    if m < 2:
        raise ParameterError(f"m must be >= 2, got {m}")
    if gamma is not None and not (0 < gamma <= 1):
        raise ParameterError(f"gamma must lie in (0, 1], got {gamma}")


def volume_i(r: Fraction, rho: Fraction, m: int) -> Fraction:
    """Polytope volume / asymptotic rate lower bound, balanced construction."""
    r, rho = Fraction(r), Fraction(rho)
    _validate(r, rho, m)
    c = 2 * m
    return (r ** (c + 1) - max(Fraction(0), r - rho) ** (c + 1)) / math.factorial(c + 1)


def volume_ii(r: Fraction, rho: Fraction, m: int, gamma: Fraction) -> Fraction:
    """Polytope volume for the tunable construction (rate bound is this / gamma)."""
    r, rho, gamma = Fraction(r), Fraction(rho), Fraction(gamma)
    _validate(r, rho, m, gamma)
    w = 2 * m + 1
    return gamma**w * r * (r**w - max(Fraction(0), r - rho) ** w) / math.factorial(w)


def rate_lower_bound(instantiation: str, r: Fraction, rho: Fraction, m: int, gamma: Fraction | None = None) -> Fraction:
    """Asymptotic global-rate lower bound for either instantiation."""
    if instantiation == "I":
        return volume_i(r, rho, m)
    if instantiation == "II":
        if gamma is None:
            raise ParameterError("instantiation II needs gamma")
        return volume_ii(r, rho, m, gamma) / gamma
    raise ParameterError(f"unknown instantiation {instantiation!r}")


def counting_baseline(r: Fraction, D: int, n: int) -> Fraction:
    """Finite-length constraint-counting rate guarantee max(0, 2*floor(D*r) - D)/n.

    Nonpositive (clipped to 0) whenever r <= 1/2 and D = n: the regime the
    polytope bound exists to rescue.
    """
    if D > n:
        raise ParameterError("D must not exceed n")
    guaranteed = 2 * math.floor(Fraction(r) * D) - D
    return max(Fraction(0), Fraction(guaranteed, n))


def distance_bounds(r: Fraction, rho: Fraction, sigma2: float) -> tuple[Fraction, float]:
    """(algebraic, expander) relative-distance lower bounds.

    algebraic = 1 - rho from the global degree constraint; expander =
    (1-r) * ((1-r) - sigma2) clipped at 0, which tends to (1-r)^2 as the
    spectral gap opens.
    """
    r, rho = Fraction(r), Fraction(rho)
    if not (0 <= rho <= 1) or not (0 <= r <= 1):
        raise ParameterError("r, rho must lie in [0, 1]")
    algebraic = 1 - rho
    local = 1 - r
    expander = max(0.0, float(local) * (float(local) - sigma2))
    return algebraic, expander


@dataclass
class BoundReport:
    """Closed-form bound summary for one parameter point."""

    instantiation: str
    m: int
    r: Fraction
    rho: Fraction
    gamma: Fraction | None
    volume: Fraction
    rate_lb_polytope: Fraction
    rate_lb_counting: Fraction | None  # None when n is not specified (asymptotic sweep)
    dist_lb_algebraic: Fraction
    dist_lb_expander: float

    def dist_lb_combined(self) -> float:
        return max(float(self.dist_lb_algebraic), self.dist_lb_expander)

    def to_json(self) -> dict:
        return {
            "instantiation": self.instantiation,
            "m": self.m,
            "r": str(self.r),
            "rho": str(self.rho),
            "gamma": None if self.gamma is None else str(self.gamma),
            "volume": float(self.volume),
            "rate_lb_polytope": float(self.rate_lb_polytope),
            "rate_lb_counting": None if self.rate_lb_counting is None else float(self.rate_lb_counting),
            "dist_lb_algebraic": float(self.dist_lb_algebraic),
            "dist_lb_expander": self.dist_lb_expander,
            "dist_lb_combined": self.dist_lb_combined(),
        }


def bound_report(
    instantiation: str,
    m: int,
    r: Fraction,
    rho: Fraction,
    gamma: Fraction | None = None,
    sigma2: float = 0.0,
    D: int | None = None,
    n: int | None = None,
) -> BoundReport:
    if instantiation == "I":
        vol = volume_i(r, rho, m)
    else:
        vol = volume_ii(r, rho, m, gamma)
    alg, expander = distance_bounds(r, rho, sigma2)
    counting = None
    if D is not None and n is not None:
        counting = counting_baseline(r, D, n)
    return BoundReport(
        instantiation=instantiation,
        m=m,
        r=Fraction(r),
        rho=Fraction(rho),
        gamma=None if gamma is None else Fraction(gamma),
        volume=vol,
        rate_lb_polytope=rate_lower_bound(instantiation, r, rho, m, gamma),
        rate_lb_counting=counting,
        dist_lb_algebraic=alg,
        dist_lb_expander=expander,
    )


# -- Monte Carlo volume oracle ----------------------------------------------------


def polytope_indicator_i(r: Fraction, rho: Fraction, m: int) -> tuple[int, Callable[[np.ndarray], np.ndarray]]:
    """(dimension, vectorized membership test) for the balanced polytope.

    Variables: the 2m dominant digit ratios plus the free-coefficient
    ratio z, all sampled from the unit cube; membership is sum < r with
    the last digit variable additionally below rho.
    """
    _validate(Fraction(r), Fraction(rho), m)
    dim = 2 * m + 1
    rf, rhof = float(r), float(rho)

    def member(pts: np.ndarray) -> np.ndarray:
        return (pts.sum(axis=1) < rf) & (pts[:, 2 * m - 1] < rhof)

    return dim, member


def polytope_indicator_ii(
    r: Fraction, rho: Fraction, m: int, gamma: Fraction
) -> tuple[int, Callable[[np.ndarray], np.ndarray]]:
    """(dimension, membership test) for the tunable polytope.

    2m+1 dominant digit ratios plus the decoupled z < r variable; digit
    ratios sum below r*gamma with the last one additionally below
    rho*gamma.
    """
    _validate(Fraction(r), Fraction(rho), m, Fraction(gamma))
    nx = 2 * m + 1
    dim = nx + 1
    rg, rhog, rf = float(Fraction(r) * Fraction(gamma)), float(Fraction(rho) * Fraction(gamma)), float(r)

    def member(pts: np.ndarray) -> np.ndarray:
        x = pts[:, :nx]
        return (x.sum(axis=1) < rg) & (x[:, nx - 1] < rhog) & (pts[:, nx] < rf)

    return dim, member


def volume_monte_carlo(
    dim: int,
    member: Callable[[np.ndarray], np.ndarray],
    samples: int = 10_000_000,
    seed: int = 0,
    chunk: int = 1_000_000,
) -> tuple[float, float]:
    """(estimate, standard error) of a unit-cube subvolume by uniform sampling."""
    if samples < 1:
        raise ParameterError("need at least one sample")
    rng = np.random.default_rng(seed)
    hits = 0
    done = 0
    while done < samples:
        b = min(chunk, samples - done)
        pts = rng.random((b, dim))
        hits += int(member(pts).sum())
        done += b
    est = hits / samples
    stderr = math.sqrt(max(est * (1 - est), 1e-300) / samples)
    return est, stderr
