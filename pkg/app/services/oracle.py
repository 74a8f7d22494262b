"""
Independent candidate-enumeration oracle for the isoperimetric profile
Recomputes every candidate perimeter from the geometry module alone
"""

import logging
import math
from typing import NamedTuple

import numpy as np
from numpy.typing import NDArray

from app.exceptions import DomainError
from app.services.geometry import (
    FEASIBILITY_SLACK,
    ORACLE_ONLY_KINDS,
    ArcRegion,
    CandidateRegion,
    ConnectedRegion,
    Corner,
    NotchParam,
    OracleOnlyRegion,
    QuarterDisk,
    RegionKind,
    ShortChordRegion,
    UnionRegion,
    UnitChordRegion,
    area_admits,
    corner_max_radius,
    feasible,
    full_circle_max_radius,
    region_area_perimeter,
    s4_perimeter_kernel,
)
from app.services.solvers import (
    DEFAULT_CONFIG,
    SolverConfig,
    theta_of_area,
    theta_of_area_array,
)

logger: logging.Logger = logging.getLogger(__name__)

MIN_RESOLUTION: int = 10

# Row order of the vectorised part table used for union sweeps
_PART_KINDS: tuple[RegionKind, ...] = (
    RegionKind.S1,
    RegionKind.S2,
    RegionKind.S3,
    RegionKind.S4,
    RegionKind.FULL_CIRCLE,
    RegionKind.SEMICIRCLE,
    RegionKind.THREE_QUARTER_CIRCLE,
    RegionKind.NOTCH_QUARTER_CIRCLE,
)


class Candidate(NamedTuple):
    region: CandidateRegion
    perimeter: float


class OracleMinimum(NamedTuple):
    perimeter: float
    region: CandidateRegion


def _check_request(notch: NotchParam, t: float, resolution: int) -> None:
    if not 0.0 < t <= notch.half_area + FEASIBILITY_SLACK:
        raise DomainError(f"t={t} outside (0, {notch.half_area}] for a={notch.a}")
    if resolution < MIN_RESOLUTION:
        raise DomainError(f"resolution must be at least {MIN_RESOLUTION}, got {resolution}")


def connected_candidates(
    notch: NotchParam | float, t: float, cfg: SolverConfig = DEFAULT_CONFIG
) -> list[Candidate]:
    """Every feasible connected candidate of area exactly t"""
    notch = NotchParam.of(notch)
    regions: list[CandidateRegion] = [QuarterDisk.with_area(t, corner) for corner in Corner]
    regions.append(UnitChordRegion.with_area(t))
    if notch.a > 0.0:
        regions.append(ShortChordRegion.with_area(notch, t))
    if area_admits(notch, RegionKind.S4, t):
        theta = theta_of_area(notch, t, cfg)
        regions.extend(ArcRegion(theta=theta, reflected=flag) for flag in (False, True))
    regions.extend(OracleOnlyRegion.with_area(notch, kind, t) for kind in ORACLE_ONLY_KINDS)

    candidates = []
    for region in regions:
        if not feasible(notch, region):
            continue
        _, perimeter = region_area_perimeter(notch, region)
        candidates.append(Candidate(region, perimeter))
    return candidates


def _part_table(
    notch: NotchParam, areas: NDArray[np.float64], cfg: SolverConfig
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Perimeters of each part kind at each area (inf where infeasible)"""
    a = notch.a
    slack = FEASIBILITY_SLACK
    table = np.full((len(_PART_KINDS), areas.size), np.inf)

    s1_radius = np.sqrt(4.0 * areas / np.pi)
    s1_limit = max(corner_max_radius(notch, corner) for corner in Corner)
    table[0] = np.where(s1_radius <= s1_limit + slack, 0.5 * np.pi * s1_radius, np.inf)
    table[1] = np.where(areas <= notch.short_side + slack, 1.0, np.inf)
    if a > 0.0:
        table[2] = np.where(areas <= notch.s4_min_area + slack, notch.short_side, np.inf)

    thetas = theta_of_area_array(notch, areas, cfg)
    table[3] = np.where(np.isnan(thetas), np.inf, s4_perimeter_kernel(a, np.nan_to_num(thetas)))

    full_r = np.sqrt(areas / np.pi)
    table[4] = np.where(full_r <= full_circle_max_radius(notch) + slack, 2.0 * np.pi * full_r, np.inf)

    semi_r = np.sqrt(2.0 * areas / np.pi)
    semi_ok = (semi_r <= 0.5 + slack) & (
        np.hypot(np.maximum(0.0, 1.0 - semi_r - a), 1.0 - a) >= semi_r - slack
    )
    table[5] = np.where(semi_ok, np.pi * semi_r, np.inf)

    if a > 0.0:
        three_r = np.sqrt(4.0 * areas / (3.0 * np.pi))
        table[6] = np.where(three_r <= min(a, 1.0 - a) + slack, 1.5 * np.pi * three_r, np.inf)
        notch_r = np.sqrt(4.0 * (areas + a * a) / np.pi)
        table[7] = np.where(notch_r <= 1.0 + slack, 0.5 * np.pi * notch_r, np.inf)
    return table, thetas


def _part_region(
    notch: NotchParam, kind: RegionKind, t: float, theta: float
) -> ConnectedRegion:
    match kind:
        case RegionKind.S1:
            corner = max(Corner, key=lambda c: corner_max_radius(notch, c))
            return QuarterDisk.with_area(t, corner)
        case RegionKind.S2:
            return UnitChordRegion.with_area(t)
        case RegionKind.S3:
            return ShortChordRegion.with_area(notch, t)
        case RegionKind.S4:
            return ArcRegion(theta=theta)
    return OracleOnlyRegion.with_area(notch, kind, t)


def union_candidates(
    notch: NotchParam | float,
    t: float,
    resolution: int,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> list[Candidate]:
    """
    Two-part unions over the splits t1 = k t / resolution, k = 1..resolution-1

    Each part is the cheapest feasible connected kind at its own area.
    """
    notch = NotchParam.of(notch)
    _check_request(notch, t, resolution)
    t1 = t * np.arange(1, resolution) / resolution
    t2 = t - t1
    areas = np.concatenate([t1, t2])
    table, thetas = _part_table(notch, areas, cfg)
    best = np.argmin(table, axis=0)
    cost = table[best, np.arange(areas.size)]

    n = t1.size
    candidates = []
    for k in range(n):
        first, second = k, n + k
        if not (math.isfinite(cost[first]) and math.isfinite(cost[second])):
            continue
        parts = [
            _part_region(notch, _PART_KINDS[best[i]], float(areas[i]), float(thetas[i]))
            for i in (first, second)
        ]
        candidates.append(
            Candidate(UnionRegion(parts=parts), float(cost[first] + cost[second]))
        )
    return candidates


def enumerate_candidates(
    notch: NotchParam | float,
    t: float,
    resolution: int,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> list[Candidate]:
    """All feasible candidates of area t: connected kinds plus two-part unions"""
    notch = NotchParam.of(notch)
    _check_request(notch, t, resolution)
    return connected_candidates(notch, t, cfg) + union_candidates(notch, t, resolution, cfg)


def oracle_min(
    notch: NotchParam | float,
    t: float,
    resolution: int,
    cfg: SolverConfig = DEFAULT_CONFIG,
) -> OracleMinimum:
    """Cheapest enumerated candidate; ties keep the first in enumeration order"""
    candidates = enumerate_candidates(notch, t, resolution, cfg)
    best = min(candidates, key=lambda c: c.perimeter)
    logger.debug(f"Oracle a={NotchParam.of(notch).a}, t={t}: {best.region.kind} {best.perimeter}")
    return OracleMinimum(best.perimeter, best.region)


def secondcase_bound(theta: float) -> tuple[float, float]:
    """
    (P^2, pi t) for the unit-radius circular segment of central angle theta

    P = theta and t = (theta - cos(theta) sin(theta)) / 2; P^2 >= pi t on
    [pi/2, pi], with equality at pi/2.
    """
    if not 0.5 * math.pi - 1e-15 <= theta <= math.pi + 1e-15:
        raise DomainError(f"theta must lie in [pi/2, pi], got {theta}")
    area = 0.5 * (theta - math.cos(theta) * math.sin(theta))
    return theta * theta, math.pi * area
