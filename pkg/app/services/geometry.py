"""
Closed-form geometry of the notched unit square Q_a = [0,1]^2 minus [0,a)^2
Area and relative perimeter for every candidate region type, plus the
circular-segment quantities used by the corner deformation checks
"""

import logging
import math
from enum import StrEnum
from typing import Annotated, Any, Literal

import numpy as np
from numpy.typing import ArrayLike, NDArray
from pydantic import BaseModel, ConfigDict, Field, ValidationError

from app.exceptions import DomainError, InfeasibleRegionError

logger: logging.Logger = logging.getLogger(__name__)

# Absolute slack for boundary cases such as t == a(1-a)
FEASIBILITY_SLACK: float = 1e-12

# Below this argument x - sin(x) is evaluated from its Taylor series
_SERIES_CUTOFF: float = 0.1

_TINY_THETA: float = 1e-8


class RegionKind(StrEnum):
    """Labels for connected candidates, oracle-only candidates and unions"""

    S1 = "S1"
    S2 = "S2"
    S3 = "S3"
    S4 = "S4"
    FULL_CIRCLE = "full_circle"
    SEMICIRCLE = "semicircle"
    THREE_QUARTER_CIRCLE = "three_quarter_circle"
    NOTCH_QUARTER_CIRCLE = "notch_quarter_circle"
    UNION = "union"


PROFILE_KINDS: tuple[RegionKind, ...] = (
    RegionKind.S1,
    RegionKind.S2,
    RegionKind.S3,
    RegionKind.S4,
)
ORACLE_ONLY_KINDS: tuple[RegionKind, ...] = (
    RegionKind.FULL_CIRCLE,
    RegionKind.SEMICIRCLE,
    RegionKind.THREE_QUARTER_CIRCLE,
    RegionKind.NOTCH_QUARTER_CIRCLE,
)


class Corner(StrEnum):
    """The five convex corners of Q_a"""

    TOP_RIGHT = "top_right"  # (1, 1)
    BOTTOM_RIGHT = "bottom_right"  # (1, 0)
    TOP_LEFT = "top_left"  # (0, 1)
    NOTCH_BOTTOM = "notch_bottom"  # (a, 0)
    NOTCH_LEFT = "notch_left"  # (0, a)


class NotchParam(BaseModel):
    """The notch size a defining Q_a"""

    model_config = ConfigDict(frozen=True)

    a: float = Field(ge=0.0, lt=1.0)

    @classmethod
    def of(cls, value: "NotchParam | float") -> "NotchParam":
        """Coerce a bare float into a validated NotchParam"""
        if isinstance(value, NotchParam):
            return value
        try:
            return cls(a=value)
        except ValidationError as e:
            raise DomainError(f"notch size must satisfy 0 <= a < 1, got {value}") from e

    @property
    def area(self) -> float:
        """|Q_a| = 1 - a^2"""
        return 1.0 - self.a * self.a

    @property
    def half_area(self) -> float:
        return 0.5 * self.area

    @property
    def short_side(self) -> float:
        """Length 1 - a of the walls adjacent to the notch"""
        return 1.0 - self.a

    @property
    def s4_min_area(self) -> float:
        """a(1 - a): area of the degenerate S4 region at theta = 0"""
        return self.a * (1.0 - self.a)


class _Region(BaseModel):
    model_config = ConfigDict(frozen=True)


class QuarterDisk(_Region):
    """S1: quarter disk centred at a convex corner"""

    kind: Literal[RegionKind.S1] = RegionKind.S1
    radius: float = Field(gt=0.0)
    corner: Corner = Corner.TOP_RIGHT

    @classmethod
    def with_area(cls, t: float, corner: Corner = Corner.TOP_RIGHT) -> "QuarterDisk":
        return cls(radius=math.sqrt(4.0 * t / math.pi), corner=corner)


class UnitChordRegion(_Region):
    """S2: strip cut off a side of length 1 by a parallel unit chord"""

    kind: Literal[RegionKind.S2] = RegionKind.S2
    height: float = Field(gt=0.0)

    @classmethod
    def with_area(cls, t: float) -> "UnitChordRegion":
        return cls(height=t)


class ShortChordRegion(_Region):
    """S3: strip cut off a side of length 1 - a by a chord of length 1 - a"""

    kind: Literal[RegionKind.S3] = RegionKind.S3
    height: float = Field(gt=0.0)

    @classmethod
    def with_area(cls, notch: "NotchParam | float", t: float) -> "ShortChordRegion":
        return cls(height=t / NotchParam.of(notch).short_side)


class ArcRegion(_Region):
    """S4: circular arc from the non-convex corner to a side of length 1"""

    kind: Literal[RegionKind.S4] = RegionKind.S4
    theta: float = Field(ge=0.0)
    reflected: bool = False


class OracleOnlyRegion(_Region):
    """Circle pieces the profile never uses; they only feed the oracle"""

    kind: Literal[
        RegionKind.FULL_CIRCLE,
        RegionKind.SEMICIRCLE,
        RegionKind.THREE_QUARTER_CIRCLE,
        RegionKind.NOTCH_QUARTER_CIRCLE,
    ]
    radius: float = Field(gt=0.0)

    @classmethod
    def with_area(
        cls, notch: "NotchParam | float", kind: RegionKind, t: float
    ) -> "OracleOnlyRegion":
        a = NotchParam.of(notch).a
        match kind:
            case RegionKind.FULL_CIRCLE:
                radius = math.sqrt(t / math.pi)
            case RegionKind.SEMICIRCLE:
                radius = math.sqrt(2.0 * t / math.pi)
            case RegionKind.THREE_QUARTER_CIRCLE:
                radius = math.sqrt(4.0 * t / (3.0 * math.pi))
            case RegionKind.NOTCH_QUARTER_CIRCLE:
                radius = math.sqrt(4.0 * (t + a * a) / math.pi)
            case _:
                raise DomainError(f"{kind} is not an oracle-only region kind")
        return cls(kind=kind, radius=radius)


ConnectedRegion = Annotated[
    QuarterDisk | UnitChordRegion | ShortChordRegion | ArcRegion | OracleOnlyRegion,
    Field(discriminator="kind"),
]


class UnionRegion(_Region):
    """Disconnected candidate; placement is abstract, only sums matter"""

    kind: Literal[RegionKind.UNION] = RegionKind.UNION
    parts: list[ConnectedRegion] = Field(min_length=2)


CandidateRegion = Annotated[
    QuarterDisk
    | UnitChordRegion
    | ShortChordRegion
    | ArcRegion
    | OracleOnlyRegion
    | UnionRegion,
    Field(discriminator="kind"),
]


# Series-safe kernels (numpy, scalar or array)


def x_minus_sin(x: ArrayLike) -> NDArray[np.float64]:
    """x - sin(x) without cancellation near zero"""
    x = np.asarray(x, dtype=np.float64)
    x2 = x * x
    series = (
        x
        * x2
        / 6.0
        * (1.0 - x2 / 20.0 * (1.0 - x2 / 42.0 * (1.0 - x2 / 72.0 * (1.0 - x2 / 110.0))))
    )
    return np.where(np.abs(x) < _SERIES_CUTOFF, series, x - np.sin(x))


def theta_minus_sin_cos(theta: ArrayLike) -> NDArray[np.float64]:
    """theta - sin(theta)cos(theta), i.e. (2theta - sin 2theta) / 2"""
    theta = np.asarray(theta, dtype=np.float64)
    return 0.5 * x_minus_sin(2.0 * theta)


def theta_over_sin(theta: ArrayLike) -> NDArray[np.float64]:
    """theta / sin(theta) with the value 1 at theta = 0"""
    theta = np.asarray(theta, dtype=np.float64)
    safe = np.where(theta == 0.0, 1.0, theta)
    return np.where(theta == 0.0, 1.0, safe / np.sin(safe))


def s4_area_kernel(a: float, theta: ArrayLike) -> NDArray[np.float64]:
    """Vectorised |S4(a, theta)|; theta = 0 takes the extension a(1 - a)"""
    theta = np.asarray(theta, dtype=np.float64)
    b = 1.0 - a
    # sin^2 underflows for tiny theta; the ratio is theta/3 + 2 theta^3/45 there
    tiny = np.abs(theta) < _TINY_THETA
    safe = np.where(tiny, 1.0, theta)
    sin = np.sin(safe)
    ratio = np.where(
        tiny,
        theta / 3.0 + 2.0 * theta**3 / 45.0,
        theta_minus_sin_cos(safe) / (2.0 * sin * sin),
    )
    return b * b * ratio + a * b


def s4_perimeter_kernel(a: float, theta: ArrayLike) -> NDArray[np.float64]:
    """Vectorised P(S4(a, theta)) = (1 - a) theta / sin theta"""
    return (1.0 - a) * theta_over_sin(theta)


# Public scalar operations


def _check_theta(notch: NotchParam, theta: float, theta_max: float | None) -> None:
    if not math.isfinite(theta) or theta < 0.0:
        raise DomainError(f"theta must be non-negative, got {theta}")
    if theta >= 0.5 * math.pi:
        raise DomainError(f"theta must be below pi/2, got {theta}")
    if theta_max is not None:
        if theta > theta_max + FEASIBILITY_SLACK:
            raise DomainError(f"theta={theta} exceeds theta_max={theta_max}")
    elif float(s4_area_kernel(notch.a, theta)) > notch.half_area + FEASIBILITY_SLACK:
        # area is increasing in theta, so this is theta > theta_max
        raise DomainError(f"theta={theta} encloses more than half of Q_a")


def s4_perimeter(
    notch: NotchParam | float, theta: float, *, theta_max: float | None = None
) -> float:
    """
    Relative perimeter (1 - a) theta / sin(theta) of S4

    Args:
        notch: notch size a
        theta: arc angle in [0, theta_max]
        theta_max: upper bound; when omitted the half-area condition is used
    """
    notch = NotchParam.of(notch)
    _check_theta(notch, theta, theta_max)
    return float(s4_perimeter_kernel(notch.a, theta))


def s4_area(
    notch: NotchParam | float, theta: float, *, theta_max: float | None = None
) -> float:
    """Area of S4; equals a(1 - a) at theta = 0"""
    notch = NotchParam.of(notch)
    _check_theta(notch, theta, theta_max)
    return float(s4_area_kernel(notch.a, theta))


def circular_segment_area(radius: float, chord: float) -> float:
    """
    Smaller area cut from a circle of the given radius by a chord

    g(l) = r^2 (2 asin(l / 2r) - sin(2 asin(l / 2r))) / 2
    """
    if radius <= 0.0:
        raise DomainError(f"radius must be positive, got {radius}")
    if chord < 0.0 or chord > 2.0 * radius * (1.0 + 1e-15):
        raise DomainError(f"chord length {chord} outside [0, {2.0 * radius}]")
    half_angle = math.asin(min(1.0, chord / (2.0 * radius)))
    return float(0.5 * radius * radius * x_minus_sin(2.0 * half_angle))


def corner_max_radius(notch: NotchParam | float, corner: Corner) -> float:
    """Largest quarter-disk radius at a convex corner that stays inside Q_a"""
    a = NotchParam.of(notch).a
    match corner:
        case Corner.TOP_RIGHT:
            # must not swallow the non-convex corner (a, a)
            return min(1.0, math.sqrt(2.0) * (1.0 - a))
        case Corner.BOTTOM_RIGHT | Corner.TOP_LEFT:
            return 1.0 - a
        case Corner.NOTCH_BOTTOM | Corner.NOTCH_LEFT:
            # at a = 0 both collapse onto the square corner (0, 0)
            return min(a, 1.0 - a) if a > 0.0 else 1.0
    raise DomainError(f"unknown corner {corner}")


def full_circle_max_radius(notch: NotchParam | float) -> float:
    """Largest inscribed disk, pushed into the (1, 1) corner"""
    a = NotchParam.of(notch).a
    root2 = math.sqrt(2.0)
    return min(0.5, root2 * (1.0 - a) / (1.0 + root2))


def semicircle_fits(notch: NotchParam | float, radius: float) -> bool:
    """Half disk on a unit wall, centred at distance r from the (1, 1) corner"""
    a = NotchParam.of(notch).a
    if radius > 0.5 + FEASIBILITY_SLACK:
        return False
    dx = max(0.0, 1.0 - radius - a)
    return math.hypot(dx, 1.0 - a) >= radius - FEASIBILITY_SLACK


def _area_perimeter(notch: NotchParam, region: Any) -> tuple[float, float]:
    a = notch.a
    match region:
        case QuarterDisk(radius=r):
            return math.pi * r * r / 4.0, math.pi * r / 2.0
        case UnitChordRegion(height=h):
            return h, 1.0
        case ShortChordRegion(height=h):
            return notch.short_side * h, notch.short_side
        case ArcRegion(theta=theta):
            return (
                float(s4_area_kernel(a, theta)),
                float(s4_perimeter_kernel(a, theta)),
            )
        case OracleOnlyRegion(kind=RegionKind.FULL_CIRCLE, radius=r):
            return math.pi * r * r, 2.0 * math.pi * r
        case OracleOnlyRegion(kind=RegionKind.SEMICIRCLE, radius=r):
            return math.pi * r * r / 2.0, math.pi * r
        case OracleOnlyRegion(kind=RegionKind.THREE_QUARTER_CIRCLE, radius=r):
            return 3.0 * math.pi * r * r / 4.0, 1.5 * math.pi * r
        case OracleOnlyRegion(kind=RegionKind.NOTCH_QUARTER_CIRCLE, radius=r):
            return math.pi * r * r / 4.0 - a * a, math.pi * r / 2.0
        case UnionRegion(parts=parts):
            pairs = [_area_perimeter(notch, part) for part in parts]
            return sum(p[0] for p in pairs), sum(p[1] for p in pairs)
    raise DomainError(f"unsupported region {region!r}")


def feasible(
    notch: NotchParam | float,
    region: CandidateRegion,
    *,
    theta_max: float | None = None,
) -> bool:
    """True iff the region's parameters place it inside Q_a"""
    notch = NotchParam.of(notch)
    a = notch.a
    slack = FEASIBILITY_SLACK
    match region:
        case QuarterDisk(radius=r, corner=corner):
            return r <= corner_max_radius(notch, corner) + slack
        case UnitChordRegion(height=h):
            return h <= notch.short_side + slack
        case ShortChordRegion(height=h):
            return a > 0.0 and h <= a + slack
        case ArcRegion(theta=theta):
            try:
                _check_theta(notch, theta, theta_max)
            except DomainError:
                return False
            return True
        case OracleOnlyRegion(kind=RegionKind.FULL_CIRCLE, radius=r):
            return r <= full_circle_max_radius(notch) + slack
        case OracleOnlyRegion(kind=RegionKind.SEMICIRCLE, radius=r):
            return semicircle_fits(notch, r)
        case OracleOnlyRegion(kind=RegionKind.THREE_QUARTER_CIRCLE, radius=r):
            return a > 0.0 and r <= min(a, 1.0 - a) + slack
        case OracleOnlyRegion(kind=RegionKind.NOTCH_QUARTER_CIRCLE, radius=r):
            # positive enclosed area once the notch is subtracted
            return a > 0.0 and 2.0 * a / math.sqrt(math.pi) < r <= 1.0 + slack
        case UnionRegion(parts=parts):
            if not all(feasible(notch, p, theta_max=theta_max) for p in parts):
                return False
            total = sum(_area_perimeter(notch, p)[0] for p in parts)
            return total <= notch.area + slack
    return False


def region_area_perimeter(
    notch: NotchParam | float,
    region: CandidateRegion,
    *,
    theta_max: float | None = None,
) -> tuple[float, float]:
    """
    Exact (area, relative perimeter) of a candidate region

    Raises:
        InfeasibleRegionError: the region does not fit inside Q_a
    """
    notch = NotchParam.of(notch)
    if not feasible(notch, region, theta_max=theta_max):
        raise InfeasibleRegionError(f"{region!r} does not fit in Q_a with a={notch.a}")
    return _area_perimeter(notch, region)


def area_admits(notch: NotchParam | float, kind: RegionKind, t: float) -> bool:
    """Whether a region of the given profile kind exists with area t"""
    notch = NotchParam.of(notch)
    a = notch.a
    slack = FEASIBILITY_SLACK
    if t <= 0.0:
        return False
    match kind:
        case RegionKind.S1:
            return t <= min(math.pi / 4.0, 0.5 * math.pi * (1.0 - a) ** 2) + slack
        case RegionKind.S2:
            return t <= notch.short_side + slack
        case RegionKind.S3:
            return a > 0.0 and t <= notch.s4_min_area + slack
        case RegionKind.S4:
            return notch.s4_min_area - slack <= t <= notch.half_area + slack
    raise DomainError(f"area_admits is defined for S1..S4, got {kind}")
