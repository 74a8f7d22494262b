"""
HTTP router exposing constants, profile evaluation, sweeps and oracle comparisons
"""

import logging
from collections.abc import Callable
from typing import TypeVar

from fastapi import APIRouter, HTTPException, Query
from pydantic import BaseModel

from app.config import settings
from app.exceptions import IsoprofileError, SolverError
from app.services import export, oracle
from app.services import profile as profile_service
from app.services.profile import ProfilePoint
from app.services.solvers import Breakpoints, get_breakpoints

router: APIRouter = APIRouter()
logger: logging.Logger = logging.getLogger(__name__)

T = TypeVar("T")


class ConstantsResponse(BaseModel):
    theta_max: float
    t0: float
    alpha: float
    beta: float
    gamma: float


class ProfilePointResponse(BaseModel):
    a: float
    t: float
    perimeter: float
    minimizers: list[str]
    theta: float | None

    @classmethod
    def from_point(cls, point: ProfilePoint) -> "ProfilePointResponse":
        return cls(
            a=point.a,
            t=point.t,
            perimeter=point.perimeter,
            minimizers=point.minimizer_label.split("+"),
            theta=point.theta,
        )


class OracleResponse(BaseModel):
    a: float
    t: float
    oracle_min: float
    argmin: str
    profile: float
    minimizers: list[str]
    gap: float


def _breakpoints() -> Breakpoints:
    return get_breakpoints(settings.solver_config())


def _guarded(action: Callable[[], T]) -> T:
    """Run a service call, mapping library errors onto HTTP status codes"""
    try:
        return action()
    except SolverError as e:
        logger.error(f"Solver failure: {e}")
        raise HTTPException(status_code=500, detail=str(e)) from e
    except IsoprofileError as e:
        logger.warning(f"Rejected request: {e}")
        raise HTTPException(status_code=422, detail=str(e)) from e


@router.get("/constants")
def constants() -> ConstantsResponse:
    """theta_max, t0, alpha, beta and gamma"""
    bp = _guarded(_breakpoints)
    return ConstantsResponse(
        theta_max=bp.theta_max, t0=bp.t0, alpha=bp.alpha, beta=bp.beta, gamma=bp.gamma
    )


@router.get("/profile")
def profile_point(
    a: float = Query(..., description="Notch size in [0, 1)"),
    t: float = Query(..., description="Area in (0, (1 - a^2) / 2]"),
) -> ProfilePointResponse:
    """Evaluate f_a(t)"""
    point = _guarded(lambda: profile_service.f(a, t, _breakpoints()))
    return ProfilePointResponse.from_point(point)


@router.get("/profile/sweep")
def profile_sweep(
    a: float = Query(..., description="Notch size in [0, 1)"),
    n: int = Query(default=200, ge=2, le=10000),
) -> list[ProfilePointResponse]:
    """The rows `isoprofile profile` writes to CSV"""
    rows = _guarded(lambda: export.profile_rows(a, n, _breakpoints()))
    return [ProfilePointResponse.from_point(row) for row in rows]


@router.get("/oracle")
def oracle_compare(
    a: float = Query(..., description="Notch size in [0, 1)"),
    t: float = Query(..., description="Area in (0, (1 - a^2) / 2]"),
    resolution: int = Query(default=settings.oracle_resolution, ge=oracle.MIN_RESOLUTION),
) -> OracleResponse:
    """Enumerated minimum next to f_a(t)"""

    def compare() -> OracleResponse:
        bp = _breakpoints()
        point = profile_service.f(a, t, bp)
        best = oracle.oracle_min(a, t, resolution, bp.cfg)
        return OracleResponse(
            a=a,
            t=t,
            oracle_min=best.perimeter,
            argmin=str(best.region.kind),
            profile=point.perimeter,
            minimizers=point.minimizer_label.split("+"),
            gap=best.perimeter - point.perimeter,
        )

    return _guarded(compare)
