import math

import numpy as np
from fastapi import APIRouter, HTTPException

from app.config import get_settings
from .helpers import harmonic_helper
from .helpers.geometry_helper import Point
from .helpers.harmonic_helper import Ratio
from .responses import geometry_errors

router = APIRouter(
    #router tags
    prefix="/harmonic_module",
    #documentation tags
    tags=['Harmonic Module']
)

MAX_PROFILE_COUNT = 10_000


@router.get('/conjugates/')
def conjugates(ax: float, ay: float, bx: float, by: float, ratio: str):
    """Internal and external points dividing AB in the given ratio."""
    tol = get_settings().tolerance()
    with geometry_errors():
        a, b = Point(ax, ay), Point(bx, by)
        parsed = Ratio.parse(ratio)
        pair = harmonic_helper.harmonic_conjugates(a, b, parsed, tol)
        pb, qb = harmonic_helper.conjugate_segment_ratios(a, b, parsed, tol)
        signed = (
            harmonic_helper.signed_division_ratio(a, b, pair.internal, tol),
            harmonic_helper.signed_division_ratio(a, b, pair.external, tol),
        )
    return {
        "ratio": str(parsed),
        "internal": pair.internal.model_dump(),
        "external": pair.external.model_dump(),
        "PB": pb,
        "QB": qb,
        "signed_internal": signed[0],
        "signed_external": signed[1],
    }


@router.get('/ratio_at/')
def ratio_at(ax: float, ay: float, bx: float, by: float, x: float, y: float):
    tol = get_settings().tolerance()
    with geometry_errors():
        value = harmonic_helper.ratio_at(Point(ax, ay), Point(bx, by), Point(x, y), tol)
    return {"ratio": value}


@router.get('/profile/')
def profile(ax: float, ay: float, bx: float, by: float, start: float = -2.0, stop: float = 3.0, count: int = 51):
    """XA/XB along line AB; offsets are in AB units from A, null marks the pole at B."""
    if count < 2 or count > MAX_PROFILE_COUNT:
        raise HTTPException(status_code=400, detail=f"count must lie in [2, {MAX_PROFILE_COUNT}], got {count}")
    if not (math.isfinite(start) and math.isfinite(stop)):
        raise HTTPException(status_code=400, detail="start and stop must be finite")
    tol = get_settings().tolerance()
    offsets = np.linspace(start, stop, count)
    with geometry_errors():
        values = harmonic_helper.ratio_profile(Point(ax, ay), Point(bx, by), offsets, tol)
    return {
        "offsets": offsets.tolist(),
        "ratios": [None if math.isinf(v) else float(v) for v in values],
    }
