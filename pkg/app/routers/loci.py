from fastapi import APIRouter, HTTPException

from app.config import get_settings
from .helpers import loci_helper
from .helpers.geometry_helper import Point, dist
from .helpers.harmonic_helper import Ratio
from .helpers.loci_helper import ApolloniusSpec, DiffSquaresSpec, SumSquaresSpec
from .responses import geometry_errors

router = APIRouter(
    #router tags
    prefix="/loci_module",
    #documentation tags
    tags=['Loci Module']
)


@router.get('/apollonius/')
def apollonius(ax: float, ay: float, bx: float, by: float, ratio: str):
    """Apollonius circle (or mediatrix) of the points X with XA/XB = ratio."""
    tol = get_settings().tolerance()
    with geometry_errors():
        result = loci_helper.apollonius_locus(Point(ax, ay), Point(bx, by), Ratio.parse(ratio), tol)
    return result.model_dump()


@router.get('/sumsq/')
def sumsq(ax: float, ay: float, bx: float, by: float, k2: float):
    tol = get_settings().tolerance()
    with geometry_errors():
        locus = loci_helper.sum_squares_locus(Point(ax, ay), Point(bx, by), k2, tol)
    return locus.model_dump()


@router.get('/diffsq/')
def diffsq(ax: float, ay: float, bx: float, by: float, c: float):
    tol = get_settings().tolerance()
    with geometry_errors():
        locus = loci_helper.diff_squares_locus(Point(ax, ay), Point(bx, by), c, tol)
    return locus.model_dump()


@router.get('/residual/')
def residual(
    kind: str,
    ax: float,
    ay: float,
    bx: float,
    by: float,
    x: float,
    y: float,
    ratio: str | None = None,
    k2: float | None = None,
    c: float | None = None,
):
    """Membership residual of X for one locus; zero on the locus."""
    tol = get_settings().tolerance()
    with geometry_errors():
        a, b, point = Point(ax, ay), Point(bx, by), Point(x, y)
        if kind == "apollonius" and ratio is not None:
            spec = ApolloniusSpec(ratio=Ratio.parse(ratio))
        elif kind == "sumsq" and k2 is not None:
            spec = SumSquaresSpec(k2=k2)
        elif kind == "diffsq" and c is not None:
            spec = DiffSquaresSpec(c=c)
        else:
            raise HTTPException(status_code=400, detail=f"locus kind {kind!r} needs its parameter (ratio, k2 or c)")
        value = loci_helper.membership_residual(spec, a, b, point, tol)
        on_locus = loci_helper.locus_contains(loci_helper.construct(spec, a, b, tol), point, tol, dist(a, b))
    return {"kind": kind, "residual": value, "on_locus": on_locus}
