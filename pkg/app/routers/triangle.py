from fastapi import APIRouter

from app.config import get_settings
from .helpers import triangle_helper
from .helpers.errors import IdentityViolation
from .helpers.geometry_helper import Point
from .helpers.triangle_helper import Triangle, Vertex
from .responses import geometry_errors

router = APIRouter(
    #router tags
    prefix="/triangle_module",
    #documentation tags
    tags=['Triangle Module']
)


def _triangle(ax, ay, bx, by, cx, cy, tol) -> Triangle:
    return Triangle.build(Point(ax, ay), Point(bx, by), Point(cx, cy), tol)


@router.get('/metrics/')
def metrics(ax: float, ay: float, bx: float, by: float, cx: float, cy: float):
    tol = get_settings().tolerance()
    with geometry_errors():
        t = _triangle(ax, ay, bx, by, cx, cy, tol)
        result = triangle_helper.metrics(t, tol)
        per_vertex = {}
        for vertex in Vertex:
            feet = triangle_helper.bisector_feet(t, vertex, tol)
            per_vertex[vertex.value] = {
                "median_projection": triangle_helper.median_projection(t, vertex, tol),
                "bisector_interior": feet.interior.model_dump(),
                "bisector_exterior": feet.exterior.model_dump() if feet.exterior is not None else None,
            }
    return {"metrics": result.model_dump(), "vertices": per_vertex}


@router.get('/identities/')
def identities(
    ax: float, ay: float, bx: float, by: float, cx: float, cy: float, x: float | None = None, y: float | None = None
):
    """Evaluates every median and centroid identity; Leibniz only when X is given."""
    tol = get_settings().tolerance()
    with geometry_errors():
        t = _triangle(ax, ay, bx, by, cx, cy, tol)
        checks = {
            "median_sum": lambda: triangle_helper.sum_squared_medians(t, tol),
            "centroid": lambda: triangle_helper.centroid_sum_squares(t, tol),
            "circumcenter": lambda: triangle_helper.circumcenter_centroid_gap(t, tol),
        }
        if x is not None and y is not None:
            checks["leibniz"] = lambda: triangle_helper.leibniz_value(t, Point(x, y), tol)

        results = {}
        for name, check in checks.items():
            try:
                results[name] = {"value": check(), "holds": True}
            except IdentityViolation as e:
                results[name] = {"value": None, "holds": False, "detail": str(e)}
    return results
