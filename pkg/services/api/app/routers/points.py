"""
Points Router
-------------
The canonical action on rational points u(p), and germ classification of
circle points, and germs of an element at the points it fixes.
"""

from fractions import Fraction

from fastapi import APIRouter, HTTPException, Query

from app.routers.common import library_errors, parse_elements
from app.schemas import EvalIn
from forest_skein.dynamics import canonical_action, circle_germ, germ_at, germ_classify
from forest_skein.points import sigma_circle
from forest_skein.syntax import parse_point

router = APIRouter(prefix="/points", tags=["points"])


@router.post("/eval")
def post_eval(body: EvalIn):
    """Image of a point, with both points also placed on the circle."""
    (g,) = parse_elements(body.n, [body.element], body.type)
    with library_errors():
        x = parse_point(body.point)
        y = canonical_action(g, x)
    return {"n": body.n, "point": str(x), "image": str(y), "circle": [str(sigma_circle(x)), str(sigma_circle(y))]}


@router.get("/classify")
def get_classify(at: str = Query(..., description="a point u(p) or a rational p/q")):
    with library_errors():
        if "(" in at:
            return {"at": at, "germ": germ_classify(parse_point(at))}
    try:
        q = Fraction(at)
    except (ValueError, ZeroDivisionError):
        raise HTTPException(status_code=400, detail="at must be u(p) or p/q")
    return {"at": at, "germ": germ_classify(q)}


@router.post("/germ")
def post_germ(body: EvalIn):
    """Germs of an element at a fixed point u(p), or at both sides of a fixed
    circle point p/q."""
    (g,) = parse_elements(body.n, [body.element], body.type)
    with library_errors():
        if "(" in body.point:
            germs = (germ_at(g, parse_point(body.point)),)
        else:
            try:
                q = Fraction(body.point)
            except (ValueError, ZeroDivisionError):
                raise HTTPException(status_code=400, detail="point must be u(p) or p/q")
            germs = circle_germ(g, q)
    return {"n": body.n, "germs": [{"point": str(x.point), "value": str(x.value)} for x in germs]}
