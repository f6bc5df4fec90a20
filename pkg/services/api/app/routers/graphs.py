"""
Graphs Router
-------------
Piecewise-affine graphs of type F / T elements acting on the circle, as JSON
rows (exact `p/q` strings), CSV or SVG.
"""

from fastapi import APIRouter, Query
from fastapi.responses import PlainTextResponse, Response

from app.routers.common import library_errors, parse_elements
from app.schemas import GraphOut, PieceOut
from forest_skein import config
from forest_skein.dynamics import render
from forest_skein.graphs import format_fraction, graph_csv, graph_svg

router = APIRouter(prefix="/graphs", tags=["graphs"])


def _render(n: int, element: str, depth: int):
    (g,) = parse_elements(n, [element])
    with library_errors():
        return render(g, depth)


@router.get("/pieces", response_model=GraphOut)
def get_pieces(
    n: int = Query(..., ge=3),
    element: str = Query(...),
    depth: int = Query(config.DEFAULT_DEPTH, ge=1, le=24),
):
    graph = _render(n, element, depth)
    return GraphOut(
        n=n,
        depth=depth,
        pieces=[
            PieceOut(
                x0=format_fraction(p.x0),
                x1=format_fraction(p.x1),
                y0=format_fraction(p.y0),
                y1=format_fraction(p.y1),
                slope_log2=p.slope_log2,
            )
            for p in graph.pieces
        ],
        singular=[[format_fraction(a), format_fraction(b)] for a, b in graph.singular],
    )


@router.get("/csv", response_class=PlainTextResponse)
def get_csv(n: int = Query(..., ge=3), element: str = Query(...), depth: int = Query(config.DEFAULT_DEPTH, ge=1, le=24)):
    return PlainTextResponse(graph_csv(_render(n, element, depth)), media_type="text/csv")


@router.get("/svg")
def get_svg(n: int = Query(..., ge=3), element: str = Query(...), depth: int = Query(config.DEFAULT_DEPTH, ge=1, le=24)):
    return Response(graph_svg(_render(n, element, depth)), media_type="image/svg+xml")
