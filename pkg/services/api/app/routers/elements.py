"""
Elements Router
---------------
Group arithmetic and invariants on [t | π | s] elements.

Conventions
-----------
- Bodies carry `n`, a list of element strings and an optional type tag
  (F, T or V; default is the smallest tag the permutation allows).
- Library errors (parse, domain, rewriting) come back as 400 with the message.
"""

import logging

from fastapi import APIRouter

from app.routers.common import library_errors, need, parse_elements
from app.schemas import ElementOut, ElementsIn, VerdictOut
from forest_skein.groups import (
    abelianise,
    c_bar,
    equals,
    germ_at_zero,
    identity_witness,
    inverse,
    multiply,
    seminormal_form,
)
from forest_skein.syntax import format_element

logger = logging.getLogger("api")

router = APIRouter(prefix="/elements", tags=["elements"])


def _out(g) -> ElementOut:
    return ElementOut(n=g.n, element=format_element(g), type=g.type_tag)


@router.post("/multiply", response_model=ElementOut)
def post_multiply(body: ElementsIn):
    """Product of the listed elements, left to right."""
    items = parse_elements(body.n, body.elements, body.type)
    with library_errors():
        out = items[0]
        for g in items[1:]:
            out = multiply(out, g)
    return _out(out)


@router.post("/inverse", response_model=ElementOut)
def post_inverse(body: ElementsIn):
    (g,) = need(parse_elements(body.n, body.elements, body.type), 1)
    return _out(inverse(g))


@router.post("/identity", response_model=VerdictOut)
def post_identity(body: ElementsIn):
    """Word problem: true when the element acts trivially; otherwise a moved point."""
    (g,) = need(parse_elements(body.n, body.elements, body.type), 1)
    with library_errors():
        witness = identity_witness(g)
    return VerdictOut(n=body.n, result=witness is None, witness=None if witness is None else str(witness))


@router.post("/equal", response_model=VerdictOut)
def post_equal(body: ElementsIn):
    x, y = need(parse_elements(body.n, body.elements, body.type), 2)
    with library_errors():
        return VerdictOut(n=body.n, result=equals(x, y))


@router.post("/abelianise")
def post_abelianise(body: ElementsIn):
    """#b(t) - #b(s) mod n, for type F and T."""
    (g,) = need(parse_elements(body.n, body.elements, body.type), 1)
    with library_errors():
        return {"n": body.n, "value": abelianise(g)}


@router.post("/cbar")
def post_cbar(body: ElementsIn):
    (g,) = need(parse_elements(body.n, body.elements, body.type), 1)
    with library_errors():
        return {"n": body.n, "plus": str(c_bar("plus", g)), "minus": str(c_bar("minus", g))}


@router.post("/germ")
def post_germ(body: ElementsIn):
    """Germ at 0 as the pair (Γ⁺ value, Γ⁻ value)."""
    (g,) = need(parse_elements(body.n, body.elements, body.type), 1)
    with library_errors():
        plus, minus = germ_at_zero(g)
    return {"n": body.n, "plus": str(plus), "minus": str(minus)}


@router.post("/seminormal")
def post_seminormal(body: ElementsIn):
    """Seminormal form plus the move traces certifying it."""
    (g,) = need(parse_elements(body.n, body.elements, body.type), 1)
    with library_errors():
        snf = seminormal_form(g)
    logger.info("seminormal: %d numerator moves", len(snf.numerator_trace))
    return {
        "n": body.n,
        "element": format_element(snf.element),
        "numerator_trace": snf.numerator_trace.lines(),
        "denominator_trace": snf.denominator_trace.lines(),
    }
