"""
Router helpers
--------------
Parse request text into library values and translate library errors into
HTTP 400 responses.
"""

from contextlib import contextmanager
from typing import Iterator, List, Optional

from fastapi import HTTPException

from forest_skein.errors import FsgError
from forest_skein.groups import GroupElement
from forest_skein.skein import SkeinContext
from forest_skein.syntax import parse_element


@contextmanager
def library_errors() -> Iterator[None]:
    """Any FsgError inside the block becomes a 400 with the message as detail."""
    try:
        yield
    except FsgError as exc:
        raise HTTPException(status_code=400, detail=f"{type(exc).__name__}: {exc}")


def parse_elements(n: int, texts: List[str], type_tag: Optional[str] = None) -> List[GroupElement]:
    with library_errors():
        ctx = SkeinContext(n)
        return [parse_element(t, ctx, type_tag) for t in texts]


def need(elements: List[GroupElement], k: int) -> List[GroupElement]:
    if len(elements) < k:
        raise HTTPException(status_code=400, detail=f"expected {k} element(s), got {len(elements)}")
    return elements[:k]
