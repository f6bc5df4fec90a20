"""
Request / response models
-------------------------
Pydantic bodies shared by the routers. Elements, trees and points travel in
their text syntax (see forest_skein.syntax), e.g. "[b(I,I) | id | a(I,I)]".
"""

from typing import List, Literal, Optional

from pydantic import BaseModel, Field


class ElementsIn(BaseModel):
    n: int = Field(..., ge=3, description="index of F_n")
    elements: List[str] = Field(..., min_length=1)
    type: Optional[Literal["F", "T", "V"]] = None


class ElementOut(BaseModel):
    n: int
    element: str
    type: str


class VerdictOut(BaseModel):
    n: int
    result: bool
    witness: Optional[str] = None


class EvalIn(BaseModel):
    n: int = Field(..., ge=3)
    element: str
    point: str
    type: Optional[Literal["F", "T", "V"]] = None


class PieceOut(BaseModel):
    x0: str
    x1: str
    y0: str
    y1: str
    slope_log2: int


class GraphOut(BaseModel):
    n: int
    depth: int
    pieces: List[PieceOut]
    singular: List[List[str]]
