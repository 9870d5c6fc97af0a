"""Circle formation for oblivious anonymous robots via Lyndon-word leader election."""

from .geometry import Circle, Point, SimilarityFrame
from .protocol import Phase, classify, decide
from .simulator import SimParams, Trace, run
from .words import Tolerance

__all__ = ["Circle", "Point", "SimilarityFrame", "Phase", "classify", "decide",
           "SimParams", "Trace", "run", "Tolerance"]
