"""Words over an ordered alphabet of real letters.

Letters are floats compared with an explicit angular slack, so two gap angles
measured from slightly different coordinate frames still compare equal. All
rotation indices are 1-based: ``rotation(w, 1) == w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import IntEnum
from typing import Sequence, Tuple

from .errors import InvalidLetterError, PreconditionError

Word = Tuple[float, ...]


@dataclass(frozen=True)
class Tolerance:
    """Numeric slack used by every predicate.

    ``eps_angle`` is the letter-equality slack (radians), ``eps_pos`` the
    coincidence slack for positions, ``eps_gon`` the per-gap slack used to
    declare a configuration a regular polygon.
    """

    eps_angle: float = 1e-9
    eps_pos: float = 1e-9
    eps_gon: float = 1e-6

    def __post_init__(self):
        for name in ("eps_angle", "eps_pos", "eps_gon"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")


DEFAULT_TOL = Tolerance()


class Order(IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def compare_letters(a: float, b: float, tol: Tolerance = DEFAULT_TOL) -> Order:
    if not (math.isfinite(a) and math.isfinite(b)):
        raise InvalidLetterError(f"letters must be finite, got {a!r}, {b!r}")
    if abs(a - b) <= tol.eps_angle:
        return Order.EQ
    return Order.LT if a < b else Order.GT


def lex_compare(u: Sequence[float], v: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> Order:
    """Lexicographic order; a proper prefix is smaller than its extensions."""
    for a, b in zip(u, v):
        c = compare_letters(a, b, tol)
        if c is not Order.EQ:
            return c
    if len(u) == len(v):
        return Order.EQ
    return Order.LT if len(u) < len(v) else Order.GT


def rotation(w: Sequence[float], j: int) -> Word:
    """The j-th rotation ``a_j ... a_l a_1 ... a_{j-1}`` (1-based)."""
    w = tuple(w)
    if not 1 <= j <= max(1, len(w)):
        raise IndexError(f"rotation index {j} out of range 1..{max(1, len(w))}")
    return w[j - 1:] + w[:j - 1]


def power(w: Sequence[float], k: int) -> Word:
    if k < 0:
        raise ValueError(f"power exponent must be >= 0, got {k}")
    return tuple(w) * k


def _require_nonempty(w: Sequence[float]) -> None:
    if len(w) == 0:
        raise PreconditionError("operation requires a nonempty word")


def is_primitive(w: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> bool:
    _require_nonempty(w)
    n = len(w)
    for d in range(1, n):
        if n % d:
            continue
        prefix = w[:d]
        if lex_compare(power(prefix, n // d), w, tol) is Order.EQ:
            return False
    return True


def is_minimal(w: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> bool:
    _require_nonempty(w)
    return all(lex_compare(w, rotation(w, j), tol) is not Order.GT
               for j in range(1, len(w) + 1))


def minimality_witness(w: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> int | None:
    """Smallest j with ``R_j(w)`` strictly below ``w``, or None if w is minimal."""
    _require_nonempty(w)
    for j in range(2, len(w) + 1):
        if lex_compare(rotation(w, j), w, tol) is Order.LT:
            return j
    return None


def is_lyndon(w: Sequence[float], tol: Tolerance = DEFAULT_TOL) -> bool:
    n = len(w)
    if n == 0:
        return False
    # compare in place against each rotation, bailing out on the first failure
    for j in range(1, n):
        for k in range(n):
            c = compare_letters(w[k], w[(k + j) % n], tol)
            if c is Order.LT:
                break
            if c is Order.GT:
                return False
        else:
            return False  # equal to a nontrivial rotation: not primitive
    return True
