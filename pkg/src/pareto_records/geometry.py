"""Dominance relations and orthant primitives on the unit hypercube.

A point is a plain tuple of floats in [0, 1)^d; the dimension is the tuple
length and must agree between arguments.  All comparisons are exact 64-bit
float comparisons.  Coordinate ties between distinct points are assumed
absent -- for continuously sampled coordinates they occur with probability
zero -- so no tie-breaking rule is defined.  Deterministic fixtures must be
built tie-free; :func:`assert_tie_free` checks that instead of papering over
violations.

Everything here is a pure function over immutable values and is safe to call
concurrently.
"""

from __future__ import annotations

from typing import Iterable, Sequence

Point = tuple[float, ...]


class DimensionMismatchError(ValueError):
    """Operands live in different dimensions."""


class CoordinateTieError(ValueError):
    """A deterministic fixture violates the no-ties precondition."""


def _same_dim(x: Sequence[float], y: Sequence[float]) -> None:
    if len(x) != len(y):
        raise DimensionMismatchError(f"dimension mismatch: {len(x)} vs {len(y)}")


def origin(dim: int) -> Point:
    """All-zeros point; the single generator of the initial region."""
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    return (0.0,) * dim


def validate_point(x: Sequence[float], dim: int | None = None) -> Point:
    """Return ``x`` as a tuple after checking every coordinate is in [0, 1)."""
    p = tuple(float(c) for c in x)
    if not p:
        raise ValueError("points must have dimension >= 1")
    if dim is not None and len(p) != dim:
        raise DimensionMismatchError(f"expected dimension {dim}, got {len(p)}")
    for c in p:
        if not 0.0 <= c < 1.0:
            raise ValueError(f"coordinate {c!r} outside [0, 1)")
    return p


def strictly_dominates(x: Point, y: Point) -> bool:
    """True iff x_j < y_j for every coordinate j (x lies strictly below y)."""
    _same_dim(x, y)
    return all(a < b for a, b in zip(x, y))


def weakly_dominates(x: Point, y: Point) -> bool:
    """True iff x_j <= y_j for every coordinate j."""
    _same_dim(x, y)
    return all(a <= b for a, b in zip(x, y))


def join(x: Point, y: Point) -> Point:
    """Coordinatewise maximum.

    The closed positive orthants satisfy O+_x `intersect` O+_y = O+_{join(x,y)},
    which is what makes the generator updates work.  Coordinates of the result
    are copied bit-for-bit from one of the inputs, never recomputed.
    """
    _same_dim(x, y)
    return tuple(a if a >= b else b for a, b in zip(x, y))


def orthant_probability(g: Point) -> float:
    """P(X in O+_g) = prod_j (1 - g_j) for X uniform on [0, 1)^d.

    Strictly positive for g in [0, 1)^d.  The multiplication order is fixed
    (left to right) so repeated evaluation is bit-reproducible.
    """
    p = 1.0
    for c in g:
        p *= 1.0 - c
    return p


def in_record_setting_region(x: Point, records: Iterable[Point]) -> bool:
    """True iff ``x`` is strictly dominated by no current record.

    The record-setting region is exactly the set of points where the next
    record can land.  ``records`` should be pairwise incomparable (not
    enforced); with an empty record list the region is the whole cube.
    """
    for r in records:
        _same_dim(x, r)
        if all(a < b for a, b in zip(x, r)):
            return False
    return True


def covered_by_generators(x: Point, generators: Iterable[Point]) -> bool:
    """True iff some generator g satisfies g <= x coordinatewise.

    With ``generators`` the minima of the record-setting region this is an
    O(gamma * d) membership test for the region, dual to
    :func:`in_record_setting_region` over the records.  ``generators`` may be
    any iterable of points, in particular a ``GeneratorSet``.
    """
    for g in generators:
        _same_dim(g, x)
        if all(a <= b for a, b in zip(g, x)):
            return True
    return False


def assert_tie_free(points: Sequence[Point]) -> None:
    """Raise :class:`CoordinateTieError` if two points share a coordinate value.

    Ties are checked per coordinate axis (the same value appearing in two
    different axes is harmless).  Zero coordinates are exempt: injected
    lower-dimensional points legitimately share zeros.
    """
    if not points:
        return
    dim = len(points[0])
    for p in points:
        _same_dim(points[0], p)
    for j in range(dim):
        seen: set[float] = set()
        for p in points:
            c = p[j]
            if c == 0.0:
                continue
            if c in seen:
                raise CoordinateTieError(
                    f"coordinate tie in axis {j}: value {c!r} repeats"
                )
            seen.add(c)
