"""Deterministic bounds and attainable counts for generators vs records.

With rho pairwise-incomparable, tie-free current records in dimension d the
generator count gamma always satisfies

    (d - 1) * rho + 1  <=  gamma  <=  C(rho + d - 1, d - 1),

the lower bound being achieved for every rho simultaneously by a single
record sequence (:func:`lower_bound_witness`).  Low dimensions collapse to
exact laws: gamma = 1 (d = 1), rho + 1 (d = 2), 2*rho + 1 (d = 3).  For
rho = 2 the attainable gamma values are known exactly in every dimension.
"""

from __future__ import annotations

from math import comb

from ..geometry import Point


def bounds(rho: int, d: int) -> tuple[int, int]:
    """(lower, upper) bounds on the generator count at rho current records."""
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    return (d - 1) * rho + 1, comb(rho + d - 1, d - 1)


def attainable_gammas_two_records(d: int) -> set[int]:
    """Exact set of generator counts attainable with rho = 2 records.

    {d + a*(d - a) : 1 <= a <= floor(d/2)}, where a counts the coordinates
    in which one record exceeds the other.
    """
    if d < 2:
        raise ValueError(f"two incomparable records require d >= 2, got {d}")
    return {d + a * (d - a) for a in range(1, d // 2 + 1)}


def lower_bound_witness(d: int, rho: int) -> list[Point]:
    """Record sequence achieving gamma = (d-1)*rho + 1 at every prefix.

    First coordinates decrease strictly while all other coordinates increase
    strictly, so the points are pairwise incomparable and tie-free per
    coordinate.  Feeding them to any maintainer in order yields exactly the
    lower bound after each insertion.
    """
    if d < 1:
        raise ValueError(f"dimension must be >= 1, got {d}")
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    if d == 1 and rho > 1:
        raise ValueError("dimension 1 admits at most one current record")
    denom = float((rho + 2) * (d + 1))
    witness = []
    for i in range(1, rho + 1):
        coords = [((rho + 1 - i) * (d + 1) + 1) / denom]
        coords.extend((i * (d + 1) + j) / denom for j in range(1, d))
        witness.append(tuple(coords))
    return witness
