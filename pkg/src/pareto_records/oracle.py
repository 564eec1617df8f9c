"""Brute-force reconstruction of the generator set from the current records.

These routines recompute, from scratch, what the incremental maintainers in
:mod:`pareto_records.generators` track step by step, and serve as ground
truth for them:

* :func:`generators_via_partitions` enumerates every assignment of records to
  coordinates (all ``d**rho`` ordered partitions of the record index set,
  with empty cells contributing coordinate 0) and extracts the minima of the
  resulting per-coordinate cell maxima.
* :func:`interior_generators` characterizes the all-coordinates-nonzero
  generators directly: d distinct records realizing each coordinate as the
  tuple minimum, plus region membership.
* :func:`generators_via_projection` assembles the full set as the disjoint
  union, over nonempty coordinate subsets T, of the injected interior
  generators of the records projected onto T.

Desk scale only: the partition enumeration costs ``d**rho`` and refuses
inputs beyond that budget.
"""

from __future__ import annotations

from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .generators import GeneratorSet, new_generator_set
from .geometry import (
    Point,
    assert_tie_free,
    in_record_setting_region,
    origin,
)

_MAX_RHO = 12
_MAX_PARTITIONS = 50_000_000
_CHUNK = 100_000


class ResourceLimitError(RuntimeError):
    """Requested brute-force enumeration exceeds the desk-scale budget."""


class InternalConsistencyError(RuntimeError):
    """Two distinct generating tuples produced the same interior generator."""


def _as_points(records: Sequence[Point]) -> list[Point]:
    pts = [tuple(r) for r in records]
    if pts:
        d = len(pts[0])
        for p in pts:
            if len(p) != d:
                raise ValueError("records must share one dimension")
    return pts


def _np_minima_sum_order(rows: np.ndarray) -> np.ndarray:
    """Minima of distinct rows; scans in coordinate-sum order.

    A dominating point has a strictly smaller coordinate sum, so processing
    in increasing sum order can never drop a true minimum; rounding of the
    sums can at worst let a dominated row slip through, so a final exact
    pairwise pass prunes the (small) survivor set.
    """
    order = np.argsort(rows.sum(axis=1), kind="stable")
    rows = rows[order]
    mins: list[np.ndarray] = []
    arr = np.empty((0, rows.shape[1]))
    for row in rows:
        if arr.shape[0] != len(mins):
            arr = np.array(mins)
        if len(mins) and bool((arr <= row).all(axis=1).any()):
            continue
        mins.append(row)
    if not mins:
        return rows.reshape(0, rows.shape[1])
    arr = np.array(mins)
    le = (arr[:, None, :] <= arr[None, :, :]).all(axis=2)
    np.fill_diagonal(le, False)
    return arr[~le.any(axis=0)]


def generators_via_partitions(
    records: Sequence[Point], dim: int | None = None
) -> GeneratorSet:
    """Generator set as minima over all ordered partitions of the records.

    Each assignment ``k`` of record indices to coordinates yields the
    candidate point whose j-th coordinate is the maximum of coordinate j over
    the records assigned to cell j (0 if the cell is empty); the generator
    set is exactly the set of minima of these candidates.  Enumeration walks
    ``k`` in mixed-radix order, vectorized in chunks, keeping memory at the
    size of the running minima.

    ``dim`` is only needed for an empty record list.
    """
    pts = _as_points(records)
    rho = len(pts)
    if rho == 0:
        if dim is None:
            raise ValueError("dim is required when the record list is empty")
        return new_generator_set(dim)
    d = len(pts[0])
    if rho > _MAX_RHO or d**rho > _MAX_PARTITIONS:
        raise ResourceLimitError(
            f"{d}**{rho} ordered partitions exceed the enumeration budget"
        )
    assert_tie_free(pts)
    cols = np.asarray(pts, dtype=float)  # (rho, d)
    total = d**rho
    mins: np.ndarray | None = None
    for start in range(0, total, _CHUNK):
        nums = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        digits = np.empty((len(nums), rho), dtype=np.int8)
        rem = nums
        for i in range(rho):
            digits[:, i] = rem % d
            rem = rem // d
        cand = np.empty((len(nums), d))
        for j in range(d):
            cand[:, j] = np.where(digits == j, cols[:, j][None, :], 0.0).max(axis=1)
        cand = np.unique(cand, axis=0)
        stacked = cand if mins is None else np.vstack([mins, cand])
        stacked = np.unique(stacked, axis=0)
        mins = _np_minima_sum_order(stacked)
    assert mins is not None
    points = sorted(tuple(float(c) for c in row) for row in mins)
    return GeneratorSet.from_points(d, points)


def interior_generators(records: Sequence[Point]) -> set[Point]:
    """All generators with every coordinate nonzero.

    A point g is an interior generator iff there are d records with distinct
    indices i_1, ..., i_d such that g_j equals the j-th coordinate of record
    i_j and is the minimum of coordinate j over the chosen tuple, and g lies
    in the record-setting region.  Fewer than d records means no interior
    generators.  Every interior generator arises from exactly one tuple;
    a repeat is reported as an internal error rather than merged.
    """
    pts = _as_points(records)
    rho = len(pts)
    if rho == 0:
        return set()
    d = len(pts[0])
    if rho < d:
        return set()
    assert_tie_free(pts)
    found: dict[Point, tuple[int, ...]] = {}
    for tup in permutations(range(rho), d):
        ok = True
        for j in range(d):
            gj = pts[tup[j]][j]
            for ell in range(d):
                if ell != j and pts[tup[ell]][j] < gj:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        g = tuple(pts[tup[j]][j] for j in range(d))
        if not in_record_setting_region(g, pts):
            continue
        if g in found and found[g] != tup:
            raise InternalConsistencyError(
                f"interior generator {g} generated by both {found[g]} and {tup}"
            )
        found[g] = tup
    return set(found)


def _project(pts: Sequence[Point], axes: tuple[int, ...]) -> list[Point]:
    return [tuple(p[j] for j in axes) for p in pts]


def _inject(p: Point, axes: tuple[int, ...], d: int) -> Point:
    out = [0.0] * d
    for value, j in zip(p, axes):
        out[j] = value
    return tuple(out)


def generators_via_projection(
    records: Sequence[Point], dim: int | None = None
) -> GeneratorSet:
    """Generator set assembled from projections onto coordinate subsets.

    For each nonempty subset T of the coordinate axes, the generators whose
    support is exactly T are the interior generators of the records projected
    onto T, injected back with zeros elsewhere.  The union over all T (which
    is disjoint) is the full generator set; an empty record list yields the
    origin alone.
    """
    pts = _as_points(records)
    rho = len(pts)
    if rho == 0:
        if dim is None:
            raise ValueError("dim is required when the record list is empty")
        return new_generator_set(dim)
    d = len(pts[0])
    assert_tie_free(pts)
    out: list[Point] = []
    for size in range(1, d + 1):
        for axes in combinations(range(d), size):
            projected = _project(pts, axes)
            assert_tie_free(projected)
            for g in sorted(interior_generators(projected)):
                out.append(_inject(g, axes, d))
    if not out:
        # rho >= 1 always yields at least the d one-dimensional generators,
        # so an empty union signals a broken precondition upstream.
        raise InternalConsistencyError("projection union is empty for rho >= 1")
    return GeneratorSet.from_points(d, out)
