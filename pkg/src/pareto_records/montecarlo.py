"""Bulk Monte Carlo estimation of generator counts at fixed observation time.

Estimates E[gamma after n i.i.d. uniform observations] by simulating many
independent runs.  Each run only needs the set of current records (the maxima
of the point cloud) and the generator count they induce, so the per-run work
is a maxima sweep plus, where no closed-form law applies, an incremental
generator rebuild:

* d = 1: gamma is identically 1.
* d = 2: gamma = rho + 1; maxima are counted by a vectorized running-maximum
  sweep over runs batched in one array.
* d = 3: gamma = 2*rho + 1; maxima are counted per run with a sorted-by-x1
  sweep over a 2-d staircase (bisect on parallel lists).
* d >= 4: no law exists; the maxima are collected the same way (linear scan
  against the projected staircase) and the generator count is rebuilt by
  inserting them in decreasing-x1 order with the survivor-split update,
  vectorized over numpy rows.  The rebuild is equivalence-tested against
  :func:`pareto_records.generators.update_efficient`.

The d = 2 and d = 3 laws are theorems about any tie-free incomparable record
set and are verified independently elsewhere; leaning on them here buys the
throughput needed for 1e5-run studies.  Everything is deterministic given
(d, n, runs, seed): batch sizes are fixed constants and the bit generator is
seeded once.
"""

from __future__ import annotations

from bisect import bisect_right

import numpy as np

_BATCH_2D = 4096


def _gamma_from_sorted_maxima(rows: list[list[float]]) -> int:
    """Generator count for records given as rows sorted by decreasing x1.

    Inserting records in decreasing-x1 order means no record ever gets
    broken, every killed generator has first coordinate 0, and generators
    born with a positive first coordinate can never be killed later (their
    first coordinate exceeds every future record's).  It therefore suffices
    to maintain the "wall" of first-coordinate-zero generators, projected to
    the remaining d-1 axes, plus a count of the immortal rest:

    * generators killed by the record are the wall members strictly below
      its projection (at least one exists, since only wall members can
      cover the new record);
    * each killed member, lifted to the record's first coordinate, becomes
      an immortal generator (no minima extraction: those lifts are the
      killed antichain shifted, still an antichain);
    * lifting the killed members in a remaining axis k keeps them on the
      wall; within one k the minima are found by comparing the killed
      members with axis k ignored, and lifts for different k never dominate
      each other, nor do survivors and fresh minima.
    """
    d = len(rows[0])
    wall: list[tuple[float, ...]] = [(0.0,) * (d - 1)]
    immortal = 0
    for row in rows:
        q = tuple(row[1:])
        killed = []
        survivors = []
        for y in wall:
            below = True
            for a, b in zip(y, q):
                if a >= b:
                    below = False
                    break
            (killed if below else survivors).append(y)
        immortal += len(killed)
        if not killed:
            raise AssertionError("record not covered by the wall; ties upstream?")
        for k in range(d - 1):
            qk = q[k]
            mins: list[tuple[float, ...]] = []
            for y in killed:
                dominated = False
                keep = []
                for m in mins:
                    m_le = True
                    y_le = True
                    for j in range(d - 1):
                        if j == k:
                            continue
                        if m[j] > y[j]:
                            m_le = False
                            if not y_le:
                                break
                        elif y[j] > m[j]:
                            y_le = False
                            if not m_le:
                                break
                    if m_le:
                        dominated = True
                        break
                    if not y_le:
                        keep.append(m)
                if not dominated:
                    keep.append(y)
                    mins = keep
            survivors.extend(y[:k] + (qk,) + y[k + 1 :] for y in mins)
        wall = survivors
    return immortal + len(wall)


def _maxima_count_2d(points: np.ndarray) -> np.ndarray:
    """Number of maxima per run for a (runs, n, 2) batch."""
    order = np.argsort(-points[:, :, 0], axis=1, kind="stable")
    x2 = np.take_along_axis(points[:, :, 1], order, axis=1)
    cummax = np.maximum.accumulate(x2, axis=1)
    return 1 + (x2[:, 1:] > cummax[:, :-1]).sum(axis=1)


def _maxima_count_3d(points: np.ndarray) -> int:
    """Number of maxima of one (n, 3) cloud via a 2-d staircase sweep."""
    order = np.argsort(-points[:, 0], kind="stable")
    rows = points[order, 1:].tolist()
    xs: list[float] = []  # staircase second coordinates, increasing
    ys: list[float] = []  # matching third coordinates, decreasing
    count = 0
    for a, b in rows:
        i = bisect_right(xs, a)
        if i < len(xs) and ys[i] > b:
            continue  # strictly dominated by an earlier point
        count += 1
        j = i
        while j > 0 and ys[j - 1] < b:
            j -= 1
        del xs[j:i]
        del ys[j:i]
        xs.insert(j, a)
        ys.insert(j, b)
    return count


def _maxima_rows_sorted(points: np.ndarray) -> list[list[float]]:
    """Maxima of one (n, d) cloud, d >= 3, sorted by decreasing x1.

    Sweeps in decreasing x1 and keeps the staircase of (d-1)-dimensional
    projections of everything seen so far; a point is a maximum iff its
    projection is not strictly dominated by the staircase.
    """
    order = np.argsort(-points[:, 0], kind="stable")
    rows = points[order].tolist()
    stairs: list[list[float]] = []
    maxima: list[list[float]] = []
    for row in rows:
        proj = row[1:]
        dominated = False
        for s in stairs:
            hit = True
            for a, b in zip(s, proj):
                if a <= b:
                    hit = False
                    break
            if hit:
                dominated = True
                break
        if dominated:
            continue
        maxima.append(row)
        stairs = [
            s
            for s in stairs
            if not all(a < b for a, b in zip(s, proj))
        ]
        stairs.append(proj)
    return maxima


def generator_count_samples(
    d: int, n: int, runs: int, seed: int
) -> np.ndarray:
    """Per-run generator counts after n observations, as an int array."""
    if d < 1 or n < 0 or runs < 1:
        raise ValueError("need d >= 1, n >= 0, runs >= 1")
    if n == 0:
        return np.ones(runs, dtype=np.int64)
    if d == 1:
        return np.ones(runs, dtype=np.int64)
    rng = np.random.default_rng(seed)
    if d == 2:
        out = np.empty(runs, dtype=np.int64)
        done = 0
        while done < runs:
            b = min(_BATCH_2D, runs - done)
            pts = rng.random((b, n, 2))
            out[done : done + b] = _maxima_count_2d(pts) + 1
            done += b
        return out
    counts = np.empty(runs, dtype=np.int64)
    chunk = max(1, 262144 // (n * d))
    done = 0
    while done < runs:
        b = min(chunk, runs - done)
        pts = rng.random((b, n, d))
        for i in range(b):
            if d == 3:
                counts[done + i] = 2 * _maxima_count_3d(pts[i]) + 1
            else:
                counts[done + i] = _gamma_from_sorted_maxima(
                    _maxima_rows_sorted(pts[i])
                )
        done += b
    return counts


def mean_generator_count(
    d: int, n: int, runs: int, seed: int
) -> tuple[float, float]:
    """Monte Carlo mean and standard error of the generator count."""
    samples = generator_count_samples(d, n, runs, seed)
    mean = float(samples.mean())
    se = float(samples.std(ddof=1) / np.sqrt(runs)) if runs > 1 else 0.0
    return mean, se


def interior_count_samples_2d(n: int, runs: int, seed: int) -> np.ndarray:
    """Per-run interior-generator counts at d = 2 (equal to rho - 1).

    The interior generators of a bivariate staircase are its inner corners,
    one fewer than the records.
    """
    if n < 1 or runs < 1:
        raise ValueError("need n >= 1, runs >= 1")
    rng = np.random.default_rng(seed)
    out = np.empty(runs, dtype=np.int64)
    done = 0
    while done < runs:
        b = min(_BATCH_2D, runs - done)
        pts = rng.random((b, n, 2))
        out[done : done + b] = _maxima_count_2d(pts) - 1
        done += b
    return out
