"""Maintenance of the minima ("generators") of the record-setting region.

The region not strictly dominated by any current record is a union of closed
positive orthants; its minimal points generate it.  Starting from the single
generator at the origin, inserting a new record ``r`` replaces every killed
generator ``g`` (those with ``g`` strictly below ``r``) by the joins of ``g``
with the single-coordinate lifts ``(0,..,r_k,..,0)`` and keeps the minima of
the resulting collection.

Three interchangeable strategies are provided:

* :func:`update_naive` rebuilds all ``d * gamma`` join candidates and extracts
  their minima by pairwise comparison -- the auditable quadratic reference.
* :func:`update_efficient` first splits generators into survivors and killed;
  survivors pass through untouched and only the candidates derived from
  killed generators need pairwise minima extraction, for a comparison count
  of at most ``gamma + C(d*nu, 2)`` where ``nu`` counts the killed.
* :func:`update_bivariate` exploits the d = 2 staircase structure, where the
  generators interleave the sorted records and ``gamma = rho + 1``.

``GeneratorSet`` values are immutable after construction; updates return
fresh sets, so sharing across threads is safe.  Minima extraction is the
plain O(m^2 d) pairwise scan on purpose: the comparison counts reported in
``UpdateReport`` are the audited cost model, and a cleverer skyline algorithm
would make them meaningless.

Everything here is pure order algebra -- comparisons, coordinatewise maxima,
and coordinate selection -- so it works in any monotone reparametrization of
the axes.  The default frame is the unit cube (coordinates in [0, 1), lattice
bottom 0, orthant volume prod(1 - c)); the sampler instead runs it in an
offset frame that keeps precision near the far corner (see
:mod:`pareto_records.sampler`), supplying ``bottom`` and ``volume_fn``
explicitly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .geometry import (
    DimensionMismatchError,
    Point,
    orthant_probability,
    origin,
)

# Flip on in tests / debugging: re-validates cached volume totals and set
# minimality after every update.
DEBUG_CHECKS = False

_VOLUME_DRIFT_RTOL = 1e-12


class NotInRegionError(ValueError):
    """The inserted point lies outside the current record-setting region."""


@dataclass(frozen=True)
class UpdateReport:
    """Bookkeeping for one generator-set update.

    ``comparisons`` counts pairwise dominance comparisons: one per
    generator-vs-record survivor test (efficient strategy only) plus one per
    candidate pair examined during minima extraction.  ``records_broken`` is
    filled by callers that track the record list (the update itself only sees
    generators) and stays ``None`` otherwise.
    """

    killed_generators: int
    survivor_count: int
    new_minima_count: int
    comparisons: int
    records_broken: int | None = None


@dataclass(frozen=True)
class GeneratorSet:
    """Insertion-ordered, duplicate-free minima of the record-setting region.

    ``volumes[i]`` caches ``orthant_probability(items[i])`` and
    ``total_volume`` their running sum; the sum is maintained incrementally
    by :func:`update_efficient` and guarded against drift when
    ``DEBUG_CHECKS`` is on.
    """

    dim: int
    items: tuple[Point, ...]
    volumes: tuple[float, ...]
    total_volume: float

    @classmethod
    def from_points(
        cls, dim: int, points: Iterable[Point], volume_fn=orthant_probability
    ) -> "GeneratorSet":
        items = tuple(tuple(p) for p in points)
        for p in items:
            if len(p) != dim:
                raise DimensionMismatchError(
                    f"generator {p} has dimension {len(p)}, expected {dim}"
                )
        volumes = tuple(volume_fn(p) for p in items)
        return cls(dim, items, volumes, sum(volumes))

    @property
    def gamma(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[Point]:
        return iter(self.items)

    def __len__(self) -> int:
        return len(self.items)

    def as_set(self) -> frozenset[Point]:
        return frozenset(self.items)

    @cached_property
    def sampling_view(self) -> tuple[tuple[int, ...], tuple[float, ...]]:
        """Candidate order for volume-proportional sampling.

        Returns original item indices in lexicographic coordinate order plus
        the cumulative volumes accumulated in that order.  The order depends
        only on the set of generators, never on insertion history, so every
        maintenance strategy consumes randomness identically and record
        streams stay bit-reproducible across strategies.
        """
        order = sorted(range(len(self.items)), key=lambda i: self.items[i])
        cum = []
        acc = 0.0
        for i in order:
            acc += self.volumes[i]
            cum.append(acc)
        return tuple(order), tuple(cum)

    def snapshot_dict(self) -> dict:
        return {
            "dim": self.dim,
            "gamma": self.gamma,
            "generators": [list(g) for g in self.items],
        }

    def snapshot_json(self) -> str:
        return json.dumps(self.snapshot_dict())


def new_generator_set(
    dim: int, bottom: float = 0.0, volume_fn=orthant_probability
) -> GeneratorSet:
    """Generator set of the empty record list: the lattice bottom, volume 1."""
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if bottom == 0.0:
        return GeneratorSet(dim, (origin(dim),), (1.0,), 1.0)
    return GeneratorSet.from_points(dim, ((bottom,) * dim,), volume_fn)


def count_broken_records(records: Sequence[Point], r: Point) -> int:
    """Number of current records strictly dominated (broken) by ``r``."""
    k = 0
    for rec in records:
        if len(rec) != len(r):
            raise DimensionMismatchError(
                f"dimension mismatch: {len(rec)} vs {len(r)}"
            )
        if all(a < b for a, b in zip(rec, r)):
            k += 1
    return k


def _minima(candidates: Sequence[Point]) -> tuple[list[Point], int]:
    """Stable pairwise minima extraction over distinct points.

    Returns the minima in first-occurrence order and the number of pair
    comparisons performed (each pair is compared at most once; a comparison
    settles the full relation between two points).
    """
    mins: list[Point] = []
    comparisons = 0
    for c in candidates:
        dominated = False
        survivors: list[Point] = []
        for m in mins:
            comparisons += 1
            m_le = True
            c_le = True
            for a, b in zip(m, c):
                if a > b:
                    m_le = False
                    if not c_le:
                        break
                elif b > a:
                    c_le = False
                    if not m_le:
                        break
            if m_le:
                # m <= c: c is redundant.  No earlier minimum can have been
                # dropped (that would need some m' >= c >= m, contradicting
                # pairwise minimality), so mins is untouched.
                dominated = True
                break
            if not c_le:
                survivors.append(m)
            # else c <= m: m is dropped.
        if not dominated:
            survivors.append(c)
            mins = survivors
    return mins, comparisons


def _join_candidates(gens: Iterable[Point], r: Point, d: int) -> list[Point]:
    """Duplicate-free joins g v (r_k e_k), first-occurrence order."""
    seen: set[Point] = set()
    out: list[Point] = []
    for g in gens:
        for k in range(d):
            if r[k] > g[k]:
                cand = g[:k] + (r[k],) + g[k + 1 :]
            else:
                cand = g
            if cand not in seen:
                seen.add(cand)
                out.append(cand)
    return out


def _require_covered(gen_set: GeneratorSet, r: Point) -> None:
    if len(r) != gen_set.dim:
        raise DimensionMismatchError(
            f"dimension mismatch: record has {len(r)}, set has {gen_set.dim}"
        )
    for g in gen_set.items:
        if all(a <= b for a, b in zip(g, r)):
            return
    raise NotInRegionError(
        f"point {r} is outside the record-setting region (not a record)"
    )


def _debug_validate(gen_set: GeneratorSet, volume_fn=orthant_probability) -> None:
    fresh = sum(volume_fn(g) for g in gen_set.items)
    if abs(gen_set.total_volume - fresh) > _VOLUME_DRIFT_RTOL * max(fresh, 1e-300):
        raise AssertionError(
            f"cached total volume drifted: {gen_set.total_volume!r} vs {fresh!r}"
        )
    items = gen_set.items
    for i, g in enumerate(items):
        for j, h in enumerate(items):
            if i != j and all(a <= b for a, b in zip(g, h)):
                raise AssertionError(f"minimality violated: {g} <= {h}")


def update_naive(
    gen_set: GeneratorSet, r: Point, volume_fn=orthant_probability
) -> tuple[GeneratorSet, UpdateReport]:
    """Insert record ``r`` by rebuilding minima over all join candidates.

    ``r`` must lie in the current region (be coverable by some generator);
    anything else would not be a record and raises :class:`NotInRegionError`.
    """
    _require_covered(gen_set, r)
    d = gen_set.dim
    killed = sum(
        1 for g in gen_set.items if all(a < b for a, b in zip(g, r))
    )
    candidates = _join_candidates(gen_set.items, r, d)
    mins, comparisons = _minima(candidates)
    new_set = GeneratorSet.from_points(d, mins, volume_fn)
    survivor_count = gen_set.gamma - killed
    report = UpdateReport(
        killed_generators=killed,
        survivor_count=survivor_count,
        new_minima_count=new_set.gamma - survivor_count,
        comparisons=comparisons,
    )
    if DEBUG_CHECKS:
        _debug_validate(new_set, volume_fn)
    return new_set, report


def update_efficient(
    gen_set: GeneratorSet, r: Point, volume_fn=orthant_probability
) -> tuple[GeneratorSet, UpdateReport]:
    """Insert record ``r`` via the survivor split.

    Generators not strictly below ``r`` survive unchanged and stay minimal;
    only the joins derived from killed generators compete for minimality, and
    neither group can dominate the other.  Output equals
    :func:`update_naive`'s as a set, at a comparison cost of at most
    ``gamma + C(d*nu, 2)``.
    """
    _require_covered(gen_set, r)
    d = gen_set.dim
    survivors: list[Point] = []
    survivor_vols: list[float] = []
    killed: list[Point] = []
    killed_volume = 0.0
    comparisons = 0
    for g, v in zip(gen_set.items, gen_set.volumes):
        comparisons += 1
        if all(a < b for a, b in zip(g, r)):
            killed.append(g)
            killed_volume += v
        else:
            survivors.append(g)
            survivor_vols.append(v)

    if killed:
        candidates = _join_candidates(killed, r, d)
        new_mins, pair_comps = _minima(candidates)
        comparisons += pair_comps
        budget = gen_set.gamma + (d * len(killed)) * (d * len(killed) - 1) // 2
        if comparisons > budget:
            raise AssertionError(
                f"comparison budget exceeded: {comparisons} > {budget}"
            )
    else:
        # Measure-zero tie case: r touches the region boundary without being
        # interior to any generator's orthant; the region is unchanged.
        new_mins = []

    new_vols = [volume_fn(g) for g in new_mins]
    total = gen_set.total_volume - killed_volume + sum(new_vols)
    new_set = GeneratorSet(
        d,
        tuple(survivors) + tuple(new_mins),
        tuple(survivor_vols) + tuple(new_vols),
        total,
    )
    report = UpdateReport(
        killed_generators=len(killed),
        survivor_count=len(survivors),
        new_minima_count=len(new_mins),
        comparisons=comparisons,
    )
    if DEBUG_CHECKS:
        _debug_validate(new_set, volume_fn)
    return new_set, report


@dataclass(frozen=True)
class BivariateFrontier:
    """d = 2 record staircase with its interleaved generators.

    ``records`` are sorted with first coordinates strictly increasing (hence
    second coordinates strictly decreasing); ``generators`` then run from
    ``(bottom, r^(1)_2)`` down to ``(r^(rho)_1, bottom)``, one more than the
    records.  ``bottom`` is 0 in the unit-cube frame.
    """

    records: tuple[Point, ...]
    generators: tuple[Point, ...]
    bottom: float = 0.0

    @classmethod
    def from_records(
        cls, records: Iterable[Point], bottom: float = 0.0
    ) -> "BivariateFrontier":
        recs = sorted(tuple(p) for p in records)
        for p in recs:
            if len(p) != 2:
                raise ValueError("bivariate frontier requires dimension 2")
        for a, b in zip(recs, recs[1:]):
            if not (a[0] < b[0] and a[1] > b[1]):
                raise ValueError(f"records {a} and {b} are comparable or tied")
        rho = len(recs)
        gens = []
        for i in range(rho + 1):
            x = recs[i - 1][0] if i >= 1 else bottom
            y = recs[i][1] if i <= rho - 1 else bottom
            gens.append((x, y))
        return cls(tuple(recs), tuple(gens), bottom)

    @classmethod
    def initial(cls, bottom: float = 0.0) -> "BivariateFrontier":
        return cls.from_records((), bottom)

    @property
    def rho(self) -> int:
        return len(self.records)

    @property
    def gamma(self) -> int:
        return len(self.generators)

    def to_generator_set(self, volume_fn=orthant_probability) -> GeneratorSet:
        return GeneratorSet.from_points(2, self.generators, volume_fn)


def update_bivariate(frontier: BivariateFrontier, r: Point) -> BivariateFrontier:
    """Insert a bivariate record into the staircase.

    Broken records form a contiguous run next to the insertion point; the
    generator list is rebuilt from the surviving records in O(rho).
    """
    if len(r) != 2:
        raise ValueError(f"update_bivariate requires dimension 2, got {len(r)}")
    r = tuple(r)
    for rec in frontier.records:
        if r[0] < rec[0] and r[1] < rec[1]:
            raise NotInRegionError(
                f"point {r} is outside the record-setting region (not a record)"
            )
    kept = [rec for rec in frontier.records if not (rec[0] < r[0] and rec[1] < r[1])]
    kept.append(r)
    return BivariateFrontier.from_records(kept, frontier.bottom)
