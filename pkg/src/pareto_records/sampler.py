"""Importance sampling of Pareto records over the record-setting region.

A new record is a fresh uniform observation conditioned to land in the
current region, which is a union of generator orthants.  One record is drawn
by the accept/reject subroutine:

1. pick a generator with probability proportional to its orthant volume,
2. sample uniformly inside that orthant,
3. accept with probability 1/(number of orthants covering the sample),
   repeating steps 1-3 on rejection,

then the generator set is updated.  The run-length of step 3 is Geometric
with success probability at least 1/gamma.

Randomness consumption is normative so that streams are bit-reproducible:
step 1 always consumes exactly one uniform (inverse CDF over the cumulative
volumes of the canonical candidate order), step 2 consumes d uniforms in
coordinate order, and step 3 consumes one uniform only when the covering
count exceeds 1.  All uniforms come from a single seeded
:class:`RandomSource`; there are no hidden entropy sources.

Internal coordinate frame
-------------------------
Long runs drive the region into the far corner of the cube: after m
bivariate records the region volume is roughly exp(-sqrt(2 m)), so
coordinates approach 1 far beyond what ``1 - x`` can resolve in doubles
(absolute spacing 2^-53 near 1).  Storing x directly would pin the frontier
at m around 700 and break the tie-free record model.  The engine therefore
stores every coordinate offset by one: v = x - 1 in [-1, 0).  In that frame
the orthant-sampling step is the multiplication v_R = v_g * (1 - U), which
is algebraically the same map as x_R = g + (1 - g) U but preserves
*relative* precision of the corner distances down to 1e-308 -- comfortably
past 1e5 bivariate records.  All dominance logic is order algebra and runs
unchanged on offset points; orthant volume is prod(-v_j).  Unit-cube views
of records and generators are exposed for reporting and are exact until a
coordinate comes within one double-spacing of 1, after which the view (and
only the view) clamps to the largest double below 1.

A proposal whose coordinate would exactly tie a current record coordinate
(or reach bottom/1.0 exactly) is rejected like a step-3 rejection: the
continuous process produces ties with probability zero, and the tie-free
model is what every deterministic law downstream assumes.  With the offset
frame such collisions are ulp-scale events, not a systematic regime.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from math import nextafter

from . import __version__
from .analysis.bounds import bounds
from .generators import (
    BivariateFrontier,
    GeneratorSet,
    UpdateReport,
    new_generator_set,
    update_bivariate,
    update_efficient,
    update_naive,
)
from .geometry import Point

FORMAT_VERSION = "1"
VARIANTS = ("naive", "efficient", "bivariate")

_MASK64 = (1 << 64) - 1
_BOTTOM = -1.0
_ONE_BELOW = nextafter(1.0, 0.0)


class RandomSource:
    """Deterministic stream of uniform reals in [0, 1).

    Wraps CPython's Mersenne Twister seeded with a 64-bit integer; each
    uniform carries 53 random bits.  Identical seeds produce identical
    sequences, and the generator algorithm is fixed per release.
    """

    __slots__ = ("seed", "_rng")

    def __init__(self, seed: int):
        self.seed = int(seed)
        self._rng = random.Random(self.seed)

    def uniform(self) -> float:
        return self._rng.random()


def derive_seed(seed: int, index: int) -> int:
    """Mix a master seed with a subtask index into a fresh 64-bit seed.

    SplitMix64 finalizer over ``seed + (index + 1) * golden_gamma``; this is
    the documented mixing function for per-trial child seeds.
    """
    z = (seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _offset_volume(p: Point) -> float:
    """Orthant volume in the offset frame: prod(-v_j) = prod(1 - x_j)."""
    out = 1.0
    for c in p:
        out *= -c
    return out


def _to_unit(v: Point) -> Point:
    """Unit-cube view of an offset point; clamps below 1 at the ulp edge."""
    return tuple(min(1.0 + c, _ONE_BELOW) for c in v)


def _to_offset(x: Point) -> Point:
    """Offset view of a unit-cube point (rounds once; exact for x >= 0.5)."""
    return tuple(c - 1.0 for c in x)


@dataclass(frozen=True)
class HistoryEntry:
    """Per-record statistics captured during a simulation run."""

    index: int
    coords: Point
    records_broken: int
    rho_after: int
    gamma_after: int
    rejections: int


@dataclass(frozen=True)
class RunLedger:
    """Reproducibility metadata attached to every output file."""

    format_version: str
    dim: int
    target_records: int
    seed: int
    variant: str
    timestamp: str
    software_version: str

    def to_dict(self) -> dict:
        return {
            "format_version": self.format_version,
            "dim": self.dim,
            "target_records": self.target_records,
            "seed": self.seed,
            "variant": self.variant,
            "timestamp": self.timestamp,
            "software_version": self.software_version,
        }


@dataclass(frozen=True)
class RecordStream:
    """A completed run: ledger plus one history row per generated record."""

    ledger: RunLedger
    entries: tuple[HistoryEntry, ...]

    def fraction_zero_breaks(self) -> float | None:
        """Observed fraction of records that broke no current record.

        Logged per run as an empirical probe of the limiting break-nothing
        fraction; nothing is asserted about it.
        """
        if not self.entries:
            return None
        return sum(1 for e in self.entries if e.records_broken == 0) / len(
            self.entries
        )


class RecordState:
    """Mutable simulation state: current records, generators, history.

    The engine state lives in the offset frame (see module docstring);
    ``records`` and ``generators`` expose unit-cube views.  Single-threaded
    by design; independent runs with different seeds share nothing.
    """

    __slots__ = (
        "dim",
        "variant",
        "records_offset",
        "generators_offset",
        "frontier_offset",
        "history",
        "_coord_sets",
    )

    def __init__(self, dim: int, variant: str = "efficient"):
        if dim < 1:
            raise ValueError(f"dimension must be >= 1, got {dim}")
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if variant == "bivariate" and dim != 2:
            raise ValueError("bivariate variant requires dimension 2")
        self.dim = dim
        self.variant = variant
        self.records_offset: list[Point] = []
        self.generators_offset = new_generator_set(dim, _BOTTOM, _offset_volume)
        self.frontier_offset = (
            BivariateFrontier.initial(_BOTTOM) if variant == "bivariate" else None
        )
        self.history: list[HistoryEntry] = []
        # Per-axis sets of current record coordinates, for O(d) tie checks.
        self._coord_sets: list[set[float]] = [set() for _ in range(dim)]

    @classmethod
    def from_records(
        cls, dim: int, records, variant: str = "efficient"
    ) -> "RecordState":
        """State positioned after the given pairwise-incomparable records."""
        state = cls(dim, variant)
        for x in records:
            _apply(state, _to_offset(tuple(x)), rejections=0)
        state.history.clear()
        return state

    @property
    def rho(self) -> int:
        return len(self.records_offset)

    @property
    def records(self) -> list[Point]:
        """Current records in unit-cube coordinates."""
        return [_to_unit(v) for v in self.records_offset]

    @property
    def generators(self) -> GeneratorSet:
        """Current generators as a unit-cube GeneratorSet."""
        return GeneratorSet.from_points(
            self.dim, (_to_unit(v) for v in self.generators_offset.items)
        )


def sample_in_orthant(g: Point, rng: RandomSource) -> Point:
    """Uniform sample from the closed positive orthant rooted at ``g``.

    Consumes exactly d uniforms, in coordinate order:
    R_j = g_j + (1 - g_j) * U_j.
    """
    return tuple(c + (1.0 - c) * rng.uniform() for c in g)


def choose_generator(gen_set: GeneratorSet, rng: RandomSource) -> int:
    """Pick a generator index with probability proportional to orthant volume.

    Consumes exactly one uniform: inverse CDF over the cumulative cached
    volumes in the canonical (lexicographic) candidate order.  Returns an
    index into ``gen_set.items``.
    """
    order, cum = gen_set.sampling_view
    if not order:
        raise ValueError("generator set is empty")
    total = cum[-1]
    if total <= 0.0:
        raise RuntimeError(f"degenerate total orthant volume {total!r}")
    target = rng.uniform() * total
    i = bisect_right(cum, target)
    if i >= len(cum):
        i = len(cum) - 1
    return order[i]


def _covering_count(gen_set: GeneratorSet, p: Point) -> int:
    """#{g in G : p in O+_g}, by linear scan."""
    n = 0
    for g in gen_set.items:
        if all(a <= b for a, b in zip(g, p)):
            n += 1
    return n


def _propose(state: RecordState, rng: RandomSource) -> tuple[Point, int]:
    """Steps 1-3 in the offset frame; returns (offset point, rejections)."""
    rejections = 0
    coord_sets = state._coord_sets
    gens = state.generators_offset
    while True:
        gi = choose_generator(gens, rng)
        g = gens.items[gi]
        r = tuple(c * (1.0 - rng.uniform()) for c in g)
        tied = False
        for j, c in enumerate(r):
            if c >= 0.0 or c <= _BOTTOM or c in coord_sets[j]:
                tied = True
                break
        if tied:
            rejections += 1
            continue
        cover = _covering_count(gens, r)
        if cover == 1:
            return r, rejections
        if rng.uniform() * cover < 1.0:
            return r, rejections
        rejections += 1


def next_record(state: RecordState, rng: RandomSource) -> tuple[Point, int]:
    """Draw one new record: uniform on the cube conditioned on the region.

    Does not mutate ``state``; returns the accepted point in unit-cube
    coordinates and the number of rejected proposals.  Within a simulation
    loop the engine applies the offset-frame point instead, so repeated
    ``next_record`` calls are exactly the resampling of the same region.
    """
    r, rejections = _propose(state, rng)
    return _to_unit(r), rejections


def _apply(state: RecordState, r: Point, rejections: int) -> UpdateReport:
    """Insert an accepted offset-frame record; returns the update report.

    Maintains records, generators, per-axis coordinate sets, and history,
    and asserts the deterministic generator-count bounds after the update.
    """
    k = 0
    survivors = []
    for rec in state.records_offset:
        if all(a < b for a, b in zip(rec, r)):
            k += 1
            for j, c in enumerate(rec):
                state._coord_sets[j].discard(c)
        else:
            survivors.append(rec)
    survivors.append(r)

    if state.variant == "naive":
        new_set, report = update_naive(state.generators_offset, r, _offset_volume)
    elif state.variant == "efficient":
        new_set, report = update_efficient(
            state.generators_offset, r, _offset_volume
        )
    else:
        old = state.generators_offset
        killed = sum(1 for g in old.items if all(a < b for a, b in zip(g, r)))
        state.frontier_offset = update_bivariate(state.frontier_offset, r)
        new_set = state.frontier_offset.to_generator_set(_offset_volume)
        report = UpdateReport(
            killed_generators=killed,
            survivor_count=old.gamma - killed,
            new_minima_count=new_set.gamma - (old.gamma - killed),
            comparisons=old.gamma,
        )
    report = replace(report, records_broken=k)
    state.generators_offset = new_set
    state.records_offset = survivors
    for j, c in enumerate(r):
        state._coord_sets[j].add(c)

    lo, hi = bounds(len(survivors), state.dim)
    if not lo <= new_set.gamma <= hi:
        raise AssertionError(
            f"generator count {new_set.gamma} outside bounds [{lo}, {hi}] "
            f"at rho={len(survivors)}, d={state.dim}"
        )
    state.history.append(
        HistoryEntry(
            index=len(state.history) + 1,
            coords=_to_unit(r),
            records_broken=k,
            rho_after=len(survivors),
            gamma_after=new_set.gamma,
            rejections=rejections,
        )
    )
    return report


def simulate(
    dim: int, m: int, seed: int, variant: str = "efficient"
) -> tuple[RecordStream, RecordState]:
    """Generate ``m`` records and return the stream plus the final state."""
    if m < 0:
        raise ValueError(f"record count must be >= 0, got {m}")
    state = RecordState(dim, variant)
    rng = RandomSource(seed)
    for _ in range(m):
        r, rejections = _propose(state, rng)
        _apply(state, r, rejections)
    ledger = RunLedger(
        format_version=FORMAT_VERSION,
        dim=dim,
        target_records=m,
        seed=int(seed),
        variant=variant,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        software_version=__version__,
    )
    return RecordStream(ledger, tuple(state.history)), state


def run_simulation(
    dim: int, m: int, seed: int, variant: str = "efficient"
) -> RecordStream:
    """Generate ``m`` records with the given strategy; see :func:`simulate`."""
    stream, _ = simulate(dim, m, seed, variant)
    return stream


def naive_record_stream(
    dim: int, n_obs: int, seed: int
) -> tuple[list[Point], list[int]]:
    """Direct-definition record stream from ``n_obs`` i.i.d. observations.

    Emits the records in order of occurrence together with the number of
    current records each one breaks.  An observation is a record iff it is
    not strictly dominated by any current record, which suffices because
    strict dominance is transitive through broken records.  Consumes d
    uniforms per observation.  Desk scale only: the region probability
    shrinks fast, so records become astronomically rare.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    if n_obs < 0:
        raise ValueError(f"observation count must be >= 0, got {n_obs}")
    rng = RandomSource(seed)
    current: list[Point] = []
    records: list[Point] = []
    breaks: list[int] = []
    for _ in range(n_obs):
        x = tuple(rng.uniform() for _ in range(dim))
        dominated = False
        for rec in current:
            if all(a < b for a, b in zip(x, rec)):
                dominated = True
                break
        if dominated:
            continue
        k = 0
        survivors = []
        for rec in current:
            if all(a < b for a, b in zip(rec, x)):
                k += 1
            else:
                survivors.append(rec)
        survivors.append(x)
        current = survivors
        records.append(x)
        breaks.append(k)
    return records, breaks


def sample_record_set(
    dim: int, rho: int, seed: int, variant: str = "efficient"
) -> list[Point]:
    """Random set of exactly ``rho`` pairwise-incomparable current records.

    Runs the importance sampler until the current-record count first hits
    ``rho`` (it changes by at most +1 per inserted record, so the first
    crossing is exact).  Returns unit-cube points; useful for generating
    test instances.
    """
    if rho < 0:
        raise ValueError(f"rho must be >= 0, got {rho}")
    if dim == 1 and rho > 1:
        raise ValueError("dimension 1 admits at most one current record")
    state = RecordState(dim, variant)
    rng = RandomSource(seed)
    limit = 200 + 60 * rho
    for _ in range(limit):
        if len(state.records_offset) == rho:
            return state.records
        r, rejections = _propose(state, rng)
        _apply(state, r, rejections)
    raise RuntimeError(
        f"record count did not reach {rho} within {limit} insertions"
    )
