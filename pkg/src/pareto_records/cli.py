"""Command-line interface: simulation runs, expectation tables, verifications.

Subcommands
-----------
simulate        generate records, write a CSV stream + JSON ledger
table1          tally how many current records each new record breaks
expected        exact / Poissonized / asymptotic expected generator counts
bounds-check    deterministic bounds, witness construction, rho=2 census
oracle-compare  cross-check incremental maintainers against the oracles

All randomness flows from the single --seed flag; derived per-trial seeds
use the documented mixing function.  CSV output is RFC-4180 style (UTF-8,
'.' decimal point, headers always present) and floats are written with
shortest round-trip repr, so identical flags reproduce files byte for byte.
Every output file is paired with a JSON ledger sidecar at <out>.ledger.json.

Exit codes: 0 success, 1 runtime or verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from datetime import datetime, timezone

from . import __version__
from .analysis import (
    attainable_gammas_two_records,
    bounds,
    expectation_table,
    lower_bound_witness,
)
from .generators import (
    GeneratorSet,
    new_generator_set,
    update_efficient,
    update_naive,
)
from .oracle import generators_via_partitions, generators_via_projection
from .sampler import (
    FORMAT_VERSION,
    VARIANTS,
    RecordStream,
    RunLedger,
    derive_seed,
    sample_record_set,
    simulate,
)


@dataclass(frozen=True)
class Table1Summary:
    """Break-count tally: rows of (k, N_k, p_tilde_k) with sum N_k = m."""

    m: int
    rows: tuple[tuple[int, int, float], ...]


def make_ledger(dim: int, target: int, seed: int, variant: str) -> RunLedger:
    return RunLedger(
        format_version=FORMAT_VERSION,
        dim=dim,
        target_records=target,
        seed=int(seed),
        variant=variant,
        timestamp=datetime.now(timezone.utc).isoformat(timespec="seconds"),
        software_version=__version__,
    )


def write_ledger(ledger: RunLedger, out_path: str) -> None:
    path = out_path + ".ledger.json"
    with open(path, "w", encoding="utf-8") as f:
        json.dump(ledger.to_dict(), f, indent=2, sort_keys=True)
        f.write("\n")


def write_stream_csv(stream: RecordStream, path: str) -> None:
    dim = stream.ledger.dim
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        header = (
            ["record_index"]
            + [f"c{j + 1}" for j in range(dim)]
            + ["records_broken", "rho_after", "gamma_after", "rejections"]
        )
        w.writerow(header)
        for e in stream.entries:
            w.writerow(
                [e.index]
                + [repr(c) for c in e.coords]
                + [e.records_broken, e.rho_after, e.gamma_after, e.rejections]
            )


def table1_summary(stream: RecordStream) -> Table1Summary:
    m = len(stream.entries)
    tally: dict[int, int] = {}
    for e in stream.entries:
        tally[e.records_broken] = tally.get(e.records_broken, 0) + 1
    rows = tuple(
        (k, tally[k], tally[k] / m if m else 0.0) for k in sorted(tally)
    )
    return Table1Summary(m, rows)


def write_table1_csv(summary: Table1Summary, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["k", "N_k", "p_tilde_k"])
        for k, n_k, p_k in summary.rows:
            w.writerow([k, n_k, repr(p_k)])


def write_expected_csv(table, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(
            ["d", "n", "I_exact", "G_exact", "I_poissonized", "G_asymptotic", "abs_gap"]
        )
        for row in table.rows:
            poiss = "" if row.interior_poissonized is None else repr(row.interior_poissonized)
            asym = "" if row.generators_asymptotic is None else repr(row.generators_asymptotic)
            gap = (
                ""
                if row.generators_asymptotic is None
                else repr(abs(row.generators_exact - row.generators_asymptotic))
            )
            w.writerow(
                [table.d, row.n, repr(row.interior_exact), repr(row.generators_exact), poiss, asym, gap]
            )


def cmd_simulate(args: argparse.Namespace) -> int:
    stream, state = simulate(args.dim, args.records, args.seed, args.variant)
    if args.out:
        write_stream_csv(stream, args.out)
        write_ledger(stream.ledger, args.out)
    if args.snapshot:
        with open(args.snapshot, "w", encoding="utf-8") as f:
            f.write(state.generators.snapshot_json())
            f.write("\n")
    rho = len(state.records)
    gamma = state.generators.gamma
    mean_rej = (
        sum(e.rejections for e in stream.entries) / len(stream.entries)
        if stream.entries
        else 0.0
    )
    frac0 = stream.fraction_zero_breaks()
    print(
        f"records={len(stream.entries)} rho={rho} gamma={gamma} "
        f"mean_rejections={mean_rej:.4f}"
        + (f" fraction_zero_breaks={frac0:.5f}" if frac0 is not None else "")
    )
    return 0


def cmd_table1(args: argparse.Namespace) -> int:
    stream, _ = simulate(args.dim, args.records, args.seed, args.variant)
    summary = table1_summary(stream)
    if args.out:
        write_table1_csv(summary, args.out)
        write_ledger(stream.ledger, args.out)
    for k, n_k, p_k in summary.rows:
        print(f"{k}\t{n_k}\t{p_k:.5f}")
    return 0


def cmd_expected(args: argparse.Namespace) -> int:
    ns = [int(s) for s in args.n_list.split(",") if s.strip()]
    table = expectation_table(
        args.dim,
        ns,
        include_poissonized=args.poissonized,
        include_asymptotic=args.asymptotic,
    )
    if args.out:
        write_expected_csv(table, args.out)
        write_ledger(make_ledger(args.dim, 0, 0, "expected"), args.out)
    for row in table.rows:
        parts = [
            f"n={row.n}",
            f"I_exact={row.interior_exact:.9f}",
            f"G_exact={row.generators_exact:.9f}",
        ]
        if row.interior_poissonized is not None:
            parts.append(f"I_poissonized={row.interior_poissonized:.9f}")
        if row.generators_asymptotic is not None:
            parts.append(f"G_asymptotic={row.generators_asymptotic:.9f}")
        print(" ".join(parts))
    return 0


def _census_rho2(d: int) -> set[int]:
    """Brute-force gamma values over all order patterns of two records."""
    observed = set()
    # Pattern: the subset of coordinates where the first record is larger.
    # gamma depends only on that subset (coordinate values are order-isomorphic).
    for mask in range(1, 2**d - 1):
        a = []
        b = []
        for j in range(d):
            if mask >> j & 1:
                a.append((j + 2.0) / (d + 3.0))
                b.append((j + 1.0) / (d + 3.0))
            else:
                a.append((j + 1.0) / (d + 3.0))
                b.append((j + 2.0) / (d + 3.0))
        gens = new_generator_set(d)
        gens, _ = update_naive(gens, tuple(a))
        gens, _ = update_naive(gens, tuple(b))
        observed.add(gens.gamma)
    return observed


def cmd_bounds_check(args: argparse.Namespace) -> int:
    failures = 0
    if args.rho is not None:
        lo, hi = bounds(args.rho, args.dim)
        print(f"d={args.dim} rho={args.rho} bounds=({lo}, {hi})")
        if args.witness:
            gens = new_generator_set(args.dim)
            for r in lower_bound_witness(args.dim, args.rho):
                gens, _ = update_efficient(gens, r)
            status = "ok" if gens.gamma == lo else "MISMATCH"
            if gens.gamma != lo:
                failures += 1
            print(f"witness gamma={gens.gamma} expected={lo} {status}")
    if args.census_rho2:
        expected = attainable_gammas_two_records(args.dim)
        observed = _census_rho2(args.dim)
        status = "ok" if observed == expected else "MISMATCH"
        if observed != expected:
            failures += 1
        print(
            f"rho=2 census d={args.dim}: observed={sorted(observed)} "
            f"expected={sorted(expected)} {status}"
        )
    return 1 if failures else 0


def cmd_oracle_compare(args: argparse.Namespace) -> int:
    if args.rho > 10:
        print("oracle-compare supports rho <= 10", file=sys.stderr)
        return 2
    passed = 0
    for trial in range(args.trials):
        trial_seed = derive_seed(args.seed, trial)
        records = sample_record_set(args.dim, args.rho, trial_seed)
        ref = _insert_all(args.dim, records, update_naive).as_set()
        eff = _insert_all(args.dim, records, update_efficient).as_set()
        part = generators_via_partitions(records, dim=args.dim).as_set()
        proj = generators_via_projection(records, dim=args.dim).as_set()
        if not (ref == eff == part == proj):
            print(
                "MISMATCH on instance "
                + json.dumps({"dim": args.dim, "records": [list(r) for r in records]})
            )
            print(f"pass={passed} fail=1 of {args.trials}")
            return 1
        passed += 1
    print(f"pass={passed} fail=0 of {args.trials}")
    return 0


def _insert_all(dim: int, records, update) -> GeneratorSet:
    gens = new_generator_set(dim)
    for r in records:
        gens, _ = update(gens, r)
    return gens


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-records",
        description="Sample multivariate Pareto records and analyze their generators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate records via importance sampling")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--records", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="efficient")
    p.add_argument("--out", help="CSV output path (ledger written alongside)")
    p.add_argument("--snapshot", help="write final generator set as JSON")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("table1", help="tally of records broken per new record")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--records", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--variant", choices=VARIANTS, default="efficient")
    p.add_argument("--out", help="CSV output path (ledger written alongside)")
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("expected", help="expected generator count table")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--n-list", required=True, help="comma-separated times")
    p.add_argument("--poissonized", action="store_true")
    p.add_argument("--asymptotic", action="store_true")
    p.add_argument("--out", help="CSV output path (ledger written alongside)")
    p.set_defaults(func=cmd_expected)

    p = sub.add_parser("bounds-check", help="verify deterministic bounds")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rho", type=int)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--census-rho2", action="store_true")
    p.set_defaults(func=cmd_bounds_check)

    p = sub.add_parser(
        "oracle-compare", help="cross-check maintainers against the oracles"
    )
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--rho", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_oracle_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
