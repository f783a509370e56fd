"""Command-line interface.

Subcommands: solve one instance, bench a sweep of instances, gen instance
files, verify a schedule dump against its instance. Exit codes: 0 success,
1 verification failure, 2 usage or input error. All output is deterministic
for fixed inputs and seeds; wall-clock timing is only emitted under
--timings, which is inherently not reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import minms, mintpt
from .core import MigrationSchedule, MinMsInstance, segment_violations
from .instances import (
    InstanceFormatError,
    gen_graham_worst_case,
    gen_random_minms,
    gen_random_mintpt,
    load_instance,
    serialize_instance,
)
from .mintpt import IntervalInstance, IntervalSchedule, placement_violations
from .oracles import (
    MINMS_LIMITS,
    MINTPT_LIMITS,
    InstanceTooLargeError,
    OracleLimits,
    exact_minms,
    exact_mintpt,
)
from .report import ReportRow, render_csv, render_json, render_markdown

MINMS_ALGORITHMS = ("lpt", "pam", "wraparound", "exact")
MINTPT_ALGORITHMS = ("estf", "lbm", "exact")
ALL_ALGORITHMS = ("lpt", "pam", "wraparound", "estf", "lbm", "exact")

DUMP_FORMAT = "migsched-dump"
DUMP_VERSION = 1


class CliError(Exception):
    """Usage or input error; reported on stderr with exit code 2."""


def _parse_int_list(text: str) -> list[int]:
    """Parse "2:20", "2,3,5", "7", or "" (empty list). Ranges are inclusive."""
    items: list[int] = []
    text = text.strip()
    if not text:
        return items
    for part in text.split(","):
        part = part.strip()
        try:
            if ":" in part:
                lo, hi = part.split(":", 1)
                items.extend(range(int(lo), int(hi) + 1))
            else:
                items.append(int(part))
        except ValueError as exc:
            raise CliError(f"bad integer list {text!r}: {exc}") from exc
    return items


def _load(path: str) -> MinMsInstance | IntervalInstance:
    try:
        return load_instance(path)
    except FileNotFoundError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _limits_for(args, default: OracleLimits) -> OracleLimits | None:
    override = getattr(args, "oracle_limit", None)
    if override is None:
        return default
    if override == 0:
        return None
    if override < 0:
        raise CliError("--oracle-limit must be >= 0")
    return OracleLimits(max_jobs=override, max_machines=override)


def _oracle_column(instance, limits: OracleLimits | None):
    """Oracle value when the instance is within limits, else None."""
    if limits is None:
        return None
    try:
        if isinstance(instance, MinMsInstance):
            return exact_minms(instance, limits)
        return exact_mintpt(instance, limits)
    except InstanceTooLargeError:
        return None


def _solve_one(instance, name: str, algorithm: str, limits, oracle_value, timings: bool):
    """Run one algorithm; returns (ReportRow, schedule or None)."""
    started = time.perf_counter()
    schedule = None
    if isinstance(instance, MinMsInstance):
        if algorithm not in MINMS_ALGORITHMS:
            raise CliError(f"algorithm {algorithm!r} does not apply to minms instances")
        kind = "minms"
        param = instance.machine_count
        optimum = minms.opt_balance(instance)
        if algorithm == "lpt":
            schedule = minms.lpt_schedule(instance)
            objective = schedule.makespan()
        elif algorithm == "pam":
            schedule = minms.pam_schedule(instance).schedule
            objective = schedule.makespan()
        elif algorithm == "wraparound":
            schedule, objective = minms.wraparound_schedule(instance)
        else:
            if limits is None:
                raise CliError("exact solve requested but the oracle is disabled")
            try:
                objective = exact_minms(instance, limits)
            except InstanceTooLargeError as exc:
                raise CliError(str(exc)) from exc
    else:
        if algorithm not in MINTPT_ALGORITHMS:
            raise CliError(f"algorithm {algorithm!r} does not apply to mintpt instances")
        kind = "mintpt"
        param = instance.capacity
        optimum = mintpt.mintpt_lower_bound(instance)
        if algorithm == "estf":
            schedule = mintpt.estf_schedule(instance)
            objective = schedule.total_power_on_time()
        elif algorithm == "lbm":
            schedule = mintpt.lbm_schedule(instance)
            objective = schedule.total_power_on_time()
        else:
            if limits is None:
                raise CliError("exact solve requested but the oracle is disabled")
            try:
                objective = exact_mintpt(instance, limits)
            except InstanceTooLargeError as exc:
                raise CliError(str(exc)) from exc

    elapsed = (time.perf_counter() - started) * 1000.0
    ratio = Fraction(objective) / Fraction(optimum) if optimum > 0 else None
    row = ReportRow(
        instance=name,
        kind=kind,
        n=len(instance.jobs),
        param=param,
        optimum=optimum,
        algorithm=algorithm,
        objective=objective,
        ratio=ratio,
        migrations=schedule.migrations if schedule is not None else 0,
        oracle=oracle_value,
        ms=elapsed if timings else None,
    )
    return row, schedule


def _dump_payload(schedule, algorithm: str) -> dict:
    if isinstance(schedule, MigrationSchedule):
        return {
            "format": DUMP_FORMAT,
            "version": DUMP_VERSION,
            "kind": "minms",
            "algorithm": algorithm,
            "machine_count": schedule.instance.machine_count,
            "migrations": schedule.migrations,
            "segments": [
                {"job": s.job_id, "machine": s.machine_id, "amount": str(s.amount)}
                for s in schedule.segments
            ],
        }
    return {
        "format": DUMP_FORMAT,
        "version": DUMP_VERSION,
        "kind": "mintpt",
        "algorithm": algorithm,
        "machines_used": schedule.machines_used,
        "migrations": schedule.migrations,
        "placements": [
            {"job": j, "machine": m, "slot": s} for j, m, s in schedule.placements
        ],
    }


def _render(rows, fmt: str, single: bool = False) -> str:
    if fmt == "csv":
        return render_csv(rows)
    if fmt == "md":
        return render_markdown(rows)
    return render_json(rows, single=single)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    instance = _load(args.instance)
    default = MINMS_LIMITS if isinstance(instance, MinMsInstance) else MINTPT_LIMITS
    limits = _limits_for(args, default)
    oracle_value = _oracle_column(instance, limits)
    row, schedule = _solve_one(
        instance, args.instance, args.algorithm, limits, oracle_value, args.timings
    )
    _write(_render([row], args.format, single=True), args.out)
    if args.dump:
        if schedule is None:
            raise CliError("the exact solver produces a value, not a schedule; nothing to dump")
        payload = _dump_payload(schedule, args.algorithm)
        Path(args.dump).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
    return 0


def cmd_bench(args) -> int:
    algorithms = [a.strip() for a in args.algorithms.split(",") if a.strip()]
    if not algorithms:
        raise CliError("no algorithms given")
    for algorithm in algorithms:
        if algorithm not in ALL_ALGORITHMS:
            raise CliError(f"unknown algorithm {algorithm!r}")

    instances: list[tuple[str, object]] = []
    if args.family == "graham":
        for m in _parse_int_list(args.m):
            if m < 2:
                raise CliError(f"the adversarial family needs m >= 2, got {m}")
            instances.append((f"graham-m{m}", gen_graham_worst_case(m)))
    elif args.family == "random-minms":
        seeds = _parse_int_list(args.seeds)
        if seeds:
            try:
                m = int(args.m)
            except ValueError as exc:
                raise CliError(f"--m must be a single machine count here, got {args.m!r}") from exc
            for seed in seeds:
                instances.append(
                    (
                        f"minms-n{args.n}-m{m}-s{seed}",
                        gen_random_minms(args.n, m, (args.p_min, args.p_max), seed),
                    )
                )
    else:
        for seed in _parse_int_list(args.seeds):
            instances.append(
                (
                    f"mintpt-n{args.n}-h{args.horizon}-g{args.g}-s{seed}",
                    gen_random_mintpt(args.n, args.horizon, args.g, seed),
                )
            )

    rows = []
    for name, instance in instances:
        default = MINMS_LIMITS if isinstance(instance, MinMsInstance) else MINTPT_LIMITS
        limits = _limits_for(args, default)
        oracle_value = _oracle_column(instance, limits)
        for algorithm in algorithms:
            row, _ = _solve_one(instance, name, algorithm, limits, oracle_value, args.timings)
            rows.append(row)
    _write(_render(rows, args.format), args.out)
    return 0


def cmd_gen(args) -> int:
    try:
        if args.family == "graham":
            instance = gen_graham_worst_case(args.m)
        elif args.family == "random-minms":
            instance = gen_random_minms(args.n, args.m, (args.p_min, args.p_max), args.seed)
        else:
            instance = gen_random_mintpt(args.n, args.horizon, args.g, args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    _write(serialize_instance(instance), args.out)
    return 0


def _verify_minms(instance: MinMsInstance, dump: dict) -> tuple[list[str], list[str]]:
    issues: list[str] = []
    notes: list[str] = []
    if dump.get("machine_count") != instance.machine_count:
        issues.append(
            f"machine_count {dump.get('machine_count')!r} does not match instance "
            f"{instance.machine_count}"
        )
    raw = []
    for i, seg in enumerate(dump.get("segments", [])):
        try:
            raw.append((int(seg["job"]), int(seg["machine"]), Fraction(str(seg["amount"]))))
        except (KeyError, ValueError, TypeError) as exc:
            issues.append(f"segment {i} malformed: {exc}")
    problems = segment_violations(instance, raw)
    issues.extend(problems)
    if not problems:
        notes.append(
            f"per-job conservation holds ({len(instance.jobs)} jobs, {len(raw)} segments)"
        )

    migrations = len(raw) - len(instance.jobs)
    if dump.get("migrations") != migrations:
        issues.append(f"migrations recorded as {dump.get('migrations')!r}, recomputed {migrations}")
    else:
        notes.append(f"migrations = {migrations} as recorded")
    if problems:
        return issues, notes

    loads = [Fraction(0)] * instance.machine_count
    for _, machine, amount in raw:
        if 0 <= machine < instance.machine_count:
            loads[machine] += amount

    algorithm = dump.get("algorithm")
    if algorithm == "pam":
        opt = minms.opt_balance(instance)
        off = [i for i, load in enumerate(loads) if load != opt]
        if off:
            issues.append(f"machines {off} deviate from the balanced optimum {opt}")
        else:
            notes.append(f"all loads = {opt}")
    elif algorithm == "lpt":
        split = len(raw) - len({job for job, _, _ in raw})
        if split:
            issues.append(f"{split} split jobs in a whole-job schedule")
        else:
            notes.append("every job is whole on one machine")
    elif algorithm == "wraparound":
        bound = max(
            max(j.process_time for j in instance.jobs),
            minms.opt_balance(instance),
        )
        if max(loads) != bound:
            issues.append(f"makespan {max(loads)} differs from wrap bound {bound}")
        else:
            notes.append(f"makespan = {bound} (wrap bound)")
        clocks: dict[int, Fraction] = {}
        windows: dict[int, list[tuple[Fraction, Fraction]]] = {}
        for job, machine, amount in raw:
            start = clocks.get(machine, Fraction(0))
            clocks[machine] = start + amount
            windows.setdefault(job, []).append((start, start + amount))
        overlapping = []
        for job, spans in windows.items():
            spans.sort()
            if any(spans[i][1] > spans[i + 1][0] for i in range(len(spans) - 1)):
                overlapping.append(job)
        if overlapping:
            issues.append(f"jobs {sorted(overlapping)} overlap themselves in time")
        else:
            notes.append("no job overlaps itself in time")
    return issues, notes


def _verify_mintpt(instance: IntervalInstance, dump: dict) -> tuple[list[str], list[str]]:
    issues: list[str] = []
    notes: list[str] = []
    raw = []
    for i, placement in enumerate(dump.get("placements", [])):
        try:
            raw.append((int(placement["job"]), int(placement["machine"]), int(placement["slot"])))
        except (KeyError, ValueError, TypeError) as exc:
            issues.append(f"placement {i} malformed: {exc}")
    problems = placement_violations(instance, raw)
    issues.extend(problems)
    if not problems:
        notes.append(
            f"every job placed in all its slots within capacity {instance.capacity}"
        )

    machines_used = len({machine for _, machine, _ in raw})
    if dump.get("machines_used") != machines_used:
        issues.append(
            f"machines_used recorded as {dump.get('machines_used')!r}, recomputed {machines_used}"
        )
    if problems:
        return issues, notes

    schedule = IntervalSchedule(instance, tuple(raw))
    if dump.get("migrations") != schedule.migrations:
        issues.append(
            f"migrations recorded as {dump.get('migrations')!r}, recomputed {schedule.migrations}"
        )
    else:
        notes.append(f"migrations = {schedule.migrations} as recorded")

    algorithm = dump.get("algorithm")
    if algorithm == "lbm":
        wanted = mintpt.slot_profile(instance).min_machines
        got = schedule.machines_per_slot()
        if got != wanted:
            issues.append(f"per-slot machines {list(got)} differ from the floor {list(wanted)}")
        else:
            notes.append(f"per-slot machines = {list(got)}")
    elif algorithm == "estf":
        if schedule.migrations:
            issues.append("migrations present in a no-migration schedule")
        else:
            notes.append("no migrations, each job keeps one machine")
    return issues, notes


def cmd_verify(args) -> int:
    instance = _load(args.instance)
    try:
        dump = json.loads(Path(args.dump).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read dump {args.dump}: {exc}") from exc
    if not isinstance(dump, dict) or dump.get("format") != DUMP_FORMAT:
        raise CliError("not a schedule dump")

    kind = "minms" if isinstance(instance, MinMsInstance) else "mintpt"
    if dump.get("kind") != kind:
        raise CliError(f"dump kind {dump.get('kind')!r} does not match instance kind {kind!r}")

    if kind == "minms":
        issues, notes = _verify_minms(instance, dump)
    else:
        issues, notes = _verify_mintpt(instance, dump)

    for note in notes:
        print(f"ok: {note}")
    for issue in issues:
        print(f"FAIL: {issue}")
    if issues:
        print(f"verification failed ({len(issues)} issue(s))")
        return 1
    print("verification passed")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="migsched",
        description="Migration-based scheduling: solvers, benchmarks, and verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="run one algorithm on one instance file")
    solve.add_argument("instance", help="instance file path")
    solve.add_argument("--algorithm", required=True, choices=ALL_ALGORITHMS)
    solve.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    solve.add_argument("--out", help="write the report here instead of stdout")
    solve.add_argument("--dump", help="write the schedule dump (JSON) here")
    solve.add_argument("--oracle-limit", type=int, help="max jobs for the oracle column (0 disables)")
    solve.add_argument("--timings", action="store_true", help="fill the ms column (not reproducible)")
    solve.set_defaults(func=cmd_solve)

    bench = sub.add_parser("bench", help="run a sweep and emit a report")
    bench.add_argument("--family", required=True, choices=("graham", "random-minms", "random-mintpt"))
    bench.add_argument("--algorithms", required=True, help="comma-separated algorithm names")
    bench.add_argument("--m", default="2:10", help="machine count (int or range for graham)")
    bench.add_argument("--n", type=int, default=8, help="job count for random families")
    bench.add_argument("--g", type=int, default=3, help="slot capacity for random-mintpt")
    bench.add_argument("--horizon", type=int, default=10, help="slot horizon for random-mintpt")
    bench.add_argument("--p-min", type=int, default=1)
    bench.add_argument("--p-max", type=int, default=20)
    bench.add_argument("--seeds", default="0:9", help='seed list, e.g. "1:5" or "1,7"; "" for none')
    bench.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    bench.add_argument("--out", help="write the report here instead of stdout")
    bench.add_argument("--oracle-limit", type=int, help="max jobs for the oracle column (0 disables)")
    bench.add_argument("--timings", action="store_true", help="fill the ms column (not reproducible)")
    bench.set_defaults(func=cmd_bench)

    gen = sub.add_parser("gen", help="generate an instance file")
    gen.add_argument("--family", required=True, choices=("graham", "random-minms", "random-mintpt"))
    gen.add_argument("--m", type=int, default=2, help="machine count")
    gen.add_argument("--n", type=int, default=8, help="job count for random families")
    gen.add_argument("--g", type=int, default=3, help="slot capacity for random-mintpt")
    gen.add_argument("--horizon", type=int, default=10, help="slot horizon for random-mintpt")
    gen.add_argument("--p-min", type=int, default=1)
    gen.add_argument("--p-max", type=int, default=20)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", help="write the instance here instead of stdout")
    gen.set_defaults(func=cmd_gen)

    verify = sub.add_parser("verify", help="re-check a schedule dump against its instance")
    verify.add_argument("instance", help="instance file path")
    verify.add_argument("dump", help="schedule dump path")
    verify.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, InstanceFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
