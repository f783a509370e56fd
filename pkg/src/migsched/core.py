"""Shared data model: exact time arithmetic, jobs, instances, and
segment-level schedules for load balancing across identical machines.

All continuous quantities (process times, loads, makespans) are exact
rationals, never floats, so "load equals the balanced optimum" can be
asserted as a true equality with no tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

__all__ = [
    "TimeValue",
    "InvariantError",
    "as_time",
    "Job",
    "MinMsInstance",
    "JobSegment",
    "MigrationSchedule",
    "segment_violations",
]

# Exact non-negative rational time quantity. Fraction keeps numerator and
# denominator in canonical reduced form (gcd 1, positive denominator) after
# every operation; addition, subtraction, multiplication, division, and
# ordering are all exact.
TimeValue = Fraction


class InvariantError(ValueError):
    """A structural invariant of an instance or schedule is violated."""


def as_time(value: int | str | Fraction) -> TimeValue:
    """Coerce an int, exact string ("7" or "7/2"), or Fraction to a TimeValue.

    Floats are rejected outright: a float that has already drifted cannot be
    recovered, and exact-equality guarantees downstream depend on never
    letting one in.
    """
    if isinstance(value, float):
        raise TypeError(f"refusing inexact float time value {value!r}")
    tv = Fraction(value)
    if tv < 0:
        raise ValueError(f"time values must be non-negative, got {tv}")
    return tv


@dataclass(frozen=True)
class Job:
    """A request with a positive processing time."""

    id: int
    process_time: TimeValue

    def __post_init__(self) -> None:
        if not isinstance(self.id, int) or self.id < 0:
            raise InvariantError(f"job id must be a non-negative integer, got {self.id!r}")
        object.__setattr__(self, "process_time", as_time(self.process_time))
        if self.process_time <= 0:
            raise InvariantError(f"job {self.id}: process time must be positive")


@dataclass(frozen=True)
class MinMsInstance:
    """Sized jobs to be placed on a fixed number of identical machines.

    Machines are dense 0-based indices 0..machine_count-1. Job ids are
    unique; the job tuple order is the canonical instance order used by
    serialization and by the wrap-around scheduler.
    """

    jobs: tuple[Job, ...]
    machine_count: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if not self.jobs:
            raise InvariantError("instance needs at least one job")
        if not isinstance(self.machine_count, int) or self.machine_count < 1:
            raise InvariantError(f"machine count must be a positive integer, got {self.machine_count!r}")
        seen: set[int] = set()
        for job in self.jobs:
            if job.id in seen:
                raise InvariantError(f"duplicate job id {job.id}")
            seen.add(job.id)

    def total_load(self) -> TimeValue:
        """Exact sum of all process times."""
        return sum((j.process_time for j in self.jobs), Fraction(0))

    def jobs_by_id(self) -> dict[int, Job]:
        return {j.id: j for j in self.jobs}


@dataclass(frozen=True)
class JobSegment:
    """A positive portion of one job's load placed on one machine."""

    job_id: int
    machine_id: int
    amount: TimeValue

    def __post_init__(self) -> None:
        if not isinstance(self.machine_id, int) or self.machine_id < 0:
            raise InvariantError(f"machine id must be a non-negative integer, got {self.machine_id!r}")
        object.__setattr__(self, "amount", as_time(self.amount))
        if self.amount <= 0:
            raise InvariantError(f"segment of job {self.job_id}: amount must be positive")


def segment_violations(
    instance: MinMsInstance,
    segments: Iterable[tuple[int, int, Fraction]],
) -> list[str]:
    """Check raw (job_id, machine_id, amount) triples against an instance.

    Returns a list of human-readable violations (empty when consistent):
    unknown jobs, machine ids out of range, non-positive amounts, and per-job
    conservation failures (segment amounts must sum to the process time).
    """
    problems: list[str] = []
    by_id = instance.jobs_by_id()
    totals: dict[int, Fraction] = {jid: Fraction(0) for jid in by_id}
    for job_id, machine_id, amount in segments:
        if job_id not in by_id:
            problems.append(f"segment references unknown job {job_id}")
            continue
        if not 0 <= machine_id < instance.machine_count:
            problems.append(
                f"job {job_id}: machine {machine_id} out of range 0..{instance.machine_count - 1}"
            )
        if amount <= 0:
            problems.append(f"job {job_id}: non-positive segment amount {amount}")
        totals[job_id] += amount
    for job in instance.jobs:
        if totals[job.id] != job.process_time:
            problems.append(
                f"conservation: job {job.id} segments sum to {totals[job.id]}, "
                f"process time is {job.process_time}"
            )
    return problems


@dataclass(frozen=True)
class MigrationSchedule:
    """Per-machine placement of job load, allowing jobs to be split.

    Invariants (checked at construction):
      - every referenced job exists in the instance,
      - machine ids fall in [0, machine_count),
      - per job, segment amounts sum exactly to its process time.

    A job split into k segments accounts for k-1 migrations; a schedule that
    keeps every job whole has zero migrations. Segment tuple order is
    meaningful: within one machine it is execution order for schedules that
    are read as timetables (see minms.timeline).
    """

    instance: MinMsInstance
    segments: tuple[JobSegment, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "segments", tuple(self.segments))
        problems = segment_violations(
            self.instance, [(s.job_id, s.machine_id, s.amount) for s in self.segments]
        )
        if problems:
            raise InvariantError("; ".join(problems))

    @property
    def migrations(self) -> int:
        """Count of segments beyond one per job."""
        return len(self.segments) - len(self.instance.jobs)

    def machine_loads(self) -> tuple[TimeValue, ...]:
        """Exact load per machine, indexed 0..machine_count-1."""
        loads = [Fraction(0)] * self.instance.machine_count
        for seg in self.segments:
            loads[seg.machine_id] += seg.amount
        return tuple(loads)

    def makespan(self) -> TimeValue:
        """Maximum machine load."""
        return max(self.machine_loads())
