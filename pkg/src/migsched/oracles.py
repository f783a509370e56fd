"""Exhaustive exact solvers on small instances.

These are the ground truth that the approximation and optimality claims are
measured against. Both searches are deterministic, refuse inputs above their
configured limits, and are written independently of the production solvers:
their internal greedy upper bounds are self-contained so a bug in a solver
cannot leak into the oracle that checks it.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

from .core import MinMsInstance, TimeValue
from .mintpt import IntervalInstance

__all__ = [
    "OracleLimits",
    "InstanceTooLargeError",
    "MINMS_LIMITS",
    "MINTPT_LIMITS",
    "exact_minms",
    "exact_mintpt",
]


class InstanceTooLargeError(ValueError):
    """Exhaustive search refused: the instance exceeds the oracle limits."""


@dataclass(frozen=True)
class OracleLimits:
    """Size gate for the exhaustive solvers."""

    max_jobs: int
    max_machines: int = 4

    def __post_init__(self) -> None:
        if self.max_jobs < 1 or self.max_machines < 1:
            raise ValueError("oracle limits must be positive")


MINMS_LIMITS = OracleLimits(max_jobs=10, max_machines=4)
MINTPT_LIMITS = OracleLimits(max_jobs=8, max_machines=4)


def exact_minms(instance: MinMsInstance, limits: OracleLimits = MINMS_LIMITS) -> TimeValue:
    """Minimum makespan over all whole-job assignments, by branch and bound.

    Jobs are placed in non-increasing size order; identical intermediate
    loads are explored once (machine symmetry), and branches that already
    match the best known makespan are cut. Process times are scaled to
    integers by the common denominator, so all comparisons stay exact.
    """
    n = len(instance.jobs)
    m = instance.machine_count
    if n > limits.max_jobs:
        raise InstanceTooLargeError(f"{n} jobs exceed the oracle limit of {limits.max_jobs}")
    if m > limits.max_machines:
        raise InstanceTooLargeError(
            f"{m} machines exceed the oracle limit of {limits.max_machines}"
        )

    scale = math.lcm(*(j.process_time.denominator for j in instance.jobs))
    sizes = sorted(
        (j.process_time.numerator * (scale // j.process_time.denominator) for j in instance.jobs),
        reverse=True,
    )

    # Self-contained greedy (largest job to least-loaded machine) seeds the
    # upper bound with an achievable makespan.
    heap = [(0, i) for i in range(m)]
    for size in sizes:
        load, i = heapq.heappop(heap)
        heapq.heappush(heap, (load + size, i))
    best = max(load for load, _ in heap)

    loads = [0] * m

    def place(k: int) -> None:
        nonlocal best
        if k == n:
            best = min(best, max(loads))
            return
        size = sizes[k]
        tried: set[int] = set()
        for i in range(m):
            load = loads[i]
            if load in tried or load + size >= best:
                continue
            tried.add(load)
            loads[i] = load + size
            place(k + 1)
            loads[i] = load

    place(0)
    return Fraction(best, scale)


def exact_mintpt(instance: IntervalInstance, limits: OracleLimits = MINTPT_LIMITS) -> int:
    """Minimum total power-on time over all non-migratory assignments.

    Enumerates job-to-machine assignments (each job keeps one machine for its
    whole interval) with machine-index symmetry breaking: a job may only open
    the next unused machine. Capacity g is enforced per slot; cost counts
    each machine's busy slots. Branches at or above the best known total are
    cut. At most n machines are ever needed.
    """
    n = len(instance.jobs)
    if n > limits.max_jobs:
        raise InstanceTooLargeError(f"{n} jobs exceed the oracle limit of {limits.max_jobs}")
    if n == 0:
        return 0

    g = instance.capacity
    jobs = sorted(instance.jobs, key=lambda j: (j.start_slot, j.id))
    masks = [sum(1 << s for s in job.slots) for job in jobs]

    # Self-contained first-fit by start time seeds the upper bound.
    occupancy: list[list[int]] = []
    horizon = instance.horizon
    fit_busy: list[int] = []
    for job, mask in zip(jobs, masks):
        k = 0
        while k < len(occupancy) and any(occupancy[k][s] >= g for s in job.slots):
            k += 1
        if k == len(occupancy):
            occupancy.append([0] * horizon)
            fit_busy.append(0)
        for s in job.slots:
            occupancy[k][s] += 1
        fit_busy[k] |= mask
    best = sum(busy.bit_count() for busy in fit_busy)

    busy = [0] * n
    counts = [[0] * horizon for _ in range(n)]

    def place(k: int, used: int, cost: int) -> None:
        nonlocal best
        if k == n:
            best = min(best, cost)
            return
        mask = masks[k]
        slots = jobs[k].slots
        for i in range(min(used + 1, n)):
            if any(counts[i][s] >= g for s in slots):
                continue
            added = (mask & ~busy[i]).bit_count()
            if cost + added >= best:
                continue
            busy[i] |= mask
            for s in slots:
                counts[i][s] += 1
            place(k + 1, max(used, i + 1), cost + added)
            for s in slots:
                counts[i][s] -= 1
                if counts[i][s] == 0:
                    busy[i] &= ~(1 << s)

    place(0, 0, 0)
    return best
