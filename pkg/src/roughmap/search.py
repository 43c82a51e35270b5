"""Exhaustive counterexample search over bounded universes.

Instances are enumerated in one canonical order: increasing |U|, then |V|,
then the map table, then the partition encodings, then the subset mask.
`falsify` stops at the first failing instance; `verify` sweeps the whole
space.  Work is sharded by (claim, |U|, |V|, map) groups; workers process
whole groups and results are merged in group order, so the first
counterexample and every tally are independent of the worker count.

falsify enumerates one map per codomain-relabeling orbit (relabeling V
commutes with every claim); verify enumerates all maps.
"""

from __future__ import annotations

import itertools
import os
import time
from dataclasses import dataclass, field
from typing import Iterator, Optional

from .claims import Claim, GroupContext, Instance, Outcome, get_claim, evaluate_raw
from .enumeration import iter_canonical_surjections, iter_canonical_tables, iter_rgs, iter_surjections, iter_tables
from .mappings import SurjMap
from .structures import Partition, Subset, Universe

DEFAULT_MAX_FAILURES = 20


@dataclass(frozen=True)
class RawInstance:
    """Picklable instance encoding; labels are attached only at the IO layer."""

    n: int
    m: int
    table: tuple[int, ...]
    partitions: tuple[tuple[int, ...], ...]
    xmask: Optional[int] = None

    def to_instance(self, u: Optional[Universe] = None, v: Optional[Universe] = None) -> Instance:
        u = u or Universe(self.n)
        v = v or Universe(self.m)
        f = SurjMap(u, v, self.table)
        parts = tuple(Partition(u, rgs) for rgs in self.partitions)
        x = Subset(u, self.xmask) if self.xmask is not None else None
        return Instance(f, parts, x)


@dataclass
class Tally:
    holds: int = 0
    fails: int = 0
    ill_typed: int = 0
    vacuous: int = 0

    def add(self, other: "Tally") -> None:
        self.holds += other.holds
        self.fails += other.fails
        self.ill_typed += other.ill_typed
        self.vacuous += other.vacuous

    @property
    def total(self) -> int:
        return self.holds + self.fails + self.ill_typed + self.vacuous

    def as_dict(self) -> dict[str, int]:
        return {
            "holds": self.holds,
            "fails": self.fails,
            "ill_typed": self.ill_typed,
            "vacuous": self.vacuous,
        }


@dataclass
class SearchReport:
    claim_id: str
    mode: str  # falsify | verify
    max_u: int
    max_v: int
    tally: Tally
    first_counterexample: Optional[RawInstance] = None
    witness: Optional[dict] = None
    failures: list[tuple[RawInstance, dict]] = field(default_factory=list)
    ill_typed_reason: Optional[str] = None
    groups: int = 0
    elapsed_s: float = 0.0
    workers: int = 1

    @property
    def instances(self) -> int:
        return self.tally.total

    @property
    def found(self) -> bool:
        return self.tally.fails > 0


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("ROUGHMAP_WORKERS", "1")))
    except ValueError:
        return 1


def _map_tables(claim: Claim, n: int, max_v: int, canonical: bool) -> Iterator[tuple[int, tuple[int, ...]]]:
    """(m, table) pairs for one |U| in canonical order."""
    if claim.map_constraint == "bijective":
        if n <= max_v:
            tables = [tuple(range(n))] if canonical else itertools.permutations(range(n))
            for t in tables:
                yield n, tuple(t)
        return
    if claim.map_constraint == "surjective":
        for m in range(1, min(n, max_v) + 1):
            src = iter_canonical_surjections(n, m) if canonical else iter_surjections(n, m)
            for t in src:
                yield m, t
        return
    for m in range(1, max_v + 1):
        src = iter_canonical_tables(n, m) if canonical else iter_tables(n, m)
        for t in src:
            yield m, t


def _groups(claim: Claim, max_u: int, max_v: int, canonical: bool) -> Iterator[tuple[int, int, tuple[int, ...]]]:
    for n in range(1, max_u + 1):
        for m, table in _map_tables(claim, n, max_v, canonical):
            yield n, m, table


def _group_instances(claim: Claim, n: int) -> Iterator[tuple]:
    """(rgs1, rgs2, xmask) triples in canonical order for one group."""
    if claim.partitions == 2:
        for rgs1 in iter_rgs(n):
            for rgs2 in iter_rgs(n):
                yield rgs1, rgs2, None
    elif claim.needs_subset:
        for rgs1 in iter_rgs(n):
            for xmask in range(1 << n):
                yield rgs1, None, xmask
    else:
        for rgs1 in iter_rgs(n):
            yield rgs1, None, None


_OUTCOME_SLOT = {
    Outcome.HOLDS: "holds",
    Outcome.FAILS: "fails",
    Outcome.ILL_TYPED: "ill_typed",
    Outcome.VACUOUS: "vacuous",
}


def _run_group(args: tuple) -> tuple[Tally, list[tuple[RawInstance, dict]], Optional[str]]:
    """Evaluate every instance of one (claim, n, m, table) group.

    Returns (tally, failures capped at max_failures, first ill-typed reason).
    In stop-on-fail mode the tally covers instances up to and including the
    first failure only.
    """
    claim_id, n, m, table, stop_on_fail, max_failures = args
    claim = get_claim(claim_id)
    ctx = GroupContext(n, m, table)
    tally = Tally()
    fails: list[tuple[RawInstance, dict]] = []
    reason: Optional[str] = None
    for rgs1, rgs2, xmask in _group_instances(claim, n):
        verdict = evaluate_raw(claim_id, ctx, rgs1, rgs2, xmask)
        slot = _OUTCOME_SLOT[verdict.outcome]
        setattr(tally, slot, getattr(tally, slot) + 1)
        if verdict.outcome is Outcome.ILL_TYPED and reason is None:
            reason = verdict.reason
        if verdict.outcome is Outcome.FAILS:
            if len(fails) < max_failures:
                parts = (rgs1,) if rgs2 is None else (rgs1, rgs2)
                fails.append((RawInstance(n, m, table, parts, xmask), verdict.witness))
            if stop_on_fail:
                break
    return tally, fails, reason


def _run(
    claim: Claim,
    max_u: int,
    max_v: int,
    mode: str,
    workers: Optional[int],
    max_failures: int,
) -> SearchReport:
    start = time.perf_counter()
    workers = default_workers() if workers is None else max(1, workers)
    stop_on_fail = mode == "falsify"
    canonical = mode == "falsify"
    group_args = (
        (claim.id, n, m, table, stop_on_fail, max_failures)
        for n, m, table in _groups(claim, max_u, max_v, canonical)
    )

    report = SearchReport(claim.id, mode, max_u, max_v, Tally(), workers=workers)

    def merge(result) -> bool:
        tally, fails, reason = result
        report.groups += 1
        report.tally.add(tally)
        if reason is not None and report.ill_typed_reason is None:
            report.ill_typed_reason = reason
        if fails:
            space = max_failures - len(report.failures)
            report.failures.extend(fails[:space])
            if report.first_counterexample is None:
                report.first_counterexample, report.witness = fails[0]
            if stop_on_fail:
                return True
        return False

    if workers == 1:
        for args in group_args:
            if merge(_run_group(args)):
                break
    else:
        from collections import deque
        from concurrent.futures import ProcessPoolExecutor

        # bounded window of in-flight groups, merged strictly in submission
        # order; on early stop the unstarted tail is cancelled and at most
        # `workers` running groups are discarded
        with ProcessPoolExecutor(max_workers=workers) as pool:
            pending: deque = deque()
            exhausted = False
            while True:
                while not exhausted and len(pending) < workers * 4:
                    args = next(group_args, None)
                    if args is None:
                        exhausted = True
                        break
                    pending.append(pool.submit(_run_group, args))
                if not pending:
                    break
                if merge(pending.popleft().result()):
                    for fut in pending:
                        fut.cancel()
                    break

    report.elapsed_s = time.perf_counter() - start
    return report


def falsify(
    claim,
    max_u: int,
    max_v: int,
    workers: Optional[int] = None,
    max_failures: int = DEFAULT_MAX_FAILURES,
) -> SearchReport:
    """Scan in canonical order until the first failing instance.

    Maps are enumerated one per codomain-relabeling orbit.  The returned
    first_counterexample (and all tallies) are worker-count independent.
    """
    claim = get_claim(claim)
    if max_u < 1 or max_v < 1:
        raise ValueError("bounds must be at least 1")
    return _run(claim, max_u, max_v, "falsify", workers, max_failures)


def verify(
    claim,
    max_u: int,
    max_v: Optional[int] = None,
    workers: Optional[int] = None,
    max_failures: int = DEFAULT_MAX_FAILURES,
) -> SearchReport:
    """Sweep the entire bounded space, no early stop, all maps (no
    symmetry reduction); failures are collected up to max_failures."""
    claim = get_claim(claim)
    if max_v is None:
        max_v = max_u
    if max_u < 1 or max_v < 1:
        raise ValueError("bounds must be at least 1")
    return _run(claim, max_u, max_v, "verify", workers, max_failures)
