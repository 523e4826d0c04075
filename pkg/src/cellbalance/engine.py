"""The two admission systems under comparison.

Normal system: serve arrivals from the home controller's pool, block the
rest outright. Each examined request costs arrival time plus a fixed
waiting time on the system clock, whether it ends up served or rejected.

Load-balanced system: identical home admission, but overloaded requests
enter a round-robin ready queue. Each pass grants the head call one
quantum of handover processing; unfinished calls re-enqueue at the tail,
finished ones take a channel on the next neighbor controller in rotation.
When the neighbor pools run dry, whatever is still queued is blocked.
"""

from collections import deque
from dataclasses import dataclass, field
from enum import Enum

from .topology import HOME_BSC, BscId, ChannelLedger, NetworkTopology, neighbor_ids
from .traffic import CallRequest, average_arrival_range

DEFAULT_CONTEXT_SWITCH_MS = 0.1
DEFAULT_WAITING_MS = 3.0

NORMAL = "normal"
LOAD_BALANCED = "load_balanced"


class Disposition(Enum):
    ACCEPTED_HOME = "accepted_home"
    HANDED_OVER = "handed_over"
    BLOCKED = "blocked"


@dataclass(frozen=True)
class CallRecord:
    """Outcome of one call. Blocked calls carry zero time and zero slices
    even if they sat in the ready queue for a while before draining."""

    call_id: int
    disposition: Disposition
    serving_bsc: BscId | None
    execution_time_ms: float
    slices_used: int


@dataclass(frozen=True)
class LbParams:
    context_switch_ms: float = DEFAULT_CONTEXT_SWITCH_MS
    waiting_ms: float = DEFAULT_WAITING_MS
    quantum_override_ms: float | None = None

    def __post_init__(self) -> None:
        if self.context_switch_ms < 0:
            raise ValueError(f"context_switch_ms = {self.context_switch_ms}, need >= 0")
        if self.waiting_ms < 0:
            raise ValueError(f"waiting_ms = {self.waiting_ms}, need >= 0")
        if self.quantum_override_ms is not None and self.quantum_override_ms <= 0:
            raise ValueError(
                f"quantum_override_ms = {self.quantum_override_ms}, need > 0"
            )


@dataclass
class ReadyQueue:
    """FIFO of (call id, remaining demand ms) with a fixed service quantum."""

    quantum_ms: float
    context_switch_ms: float = DEFAULT_CONTEXT_SWITCH_MS
    entries: deque = field(default_factory=deque)

    def __post_init__(self) -> None:
        if self.quantum_ms <= 0:
            raise ValueError(f"quantum_ms = {self.quantum_ms}, need > 0")
        if self.context_switch_ms < 0:
            raise ValueError(f"context_switch_ms = {self.context_switch_ms}, need >= 0")

    def __len__(self) -> int:
        return len(self.entries)

    def push(self, call_id: int, remaining_demand_ms: float) -> None:
        if remaining_demand_ms <= 0:
            raise ValueError(
                f"call {call_id}: remaining demand {remaining_demand_ms} must be > 0"
            )
        self.entries.append((call_id, remaining_demand_ms))

    def pop(self) -> tuple[int, float]:
        return self.entries.popleft()

    def serve_head(self) -> tuple[int, float]:
        """Grant the head call one quantum; return (call id, demand left after)."""
        call_id, remaining = self.entries.popleft()
        return call_id, remaining - self.quantum_ms


@dataclass(frozen=True)
class SimulationReport:
    system: str
    records: tuple[CallRecord, ...]
    accepted_home: int
    handed_over: int
    blocked: int
    per_bsc_handled: dict[BscId, int]
    total_execution_time_ms: float
    empirical_blocking: float
    quantum_ms: float | None = None


@dataclass(frozen=True)
class ComparisonReport:
    normal: SimulationReport
    load_balanced: SimulationReport
    blocking_delta_pp: float
    execution_time_delta_ms: float
    per_bsc_handled: dict[BscId, int]


def compute_quantum(avg_arrival_range_ms: float, ready_queue_size: float) -> float:
    """Optimum round-robin quantum: mean arrival time of the queued calls
    divided by the ready-queue size."""
    if avg_arrival_range_ms <= 0:
        raise ValueError(f"avg_arrival_range_ms = {avg_arrival_range_ms}, need > 0")
    if ready_queue_size <= 0:
        raise ValueError(f"ready_queue_size = {ready_queue_size}, need > 0")
    return avg_arrival_range_ms / ready_queue_size


def slice_execution_time(quantum_ms: float, context_switch_ms: float) -> float:
    """Cost of one round-robin pass: the quantum plus the fixed switch overhead."""
    return quantum_ms + context_switch_ms


def _check_sorted(calls: list[CallRequest]) -> None:
    for prev, cur in zip(calls, calls[1:]):
        if cur.arrival_time_ms < prev.arrival_time_ms:
            raise ValueError(
                f"calls not sorted by arrival: call {cur.id} at "
                f"{cur.arrival_time_ms} ms after call {prev.id} at {prev.arrival_time_ms} ms"
            )


def _build_report(
    system: str,
    records: list[CallRecord],
    topology: NetworkTopology,
    total_execution_time_ms: float,
    quantum_ms: float | None = None,
) -> SimulationReport:
    counts = {d: 0 for d in Disposition}
    per_bsc = {b.id: 0 for b in topology.bscs}
    for rec in records:
        counts[rec.disposition] += 1
        if rec.serving_bsc is not None:
            per_bsc[rec.serving_bsc] += 1
    total = len(records)
    blocked = counts[Disposition.BLOCKED]
    return SimulationReport(
        system=system,
        records=tuple(records),
        accepted_home=counts[Disposition.ACCEPTED_HOME],
        handed_over=counts[Disposition.HANDED_OVER],
        blocked=blocked,
        per_bsc_handled=per_bsc,
        total_execution_time_ms=total_execution_time_ms,
        empirical_blocking=blocked / total if total else 0.0,
        quantum_ms=quantum_ms,
    )


def simulate_normal(
    topology: NetworkTopology,
    calls: list[CallRequest],
    waiting_ms: float = DEFAULT_WAITING_MS,
) -> SimulationReport:
    """Admission without load balancing: home channels first come, first
    served; everything past the pool is blocked.

    The system clock charges arrival + waiting for every examined request;
    blocked requests spend that time too before rejection, but their
    records carry zero execution time since they received no service.
    """
    _check_sorted(calls)
    ledger = ChannelLedger.from_topology(topology)
    records = []
    total = 0.0
    for call in calls:
        total += call.arrival_time_ms + waiting_ms
        if ledger.available(HOME_BSC) > 0:
            ledger.assign(HOME_BSC)
            records.append(
                CallRecord(
                    call_id=call.id,
                    disposition=Disposition.ACCEPTED_HOME,
                    serving_bsc=HOME_BSC,
                    execution_time_ms=call.arrival_time_ms + waiting_ms,
                    slices_used=0,
                )
            )
        else:
            records.append(
                CallRecord(
                    call_id=call.id,
                    disposition=Disposition.BLOCKED,
                    serving_bsc=None,
                    execution_time_ms=0.0,
                    slices_used=0,
                )
            )
    return _build_report(NORMAL, records, topology, total)


def _blocked_record(call_id: int) -> CallRecord:
    return CallRecord(
        call_id=call_id,
        disposition=Disposition.BLOCKED,
        serving_bsc=None,
        execution_time_ms=0.0,
        slices_used=0,
    )


def _next_free_neighbor(
    ledger: ChannelLedger, neighbors: list[BscId], start: int
) -> int | None:
    """Index into neighbors of the first free pool at or after start, cyclically."""
    for offset in range(len(neighbors)):
        idx = (start + offset) % len(neighbors)
        if ledger.available(neighbors[idx]) > 0:
            return idx
    return None


def simulate_load_balanced(
    topology: NetworkTopology,
    calls: list[CallRequest],
    params: LbParams | None = None,
) -> SimulationReport:
    """Admission with round-robin handover of the overload to neighbor BSCs.

    Home admission is identical to the normal system. Overflow calls form
    the ready queue in arrival order; the quantum comes from the queued
    calls' mean arrival time over the queue size unless overridden. Each
    pass costs one quantum plus the context switch; a call that finishes
    its demand takes a channel on the next neighbor in rotation (skipping
    exhausted pools, advancing one position per assignment). Once no
    neighbor has a channel left, the rest of the queue is blocked.
    """
    if params is None:
        params = LbParams()
    _check_sorted(calls)
    ledger = ChannelLedger.from_topology(topology)
    neighbors = neighbor_ids(topology)
    records: dict[int, CallRecord] = {}
    total = 0.0
    overflow: list[CallRequest] = []

    for call in calls:
        if ledger.available(HOME_BSC) > 0:
            ledger.assign(HOME_BSC)
            exec_time = call.arrival_time_ms + params.waiting_ms
            records[call.id] = CallRecord(
                call_id=call.id,
                disposition=Disposition.ACCEPTED_HOME,
                serving_bsc=HOME_BSC,
                execution_time_ms=exec_time,
                slices_used=0,
            )
            total += exec_time
        else:
            overflow.append(call)

    quantum = None
    if overflow:
        if params.quantum_override_ms is not None:
            quantum = params.quantum_override_ms
        else:
            quantum = compute_quantum(
                average_arrival_range(overflow), float(len(overflow))
            )
        slice_cost = slice_execution_time(quantum, params.context_switch_ms)

        queue = ReadyQueue(quantum_ms=quantum, context_switch_ms=params.context_switch_ms)
        for call in overflow:
            queue.push(call.id, call.demand_ms)
        slices: dict[int, int] = {call.id: 0 for call in overflow}
        rotation = 0

        while len(queue):
            if ledger.total_remaining(neighbors) == 0:
                while len(queue):
                    call_id, _ = queue.pop()
                    records[call_id] = _blocked_record(call_id)
                break
            call_id, remaining = queue.serve_head()
            slices[call_id] += 1
            if remaining > 0:
                queue.push(call_id, remaining)
                continue
            # demand met within this slice: hand the call over
            idx = _next_free_neighbor(ledger, neighbors, rotation)
            target = neighbors[idx]
            ledger.assign(target)
            rotation = (idx + 1) % len(neighbors)
            exec_time = slices[call_id] * slice_cost
            records[call_id] = CallRecord(
                call_id=call_id,
                disposition=Disposition.HANDED_OVER,
                serving_bsc=target,
                execution_time_ms=exec_time,
                slices_used=slices[call_id],
            )
            total += exec_time

    ordered = [records[call.id] for call in calls]
    return _build_report(LOAD_BALANCED, ordered, topology, total, quantum_ms=quantum)


def compare_systems(
    topology: NetworkTopology,
    calls: list[CallRequest],
    params: LbParams | None = None,
) -> ComparisonReport:
    """Run both systems on the identical workload and report the deltas."""
    if params is None:
        params = LbParams()
    ns = simulate_normal(topology, calls, waiting_ms=params.waiting_ms)
    lb = simulate_load_balanced(topology, calls, params)
    return ComparisonReport(
        normal=ns,
        load_balanced=lb,
        blocking_delta_pp=(ns.empirical_blocking - lb.empirical_blocking) * 100.0,
        execution_time_delta_ms=ns.total_execution_time_ms - lb.total_execution_time_ms,
        per_bsc_handled=dict(lb.per_bsc_handled),
    )
