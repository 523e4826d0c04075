"""Deterministic cellular call-admission simulator.

Compares a plain blocking system (reject everything past the home BSC's
channel pool) against round-robin handover load balancing across neighbor
BSCs, plus the analytical Erlang B machinery to put the measured blocking
rates in context.
"""

from .engine import (
    CallRecord,
    ComparisonReport,
    Disposition,
    LbParams,
    ReadyQueue,
    SimulationReport,
    compare_systems,
    compute_quantum,
    simulate_load_balanced,
    simulate_normal,
    slice_execution_time,
)
from .teletraffic import (
    BlockingCurvePoint,
    OfferedLoad,
    blocking_sweep,
    empirical_blocking,
    erlang_b,
    format_blocking_csv,
)
from .topology import (
    BscConfig,
    BscId,
    ChannelLedger,
    NetworkTopology,
    TopologyConfig,
    build_topology,
    neighbor_ids,
)
from .traffic import (
    CallRequest,
    WorkloadParams,
    average_arrival_range,
    export_workload,
    generate_workload,
    import_workload,
)

__version__ = "0.1.0"

__all__ = [
    "BlockingCurvePoint",
    "BscConfig",
    "BscId",
    "CallRecord",
    "CallRequest",
    "ChannelLedger",
    "ComparisonReport",
    "Disposition",
    "LbParams",
    "NetworkTopology",
    "OfferedLoad",
    "ReadyQueue",
    "SimulationReport",
    "TopologyConfig",
    "WorkloadParams",
    "average_arrival_range",
    "blocking_sweep",
    "build_topology",
    "compare_systems",
    "compute_quantum",
    "empirical_blocking",
    "erlang_b",
    "export_workload",
    "format_blocking_csv",
    "generate_workload",
    "import_workload",
    "neighbor_ids",
    "simulate_load_balanced",
    "simulate_normal",
    "slice_execution_time",
]
