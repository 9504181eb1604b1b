"""vcbench: vertex-cut graph partitioning strategies, partitioning-quality
metrics, and a single-machine BSP engine with exact message accounting,
plus a benchmark harness correlating the metrics with execution cost."""

from .graphcore import (DatasetProfile, Diameter, Graph, canonicalize_undirected,
                        load_edge_list, profile)
from .partition import (ALL_STRATEGIES, PartitionAssignment, PartitionMetrics,
                        ReplicationTable, Strategy, compute_metrics,
                        partition_edges, replication_table)
from .engine import (RunCounters, VertexCutGraph, VertexProgram,
                     build_vertex_cut, run_pregel)
from .algorithms import (connected_components, pagerank, shortest_paths,
                         triangle_count)
from .harness import (CorrelationReport, ExperimentManifest, MetricsRow,
                      RunRecord, correlate, emit_report, pearson,
                      run_experiment)

__all__ = [
    "ALL_STRATEGIES",
    "CorrelationReport",
    "DatasetProfile",
    "Diameter",
    "ExperimentManifest",
    "Graph",
    "MetricsRow",
    "PartitionAssignment",
    "PartitionMetrics",
    "ReplicationTable",
    "RunCounters",
    "RunRecord",
    "Strategy",
    "VertexCutGraph",
    "VertexProgram",
    "build_vertex_cut",
    "canonicalize_undirected",
    "compute_metrics",
    "connected_components",
    "correlate",
    "emit_report",
    "load_edge_list",
    "pagerank",
    "partition_edges",
    "pearson",
    "profile",
    "replication_table",
    "run_experiment",
    "run_pregel",
    "shortest_paths",
    "triangle_count",
]
