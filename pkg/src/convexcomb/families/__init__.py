from .matroid import (
    MatroidSpec,
    matroid_edge_directions,
    matroid_family,
    matroid_greedy,
    matroid_independent,
)
from .partition import (
    Partition,
    ShapedPartitionInstance,
    cluster_variance,
    clustering_to_instance,
    partition_edge_directions,
    partition_family,
    partition_linear_opt,
    partition_weighting,
    transportation_circuits,
)
from .powerset import powerset_edge_directions, powerset_family, powerset_linear_opt, psd_qap_to_instance

__all__ = [
    "MatroidSpec",
    "Partition",
    "ShapedPartitionInstance",
    "cluster_variance",
    "clustering_to_instance",
    "matroid_edge_directions",
    "matroid_family",
    "matroid_greedy",
    "matroid_independent",
    "partition_edge_directions",
    "partition_family",
    "partition_linear_opt",
    "partition_weighting",
    "powerset_edge_directions",
    "powerset_family",
    "powerset_linear_opt",
    "psd_qap_to_instance",
    "transportation_circuits",
]
