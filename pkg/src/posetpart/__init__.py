"""posetpart: monotone, regular, and open partitions of finite posets.

Three equivalent views of each partition notion are implemented and cross
checked against each other: ordered blocks, quasiorders extending the base
order, and fibres of structured surjections.
"""

from .enumeration import (CrossCheckReport, EnumerationReport, count,
                          cross_check, enumerate_partitions,
                          enumerate_partitions_via_fibres,
                          enumerate_set_partitions, monotone_block_orders)
from .errors import PosetError
from .maps import (EPI_REGULAR_MONO, REGULAR_EPI_MONO, Factorisation, PosetMap,
                   compose, factorize, fibre_partition, is_fibre_coherent,
                   is_injective, is_open_map, is_order_preserving,
                   is_order_reflecting, is_surjective, kernel_pair, make_map,
                   order_preserving_assignments, regular_epi_oracle)
from .partition import (OrderedPartition, PartitionClass, SetPartition,
                        blocks_are_blockwise_classes, blockwise_quasiorder,
                        classify, is_monotone, is_open, is_regular,
                        make_set_partition, open_order, partition_from_block_of,
                        regular_order, upper_sets_are_block_unions)
from .poset import (Element, Poset, Relation, all_posets, generate,
                    is_partial_order, make_poset, transitive_closure,
                    transitive_extensions, up_down_set)
from .quasiorder import (Quasiorder, enumerate_extending_quasiorders,
                         equivalence_classes, extends_order,
                         induced_poset_of_classes, is_quasiorder,
                         satisfies_openness_condition,
                         satisfies_regularity_condition, surplus_pairs)

__version__ = "0.1.0"

__all__ = [
    "CrossCheckReport", "Element", "EnumerationReport", "EPI_REGULAR_MONO",
    "Factorisation", "OrderedPartition", "PartitionClass", "Poset",
    "PosetError", "PosetMap", "Quasiorder", "REGULAR_EPI_MONO", "Relation",
    "SetPartition", "all_posets", "blocks_are_blockwise_classes",
    "blockwise_quasiorder", "classify", "compose", "count", "cross_check",
    "enumerate_extending_quasiorders", "enumerate_partitions",
    "enumerate_partitions_via_fibres", "enumerate_set_partitions",
    "equivalence_classes", "extends_order", "factorize", "fibre_partition",
    "generate", "induced_poset_of_classes", "is_fibre_coherent",
    "is_injective", "is_monotone", "is_open", "is_open_map",
    "is_order_preserving", "is_order_reflecting", "is_partial_order",
    "is_quasiorder", "is_regular", "is_surjective", "kernel_pair", "make_map",
    "make_poset", "make_set_partition", "monotone_block_orders", "open_order",
    "order_preserving_assignments", "partition_from_block_of",
    "regular_epi_oracle", "regular_order", "satisfies_openness_condition",
    "satisfies_regularity_condition", "surplus_pairs", "transitive_closure",
    "transitive_extensions", "up_down_set", "upper_sets_are_block_unions",
]
