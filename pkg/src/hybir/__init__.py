"""Two-partition hybrid betweenness centrality with border-matrix refinement."""

from .backward import BackwardReport, accumulate_bc, backward_phase
from .border_matrix import (
    BorderMatrices,
    compute_border_matrices,
    estimate_memory,
    load_border_matrices,
    save_border_matrices,
)
from .engine import (
    RunConfig,
    RunResult,
    build_report,
    pipeline_sources,
    run_bc,
    run_bsp_baseline_source,
)
from .errors import (
    ContractViolation,
    DomainError,
    FormatError,
    HybirError,
    InputError,
    ParseError,
)
from .estimator import HybridBetweenness
from .forward import BorderFrontier, ForwardReport, SourceState, forward_phase, refine_border_distances
from .graph import (
    Graph,
    as_graph,
    from_edges,
    graph_stats,
    load_dimacs_gr,
    load_edge_list,
    write_edge_list,
)
from .ledger import CommEvent, CommLedger
from .oracle import OracleResult, brandes_bc, brute_force_bc
from .partition import (
    BorderSet,
    Partition,
    calibrate_ratio,
    greedy_bipartition,
    identify_borders,
    import_partition,
)
from .relax import initial_relax

__version__ = "0.1.0"
