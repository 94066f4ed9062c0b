"""Priority-aware multi-robot coverage path planning on 2x2-block grids."""

from .assignment import (
    Assignment,
    CostTables,
    brute_force_assign,
    compute_cost_tables,
    greedy_assign,
    local_search,
    surrogate_latency,
)
from .evaluate import Metrics, PlanError, baseline_plan, evaluate, lex_compare, validate_plan, zone_coverage_times
from .generate import PlacementError, generate_instance, with_random_robots
from .graph import (
    GraphError,
    HyperTree,
    circumnavigate,
    dijkstra,
    grid_shortest_path,
    kruskal_mst,
    steiner_tree,
)
from .instance import (
    GridMap,
    HyperGraph,
    Instance,
    InstanceError,
    SolverConfig,
    Zone,
    build_hypergraph,
    parse_instance,
    serialize_instance,
    zone_hypervertices,
)
from .planner import Phase1Plan, build_zone_trees, plan_phase1, sequential_tree_traversal
from .residual import FullPlan, ResidualPlan, min_max_split, plan_phase2, residual_set
from .solver import Solution, solve

__version__ = "0.1.0"
