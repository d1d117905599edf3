"""Sum-networks from undirected seed graphs.

Build the network, bound its capacity exactly, solve the integer split
system, synthesize the capacity-achieving linear code over any prime
field, and verify the result by simulation or algebraic composition.
"""

from .codegen import (
    DecodingPlan,
    LinearCode,
    Step,
    Term,
    achieved_rate,
    repeat_code,
    synthesize_code,
)
from .feasibility import (
    CheckResult,
    FeasAssignment,
    biregular_assignment,
    check_assignment,
    regular_assignment,
    solve_feasibility,
)
from .ffield import Field, FieldMatrix, field_new, mat_mul, mat_vec, vstack
from .graph import (
    CycleSubgraph,
    GraphClass,
    UndirectedGraph,
    classify,
    euler_tour,
    parse_graph,
    shortest_cycle,
)
from .network import (
    Msg,
    SumNetwork,
    build_sum_network,
    capacity_upper_bound,
    export_dot,
    export_json,
    import_json,
    min_cut,
)
from .verify import (
    DEFAULT_MAX_STATES,
    FailureWitness,
    VerifyReport,
    verify_algebraic,
    verify_exhaustive,
    verify_random,
)

__version__ = "0.1.0"
