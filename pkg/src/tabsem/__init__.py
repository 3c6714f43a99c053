"""Word-indexed tables over semirings, the memorized semiring and shortest paths with addresses."""
from .errors import TabsemError
from .memorized import MemorizedValue, mem, mem_plus, mem_times, phi
from .scalars import (
    BinaryLaw,
    SemiringSpec,
    check_semiring_axioms,
    parse_semiring,
    semiring_instance,
)
from .semimatrix import (
    SquareMatrix,
    WeightedGraph,
    apsp_with_addresses,
    mat_closure,
    mat_mul,
    path_weight,
)
from .tables import (
    Table,
    convolution,
    decompose,
    map_indices,
    mass,
    pointwise,
    prune,
    table_equal,
    table_from_columns,
)

__all__ = [
    "BinaryLaw", "MemorizedValue", "SemiringSpec", "SquareMatrix", "Table", "TabsemError",
    "WeightedGraph", "apsp_with_addresses", "check_semiring_axioms", "convolution", "decompose",
    "map_indices", "mass", "mat_closure", "mat_mul", "mem", "mem_plus", "mem_times",
    "parse_semiring", "path_weight", "phi", "pointwise", "prune", "semiring_instance",
    "table_equal", "table_from_columns",
]
__version__ = "0.1.0"
