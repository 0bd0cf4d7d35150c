"""Exact tools for perfect tilings of k-uniform hypergraphs."""

from .budget import DEFAULT_BUDGET, Budget
from .constructions import (
    ConstructionCertificate,
    mubayi_graph,
    parity_construction,
    space_barrier,
    strengthened_barrier,
)
from .errors import (
    DomainError,
    FormatError,
    InvalidProfileError,
    NotPartiteError,
    ResourceError,
    ShapeError,
    StructuralError,
    TilelabError,
    UndefinedFrobeniusError,
)
from .fractional import FractionalTiling, extended_weights, maximize_small, standard_weights, validate
from .hypergraph import (
    Hypergraph,
    PartiteProfile,
    complete_partite,
    degree_of_set,
    khat_extension,
    loose_cycle,
    loose_path,
    min_d_degree,
    parse_hg,
    read_hg,
    write_hg,
)
from .invariants import InvariantReport, Realization, realizations, structural_invariants, vertex_cover_number
from .lattice import index_vector, lattice_contains, robust_vectors, transferral_complete
from .solver import (
    TilingCertificate,
    coex_brute,
    enumerate_copies,
    extremal_deficit,
    has_perfect_tiling,
    is_steiner_system,
    is_subgraph_free,
    max_tiling,
    turan_brute,
)
from .thresholds import (
    ThresholdReport,
    cycle_threshold,
    degree_bound,
    frobenius,
    k112_threshold,
    mycroft_threshold,
    profile_constant_C,
    steiner_divisibility,
)

__version__ = "0.1.0"
