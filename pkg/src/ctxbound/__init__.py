"""Exact qubit stabilizer simulation, contextuality checks and memory bounds."""

from .bounds import BoundReport, bound_report, count_states, overlap_cap
from .contextuality import build_constraints, ncva_exists, peres_mermin_square
from .partition import (
    StateSet,
    certify_disjoint,
    check_certificate,
    commuting_products,
    eigen_observables,
    find_partitioning,
    is_partitioning,
    make_state_set,
    max_overlap_set_search,
    five_state_family,
    pbr_set,
    post_measurement_sets,
    contextuality_bridge,
)
from .pauli import PauliObservable, PauliOperator, canonical_sign, commutes, multiply, parse
from .tableau import (
    StabilizerState,
    canonicalize,
    enumerate_states,
    expectation,
    group_elements,
    is_orthogonal,
    measure_update,
    sample_measurement,
    state_equals,
)

__version__ = "0.1.0"
