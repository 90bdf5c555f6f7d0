"""Exact computations with cut polytopes of graphs."""

__version__ = "0.1.0"

from .cutlattice import (
    CutBasis,
    CutVector,
    CycleInequality,
    FacetSystem,
    HomPoint,
    cut_generators,
    cut_vector,
    facet_inequalities,
    in_cone,
    in_cone_nonhomogeneous,
    in_lattice,
    in_lattice_nonhomogeneous,
)
from .errors import BudgetExceeded, InternalContradiction, K5MinorError, PreconditionError
from .graph import (
    CliqueSumSpec,
    Cycle,
    Graph,
    clique_sum,
    complete_graph,
    contract_edge,
    cycle_basis,
    cycle_graph,
    cycles_through_edge,
    delete_edge,
    induced_cycles,
    make_named,
    parse_graph_name,
    read_graph,
    suspension,
)
from .lifting import GammaBounds, gamma_bounds, lift_deletion, merge_clique_sum
from .minors import MinorProfile, MinorWitness, has_minor, minor_profile
from .normality import (
    Decomposition,
    Hole,
    NormalityVerdict,
    classify_normality,
    decompose,
    find_hole,
    hilbert_check,
    verify_normality,
)
