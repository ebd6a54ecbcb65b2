"""Edge-coloured complete graphs, their colour symmetries, and the spin
double covers of symmetric groups that supply those symmetries."""

from .equivariant import (
    ColourGroupReport,
    FiniteGroup,
    FixedPointFreeInvolution,
    OrbitGraphSpec,
    PairColouring,
    action_vertex_perm,
    add_witness_orbit,
    assemble_orbit_graph,
    build_pair_colouring,
    check_group_axioms,
    group_from_perms,
    make_orbit_spec,
    pair_colour,
    sym_complement,
    trivial_group,
    verify_colour_group,
)
from .graphs import (
    ColouredGraph,
    ObstructionReport,
    PartialIso,
    WitnessMissingError,
    WitnessQuery,
    check_no_fpf_colour_involution,
    embed,
    extend_iso,
    find_witness,
    is_colour_consistent,
    random_graph,
    recolour,
    saturate,
    witness_queries,
)
from .perms import (
    Perm,
    apply,
    compose,
    cycle_type,
    double_coset_lower_bound,
    enumerate_sym,
    fixed_points,
    identity,
    inverse,
    is_involution,
)
from .spin import (
    CliffordScalar,
    CoverKind,
    PinElement,
    SpinCover,
    blade_mul,
    enumerate_cover,
    lift,
    order,
    order_rule_table,
    pin_mul,
    project,
    supplement_condition,
)

__version__ = "0.1.0"
