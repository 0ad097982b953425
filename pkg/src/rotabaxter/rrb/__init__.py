"""Relative Rota-Baxter operators on groups, 2-groups and crossed modules."""

from .cayley import CayleyFactorization, cayley_factorization
from .group import (
    RRBGroupOp,
    descendant_group,
    decomposition_map,
    descendant_group_action,
    enumerate_rrb_group,
    is_rota_baxter_action,
    rrb_failure,
    verify_rrb_group,
)
from .two import (
    DescendantAction,
    DescendantTwoGroup,
    RRB2GroupOp,
    bar_B,
    descendant_action,
    descendant_two_group,
    enumerate_rrb_two_group,
    graph_2subgroup,
    graph_failure,
    hat_B,
    hat_maps,
    plus_B,
    rb_group_to_rb_2groups,
    rb_on_descendant,
    rrb_two_group_failure,
    twist_rrb,
    verify_rrb_two_group,
)
from .xmod import (
    DescendantXMod,
    MapDiffReport,
    RRBXModOp,
    descendant_xmod,
    enumerate_rrb_xmod,
    rb_on_descendant_xmod,
    rrb_2group_to_xmod,
    rrb_xmod_to_2group,
    rrb_xmod_failure,
    twist_rrb_xmod,
    verify_rrb_xmod,
)
