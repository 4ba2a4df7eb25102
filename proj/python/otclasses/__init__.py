"""Discrete optimal transport with transport classes.

Thin re-export of the compiled extension. Measures carry a numeric mode:
"float" for double precision with tolerances, "rational" for exact p/q
arithmetic (weights and values cross the boundary as strings).
"""

from ._otclasses import (  # noqa: F401
    Error,
    Measure,
    MetaMeasure,
    Plan,
    c_superdifferential,
    c_transform,
    check_class_constraint,
    check_cyclical_monotonicity,
    check_twist,
    class_of_map,
    classes_equal,
    compare_with_kantorovich,
    demo_instance,
    diagnose_existence,
    disintegrate,
    dual_check_w1,
    generalized_barycenter,
    lifted_cost,
    map_from_class_plan,
    meta_wasserstein,
    plan_from_map,
    product_plan,
    pushforward_meta,
    second_marginal,
    solve,
    solve_allocation,
    solve_class_problem,
    solve_monge_maps,
    wasserstein,
)

__all__ = [
    "Error",
    "Measure",
    "MetaMeasure",
    "Plan",
    "c_superdifferential",
    "c_transform",
    "check_class_constraint",
    "check_cyclical_monotonicity",
    "check_twist",
    "class_of_map",
    "classes_equal",
    "compare_with_kantorovich",
    "demo_instance",
    "diagnose_existence",
    "disintegrate",
    "dual_check_w1",
    "generalized_barycenter",
    "lifted_cost",
    "map_from_class_plan",
    "meta_wasserstein",
    "plan_from_map",
    "product_plan",
    "pushforward_meta",
    "second_marginal",
    "solve",
    "solve_allocation",
    "solve_class_problem",
    "solve_monge_maps",
    "wasserstein",
]

__version__ = "0.1.0"
