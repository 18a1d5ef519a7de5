"""Exact toolkit for submodular max-min allocation under identical valuations."""

from ._maxmin import (
    Instance,
    MaxminError,
    build_dual_certificate,
    decide_configuration_lp,
    gen_gap_instance,
    gen_random,
    gen_sylvester,
    gen_sylvester_lift,
    greedy,
    integrality_gap,
    lp_opt,
    opt_maxmin,
    solve_approx,
    version,
)

__all__ = [
    "Instance",
    "MaxminError",
    "build_dual_certificate",
    "decide_configuration_lp",
    "gen_gap_instance",
    "gen_random",
    "gen_sylvester",
    "gen_sylvester_lift",
    "greedy",
    "integrality_gap",
    "lp_opt",
    "opt_maxmin",
    "solve_approx",
    "version",
]

__version__ = version()
