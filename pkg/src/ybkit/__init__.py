"""Indecomposable involutive Yang-Baxter solutions of multipermutation
level at most 2: construction, verification, congruence theory and an
exhaustive census at desk scale.
"""

from .intlat import AbGroup, LatticeQuotient, Overflow, Subgroup, \
    all_subgroups, quotient_group, smith_normal_form, subgroup_generated, \
    sublattices_of_index
from .permkit import CapExceeded, Perm, PermGroup, compose, cycle_lengths, \
    identity, inverse, perm_order, perm_power
from .ybecore import BasepointFrame, FinSolution, SolutionError, TooLarge, \
    TwoReductive, assemble, automorphism_group, brute_congruences, \
    displacement_group, find_isomorphism, from_sigma, is_2_reductive, \
    is_indecomposable, is_mpl2_local, is_square_free, is_uniconnected, \
    isotope, multipermutation_level, permutation_group, retract, verify_braid
from .sconstruct import BadParams, SParams, build_solution, is_abelian_params, \
    is_s_representable, module_construction, params_isomorphic, \
    two_reductive_layer
from .braceforge import BadOrder, Brace, NotCycleBase, cyclic_brace_family, \
    lambda_map, rump_solution, semidirect_trivial, socle, trivial_brace, \
    verify_brace
from .quotients import BadDescriptor, CongruenceDescriptor, \
    class_based_quotient, enumerate_congruences, partition_of_descriptor, \
    quotient_by, quotient_invariant_report, quotients_isomorphic
from .census import census, census_breakdown, census_summary, \
    count_formula_cyclic, count_formula_elementary, power_of_two_lower_bound, \
    table1_report

__version__ = "0.1.0"
