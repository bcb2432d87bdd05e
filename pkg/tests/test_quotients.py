from itertools import combinations

import pytest

from conftest import S12, Z2, Z3, Z4, small_sparams
from ybkit.intlat import AbGroup, quotient_group, subgroup_generated
from ybkit.quotients import (BadDescriptor, CongruenceDescriptor,
                             class_based_quotient, descriptor_from_json,
                             descriptor_to_json, enumerate_congruences,
                             identity_descriptor, partition_of_descriptor,
                             quotient_by, quotient_invariant_report,
                             quotients_isomorphic, total_descriptor,
                             validate_descriptor)
from ybkit.sconstruct import SParams, build_solution
from ybkit.ybecore import (automorphism_group, brute_congruences,
                           find_isomorphism, permutation_group,
                           _close_congruence, _partition_pairs)

H0 = subgroup_generated(Z2, ())
H2 = subgroup_generated(Z2, ((1,),))


def descriptor_key(d):
    return (d.m, tuple(d.H.elements), d.r)


def test_enumerate_s12():
    got = {descriptor_key(d) for d in enumerate_congruences(S12)}
    zero = ((0,),)
    both = ((0,), (1,))
    assert got == {
        (6, zero, (0,)),
        (3, zero, (0,)),
        (3, zero, (1,)),
        (6, both, (0,)),
        (3, both, (0,)),
        (2, both, (0,)),
        (1, both, (0,)),
    }


def test_extremes_always_present():
    for p in small_sparams(8):
        descs = enumerate_congruences(p)
        keys = {descriptor_key(d) for d in descs}
        assert descriptor_key(identity_descriptor(p)) in keys
        assert descriptor_key(total_descriptor(p)) in keys


def test_descriptor_count_matches_brute():
    p = SParams(Z2, 2, ((0,), (1,)))
    assert len(enumerate_congruences(p)) == len(brute_congruences(build_solution(p)))


def test_completeness_on_small_params():
    for p in small_sparams(8, groups=(Z2, Z3, Z4)):
        partitions = {partition_of_descriptor(p, d)
                      for d in enumerate_congruences(p)}
        brute = set(brute_congruences(build_solution(p)))
        assert partitions == brute, p


def test_descriptor_partitions_are_closed():
    s = build_solution(S12)
    for d in enumerate_congruences(S12):
        part = partition_of_descriptor(S12, d)
        assert _close_congruence(s, _partition_pairs(part)) == part


def test_identity_and_total_quotients(s12_solution):
    ident = quotient_by(S12, identity_descriptor(S12))
    assert find_isomorphism(ident, s12_solution) is not None
    total = quotient_by(S12, total_descriptor(S12))
    assert total.size == 1


def test_s12_standard_quotient():
    d = CongruenceDescriptor(3, H0, (1,))
    y = quotient_by(S12, d)
    assert y.size == 6
    six_cycle = (1, 2, 3, 4, 5, 0)
    # the two classes with second coordinate 0 share one sigma row
    assert y.sigma[0] == y.sigma[3] == six_cycle
    assert permutation_group(y).order == 24


def test_validate_descriptor_rejections():
    with pytest.raises(BadDescriptor):
        validate_descriptor(S12, CongruenceDescriptor(4, H2, (0,)))
    with pytest.raises(BadDescriptor):
        validate_descriptor(S12, CongruenceDescriptor(2, H0, (0,)))
    p = SParams(Z4, 2, ((0,), (1,)))
    h = subgroup_generated(Z4, ((2,),))
    with pytest.raises(BadDescriptor):
        validate_descriptor(p, CongruenceDescriptor(1, h, (1,)))


def test_r_is_canonicalized():
    d = CongruenceDescriptor(3, H2, (1,))
    assert d.r == (0,)
    assert d.same_quotient_as(CongruenceDescriptor(3, H2, (0,)))


def test_quotients_isomorphic(s12_solution):
    descs = enumerate_congruences(S12)
    for d in descs:
        assert quotients_isomorphic(S12, d, d)
    a = CongruenceDescriptor(3, H0, (0,))
    b = CongruenceDescriptor(3, H0, (1,))
    assert not quotients_isomorphic(S12, a, b)
    assert quotients_isomorphic(S12, CongruenceDescriptor(3, H2, (0,)),
                                CongruenceDescriptor(3, H2, (1,)))
    for d1, d2 in combinations(descs, 2):
        built = find_isomorphism(quotient_by(S12, d1),
                                 quotient_by(S12, d2)) is not None
        assert quotients_isomorphic(S12, d1, d2) == built, (d1, d2)


def test_direct_equals_class_based():
    # the wrap twist sign is pinned by this equality; an order-4 twist
    # separates the two sign choices that coincide over Z_2
    for d in enumerate_congruences(S12):
        assert quotient_by(S12, d).sigma == class_based_quotient(S12, d).sigma
    p = SParams(Z4, 8, (((0,), (1,)) * 4))
    d = CongruenceDescriptor(2, subgroup_generated(Z4, ()), (1,))
    assert quotient_by(p, d).sigma == class_based_quotient(p, d).sigma


def test_zero_twist_matches_projected_construction():
    for d in enumerate_congruences(S12):
        if d.r != Z2.zero:
            continue
        quotient, project = quotient_group(Z2, d.H)
        cbar = tuple(project(S12.c[i]) for i in range(d.m))
        direct = build_solution(SParams(quotient, d.m, cbar))
        assert find_isomorphism(quotient_by(S12, d), direct) is not None, d


def test_invariant_report_s12():
    rep = quotient_invariant_report(S12, CongruenceDescriptor(3, H0, (1,)))
    assert rep["size"] == 6
    assert rep["index_G_to_H"] == 2
    assert rep["twist_order"] == 2
    assert rep["cycle_length"] == 6
    assert rep["all_pass"]


def test_invariant_report_identity():
    rep = quotient_invariant_report(S12, identity_descriptor(S12))
    assert rep["twist_order"] == 1
    assert rep["cycle_length"] == S12.n
    assert rep["all_pass"]


def test_invariant_report_quaternion_tie():
    z4 = AbGroup((4,))
    p = SParams(z4, 4, ((0,), (1,), (0,), (1,)))
    d = CongruenceDescriptor(2, subgroup_generated(z4, ()), (2,))
    rep = quotient_invariant_report(p, d)
    assert rep["cycle_length"] == 4
    assert rep["all_pass"]


def test_aut_regular_on_quotients():
    for d in enumerate_congruences(S12):
        aut = automorphism_group(quotient_by(S12, d))
        assert aut.is_regular()


def test_descriptor_json_roundtrip():
    d = CongruenceDescriptor(3, H0, (1,))
    data = descriptor_to_json(d)
    assert data == {"m": 3, "H": [[0]], "r": [1]}
    again = descriptor_from_json(Z2, data)
    assert again.same_quotient_as(d)
