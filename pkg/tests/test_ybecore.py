from itertools import combinations

import pytest

from conftest import S12, S32, Z2, Z3, small_sparams
from ybkit.braceforge import cyclic_brace_family
from ybkit.census import census
from ybkit.intlat import AbGroup, subgroup_generated
from ybkit.permkit import (compose, group_closure, identity, inverse,
                           perm_order, perm_power)
from ybkit.quotients import CongruenceDescriptor, quotient_by
from ybkit.sconstruct import (SParams, build_solution, c_matrix,
                              two_reductive_layer)
from ybkit.ybecore import (BraidFails, FinSolution, NoUnitRow,
                           NotInvolutive, NotLevel2, NotMultipermutation,
                           NotPermutationRow, PiIncompatible,
                           RetractIllFormed, TwoReductive, assemble,
                           automorphism_group, basepoint_frame,
                           brute_congruences, displacement_group,
                           find_isomorphism, from_json_dict, from_sigma,
                           is_2_reductive, is_indecomposable, is_mpl2_local,
                           is_square_free, is_uniconnected, isotope,
                           multipermutation_level, permutation_group,
                           quotient_by_partition, retract, to_json_dict,
                           verify_braid)

# passes every row/involutivity/non-degeneracy check but fails the braid
BRAID_FALSE_SIGMA = ((0, 2, 1), (0, 2, 1), (1, 2, 0))

# tau classes are all singletons: no retraction possible
IRRETRACTABLE_SIGMA = ((0, 1, 3, 2), (2, 3, 1, 0), (3, 2, 0, 1), (1, 0, 2, 3))


def trivial_solution(n):
    return from_sigma([tuple(range(n))] * n)


def cycle_solution(n):
    row = tuple((i + 1) % n for i in range(n))
    return from_sigma([row] * n)


def derive_tau(sigma):
    n = len(sigma)
    inv = [inverse(row) for row in sigma]
    return tuple(tuple(inv[sigma[x][y]][x] for x in range(n))
                 for y in range(n))


def test_from_sigma_trivial():
    s = trivial_solution(3)
    assert s.sigma == s.tau == (identity(3),) * 3


def test_from_sigma_golden_table():
    s = build_solution(SParams(Z2, 2, ((0,), (1,))))
    assert s.sigma == ((1, 0, 3, 2), (3, 2, 1, 0), (1, 0, 3, 2), (3, 2, 1, 0))
    # point (0,1) is 1, point (0,0) is 0, point (1,1) is 3
    assert s.sigma[1][0] == 3


def test_from_sigma_rejects_bad_row():
    with pytest.raises(NotPermutationRow):
        from_sigma([(0, 0, 1), (1, 2, 0), (2, 0, 1)])


def test_from_sigma_rejects_braid_failure():
    with pytest.raises(BraidFails):
        from_sigma(BRAID_FALSE_SIGMA)


def test_verify_braid_witness():
    s = FinSolution(3, BRAID_FALSE_SIGMA, derive_tau(BRAID_FALSE_SIGMA))
    ok, witness = verify_braid(s)
    assert not ok
    assert witness is not None and len(witness) == 3
    ok, witness = verify_braid(trivial_solution(4))
    assert ok and witness is None


def test_braid_holds_on_big_example(s32_solution):
    assert s32_solution.size == 32
    ok, _ = verify_braid(s32_solution)
    assert ok


def test_involutivity_and_tau_rows(s12_solution):
    for s in (s12_solution, cycle_solution(5)):
        for x in range(s.size):
            for y in range(s.size):
                u, v = s.sigma[x][y], s.tau[y][x]
                assert (s.sigma[u][v], s.tau[v][u]) == (x, y)
        for y in range(s.size):
            assert sorted(s.tau[y]) == list(range(s.size))


def test_is_square_free(s12_solution):
    assert is_square_free(trivial_solution(3))
    assert not is_square_free(s12_solution)
    assert not is_square_free(cycle_solution(4))


def test_retract():
    s, classes = retract(cycle_solution(5))
    assert s.size == 1 and set(classes) == {0}
    small = build_solution(SParams(Z2, 2, ((0,), (1,))))
    r, classes = retract(small)
    assert r.size == 2
    # rows coincide exactly on matching second coordinate
    assert classes[0] == classes[2] and classes[1] == classes[3]
    one, classes = retract(trivial_solution(1))
    assert one.size == 1 and classes == [0]


def test_multipermutation_level(s12_solution, level3_solution):
    assert multipermutation_level(trivial_solution(1)) == 0
    assert multipermutation_level(cycle_solution(4)) == 1
    assert multipermutation_level(s12_solution) == 2
    assert multipermutation_level(level3_solution) == 3


def test_not_multipermutation():
    s = from_sigma(IRRETRACTABLE_SIGMA)
    with pytest.raises(NotMultipermutation):
        multipermutation_level(s)


def test_is_mpl2_local(uni223_solution, level3_solution):
    assert is_mpl2_local(cycle_solution(6))
    assert is_mpl2_local(uni223_solution)
    assert not is_mpl2_local(level3_solution)


def test_level2_law_equivalence(level3_solution, uni223_solution):
    pool = [cycle_solution(n) for n in (2, 3, 5)]
    pool += [level3_solution, uni223_solution]
    for size in (4, 6, 8):
        pool += [e.solution() for e in census(size)]
    for s in pool:
        assert is_mpl2_local(s) == (multipermutation_level(s) <= 2)


def test_is_2_reductive(s32_solution):
    assert is_2_reductive(trivial_solution(2))
    assert not is_2_reductive(build_solution(SParams(Z2, 2, ((0,), (1,)))))
    layer = two_reductive_layer(S32)
    assert is_2_reductive(from_sigma(layer.L))
    assert not is_2_reductive(s32_solution)


def test_isotope_permutation_solution():
    layer = isotope(cycle_solution(5), 0)
    assert all(row == identity(5) for row in layer.L)


def test_isotope_matches_constant_matrix(s12_solution):
    layer = isotope(s12_solution, 0)
    cm = c_matrix(S12)
    for a in range(2):
        for i in range(6):
            x = a * 6 + i
            for b in range(2):
                for j in range(6):
                    shift = cm[i][j]
                    target = ((b + shift[0]) % 2) * 6 + j
                    assert layer.L[x][b * 6 + j] == target


def test_isotope_dihedral_rows():
    s = cyclic_brace_family("dihedral", 3)
    layer = isotope(s, 0)
    for a in range(0, 8, 2):
        assert layer.L[a] == identity(8)
    for a in range(1, 8, 2):
        assert layer.L[a] == tuple((b - 2) % 8 for b in range(8))


def test_isotope_requires_level2(level3_solution):
    with pytest.raises(NotLevel2):
        isotope(level3_solution, 0)


def test_assemble_identity_pi():
    layer = two_reductive_layer(S12)
    s = assemble(layer, identity(12))
    assert s.sigma == tuple(layer.L)
    assert multipermutation_level(s) <= 2


def test_assemble_rebuilds_construction(s12_solution):
    layer = two_reductive_layer(S12)
    pi = tuple((x // 6) * 6 + (x + 1) % 6 for x in range(12))
    assert assemble(layer, pi).sigma == s12_solution.sigma


def test_assemble_pi_incompatible():
    layer = two_reductive_layer(S12)
    pi = list((x // 6) * 6 + (x + 1) % 6 for x in range(12))
    pi[0], pi[1] = pi[1], pi[0]
    with pytest.raises(PiIncompatible):
        assemble(layer, tuple(pi))


def test_assemble_no_unit_row():
    shift = tuple((b + 1) % 4 for b in range(4))
    layer = TwoReductive(4, (shift,) * 4, (shift,) * 4)
    with pytest.raises(NoUnitRow):
        assemble(layer, identity(4))


def test_groups_of_cycle():
    s = cycle_solution(6)
    g = permutation_group(s)
    assert g.order == 6 and g.is_cyclic()
    assert displacement_group(s).order == 1


def test_groups_s32(s32_solution):
    assert displacement_group(s32_solution).order == 32
    assert permutation_group(s32_solution).order == 128


def test_s12_quotient_groups():
    d = CongruenceDescriptor(3, subgroup_generated(Z2, ()), (1,))
    y = quotient_by(S12, d)
    assert permutation_group(y).order == 24
    dis = displacement_group(y)
    assert sorted(dis.elements) == [
        (0, 1, 2, 3, 4, 5),
        (0, 4, 5, 3, 1, 2),
        (3, 1, 5, 0, 4, 2),
        (3, 4, 2, 0, 1, 5),
    ]
    # Klein four-group: every non-identity element an involution
    assert all(perm_order(p) in (1, 2) for p in dis.elements)


def test_displacement_base_independent(s12_solution):
    base_sets = {tuple(sorted(displacement_group(s12_solution, base=b).elements))
                 for b in range(s12_solution.size)}
    assert len(base_sets) == 1


def test_basepoint_frame(s12_solution):
    frame = basepoint_frame(cycle_solution(4))
    assert all(p == identity(4) for p in frame.Lseq)
    frame = basepoint_frame(s12_solution)
    assert frame.tilde == (0, 1, 2, 3, 4, 5)
    assert frame.Lseq[0] == identity(12)
    for i in range(1, 6):
        assert frame.Dseq[i] == compose(frame.Lseq[i], inverse(frame.Lseq[i - 1]))


def test_basepoint_frame_dihedral():
    frame = basepoint_frame(cyclic_brace_family("dihedral", 3))
    assert len(group_closure(frame.Dseq)) == 4


def test_indecomposable_uniconnected(uni223_solution, s32_solution):
    assert not is_indecomposable(trivial_solution(2))
    assert not is_uniconnected(trivial_solution(2))
    assert is_indecomposable(uni223_solution) and is_uniconnected(uni223_solution)
    assert is_indecomposable(s32_solution) and not is_uniconnected(s32_solution)


def test_find_isomorphism_self(s12_solution):
    assert find_isomorphism(s12_solution, s12_solution) == identity(12)


def test_find_isomorphism_unit_twist():
    z5 = AbGroup((5,))
    a = build_solution(SParams(z5, 2, ((0,), (1,))))
    b = build_solution(SParams(z5, 2, ((0,), (3,))))
    phi = find_isomorphism(a, b)
    assert phi is not None
    assert find_isomorphism(a, b, force_backtracking=True) is not None


def test_find_isomorphism_p3_family():
    params = [SParams(Z3, 3, ((0,), c1, c2))
              for c1, c2 in (((0,), (1,)), ((1,), (0,)), ((1,), (1,)), ((1,), (2,)))]
    sols = [build_solution(p) for p in params]
    for a, b in combinations(sols, 2):
        assert find_isomorphism(a, b) is None
    neg = build_solution(SParams(Z3, 3, ((0,), (0,), (2,))))
    assert find_isomorphism(sols[0], neg) is not None


def test_find_isomorphism_symmetric_and_matches_backtracking(level3_solution):
    pool = [e.solution() for e in census(6)] + [e.solution() for e in census(8)]
    pool += [cyclic_brace_family("dihedral", 3), cyclic_brace_family("quaternion", 3),
             level3_solution]
    for a, b in combinations(pool, 2):
        fwd = find_isomorphism(a, b)
        bwd = find_isomorphism(b, a)
        brute = find_isomorphism(a, b, force_backtracking=True)
        assert (fwd is None) == (bwd is None) == (brute is None)
        if fwd is not None:
            for x in range(a.size):
                for y in range(a.size):
                    assert fwd[a.sigma[x][y]] == b.sigma[fwd[x]][fwd[y]]


def test_automorphism_group(s12_solution):
    assert automorphism_group(trivial_solution(1)).order == 1
    aut = automorphism_group(s12_solution)
    assert aut.is_regular() and aut.order == 12
    d = CongruenceDescriptor(3, subgroup_generated(Z2, ()), (1,))
    auty = automorphism_group(quotient_by(S12, d))
    assert auty.is_regular() and auty.order == 6


def test_brute_congruences(s12_solution):
    assert len(brute_congruences(trivial_solution(1))) == 1
    assert len(brute_congruences(s12_solution)) == 7
    assert len(brute_congruences(cycle_solution(5))) == 2


def test_brute_congruences_closed_under_defining_rule():
    s = build_solution(SParams(Z2, 2, ((0,), (1,))))
    for part in brute_congruences(s):
        for x1 in range(s.size):
            for x2 in range(s.size):
                if part[x1] != part[x2]:
                    continue
                for y1 in range(s.size):
                    for y2 in range(s.size):
                        if part[y1] != part[y2]:
                            continue
                        assert part[s.sigma[x1][y1]] == part[s.sigma[x2][y2]]
                        assert part[s.sigma_inv(x1)[y1]] == part[s.sigma_inv(x2)[y2]]


def zero_sum_elements(s):
    """BFS over (element, signed word length mod L): the exponent-zero set."""
    length = perm_order(s.sigma[0])
    start = (identity(s.size), 0)
    seen = {start}
    frontier = [start]
    while frontier:
        g, k = frontier.pop()
        for row in s.sigma:
            for step, q in ((1, compose(row, g)), (-1, compose(inverse(row), g))):
                state = (q, (k + step) % length)
                if state not in seen:
                    seen.add(state)
                    frontier.append(state)
    return sorted(g for g, k in seen if k == 0)


def test_displacement_is_zero_sum_subgroup(s12_solution, uni223_solution):
    pool = [s12_solution, uni223_solution, cycle_solution(4)]
    pool += [e.solution() for e in census(8)[:6]]
    for s in pool:
        dis = displacement_group(s)
        assert zero_sum_elements(s) == sorted(dis.elements)


def test_displacement_normal(s12_solution):
    dis = set(displacement_group(s12_solution).elements)
    for row in s12_solution.sigma:
        for g in dis:
            assert compose(row, compose(g, inverse(row))) in dis


def test_two_row_generation_and_equal_orders(s12_solution, s32_solution):
    pool = [s12_solution, s32_solution]
    pool += [e.solution() for e in census(9)]
    for s in pool:
        assert is_indecomposable(s)
        pi = s.sigma[0]
        gens = [pi, s.sigma[pi[0]]]
        assert group_closure(gens) == sorted(permutation_group(s).elements)
        orders = {perm_order(row) for row in s.sigma}
        assert len(orders) == 1


def test_quotient_by_partition_rejects_non_congruence(s12_solution):
    classes = [0, 0] + list(range(1, 11))
    with pytest.raises(RetractIllFormed):
        quotient_by_partition(s12_solution, classes)


def test_json_roundtrip(s12_solution):
    data = to_json_dict(s12_solution, meta={"note": "round trip"})
    again = from_json_dict(data)
    assert again.sigma == s12_solution.sigma
    assert data["size"] == 12 and data["meta"]["note"] == "round trip"
