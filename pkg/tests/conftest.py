"""Shared fixtures: the worked examples every suite leans on.

All of these are expensive enough to build once per session.  The two
parameter records S12 and S32 are plain constants so tests can also
derive fresh variations from them.
"""

from itertools import product

import pytest

from ybkit.braceforge import (Brace, matrix_automorphism, rump_solution,
                              semidirect_trivial)
from ybkit.intlat import AbGroup, subgroup_generated
from ybkit.sconstruct import SParams, build_solution

Z1 = AbGroup(())
Z2 = AbGroup((2,))
Z3 = AbGroup((3,))
Z4 = AbGroup((4,))
Z22 = AbGroup((2, 2))
Z6 = AbGroup((6,))
Z26 = AbGroup((2, 6))

# 12-point solution over Z_2 with six period-3 constants; its congruence
# lattice has exactly 7 members and its theta(3, 0, 1) quotient is the
# standard example of a quotient that is not itself of S-form.
S12 = SParams(Z2, 6, ((0,), (1,), (1,), (0,), (1,), (1,)))

# 32-point solution over Z_4 x Z_2 with non-abelian permutation group.
S32 = SParams(AbGroup((4, 2)), 4, ((0, 0), (1, 0), (1, 0), (2, 1)))


def generating_tuples(group, n):
    """All c in G^n with c_0 = 0 whose entries generate G."""
    out = []
    for rest in product(group.elements(), repeat=n - 1):
        c = (group.zero,) + tuple(rest)
        if subgroup_generated(group, c).order == group.order:
            out.append(c)
    return out


def small_sparams(max_points, groups=(Z1, Z2, Z3, Z4, Z22, Z6, Z26)):
    """Every valid parameter record with |G| * n <= max_points."""
    out = []
    for group in groups:
        n = 1
        while group.order * n <= max_points:
            for c in generating_tuples(group, n):
                out.append(SParams(group, n, c))
            n += 1
    return out


@pytest.fixture(scope="session")
def s12_solution():
    return build_solution(S12)


@pytest.fixture(scope="session")
def s32_solution():
    return build_solution(S32)


@pytest.fixture(scope="session")
def uni223_solution():
    alpha = matrix_automorphism(Z22, ((0, 1), (1, 1)))
    brace = semidirect_trivial(Z22, 3, alpha)
    return rump_solution(brace, 7)  # 7 encodes ((1,0), 1)


@pytest.fixture(scope="session")
def level3_solution():
    # smallest indecomposable fixture beyond level 2: the brace on Z_8
    # with a o b = a + b + 2ab, sigma rows from the lambda-orbit of 1
    add = tuple(tuple((a + b) % 8 for b in range(8)) for a in range(8))
    mul = tuple(tuple((a + b + 2 * a * b) % 8 for b in range(8))
                for a in range(8))
    return rump_solution(Brace(8, add, mul, 0), 1)
