"""The central two-parameter construction on G x Z_n and its structure theory.

Data: a finite abelian group G, a period n >= 1 and a tuple
c = (c_0, ..., c_{n-1}) of elements of G with c_0 = 0 whose entries
generate G.  The solution lives on the points (a, i) in G x Z_n with

    sigma_{(a,i)}((b,j)) = (b + c_{i-j-1} - c_{-j-1}, j+1)
    tau_{(a,i)}((b,j))   = (b - c_{i-j+1} + c_{-j},   j-1)

all subscripts mod n.  These solutions are indecomposable of
multipermutation level <= 2, and every indecomposable level <= 2
solution is a quotient of one of them (see the quotients module).

Point encoding: index = (lexicographic rank of a) * n + i, group
element major.  This convention is shared by every table builder in
the package, so golden sigma tables are stable.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from . import permkit, ybecore
from .intlat import AbGroup, Vec, subgroup_generated
from .permkit import compose
from .ybecore import FinSolution, NotLevel2, TooLarge, TwoReductive

MAX_POINTS = 512
AUT_ENUM_CAP = 10 ** 6


class BadParams(Exception):
    """Construction parameters violate c_0 = 0 or the generation condition."""


@dataclass(frozen=True)
class SParams:
    """Parameters (G, n, c) of the construction; validated on creation."""

    group: AbGroup
    n: int
    c: tuple[Vec, ...]

    def __post_init__(self):
        if self.n < 1:
            raise BadParams("period n must be >= 1")
        if len(self.c) != self.n:
            raise BadParams(f"expected {self.n} constants, got {len(self.c)}")
        object.__setattr__(self, "c", tuple(self.group.reduce(v) for v in self.c))
        if self.c[0] != self.group.zero:
            raise BadParams("c[0] must be the zero element")
        if subgroup_generated(self.group, self.c).order != self.group.order:
            raise BadParams("constants do not generate the group")

    @property
    def size(self) -> int:
        return self.group.order * self.n

    def point_index(self, a: Vec, i: int) -> int:
        return self.group.element_index(a) * self.n + (i % self.n)

    def point_of(self, index: int) -> tuple[Vec, int]:
        return self.group.element_at(index // self.n), index % self.n


def sparams_to_json(p: SParams) -> dict:
    return {"factors": list(p.group.factors), "n": p.n,
            "c": [list(v) for v in p.c]}


def sparams_from_json(data: dict) -> SParams:
    group = AbGroup(tuple(int(d) for d in data["factors"]))
    c = tuple(tuple(int(x) for x in v) for v in data["c"])
    return SParams(group, int(data["n"]), c)


def twisted_table(group: AbGroup, m: int, cbar: Sequence[Vec],
                  rbar: Vec) -> list[list[int]]:
    """Sigma table of the constants-plus-seam-twist solution on group x Z_m.

    sigma_{(a,i)}((b,j)) = (b + cbar_{i-j-1} - cbar_{-j-1} [+ rbar at the
    j = m-1 wrap], j+1).  With rbar = 0 this is the plain construction;
    a nonzero rbar realizes the quotients that twist the Z_m seam.
    """
    order = group.order
    size = order * m
    elements = group.elements()
    index = group.element_index
    table = [[0] * size for _ in range(size)]
    for i in range(m):
        # the row of (a, i) does not depend on a
        row = [0] * size
        for j in range(m):
            shift = group.sub(cbar[(i - j - 1) % m], cbar[(-j - 1) % m])
            if j == m - 1:
                shift = group.add(shift, rbar)
            j_next = (j + 1) % m
            for b_idx, b in enumerate(elements):
                row[b_idx * m + j] = index(group.add(b, shift)) * m + j_next
        for a_idx in range(order):
            table[a_idx * m + i] = row
    return table


def build_solution(p: SParams) -> FinSolution:
    """Materialize S(G x Z_n, c) as a verified solution.

    The derived tau is checked against the closed tau formula entry by
    entry, not just against involutivity.
    """
    if p.size > MAX_POINTS:
        raise TooLarge(f"{p.size} points exceeds cap {MAX_POINTS}")
    s = ybecore.from_sigma(twisted_table(p.group, p.n, p.c, p.group.zero))
    g = p.group
    for a in ([g.zero] if g.order == 1 else [g.zero, g.element_at(g.order - 1)]):
        for i in range(p.n):
            x = p.point_index(a, i)
            for b_idx in range(g.order):
                b = g.element_at(b_idx)
                for j in range(p.n):
                    expect = g.add(g.sub(b, p.c[(i - j + 1) % p.n]),
                                   p.c[(-j) % p.n])
                    assert s.tau[x][p.point_index(b, j)] == \
                        p.point_index(expect, (j - 1) % p.n), \
                        "derived tau disagrees with the closed formula"
    return s


def c_matrix(p: SParams) -> list[list[Vec]]:
    """The derived constants c_{i,j} = c_{i-j} - c_{-j}."""
    return [[p.group.sub(p.c[(i - j) % p.n], p.c[(-j) % p.n])
             for j in range(p.n)] for i in range(p.n)]


def two_reductive_layer(p: SParams) -> TwoReductive:
    """The 2-reductive layer L_{(a,i)}((b,j)) = (b + c_{i,j}, j)."""
    cm = c_matrix(p)
    g = p.group
    for j in range(p.n):
        assert cm[j][0] == p.c[j] and cm[0][j] == g.zero
    size = p.size
    elements = g.elements()
    ll = []
    for a_idx in range(g.order):
        for i in range(p.n):
            row = [0] * size
            for b_idx, b in enumerate(elements):
                for j in range(p.n):
                    row[b_idx * p.n + j] = \
                        g.element_index(g.add(b, cm[i][j])) * p.n + j
            ll.append(tuple(row))
    ll = tuple(ll)
    rr = tuple(ybecore.from_sigma(ll).tau)
    return TwoReductive(size, ll, rr)


def is_abelian_params(p: SParams) -> bool:
    """G(X) abelian iff c_i = i * c_1 for all integer i.

    For a finite period the condition must be read over i = 0..n
    inclusive: the i = n instance forces n * c_1 = 0, which the range
    0..n-1 does not imply (G = Z_4, n = 2, c = (0, 1) satisfies the
    truncated condition but has non-abelian G(X)).
    """
    if p.n == 1:
        return True
    c1 = p.c[1]
    return all(p.c[i % p.n] == p.group.smul(i, c1) for i in range(p.n + 1))


def _isomorphisms(g1: AbGroup, g2: AbGroup):
    """Yield all group isomorphisms g1 -> g2 as generator-image tuples.

    An isomorphism preserves element orders, so the image of the k-th
    coordinate generator ranges over elements of order exactly d_k.
    """
    if g1.order != g2.order:
        return
    candidates = []
    for d in g1.factors:
        pool = [x for x in g2.elements() if g2.elem_order(x) == d]
        candidates.append(pool)
    total = 1
    for pool in candidates:
        total *= max(len(pool), 1)
    if total > AUT_ENUM_CAP:
        raise TooLarge(f"{total} candidate generator images exceed cap")
    for images in itertools.product(*candidates):
        seen = {_apply_images(g1, g2, images, x) for x in g1.elements()}
        if len(seen) == g1.order:
            yield images


def _apply_images(g1: AbGroup, g2: AbGroup, images, x: Vec) -> Vec:
    y = g2.zero
    for coord, img in zip(x, images):
        y = g2.add(y, g2.smul(coord, img))
    return y


def params_isomorphic(p1: SParams, p2: SParams) -> bool:
    """True iff some isomorphism g: G1 -> G2 carries c to c' entrywise."""
    if p1.n != p2.n:
        return False
    for images in _isomorphisms(p1.group, p2.group):
        if all(_apply_images(p1.group, p2.group, images, p1.c[i]) == p2.c[i]
               for i in range(p1.n)):
            return True
    return False


def module_construction(k: int, r: int) -> SParams:
    """Rank-r free module family: G = (Z_k)^r, n = 2r, staircase constants."""
    assert k >= 2 and r >= 1
    group = AbGroup((k,) * r)

    def basis_sum(lo: int, hi: int) -> Vec:
        return tuple(1 if lo <= t <= hi else 0 for t in range(1, r + 1))

    c = [group.zero]
    for i in range(1, r + 1):
        c.append(basis_sum(1, i))
    for i in range(1, r):
        c.append(basis_sum(i + 1, r))
    return SParams(group, 2 * r, tuple(c))


def is_s_representable(s: FinSolution) -> bool:
    """Whether s is isomorphic to some S(G x Z_n, c).

    Criterion at a fixed basepoint 0 with pi = sigma_0:
    Dis(X) meets <pi> trivially and the stabilizer G(X)_0 lies in Dis(X).
    """
    if not ybecore.is_mpl2_local(s):
        raise NotLevel2("representability test requires level <= 2")
    if not ybecore.is_indecomposable(s):
        raise ValueError("representability test requires indecomposability")
    pi = s.sigma[0]
    dis = set(ybecore.displacement_group(s).elements)
    power = pi
    ident = permkit.identity(s.size)
    while power != ident:
        if power in dis:
            return False
        power = compose(pi, power)
    big = ybecore.permutation_group(s)
    return all(g in dis for g in big.point_stabilizer(0))
