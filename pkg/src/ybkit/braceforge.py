"""Finite left braces as solution fixtures.

A left brace is a set with an abelian group (B, +), a group (B, o)
sharing the same identity, and the law a o b + a o c = a o (b + c) + a.
Braces enter here only as generators of test solutions: the semidirect
product of trivial braces, Rump's uniconnected solution built from a
transitive cycle base, and the two cyclic brace families on Z_{2^m}
whose adjoint groups are dihedral and generalized quaternion.

Braces on G x Z_n use the same point encoding as the rest of the
package: index = (lexicographic rank of a) * n + i.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ybecore
from .intlat import AbGroup, Vec
from .permkit import Perm, identity, is_perm
from .ybecore import FinSolution


class BadOrder(Exception):
    """Supplied automorphism power does not come back to the identity."""


class NotCycleBase(Exception):
    """Lambda-orbit of the chosen element does not generate (B, +)."""


@dataclass(frozen=True)
class Brace:
    """Dense-table brace; build through the constructors, verify explicitly."""

    size: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    zero: int

    def neg(self, a: int) -> int:
        return self.add[a].index(self.zero)

    def mul_inv(self, a: int) -> int:
        return self.mul[a].index(self.zero)


def verify_brace(b: Brace) -> tuple[bool, tuple | None]:
    """Exhaustive axiom check; first failing witness when invalid.

    Witnesses are tagged tuples, e.g. ("brace_law", a, b, c).
    """
    n = b.size
    add, mul, z = b.add, b.mul, b.zero
    for a in range(n):
        if not (is_perm(add[a]) and is_perm(mul[a])):
            return False, ("row_not_bijective", a)
    for a in range(n):
        if add[z][a] != a or add[a][z] != a:
            return False, ("add_identity", a)
        if mul[z][a] != a or mul[a][z] != a:
            return False, ("mul_identity", a)
        if z not in mul[a]:
            return False, ("mul_inverse", a)
    for a in range(n):
        for c in range(a):
            if add[a][c] != add[c][a]:
                return False, ("add_commutative", a, c)
    for x in range(n):
        for y in range(n):
            for w in range(n):
                if add[add[x][y]][w] != add[x][add[y][w]]:
                    return False, ("add_associative", x, y, w)
                if mul[mul[x][y]][w] != mul[x][mul[y][w]]:
                    return False, ("mul_associative", x, y, w)
                if add[mul[x][y]][mul[x][w]] != add[mul[x][add[y][w]]][x]:
                    return False, ("brace_law", x, y, w)
    return True, None


def _checked(b: Brace) -> Brace:
    ok, witness = verify_brace(b)
    assert ok, f"brace construction broke an axiom: {witness}"
    return b


def trivial_brace(group: AbGroup) -> Brace:
    elements = group.elements()
    table = tuple(tuple(group.element_index(group.add(x, y)) for y in elements)
                  for x in elements)
    return _checked(Brace(group.order, table, table,
                          group.element_index(group.zero)))


def lambda_map(b: Brace, a: int) -> Perm:
    """lambda_a(x) = a o x - a, as a permutation of the brace."""
    neg_a = b.neg(a)
    return tuple(b.add[b.mul[a][x]][neg_a] for x in range(b.size))


def socle(b: Brace) -> list[int]:
    """Kernel of lambda; checked to be a subgroup for + and for o."""
    ident = identity(b.size)
    soc = [a for a in range(b.size) if lambda_map(b, a) == ident]
    members = set(soc)
    for x in soc:
        for y in soc:
            assert b.add[x][y] in members, "socle not additively closed"
            assert b.mul[x][y] in members, "socle not multiplicatively closed"
    return soc


def matrix_automorphism(group: AbGroup, rows) -> dict[Vec, Vec]:
    """Automorphism of the coordinate group given by an integer matrix.

    Image coordinate k is sum_j rows[k][j] * x_j reduced mod the k-th
    factor.  Additivity and bijectivity are checked.
    """
    mapping = {}
    for x in group.elements():
        image = tuple(sum(r * v for r, v in zip(row, x)) for row in rows)
        mapping[x] = group.reduce(image)
    assert len(set(mapping.values())) == group.order, "matrix not invertible"
    for x in group.elements():
        for y in group.elements():
            assert mapping[group.add(x, y)] == group.add(mapping[x], mapping[y])
    return mapping


def semidirect_trivial(group: AbGroup, n: int, alpha: dict[Vec, Vec]) -> Brace:
    """Brace on G x Z_n with (a,i) o (b,j) = (a + alpha^i(b), i+j)."""
    powers = [{x: x for x in group.elements()}]
    for _ in range(n):
        powers.append({x: alpha[powers[-1][x]] for x in group.elements()})
    if powers[n] != powers[0]:
        raise BadOrder(f"alpha^{n} is not the identity")

    size = group.order * n
    elements = group.elements()

    def idx(a: Vec, i: int) -> int:
        return group.element_index(a) * n + (i % n)

    add = [[0] * size for _ in range(size)]
    mul = [[0] * size for _ in range(size)]
    for a in elements:
        for i in range(n):
            row_a, row_m = add[idx(a, i)], mul[idx(a, i)]
            for c in elements:
                for j in range(n):
                    row_a[idx(c, j)] = idx(group.add(a, c), i + j)
                    row_m[idx(c, j)] = idx(group.add(a, powers[i][c]), i + j)
    brace = Brace(size, tuple(tuple(r) for r in add),
                  tuple(tuple(r) for r in mul), idx(group.zero, 0))
    brace = _checked(brace)
    for a in elements:
        for i in range(n):
            inv = idx(group.neg(powers[(-i) % n][a]), -i)
            assert brace.mul[idx(a, i)][inv] == brace.zero, \
                "inverse law (a,i)^- = (-alpha^{-i}(a), -i) fails"
    return brace


def rump_solution(b: Brace, g: int) -> FinSolution:
    """sigma_x(y) = (lambda_x(g))^- o y on the brace carrier.

    Requires the lambda-orbit of g to generate (B, +); the output is
    asserted uniconnected, with permutation group of order |B|.
    """
    orbit = {lambda_map(b, a)[g] for a in range(b.size)}
    span = {b.zero}
    frontier = list(span)
    while frontier:
        x = frontier.pop()
        for y in orbit:
            z = b.add[x][y]
            if z not in span:
                span.add(z)
                frontier.append(z)
    if len(span) != b.size:
        raise NotCycleBase(
            f"lambda-orbit of {g} spans only {len(span)} of {b.size} elements")
    sigma = []
    for x in range(b.size):
        w_inv = b.mul_inv(lambda_map(b, x)[g])
        sigma.append(b.mul[w_inv])
    s = ybecore.from_sigma(sigma)
    group = ybecore.permutation_group(s)
    assert group.is_regular() and group.order == b.size, \
        "Rump solution is not uniconnected"
    return s


def dihedral_brace(m: int) -> Brace:
    """Cyclic brace on Z_{2^m} with a o b = a + (-1)^a b."""
    assert m >= 3
    n = 1 << m
    add = tuple(tuple((a + c) % n for c in range(n)) for a in range(n))
    mul = tuple(tuple((a + c) % n if a % 2 == 0 else (a - c) % n
                      for c in range(n)) for a in range(n))
    return _checked(Brace(n, add, mul, 0))


def quaternion_brace(m: int) -> Brace:
    """Cyclic brace on Z_{2^m} with a o b = a + (2^{m-1} - 1)^a b."""
    assert m >= 3
    n = 1 << m
    u = (1 << (m - 1)) - 1
    add = tuple(tuple((a + c) % n for c in range(n)) for a in range(n))
    mul = tuple(tuple((a + c) % n if a % 2 == 0 else (a + u * c) % n
                      for c in range(n)) for a in range(n))
    return _checked(Brace(n, add, mul, 0))


def cyclic_brace_family(kind: str, m: int) -> FinSolution:
    """The two uniconnected solutions on Z_{2^m} from cyclic braces.

    kind "dihedral": sigma_a(b) = 1 - b (a even), -1 - b (a odd);
    Dis meets <sigma_0> trivially.  kind "quaternion": sigma_a(b) =
    (1 - 2^{m-1})(1 - b) (a even), -1 + (2^{m-1} - 1) b (a odd);
    Dis meets <sigma_0> in {id, sigma_0^2} and sigma_1^2 = sigma_0^2.
    """
    assert m >= 3
    n = 1 << m
    half = 1 << (m - 1)
    if kind == "dihedral":
        sigma = [tuple((1 - c) % n for c in range(n)) if a % 2 == 0 else
                 tuple((-1 - c) % n for c in range(n)) for a in range(n)]
    elif kind == "quaternion":
        sigma = [tuple(((1 - half) * (1 - c)) % n for c in range(n))
                 if a % 2 == 0 else
                 tuple((-1 + (half - 1) * c) % n for c in range(n))
                 for a in range(n)]
    else:
        raise ValueError(f"unknown family kind {kind!r}")
    s = ybecore.from_sigma(sigma)
    dis = set(ybecore.displacement_group(s).elements)
    pi = s.sigma[0]
    cyclic = {identity(n)}
    power = pi
    while power != identity(n):
        cyclic.add(power)
        power = tuple(pi[v] for v in power)
    meet = dis & cyclic
    pi2 = tuple(pi[pi[v]] for v in range(n))
    if kind == "dihedral":
        assert meet == {identity(n)}, "dihedral family: Dis meets <sigma_0>"
    else:
        assert meet == {identity(n), pi2}, \
            "quaternion family: Dis cap <sigma_0> != {id, sigma_0^2}"
        sig1 = s.sigma[1]
        assert tuple(sig1[sig1[v]] for v in range(n)) == pi2, \
            "quaternion family: sigma_1^2 != sigma_0^2"
    return s
