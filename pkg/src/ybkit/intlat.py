"""Finite abelian groups, exact integer normal forms, sublattice enumeration.

Groups are direct products Z_{d_1} x ... x Z_{d_k} given by their factor
tuple; elements are coordinate tuples reduced mod the factors.  Matrix
work (Smith normal form with transforms, column-style Hermite normal
forms) is exact integer arithmetic.  Python ints cannot wrap, but a
63-bit magnitude guard is kept so runaway pivot growth fails loudly
instead of burning time at desk scale.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, prod
from typing import Callable, Iterable, Sequence

Vec = tuple[int, ...]
Matrix = list[list[int]]

OVERFLOW_LIMIT = 2**62


class Overflow(ArithmeticError):
    """An intermediate matrix entry exceeded the 63-bit desk-scale guard."""


# ---------------------------------------------------------------------------
# finite abelian groups


@dataclass(frozen=True)
class AbGroup:
    """Z_{d_1} x ... x Z_{d_k}; factors need not form a divisibility chain."""

    factors: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.factors):
            raise ValueError(f"factors must be >= 1, got {self.factors}")

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def zero(self) -> Vec:
        return (0,) * len(self.factors)

    def reduce(self, x: Sequence[int]) -> Vec:
        return tuple(int(c) % d for c, d in zip(x, self.factors, strict=True))

    def contains(self, x: Sequence[int]) -> bool:
        return (len(x) == len(self.factors)
                and all(0 <= c < d for c, d in zip(x, self.factors)))

    def add(self, x: Vec, y: Vec) -> Vec:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.factors))

    def neg(self, x: Vec) -> Vec:
        return tuple((-a) % d for a, d in zip(x, self.factors))

    def sub(self, x: Vec, y: Vec) -> Vec:
        return tuple((a - b) % d for a, b, d in zip(x, y, self.factors))

    def smul(self, k: int, x: Vec) -> Vec:
        return tuple((k * a) % d for a, d in zip(x, self.factors))

    def elem_order(self, x: Vec) -> int:
        return _elem_order(self, x)

    def elements(self) -> list[Vec]:
        """All elements in lexicographic coordinate order."""
        return list(itertools.product(*(range(d) for d in self.factors)))

    def element_index(self, x: Vec) -> int:
        """Rank of x in lexicographic order (row-major mixed radix)."""
        idx = 0
        for c, d in zip(x, self.factors, strict=True):
            idx = idx * d + c
        return idx

    def element_at(self, idx: int) -> Vec:
        coords = []
        for d in reversed(self.factors):
            coords.append(idx % d)
            idx //= d
        return tuple(reversed(coords))


def _elem_order(group: AbGroup, x: Vec) -> int:
    order = 1
    for c, d in zip(x, group.factors, strict=True):
        if c:
            order = order * (d // gcd(c, d)) // gcd(order, d // gcd(c, d))
    return order


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of an AbGroup as an explicit sorted element tuple."""

    parent: AbGroup
    elements: tuple[Vec, ...]
    generators: tuple[Vec, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: Vec) -> bool:
        return x in self._element_set()

    def _element_set(self) -> frozenset:
        # cached on first use; frozen dataclass, so stash via object.__setattr__
        cached = getattr(self, "_set", None)
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_set", cached)
        return cached


def subgroup_generated(group: AbGroup, gens: Iterable[Vec]) -> Subgroup:
    """Smallest subgroup containing gens, by BFS closure under addition."""
    gens = tuple(group.reduce(g) for g in gens)
    elements = {group.zero}
    frontier = [group.zero]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = group.add(x, g)
                if y not in elements:
                    elements.add(y)
                    new.append(y)
        frontier = new
    sub = Subgroup(group, tuple(sorted(elements)), gens)
    if len(sub.elements) <= 1024:
        assert group.zero in sub
        assert all(group.neg(x) in sub for x in sub.elements)
        assert all(group.add(x, y) in sub
                   for x in sub.elements for y in sub.elements)
    return sub


def all_subgroups(group: AbGroup) -> list[Subgroup]:
    """Every subgroup, ordered by (order, sorted element tuple)."""
    trivial = subgroup_generated(group, ())
    seen = {trivial.elements: trivial}
    frontier = [trivial]
    elems = group.elements()
    while frontier:
        new = []
        for sub in frontier:
            inside = sub._element_set()
            for g in elems:
                if g in inside:
                    continue
                bigger = subgroup_generated(group, sub.generators + (g,))
                if bigger.elements not in seen:
                    seen[bigger.elements] = bigger
                    new.append(bigger)
        frontier = new
    return sorted(seen.values(), key=lambda s: (s.order, s.elements))


# ---------------------------------------------------------------------------
# exact matrix normal forms


def _check_magnitude(rows: Matrix) -> None:
    for row in rows:
        for entry in row:
            if abs(entry) > OVERFLOW_LIMIT:
                raise Overflow(f"entry magnitude {entry} beyond 63-bit guard")


def _identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """(U, D, V) with U*mat*V = D diagonal, d_1 | d_2 | ..., U, V unimodular.

    Classic alternating row/column elimination with transform tracking,
    followed by the gcd fix-up that restores the divisibility chain.
    """
    d = [list(map(int, row)) for row in mat]
    m = len(d)
    n = len(d[0]) if m else 0
    if any(len(row) != n for row in d):
        raise ValueError("ragged matrix")
    u = _identity_matrix(m)
    v = _identity_matrix(n)

    def row_op(i, j, q):  # row_i -= q * row_j, applied to D and U
        d[i] = [a - q * b for a, b in zip(d[i], d[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j, applied to D and V
        for row in d:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def eliminate(t):
        """Clear row t and column t below/right of the pivot at (t, t)."""
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if d[i][j] != 0 and (pivot is None
                                         or abs(d[i][j]) < abs(d[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return False
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            dirty = False
            for i in range(t + 1, m):
                if d[i][t]:
                    q = d[i][t] // d[t][t]
                    row_op(i, t, q)
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, n):
                if d[t][j]:
                    q = d[t][j] // d[t][t]
                    col_op(j, t, q)
                    dirty = dirty or d[t][j] != 0
            _check_magnitude(d)
            if not dirty:
                return True

    rank = 0
    for t in range(min(m, n)):
        if eliminate(t):
            rank = t + 1
        else:
            break

    # restore the divisibility chain d_1 | d_2 | ...
    changed = True
    while changed:
        changed = False
        for t in range(rank - 1):
            a, b = d[t][t], d[t + 1][t + 1]
            if b % a:
                col_op(t, t + 1, -1)  # drops b into column t, row t+1
                eliminate(t)
                eliminate(t + 1)
                changed = True

    for t in range(rank):
        if d[t][t] < 0:
            d[t] = [-a for a in d[t]]
            u[t] = [-a for a in u[t]]
    return u, d, v


def determinant(mat: Sequence[Sequence[int]]) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    a = [list(map(int, row)) for row in mat]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for t in range(n - 1):
        if a[t][t] == 0:
            for i in range(t + 1, n):
                if a[i][t]:
                    a[t], a[i] = a[i], a[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                a[i][j] = (a[i][j] * a[t][t] - a[i][t] * a[t][j]) // prev
        prev = a[t][t]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# sublattices of Z^r and their quotients


@dataclass(frozen=True)
class LatticeQuotient:
    """A finite-index sublattice K <= Z^r with the quotient Z^r / K.

    ``hnf`` is the column-style Hermite normal form whose columns
    generate K: upper triangular, positive diagonal, and each entry
    (i, j) with i < j reduced into [0, hnf[i][i]).  ``gen_images`` are
    the images of the standard basis vectors in ``quotient``.
    """

    rank: int
    hnf: tuple[tuple[int, ...], ...]
    quotient: AbGroup
    gen_images: tuple[Vec, ...]

    @property
    def index(self) -> int:
        return prod(self.hnf[i][i] for i in range(self.rank))


def _ordered_factorizations(n: int, parts: int) -> list[tuple[int, ...]]:
    """All tuples of `parts` positive ints with product n, lex ascending."""
    if parts == 0:
        return [()] if n == 1 else []
    result = []
    for first in sorted(d for d in range(1, n + 1) if n % d == 0):
        for rest in _ordered_factorizations(n // first, parts - 1):
            result.append((first,) + rest)
    return result


def _quotient_of_relations(rank: int, columns: Sequence[Vec]) -> tuple[AbGroup, Matrix, list[int]]:
    """Quotient of Z^rank by the column span; returns (group, U, full diag).

    The projection of x in Z^rank is (U @ x) mod diag, with coordinates
    whose diagonal entry is 1 dropped.
    """
    mat = [[col[i] for col in columns] for i in range(rank)]
    if rank == 0:
        return AbGroup(()), [], []
    u, dd, _ = smith_normal_form(mat)
    diag = [dd[i][i] if i < len(dd[0]) else 0 for i in range(rank)]
    if any(x == 0 for x in diag):
        raise ValueError("relation columns do not have finite index")
    factors = tuple(x for x in diag if x > 1)
    return AbGroup(factors), u, diag


def _project(u: Matrix, diag: list[int], x: Sequence[int]) -> Vec:
    out = []
    for i, d in enumerate(diag):
        if d > 1:
            out.append(sum(u[i][j] * x[j] for j in range(len(x))) % d)
    return tuple(out)


def sublattices_of_index(rank: int, index: int) -> list[LatticeQuotient]:
    """All finite-index-`index` sublattices of Z^rank, in a fixed order.

    Enumerates column-HNF matrices: diagonals over ordered factorizations
    of `index` (lex ascending), free entries (i, j), i < j, in row-major
    odometer order over [0, diag[i]).
    """
    if rank < 0 or index < 1:
        raise ValueError("need rank >= 0 and index >= 1")
    if rank == 0:
        if index == 1:
            return [LatticeQuotient(0, (), AbGroup(()), ())]
        return []
    result = []
    slots = [(i, j) for i in range(rank) for j in range(i + 1, rank)]
    for diag in _ordered_factorizations(index, rank):
        for values in itertools.product(*(range(diag[i]) for i, _ in slots)):
            hnf = [[0] * rank for _ in range(rank)]
            for i in range(rank):
                hnf[i][i] = diag[i]
            for (i, j), val in zip(slots, values):
                hnf[i][j] = val
            columns = [tuple(hnf[i][j] for i in range(rank)) for j in range(rank)]
            quotient, u, full_diag = _quotient_of_relations(rank, columns)
            gen_images = tuple(_project(u, full_diag, e)
                               for e in _standard_basis(rank))
            result.append(LatticeQuotient(
                rank, tuple(tuple(row) for row in hnf), quotient, gen_images))
    return result


def _standard_basis(rank: int) -> list[Vec]:
    return [tuple(int(i == j) for i in range(rank)) for j in range(rank)]


def quotient_group(group: AbGroup, sub: Subgroup) -> tuple[AbGroup, Callable[[Vec], Vec]]:
    """G/H in invariant-factor form, with the projection map.

    Computed from the Smith normal form of [H generators | d_i e_i].
    """
    assert sub.parent == group
    k = group.rank
    columns = [tuple(g) for g in sub.generators]
    columns += [tuple(d if i == j else 0 for i in range(k))
                for j, d in enumerate(group.factors)]
    quotient, u, diag = _quotient_of_relations(k, columns)

    def project(x: Sequence[int]) -> Vec:
        return _project(u, diag, x)

    return quotient, project


def abelian_iso_type(group: AbGroup) -> tuple[int, ...]:
    """Canonical invariant factors d_1 | d_2 | ... with every d_i > 1."""
    k = group.rank
    if k == 0:
        return ()
    mat = [[group.factors[i] if i == j else 0 for j in range(k)] for i in range(k)]
    _, dd, _ = smith_normal_form(mat)
    return tuple(dd[i][i] for i in range(k) if dd[i][i] > 1)
