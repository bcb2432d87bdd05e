"""Exact permutation calculus on {0, ..., N-1} at desk scale.

A permutation is a tuple ``p`` with ``p[i]`` the image of point ``i``.
Composition is function composition: ``compose(p, q)`` applies ``q``
first, so ``compose(p, q)[i] == p[q[i]]``.

Groups are handled naively but exhaustively: explicit element lists via
breadth-first closure, with a cap guarding against instances beyond desk
scale.  All orderings are deterministic (lexicographic on image tuples)
so downstream reports are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

Perm = tuple[int, ...]

DEFAULT_CAP = 10**6


class CapExceeded(Exception):
    """A closure or orbit grew beyond the requested cap."""


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: (p . q)(i) = p[q[i]]."""
    return tuple(p[q[i]] for i in range(len(q)))


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_power(p: Perm, k: int) -> Perm:
    if k < 0:
        return perm_power(inverse(p), -k)
    result = identity(len(p))
    base = p
    while k:
        if k & 1:
            result = compose(base, result)
        base = compose(base, base)
        k >>= 1
    return result


def perm_order(p: Perm) -> int:
    e = identity(len(p))
    q, k = p, 1
    while q != e:
        q = compose(p, q)
        k += 1
    return k


def cycle_lengths(p: Perm) -> tuple[int, ...]:
    """Multiset of cycle lengths, sorted ascending (fixed points included)."""
    seen = [False] * len(p)
    lengths = []
    for start in range(len(p)):
        if seen[start]:
            continue
        length, j = 0, start
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def group_closure(gens: Iterable[Perm], cap: int = DEFAULT_CAP) -> list[Perm]:
    """Explicit element list of <gens>, BFS over products, sorted lex.

    Raises CapExceeded when the group has more than ``cap`` elements.
    The output is independent of generator order (it is a set, sorted).
    """
    gens = sorted(set(gens))
    if gens:
        n = len(gens[0])
        if any(len(g) != n or not is_perm(g) for g in gens):
            raise ValueError("generators must be permutations of one degree")
    else:
        n = 0
    e = identity(n)
    elements = {e}
    frontier = [e]
    while frontier:
        new = []
        for p in frontier:
            for g in gens:
                q = compose(g, p)
                if q not in elements:
                    elements.add(q)
                    new.append(q)
                    if len(elements) > cap:
                        raise CapExceeded(f"closure exceeds cap {cap}")
        frontier = new
    return sorted(elements)


def orbit(gens: Iterable[Perm], point: int) -> list[int]:
    """Orbit of ``point`` under <gens>, by BFS; never builds the closure."""
    gens = list(gens)
    seen = {point}
    frontier = [point]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return sorted(seen)


def point_stabilizer(group_elements: Iterable[Perm], point: int) -> list[Perm]:
    """Subset of a full closure fixing ``point``."""
    return sorted(p for p in group_elements if p[point] == point)


@dataclass(frozen=True)
class PermGroup:
    """A permutation group given by generators, with a cached closure."""

    degree: int
    generators: tuple[Perm, ...]
    cap: int = DEFAULT_CAP
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def from_gens(cls, gens: Iterable[Perm], degree: int | None = None,
                  cap: int = DEFAULT_CAP) -> "PermGroup":
        gens = sorted(set(gens))
        if degree is None:
            if not gens:
                raise ValueError("degree required for an empty generating set")
            degree = len(gens[0])
        return cls(degree, tuple(gens), cap)

    @property
    def elements(self) -> list[Perm]:
        if "elements" not in self._cache:
            if self.generators:
                self._cache["elements"] = group_closure(self.generators, self.cap)
            else:
                self._cache["elements"] = [identity(self.degree)]
        return self._cache["elements"]

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, p: Perm) -> bool:
        return p in set(self.elements)

    def orbit(self, point: int) -> list[int]:
        return orbit(self.generators, point) if self.generators else [point]

    def point_stabilizer(self, point: int) -> list[Perm]:
        return point_stabilizer(self.elements, point)

    def is_transitive(self) -> bool:
        return self.degree > 0 and len(self.orbit(0)) == self.degree

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order == self.degree

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(compose(a, b) == compose(b, a)
                   for i, a in enumerate(gens) for b in gens[i + 1:])

    def is_cyclic(self) -> bool:
        order = self.order
        return any(perm_order(p) == order for p in self.elements)


def action_predicates(group: PermGroup) -> dict[str, bool]:
    """The four action predicates used throughout the classification."""
    return {
        "is_transitive": group.is_transitive(),
        "is_regular": group.is_regular(),
        "is_abelian": group.is_abelian(),
        "is_cyclic": group.is_cyclic(),
    }
