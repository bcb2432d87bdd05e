"""Finite involutive set-theoretic solutions and their verification oracles.

A solution on X = {0, ..., N-1} is stored as the N x N table
``sigma[x][y] = sigma_x(y)``.  The map r(x, y) = (sigma_x(y), tau_y(x))
must be an involutive non-degenerate solution of the braid relation

    (id x r)(r x id)(id x r) = (r x id)(id x r)(r x id).

tau is always derived from sigma via involutivity,
``tau_y(x) = sigma^{-1}_{sigma_x(y)}(x)``, never stored independently:
one source of truth, no way for the tables to drift apart.

Everything here is an exhaustive desk-scale check: braid over all N^3
triples (vectorized), retraction, multipermutation level, 2-reductivity,
displacement groups, isomorphism search and brute-force congruence
lattices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from . import permkit
from .permkit import Perm, PermGroup, compose, identity, inverse, perm_order

BRUTE_CONGRUENCE_LIMIT = 16


class SolutionError(Exception):
    """Base class for solution validation failures."""


class NotPermutationRow(SolutionError):
    def __init__(self, x):
        super().__init__(f"sigma row {x} is not a permutation")
        self.x = x


class NotInvolutive(SolutionError):
    def __init__(self, x, y):
        super().__init__(f"r^2 != id at pair ({x}, {y})")
        self.pair = (x, y)


class BraidFails(SolutionError):
    def __init__(self, x, y, z):
        super().__init__(f"braid relation fails at triple ({x}, {y}, {z})")
        self.triple = (x, y, z)


class DegenerateTau(SolutionError):
    def __init__(self, y):
        super().__init__(f"derived tau row {y} is not a permutation")
        self.y = y


class RetractIllFormed(SolutionError):
    pass


class NotMultipermutation(SolutionError):
    pass


class NotLevel2(SolutionError):
    pass


class NoUnitRow(SolutionError):
    pass


class PiIncompatible(SolutionError):
    def __init__(self, x, y):
        super().__init__(f"pi compatibility fails at pair ({x}, {y})")
        self.pair = (x, y)


class TooLarge(SolutionError):
    pass


@dataclass(frozen=True)
class FinSolution:
    """Involutive non-degenerate solution; construct via from_sigma."""

    size: int
    sigma: tuple[Perm, ...]
    tau: tuple[Perm, ...]
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __eq__(self, other):
        return (isinstance(other, FinSolution) and self.sigma == other.sigma)

    def __hash__(self):
        return hash(self.sigma)

    def sigma_inv(self, x: int) -> Perm:
        if "sigma_inv" not in self._cache:
            self._cache["sigma_inv"] = tuple(inverse(row) for row in self.sigma)
        return self._cache["sigma_inv"][x]

    def np_tables(self) -> tuple[np.ndarray, np.ndarray]:
        """(S, T) with S[x,y] = sigma_x(y) and T[x,y] = tau_y(x)."""
        if "np" not in self._cache:
            s = np.array(self.sigma, dtype=np.int64).reshape(self.size, self.size)
            t = np.array(self.tau, dtype=np.int64).reshape(self.size, self.size).T
            self._cache["np"] = (s, t)
        return self._cache["np"]


def from_sigma(sigma: Sequence[Sequence[int]]) -> FinSolution:
    """Validate a sigma table and return the solution it defines.

    Checks, in order: rows are permutations, derived tau rows are
    permutations, r^2 = id, braid relation on all triples.
    """
    n = len(sigma)
    rows = []
    for x, row in enumerate(sigma):
        row = tuple(int(v) for v in row)
        if len(row) != n or not permkit.is_perm(row):
            raise NotPermutationRow(x)
        rows.append(row)
    sigma = tuple(rows)
    sigma_inv = tuple(inverse(row) for row in sigma)
    tau = tuple(tuple(sigma_inv[sigma[x][y]][x] for x in range(n))
                for y in range(n))
    for y in range(n):
        if not permkit.is_perm(tau[y]):
            raise DegenerateTau(y)
    s = FinSolution(n, sigma, tau)
    bad = _first_non_involutive(s)
    if bad is not None:
        raise NotInvolutive(*bad)
    ok, witness = verify_braid(s)
    if not ok:
        raise BraidFails(*witness)
    return s


def _first_non_involutive(s: FinSolution) -> tuple[int, int] | None:
    for x in range(s.size):
        for y in range(s.size):
            u = s.sigma[x][y]
            v = s.tau[y][x]
            if (s.sigma[u][v], s.tau[v][u]) != (x, y):
                return (x, y)
    return None


def verify_braid(s: FinSolution) -> tuple[bool, tuple[int, int, int] | None]:
    """Exhaustive braid check over all N^3 triples; first witness if it fails.

    Vectorized in blocks over the first coordinate so memory stays flat
    at a few blocks of N^2 entries.
    """
    n = s.size
    if n == 0:
        return True, None
    ss, tt = s.np_tables()
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    b1, c1 = ss[y, z], tt[y, z]
    block = max(1, (1 << 21) // (n * n))
    for x0 in range(0, n, block):
        x = np.arange(x0, min(x0 + block, n))[:, None, None]

        # left side: (id x r)(r x id)(id x r)
        a2, b2 = ss[x, b1], tt[x, b1]
        left = (a2, ss[b2, c1], tt[b2, c1])

        # right side: (r x id)(id x r)(r x id)
        a1r, b1r = ss[x, y], tt[x, y]
        b2r, c2r = ss[b1r, z], tt[b1r, z]
        right = (ss[a1r, b2r], tt[a1r, b2r], c2r)

        mismatch = ((left[0] != right[0]) | (left[1] != right[1])
                    | (left[2] != right[2]))
        if mismatch.any():
            w = np.argwhere(mismatch)[0]  # argwhere is C-ordered: lex-first
            return False, (int(w[0]) + x0, int(w[1]), int(w[2]))
    return True, None


def is_square_free(s: FinSolution) -> bool:
    return all(s.sigma[x][x] == x and s.tau[x][x] == x for x in range(s.size))


def quotient_by_partition(s: FinSolution, class_of: Sequence[int]) -> FinSolution:
    """Solution induced on the classes of a congruence partition.

    class_of[x] is the class index of point x, classes numbered
    0..k-1 by first occurrence.  Raises RetractIllFormed when the
    induced table is not well defined (the partition was not a
    congruence).
    """
    k = max(class_of) + 1 if s.size else 0
    table = [[None] * k for _ in range(k)]
    for x in range(s.size):
        for y in range(s.size):
            cx, cy, cv = class_of[x], class_of[y], class_of[s.sigma[x][y]]
            if table[cx][cy] is None:
                table[cx][cy] = cv
            elif table[cx][cy] != cv:
                raise RetractIllFormed(
                    f"induced sigma ill-defined on classes ({cx}, {cy})")
    return from_sigma(table)


def _classes_by_rows(rows: Sequence[Perm]) -> list[int]:
    class_of, index = [], {}
    for row in rows:
        if row not in index:
            index[row] = len(index)
        class_of.append(index[row])
    return class_of


def retract(s: FinSolution) -> tuple[FinSolution, list[int]]:
    """Retraction X / (x ~ y iff tau_x = tau_y), with the class map.

    The sigma-row criterion (sigma_x = sigma_y) is asserted to give the
    same classes rather than assumed; a mismatch on a valid solution
    would be a definitional discrepancy and must be escalated.
    """
    class_of = _classes_by_rows(s.tau)
    by_sigma = _classes_by_rows(s.sigma)
    if class_of != by_sigma:
        raise RetractIllFormed(
            "tau-column and sigma-row retraction classes disagree")
    return quotient_by_partition(s, class_of), class_of


def multipermutation_level(s: FinSolution) -> int:
    level = 0
    current = s
    while current.size > 1:
        smaller, _ = retract(current)
        if smaller.size == current.size:
            raise NotMultipermutation(
                f"retraction stabilizes at size {current.size}")
        current = smaller
        level += 1
    return level


def is_mpl2_local(s: FinSolution) -> bool:
    """sigma_{sigma_y(x)} = sigma_{sigma_z(x)} for all x, y, z."""
    for x in range(s.size):
        rows = {s.sigma[s.sigma[y][x]] for y in range(s.size)}
        if len(rows) > 1:
            return False
    return True


def is_2_reductive(s: FinSolution) -> bool:
    """sigma_{sigma_y(x)} = sigma_x for all x, y."""
    return all(s.sigma[s.sigma[y][x]] == s.sigma[x]
               for x in range(s.size) for y in range(s.size))


@dataclass(frozen=True)
class TwoReductive:
    """The (L, R) layer of a level <= 2 solution at a basepoint."""

    size: int
    L: tuple[Perm, ...]
    R: tuple[Perm, ...]

    def __post_init__(self):
        assert all(permkit.is_perm(row) for row in self.L)
        assert all(self.L[self.L[y][x]] == self.L[x]
                   for x in range(self.size) for y in range(self.size)), \
            "L layer is not 2-reductive"


def isotope(s: FinSolution, e: int) -> TwoReductive:
    """L_x = sigma_x . sigma_e^{-1}, R_y = sigma_e . tau_{sigma_e^{-1}(y)}."""
    if not is_mpl2_local(s):
        raise NotLevel2("isotope requires multipermutation level <= 2")
    inv_e = s.sigma_inv(e)
    ll = tuple(compose(s.sigma[x], inv_e) for x in range(s.size))
    rr = tuple(compose(s.sigma[e], s.tau[inv_e[y]]) for y in range(s.size))
    return TwoReductive(s.size, ll, rr)


def assemble(two_red: TwoReductive, pi: Perm) -> FinSolution:
    """sigma_x := L_x . pi, valid when L_{pi(y)} pi L_x = L_{pi(x)} pi L_y."""
    n = two_red.size
    if not any(two_red.L[a] == identity(n) for a in range(n)):
        raise NoUnitRow("no point with identity L row")
    for x in range(n):
        for y in range(x, n):
            lhs = compose(two_red.L[pi[y]], compose(pi, two_red.L[x]))
            rhs = compose(two_red.L[pi[x]], compose(pi, two_red.L[y]))
            if lhs != rhs:
                raise PiIncompatible(x, y)
    return from_sigma([compose(two_red.L[x], pi) for x in range(n)])


# ---------------------------------------------------------------------------
# permutation and displacement groups


def permutation_group(s: FinSolution) -> PermGroup:
    cache = s._cache
    if "perm_group" not in cache:
        gens = sorted(set(s.sigma))
        cache["perm_group"] = PermGroup.from_gens(gens, degree=s.size)
    return cache["perm_group"]


def displacement_group(s: FinSolution, base: int = 0) -> PermGroup:
    """Dis(X) = <sigma_x sigma_base^{-1}>, with structural sanity checks.

    Asserts: Dis is normal in G(X); abelian when the level is <= 2; and
    equals the set of zero-exponent-sum words in the sigma's, which at
    desk scale reduces to normality plus all sigma's lying in one coset.
    """
    key = ("dis_group", base)
    cache = s._cache
    if key not in cache:
        inv_base = s.sigma_inv(base)
        gens = sorted({compose(s.sigma[x], inv_base) for x in range(s.size)})
        dis = PermGroup.from_gens(gens, degree=s.size)
        elements = set(dis.elements)
        for row in set(s.sigma):
            row_inv = inverse(row)
            assert all(compose(row, compose(d, row_inv)) in elements
                       for d in gens), "displacement group not normal"
        assert all(compose(row, inv_base) in elements for row in s.sigma), \
            "sigma rows do not lie in a single displacement coset"
        if is_mpl2_local(s):
            assert dis.is_abelian(), "displacement group not abelian at level <= 2"
        cache[key] = dis
    return cache[key]


@dataclass(frozen=True)
class BasepointFrame:
    """pi = sigma at the base, the tilde orbit, and the L / D sequences."""

    base: int
    pi: Perm
    tilde: tuple[int, ...]
    Lseq: tuple[Perm, ...]
    Dseq: tuple[Perm, ...]


def basepoint_frame(s: FinSolution, base: int = 0) -> BasepointFrame:
    if not is_mpl2_local(s):
        raise NotLevel2("basepoint frame requires multipermutation level <= 2")
    pi = s.sigma[base]
    n = perm_order(pi)
    pi_inv = inverse(pi)
    tilde = [base]
    for _ in range(n - 1):
        tilde.append(pi[tilde[-1]])
    lseq = [compose(s.sigma[t], pi_inv) for t in tilde]
    dseq = [compose(lseq[i], inverse(lseq[i - 1])) for i in range(n)]
    assert lseq[0] == identity(s.size)
    if is_indecomposable(s):
        dis = set(displacement_group(s, base).elements)
        assert set(permkit.group_closure(lseq)) == dis, "Dis != <L_i~>"
        assert set(permkit.group_closure(dseq)) == dis, "Dis != <D_i~>"
    return BasepointFrame(base, pi, tuple(tilde), tuple(lseq), tuple(dseq))


def is_indecomposable(s: FinSolution) -> bool:
    cache = s._cache
    if "indecomposable" not in cache:
        cache["indecomposable"] = permutation_group(s).is_transitive()
    return cache["indecomposable"]


def is_uniconnected(s: FinSolution) -> bool:
    return permutation_group(s).is_regular()


# ---------------------------------------------------------------------------
# isomorphism search


def _fast_path_eligible(s: FinSolution) -> bool:
    return is_mpl2_local(s) and is_indecomposable(s)


def _propagate(s1: FinSolution, s2: FinSolution, base: int, image: int):
    """Unique homomorphism extension with phi(base) = image, or None.

    Sweeps phi(sigma_x(y)) := sigma'_{phi(x)}(phi(y)) over known pairs to
    a fixpoint; at most one extension exists for indecomposable level <= 2
    solutions, so a conflict kills this image outright.
    """
    n = s1.size
    phi = [None] * n
    phi[base] = image
    changed = True
    while changed:
        changed = False
        known = [x for x in range(n) if phi[x] is not None]
        for x in known:
            for y in known:
                target = s1.sigma[x][y]
                value = s2.sigma[phi[x]][phi[y]]
                if phi[target] is None:
                    phi[target] = value
                    changed = True
                elif phi[target] != value:
                    return None
    if any(v is None for v in phi) or len(set(phi)) != n:
        return None
    for x in range(n):
        for y in range(n):
            if phi[s1.sigma[x][y]] != s2.sigma[phi[x]][phi[y]]:
                return None
    return tuple(phi)


def _backtrack_isomorphism(s1: FinSolution, s2: FinSolution, find_all=False):
    """Plain backtracking over bijections, in lexicographic image order."""
    n = s1.size
    phi = [None] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []

    def consistent(k: int) -> bool:
        # check every constraint involving the newly assigned point k
        for x in range(k + 1):
            for y in range(k + 1):
                if x != k and y != k:
                    continue
                target = s1.sigma[x][y]
                value = s2.sigma[phi[x]][phi[y]]
                if target <= k:
                    if phi[target] != value:
                        return False
                elif used[value]:
                    # value already taken by an assigned point != target
                    return False
        return True

    def full_check() -> bool:
        return all(phi[s1.sigma[x][y]] == s2.sigma[phi[x]][phi[y]]
                   for x in range(n) for y in range(n))

    def search(k: int):
        if k == n:
            if full_check():
                found.append(tuple(phi))
                return not find_all
            return False
        for v in range(n):
            if used[v]:
                continue
            phi[k] = v
            used[v] = True
            if consistent(k) and search(k + 1):
                return True
            phi[k] = None
            used[v] = False
        return False

    if n == 0:
        return [()]
    search(0)
    return found


def find_isomorphism(s1: FinSolution, s2: FinSolution,
                     force_backtracking: bool = False):
    """First isomorphism s1 -> s2 in deterministic order, or None."""
    if s1.size != s2.size:
        return None
    if not force_backtracking and _fast_path_eligible(s1) and _fast_path_eligible(s2):
        for image in range(s2.size):
            phi = _propagate(s1, s2, 0, image)
            if phi is not None:
                return phi
        return None
    found = _backtrack_isomorphism(s1, s2, find_all=False)
    return found[0] if found else None


def automorphism_group(s: FinSolution) -> PermGroup:
    if _fast_path_eligible(s):
        auts = [phi for image in range(s.size)
                if (phi := _propagate(s, s, 0, image)) is not None]
    else:
        auts = _backtrack_isomorphism(s, s, find_all=True)
    group = PermGroup.from_gens(auts, degree=s.size)
    assert group.order == len(set(auts)), "automorphisms not closed"
    return group


# ---------------------------------------------------------------------------
# brute-force congruence lattice


def _canonical_partition(parent_of: list[int]) -> tuple[int, ...]:
    labels: dict[int, int] = {}
    out = []
    for x in range(len(parent_of)):
        root = parent_of[x]
        if root not in labels:
            labels[root] = len(labels)
        out.append(labels[root])
    return tuple(out)


def _close_congruence(s: FinSolution, seed_pairs) -> tuple[int, ...]:
    """Smallest congruence identifying the seed pairs (union-find closure)."""
    n = s.size
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    worklist = []

    def union(a: int, b: int):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra
            worklist.append((a, b))

    sigma = s.sigma
    sigma_inv = [s.sigma_inv(x) for x in range(n)]
    for a, b in seed_pairs:
        union(a, b)
    while worklist:
        a, b = worklist.pop()
        for y in range(n):
            union(sigma[a][y], sigma[b][y])
            union(sigma_inv[a][y], sigma_inv[b][y])
        for x in range(n):
            union(sigma[x][a], sigma[x][b])
            union(sigma_inv[x][a], sigma_inv[x][b])
    return _canonical_partition([find(x) for x in range(n)])


def brute_congruences(s: FinSolution, limit: int = BRUTE_CONGRUENCE_LIMIT) -> list[tuple[int, ...]]:
    """All congruence partitions, via principal congruences + join closure."""
    n = s.size
    if n > limit:
        raise TooLarge(f"size {n} beyond brute congruence limit {limit}")
    congruences = {tuple(range(n))}
    principals = set()
    for a in range(n):
        for b in range(a + 1, n):
            principals.add(_close_congruence(s, [(a, b)]))
    congruences |= principals
    frontier = set(principals)
    while frontier:
        new = set()
        for p in frontier:
            for q in congruences:
                pairs = [(x, y) for part in (p, q)
                         for x, y in _partition_pairs(part)]
                joined = _close_congruence(s, pairs)
                if joined not in congruences and joined not in new:
                    new.add(joined)
        congruences |= new
        frontier = new
    return sorted(congruences)


def _partition_pairs(partition: tuple[int, ...]):
    """One spanning pair list for each class of the partition."""
    first: dict[int, int] = {}
    for x, cls in enumerate(partition):
        if cls in first:
            yield (first[cls], x)
        else:
            first[cls] = x


# ---------------------------------------------------------------------------
# JSON form


def to_json_dict(s: FinSolution, meta: dict | None = None) -> dict:
    out = {"size": s.size, "sigma": [list(row) for row in s.sigma]}
    if meta:
        out["meta"] = meta
    return out


def from_json_dict(data: dict) -> FinSolution:
    return from_sigma(data["sigma"])
