"""Exhaustive census of indecomposable solutions of level <= 2 by size.

Every such solution of size s arises exactly once from a triple
(m, K, r): a divisor m of s, a finite-index sublattice K of Z^{m-1}
with [Z^{m-1} : K] = s/m, and a twist r in A = Z^{m-1}/K.  The images
e_1, ..., e_{m-1} of the standard basis in A, extended by
e_m = -(e_1 + ... + e_m-1), give m-periodic partial sums
c_i = e_1 + ... + e_i, and the solution is the seam-twisted table on
A x Z_m.  Distinct triples give non-isomorphic solutions, so counting
is pure lattice combinatorics and needs no isomorphism filtering.

The closed-form counts for elementary abelian and cyclic A and the
size-by-size table live here too.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field

from . import ybecore
from .intlat import AbGroup, LatticeQuotient, Vec, sublattices_of_index
from .sconstruct import twisted_table
from .ybecore import FinSolution, TooLarge

CENSUS_CAP = 20


@dataclass(frozen=True)
class CensusEntry:
    """One (m, sublattice, twist) triple; the solution builds on demand."""

    size: int
    m: int
    lattice: LatticeQuotient
    rbar: Vec
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def group(self) -> AbGroup:
        return self.lattice.quotient

    def constants(self) -> tuple[Vec, ...]:
        a = self.group
        cbar = [a.zero]
        acc = a.zero
        for gen in self.lattice.gen_images:
            acc = a.add(acc, gen)
            cbar.append(acc)
        return tuple(cbar[: self.m])

    def solution(self) -> FinSolution:
        if "solution" not in self._cache:
            s = ybecore.from_sigma(
                twisted_table(self.group, self.m, self.constants(), self.rbar))
            assert s.size == self.size
            assert ybecore.is_indecomposable(s), "census output decomposable"
            assert ybecore.is_mpl2_local(s), "census output above level 2"
            self._cache["solution"] = s
        return self._cache["solution"]

    def label(self) -> str:
        digest = hashlib.sha1(repr(self.lattice.hnf).encode()).hexdigest()[:10]
        r_idx = self.group.element_index(self.rbar)
        return f"s{self.size}_m{self.m}_K{digest}_r{r_idx}"


def _check_cap(size: int) -> None:
    if size > CENSUS_CAP:
        raise TooLarge(f"census size {size} beyond cap {CENSUS_CAP}")


def census(size: int) -> list[CensusEntry]:
    """All census entries of the given size, in (m, HNF, twist) order."""
    _check_cap(size)
    entries = []
    for m in sorted(d for d in range(1, size + 1) if size % d == 0):
        for lattice in sublattices_of_index(m - 1, size // m):
            a = lattice.quotient
            for t in range(a.order):
                entries.append(CensusEntry(size, m, lattice, a.element_at(t)))
    entries.sort(key=lambda e: (e.m, e.lattice.hnf,
                                e.group.element_index(e.rbar)))
    return entries


def census_counts(size: int) -> dict[int, int]:
    """Entry counts by m, without building any solution."""
    _check_cap(size)
    counts = {}
    for m in sorted(d for d in range(1, size + 1) if size % d == 0):
        total = len(sublattices_of_index(m - 1, size // m)) * (size // m)
        if total:
            counts[m] = total
    return counts


def count_formula_elementary(p: int, k: int, m: int) -> int:
    """Solutions on A x Z_m with A elementary abelian of order p^k.

    0 when m <= k; p^k when m = k + 1; otherwise p^k times the Gaussian
    binomial quotient prod_{j=k+1}^{m-1}(p^j - 1) / prod_{j=1}^{m-1-k}(p^j - 1).
    """
    assert p >= 2 and k >= 0 and m >= 1
    if k == 0:
        return 1
    if m <= k:
        return 0
    if m == k + 1:
        return p ** k
    num = 1
    for j in range(k + 1, m):
        num *= p ** j - 1
    den = 1
    for j in range(1, m - k):
        den *= p ** j - 1
    assert num % den == 0
    return p ** k * (num // den)


def count_formula_cyclic(p: int, k: int, m: int) -> int:
    """Solutions on A x Z_m with A cyclic of order p^k, for m >= 2."""
    assert p >= 2 and k >= 1 and m >= 2
    return p ** (k * m - m - k + 2) * (p ** (m - 1) - 1) // (p - 1)


def power_of_two_lower_bound(s_exponent: int) -> int:
    """The 2^{s/2} - 1 lower bound at size s = 2^s_exponent, verified."""
    assert s_exponent >= 1
    size = 1 << s_exponent
    bound = (1 << (size // 2)) - 1
    if size <= 16:
        total = sum(census_counts(size).values())
        assert total >= bound, (size, total, bound)
    return bound


def census_breakdown(size: int) -> dict[tuple[int, tuple[int, ...]], int]:
    """Counts keyed by (m, invariant factors of A); no solutions built.

    The SNF diagonal already is the invariant factor chain, so the key
    is canonical.
    """
    _check_cap(size)
    out: dict[tuple[int, tuple[int, ...]], int] = {}
    for m in sorted(d for d in range(1, size + 1) if size % d == 0):
        for lattice in sublattices_of_index(m - 1, size // m):
            key = (m, lattice.quotient.factors)
            out[key] = out.get(key, 0) + lattice.quotient.order
    return dict(sorted(out.items()))


def _entry_stats(entry: CensusEntry) -> tuple[int, tuple[int, ...], bool, bool]:
    group = ybecore.permutation_group(entry.solution())
    abelian = group.is_abelian()
    cyclic = abelian and group.is_cyclic()
    return entry.m, entry.group.factors, abelian, cyclic


def census_summary(size: int, jobs: int = 1) -> dict:
    """Full report for one size: totals by m and by (m, type), group flavor.

    Builds every solution; abelian and cyclic counts come from the
    permutation group predicates, not from the count formulas.  jobs > 1
    fans the per-entry work out over processes; the merge order is the
    census order either way, so output is identical.
    """
    entries = census(size)
    if jobs > 1 and len(entries) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            stats = list(pool.map(_entry_stats, entries, chunksize=8))
    else:
        stats = [_entry_stats(e) for e in entries]
    by_m: dict[int, int] = {}
    by_type: dict[tuple[int, tuple[int, ...]], int] = {}
    abelian = cyclic = 0
    for m, factors, is_ab, is_cy in stats:
        by_m[m] = by_m.get(m, 0) + 1
        key = (m, factors)
        by_type[key] = by_type.get(key, 0) + 1
        abelian += is_ab
        cyclic += is_cy
    assert by_type == census_breakdown(size)
    return {"size": size, "by_m": dict(sorted(by_m.items())),
            "by_type": dict(sorted(by_type.items())),
            "total": len(entries), "abelian": abelian, "cyclic": cyclic}


def table1_row(size: int) -> dict:
    row = census_summary(size)
    del row["by_type"]
    return row


def table1_report(max_size: int) -> list[dict]:
    _check_cap(max_size)
    return [table1_row(s) for s in range(1, max_size + 1)]
