"""Congruences and homomorphic images of the G x Z_n construction.

Every congruence of S(G x Z_n, c) is described by a triple (m, H, r):
m divides n, H is a subgroup of G containing all differences
c_i - c_{i+m}, and r is an element of G with (n/m) * r in H.  Two
points are identified when

    (a, i) == (a', i')  iff  m | (i - i')  and
                             a' - a = ((i - i') / m) * r  (mod H).

The sign in the second condition is the one that makes the direct
quotient construction below agree bit-exactly with the class-based
quotient of the materialized solution; the test suite locks it on
solutions where r has order > 2, where the two readings differ.

Quotients are again of the same shape: the induced solution lives on
(G/H) x Z_m with projected constants, plus a seam twist by the image
of r when the Z_m coordinate wraps.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ybecore
from .intlat import AbGroup, Subgroup, Vec, all_subgroups, quotient_group, \
    subgroup_generated
from .permkit import cycle_lengths, compose, perm_power
from .sconstruct import SParams, build_solution, twisted_table
from .ybecore import FinSolution


class BadDescriptor(Exception):
    """Descriptor does not satisfy the congruence conditions for the params."""


@dataclass(frozen=True)
class CongruenceDescriptor:
    """Congruence triple (m, H, r); r stored as the lex-least coset member."""

    m: int
    H: Subgroup
    r: Vec

    def __post_init__(self):
        group = self.H.parent
        reduced = min(group.add(group.reduce(self.r), h)
                      for h in self.H.elements)
        object.__setattr__(self, "r", reduced)

    def same_quotient_as(self, other: "CongruenceDescriptor") -> bool:
        return (self.m == other.m and self.H.elements == other.H.elements
                and self.r == other.r)


def descriptor_to_json(d: CongruenceDescriptor) -> dict:
    return {"m": d.m, "H": [list(h) for h in d.H.elements], "r": list(d.r)}


def descriptor_from_json(group: AbGroup, data: dict) -> CongruenceDescriptor:
    # the H list may be the full subgroup or just generators; close it
    gens = tuple(tuple(int(x) for x in h) for h in data["H"])
    sub = subgroup_generated(group, gens)
    return CongruenceDescriptor(int(data["m"]), sub,
                                tuple(int(x) for x in data["r"]))


def validate_descriptor(p: SParams, d: CongruenceDescriptor) -> None:
    if d.H.parent != p.group:
        raise BadDescriptor("subgroup belongs to a different group")
    if p.n % d.m != 0:
        raise BadDescriptor(f"m = {d.m} does not divide n = {p.n}")
    for i in range(p.n):
        if p.group.sub(p.c[i], p.c[(i + d.m) % p.n]) not in d.H:
            raise BadDescriptor(f"c_{i} - c_{i + d.m} not in H")
    if p.group.smul(p.n // d.m, d.r) not in d.H:
        raise BadDescriptor("(n/m) * r is not in H")


def enumerate_congruences(p: SParams) -> list[CongruenceDescriptor]:
    """All congruences of S(G x Z_n, c), one descriptor per quotient.

    Deterministic order: m over divisors of n descending (the identity
    congruence first), subgroups by ascending order then lex, twists by
    lex on the canonical representative.
    """
    out = []
    subs = all_subgroups(p.group)
    for m in sorted((d for d in range(1, p.n + 1) if p.n % d == 0),
                    reverse=True):
        diffs = tuple(p.group.sub(p.c[i], p.c[(i + m) % p.n])
                      for i in range(p.n))
        floor = subgroup_generated(p.group, diffs)
        floor_set = set(floor.elements)
        for sub in subs:
            if not floor_set.issubset(sub.elements):
                continue
            seen = set()
            quota = p.n // m
            for r in p.group.elements():
                if p.group.smul(quota, r) not in sub:
                    continue
                d = CongruenceDescriptor(m, sub, r)
                if d.r not in seen:
                    seen.add(d.r)
                    out.append(d)
    return out


def _projected_constants(p: SParams, d: CongruenceDescriptor):
    quotient, project = quotient_group(p.group, d.H)
    cbar = tuple(project(p.c[i]) for i in range(d.m))
    return quotient, project, cbar, project(d.r)


def quotient_by(p: SParams, d: CongruenceDescriptor) -> FinSolution:
    """Direct quotient on (G/H) x Z_m: projected constants, seam twist r."""
    validate_descriptor(p, d)
    quotient, _, cbar, rbar = _projected_constants(p, d)
    return ybecore.from_sigma(twisted_table(quotient, d.m, cbar, rbar))


def partition_of_descriptor(p: SParams, d: CongruenceDescriptor) -> tuple[int, ...]:
    """Class labels (first-occurrence order) of the congruence on G x Z_n."""
    validate_descriptor(p, d)
    g = p.group
    labels = [-1] * p.size
    fresh = 0
    for idx in range(p.size):
        if labels[idx] != -1:
            continue
        a, i = p.point_of(idx)
        for k in range(p.n // d.m):
            shifted = g.sub(a, g.smul(k, d.r))
            i2 = (i + k * d.m) % p.n
            for h in d.H.elements:
                labels[p.point_index(g.add(shifted, h), i2)] = fresh
        fresh += 1
    assert all(v >= 0 for v in labels)
    return tuple(labels)


def class_based_quotient(p: SParams, d: CongruenceDescriptor) -> FinSolution:
    """Oracle route: materialize X, quotient by the class partition, then
    relabel classes to the (G/H) x Z_m point encoding.

    Kept separate from quotient_by on purpose: the two routes must agree
    bit-exactly and the tests compare them.
    """
    part = partition_of_descriptor(p, d)
    big = build_solution(p)
    raw = ybecore.quotient_by_partition(big, part)
    quotient, project, _, _ = _projected_constants(p, d)
    k = raw.size
    relabel = [None] * k
    for idx, lab in enumerate(part):
        a, i = p.point_of(idx)
        if i < d.m:
            target = quotient.element_index(project(a)) * d.m + i
            if relabel[lab] is None:
                relabel[lab] = target
            else:
                assert relabel[lab] == target, "class projection ill-defined"
    assert sorted(relabel) == list(range(k))
    sigma = [[0] * k for _ in range(k)]
    for cx in range(k):
        for cy in range(k):
            sigma[relabel[cx]][relabel[cy]] = relabel[raw.sigma[cx][cy]]
    return ybecore.from_sigma(sigma)


def quotients_isomorphic(p: SParams, d1: CongruenceDescriptor,
                         d2: CongruenceDescriptor) -> bool:
    """Quotients coincide up to isomorphism iff (m, H, r mod H) coincide."""
    validate_descriptor(p, d1)
    validate_descriptor(p, d2)
    return d1.same_quotient_as(d2)


def quotient_invariant_report(p: SParams, d: CongruenceDescriptor) -> dict:
    """Structural invariants of the built quotient, measured and flagged.

    Checks the displacement coset count [G:H] at the basepoint, the index
    m of the stabilizer-displacement product in the permutation group,
    uniform sigma cycle length k * m (k the order of the twist in G/H),
    and that all m-th powers of the sigma rows coincide.
    """
    y = quotient_by(p, d)
    quotient, _, _, rbar = _projected_constants(p, d)
    dis = ybecore.displacement_group(y)
    dis_e = dis.point_stabilizer(0)
    coset_count = dis.order // len(dis_e)

    big = ybecore.permutation_group(y)
    stab = big.point_stabilizer(0)
    product = {compose(g, h) for g in stab for h in dis.elements}
    index = big.order // len(product)

    k = quotient.elem_order(rbar)
    expected_len = k * d.m
    lengths = {cycle_lengths(row) for row in y.sigma}
    uniform = lengths == {(expected_len,) * (y.size // expected_len)}

    powers = {perm_power(row, d.m) for row in y.sigma}

    report = {
        "size": y.size,
        "m": d.m,
        "index_G_to_H": quotient.order,
        "dis_coset_count": coset_count,
        "dis_coset_ok": coset_count == quotient.order,
        "stab_dis_index": index,
        "stab_dis_index_ok": index == d.m,
        "twist_order": k,
        "cycle_length": expected_len,
        "cycle_length_ok": uniform,
        "m_th_powers_equal": len(powers) == 1,
    }
    report["all_pass"] = all(report[key] for key in
                             ("dis_coset_ok", "stab_dis_index_ok",
                              "cycle_length_ok", "m_th_powers_equal"))
    return report


def identity_descriptor(p: SParams) -> CongruenceDescriptor:
    return CongruenceDescriptor(p.n, subgroup_generated(p.group, ()), p.group.zero)


def total_descriptor(p: SParams) -> CongruenceDescriptor:
    full = subgroup_generated(
        p.group, tuple(p.group.element_at(t) for t in range(p.group.order)))
    return CongruenceDescriptor(1, full, p.group.zero)
