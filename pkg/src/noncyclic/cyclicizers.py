"""Cyclicizers, maximal cyclic subgroups, tidiness, and the prime graph.

The cyclicizer of x is the set of y such that <x, y> is cyclic; it equals
the union of the cyclic subgroups containing x, which is how the bitset
rows on Group are computed. The group cyclicizer is the intersection of
all element cyclicizers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import EmptySet, VerificationFailure
from .groups import Group, Subgroup, prime_factorization


def bits_to_indices(bits: int) -> list[int]:
    out = []
    while bits:
        b = bits & -bits
        out.append(b.bit_length() - 1)
        bits ^= b
    return out


@dataclass(frozen=True)
class MaximalCyclic:
    """A maximal cyclic subgroup with its designated (smallest) generator."""

    generator: int
    bits: int

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def members(self) -> tuple:
        return tuple(bits_to_indices(self.bits))


@dataclass(frozen=True)
class CyclicizerTable:
    """All cyclicizer data of one group."""

    group: Group
    rows: tuple          # rows[x] = bitset of Cyc(x)
    cyc_bits: int        # bitset of the group cyclicizer
    maximal: tuple       # MaximalCyclic, ordered by (size desc, generator asc)

    @property
    def cyc_size(self) -> int:
        return self.cyc_bits.bit_count()

    def cyc_members(self) -> tuple:
        return tuple(bits_to_indices(self.cyc_bits))

    def cyc_of(self, x: int) -> tuple:
        return tuple(bits_to_indices(self.rows[x]))

    def to_json_dict(self) -> dict:
        return {
            "order": self.group.order,
            "cyc_G": list(self.cyc_members()),
            "cyc_of": [list(self.cyc_of(x)) for x in range(self.group.order)],
            "maximal_cyclic": [
                {"generator": m.generator, "members": list(m.members())}
                for m in self.maximal
            ],
        }


def cyclicizer_table(group: Group) -> CyclicizerTable:
    """Compute (and memoize on the group) the full cyclicizer table."""
    if group._cyc_table is not None:
        return group._cyc_table
    rows = group.pair_rows
    inter = (1 << group.order) - 1
    for r in rows:
        inter &= r
    subs = sorted(group.cyclic_subgroups,
                  key=lambda gb: (-gb[1].bit_count(), gb[0]))
    maximal = []
    for g, bits in subs:
        if not any(bits | kept.bits == kept.bits for kept in maximal):
            maximal.append(MaximalCyclic(g, bits))
    table = CyclicizerTable(group, tuple(rows), inter, tuple(maximal))
    group._cyc_table = table
    return table


def cyclicizer(group: Group, x: int) -> tuple:
    """Sorted element indices of Cyc(x)."""
    return tuple(bits_to_indices(group.pair_rows[x]))


def cyclicizer_of_set(group: Group, xs: Iterable[int]) -> tuple:
    """Sorted indices of the simultaneous cyclicizer of ``xs``."""
    xs = list(xs)
    if not xs:
        raise EmptySet("cyclicizer of the empty set is undefined")
    rows = group.pair_rows
    inter = (1 << group.order) - 1
    for x in xs:
        inter &= rows[x]
    return tuple(bits_to_indices(inter))


def maximal_cyclic_subgroups(group: Group) -> list[Subgroup]:
    """Maximal cyclic subgroups, deduplicated, (size desc, generator asc)."""
    table = cyclicizer_table(group)
    return [Subgroup(group, m.members()) for m in table.maximal]


@dataclass(frozen=True)
class TidinessResult:
    is_tidy: bool
    witness: Optional[int]              # smallest x whose Cyc(x) is no subgroup
    violating_pair: Optional[tuple]     # first (a, b) with a*b outside Cyc(x)

    def __bool__(self):
        return self.is_tidy


def is_tidy(group: Group) -> TidinessResult:
    """A group is tidy when every cyclicizer is a subgroup."""
    rows = group.pair_rows
    n = group.order
    flat = group._flat
    for x in range(n):
        bits = rows[x]
        members = bits_to_indices(bits)
        for a in members:
            base = a * n
            for b in members:
                if not (bits >> flat[base + b]) & 1:
                    return TidinessResult(False, x, (a, b))
    return TidinessResult(True, None, None)


@dataclass(frozen=True)
class PrimeGraph:
    primes: tuple
    edges: tuple          # (p, q) pairs with p < q
    components: tuple     # tuple of tuples of primes

    @property
    def component_count(self) -> int:
        return len(self.components)


def prime_graph(group: Group) -> PrimeGraph:
    """Prime divisors of |G|, adjacent when an element order is divisible
    by both; the number of connected components is the vertex for several
    order-spectrum arguments."""
    primes = [p for p, _ in prime_factorization(group.order)]
    orders = set(group.elem_orders)
    edges = []
    for i, p in enumerate(primes):
        for q in primes[i + 1:]:
            if any(o % (p * q) == 0 for o in orders):
                edges.append((p, q))
    parent = {p: p for p in primes}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for p, q in edges:
        parent[find(p)] = find(q)
    comps: dict[int, list] = {}
    for p in primes:
        comps.setdefault(find(p), []).append(p)
    components = tuple(tuple(sorted(c)) for c in
                       sorted(comps.values(), key=min))
    return PrimeGraph(tuple(primes), tuple(edges), components)


@dataclass(frozen=True)
class Quotient:
    group: Group          # the quotient, identity coset at index 0
    coset_of: tuple       # original element -> quotient index
    reps: tuple           # quotient index -> smallest original element


def quotient_by_central(group: Group, members: Iterable[int],
                        label: Optional[str] = None) -> Quotient:
    """Quotient by a central subgroup, cosets represented by their smallest
    element index."""
    n = group.order
    flat = group._flat
    mem = sorted(set(members))
    memset = set(mem)
    if 0 not in memset:
        raise VerificationFailure("central subgroup must contain the identity")
    coset_of = [-1] * n
    reps = []
    for r in range(n):
        if coset_of[r] >= 0:
            continue
        qi = len(reps)
        reps.append(r)
        base = r * n
        for c in mem:
            y = flat[base + c]
            if coset_of[y] >= 0 and coset_of[y] != qi:
                raise VerificationFailure("cosets are not well defined; "
                                          "subgroup is not normal/central")
            coset_of[y] = qi
    k = len(reps)
    table = [[0] * k for _ in range(k)]
    for i, a in enumerate(reps):
        base = a * n
        row = table[i]
        for j, b in enumerate(reps):
            row[j] = coset_of[flat[base + b]]
    labels = [f"[{group.labels[r]}]" for r in reps]
    q = Group(table, labels=labels,
              label=label or f"{group.label}/N{len(mem)}", check="fast")
    return Quotient(q, tuple(coset_of), tuple(reps))


def quotient_by_cyclicizer(group: Group) -> Quotient:
    table = cyclicizer_table(group)
    return quotient_by_central(group, table.cyc_members(),
                               label=f"{group.label}/cyc")
