"""The non-cyclic graph of a finite group and its invariants.

Vertices are the elements outside the group cyclicizer; two vertices are
joined when they do not generate a cyclic subgroup. Adjacency is stored as
packed bit rows over vertex positions so that BFS, degree censuses and
complement scans run on machine words.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import factorial
from typing import Optional, Sequence

from .cyclicizers import (CyclicizerTable, bits_to_indices, cyclicizer_table,
                          prime_graph)
from .errors import Disconnected, GroupIsCyclic, VerificationFailure
from .groups import Group, is_cyclic_group


def _make_compressor(keep: Sequence[int]):
    """Function mapping a bitset over group indices to a bitset over the
    positions of ``keep`` (sorted). Works segment-wise, so the common case
    of dropping only a few positions stays O(#segments) per row."""
    segs = []
    i = 0
    out = 0
    while i < len(keep):
        j = i
        while j + 1 < len(keep) and keep[j + 1] == keep[j] + 1:
            j += 1
        length = j - i + 1
        segs.append((keep[i], (1 << length) - 1, out))
        out += length
        i = j + 1

    def compress(bits: int) -> int:
        acc = 0
        for start, mask, shift in segs:
            acc |= ((bits >> start) & mask) << shift
        return acc

    return compress


@dataclass(frozen=True)
class NonCyclicGraph:
    group: Group
    vertices: tuple      # group element indices, ascending
    adjacency: tuple     # bitset rows over vertex positions

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def degree(self, pos: int) -> int:
        return self.adjacency[pos].bit_count()

    def vertex_label(self, pos: int) -> str:
        return self.group.labels[self.vertices[pos]]

    def position_of(self, element: int) -> int:
        # vertices are sorted, so bisect would do; linear is fine at scale
        return self.vertices.index(element)


def build_graph(group: Group,
                ctable: Optional[CyclicizerTable] = None) -> NonCyclicGraph:
    """Build the non-cyclic graph; raises GroupIsCyclic when undefined."""
    if is_cyclic_group(group):
        raise GroupIsCyclic(f"{group.label} is cyclic")
    if ctable is None:
        ctable = cyclicizer_table(group)
    cyc = ctable.cyc_bits
    vertices = [i for i in range(group.order) if not (cyc >> i) & 1]
    compress = _make_compressor(vertices)
    vmask_full = 0
    for v in vertices:
        vmask_full |= 1 << v
    rows = ctable.rows
    adjacency = tuple(compress(vmask_full & ~rows[v]) for v in vertices)
    return NonCyclicGraph(group, tuple(vertices), adjacency)


# ---------------------------------------------------------------------------
# Invariants


def _bfs_levels(adj: Sequence[int], start: int):
    """Yield (distance, frontier bitset); stops when no new vertices."""
    visited = 1 << start
    frontier = visited
    dist = 0
    yield dist, frontier, visited
    while True:
        nxt = 0
        f = frontier
        while f:
            b = f & -f
            nxt |= adj[b.bit_length() - 1]
            f ^= b
        nxt &= ~visited
        if not nxt:
            return
        visited |= nxt
        frontier = nxt
        dist += 1
        yield dist, frontier, visited


@dataclass(frozen=True)
class DiameterInfo:
    diameter: int
    witness: tuple        # (pos, pos), lexicographically least pair
    eccentricities: tuple

    def witness_labels(self, graph: NonCyclicGraph) -> tuple:
        return tuple(graph.vertex_label(p) for p in self.witness)


def diameter_info(graph: NonCyclicGraph) -> DiameterInfo:
    """All-source BFS; asserts connectivity (a disconnected non-cyclic graph
    would contradict the connectivity theorem and raises Disconnected)."""
    adj = graph.adjacency
    nv = graph.n_vertices
    full = (1 << nv) - 1
    ecc = [0] * nv
    for s in range(nv):
        visited = 1 << s
        dist = 0
        for dist, _, visited in _bfs_levels(adj, s):
            pass
        if visited != full:
            raise Disconnected(
                f"graph of {graph.group.label} is not connected")
        ecc[s] = dist
    diam = max(ecc)
    witness = None
    for s in range(nv):
        if ecc[s] != diam:
            continue
        last = 0
        for d, frontier, _ in _bfs_levels(adj, s):
            if d == diam:
                last = frontier
        t = (last & -last).bit_length() - 1
        witness = (s, t)
        break
    return DiameterInfo(diam, witness, tuple(ecc))


def distance(graph: NonCyclicGraph, pos_a: int, pos_b: int) -> int:
    for d, frontier, _ in _bfs_levels(graph.adjacency, pos_a):
        if (frontier >> pos_b) & 1:
            return d
    raise Disconnected(f"no path between positions {pos_a} and {pos_b}")


@dataclass(frozen=True)
class CliqueChromatic:
    omega: int
    clique: tuple        # vertex positions, pairwise adjacent
    chi: int
    coloring: tuple      # color per vertex position


def clique_and_chromatic(graph: NonCyclicGraph,
                         ctable: Optional[CyclicizerTable] = None
                         ) -> CliqueChromatic:
    """Clique and chromatic numbers via the maximal-cyclic-subgroup count.

    The designated generators of the maximal cyclic subgroups form a clique,
    and coloring each vertex by the first maximal cyclic subgroup containing
    it is proper, so both bounds meet at s. Both witnesses are validated
    before returning; a failure indicates an implementation bug.
    """
    if ctable is None:
        ctable = cyclicizer_table(graph.group)
    maximal = ctable.maximal
    s = len(maximal)
    cyc = ctable.cyc_bits
    pos_of = {v: i for i, v in enumerate(graph.vertices)}
    clique = []
    for m in maximal:
        if (cyc >> m.generator) & 1:
            raise VerificationFailure(
                "maximal cyclic generator sits in the group cyclicizer")
        clique.append(pos_of[m.generator])
    adj = graph.adjacency
    for i, a in enumerate(clique):
        for b in clique[i + 1:]:
            if not (adj[a] >> b) & 1:
                raise VerificationFailure("clique witness has a missing edge")
    coloring = []
    for v in graph.vertices:
        for ci, m in enumerate(maximal):
            if (m.bits >> v) & 1:
                coloring.append(ci)
                break
        else:
            raise VerificationFailure(
                "vertex lies in no maximal cyclic subgroup")
    masks = {}
    for pos, color in enumerate(coloring):
        masks[color] = masks.get(color, 0) | (1 << pos)
    for color, mask in masks.items():
        m = mask
        while m:
            b = m & -m
            pos = b.bit_length() - 1
            if adj[pos] & mask:
                raise VerificationFailure("coloring is not proper")
            m ^= b
    return CliqueChromatic(s, tuple(clique), s, tuple(coloring))


def _max_clique_bits(rows: Sequence[int], nv: int):
    """Exact maximum clique by branch and bound on bitsets."""
    best_size = 0
    best_set = 0

    def expand(cand: int, cur_set: int, cur_size: int):
        nonlocal best_size, best_set
        while cand:
            if cur_size + cand.bit_count() <= best_size:
                return
            b = cand & -cand
            v = b.bit_length() - 1
            cand ^= b
            new_set = cur_set | b
            new_cand = cand & rows[v]
            if cur_size + 1 > best_size:
                best_size = cur_size + 1
                best_set = new_set
            if new_cand:
                expand(new_cand, new_set, cur_size + 1)

    expand((1 << nv) - 1, 0, 0)
    return best_size, best_set


@dataclass(frozen=True)
class IndependenceInfo:
    alpha: int
    formula_value: int
    brute_value: Optional[int]   # None when the brute-force cap is exceeded
    witness: tuple               # vertex positions, pairwise non-adjacent
    mismatch: bool


def independence_info(graph: NonCyclicGraph,
                      ctable: Optional[CyclicizerTable] = None,
                      brute_cap: int = 64) -> IndependenceInfo:
    """Independence number: closed form (largest element order minus the
    group cyclicizer size) plus an exact cross-check for small graphs.

    A disagreement is reported, not resolved: alpha is the max of the two
    and ``mismatch`` flags the case.
    """
    group = graph.group
    if ctable is None:
        ctable = cyclicizer_table(group)
    e = max(group.elem_orders)
    formula = e - ctable.cyc_size
    gen = min(x for x in range(group.order) if group.elem_orders[x] == e)
    members = group.generated_cyclic_bits(gen) & ~ctable.cyc_bits
    pos_of = {v: i for i, v in enumerate(graph.vertices)}
    witness = tuple(pos_of[v] for v in bits_to_indices(members))
    if len(witness) != formula:
        raise VerificationFailure(
            "independent-set witness does not meet the closed form; the "
            "group cyclicizer escaped a maximum-order cyclic subgroup")
    adj = graph.adjacency
    for i, a in enumerate(witness):
        for b in witness[i + 1:]:
            if (adj[a] >> b) & 1:
                raise VerificationFailure("independence witness has an edge")
    brute = None
    nv = graph.n_vertices
    if nv <= brute_cap:
        full = (1 << nv) - 1
        comp = [(~adj[i]) & full & ~(1 << i) for i in range(nv)]
        brute, bset = _max_clique_bits(comp, nv)
        if brute < formula:
            raise VerificationFailure(
                "exact independence number fell below the closed form")
        if brute > formula:
            witness = tuple(bits_to_indices(bset))
    alpha = max(formula, brute if brute is not None else formula)
    return IndependenceInfo(alpha, formula, brute, witness,
                            brute is not None and brute != formula)


def degree_kinds(graph: NonCyclicGraph):
    """(sorted (degree, count) pairs, number of kinds, is_regular)."""
    census: dict[int, int] = {}
    for row in graph.adjacency:
        d = row.bit_count()
        census[d] = census.get(d, 0) + 1
    multiset = tuple(sorted(census.items()))
    return multiset, len(multiset), len(multiset) == 1


def complement_clique_sizes(rows: Sequence[int]) -> Optional[list[int]]:
    """Sorted part sizes when the complement is a disjoint union of cliques
    (the graph is then complete multipartite), else None."""
    nv = len(rows)
    full = (1 << nv) - 1
    comp = [(~rows[i]) & full & ~(1 << i) for i in range(nv)]
    seen = 0
    sizes = []
    for v in range(nv):
        if (seen >> v) & 1:
            continue
        compo = 1 << v
        frontier = compo
        while frontier:
            nxt = 0
            f = frontier
            while f:
                b = f & -f
                nxt |= comp[b.bit_length() - 1]
                f ^= b
            frontier = nxt & ~compo
            compo |= nxt
        m = compo
        while m:
            b = m & -m
            u = b.bit_length() - 1
            if comp[u] != compo & ~(1 << u):
                return None
            m ^= b
        seen |= compo
        sizes.append(compo.bit_count())
    sizes.sort()
    return sizes


def multipartite_profile(graph: NonCyclicGraph) -> Optional[list[int]]:
    return complement_clique_sizes(graph.adjacency)


@dataclass(frozen=True)
class OmegaBoundInfo:
    s: int
    index: int                      # |G : Cyc(G)|
    index_bound_ok: bool            # s <= index
    covering_value: Optional[int]   # factorial bound, None when s < 3
    covering_ok: Optional[bool]

    @property
    def holds(self) -> bool:
        return self.index_bound_ok and self.covering_ok is not False


def omega_bound_info(group: Group,
                     ctable: Optional[CyclicizerTable] = None
                     ) -> OmegaBoundInfo:
    """Check s <= |G : Cyc(G)| and, for s >= 3, the covering bound
    |G/Cyc(G)| <= max((s-1)^2 (s-3)!, (s-2)^3 (s-3)!)."""
    if ctable is None:
        ctable = cyclicizer_table(group)
    s = len(ctable.maximal)
    index = group.order // ctable.cyc_size
    index_ok = s <= index
    if s < 3:
        return OmegaBoundInfo(s, index, index_ok, None, None)
    f = factorial(s - 3)
    bound = max((s - 1) ** 2 * f, (s - 2) ** 3 * f)
    return OmegaBoundInfo(s, index, index_ok, bound, index <= bound)


# ---------------------------------------------------------------------------
# Reports


REPORT_FIELDS = (
    "label", "order", "cyc_size", "vertex_count", "degree_multiset",
    "kind_degrees", "is_regular", "is_connected", "diameter",
    "clique_number", "chromatic_number", "s", "independence_number",
    "multipartite_profile", "prime_graph_components",
)


@dataclass(frozen=True)
class InvariantReport:
    label: str
    order: int
    cyc_size: int
    vertex_count: int
    degree_multiset: tuple
    kind_degrees: int
    is_regular: bool
    is_connected: bool
    diameter: int
    clique_number: int
    chromatic_number: int
    s: int
    independence_number: int
    multipartite_profile: Optional[tuple]
    prime_graph_components: int

    def to_json_dict(self) -> dict:
        out = {}
        for name in REPORT_FIELDS:
            val = getattr(self, name)
            if isinstance(val, tuple):
                val = [list(v) if isinstance(v, tuple) else v for v in val]
            out[name] = val
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)

    @staticmethod
    def csv_header() -> str:
        return ",".join(REPORT_FIELDS)

    def to_csv_row(self) -> str:
        cells = []
        for name in REPORT_FIELDS:
            val = getattr(self, name)
            if isinstance(val, tuple) or val is None or isinstance(val, bool):
                if isinstance(val, tuple):
                    val = [list(v) if isinstance(v, tuple) else v for v in val]
                cell = json.dumps(val)
            else:
                cell = str(val)
            if "," in cell:
                cell = '"' + cell.replace('"', '""') + '"'
            cells.append(cell)
        return ",".join(cells)


def invariant_report(group: Group,
                     ctable: Optional[CyclicizerTable] = None,
                     graph: Optional[NonCyclicGraph] = None,
                     label: Optional[str] = None) -> InvariantReport:
    """Full invariant record for one non-cyclic group."""
    if ctable is None:
        ctable = cyclicizer_table(group)
    if graph is None:
        graph = build_graph(group, ctable)
    multiset, kinds, regular = degree_kinds(graph)
    diam = diameter_info(graph)
    cc = clique_and_chromatic(graph, ctable)
    alpha = independence_info(graph, ctable)
    profile = multipartite_profile(graph)
    pg = prime_graph(group)
    return InvariantReport(
        label=label or group.label,
        order=group.order,
        cyc_size=ctable.cyc_size,
        vertex_count=graph.n_vertices,
        degree_multiset=multiset,
        kind_degrees=kinds,
        is_regular=regular,
        is_connected=True,
        diameter=diam.diameter,
        clique_number=cc.omega,
        chromatic_number=cc.chi,
        s=len(ctable.maximal),
        independence_number=alpha.alpha,
        multipartite_profile=tuple(profile) if profile is not None else None,
        prime_graph_components=pg.component_count,
    )


def to_dot(graph: NonCyclicGraph) -> str:
    """DOT text; vertex names are group element labels."""

    def q(s: str) -> str:
        return '"' + s.replace('"', '\\"') + '"'

    lines = [f"graph {q(graph.group.label)} {{"]
    for pos in range(graph.n_vertices):
        lines.append(f"  {q(graph.vertex_label(pos))};")
    for a in range(graph.n_vertices):
        row = graph.adjacency[a] >> (a + 1)
        b = a + 1
        while row:
            if row & 1:
                lines.append(
                    f"  {q(graph.vertex_label(a))} -- {q(graph.vertex_label(b))};")
            row >>= 1
            b += 1
    lines.append("}")
    return "\n".join(lines) + "\n"
