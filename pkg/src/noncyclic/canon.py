"""Canonical forms and isomorphism testing for non-cyclic graphs.

Two graphs are isomorphic iff their canonical adjacency matrices are
bit-identical. The pipeline alternately contracts false-twin classes
(equal neighborhoods) and true-twin classes (equal closed neighborhoods),
canonicalizes the type-annotated quotient by individualization-refinement
with node-invariant, orbit and backjump pruning, and expands back.
Non-cyclic graphs collapse hard under the contraction: the complete
multipartite ones, the dominant case, reduce to a handful of vertices.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from hashlib import blake2b
from math import gcd
from typing import Optional, Sequence, Union

from .errors import (InvalidParameter, Timeout, TooLarge,
                     VerificationFailure)
from .graph import NonCyclicGraph, complement_clique_sizes
from .groups import _is_prime

DEFAULT_VERTEX_CAP = 2048
DEFAULT_TIMEOUT_SECS = 30.0
TIMEOUT_ENV_VAR = "NONCYC_TIMEOUT_SECS"


@dataclass(frozen=True)
class CanonicalForm:
    vertex_count: int
    matrix: tuple        # canonical adjacency bit rows
    labeling: tuple      # labeling[original position] = canonical position
    certificate: bytes
    hash_hex: str        # 128-bit digest of the certificate


def _rows_of(graph_or_rows) -> tuple:
    if isinstance(graph_or_rows, NonCyclicGraph):
        return graph_or_rows.adjacency
    return tuple(graph_or_rows)


def relabel_rows(rows: Sequence[int], perm: Sequence[int]) -> tuple:
    """Rows of the graph with vertex v renamed to perm[v]."""
    n = len(rows)
    out = [0] * n
    for v, row in enumerate(rows):
        acc = 0
        r = row
        while r:
            b = r & -r
            acc |= 1 << perm[b.bit_length() - 1]
            r ^= b
        out[perm[v]] = acc
    return tuple(out)


def _deadline(timeout: Optional[float]) -> float:
    if timeout is None:
        env = os.environ.get(TIMEOUT_ENV_VAR)
        timeout = float(env) if env else DEFAULT_TIMEOUT_SECS
    return time.monotonic() + timeout


# ---------------------------------------------------------------------------
# Individualization-refinement on the twin-contracted quotient


def _refine(qrows: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement; new cells are ordered by their count
    signatures, which keeps the procedure labeling-invariant."""
    while True:
        masks = [0] * len(cells)
        for ci, cell in enumerate(cells):
            m = 0
            for v in cell:
                m |= 1 << v
            masks[ci] = m
        new_cells = []
        changed = False
        for cell in cells:
            if len(cell) == 1:
                new_cells.append(cell)
                continue
            sig: dict[tuple, list[int]] = {}
            for v in cell:
                key = tuple((qrows[v] & m).bit_count() for m in masks)
                sig.setdefault(key, []).append(v)
            if len(sig) == 1:
                new_cells.append(cell)
            else:
                changed = True
                for key in sorted(sig):
                    new_cells.append(sig[key])
        cells = new_cells
        if not changed:
            return cells


def _codegree_split(qrows: Sequence[int], cells: list[list[int]],
                    pivot: int) -> list[list[int]]:
    """Split every cell by common-neighbor count with the pivot vertex.

    One bounded pass of 2-dimensional information; it cracks cells whose
    members plain counting cannot separate after an individualization.
    """
    pivot_row = qrows[pivot]
    out = []
    for cell in cells:
        if len(cell) == 1:
            out.append(cell)
            continue
        sig: dict[int, list[int]] = {}
        for v in cell:
            sig.setdefault((qrows[v] & pivot_row).bit_count(), []).append(v)
        if len(sig) == 1:
            out.append(cell)
        else:
            for key in sorted(sig):
                out.append(sig[key])
    return out


def _node_invariant(qrows: Sequence[int], cells: list[list[int]]) -> tuple:
    """Labeling-invariant signature of an equitable partition: cell sizes
    plus the quotient count matrix (well defined by equitability)."""
    masks = []
    for cell in cells:
        m = 0
        for v in cell:
            m |= 1 << v
        masks.append(m)
    sizes = tuple(len(c) for c in cells)
    counts = tuple((qrows[cell[0]] & m).bit_count()
                   for cell in cells for m in masks)
    return (sizes, counts)


class _Backjump(Exception):
    """Unwind the search to the node at the given prefix depth."""

    def __init__(self, depth):
        super().__init__(depth)
        self.depth = depth


class _Search:
    def __init__(self, qrows, keys, deadline):
        self.qrows = qrows
        self.keys = keys           # label-invariant initial vertex keys
        self.k = len(qrows)
        self.deadline = deadline
        self.best_key = None
        self.best_lab = None       # canonical position -> quotient vertex
        self.first_mat = None      # first leaf; a second automorphism anchor
        self.first_lab = None
        self.first_path = None
        self.autos: list[tuple] = []
        self._auto_seen: set = set()

    def run(self):
        order = sorted(range(self.k), key=lambda v: self.keys[v])
        cells: list[list[int]] = []
        for v in order:
            if cells and self.keys[cells[-1][0]] == self.keys[v]:
                cells[-1].append(v)
            else:
                cells.append([v])
        self._search(cells, (), ())
        return self.best_lab

    def _leaf(self, cells, seq, fixed):
        lab = [c[0] for c in cells]
        pos = [0] * self.k
        for p, v in enumerate(lab):
            pos[v] = p
        mat = []
        for v in lab:
            acc = 0
            r = self.qrows[v]
            while r:
                b = r & -r
                acc |= 1 << pos[b.bit_length() - 1]
                r ^= b
            mat.append(acc)
        mat = tuple(mat)
        key = (seq, mat)
        gamma = None
        if self.first_mat is None:
            self.first_mat = mat
            self.first_lab = lab
            self.first_path = fixed
        elif mat == self.first_mat:
            gamma = self._record_auto(lab, self.first_lab)
        if self.best_key is None or key < self.best_key:
            self.best_key = key
            self.best_lab = lab
        elif mat == self.best_key[1]:
            self._record_auto(lab, self.best_lab)
        if gamma is not None:
            # If gamma fixes the common prefix with the first path and sends
            # the divergence vertex to the first path's choice, the rest of
            # this subtree is the gamma-image of fully explored ground.
            c = 0
            while (c < len(fixed) and c < len(self.first_path)
                   and fixed[c] == self.first_path[c]):
                c += 1
            if (c < len(fixed) and c < len(self.first_path)
                    and all(gamma[f] == f for f in fixed[:c])
                    and gamma[fixed[c]] == self.first_path[c]):
                raise _Backjump(c)

    def _record_auto(self, lab, ref_lab):
        gamma = [0] * self.k
        for p in range(self.k):
            gamma[lab[p]] = ref_lab[p]
        g = tuple(gamma)
        if any(g[v] != v for v in range(self.k)):
            if g not in self._auto_seen:
                self._auto_seen.add(g)
                self.autos.append(g)
            return g
        return None

    def _search(self, cells, seq, fixed):
        if time.monotonic() > self.deadline:
            raise Timeout("canonical form search exceeded its time budget")
        cells = _refine(self.qrows, cells)
        inv = _node_invariant(self.qrows, cells)
        seq = seq + (inv,)
        if self.best_key is not None:
            best_seq = self.best_key[0]
            d = len(seq) - 1
            if d < len(best_seq) and seq[d] > best_seq[d]:
                return
        if all(len(c) == 1 for c in cells):
            self._leaf(cells, seq, fixed)
            return
        target_idx = None
        target_len = None
        for ci, cell in enumerate(cells):
            if len(cell) > 1 and (target_len is None or len(cell) < target_len):
                target_idx = ci
                target_len = len(cell)
        target = cells[target_idx]

        # orbit pruning: candidates equivalent under automorphisms that fix
        # the individualized prefix explore identical subtrees; the union
        # structure absorbs each discovered automorphism once per node
        parent = list(range(self.k))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        absorbed = 0

        def absorb_new():
            nonlocal absorbed
            while absorbed < len(self.autos):
                g = self.autos[absorbed]
                absorbed += 1
                if all(g[f] == f for f in fixed):
                    for v in range(self.k):
                        ra, rb = find(v), find(g[v])
                        if ra != rb:
                            parent[ra] = rb

        tried: list[int] = []
        for v in target:
            absorb_new()
            rv = find(v)
            if any(find(u) == rv for u in tried):
                continue
            tried.append(v)
            child = (cells[:target_idx]
                     + [[v], [u for u in target if u != v]]
                     + cells[target_idx + 1:])
            child = _codegree_split(self.qrows, child, v)
            try:
                self._search(child, seq, fixed + (v,))
            except _Backjump as bj:
                if bj.depth != len(fixed):
                    raise


def _merge_classes(qrows, descs, members, key_of, tag):
    """One contraction round; returns the merged arrays or None when every
    class is a singleton."""
    k = len(qrows)
    groups: dict = {}
    for v in range(k):
        groups.setdefault(key_of(v), []).append(v)
    if all(len(g) == 1 for g in groups.values()):
        return None
    classes = sorted(groups.values(), key=lambda c: min(members[v][0]
                                                        for v in c))
    index_of = [0] * k
    for i, cls in enumerate(classes):
        for v in cls:
            index_of[v] = i
    new_rows = []
    new_descs = []
    new_members = []
    for cls in classes:
        rep = cls[0]
        acc = 0
        r = qrows[rep]
        while r:
            b = r & -r
            acc |= 1 << index_of[b.bit_length() - 1]
            r ^= b
        acc &= ~(1 << index_of[rep])
        new_rows.append(acc)
        if len(cls) == 1:
            new_descs.append(descs[rep])
        else:
            new_descs.append((tag, len(cls), descs[rep]))
        merged = []
        for v in sorted(cls, key=lambda v: members[v][0]):
            merged.extend(members[v])
        new_members.append(merged)
    return new_rows, new_descs, new_members


def _iterated_contraction(rows):
    """Alternately contract classes of false twins (equal neighborhoods,
    mutually non-adjacent) and true twins (equal closed neighborhoods,
    mutually adjacent) carrying equal nested type descriptors.

    Interchanging two members of a class is an automorphism, and the
    member-order adjacency pattern of a contracted vertex is a function of
    its descriptor alone, so expansion in any fixed member order yields a
    labeling-invariant matrix.
    """
    qrows = list(rows)
    descs = [("v",)] * len(rows)
    members = [[v] for v in range(len(rows))]
    while True:
        merged = _merge_classes(qrows, descs, members,
                                lambda v: (qrows[v], descs[v]), "I")
        if merged is None:
            merged = _merge_classes(qrows, descs, members,
                                    lambda v: (qrows[v] | (1 << v), descs[v]),
                                    "C")
        if merged is None:
            return qrows, descs, members
        qrows, descs, members = merged


def canonical_form(graph_or_rows: Union[NonCyclicGraph, Sequence[int]], *,
                   vertex_cap: int = DEFAULT_VERTEX_CAP,
                   timeout: Optional[float] = None) -> CanonicalForm:
    """Deterministic canonical form; relabelings of the same graph produce
    bit-identical canonical matrices."""
    rows = _rows_of(graph_or_rows)
    n = len(rows)
    if n > vertex_cap:
        raise TooLarge(f"{n} vertices exceeds the cap of {vertex_cap}")
    if n == 0:
        raise InvalidParameter("cannot canonicalize an empty graph")
    deadline = _deadline(timeout)

    qrows, descs, members = _iterated_contraction(rows)
    k = len(qrows)
    if k == 1:
        lab_q = [0]
    else:
        # seed the partition with descriptors plus a triangle census of the
        # quotient, a cheap invariant that plain refinement misses
        tri = []
        for v in range(k):
            row = qrows[v]
            acc = 0
            r = row
            while r:
                b = r & -r
                acc += (row & qrows[b.bit_length() - 1]).bit_count()
                r ^= b
            tri.append(acc)
        keys = [(descs[v], tri[v]) for v in range(k)]
        lab_q = _Search(qrows, keys, deadline).run()

    lab_full = []
    for qv in lab_q:
        lab_full.extend(members[qv])
    labeling = [0] * n
    for p, v in enumerate(lab_full):
        labeling[v] = p
    matrix = list(relabel_rows(rows, labeling))
    row_bytes = (n + 7) // 8
    cert = n.to_bytes(8, "big") + b"".join(
        row.to_bytes(row_bytes, "big") for row in matrix)
    digest = blake2b(cert, digest_size=16).hexdigest()
    return CanonicalForm(n, tuple(matrix), tuple(labeling), cert, digest)


# ---------------------------------------------------------------------------
# Isomorphism


def _verify_bijection(rows1, rows2, mapping) -> None:
    for v, row in enumerate(rows1):
        acc = 0
        r = row
        while r:
            b = r & -r
            acc |= 1 << mapping[b.bit_length() - 1]
            r ^= b
        if acc != rows2[mapping[v]]:
            raise VerificationFailure("bijection does not preserve adjacency")


def are_isomorphic(g1: Union[NonCyclicGraph, Sequence[int]],
                   g2: Union[NonCyclicGraph, Sequence[int]], *,
                   vertex_cap: int = DEFAULT_VERTEX_CAP,
                   timeout: Optional[float] = None
                   ) -> Optional[list[tuple[int, int]]]:
    """None when the graphs differ; otherwise a verified vertex bijection
    as (position in g1, position in g2) pairs."""
    rows1, rows2 = _rows_of(g1), _rows_of(g2)
    if len(rows1) != len(rows2):
        return None
    p1 = complement_clique_sizes(rows1)
    p2 = complement_clique_sizes(rows2)
    if (p1 is None) != (p2 is None):
        return None
    if p1 is not None:
        if p1 != p2:
            return None
        mapping = _multipartite_bijection(rows1, rows2)
        _verify_bijection(rows1, rows2, mapping)
        return list(enumerate(mapping))
    cf1 = canonical_form(rows1, vertex_cap=vertex_cap, timeout=timeout)
    cf2 = canonical_form(rows2, vertex_cap=vertex_cap, timeout=timeout)
    if cf1.hash_hex != cf2.hash_hex or cf1.matrix != cf2.matrix:
        return None
    inv2 = [0] * len(rows2)
    for v, p in enumerate(cf2.labeling):
        inv2[p] = v
    mapping = [inv2[cf1.labeling[v]] for v in range(len(rows1))]
    _verify_bijection(rows1, rows2, mapping)
    return list(enumerate(mapping))


def _parts_of_complement(rows) -> list[list[int]]:
    nv = len(rows)
    full = (1 << nv) - 1
    seen = 0
    parts = []
    for v in range(nv):
        if (seen >> v) & 1:
            continue
        non_nb = (~rows[v]) & full
        part = [u for u in range(nv) if (non_nb >> u) & 1]
        mask = 0
        for u in part:
            mask |= 1 << u
        seen |= mask
        parts.append(part)
    return parts


def _multipartite_bijection(rows1, rows2) -> list[int]:
    parts1 = sorted(_parts_of_complement(rows1), key=lambda p: (len(p), p))
    parts2 = sorted(_parts_of_complement(rows2), key=lambda p: (len(p), p))
    mapping = [0] * len(rows1)
    for pa, pb in zip(parts1, parts2):
        for a, b in zip(pa, pb):
            mapping[a] = b
    return mapping


# ---------------------------------------------------------------------------
# The Diophantine condition governing isomorphism of the complete
# multipartite graphs coming from prime-exponent groups with a coprime
# cyclic factor.


def check_goormaghtigh_condition(p: int, m: int, n: int,
                                 q: int, s: int, t: int) -> tuple[bool, bool]:
    """For P x Z_n and Q x Z_t (P, Q non-cyclic of prime exponents p, q,
    orders p^m, q^s): the graphs are isomorphic iff both booleans hold:
    (p^m - 1)/(p - 1) == (q^s - 1)/(q - 1) and n(p - 1) == t(q - 1)."""
    if not (_is_prime(p) and _is_prime(q)):
        raise InvalidParameter("p and q must be prime")
    if m <= 1 or s <= 1:
        raise InvalidParameter("m and s must exceed 1")
    if n < 1 or t < 1 or gcd(p, n) != 1 or gcd(q, t) != 1:
        raise InvalidParameter("cyclic factors must be positive and coprime "
                               "to their prime")
    same_parts = (p ** m - 1) // (p - 1) == (q ** s - 1) // (q - 1)
    same_size = n * (p - 1) == t * (q - 1)
    return (same_parts, same_size)
