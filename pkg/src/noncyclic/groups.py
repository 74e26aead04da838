"""Finite groups as identity-rooted Cayley tables, with named constructors.

Elements are indices 0..n-1 and index 0 is always the identity. The table is
stored flat, row major: ``t[i*n + j]`` is the index of g_i * g_j. A Group is
immutable after construction; the pair-cyclicity cache fills lazily and a
refill is idempotent, so concurrent readers are safe once it is built.
"""

from __future__ import annotations

import os
import re
from array import array
from dataclasses import dataclass
from itertools import permutations, product as iter_product
from math import factorial, gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import (
    ClosureTooLarge,
    InvalidCayleyFile,
    InvalidParameter,
    NotAGroup,
    ParseError,
)

ASSOC_EXACT_LIMIT = 256
ASSOC_SAMPLE_FACTOR = 10
DEFAULT_CLOSURE_CAP = 20160
MAX_SYMMETRIC_DEGREE = 7


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factorization(n: int) -> list[tuple[int, int]]:
    """Return [(p, e), ...] with p ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def _validate_structure(t: np.ndarray, check: str) -> None:
    n = t.shape[0]
    idx = np.arange(n, dtype=t.dtype)
    if not (np.array_equal(t[0], idx) and np.array_equal(t[:, 0], idx)):
        raise NotAGroup("index 0 is not a two-sided identity")
    if not (np.array_equal(np.sort(t, axis=1), np.broadcast_to(idx, t.shape))
            and np.array_equal(np.sort(t, axis=0), np.broadcast_to(idx[:, None], t.shape))):
        raise NotAGroup("table is not a Latin square")
    if check == "none":
        return
    if check == "full" and n <= ASSOC_EXACT_LIMIT:
        # exact O(n^3), chunked by first coordinate to bound memory
        for i in range(n):
            left = t[t[i], :]          # (i*j)*k
            right = t[i][t]            # i*(j*k)
            if not np.array_equal(left, right):
                bad = np.argwhere(left != right)
                j, k = (int(x) for x in bad[0])
                raise NotAGroup(
                    f"associativity fails at ({i},{j},{k})", triple=(i, j, k))
        return
    # sampled check, deterministic seed
    rng = np.random.default_rng(1009 * n + 7)
    m = ASSOC_SAMPLE_FACTOR * n * n
    i = rng.integers(0, n, size=m)
    j = rng.integers(0, n, size=m)
    k = rng.integers(0, n, size=m)
    left = t[t[i, j], k]
    right = t[i, t[j, k]]
    if not np.array_equal(left, right):
        pos = int(np.argmax(left != right))
        triple = (int(i[pos]), int(j[pos]), int(k[pos]))
        raise NotAGroup(f"associativity fails at {triple}", triple=triple)


class Group:
    """A finite group: Cayley table, labels, element orders and inverses."""

    __slots__ = ("order", "label", "labels", "_flat", "elem_orders",
                 "inverses", "_pair_rows", "_gen_bits", "_cyc_subgroups",
                 "_cyc_table")

    def __init__(self, table, labels=None, label="G", check="fast"):
        t = np.asarray(table)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotAGroup("table must be a non-empty square matrix")
        n = int(t.shape[0])
        t = t.astype(np.intc, copy=False)
        if int(t.min()) < 0 or int(t.max()) >= n:
            raise NotAGroup("table entries out of range")
        if labels is None:
            labels = [f"e{i}" for i in range(n)]
        if len(labels) != n:
            raise NotAGroup("need exactly one label per element")
        _validate_structure(t, check)
        self.order = n
        self.label = label
        self.labels = tuple(str(x) for x in labels)
        flat = array("i")
        flat.frombytes(t.tobytes())
        self._flat = flat
        self.elem_orders, self.inverses = self._orders_and_inverses()
        self._pair_rows = None
        self._gen_bits = None
        self._cyc_subgroups = None
        self._cyc_table = None

    # -- basic queries ----------------------------------------------------

    def mult(self, i: int, j: int) -> int:
        return self._flat[i * self.order + j]

    def np_table(self) -> np.ndarray:
        return np.frombuffer(self._flat, dtype=np.intc).reshape(
            self.order, self.order)

    def elements(self) -> range:
        return range(self.order)

    def validate_full(self) -> None:
        """Re-run the full axiom validation (exact associativity up to the
        size limit, deterministic sampling beyond)."""
        _validate_structure(self.np_table(), "full")

    def _orders_and_inverses(self):
        n = self.order
        flat = self._flat
        orders = [1] * n
        invs = [0] * n
        for g in range(1, n):
            o = 1
            prev = g
            x = flat[g * n + g]
            while x != 0:
                o += 1
                prev = x
                x = flat[x * n + g]
            orders[g] = o + 1
            invs[g] = prev
        return orders, invs

    # -- cyclic subgroup / pair-cyclicity cache ---------------------------

    def _build_pair_cache(self) -> None:
        if self._pair_rows is not None:
            return
        n = self.order
        flat = self._flat
        rows = [0] * n
        gen_bits = [0] * n
        seen: dict[int, int] = {}
        for g in range(n):
            members = [0]
            x = g
            while x != 0:
                members.append(x)
                x = flat[x * n + g]
            bits = 0
            for m in members:
                bits |= 1 << m
            gen_bits[g] = bits
            if bits in seen:
                continue
            seen[bits] = g
            for m in members:
                rows[m] |= bits
        self._gen_bits = gen_bits
        self._cyc_subgroups = tuple((g, bits) for bits, g in seen.items())
        self._pair_rows = rows

    @property
    def pair_rows(self) -> list[int]:
        """Bitset rows of the pair-cyclicity relation.

        Row x has bit y set iff <x, y> is cyclic; row x is exactly the
        cyclicizer of x, since <x, y> is cyclic precisely when x and y lie
        in a common cyclic subgroup.
        """
        if self._pair_rows is None:
            self._build_pair_cache()
        return self._pair_rows

    @property
    def cyclic_subgroups(self) -> tuple:
        """Distinct cyclic subgroups as (smallest generator, member bitset),
        in order of discovery by ascending generator index."""
        if self._cyc_subgroups is None:
            self._build_pair_cache()
        return self._cyc_subgroups

    def generated_cyclic_bits(self, x: int) -> int:
        """Member bitset of <x>."""
        if self._gen_bits is None:
            self._build_pair_cache()
        return self._gen_bits[x]

    def is_pair_cyclic(self, x: int, y: int) -> bool:
        """True iff <x, y> is cyclic."""
        n = self.order
        if not (0 <= x < n and 0 <= y < n):
            raise InvalidParameter(f"element index out of range: {(x, y)}")
        if self._pair_rows is not None:
            return bool((self._pair_rows[x] >> y) & 1)
        if self.mult(x, y) != self.mult(y, x):
            return False  # non-commuting pairs never generate a cyclic group
        members = self._closure((x, y))
        size = len(members)
        return any(self.elem_orders[m] == size for m in members)

    def _closure(self, gens: Iterable[int]) -> list[int]:
        n = self.order
        flat = self._flat
        gens = sorted(set(gens) - {0})
        seen = bytearray(n)
        seen[0] = 1
        out = [0]
        queue = [0]
        qi = 0
        while qi < len(queue):
            x = queue[qi]
            qi += 1
            base = x * n
            for g in gens:
                y = flat[base + g]
                if not seen[y]:
                    seen[y] = 1
                    out.append(y)
                    queue.append(y)
        out.sort()
        return out

    def __repr__(self):
        return f"Group({self.label!r}, order={self.order})"


@dataclass(frozen=True)
class Subgroup:
    """A subgroup given by its sorted member indices in the parent group."""

    parent: Group
    members: tuple

    @property
    def order(self) -> int:
        return len(self.members)

    def is_cyclic(self) -> bool:
        return any(self.parent.elem_orders[m] == len(self.members)
                   for m in self.members)

    def as_group(self, label: Optional[str] = None) -> Group:
        par = self.parent
        pos = {m: i for i, m in enumerate(self.members)}
        n = len(self.members)
        table = [[0] * n for _ in range(n)]
        for i, a in enumerate(self.members):
            base = a * par.order
            row = table[i]
            for j, b in enumerate(self.members):
                row[j] = pos[par._flat[base + b]]
        return Group(table, labels=[par.labels[m] for m in self.members],
                     label=label or f"{par.label}|sub{n}", check="fast")


def subgroup_generated(group: Group, gens: Iterable[int]) -> Subgroup:
    """Smallest subgroup containing ``gens`` (breadth-first closure)."""
    gens = list(gens)
    for g in gens:
        if not 0 <= g < group.order:
            raise InvalidParameter(f"generator index out of range: {g}")
    return Subgroup(group, tuple(group._closure(gens)))


def is_pair_cyclic(group: Group, x: int, y: int) -> bool:
    return group.is_pair_cyclic(x, y)


def exponent(group: Group) -> int:
    e = 1
    for o in set(group.elem_orders):
        e = e * o // gcd(e, o)
    return e


def pi_e(group: Group) -> tuple:
    """Sorted set of element orders."""
    return tuple(sorted(set(group.elem_orders)))


def mu(group: Group) -> tuple:
    """Divisibility-maximal element orders."""
    pe = set(group.elem_orders)
    return tuple(sorted(t for t in pe
                        if not any(s != t and s % t == 0 for s in pe)))


def center(group: Group) -> Subgroup:
    t = group.np_table()
    mask = (t == t.T).all(axis=1)
    return Subgroup(group, tuple(int(i) for i in np.nonzero(mask)[0]))


def is_cyclic_group(group: Group) -> bool:
    return max(group.elem_orders) == group.order


# ---------------------------------------------------------------------------
# Group specifications


@dataclass(frozen=True)
class GroupSpec:
    """Constructor expression describing how to build a group."""

    kind: str
    params: tuple = ()
    children: tuple = ()
    name: Optional[str] = None

    def label(self) -> str:
        if self.name is not None:
            return self.name
        k, p = self.kind, self.params
        if k == "cyclic":
            return f"Z{p[0]}"
        if k == "dihedral":
            return f"D{p[0]}"
        if k == "quaternion":
            return f"Q{p[0]}"
        if k == "modular":
            return f"G({p[0]},{p[1]})"
        if k == "semidihedral":
            return f"H({p[0]})"
        if k == "symmetric":
            return f"S{p[0]}"
        if k == "alternating":
            return f"A{p[0]}"
        if k == "product":
            return "x".join(c.label() for c in self.children)
        if k == "cayley":
            return f"cayley:{p[0]}"
        if k == "perm":
            return f"perm:{p[0]}"
        return self.kind

    def order(self) -> Optional[int]:
        """Group order when it is determined by the spec alone."""
        k, p = self.kind, self.params
        if k == "cyclic":
            return p[0]
        if k in ("dihedral", "quaternion"):
            return p[0]
        if k == "modular":
            return p[0] ** p[1]
        if k == "semidihedral":
            return 2 ** p[0]
        if k == "symmetric":
            return factorial(p[0])
        if k == "alternating":
            return factorial(p[0]) // 2
        if k == "product":
            out = 1
            for c in self.children:
                o = c.order()
                if o is None:
                    return None
                out *= o
            return out
        return None


def cyclic(n: int) -> GroupSpec:
    if n < 1:
        raise InvalidParameter("cyclic group order must be >= 1")
    return GroupSpec("cyclic", (n,))


def dihedral(order: int) -> GroupSpec:
    if order % 2 or order // 2 <= 2:
        raise InvalidParameter(
            "dihedral groups here have order 2n with n > 2")
    return GroupSpec("dihedral", (order,))


def generalized_quaternion(order: int) -> GroupSpec:
    if order < 8 or order & (order - 1):
        raise InvalidParameter(
            "generalized quaternion groups have order 2^n with n >= 3")
    return GroupSpec("quaternion", (order,))


def modular_pgroup(p: int, n: int) -> GroupSpec:
    if not _is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if n < 3:
        raise InvalidParameter("modular p-groups need n >= 3")
    return GroupSpec("modular", (p, n))


def semidihedral(m: int) -> GroupSpec:
    if m < 4:
        raise InvalidParameter("semidihedral groups need m >= 4")
    return GroupSpec("semidihedral", (m,))


def symmetric(n: int) -> GroupSpec:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise InvalidParameter(
            f"symmetric groups supported for degree 1..{MAX_SYMMETRIC_DEGREE}")
    return GroupSpec("symmetric", (n,))


def alternating(n: int) -> GroupSpec:
    if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
        raise InvalidParameter(
            f"alternating groups supported for degree 1..{MAX_SYMMETRIC_DEGREE}")
    return GroupSpec("alternating", (n,))


def direct_product(children: Sequence[GroupSpec],
                   name: Optional[str] = None) -> GroupSpec:
    children = tuple(children)
    if not children:
        raise InvalidParameter("direct product needs at least one factor")
    return GroupSpec("product", (), children, name)


def elementary_abelian(p: int, k: int) -> GroupSpec:
    if not _is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if k < 1:
        raise InvalidParameter("need k >= 1")
    return direct_product([cyclic(p)] * k, name=f"EA({p},{k})")


def cyclic_times_p(p: int, n: int) -> GroupSpec:
    """Z_{p^(n-1)} + Z_p, written K(p,n) in the expression language."""
    if not _is_prime(p):
        raise InvalidParameter(f"{p} is not prime")
    if n < 2:
        raise InvalidParameter("need n >= 2")
    return direct_product([cyclic(p ** (n - 1)), cyclic(p)],
                          name=f"K({p},{n})")


def abelian(factors: Sequence[int]) -> GroupSpec:
    factors = list(factors)
    if not factors or any(d < 1 for d in factors):
        raise InvalidParameter("abelian factors must be positive")
    return direct_product([cyclic(d) for d in factors])


def cayley_file(path: str) -> GroupSpec:
    return GroupSpec("cayley", (str(path),))


def perm_group(degree: int, gens: Sequence[tuple]) -> GroupSpec:
    if degree < 1:
        raise InvalidParameter("degree must be positive")
    gens = tuple(tuple(g) for g in gens)
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise InvalidParameter(f"not a permutation of 0..{degree-1}: {g}")
    return GroupSpec("perm", (degree, gens))


# ---------------------------------------------------------------------------
# Builders


def _cyclic_group(n: int) -> Group:
    idx = np.arange(n, dtype=np.intc)
    t = (idx[:, None] + idx[None, :]) % n
    return Group(t, labels=[str(i) for i in range(n)], label=f"Z{n}",
                 check="none")


def _dihedral_group(order: int) -> Group:
    n = order // 2
    t = [[0] * order for _ in range(order)]
    for k in (0, 1):
        for i in range(n):
            a = k * n + i
            row = t[a]
            for l in (0, 1):
                for j in range(n):
                    jj = (i + j) % n if k == 0 else (i - j) % n
                    row[l * n + j] = ((k + l) % 2) * n + jj
    labels = ["e"] + [f"r{i}" if i > 1 else "r" for i in range(1, n)]
    labels += ["s"] + [f"sr{i}" if i > 1 else "sr" for i in range(1, n)]
    return Group(t, labels=labels, label=f"D{order}", check="fast")


def _quaternion_group(order: int) -> Group:
    m = order // 2
    half = m // 2
    t = [[0] * order for _ in range(order)]
    for k in (0, 1):
        for i in range(m):
            row = t[k * m + i]
            for l in (0, 1):
                for j in range(m):
                    jj = (i + j) % m if k == 0 else (i - j) % m
                    if k and l:
                        jj = (jj + half) % m
                    row[l * m + j] = ((k + l) % 2) * m + jj
    labels = ["e"] + [f"a{i}" if i > 1 else "a" for i in range(1, m)]
    labels += ["b"] + [(f"a{i}b" if i > 1 else "ab") for i in range(1, m)]
    return Group(t, labels=labels, label=f"Q{order}", check="fast")


def _two_generator_pgroup(p: int, n: int, r: int, label: str) -> Group:
    """Group <a, x | x^p = a^(p^(n-1)) = 1, x a x^-1 = a^u> with u = r^-1,
    elements a^i x^j indexed as j*p^(n-1) + i."""
    big = p ** (n - 1)
    u = pow(r, -1, big)
    upow = [1]
    for _ in range(p - 1):
        upow.append(upow[-1] * u % big)
    order = big * p
    t = [[0] * order for _ in range(order)]
    for j in range(p):
        uj = upow[j]
        for i in range(big):
            row = t[j * big + i]
            for l in range(p):
                off = ((j + l) % p) * big
                for k in range(big):
                    row[l * big + k] = off + (i + k * uj) % big
    labels = []
    for j in range(p):
        for i in range(big):
            ai = "" if i == 0 else ("a" if i == 1 else f"a{i}")
            xj = "" if j == 0 else ("x" if j == 1 else f"x{j}")
            labels.append((ai + xj) or "e")
    return Group(t, labels=labels, label=label, check="fast")


def _perm_label(p: tuple) -> str:
    seen = [False] * len(p)
    cycles = []
    for i in range(len(p)):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) or "e"


def _table_from_perms(perms: list[tuple], label: str) -> Group:
    index = {p: i for i, p in enumerate(perms)}
    n = len(perms)
    t = [[0] * n for _ in range(n)]
    for i, a in enumerate(perms):
        row = t[i]
        for j, b in enumerate(perms):
            row[j] = index[tuple(a[x] for x in b)]
    # composition of permutations is associative by construction
    return Group(t, labels=[_perm_label(p) for p in perms], label=label,
                 check="none")


def _perm_parity_even(p: tuple) -> bool:
    seen = [False] * len(p)
    parity = 0
    for i in range(len(p)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        parity ^= (length - 1) & 1
    return parity == 0


def _symmetric_group(n: int) -> Group:
    perms = [tuple(p) for p in permutations(range(n))]
    return _table_from_perms(perms, f"S{n}")


def _alternating_group(n: int) -> Group:
    perms = [tuple(p) for p in permutations(range(n)) if _perm_parity_even(p)]
    return _table_from_perms(perms, f"A{n}")


def _perm_closure_group(degree: int, gens: tuple, cap: int,
                        label: str) -> Group:
    ident = tuple(range(degree))
    elems = {ident: 0}
    ordered = [ident]
    queue = [ident]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        for g in gens:
            y = tuple(x[g[i]] for i in range(degree))
            if y not in elems:
                if len(ordered) >= cap:
                    raise ClosureTooLarge(
                        f"closure exceeds cap of {cap} elements")
                elems[y] = len(ordered)
                ordered.append(y)
                queue.append(y)
    return _table_from_perms(ordered, label)


def _product_group(children: list[Group], label: str) -> Group:
    acc = children[0].np_table().astype(np.intc)
    big_n = children[0].order
    for child in children[1:]:
        t2 = child.np_table()
        n2 = child.order
        acc = (acc[:, None, :, None] * n2 + t2[None, :, None, :]).reshape(
            big_n * n2, big_n * n2)
        big_n *= n2
    labels = ["(" + ",".join(parts) + ")"
              for parts in iter_product(*[c.labels for c in children])]
    # componentwise products of validated groups are associative
    return Group(acc, labels=labels, label=label, check="none")


def build(spec: GroupSpec, *, closure_cap: int = DEFAULT_CLOSURE_CAP) -> Group:
    """Build and validate the group described by ``spec``."""
    k, p = spec.kind, spec.params
    if k == "cyclic":
        g = _cyclic_group(p[0])
    elif k == "dihedral":
        g = _dihedral_group(p[0])
    elif k == "quaternion":
        g = _quaternion_group(p[0])
    elif k == "modular":
        prime, n = p
        g = _two_generator_pgroup(prime, n, 1 + prime ** (n - 2),
                                  spec.label())
    elif k == "semidihedral":
        m = p[0]
        g = _two_generator_pgroup(2, m, 2 ** (m - 2) - 1, spec.label())
    elif k == "symmetric":
        g = _symmetric_group(p[0])
    elif k == "alternating":
        g = _alternating_group(p[0])
    elif k == "product":
        children = [build(c, closure_cap=closure_cap) for c in spec.children]
        g = _product_group(children, spec.label())
    elif k == "cayley":
        g = from_cayley_file(p[0])
    elif k == "perm":
        g = _perm_closure_group(p[0], p[1], closure_cap, spec.label())
    else:
        raise InvalidParameter(f"unknown spec kind {k!r}")
    if spec.name is not None:
        g.label = spec.name
    return g


# ---------------------------------------------------------------------------
# Cayley-table files
#
# Format: line 1 is n; an optional line of n whitespace-separated labels;
# then n lines of n zero-based indices, row i giving the products of g_i.


def from_cayley_file(path: str) -> Group:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln.strip() for ln in fh if ln.strip()]
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    if not lines:
        raise InvalidCayleyFile("empty file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise InvalidCayleyFile(f"first line must be the order: {lines[0]!r}") from exc
    if n < 1:
        raise InvalidCayleyFile("order must be positive")
    if len(lines) == n + 1:
        labels = None
        rows_text = lines[1:]
    elif len(lines) == n + 2:
        labels = lines[1].split()
        if len(labels) != n:
            raise InvalidCayleyFile(
                f"label line has {len(labels)} entries, expected {n}")
        rows_text = lines[2:]
    else:
        raise InvalidCayleyFile(
            f"expected {n + 1} or {n + 2} non-empty lines, got {len(lines)}")
    table = []
    for ln in rows_text:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise InvalidCayleyFile(f"non-integer table entry in {ln!r}") from exc
        if len(row) != n:
            raise InvalidCayleyFile(
                f"row has {len(row)} entries, expected {n}")
        table.append(row)
    base = os.path.basename(path)
    return Group(table, labels=labels, label=base, check="full")


def to_cayley_file(group: Group, path: str) -> None:
    """Write the exact file format read back by :func:`from_cayley_file`.

    Labels are emitted with internal whitespace stripped so the label line
    stays whitespace-separated; colliding sanitized labels fall back to
    positional names.
    """
    sanitized = [re.sub(r"\s+", "", lab) for lab in group.labels]
    if len(set(sanitized)) != len(sanitized) or any(not s for s in sanitized):
        sanitized = [f"e{i}" for i in range(group.order)]
    n = group.order
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{n}\n")
        fh.write(" ".join(sanitized) + "\n")
        flat = group._flat
        for i in range(n):
            fh.write(" ".join(str(flat[i * n + j]) for j in range(n)) + "\n")


# ---------------------------------------------------------------------------
# Expression language
#
# Atoms: Z4, D8, Q16, S5, A5, G(3,3), H(4), EA(2,3), K(3,3), cayley:PATH,
# perm:DEG:(1 2),(1 2 3). Products join atoms with the letter x.

_ATOM_PATTERNS = [
    (re.compile(r"^Z(\d+)$"), lambda m: cyclic(int(m.group(1)))),
    (re.compile(r"^D(\d+)$"), lambda m: dihedral(int(m.group(1)))),
    (re.compile(r"^Q(\d+)$"), lambda m: generalized_quaternion(int(m.group(1)))),
    (re.compile(r"^S(\d+)$"), lambda m: symmetric(int(m.group(1)))),
    (re.compile(r"^A(\d+)$"), lambda m: alternating(int(m.group(1)))),
    (re.compile(r"^G\((\d+),(\d+)\)$"),
     lambda m: modular_pgroup(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^H\((\d+)\)$"), lambda m: semidihedral(int(m.group(1)))),
    (re.compile(r"^EA\((\d+),(\d+)\)$"),
     lambda m: elementary_abelian(int(m.group(1)), int(m.group(2)))),
    (re.compile(r"^K\((\d+),(\d+)\)$"),
     lambda m: cyclic_times_p(int(m.group(1)), int(m.group(2)))),
]


def _parse_perm_gens(degree: int, text: str) -> tuple:
    gens = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ParseError("empty permutation generator")
        cycles = re.findall(r"\(([^()]*)\)", part)
        if not cycles or re.sub(r"\([^()]*\)", "", part).strip():
            raise ParseError(f"cannot parse permutation {part!r}")
        img = list(range(degree))
        for cyc in cycles:
            pts = [int(x) - 1 for x in cyc.split()]
            if any(not 0 <= x < degree for x in pts):
                raise ParseError(f"point out of range in cycle ({cyc})")
            if len(set(pts)) != len(pts):
                raise ParseError(f"repeated point in cycle ({cyc})")
            for i, pt in enumerate(pts):
                img[pt] = pts[(i + 1) % len(pts)]
        gens.append(tuple(img))
    return tuple(gens)


def _parse_atom(text: str) -> GroupSpec:
    for pattern, make in _ATOM_PATTERNS:
        m = pattern.match(text)
        if m:
            try:
                return make(m)
            except InvalidParameter:
                raise
    raise ParseError(f"unrecognized group expression atom: {text!r}")


def parse_group_expr(text: str) -> GroupSpec:
    """Parse the expression language into a GroupSpec."""
    text = text.strip()
    if not text:
        raise ParseError("empty group expression")
    if text.startswith("cayley:"):
        path = text[len("cayley:"):]
        if not path:
            raise ParseError("cayley: needs a path")
        return cayley_file(path)
    if text.startswith("perm:"):
        rest = text[len("perm:"):]
        head, _, gen_text = rest.partition(":")
        try:
            degree = int(head)
        except ValueError as exc:
            raise ParseError(f"perm: needs a degree, got {head!r}") from exc
        if not gen_text:
            raise ParseError("perm: needs generators")
        return perm_group(degree, _parse_perm_gens(degree, gen_text))
    # split on x at parenthesis depth 0
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced parentheses in {text!r}")
        if ch == "x" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced parentheses in {text!r}")
    parts.append("".join(cur))
    atoms = [_parse_atom(p) for p in parts]
    if len(atoms) == 1:
        return atoms[0]
    return direct_product(atoms)
