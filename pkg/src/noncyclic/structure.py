"""Structural predicates on finite groups.

Everything here is decided directly from the Cayley table at desk scale:
Sylow pieces, nilpotency, abelian types, and recognizers for the small
standard families (dihedral, generalized quaternion, semidihedral, the
modular p-groups, homocyclic abelian groups, and the two families with
regular non-cyclic graphs).
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .groups import Group, prime_factorization


def is_abelian(group: Group) -> bool:
    t = group.np_table()
    return bool((t == t.T).all())


def p_part(order: int, p: int) -> int:
    out = 1
    while order % p == 0:
        order //= p
        out *= p
    return out


def _is_prime_power(n: int) -> Optional[tuple[int, int]]:
    fac = prime_factorization(n)
    if len(fac) == 1:
        return fac[0]
    return None


def pgroup_parameters(group: Group) -> Optional[tuple[int, int]]:
    """(p, e) when |G| = p^e for a prime p, else None."""
    return _is_prime_power(group.order)


def sylow_members(group: Group, p: int) -> Optional[tuple]:
    """Members of the set of p-elements when that set is a subgroup of the
    right size (the normal Sylow p-subgroup), else None."""
    n = group.order
    target = p_part(n, p)
    members = [x for x in range(n) if target % group.elem_orders[x] == 0
               and _order_is_p_power(group.elem_orders[x], p)]
    if len(members) != target:
        return None
    memset = set(members)
    flat = group._flat
    for a in members:
        base = a * n
        for b in members:
            if flat[base + b] not in memset:
                return None
    return tuple(members)


def _order_is_p_power(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def sylow_decomposition(group: Group) -> Optional[dict]:
    """{p: members} for every prime divisor, or None when some set of
    p-elements is not a subgroup (the group is then not nilpotent)."""
    out = {}
    for p, _ in prime_factorization(group.order):
        mem = sylow_members(group, p)
        if mem is None:
            return None
        out[p] = mem
    return out


def is_nilpotent(group: Group) -> bool:
    """A finite group is nilpotent iff it is the direct product of its
    Sylow subgroups, i.e. every set of p-elements forms a (normal) subgroup."""
    return sylow_decomposition(group) is not None


def abelian_ptype(group: Group, p: int) -> list[int]:
    """Partition (descending) of the abelian p-part, computed from the
    census c_k = #{x : x^(p^k) = e}."""
    counts = {}
    for o in group.elem_orders:
        if _order_is_p_power(o, p):
            counts[o] = counts.get(o, 0) + 1
    c_prev = 1
    m = []  # m[k-1] = number of parts >= k
    k = 1
    while True:
        c_k = sum(v for o, v in counts.items() if o <= p ** k)
        if c_k == c_prev:
            break
        ratio = c_k // c_prev
        parts_ge_k = 0
        while ratio > 1:
            ratio //= p
            parts_ge_k += 1
        m.append(parts_ge_k)
        c_prev = c_k
        k += 1
    partition = []
    for k, cnt in enumerate(m, start=1):
        nxt = m[k] if k < len(m) else 0
        partition.extend([k] * (cnt - nxt))
    partition.sort(reverse=True)
    return partition


def elementary_abelian_parameters(group: Group) -> Optional[tuple[int, int]]:
    pe = _is_prime_power(group.order)
    if pe is None:
        return None
    p, e = pe
    if all(o in (1, p) for o in group.elem_orders) and is_abelian(group):
        return (p, e)
    return None


def is_generalized_quaternion(group: Group) -> bool:
    pe = _is_prime_power(group.order)
    if pe is None or pe[0] != 2 or group.order < 8:
        return False
    if max(group.elem_orders) == group.order:
        return False
    return sum(1 for o in group.elem_orders if o == 2) == 1


def dihedral_parameter(group: Group) -> Optional[int]:
    """n when the group is dihedral of order 2n (n >= 3), else None."""
    size = group.order
    if size % 2 or size < 6:
        return None
    n = size // 2
    flat = group._flat
    for a in range(size):
        if group.elem_orders[a] != n:
            continue
        rot = group.generated_cyclic_bits(a)
        ok = True
        for b in range(size):
            if (rot >> b) & 1:
                continue
            if group.elem_orders[b] != 2:
                ok = False
                break
            if flat[flat[b * size + a] * size + b] != group.inverses[a]:
                ok = False
                break
        if ok:
            return n
    return None


def semidihedral_parameter(group: Group) -> Optional[int]:
    """m when the group is semidihedral of order 2^m (m >= 4), else None."""
    pe = _is_prime_power(group.order)
    if pe is None or pe[0] != 2 or pe[1] < 4:
        return None
    m = pe[1]
    half = group.order // 2
    r = 2 ** (m - 2) - 1
    flat = group._flat
    size = group.order
    for a in range(size):
        if group.elem_orders[a] != half:
            continue
        rot = group.generated_cyclic_bits(a)
        target = _power(group, a, r)
        for x in range(size):
            if (rot >> x) & 1 or group.elem_orders[x] != 2:
                continue
            if flat[flat[x * size + a] * size + x] == target:
                return m
    return None


def modular_parameters(group: Group) -> Optional[tuple[int, int]]:
    """(p, n) when the group is the modular p-group of order p^n (n >= 3)
    with presentation relation x^-1 a x = a^(1 + p^(n-2)), else None."""
    pe = _is_prime_power(group.order)
    if pe is None or pe[1] < 3:
        return None
    p, n = pe
    half = p ** (n - 1)
    r = 1 + p ** (n - 2)
    flat = group._flat
    size = group.order
    for a in range(size):
        if group.elem_orders[a] != half:
            continue
        rot = group.generated_cyclic_bits(a)
        target = _power(group, a, r)
        for x in range(size):
            if (rot >> x) & 1 or group.elem_orders[x] != p:
                continue
            conj = flat[flat[group.inverses[x] * size + a] * size + x]
            if conj == target:
                return (p, n)
    return None


def _power(group: Group, g: int, k: int) -> int:
    out = 0
    x = g
    size = group.order
    flat = group._flat
    while k:
        if k & 1:
            out = flat[out * size + x]
        x = flat[x * size + x]
        k >>= 1
    return out


def homocyclic_parameters(group: Group) -> Optional[tuple[int, int, int]]:
    """(p, m, n) when the group is the direct sum of n copies of Z_{p^m}."""
    pe = _is_prime_power(group.order)
    if pe is None or not is_abelian(group):
        return None
    p, e = pe
    partition = abelian_ptype(group, p)
    if not partition or len(set(partition)) != 1:
        return None
    m = partition[0]
    return (p, m, len(partition))


def cyclic_sylow_profile(group: Group) -> Optional[list]:
    """For nilpotent groups: [(p, sylow order, sylow is cyclic)] per prime.
    None when the group is not nilpotent."""
    dec = sylow_decomposition(group)
    if dec is None:
        return None
    out = []
    for p, members in sorted(dec.items()):
        target = len(members)
        cyc = any(group.elem_orders[x] == target for x in members)
        out.append((p, target, cyc))
    return out


def regular_family(group: Group) -> Optional[tuple]:
    """Classify membership in the two families whose non-cyclic graphs are
    regular: ("Q8", n) for Q8 x Z_n with n odd, ("P", p, m, n) for P x Z_n
    with P non-cyclic of prime exponent p, |P| = p^m, gcd(n, p) = 1.

    Returns None for cyclic groups and for groups outside both families.
    """
    if max(group.elem_orders) == group.order:
        return None
    profile = cyclic_sylow_profile(group)
    if profile is None:
        return None
    noncyclic = [(p, size) for p, size, cyc in profile if not cyc]
    if len(noncyclic) != 1:
        return None
    p, size = noncyclic[0]
    cof = group.order // size
    sylow = sylow_members(group, p)
    orders = {group.elem_orders[x] for x in sylow}
    if orders <= {1, p}:
        m = 0
        s = size
        while s > 1:
            s //= p
            m += 1
        return ("P", p, m, cof)
    if p == 2 and size == 8 and cof % 2 == 1:
        sub = set(sylow)
        if sum(1 for x in sub if group.elem_orders[x] == 2) == 1:
            return ("Q8", cof)
    return None


def goor_parameters(group: Group) -> Optional[tuple[int, int, int]]:
    """(p, m, n) when the group is P x Z_n with P non-cyclic of prime
    exponent p, |P| = p^m, m > 1, gcd(n, p) = 1."""
    fam = regular_family(group)
    if fam is None or fam[0] != "P":
        return None
    _, p, m, n = fam
    if m < 2:
        return None
    return (p, m, n)


def two_kind_abelian_family(group: Group) -> bool:
    """True when the group is Z_m + (Z_{p^2})^n with n > 1, gcd(m, p) = 1."""
    if not is_abelian(group):
        return False
    noncyclic = []
    for p, _ in prime_factorization(group.order):
        partition = abelian_ptype(group, p)
        if len(partition) > 1:
            noncyclic.append((p, partition))
    if len(noncyclic) != 1:
        return False
    _, partition = noncyclic[0]
    return len(partition) > 1 and set(partition) == {2}


def self_cyclicizer_orders(group: Group) -> tuple:
    """Sorted set of orders t such that some element x of order t satisfies
    Cyc(x) = <x>."""
    rows = group.pair_rows
    return tuple(sorted({group.elem_orders[x] for x in range(group.order)
                         if rows[x] == group.generated_cyclic_bits(x)}))
