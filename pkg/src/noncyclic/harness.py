"""Catalog of small groups plus executable checks of the structural claims
about cyclicizers and non-cyclic graphs.

Each check runs over every applicable catalog group and reports
counterexamples (expected none), documented findings, and skip reasons.
Per-group checks stream over the catalog; cross-group checks consume the
collected profiles (certificate classes, order spectra, recognizer flags).
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Callable, Optional

from . import structure
from .canon import canonical_form, check_goormaghtigh_condition
from .cyclicizers import (CyclicizerTable, bits_to_indices,
                          cyclicizer_table, is_tidy, quotient_by_central,
                          quotient_by_cyclicizer)
from .errors import (Disconnected, NonCyclicError, UnknownCheck,
                     VerificationFailure)
from .graph import (NonCyclicGraph, build_graph, clique_and_chromatic,
                    degree_kinds, diameter_info, distance, independence_info,
                    omega_bound_info)
from .groups import (Group, GroupSpec, Subgroup, build, center, cyclic,
                     dihedral, direct_product, generalized_quaternion,
                     is_cyclic_group, modular_pgroup, mu, parse_group_expr,
                     pi_e, prime_factorization, semidihedral, symmetric,
                     alternating)

MAX_REPORTED = 10


# ---------------------------------------------------------------------------
# Catalog


@dataclass(frozen=True)
class CatalogEntry:
    label: str
    spec: GroupSpec


class Catalog:
    """Labeled list of group specifications, bounded by a maximum order."""

    def __init__(self, entries, max_order: Optional[int] = None):
        self.entries = list(entries)
        self.max_order = max_order
        labels = [e.label for e in self.entries]
        if len(set(labels)) != len(labels):
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise VerificationFailure(f"duplicate catalog labels: {dup[:5]}")

    def __len__(self):
        return len(self.entries)

    def subset(self, labels) -> "Catalog":
        want = set(labels)
        return Catalog([e for e in self.entries if e.label in want],
                       self.max_order)

    @classmethod
    def from_file(cls, path: str,
                  max_order: Optional[int] = None) -> "Catalog":
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        entries = []
        for item in data:
            spec = parse_group_expr(item["spec"])
            label = item.get("label", spec.label())
            order = spec.order()
            if max_order is not None and order is not None and order > max_order:
                continue
            entries.append(CatalogEntry(label, spec))
        return cls(entries, max_order)

    @classmethod
    def default(cls, max_order: int = 200,
                include_degree_seven: bool = False) -> "Catalog":
        return cls(_default_entries(max_order, include_degree_seven),
                   max_order)


def _abelian_factor_lists(order: int) -> list[tuple[int, ...]]:
    """Non-cyclic abelian groups of the given order as sorted tuples of
    prime-power cyclic factors."""

    def partitions(e: int):
        if e == 0:
            yield ()
            return
        def rec(rest, cap):
            if rest == 0:
                yield ()
                return
            for first in range(min(rest, cap), 0, -1):
                for tail in rec(rest - first, first):
                    yield (first,) + tail
        yield from rec(e, e)

    per_prime = []
    for p, e in prime_factorization(order):
        per_prime.append([(p, part) for part in partitions(e)])
    out = []
    def combine(i, acc):
        if i == len(per_prime):
            if all(len(part) == 1 for _, part in acc):
                return  # cyclic; listed separately
            factors = []
            for p, part in acc:
                factors.extend(p ** k for k in part)
            out.append(tuple(sorted(factors)))
            return
        for choice in per_prime[i]:
            combine(i + 1, acc + [choice])
    combine(0, [])
    return sorted(out)


def _default_entries(max_order: int, include_degree_seven: bool):
    family_bound = min(128, max_order)
    specs: list[tuple[str, GroupSpec]] = []

    for n in range(1, family_bound + 1):
        specs.append((f"Z{n}", cyclic(n)))
    for n in range(4, family_bound + 1):
        for factors in _abelian_factor_lists(n):
            label = "x".join(f"Z{d}" for d in factors)
            specs.append((label, direct_product([cyclic(d) for d in factors],
                                                name=label)))
    for order in range(6, family_bound + 1, 2):
        if order // 2 > 2:
            specs.append((f"D{order}", dihedral(order)))
    order = 8
    while order <= family_bound:
        specs.append((f"Q{order}", generalized_quaternion(order)))
        order *= 2
    for p in (2, 3, 5, 7, 11):
        n = 3
        while p ** n <= family_bound:
            specs.append((f"G({p},{n})", modular_pgroup(p, n)))
            n += 1
    m = 4
    while 2 ** m <= family_bound:
        specs.append((f"H({m})", semidihedral(m)))
        m += 1
    top_degree = 7 if include_degree_seven else 6
    fact = 1
    for n in range(2, top_degree + 1):
        fact *= n
        if n >= 3 and fact <= max_order:
            specs.append((f"S{n}", symmetric(n)))
        if n >= 3 and fact // 2 <= max_order:
            specs.append((f"A{n}", alternating(n)))

    seen = {label for label, _ in specs}
    base = [(label, spec, spec.order()) for label, spec in specs]
    products = []
    for i, (la, sa, oa) in enumerate(base):
        if oa is None or oa < 2:
            continue
        for lb, sb, ob in base[i:]:
            if ob is None or ob < 2 or oa * ob > max_order:
                continue
            pair = sorted([(oa, la, sa), (ob, lb, sb)],
                          key=lambda t: (t[0], t[1]))
            label = f"{pair[0][1]}x{pair[1][1]}"
            if label in seen:
                continue
            seen.add(label)
            products.append(
                (label, direct_product([pair[0][2], pair[1][2]], name=label)))
    entries = [CatalogEntry(label, spec) for label, spec in specs + products
               if spec.order() is not None and spec.order() <= max_order]
    entries.sort(key=lambda e: (e.spec.order(), e.label))
    return entries


# ---------------------------------------------------------------------------
# Per-group analysis


@dataclass
class AnalyzedGroup:
    label: str
    spec: GroupSpec
    group: Optional[Group] = None
    ctable: Optional[CyclicizerTable] = None
    graph: Optional[NonCyclicGraph] = None
    error: Optional[str] = None
    _diam: Optional[object] = None

    @property
    def is_cyclic(self) -> bool:
        return self.group is not None and is_cyclic_group(self.group)

    def diameter(self):
        if self._diam is None:
            self._diam = diameter_info(self.graph)
        return self._diam


@dataclass
class GroupProfile:
    """Picklable cross-group summary of one analyzed catalog entry."""

    label: str
    spec: GroupSpec
    order: int
    cyc_size: int
    pi_e: tuple
    mu: tuple
    max_order_elem: int
    is_cyclic: bool
    is_nilpotent: bool
    sylow_profile: Optional[tuple]    # ((p, size, is_cyclic), ...)
    is_pgroup: Optional[tuple]        # (p, e)
    is_gen_quaternion: bool
    dihedral_n: Optional[int]
    self_cyc_orders: tuple
    regular_family: Optional[tuple]
    goor: Optional[tuple]
    vertex_count: Optional[int] = None
    degrees_gcd: Optional[int] = None
    certificate: Optional[bytes] = None
    cert_hash: Optional[str] = None
    error: Optional[str] = None


def analyze_entry(entry: CatalogEntry) -> AnalyzedGroup:
    az = AnalyzedGroup(entry.label, entry.spec)
    try:
        az.group = build(entry.spec)
        az.group.label = entry.label
        az.ctable = cyclicizer_table(az.group)
        if not is_cyclic_group(az.group):
            az.graph = build_graph(az.group, az.ctable)
    except NonCyclicError as exc:
        az.error = f"{type(exc).__name__}: {exc}"
    return az


def profile_of(az: AnalyzedGroup, want_certificate: bool = True
               ) -> GroupProfile:
    if az.error is not None:
        return GroupProfile(az.label, az.spec, 0, 0, (), (), 0, False, False,
                            None, None, False, None, (), None, None,
                            error=az.error)
    g = az.group
    ct = az.ctable
    sylows = structure.cyclic_sylow_profile(g)
    prof = GroupProfile(
        label=az.label,
        spec=az.spec,
        order=g.order,
        cyc_size=ct.cyc_size,
        pi_e=pi_e(g),
        mu=mu(g),
        max_order_elem=max(g.elem_orders),
        is_cyclic=az.is_cyclic,
        is_nilpotent=sylows is not None,
        sylow_profile=tuple(sylows) if sylows is not None else None,
        is_pgroup=structure.pgroup_parameters(g),
        is_gen_quaternion=structure.is_generalized_quaternion(g),
        dihedral_n=structure.dihedral_parameter(g),
        self_cyc_orders=structure.self_cyclicizer_orders(g),
        regular_family=structure.regular_family(g),
        goor=structure.goor_parameters(g),
    )
    if az.graph is not None:
        graph = az.graph
        prof.vertex_count = graph.n_vertices
        d = 0
        for row in graph.adjacency:
            d = gcd(d, row.bit_count())
        prof.degrees_gcd = d
        if want_certificate:
            cf = canonical_form(graph)
            prof.certificate = cf.certificate
            prof.cert_hash = cf.hash_hex
    return prof


# ---------------------------------------------------------------------------
# Check registry


@dataclass
class CheckResult:
    name: str
    statement: str
    tested: int = 0
    skipped: list = field(default_factory=list)        # (label, reason)
    counterexamples: list = field(default_factory=list)
    findings: list = field(default_factory=list)
    elapsed_ms: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def skip(self, label: str, reason: str) -> None:
        self.skipped.append((label, reason))

    def to_json_dict(self, with_timing: bool = False) -> dict:
        reasons: dict[str, int] = {}
        for _, reason in self.skipped:
            reasons[reason] = reasons.get(reason, 0) + 1
        out = {
            "check": self.name,
            "statement": self.statement,
            "tested": self.tested,
            "skipped": {
                "total": len(self.skipped),
                "reasons": dict(sorted(reasons.items())),
                "labels": [lab for lab, _ in self.skipped[:MAX_REPORTED]],
            },
            "counterexamples": self.counterexamples[:MAX_REPORTED],
            "findings": self.findings[:MAX_REPORTED],
            "pass": self.passed,
        }
        if with_timing:
            out["elapsed_ms"] = self.elapsed_ms
        return out


@dataclass(frozen=True)
class Check:
    name: str
    statement: str
    kind: str                 # "group", "global", or "fixed"
    fn: Callable


CHECKS: dict[str, Check] = {}


def _register(name, statement, kind):
    def deco(fn):
        CHECKS[name] = Check(name, statement, kind, fn)
        return fn
    return deco


def _ce(result: CheckResult, **data) -> None:
    if len(result.counterexamples) < MAX_REPORTED * 4:
        result.counterexamples.append(data)


# -- per-group checks -------------------------------------------------------


@_register("cyc_coset_union",
           "every element cyclicizer is a union of cosets of the group "
           "cyclicizer, whose size therefore divides it", "group")
def _check_coset_union(az: AnalyzedGroup, result: CheckResult):
    g, ct = az.group, az.ctable
    n = g.order
    cyc = ct.cyc_members()
    result.tested += 1
    if len(cyc) == 1:
        return
    flat = g._flat
    for x in range(n):
        row = ct.rows[x]
        if row.bit_count() % len(cyc):
            _ce(result, group=az.label, element=g.labels[x],
                reason="cyclicizer size not divisible by group cyclicizer")
            return
        seen = 0
        rest = row
        while rest:
            b = rest & -rest
            y = b.bit_length() - 1
            coset = 0
            for c in cyc:
                coset |= 1 << flat[y * n + c]
            if coset & ~row:
                _ce(result, group=az.label, element=g.labels[x],
                    coset_rep=g.labels[y],
                    reason="coset leaks outside the cyclicizer")
                return
            rest &= ~coset
            seen |= coset


@_register("cyc_core_cyclic",
           "for D = Cyc(x), the simultaneous cyclicizer of D within D is a "
           "cyclic subgroup containing x", "group")
def _check_core_cyclic(az: AnalyzedGroup, result: CheckResult):
    g, ct = az.group, az.ctable
    n = g.order
    result.tested += 1
    verdicts: dict[int, tuple] = {}
    for x in range(n):
        d_bits = ct.rows[x]
        cached = verdicts.get(d_bits)
        if cached is None:
            core_bits = 0
            rest = d_bits
            while rest:
                b = rest & -rest
                if ct.rows[b.bit_length() - 1] & d_bits == d_bits:
                    core_bits |= b
                rest ^= b
            # the core is a cyclic subgroup iff one member generates it all
            rest = core_bits
            ok = False
            while rest and not ok:
                b = rest & -rest
                ok = g.generated_cyclic_bits(b.bit_length() - 1) == core_bits
                rest ^= b
            cached = (core_bits, ok)
            verdicts[d_bits] = cached
        core_bits, ok = cached
        if not (core_bits >> x) & 1:
            _ce(result, group=az.label, element=g.labels[x],
                reason="core misses the element itself")
            return
        if not ok:
            _ce(result, group=az.label, element=g.labels[x],
                reason="core is not a cyclic subgroup")
            return


@_register("pgroup_cyc_nontrivial",
           "a finite p-group has non-trivial group cyclicizer exactly when "
           "it is cyclic or generalized quaternion", "group")
def _check_pgroup_cyc(az: AnalyzedGroup, result: CheckResult):
    if structure.pgroup_parameters(az.group) is None:
        result.skip(az.label, "not a p-group")
        return
    result.tested += 1
    expected = az.is_cyclic or structure.is_generalized_quaternion(az.group)
    if (az.ctable.cyc_size > 1) != expected:
        _ce(result, group=az.label, cyc_size=az.ctable.cyc_size,
            cyclic=az.is_cyclic,
            generalized_quaternion=structure.is_generalized_quaternion(az.group))


@_register("quotient_cyc_trivial",
           "modding out the group cyclicizer leaves trivial cyclicizer and "
           "maps element cyclicizers to coset cyclicizers; the central "
           "quotient also has trivial cyclicizer", "group")
def _check_quotient(az: AnalyzedGroup, result: CheckResult):
    g, ct = az.group, az.ctable
    result.tested += 1
    if ct.cyc_size > 1:
        quo = quotient_by_cyclicizer(g)
        qct = cyclicizer_table(quo.group)
        if qct.cyc_size != 1:
            _ce(result, group=az.label,
                reason="quotient by cyclicizer keeps non-trivial cyclicizer")
            return
        for qi, rep in enumerate(quo.reps):
            image = 0
            for y in bits_to_indices(ct.rows[rep]):
                image |= 1 << quo.coset_of[y]
            if image != qct.rows[qi]:
                _ce(result, group=az.label, coset=quo.group.labels[qi],
                    reason="cyclicizer does not project onto the quotient")
                return
    z = center(g).members
    if 1 < len(z) < g.order:
        quo = quotient_by_central(g, z, label=f"{g.label}/Z")
        if cyclicizer_table(quo.group).cyc_size != 1:
            _ce(result, group=az.label,
                reason="central quotient has non-trivial cyclicizer")


@_register("complete_iff_ea2",
           "the non-cyclic graph is complete exactly for elementary abelian "
           "2-groups", "group")
def _check_complete(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    nv = az.graph.n_vertices
    complete = all(row.bit_count() == nv - 1 for row in az.graph.adjacency)
    ea = structure.elementary_abelian_parameters(az.group)
    if complete != (ea is not None and ea[0] == 2):
        _ce(result, group=az.label, complete=complete,
            elementary_abelian=ea)


@_register("diam_le_3",
           "the non-cyclic graph is connected with diameter at most 3, and "
           "diameter exactly 2 when the center equals the group cyclicizer",
           "group")
def _check_diameter(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    try:
        info = az.diameter()
    except Disconnected:
        _ce(result, group=az.label, reason="graph is disconnected")
        return
    if info.diameter > 3:
        _ce(result, group=az.label, diameter=info.diameter,
            witness=info.witness_labels(az.graph))
        return
    z = center(az.group).members
    z_bits = 0
    for m in z:
        z_bits |= 1 << m
    if z_bits == az.ctable.cyc_bits and info.diameter != 2:
        _ce(result, group=az.label, diameter=info.diameter,
            reason="center equals cyclicizer but diameter is not 2")


@_register("nilpotent_diam_le_2",
           "finite non-cyclic nilpotent groups have graph diameter at most 2",
           "group")
def _check_nilpotent_diam(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    if not structure.is_nilpotent(az.group):
        result.skip(az.label, "not nilpotent")
        return
    result.tested += 1
    info = az.diameter()
    if info.diameter > 2:
        _ce(result, group=az.label, diameter=info.diameter,
            witness=info.witness_labels(az.graph))


@_register("omega_chi_s",
           "clique number and chromatic number both equal the number of "
           "maximal cyclic subgroups, with validated witnesses", "group")
def _check_omega_chi(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    try:
        cc = clique_and_chromatic(az.graph, az.ctable)
    except VerificationFailure as exc:
        _ce(result, group=az.label, reason=str(exc))
        return
    if cc.omega != cc.chi or cc.omega != len(az.ctable.maximal):
        _ce(result, group=az.label, omega=cc.omega, chi=cc.chi,
            s=len(az.ctable.maximal))


@_register("omega_index_bounds",
           "the clique number is at most the index of the group cyclicizer, "
           "and for s >= 3 the covering bound "
           "max((s-1)^2 (s-3)!, (s-2)^3 (s-3)!) dominates that index",
           "group")
def _check_bounds(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    info = omega_bound_info(az.group, az.ctable)
    if not info.index_bound_ok:
        _ce(result, group=az.label, s=info.s, index=info.index,
            reason="clique count exceeds cyclicizer index")
    if info.covering_ok is False:
        _ce(result, group=az.label, s=info.s, index=info.index,
            bound=info.covering_value, reason="covering bound violated")
    if info.covering_ok is None:
        result.findings.append(
            {"group": az.label, "s": info.s,
             "note": "covering bound skipped, fewer than 3 maximal cyclics"})


@_register("alpha_formula",
           "the independence number equals the largest element order minus "
           "the group cyclicizer size; exact search cross-checks small "
           "graphs and disagreements are surfaced", "group")
def _check_alpha(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    try:
        info = independence_info(az.graph, az.ctable)
    except VerificationFailure as exc:
        _ce(result, group=az.label, reason=str(exc))
        return
    if info.brute_value is not None and info.brute_value < info.formula_value:
        _ce(result, group=az.label, formula=info.formula_value,
            exact=info.brute_value,
            reason="closed form exceeds the exact independence number")
    elif info.mismatch:
        result.findings.append(
            {"group": az.label, "formula": info.formula_value,
             "exact": info.brute_value,
             "note": "closed form undershoots the exact value"})


@_register("regular_classification",
           "the graph is regular exactly for Q8 x Z_n (n odd) and for "
           "P x Z_m with P non-cyclic of prime exponent p, gcd(m, p) = 1",
           "group")
def _check_regular(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    _, _, regular = degree_kinds(az.graph)
    fam = structure.regular_family(az.group)
    if regular != (fam is not None):
        _ce(result, group=az.label, regular=regular, family=fam)


HOMOCYCLIC_REQUIRED = ((2, 2, 2), (2, 2, 3), (2, 3, 2), (3, 2, 2), (5, 2, 2))


def _homocyclic_expected_size(p: int, m: int, n: int, ell: int) -> int:
    """Cyclicizer size of an element of order p^ell in (Z_{p^m})^n.

    An element of order p^i (i > ell) lies above x of order p^ell exactly
    when its leading coordinate carries a unit times p^(m-i) and every other
    coordinate is a multiple of p^(m-i+ell), leaving p^(i-ell) choices per
    coordinate.
    """
    if ell == m:
        return p ** m
    total = p ** ell
    for i in range(ell + 1, m + 1):
        total += (p ** i - p ** (i - 1)) * p ** ((n - 1) * (i - ell))
    return total


def _homocyclic_case(group: Group, p: int, m: int, n: int, label: str,
                     result: CheckResult):
    ct = cyclicizer_table(group)
    result.tested += 1
    if ct.cyc_size != 1:
        _ce(result, group=label, reason="group cyclicizer is not trivial")
        return
    for x in range(1, group.order):
        o = group.elem_orders[x]
        ell = 0
        while o > 1:
            o //= p
            ell += 1
        expected = _homocyclic_expected_size(p, m, n, ell)
        if ct.rows[x].bit_count() != expected:
            _ce(result, group=label, element=group.labels[x],
                got=ct.rows[x].bit_count(), expected=expected)
            return
    graph = build_graph(group, ct)
    _, kinds, _ = degree_kinds(graph)
    if kinds != m:
        _ce(result, group=label, kind_degrees=kinds, expected=m)
        return
    if m > 1 and is_tidy(group):
        _ce(result, group=label,
            reason="expected a cyclicizer that is not a subgroup")


@_register("homocyclic_degree_formula",
           "in a direct sum of n copies of Z_{p^m} (n > 1), cyclicizer "
           "sizes follow the closed form in the element order, the graph "
           "has exactly m kind degrees, and for m > 1 some cyclicizer "
           "fails to be a subgroup", "group")
def _check_homocyclic(az: AnalyzedGroup, result: CheckResult):
    params = structure.homocyclic_parameters(az.group)
    if params is None or params[2] < 2:
        result.skip(az.label, "not homocyclic on more than one factor")
        return
    p, m, n = params
    _homocyclic_case(az.group, p, m, n, az.label, result)


@_register("abelian_two_kind_degrees",
           "a non-cyclic abelian group has exactly two kind degrees exactly "
           "when it is Z_m plus n > 1 copies of Z_{p^2} with gcd(m, p) = 1; "
           "non-abelian two-kind groups are logged", "group")
def _check_two_kinds(az: AnalyzedGroup, result: CheckResult):
    if az.graph is None:
        result.skip(az.label, "cyclic")
        return
    _, kinds, _ = degree_kinds(az.graph)
    if not structure.is_abelian(az.group):
        if kinds == 2:
            result.findings.append(
                {"group": az.label, "note": "non-abelian with two kind degrees"})
        result.skip(az.label, "not abelian")
        return
    result.tested += 1
    if (kinds == 2) != structure.two_kind_abelian_family(az.group):
        _ce(result, group=az.label, kind_degrees=kinds,
            family=structure.two_kind_abelian_family(az.group))


@_register("mu_cyc_disjoint",
           "no divisibility-maximal element order occurs as an element "
           "order inside the group cyclicizer of a non-cyclic group",
           "group")
def _check_mu_disjoint(az: AnalyzedGroup, result: CheckResult):
    if az.is_cyclic:
        result.skip(az.label, "cyclic")
        return
    result.tested += 1
    g, ct = az.group, az.ctable
    cyc_orders = {g.elem_orders[x] for x in ct.cyc_members()}
    clash = sorted(set(mu(g)) & cyc_orders)
    if clash:
        _ce(result, group=az.label, orders=clash)


@_register("mu_self_cyclicizer",
           "an element whose order is divisibility-maximal has cyclicizer "
           "equal to the cyclic subgroup it generates", "group")
def _check_mu_self(az: AnalyzedGroup, result: CheckResult):
    g, ct = az.group, az.ctable
    result.tested += 1
    maximal_orders = set(mu(g))
    for x in range(g.order):
        if g.elem_orders[x] in maximal_orders:
            if ct.rows[x] != g.generated_cyclic_bits(x):
                _ce(result, group=az.label, element=g.labels[x])
                return


# -- fixed checks -----------------------------------------------------------


@_register("z6xs3_diam_3",
           "the graph of Z6 x S3 has diameter 3, achieved by the pair "
           "((3,e), (2,e))", "fixed")
def _check_z6xs3(result: CheckResult, profiles=None):
    spec = direct_product([cyclic(6), symmetric(3)], name="Z6xS3")
    g = build(spec)
    graph = build_graph(g)
    result.tested += 1
    info = diameter_info(graph)
    a = graph.vertices.index(g.labels.index("(3,e)"))
    b = graph.vertices.index(g.labels.index("(2,e)"))
    if info.diameter != 3:
        _ce(result, group="Z6xS3", diameter=info.diameter)
        return
    if distance(graph, a, b) != 3:
        _ce(result, group="Z6xS3", pair=("(3,e)", "(2,e)"),
            distance=distance(graph, a, b))


@_register("homocyclic_required_cases",
           "the homocyclic cyclicizer-size formula verified on the five "
           "required (p, m, n) parameter triples by brute force", "fixed")
def _check_homocyclic_fixed(result: CheckResult, profiles=None):
    for p, m, n in HOMOCYCLIC_REQUIRED:
        label = f"(Z{p ** m})^{n}"
        spec = direct_product([cyclic(p ** m)] * n, name=label)
        _homocyclic_case(build(spec), p, m, n, label, result)


def _family_graph(expr: str):
    g = build(parse_group_expr(expr))
    return canonical_form(build_graph(g))


@_register("cyclic_maximal_families",
           "among the 2-groups with a cyclic subgroup of index 2 and the "
           "odd modular p-groups, graph-isomorphism classes at orders 8-32 "
           "are: modular matches Z_{p^(n-1)} x Z_p whenever n > 3 or p > 2, "
           "while the order-8 chain group, the semidihedral groups and the "
           "dihedral groups sit in singleton classes", "fixed")
def _check_families(result: CheckResult, profiles=None):
    certs = {expr: _family_graph(expr).hash_hex
             for expr in ("G(2,3)", "K(2,3)", "D8",
                          "G(2,4)", "K(2,4)", "H(4)", "D16", "Q16",
                          "G(2,5)", "K(2,5)", "H(5)", "D32", "Q32",
                          "G(3,3)", "K(3,3)")}

    def expect(a, b, same):
        result.tested += 1
        if (certs[a] == certs[b]) != same:
            _ce(result, pair=(a, b), expected="isomorphic" if same
                else "non-isomorphic")

    expect("G(2,4)", "K(2,4)", True)
    expect("G(2,5)", "K(2,5)", True)
    expect("G(3,3)", "K(3,3)", True)
    expect("G(2,3)", "D8", True)       # the order-8 modular group is dihedral
    expect("D8", "K(2,3)", False)
    expect("G(2,3)", "K(2,3)", False)
    for other in ("K(2,4)", "G(2,4)", "D16", "Q16"):
        expect("H(4)", other, False)
    for other in ("K(2,4)", "G(2,4)", "H(4)", "Q16"):
        expect("D16", other, False)
    for other in ("K(2,5)", "G(2,5)", "H(5)", "Q32"):
        expect("D32", other, False)
    for other in ("K(2,5)", "G(2,5)", "D32", "Q32"):
        expect("H(5)", other, False)


# -- global checks ----------------------------------------------------------


def _certificate_classes(profiles) -> list[list[GroupProfile]]:
    buckets: dict[str, list[GroupProfile]] = {}
    for p in profiles:
        if p.cert_hash is not None:
            buckets.setdefault(p.cert_hash, []).append(p)
    classes = [sorted(v, key=lambda p: p.label) for v in buckets.values()]
    classes.sort(key=lambda c: (c[0].order, c[0].label))
    return classes


@_register("iso_order_spectrum",
           "groups with isomorphic non-cyclic graphs and equal order share "
           "their element-order spectrum; equal-graph pairs with different "
           "order would answer an open question and are logged", "global")
def _check_order_spectrum(profiles, result: CheckResult):
    for cls in _certificate_classes(profiles):
        result.tested += len(cls)
        for a, b in combinations(cls, 2):
            if a.order != b.order:
                result.findings.append(
                    {"pair": (a.label, b.label),
                     "orders": (a.order, b.order),
                     "note": "isomorphic graphs with different group order"})
            elif a.pi_e != b.pi_e:
                _ce(result, pair=(a.label, b.label),
                    pi_e=(list(a.pi_e), list(b.pi_e)))


@_register("iso_cyc_divisibility",
           "when two non-cyclic graphs are isomorphic, each group "
           "cyclicizer size divides the gcd of the other graph's vertex "
           "degrees and vertex count", "global")
def _check_fi(profiles, result: CheckResult):
    for cls in _certificate_classes(profiles):
        if len(cls) < 2:
            continue
        for a, b in combinations(cls, 2):
            for left, right in ((a, b), (b, a)):
                result.tested += 1
                bound = gcd(left.degrees_gcd, left.vertex_count)
                if bound % right.cyc_size:
                    _ce(result, pair=(left.label, right.label),
                        cyc_size=right.cyc_size, gcd=bound)


@_register("nilpotent_transfer",
           "if two groups with trivial cyclicizers have isomorphic graphs "
           "and one is nilpotent, so is the other, with isomorphic Sylow "
           "graphs prime by prime", "global")
def _check_transfer(profiles, result: CheckResult):
    for cls in _certificate_classes(profiles):
        if len(cls) < 2:
            continue
        pairs = [p for p in cls if p.cyc_size == 1]
        for a, b in combinations(pairs, 2):
            if not (a.is_nilpotent or b.is_nilpotent):
                continue
            result.tested += 1
            if a.is_nilpotent != b.is_nilpotent:
                _ce(result, pair=(a.label, b.label),
                    nilpotent=(a.is_nilpotent, b.is_nilpotent))
                continue
            prof_a = dict((p, (size, cyc)) for p, size, cyc in a.sylow_profile)
            prof_b = dict((p, (size, cyc)) for p, size, cyc in b.sylow_profile)
            if set(prof_a) != set(prof_b):
                _ce(result, pair=(a.label, b.label),
                    primes=(sorted(prof_a), sorted(prof_b)))
                continue
            ga = build(a.spec)
            gb = build(b.spec)
            for p in prof_a:
                if prof_a[p][1] != prof_b[p][1]:
                    _ce(result, pair=(a.label, b.label), prime=p,
                        reason="one Sylow subgroup cyclic, the other not")
                    break
                if prof_a[p][1]:
                    continue
                sa = Subgroup(ga, structure.sylow_members(ga, p)).as_group()
                sb = Subgroup(gb, structure.sylow_members(gb, p)).as_group()
                ca = canonical_form(build_graph(sa))
                cb = canonical_form(build_graph(sb))
                if ca.matrix != cb.matrix:
                    _ce(result, pair=(a.label, b.label), prime=p,
                        reason="Sylow graphs are not isomorphic")
                    break


@_register("multipartite_iso_condition",
           "for P x Z_n with P non-cyclic of prime exponent (|P| = p^m, "
           "m > 1, gcd(n, p) = 1), two such graphs are isomorphic exactly "
           "when the part-count and part-size equations both hold", "global")
def _check_goor(profiles, result: CheckResult):
    members = [p for p in profiles if p.goor is not None]
    for a, b in combinations(members, 2):
        result.tested += 1
        (p1, m1, n1), (p2, m2, n2) = a.goor, b.goor
        c1, c2 = check_goormaghtigh_condition(p1, m1, n1, p2, m2, n2)
        iso = a.cert_hash == b.cert_hash and a.certificate == b.certificate
        if iso != (c1 and c2):
            _ce(result, pair=(a.label, b.label), condition=(c1, c2), iso=iso)


@_register("regular_uniqueness",
           "a graph isomorphic to that of Q8 x Z_n forces the same group; "
           "likewise for elementary abelian P x Z_n when P is a 2-group or "
           "has rank 2", "global")
def _check_regular_unique(profiles, result: CheckResult):
    for cls in _certificate_classes(profiles):
        anchors = [p for p in cls if p.regular_family is not None]
        if not anchors:
            continue
        for anchor in anchors:
            fam = anchor.regular_family
            covered = (fam[0] == "Q8"
                       or (fam[0] == "P" and (fam[1] == 2 or fam[2] == 2)))
            if not covered:
                continue
            result.tested += 1
            for other in cls:
                if other is anchor:
                    continue
                if other.regular_family != fam:
                    _ce(result, anchor=anchor.label, other=other.label,
                        families=(fam, other.regular_family))


@_register("dihedral_uniqueness",
           "a graph isomorphic to a dihedral graph of order 2n forces group "
           "order 2n with an element of order n, and for odd n forces the "
           "dihedral group itself", "global")
def _check_dihedral_unique(profiles, result: CheckResult):
    for cls in _certificate_classes(profiles):
        anchors = [p for p in cls if p.dihedral_n is not None]
        if not anchors:
            continue
        n = anchors[0].dihedral_n
        for other in cls:
            result.tested += 1
            if other.order != 2 * n or n not in other.pi_e:
                _ce(result, anchor=anchors[0].label, other=other.label,
                    reason="order or element-order constraint fails")
                continue
            if n % 2 == 1 and other.dihedral_n != n:
                _ce(result, anchor=anchors[0].label, other=other.label,
                    reason="odd half-order class contains a non-dihedral group")


@_register("pgroup_order_recovery",
           "for a non-cyclic p-group of order p^e (e >= 3): a non-trivial "
           "group cyclicizer forces generalized quaternion on the whole "
           "class; and a self-cyclicizing element of order 2, p^(e-1) or "
           "p^(e-2) forces equal order across the class", "global")
def _check_pgroup_recovery(profiles, result: CheckResult):
    for cls in _certificate_classes(profiles):
        for a in cls:
            if a.is_pgroup is None or a.is_cyclic:
                continue
            p, e = a.is_pgroup
            if e < 3:
                continue
            if a.cyc_size > 1:
                result.tested += 1
                if not a.is_gen_quaternion:
                    _ce(result, group=a.label,
                        reason="non-trivial cyclicizer without generalized "
                               "quaternion structure")
                    continue
                for other in cls:
                    if other.order != a.order or not other.is_gen_quaternion:
                        _ce(result, anchor=a.label, other=other.label,
                            reason="classmate is not the same generalized "
                                   "quaternion group")
                continue
            premise = ((p == 2 and 2 in a.self_cyc_orders)
                       or p ** (e - 1) in a.self_cyc_orders
                       or p ** (e - 2) in a.self_cyc_orders)
            if premise:
                result.tested += 1
                for other in cls:
                    if other.order != a.order:
                        _ce(result, anchor=a.label, other=other.label,
                            orders=(a.order, other.order))


# ---------------------------------------------------------------------------
# Runners


def _run_entry(entry: CatalogEntry, group_checks: list[str]):
    az = analyze_entry(entry)
    outcomes = {}
    for name in group_checks:
        check = CHECKS[name]
        scratch = CheckResult(name, check.statement)
        if az.error is not None:
            scratch.skip(az.label, f"build failed ({az.error})")
        else:
            t0 = time.perf_counter()
            check.fn(az, scratch)
            scratch.elapsed_ms = int(1000 * (time.perf_counter() - t0))
        outcomes[name] = scratch
    return az.label, outcomes, profile_of(az)


def _merge(into: CheckResult, part: CheckResult) -> None:
    into.tested += part.tested
    into.skipped.extend(part.skipped)
    into.counterexamples.extend(part.counterexamples)
    into.findings.extend(part.findings)
    into.elapsed_ms += part.elapsed_ms


def run_check(catalog: Catalog, name: str, jobs: int = 1) -> CheckResult:
    results = run_all(catalog, jobs=jobs, names=[name])
    return results[0]


def run_all(catalog: Catalog, jobs: int = 1,
            names: Optional[list[str]] = None) -> list[CheckResult]:
    """Run the selected checks (all by default) over the catalog."""
    if names is None:
        names = list(CHECKS)
    unknown = [n for n in names if n not in CHECKS]
    if unknown:
        raise UnknownCheck(
            f"unknown check(s) {unknown}; available: {sorted(CHECKS)}")
    group_checks = [n for n in names if CHECKS[n].kind == "group"]
    global_checks = [n for n in names if CHECKS[n].kind == "global"]
    fixed_checks = [n for n in names if CHECKS[n].kind == "fixed"]
    results = {n: CheckResult(n, CHECKS[n].statement) for n in names}

    profiles: list[GroupProfile] = []
    need_entries = bool(group_checks or global_checks)
    if need_entries:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                entry_runs = list(pool.map(
                    _run_entry, catalog.entries,
                    [group_checks] * len(catalog.entries), chunksize=8))
        else:
            entry_runs = [_run_entry(e, group_checks)
                          for e in catalog.entries]
        order_of = {e.label: i for i, e in enumerate(catalog.entries)}
        entry_runs.sort(key=lambda t: order_of[t[0]])
        for _, outcomes, profile in entry_runs:
            for name, part in outcomes.items():
                _merge(results[name], part)
            profiles.append(profile)
        for prof in profiles:
            if prof.error is not None:
                for name in global_checks:
                    results[name].skip(prof.label,
                                       f"build failed ({prof.error})")
    ok_profiles = [p for p in profiles if p.error is None]
    for name in global_checks:
        t0 = time.perf_counter()
        CHECKS[name].fn(ok_profiles, results[name])
        results[name].elapsed_ms = int(1000 * (time.perf_counter() - t0))
    for name in fixed_checks:
        t0 = time.perf_counter()
        CHECKS[name].fn(results[name])
        results[name].elapsed_ms = int(1000 * (time.perf_counter() - t0))
    return [results[n] for n in names]


def all_pass(results: list[CheckResult]) -> bool:
    return all(r.passed for r in results)


def report_json(results: list[CheckResult], with_timing: bool = False) -> str:
    return json.dumps([r.to_json_dict(with_timing) for r in results],
                      indent=2)


def render_table(results: list[CheckResult]) -> str:
    name_w = max(len(r.name) for r in results)
    lines = []
    for r in results:
        status = "pass" if r.passed else "FAIL"
        extra = ""
        if r.counterexamples:
            extra = f"  counterexamples={len(r.counterexamples)}"
        elif r.findings:
            extra = f"  findings={len(r.findings)}"
        lines.append(f"{r.name:<{name_w}}  {status}  tested={r.tested}"
                     f" skipped={len(r.skipped)}{extra}")
    total = "PASS" if all_pass(results) else "FAIL"
    lines.append(f"overall: {total}")
    return "\n".join(lines)
