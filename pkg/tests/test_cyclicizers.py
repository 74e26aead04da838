import pytest

from noncyclic import groups as G
from noncyclic.cyclicizers import (cyclicizer, cyclicizer_of_set,
                                   cyclicizer_table, is_tidy,
                                   maximal_cyclic_subgroups, prime_graph,
                                   quotient_by_cyclicizer)
from noncyclic.errors import EmptySet

import oracles


def build(expr):
    return G.build(G.parse_group_expr(expr))


def labels_of(group, indices):
    return sorted(group.labels[i] for i in indices)


def test_z2xz4_cyclicizer_of_0_2():
    h = build("Z2xZ4")
    got = labels_of(h, cyclicizer(h, h.labels.index("(0,2)")))
    assert got == sorted(["(0,0)", "(0,1)", "(0,2)", "(0,3)", "(1,1)", "(1,3)"])


def test_identity_cyclicizer_in_cyclic_group():
    g = build("Z12")
    assert cyclicizer(g, 0) == tuple(range(12))


def test_q8_cyclicizer_of_a():
    q8 = build("Q8")
    a = q8.labels.index("a")
    got = cyclicizer(q8, a)
    assert got == tuple(sorted(oracles.naive_cyclicizer(q8, a)))
    assert labels_of(q8, got) == sorted(["e", "a", "a2", "a3"])


def test_cyclicizer_of_set():
    h = build("Z2xZ4")
    assert cyclicizer_of_set(h, [0]) == cyclicizer(h, 0)
    # simultaneous cyclicizer of the whole group is trivial here: this is a
    # non-cyclic 2-group, so only the identity is compatible with everyone
    assert cyclicizer_of_set(h, range(8)) == (0,)
    q8 = build("Q8")
    assert labels_of(q8, cyclicizer_of_set(q8, range(8))) == ["a2", "e"]
    with pytest.raises(EmptySet):
        cyclicizer_of_set(h, [])


def test_cyc_group_against_oracle():
    for expr in ["Z2xZ4", "Q8", "S3", "D8", "Q8xZ3"]:
        g = build(expr)
        table = cyclicizer_table(g)
        expected = set(range(g.order))
        for x in range(g.order):
            expected &= set(oracles.naive_cyclicizer(g, x))
        assert set(table.cyc_members()) == expected


def test_maximal_cyclic_counts():
    assert len(maximal_cyclic_subgroups(build("Z12"))) == 1
    q8 = build("Q8")
    maximal = maximal_cyclic_subgroups(q8)
    assert len(maximal) == 3
    assert all(m.order == 4 for m in maximal)
    s3 = build("S3")
    assert len(maximal_cyclic_subgroups(s3)) == 4
    # oracle agreement on membership sets
    assert {frozenset(m.members) for m in maximal_cyclic_subgroups(s3)} \
        == oracles.naive_maximal_cyclic(s3)


def test_maximal_cyclic_ordering_and_generators():
    table = cyclicizer_table(build("S3"))
    sizes = [m.size for m in table.maximal]
    assert sizes == sorted(sizes, reverse=True)
    for m in table.maximal:
        g = table.group
        assert g.elem_orders[m.generator] == m.size
        assert g.generated_cyclic_bits(m.generator) == m.bits


def test_maximal_cyclic_cover_and_core():
    for expr in ["Q8", "S3", "Z2xZ4", "D12"]:
        g = build(expr)
        table = cyclicizer_table(g)
        union = 0
        inter = (1 << g.order) - 1
        for m in table.maximal:
            union |= m.bits
            inter &= m.bits
        assert union == (1 << g.order) - 1
        assert inter & ~table.cyc_bits == 0


def test_tidiness():
    assert is_tidy(build("EA(3,2)")).is_tidy          # prime exponent
    assert is_tidy(build("EA(2,3)")).is_tidy
    res = is_tidy(build("Z2xZ4"))
    assert not res.is_tidy
    h = build("Z2xZ4")
    assert h.labels[res.witness] == "(0,2)"
    a, b = res.violating_pair
    bits = h.pair_rows[res.witness]
    assert (bits >> a) & 1 and (bits >> b) & 1
    assert not (bits >> h.mult(a, b)) & 1
    assert not is_tidy(build("Z4xZ4")).is_tidy


def test_prime_graph():
    pg = prime_graph(build("Z6"))
    assert pg.primes == (2, 3)
    assert pg.edges == ((2, 3),)
    assert pg.component_count == 1
    pg = prime_graph(build("S3"))
    assert pg.edges == ()
    assert pg.component_count == 2
    pg = prime_graph(build("A5"))
    assert pg.primes == (2, 3, 5)
    assert pg.edges == ()
    assert pg.component_count == 3
    pg = prime_graph(build("S5"))
    assert pg.edges == ((2, 3),)
    assert pg.component_count == 2


def test_coset_union_property():
    for expr in ["Q8", "Q8xZ3", "S3xZ5"]:
        g = build(expr)
        table = cyclicizer_table(g)
        cyc = table.cyc_members()
        for x in range(g.order):
            row = set(table.cyc_of(x))
            assert len(row) % len(cyc) == 0
            for y in list(row):
                coset = {g.mult(y, c) for c in cyc}
                assert coset <= row


def test_quotient_by_cyclicizer():
    q8 = build("Q8")
    quo = quotient_by_cyclicizer(q8)
    assert quo.group.order == 4
    assert sorted(quo.group.elem_orders) == [1, 2, 2, 2]
    assert cyclicizer_table(quo.group).cyc_size == 1
    # element cyclicizers project to coset cyclicizers
    table = cyclicizer_table(q8)
    qtable = cyclicizer_table(quo.group)
    for qi, rep in enumerate(quo.reps):
        image = {quo.coset_of[y] for y in table.cyc_of(rep)}
        assert image == set(qtable.cyc_of(qi))


def test_quotient_s3xz5():
    g = build("S3xZ5")
    table = cyclicizer_table(g)
    assert table.cyc_size == 5  # the coprime cyclic factor
    quo = quotient_by_cyclicizer(g)
    assert quo.group.order == 6
    assert sorted(quo.group.elem_orders) == [1, 2, 2, 2, 3, 3]


def test_table_json_shape():
    table = cyclicizer_table(build("Q8"))
    doc = table.to_json_dict()
    assert doc["order"] == 8
    assert doc["cyc_G"] == [0, 2]
    assert len(doc["cyc_of"]) == 8
    assert all(set(m) == {"generator", "members"}
               for m in doc["maximal_cyclic"])
