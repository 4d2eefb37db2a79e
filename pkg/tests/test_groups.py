import itertools

import pytest

from semisimp import groups as gp
from semisimp.errors import OrderCapExceeded, SylowTooLarge, UnknownName


def _from_cycles(cycles, n):
    return gp.from_cycles(cycles, n, one_based=True)


def test_enumerate_examples():
    S4 = gp.PermGroup([_from_cycles([[1, 2]], 4), _from_cycles([[1, 2, 3, 4]], 4)])
    assert S4.order == 24
    assert gp.dihedral(5).order == 10
    V = gp.PermGroup([_from_cycles([[1, 2], [3, 4]], 4), _from_cycles([[1, 3], [2, 4]], 4)])
    assert V.order == 4


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        gp.symmetric(8)


def test_closure_and_inverses():
    G = gp.symmetric(4)
    T = G.table
    assert set(T.ravel().tolist()) == set(range(G.order))
    for i in range(G.order):
        assert T[i, G.inverses[i]] == 0


def test_sylow_examples():
    assert gp.sylow(gp.symmetric(5), 5).order == 5
    assert gp.sylow(gp.symmetric(4), 2).order == 8
    assert gp.sylow(gp.symmetric(5), 7).order == 1


def test_normalizer_examples():
    S5 = gp.symmetric(5)
    assert gp.normalizer(S5, gp.sylow(S5, 5)).order == 20
    assert gp.normalizer(S5, S5.whole()).order == 120
    assert gp.normalizer(S5, gp.sylow(S5, 3)).order == 12


def test_p_subgroups_examples():
    orders = [h.order for h in gp.p_subgroups_up_to_conjugacy(gp.cyclic(5), 5)]
    assert orders == [1, 5]
    orders = [h.order for h in gp.p_subgroups_up_to_conjugacy(gp.klein_four(), 2)]
    assert orders == [1, 2, 2, 2, 4]
    orders = [h.order for h in gp.p_subgroups_up_to_conjugacy(gp.symmetric(4), 3)]
    assert orders == [1, 3]


def test_sylow_too_large():
    with pytest.raises(SylowTooLarge):
        gp.p_subgroups_up_to_conjugacy(gp.symmetric(7), 2, max_sylow=8)


def test_catalog_examples():
    assert gp.frobenius(5).order == 20
    assert gp.direct_product(gp.symmetric(2), gp.symmetric(3)).order == 12
    assert gp.catalog("dihedral:5").order == 10
    assert gp.catalog("S5").order == 120
    assert gp.catalog("F20").order == 20
    assert gp.catalog("direct_product:S2;S3").order == 12
    with pytest.raises(UnknownName):
        gp.catalog("mystery:3")


def test_group_literal_roundtrip():
    lit = {"generators": [[[1, 2]], [[1, 2, 3, 4, 5]]]}
    G = gp.group_from_literal(lit)
    assert G.order == 120
    H = gp.group_from_literal(gp.group_to_literal(G))
    assert H == G


CATALOG = [gp.symmetric(3), gp.symmetric(4), gp.symmetric(5), gp.dihedral(5), gp.dihedral(6), gp.frobenius(5),
           gp.frobenius(7), gp.alternating(5), gp.klein_four(), gp.cyclic(9),
           gp.direct_product(gp.symmetric(3), gp.cyclic(4))]


def _primes(n):
    return [p for p in range(2, n + 1) if n % p == 0 and all(p % q for q in range(2, p))]


@pytest.mark.parametrize("G", CATALOG, ids=lambda g: g.name)
def test_sylow_and_normalizer_properties(G):
    for p in _primes(G.order):
        P = gp.sylow(G, p)
        idx = G.order // P.order
        assert idx % p != 0 and G.order % P.order == 0
        assert gp.is_subgroup(G, P.members)
        N = gp.normalizer(G, P)
        assert P.members <= N.members and N.order % P.order == 0


@pytest.mark.parametrize("G", [gp.symmetric(4), gp.dihedral(6), gp.alternating(5), gp.klein_four()],
                         ids=lambda g: g.name)
def test_conjugacy_filter(G):
    for p in _primes(G.order):
        reps = gp.p_subgroups_up_to_conjugacy(G, p)
        assert [h.order for h in reps] == sorted(h.order for h in reps)
        for a, b in itertools.combinations(reps, 2):
            if a.order == b.order:
                conj = any(G.conjugate_set(x, a.members) == b.members for x in range(G.order))
                assert not conj


def test_coset_reps_deterministic():
    G = gp.symmetric(5)
    P = gp.sylow(G, 5)
    reps = G.left_coset_reps(P)
    assert len(reps) == 24 and reps == G.left_coset_reps(P)
    assert reps[0] == 0
