import math

import numpy as np
import pytest

import _shared
from semisimp import basedring as br
from semisimp.errors import NotCommutative, SearchTimeout, Truncated, UnknownName

CATALOG = [
    br.ver_p(2), br.ver_p(3), br.ver_p(5), br.ver_p(7), br.ver_p_plus(5), br.ver_p_plus(7),
    br.K_l(3), br.K_l(4), br.K_l(5), br.K_l_tilde(3), br.K_l_tilde(4),
    br.group_ring([4]), br.group_ring([2, 2]), br.group_ring([3, 4]),
    br.product(br.ver_p_plus(5), br.group_ring([8])),
]
TRUNCATED = [br.K_inf_trunc(4), br.sl2_trunc(5), br.pgl2_trunc(4), br.osp12_trunc(4), br.group_ring([0, 3], 3),
             br.product(br.ver_p(5), br.pgl2_trunc(3))]


@pytest.mark.parametrize("R", CATALOG + TRUNCATED, ids=lambda r: r.name)
def test_catalog_validates(R):
    rep = br.validate(R)
    assert rep.ok, rep.violations
    if not R.truncated:
        assert not rep.skipped


def test_validate_injected_fault():
    R = br.K_l(3)
    N = R.N.copy()
    N[1, 1, 1] += 1
    bad = br.BasedRing(R.basis, N, R.dual, R.unit)
    rep = br.validate(bad)
    assert not rep.ok and any("associativity" in v for v in rep.violations)


def test_validate_unit_and_duality_faults():
    R = br.group_ring([4])
    N = R.N.copy()
    N[1, 3, 0] = 0
    N[1, 3, 2] = 1
    rep = br.validate(br.BasedRing(R.basis, N, R.dual, R.unit))
    assert not rep.ok
    rep = br.validate(br.BasedRing(R.basis, R.N, [0, 2, 3, 1], R.unit))
    assert any("involution" in v for v in rep.violations)


def test_truncated_reports_skips():
    rep = br.validate(br.K_inf_trunc(3))
    assert rep.ok and rep.skipped


def test_ver_fusion_rule():
    R = br.ver_p(3)
    assert R.rank == 2 and R.mult_labels("L2", "L2") == {"L1": 1}
    R5 = br.ver_p(5)
    assert R5.mult_labels("L2", "L2") == {"L1": 1, "L3": 1}
    assert R5.mult_labels("L3", "L4") == {"L2": 1}


def test_kl_examples():
    R = br.K_l(3)
    assert R.rank == 4 and R.mult_labels("X1", "X3") == {"X2": 1}
    T = br.K_l_tilde(3)
    assert T.mult_labels("X1", "X3") == {"X2": 1, "X3": 1}


def test_product_of_group_rings():
    a = br.product(br.group_ring([2]), br.group_ring([2]))
    assert br.iso_search(a, br.group_ring([2, 2])) is not None


def test_fp_dims_examples():
    d = br.fp_dims(br.ver_p(5))
    assert abs(d[1] - (1 + math.sqrt(5)) / 2) < 1e-6
    assert np.allclose(br.fp_dims(br.group_ring([3, 4])), 1)
    d = br.fp_dims(br.K_l(3))
    assert abs(d[1] - (1 + math.sqrt(2))) < 1e-6
    with pytest.raises(Truncated):
        br.fp_dims(br.K_inf_trunc(3))


@pytest.mark.parametrize("R", CATALOG, ids=lambda r: r.name)
def test_fp_dims_multiplicative(R):
    d = br.fp_dims(R)
    assert d[R.unit] == pytest.approx(1.0)
    assert (d >= 1 - 1e-9).all()
    for i in range(R.rank):
        for j in range(R.rank):
            assert abs(d[i] * d[j] - R.N[i, j] @ d) < 1e-6


@pytest.mark.parametrize("R", CATALOG, ids=lambda r: r.name)
def test_characters_are_homomorphisms(R):
    chars = br.characters(R)
    assert len(chars) == R.rank
    for ch in chars:
        assert ch.residual() < 1e-9


def test_group_ring_characters():
    chars = br.characters(br.group_ring([5]))
    for ch in chars:
        assert np.allclose(np.abs(ch.values), 1)
        assert abs(br.formal_codegree(ch) - 5) < 1e-9


def test_ver3_characters():
    vals = sorted(round(ch.values[1].real, 9) for ch in br.characters(br.ver_p(3)))
    assert vals == [-1.0, 1.0]


def test_characters_errors():
    with pytest.raises(Truncated):
        br.characters(br.K_inf_trunc(3))
    R = br.group_ring([3])
    N = np.zeros((3, 3, 3), dtype=np.int64)
    N[0] = np.eye(3, dtype=np.int64)
    N[:, 0] = np.eye(3, dtype=np.int64)
    N[1, 1, 2] = N[2, 2, 1] = 1
    N[1, 2, 0] = 1
    N[2, 1, 2] = 1
    with pytest.raises(NotCommutative):
        br.characters(br.BasedRing(R.basis, N, [0, 2, 1]))


@pytest.mark.parametrize("l", [3, 4, 5])
def test_kl_codegrees_closed_forms(l):
    chars = br.characters(br.K_l(l))
    pairs = _shared.match_kl_characters(chars, l)
    assert pairs is not None
    for ch, (u, _, code) in pairs:
        assert min(abs(u ** (l + 1) - 1), abs(u ** (l + 1) + 1)) < 1e-9 and abs(u - 1) > 1e-6
        assert abs(br.formal_codegree(ch) - code) < 1e-9


def test_iso_search_examples():
    assert br.iso_search(br.group_ring([4]), br.group_ring([2, 2])) is None
    R = br.ver_p(7)
    iso = br.iso_search(R, R)
    assert iso is not None
    assert br.iso_search(R, br.K_l(5)) is None


def test_iso_search_transports_constants():
    a = br.product(br.ver_p_plus(5), br.group_ring([8]))
    perm = np.random.default_rng(0).permutation(a.rank)
    perm = np.concatenate([[a.unit], [i for i in perm if i != a.unit]])
    inv = np.argsort(perm)
    N = a.N[np.ix_(perm, perm, perm)]
    b = br.BasedRing([a.basis[i] for i in perm], N, [int(inv[a.dual[i]]) for i in perm], 0)
    iso = br.iso_search(a, b)
    s = np.array([iso[i] for i in range(a.rank)])
    assert np.array_equal(a.N, b.N[np.ix_(s, s, s)])


def test_iso_search_pins():
    R = br.group_ring([4])
    assert br.iso_search(R, R, pins={1: 3}) is not None
    assert br.iso_search(R, R, pins={1: 2}) is None


def test_iso_search_timeout():
    R = br.group_ring([2, 2, 2, 2, 2])
    with pytest.raises(SearchTimeout):
        br.iso_search(R, br.group_ring([2, 2, 2, 2, 2]), timeout=-1)


@pytest.mark.parametrize("R", CATALOG + TRUNCATED, ids=lambda r: r.name)
def test_json_roundtrip(R):
    text = R.to_json()
    back = br.ring_from_json(text)
    assert back.to_json() == text


def test_catalog_names():
    assert br.catalog("ver_p:5").rank == 4
    assert br.catalog("group_ring:Z4").rank == 4
    assert br.catalog("group_ring:Z2xZ2").rank == 4
    assert br.catalog("K_l", 3).rank == 4
    assert br.catalog("product:ver_p_plus:5;group_ring:Z8").rank == 16
    with pytest.raises(UnknownName):
        br.catalog("nothing:1")


def test_element_order():
    R = br.product(br.ver_p_plus(5), br.group_ring([8]))
    assert R.element_order(R.index("L1*g(1)")) == 8
    assert R.element_order(R.index("L3*g(0)")) is None
