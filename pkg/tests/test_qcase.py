from collections import Counter

import pytest
from hypothesis import given, strategies as st

import _shared
from semisimp import qcase as qc
from semisimp.errors import DimCapExceeded, GenericOrder
from semisimp.exact_linalg.fields import CyclotomicField, RationalFunctionField

G = qc.GENERIC


def V(n, m, d):
    return qc.QObject(n, m, d)


def W(n, a_s: dict) -> qc.ThetaElem:
    return qc.ThetaElem(n, a_s)


# -- objects


def test_object_normalisation():
    assert V(5, 7, 2) == V(5, 2, 2)
    assert V(5, 0, 5).negligible and not V(5, 0, 4).negligible
    with pytest.raises(ValueError):
        V(4, 0, 1)
    assert V(5, 1, 3).dual() == V(5, 1, 3)
    assert V(5, 0, 2).dual() == V(5, 1, 2)


# -- gl2_fusion


def test_gl2_fusion_examples():
    assert sorted(qc.gl2_fusion((1, 0), (1, 0))) == [(1, 1), (2, 0)]
    assert qc.gl2_fusion((2, 2), (3, 1)) == [(5, 3)]
    assert sorted(qc.gl2_fusion((3, 0), (1, 0))) == [(3, 1), (4, 0)]


@given(st.integers(-3, 3), st.integers(0, 4), st.integers(-3, 3), st.integers(0, 4))
def test_gl2_fusion_dimension(m2, a, n2, b):
    out = qc.gl2_fusion((m2 + a, m2), (n2 + b, n2))
    assert sum(x - y + 1 for x, y in out) == (a + 1) * (b + 1)


# -- qdim and nu


def test_qdim_examples():
    K = CyclotomicField(5)
    z = K.zeta()
    assert qc.qdim(V(5, 0, 1), z) == K.one
    assert qc.qdim(V(5, 3, 5), z) == K.zero
    R = RationalFunctionField()
    t = R([0, 1])
    assert qc.qdim(V(G, 1, 2), t) == R(1) + t


def test_nu_examples():
    assert qc.nu(V(5, 3, 1)) == 6
    assert qc.nu(V(5, 0, 1)) == 0
    assert qc.nu(V(5, 4, 4)) == 5
    with pytest.raises(GenericOrder):
        qc.nu(V(G, 0, 1))


# -- theta


def test_theta_examples():
    n = 7
    assert qc.theta(V(n, 3, 1), reduced=False) == W(n, {3: {0: 1}})
    for m in range(0, 3):
        want = W(n, {a: {0: 1} for a in range(-m, m + 1)})
        assert qc.theta(V(n, m, 2 * m + 1), reduced=False) == want


@pytest.mark.parametrize("n", [3, 5])
@pytest.mark.parametrize("r", [1, 2])
def test_theta_golden_values(n, r):
    # V(0, 2rn+1) -> W_{2r} - W_{2r-1}; V(-1, 2rn-1) -> W_{2r-2} - W_{2r-1}
    x = V(n, 0, 2 * r * n + 1)
    golden = qc.ThetaElem(n, {0: {2 * r: 1, 2 * r - 1: -1}}, True)
    assert qc.theta(x) == golden
    assert qc.theta_oracle(x, mode="modular").reduce() == golden
    y = V(n, -1, 2 * r * n - 1)
    golden = qc.ThetaElem(n, {0: {2 * r - 2: 1, 2 * r - 1: -1}}, True)
    assert qc.theta(y) == golden
    assert qc.theta_oracle(y, mode="modular").reduce() == golden


@pytest.mark.parametrize("n", [3, 5])
def test_theta_formula_matches_oracle(n):
    for m in range(n):
        for d in range(1, 2 * n + 2):
            x = V(n, m, d)
            assert qc.theta(x, reduced=False) == qc.theta_oracle(x, mode="modular")


def test_theta_oracle_exact_mode():
    x = V(3, 0, 7)
    assert qc.theta_oracle(x, mode="exact") == qc.theta(x, reduced=False)


def test_theta_reduction_is_ring_map():
    n = 5
    xs = [V(n, 1, 2), V(n, 2, 3), V(n, 0, 6), V(n, 4, 9)]
    for a in xs:
        for b in xs:
            ta, tb = qc.theta(a, reduced=False), qc.theta(b, reduced=False)
            assert (ta * tb).reduce() == ta.reduce() * tb.reduce()
            assert ta.reduce().reduce() == ta.reduce()


def test_negligible_theta_vanishes():
    for n in (3, 5):
        for m in range(n):
            for k in (1, 2):
                assert qc.theta(V(n, m, k * n)).is_zero()


# -- oracle


def test_oracle_invertible_shift():
    n = 5
    for r, d in [(0, 3), (2, 4), (1, 6)]:
        res = qc.oracle_tensor(V(n, 2, 1), V(n, r, d))
        assert res.summands == Counter({V(n, r + 2, d): 1}) and not res.negligible


def test_oracle_order_two():
    n = 5
    x = V(n, n - 1, n - 1)
    res = qc.oracle_tensor(x, x)
    assert res.summands == Counter({V(n, 0, 1): 1})
    assert res.negligible_dim == (n - 1) ** 2 - 1


def test_oracle_generic_matches_gl2():
    res = qc.oracle_tensor(V(G, 1, 2), V(G, 1, 2), mode="exact")
    want = Counter(qc.QObject.from_gl(a, b) for a, b in qc.gl2_fusion((1, 0), (1, 0)))
    assert res.summands == want


def test_oracle_dim_cap():
    with pytest.raises(DimCapExceeded):
        qc.oracle_tensor(V(5, 0, 13), V(5, 0, 12))


@pytest.mark.parametrize("n", [3, 5])
def test_oracle_routes_agree(n):
    for a, b in [((0, 2), (1, 3)), ((2, 4), (1, 4)), ((0, n + 1), (0, 2)), ((1, n - 1), (n - 1, n - 1))]:
        x, y = V(n, *a), V(n, *b)
        res = qc.oracle_tensor(x, y)
        assert qc.oracle_tensor_decomp(x, y) == res.all_summands()


@pytest.mark.parametrize("n", [3, 5])
def test_oracle_invariants(n):
    K = CyclotomicField(n)
    objs = [V(n, m, d) for m in range(n) for d in range(1, n + 3) if d % n]
    for x in objs[::3]:
        for y in objs[::4]:
            if x.d * y.d > 60:
                continue
            res = qc.oracle_tensor(x, y)
            assert sum(o.d * k for o, k in res.all_summands().items()) == x.d * y.d
            for z in res.summands:
                assert qc.nu(z) == (qc.nu(x) + qc.nu(y)) % (2 * n)
            acc = K.zero
            for z, k in res.all_summands().items():
                acc = acc + qc.qdim_exact(z) * k
            assert qc.qdim_exact(x) * qc.qdim_exact(y) == acc
            lhs = qc.theta(x) * qc.theta(y)
            rhs = qc.ThetaElem(n, {}, True)
            for z, k in res.summands.items():
                rhs = rhs + qc.theta(z).scale(k)
            assert lhs == rhs


def test_exact_and_modular_agree():
    for x, y in [(V(3, 0, 2), V(3, 1, 4)), (V(5, 1, 3), V(5, 2, 6))]:
        assert qc.oracle_tensor(x, y, mode="exact").summands == qc.oracle_tensor(x, y).summands


# -- ring extraction


def test_theta_injective_on_nu_zero():
    rep = _shared.qcase_report(3)
    objs = [x for x in rep.run.simples if qc.nu(x) == 0]
    assert qc.theta_injective(objs)


def test_theta_table_rows():
    rows = qc.theta_table([V(3, 0, 7)])
    assert rows[0]["reduced"] == "-chi^0*W1 + chi^0*W2"
    assert rows[0]["nu"] == 0 and rows[0]["object"] == "V(0,7)"


def test_extract_ring_rejects_even():
    with pytest.raises(ValueError):
        qc.extract_ring(4)
