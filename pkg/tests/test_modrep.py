import numpy as np
import pytest
from hypothesis import given, strategies as st

import _shared
from semisimp import groups as gp
from semisimp import modrep as mr
from semisimp.decomp import decompose, is_isomorphic
from semisimp.errors import InvalidModule, ModuleMismatch, NotAPGroup
from semisimp.exact_linalg.fields import GF

F3, F5, F2 = GF(3), GF(5), GF(2)
Z3, Z5, S3, S5, V4 = gp.cyclic(3), gp.cyclic(5), gp.symmetric(3), gp.symmetric(5), gp.klein_four()


def test_invalid_module_rejected():
    with pytest.raises(InvalidModule):
        mr.GModule(Z3, F3, [F3.asarray([[0, 1], [1, 0]])])  # order 2 on a group of order 3


def test_tensor_examples():
    J2 = mr.jordan_module(Z3, F3, 2)
    assert mr.tensor(J2, J2).dim == 4
    k = mr.trivial_module(S3, F3)
    P = mr.perm_module(S3, F3)
    assert is_isomorphic(mr.tensor(k, P), P)
    assert mr.tensor(mr.perm_module(S3, F5), mr.sign_module(S3, F5)).dim == 3


def test_tensor_mismatch():
    with pytest.raises(ModuleMismatch):
        mr.tensor(mr.trivial_module(Z3, F3), mr.trivial_module(Z5, F5))


def test_dual_examples():
    P = mr.perm_module(S3, F3)
    assert is_isomorphic(mr.dual(P), P)
    k = mr.trivial_module(S3, F3)
    assert all(np.array_equal(a, b) for a, b in zip(mr.dual(k).action, k.action))
    J2 = mr.jordan_module(Z3, F3, 2)
    assert is_isomorphic(mr.dual(J2), J2)


def test_hom_space_examples():
    assert len(mr.hom_space(mr.trivial_module(S3, F3), mr.perm_module(S3, F3))) == 1
    R = mr.regular_module(Z5, F5)
    assert len(mr.hom_space(R, R)) == 5
    assert len(mr.hom_space(mr.trivial_module(S3, F5), mr.sign_module(S3, F5))) == 0


def test_hom_space_intertwines():
    P = mr.perm_module(S3, F3)
    Q = mr.perm_quotient(S3, F3)
    for f in mr.hom_space(P, Q):
        assert f.check()


def test_negligible_morphism_examples():
    R = mr.regular_module(Z5, F5)
    assert mr.negligible_morphism(mr.ModMorphism(R, R, F5.eye(5)))
    k = mr.trivial_module(Z5, F5)
    assert not mr.negligible_morphism(mr.ModMorphism(k, k, F5.eye(1)))
    J3 = mr.jordan_module(Z5, F5, 3)
    assert mr.negligible_morphism(mr.ModMorphism(J3, J3, F5.zeros((3, 3))))


def test_negligible_object_examples():
    assert mr.negligible_object(mr.regular_module(Z5, F5))
    assert not mr.negligible_object(mr.trivial_module(Z5, F5))
    J = mr.direct_sum(mr.jordan_module(Z5, F5, 2), mr.jordan_module(Z5, F5, 5))
    assert not mr.negligible_object(J)


def test_restrict_induce_examples():
    P5 = gp.sylow(S5, 5)
    res = mr.restrict(mr.perm_module(S5, F5), P5)
    assert res.dim == 5 and res.group.order == 5
    k = mr.trivial_module(P5.group, F5)
    ind = mr.induce(k, S5, P5)
    assert ind.dim == 24
    assert mr.restrict(ind, P5).dim == 24


def test_heller_examples():
    Z2 = gp.cyclic(2)
    assert mr.heller_shift(mr.trivial_module(Z2, F2)).dim == 1
    k = mr.trivial_module(V4, F2)
    assert mr.heller_shift(k).dim == 3
    assert mr.heller_module(V4, F2, 2).dim == 5
    with pytest.raises(NotAPGroup):
        mr.heller_shift(mr.trivial_module(S3, F3))


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2, 3])
def test_heller_inverse(n):
    a = mr.heller_module(V4, F2, n)
    back = mr.strip_projectives(mr.heller_shift(mr.inverse_heller_shift(a)))
    assert is_isomorphic(back, a)
    back = mr.strip_projectives(mr.inverse_heller_shift(mr.heller_shift(a)))
    assert is_isomorphic(back, a)


def test_heller_dims():
    for n in range(-3, 4):
        assert mr.heller_module(V4, F2, n).dim == 2 * abs(n) + 1


def test_higman_examples():
    assert mr.higman_projective(mr.regular_module(Z5, F5), Z5.trivial())
    assert not mr.higman_projective(mr.trivial_module(Z5, F5), Z5.trivial())


def test_higman_sylow_and_whole():
    rng = np.random.default_rng(0)
    P = gp.sylow(S5, 5)
    specs = ["trivial", "sign", "perm", "perm_quotient", "perm_heart"]
    mods = [mr.module_from_spec(S5, F5, s) for s in specs]
    mods += [mr.tensor(a, b) for a in mods[3:] for b in mods[1:4]]
    for _ in range(20 - len(mods)):
        i, j = rng.integers(0, 5, 2)
        mods.append(mr.direct_sum(mods[int(i)], mods[int(j)]))
    assert len(mods) == 20
    for m in mods:
        assert mr.higman_projective(m, P)
        assert mr.higman_projective(m, S5.whole())


def test_double_dual_exact():
    for m in [mr.perm_quotient(S5, F5), mr.jordan_module(Z5, F5, 3), mr.heller_module(V4, F2, 2)]:
        dd = mr.dual(mr.dual(m))
        assert all(np.array_equal(a, b) for a, b in zip(dd.action, m.action))


@given(st.integers(1, 5), st.integers(1, 5))
def test_dual_of_tensor(a, b):
    A, B = mr.jordan_module(Z5, F5, a), mr.jordan_module(Z5, F5, b)
    lhs = mr.dual(mr.tensor(A, B))
    rhs = mr.tensor(mr.dual(B), mr.dual(A))
    assert decompose(lhs).dims() == decompose(rhs).dims()
    assert is_isomorphic(decompose(lhs).parts[0].module, decompose(rhs).parts[0].module)


def test_dual_of_tensor_nonabelian():
    A, B = mr.perm_quotient(S3, F3), mr.sign_module(S3, F3)
    assert is_isomorphic(mr.dual(mr.tensor(A, B)), mr.tensor(mr.dual(B), mr.dual(A)))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_trace_criterion_matches_components(p):
    agree, negl, total = _shared.lemma_agreement(p, count=30, seed=11)
    assert agree == total


def test_tensor_ideal():
    rng = np.random.default_rng(5)
    pool = _shared.indecomposable_pool(5)
    found = 0
    while found < 50:
        f, blocks = _shared.random_morphism(5, rng)
        if not mr.negligible_morphism(f):
            continue
        found += 1
        a = pool[int(rng.integers(0, 3))]
        F = a.field
        I = F.eye(a.dim)
        left = mr.ModMorphism(mr.tensor(a, f.source), mr.tensor(a, f.target), mr.kron(F, I, f.matrix))
        right = mr.ModMorphism(mr.tensor(f.source, a), mr.tensor(f.target, a), mr.kron(F, f.matrix, I))
        assert left.check() and right.check()
        assert mr.negligible_morphism(left) and mr.negligible_morphism(right)


def test_module_json_roundtrip():
    m = mr.perm_quotient(S5, F5)
    back = mr.module_from_json(mr.module_to_json(m), group=S5)
    assert all(np.array_equal(a, b) for a, b in zip(back.action, m.action))
    F4 = GF(2, 2)
    m = mr.heller_module(V4, F2, 1).extend_field(F4)
    back = mr.module_from_json(mr.module_to_json(m), group=V4)
    assert back.field == F4 and all(np.array_equal(a, b) for a, b in zip(back.action, m.action))


def test_young_induced_dims():
    G = gp.symmetric(5)
    m = mr.young_induced(G, F3, 3)
    assert m.dim == 10 * 2
