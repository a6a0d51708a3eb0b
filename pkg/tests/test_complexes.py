from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from conftest import alg
from koszul.complexes import (ChainMap, DoubleComplex, ModuleComplex, NotAChainMap, NotAComplex, ProjMap,
                              ProjectiveComplex, cone, homotopy_classes_dim, null_homotopic_space,
                              random_module_complex, stalk_projective)
from koszul.kfunctor import dual_algebra, k_module
from koszul.modules import random_module
from koszul.verify import random_projective_complex

CORPUS_FD = ["EXT1", "EXT2", "RSZ_A3", "REM21", "KA3"]


def ext1_two_term():
    """``P<-1> --a--> P<0>`` at positions -1, 0 over k[a]/(a^2)."""
    A = alg("EXT1")
    src, tgt = [("v", -1)], [("v", 0)]
    d = ProjMap(A, src, tgt, {(0, 0): A.arrow_elem("a")})
    return A, ProjectiveComplex(A, {-1: src, 0: tgt}, {-1: d})


def euler(dims_by_pos):
    return sum((-1) ** (n % 2) * sum(d.values()) for n, d in dims_by_pos.items())


def test_shift_moves_positions_and_signs():
    A, X = ext1_two_term()
    a = A.arrow_elem("a")
    Y = X.shift(1)
    assert Y.positions() == [-2, -1]
    assert Y.d(-2).entries[(0, 0)] == -a
    Z = X.shift(2)
    assert Z.positions() == [-3, -2]
    assert Z.d(-3).entries[(0, 0)] == a
    assert X.shift(1).shift(-1) == X


def test_two_term_cohomology():
    A, X = ext1_two_term()
    M = X.materialize()
    H0 = M.cohomology(0)
    Hm1 = M.cohomology(-1)
    assert {k: v for k, v in H0.dims.items() if v} == {("v", 0): 1}
    assert {k: v for k, v in Hm1.dims.items() if v} == {("v", 2): 1}


def test_linearity():
    A, X = ext1_two_term()
    assert X.is_linear()
    assert X.is_minimal()
    assert not stalk_projective(A, [("v", 1)], 0).is_linear()
    assert stalk_projective(A, [("v", 2)], 2).is_linear()


def test_square_violation_is_rejected():
    A = alg("EXT1")
    g = [("v", 0)]
    one = ProjMap.identity(A, g)
    with pytest.raises(NotAComplex):
        ProjectiveComplex(A, {0: g, 1: g, 2: g}, {0: one, 1: one})


def test_chain_map_condition_is_checked():
    A, X = ext1_two_term()
    only_top = {0: ProjMap.identity(A, X.term(0))}
    with pytest.raises(NotAChainMap):
        ChainMap(X, X, only_top)
    ident = ChainMap(X, X, {n: ProjMap.identity(A, X.term(n)) for n in X.positions()})
    assert ident.is_isomorphism()


@pytest.mark.parametrize("name", ["EXT1", "KA3", "RSZ_A3"])
def test_cone_of_identity_is_contractible(name):
    A = alg(name)
    X = random_projective_complex(A, random.Random(7))
    ident = ChainMap(X, X, {n: ProjMap.identity(A, X.term(n)) for n in X.positions()})
    C = cone(ident)
    assert C.square_violation() is None
    M = C.materialize()
    assert all(M.is_exact_at(n) for n in M.positions())
    assert homotopy_classes_dim(C, C) == 0


def square_of_identities(A):
    g = [("v", 0)]
    one = ProjMap.identity(A, g)
    terms = {(p, q): g for p in (0, 1) for q in (0, 1)}
    return DoubleComplex(A, terms, d1={(0, 0): one, (0, 1): one}, d2={(0, 0): one, (1, 0): one})


def test_tot_sign_rule():
    A = alg("EXT1")
    D = square_of_identities(A)
    T = D.tot()
    assert T.positions() == [0, 1, 2]
    assert [len(T.term(n)) for n in T.positions()] == [1, 2, 1]
    assert T.square_violation() is None
    assert D.tot(sign=lambda p, q: 1).square_violation() is not None


def test_double_complex_checks_commutation():
    A = alg("EXT1")
    g = [("v", 0)]
    one = ProjMap.identity(A, g)
    terms = {(p, q): g for p in (0, 1) for q in (0, 1)}
    with pytest.raises(NotAComplex):
        DoubleComplex(A, terms, d1={(0, 0): one, (0, 1): one}, d2={(0, 0): one, (1, 0): -one})


def test_homotopy_classes_of_stalks():
    A = alg("EXT1")
    X = stalk_projective(A, [("v", 0)])
    assert homotopy_classes_dim(X, X) == 1
    assert homotopy_classes_dim(X, X.grade_shift(1)) == 1
    assert homotopy_classes_dim(X.grade_shift(1), X) == 0


@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(["EXT1", "KA3", "RSZ_A3"]))
def test_linear_complexes_have_no_null_homotopies(seed, name):
    A = alg(name)
    rng = random.Random(seed)
    B = dual_algebra(A)
    X = k_module(random_module(B, rng, depth=2), target=A).complex
    Y = k_module(random_module(B, rng, depth=2), target=A).complex
    assert X.is_linear() and Y.is_linear()
    assert null_homotopic_space(X, Y) == []


@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(CORPUS_FD))
def test_euler_characteristic_is_preserved(seed, name):
    A = alg(name)
    rng = random.Random(seed)
    X = random_module_complex(A, rng, lambda r: random_module(A, r))
    H = {n: X.cohomology(n).dims for n in X.positions()}
    T = {n: X.term(n).dims for n in X.positions()}
    assert euler(H) == euler(T)


@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(CORPUS_FD))
def test_truncations_keep_cohomology(seed, name):
    A = alg(name)
    rng = random.Random(seed)
    X = random_module_complex(A, rng, lambda r: random_module(A, r), length=3)
    for n in X.positions():
        lo, hi = X.truncate_le(n), X.truncate_ge(n)
        for k in X.positions():
            h = X.cohomology(k).total_dim
            assert lo.cohomology(k).total_dim == (h if k <= n else 0)
            assert hi.cohomology(k).total_dim == (h if k >= n else 0)


@given(seed=st.integers(0, 10 ** 6), m=st.integers(-3, 3))
def test_module_shift_moves_cohomology(seed, m):
    A = alg("KA3")
    X = random_module_complex(A, random.Random(seed), lambda r: random_module(A, r))
    Y = X.shift(m)
    for n in X.positions():
        assert Y.cohomology(n - m).dims == X.cohomology(n).dims


def test_module_complex_rejects_bad_square():
    A = alg("EXT1")
    from koszul.modules import simple
    S = simple(A, "v")
    one = S.identity()
    with pytest.raises(NotAComplex):
        ModuleComplex(A, {0: S, 1: S, 2: S}, {0: one, 1: one})
