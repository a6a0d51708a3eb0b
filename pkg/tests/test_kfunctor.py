from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import alg
from koszul.complexes import (ChainMap, ProjectiveComplex, chain_map_space, homotopy_classes_dim,
                              random_module_complex, stalk)
from koszul.kfunctor import (big_k, dual_algebra, k_inverse, k_module, k_morphism, shift_sign, quadratic_functor,
                             shift_compat_iso)
from koszul.modules import hom_graded, injective, random_module, simple
from koszul.resolution import minimal_projective_resolution
from koszul.verify import perturbed_sign

DUAL_SIDE = ["EXT1", "EXT2", "KA3", "RSZ_A3", "REM21", "BEIL_1"]


def restrict(C, positions):
    keep = set(positions)
    return ProjectiveComplex(C.algebra, {p: g for p, g in C.terms.items() if p in keep},
                             {p: d for p, d in C.diffs.items() if p in keep and p + 1 in keep})


def isomorphic(X, Y, rng):
    """A random chain map ``X -> Y`` is invertible (generic witness of an isomorphism)."""
    if X.terms != Y.terms:
        return False
    basis = chain_map_space(X, Y)
    if not basis:
        return X.is_zero()
    F = X.algebra.field
    for _ in range(3):
        f = basis[0].scale(F.random(rng))
        for b in basis[1:]:
            f = f + b.scale(F.random(rng))
        if f.is_isomorphism():
            return True
    return False


def test_simple_goes_to_a_stalk():
    A = alg("EXT2")
    B = dual_algebra(A)
    for r in (-1, 0, 2):
        C = k_module(simple(B, "v", r), A).complex
        assert C.describe() == f"{-r}: P_v<{-r}>"
        assert C.is_linear()


@pytest.mark.parametrize("n", [-2, -1, 0, 1, 2])
@pytest.mark.parametrize("x", ["1", "2", "3"])
def test_injectives_go_to_shifted_resolutions(x, n):
    A = alg("KA3")
    B = dual_algebra(A)
    K = k_module(injective(B, x, n), A).complex
    R = minimal_projective_resolution(simple(A, x, -n), 6).complex.shift(n)
    assert isomorphic(K, R, random.Random(1))


@pytest.mark.parametrize("n", [-2, 0, 2])
def test_truncated_injective_gives_the_resolution_head(n):
    A = alg("EXT1")
    B = dual_algebra(A)
    ko = k_module(injective(B, "v", n, horizon=4), A)
    K = ko.complex
    R = minimal_projective_resolution(simple(A, "v", -n), 8).complex.shift(n)
    assert ko.boundary == min(K.positions())
    assert isomorphic(K, restrict(R, K.positions()), random.Random(2))


@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(DUAL_SIDE))
def test_k_image_is_a_linear_complex(seed, name):
    A = alg(name)
    B = dual_algebra(A)
    M = random_module(B, random.Random(seed), depth=2)
    C = k_module(M, A).complex
    assert C.square_violation() is None
    assert C.is_linear() and C.is_minimal()
    assert k_inverse(C, B) == M


@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(["EXT1", "KA3", "RSZ_A3", "EXT2"]))
@settings(max_examples=25)
def test_k_is_fully_faithful(seed, name):
    A = alg(name)
    B = dual_algebra(A)
    rng = random.Random(seed)
    M, N = random_module(B, rng, depth=2), random_module(B, rng, depth=2)
    KM, KN = k_module(M, A), k_module(N, A)
    assert len(chain_map_space(KM.complex, KN.complex)) == len(hom_graded(M, N))
    assert homotopy_classes_dim(KM.complex, KN.complex) == len(hom_graded(M, N))
    for f in hom_graded(M, N)[:3]:
        Kf = k_morphism(f, KM, KN)
        assert isinstance(Kf, ChainMap) and not Kf.is_zero()


def test_k_inverse_rejects_nonlinear():
    A = alg("EXT1")
    C = ProjectiveComplex(A, {0: [("v", 1)]})
    with pytest.raises(ValueError):
        k_inverse(C)


@given(seed=st.integers(0, 10 ** 6), name=st.sampled_from(["EXT1", "KA3", "EXT2"]))
@settings(max_examples=20)
def test_functor_on_complexes(seed, name):
    A = alg(name)
    B = dual_algebra(A)
    rng = random.Random(seed)
    X = random_module_complex(B, rng, lambda r: random_module(B, r, depth=2))
    D = big_k(X, A)
    assert D.violation() is None
    FX = quadratic_functor(X, A)
    assert FX.square_violation() is None
    assert quadratic_functor(X.shift(1), A) == FX.shift(1)
    M = random_module(B, rng, depth=2)
    assert quadratic_functor(stalk(M), A) == k_module(M, A).complex


@given(seed=st.integers(0, 10 ** 6), i=st.integers(-2, 2))
@settings(max_examples=20)
def test_shift_compatibility(seed, i):
    A = alg("KA3")
    B = dual_algebra(A)
    rng = random.Random(seed)
    X = random_module_complex(B, rng, lambda r: random_module(B, r, depth=2), length=rng.choice([2, 3]))
    sc = shift_compat_iso(X, i, target=A)
    assert sc.is_chain_map and sc.is_isomorphism


def test_shift_compatibility_sign_matters():
    A = alg("EXT1")
    B = dual_algebra(A)
    M = injective(B, "v", 0, horizon=3)
    X = random_module_complex(B, random.Random(0), lambda r: M, length=2, start=0)
    assert shift_compat_iso(X, 1, sign=shift_sign(1), target=A).is_chain_map
    broken = [shift_compat_iso(X, 1, sign=perturbed_sign(1, drop), target=A).is_chain_map for drop in "pq"]
    assert broken == [False, False]
