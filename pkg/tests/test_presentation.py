from __future__ import annotations

import random
import warnings

import pytest
from hypothesis import given, strategies as st

from koszul import corpus
from koszul.dsl import (DSLError, MixedBlocksWarning, NotQuadratic, UnknownSymbol, format_presentation,
                        parse_homogeneous, parse_presentation)
from koszul.linalg import Field, Subspace
from koszul.quiver import (HomogeneousPresentation, Quiver, associated_quadratic,
                           is_quadratic_ideal, is_well_directed, quadratic_dual, random_presentation)

QQ, GF5 = Field(), Field(5)

INTERTWINED = """\
algebra R over Q
vertices x y
arrow alpha : x -> y
arrow beta : y -> y
arrow gamma : x -> x
relation beta*beta
relation gamma*gamma
relation beta*alpha - alpha*gamma
"""


def block(P, x, z, combos):
    paths = P.quiver.paths(2, x, z)
    return Subspace(P.field, len(paths), [[c.get(p, 0) for p in paths] for c in combos])


def test_parse_intertwined_loops():
    P = parse_presentation(INTERTWINED)
    assert P.relation_block("y", "y") == block(P, "y", "y", [{("beta", "beta"): 1}])
    assert P.relation_block("x", "x") == block(P, "x", "x", [{("gamma", "gamma"): 1}])
    assert P.relation_block("x", "y") == block(P, "x", "y", [{("beta", "alpha"): 1, ("alpha", "gamma"): -1}])
    assert P.relations == corpus.load("REM21").relations


def test_parse_single_loop_square():
    P = corpus.load("EXT1")
    assert P.num_relations == 1


def test_parse_exterior_two_generators():
    P = corpus.load("EXT2")
    sub = P.relation_block("v", "v")
    assert sub.dim == 3 and sub.ambient_dim == 4


def test_parse_errors_carry_position():
    with pytest.raises(UnknownSymbol) as e:
        parse_presentation("algebra A over Q\nvertices v\narrow a : v -> v\nrelation a*c\n")
    assert e.value.line == 4 and e.value.col == 12
    with pytest.raises(NotQuadratic) as e:
        parse_presentation("algebra A over Q\nvertices v\narrow a : v -> v\nrelation a*a*a\n")
    assert e.value.line == 4
    with pytest.raises(DSLError) as e:
        parse_presentation("algebra A over Q\nvertices v\narrow a : v -> v\nrelation a*a +\n")
    assert e.value.line == 4
    with pytest.raises(DSLError):
        parse_presentation("algebra A over GF 6\nvertices v\n")
    with pytest.raises(DSLError):
        parse_presentation("vertices v\n")
    with pytest.raises(DSLError):
        parse_presentation("algebra A over Q\nvertices 1 2\narrow a : 1 -> 2\narrow b : 1 -> 2\nrelation b*a\n")


def test_mixed_blocks_are_split_with_warning():
    text = "algebra A over Q\nvertices 1 2\narrow a : 1 -> 1\narrow b : 2 -> 2\nrelation a*a + b*b\n"
    with pytest.warns(MixedBlocksWarning):
        P = parse_presentation(text)
    assert P.relation_block("1", "1").dim == 1
    assert P.relation_block("2", "2").dim == 1


def test_format_round_trips_on_corpus():
    for name in corpus.CORPUS + corpus.EXTRA:
        P = corpus.load(name)
        assert parse_presentation(format_presentation(P)) == P


def test_coefficients_and_prime_fields():
    P = parse_presentation("algebra A over GF 5\nvertices v\narrow a : v -> v\narrow b : v -> v\n"
                           "relation 2*a*b - 3 b*a\n")
    v = P.relation_block("v", "v").vectors()[0]
    paths = P.quiver.paths(2, "v", "v")
    assert v[paths.index(("a", "b"))] == 1
    assert v[paths.index(("b", "a"))] == GF5.reduce(-3 * GF5.inv(2))


def test_dual_of_radical_square_zero_is_opposite_path_algebra():
    D = quadratic_dual(corpus.load("RSZ_A3"))
    assert D.num_relations == 0
    assert D.quiver == corpus.load("RSZ_A3").quiver.opposite()


def test_dual_of_exterior_is_symmetric():
    D = quadratic_dual(corpus.load("EXT2"))
    S = corpus.load("SYM2")
    assert D.relations == S.relations
    assert D.quiver == S.quiver


def test_double_dual_on_corpus():
    for name in corpus.CORPUS + corpus.EXTRA:
        P = corpus.load(name)
        assert quadratic_dual(quadratic_dual(P)) == P


def test_associated_quadratic():
    H = parse_homogeneous("algebra A over Q\nvertices v\narrow a : v -> v\narrow b : v -> v\nrelation a*a*b\n")
    assert isinstance(H, HomogeneousPresentation)
    assert associated_quadratic(H).num_relations == 0
    H = parse_homogeneous("algebra A over Q\nvertices v\narrow a : v -> v\narrow b : v -> v\n"
                          "relation a*a\nrelation a*a*b\n")
    Q = associated_quadratic(H)
    assert Q.relation_block("v", "v") == block(Q, "v", "v", [{("a", "a"): 1}])
    assert associated_quadratic(corpus.load("EXT2")) == corpus.load("EXT2")


def test_quadratic_ideal_membership():
    H = parse_homogeneous("algebra A over Q\nvertices v\narrow a : v -> v\narrow b : v -> v\n"
                          "relation a*a\nrelation a*a*b\n")
    assert is_quadratic_ideal(H)[0]
    H = parse_homogeneous("algebra A over Q\nvertices v\narrow a : v -> v\nrelation a*a*a\n")
    ok, witness = is_quadratic_ideal(H)
    assert not ok and witness[0] == 3


def test_well_directed():
    A3 = Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "2", "3")])
    assert is_well_directed(A3) == (True, ["1", "2", "3"])
    assert is_well_directed(Quiver(["v"], [("a", "v", "v")]))[0] is False
    kron = Quiver(["0", "1"], [("a", "0", "1"), ("b", "0", "1")])
    assert is_well_directed(kron)[0] is True
    assert is_well_directed(Quiver(["1", "2", "3"], [("a", "1", "2"), ("b", "3", "2")]))[0] is False


@st.composite
def presentations(draw):
    F = draw(st.sampled_from([QQ, GF5]))
    seed = draw(st.integers(0, 10 ** 6))
    return random_presentation(random.Random(seed), F)


@given(presentations())
def test_dual_complements_relation_dimensions(P):
    D = quadratic_dual(P)
    assert D.quiver == P.quiver.opposite()
    for x in P.quiver.vertices:
        for z in P.quiver.vertices:
            amb = len(P.quiver.paths(2, x, z))
            assert P.relation_block(x, z).dim + D.relation_block(z, x).dim == amb


@given(presentations())
def test_double_dual_is_identity(P):
    assert quadratic_dual(quadratic_dual(P)) == P


@given(presentations())
def test_format_round_trip_random(P):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        assert parse_presentation(format_presentation(P)) == P
