import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import GF, QQ, algebra
from gradedhom.algebra import (NotGeneratedInDegreeOne, PresentationError, QuiverPresentation, WindowError,
                               build_algebra, exterior, exterior_dim, ground_field, path_algebra, polynomial,
                               polynomial_dim, preprojective, tensor_algebra, trivial_extension,
                               trivial_extension_presentation)
from gradedhom.fixtures import CORPUS, KRONECKER

SMALL_CORPUS = [n for n in CORPUS if "(x)" not in n]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_polynomial_and_exterior_dims_match_binomials(n, field):
    p = polynomial(n, field, 6)
    e = exterior(n, field, 6)
    assert p.dims() == tuple(polynomial_dim(n, d) for d in range(7))
    assert e.dims() == tuple(exterior_dim(n, d) for d in range(7))
    assert e.finite and e.top_degree == n
    assert not p.finite and p.top_degree is None


def test_known_dimensions_of_small_quiver_algebras():
    # Literature values: the preprojective algebra of A2 has total dimension 4,
    # the trivial extension doubles the path algebra, and the Kronecker
    # preprojective algebra is Morita-equivalent to k[x,y] # Z/2 (dims 2(d+1)).
    assert algebra("preprojective_A2").dims()[:3] == (2, 2, 0)
    assert algebra("trivext_A2").dims()[:3] == (2, 2, 2)
    assert algebra("trivext_kronecker").dims()[:4] == (2, 4, 2, 0)
    assert algebra("preprojective_kronecker", GF, 6).dims() == tuple(2 * (d + 1) for d in range(7))
    assert algebra("path_A2").dims()[:3] == (2, 1, 0)


@pytest.mark.parametrize("left,right", [("exterior2", "polynomial2"), ("trivext_A2", "polynomial1"),
                                        ("exterior1", "exterior2")])
def test_tensor_dims_are_the_convolution(left, right):
    a, b = algebra(left, GF, 6), algebra(right, GF, 6)
    t = tensor_algebra(a, b)
    want = [sum(a.dim(p) * b.dim(d - p) for p in range(d + 1)) for d in range(7)]
    assert list(t.dims()) == want
    assert t.vertex_count == a.vertex_count * b.vertex_count
    assert t.check_associativity()


@pytest.mark.parametrize("name", SMALL_CORPUS)
def test_corpus_algebras_are_associative_over_both_fields(name):
    assert algebra(name, QQ, 5).check_associativity()
    assert algebra(name, GF, 5).check_associativity()
    assert algebra(name, QQ, 5).dims() == algebra(name, GF, 5).dims()


@pytest.mark.parametrize("name", ["polynomial2", "trivext_kronecker", "exterior1(x)polynomial1"])
def test_opposite_is_an_involution(name):
    a = algebra(name, GF, 5)
    op = a.opposite()
    assert op.opposite() is a
    assert op.dims() == a.dims()
    assert op.check_associativity()
    for da in range(3):
        for db in range(3):
            # x *_op y = y * x
            assert np.array_equal(op.mult(da, db), a.mult(db, da).transpose(1, 0, 2))


def test_path_algebra_a2_is_not_symmetric_under_opposite():
    a = algebra("path_A2", GF, 4)
    # the single arrow goes 1 -> 2 in the algebra and 2 -> 1 in the opposite
    assert a.tags(1).tolist() == [[0, 1]]
    assert a.opposite().tags(1).tolist() == [[1, 0]]


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.data())
def test_random_triple_products_associate(da, db, dc, data):
    a = algebra("exterior2(x)polynomial2", GF, 9)
    f = a.field

    def vec(d):
        return np.array(data.draw(st.lists(st.integers(0, 100), min_size=a.dim(d), max_size=a.dim(d))),
                        dtype=np.int64)

    x, y, z = vec(da), vec(db), vec(dc)
    left = a.product(da + db, a.product(da, x, db, y), dc, z)
    right = a.product(da, x, db + dc, a.product(db, y, dc, z))
    assert np.array_equal(f.reduce(left), f.reduce(right))


def test_window_errors_beyond_dmax():
    p = polynomial(1, GF, 3)
    with pytest.raises(WindowError):
        p.dim(4)
    with pytest.raises(WindowError):
        p.mult(2, 2)
    e = exterior(2, GF, 3)
    assert e.dim(10) == 0
    assert e.mult(2, 2).shape == (1, 1, 0)


def test_presentation_errors():
    with pytest.raises(PresentationError):
        QuiverPresentation(1, [("x", 0, 0), ("x", 0, 0)], [], QQ)
    with pytest.raises(PresentationError):
        QuiverPresentation(1, [("x", 0, 1)], [], QQ)
    with pytest.raises(PresentationError):
        build_algebra(QuiverPresentation(1, [("x", 0, 0)], [[(1, ("x",))]], QQ), 3)
    with pytest.raises(PresentationError):
        build_algebra(QuiverPresentation(1, [("x", 0, 0)], [[(1, ("x", "x")), (1, ("x", "x", "x"))]], QQ), 3)
    with pytest.raises(PresentationError):
        trivial_extension_presentation(3, [("a", 0, 1), ("b", 1, 2)], QQ)
    with pytest.raises(PresentationError):
        preprojective(1, [("x", 0, 0)], QQ, 3)


def test_relation_is_imposed():
    # commutative square: a.b = c.d leaves one path of length two
    p = QuiverPresentation(4, [("a", 0, 1), ("b", 1, 3), ("c", 0, 2), ("d", 2, 3)],
                           [[(1, ("a", "b")), (-1, ("c", "d"))]], QQ)
    a = build_algebra(p, 4)
    assert a.dims()[:3] == (4, 4, 1)
    assert path_algebra(4, p.arrows, QQ, 4).dims()[:3] == (4, 4, 2)


def test_degree_one_generation_is_enforced():
    a = trivial_extension(2, [], GF, 4)
    assert a.dims()[:3] == (2, 0, 2)
    with pytest.raises(NotGeneratedInDegreeOne):
        a.factorization(2)
    assert polynomial(2, GF, 4).factorization(3).shape == (4, 2, 3)


def test_ground_field_is_a_tensor_unit():
    k = ground_field(GF, 5)
    a = algebra("trivext_A2", GF, 5)
    assert tensor_algebra(k, a).dims() == a.dims()
    assert tensor_algebra(a, k).dims() == a.dims()


def test_kronecker_trivial_extension_is_graded_selfinjective_shape():
    a = trivial_extension(2, KRONECKER, GF, 4)
    # each indecomposable projective has a one-dimensional top-degree socle
    top = a.tags(2)
    assert sorted(map(tuple, top.tolist())) == [(0, 0), (1, 1)]
