import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import GF, QQ, algebra
from gradedhom.algebra import WindowError
from gradedhom.free import FreeModule
from gradedhom.module import (algebra_mod_truncation, direct_sum, dual, hom_dim, hom_space, projective,
                              random_module, regular, shift, simple, top, truncate_above, truncate_below)


def _same(m, n):
    if (m.lo, m.hi, m.bounded_below, m.bounded_above) != (n.lo, n.hi, n.bounded_below, n.bounded_above):
        return False
    if any(not np.array_equal(m.tags(d), n.tags(d)) for d in range(m.lo, m.hi + 1)):
        return False
    return all(np.array_equal(m.act1(d), n.act1(d)) for d in range(m.lo, m.hi))


@pytest.mark.parametrize("name", ["polynomial2", "trivext_kronecker", "preprojective_A2",
                                  "exterior1(x)polynomial1"])
def test_regular_module_has_the_algebra_dims(name, field):
    a = algebra(name, field, 5)
    r = regular(a)
    assert r.dims() == a.dims()
    assert r.validate() == []
    assert regular(a, "right").dims() == a.dims()


def test_projective_counts_paths_from_its_vertex():
    a = algebra("path_A2", GF, 4)
    assert projective(a, 1).hilbert()[0] == [1, 0]
    assert projective(a, 1).hilbert()[1] == [0, 1]
    assert projective(a, 2).total_dim() == 1
    # on the right the arrow is read backwards
    assert projective(a, 2, "right").total_dim() == 2


def test_free_module_window_matches_projective():
    a = algebra("trivext_A2(x)polynomial1", GF, 5)
    for v in range(a.vertex_count):
        fm = FreeModule(a, [(v, 0)])
        assert _same(fm.as_module(0, a.dmax), _with_bounds(projective(a, v + 1), False))


def _with_bounds(m, above):
    m.bounded_above = above
    return m


@pytest.mark.parametrize("name", ["exterior2", "trivext_A2", "polynomial1"])
def test_dual_is_an_involution(name):
    a = algebra(name, QQ, 4)
    rng = np.random.default_rng(3)
    for _ in range(5):
        m = random_module(a, rng)
        dd = dual(dual(m))
        assert dd.algebra is a and dd.side == m.side
        assert _same(dd, m)
        assert dual(m).validate() == []


def test_shift_and_truncations():
    a = algebra("polynomial2", GF, 6)
    p = projective(a, 1)
    s = shift(p, -2)
    assert s.lo == 2 and s.dim(2) == 1 and s.dim(4) == 3
    assert shift(s, 2).dims() == p.dims()
    t = truncate_below(p, 2)
    assert t.lo == 2 and t.dim(2) == 3 and t.validate() == []
    q = truncate_above(p, 2)
    assert q.is_finite_length() and q.dims() == (1, 2, 3)
    assert algebra_mod_truncation(a, 3).dims() == (1, 2, 3)
    with pytest.raises(WindowError):
        truncate_above(p, 7)
    with pytest.raises(ValueError):
        algebra_mod_truncation(a, 0)


def test_unknown_degrees_raise():
    p = projective(algebra("polynomial1", GF, 3), 1)
    assert p.dim(-1) == 0
    with pytest.raises(WindowError):
        p.dim(4)


def test_vertex_range_is_checked():
    a = algebra("trivext_A2", GF, 4)
    with pytest.raises(ValueError):
        simple(a, 3)
    with pytest.raises(ValueError):
        projective(a, 0)


@pytest.mark.parametrize("name", ["exterior2", "trivext_A2", "trivext_kronecker"])
def test_yoneda_hom_from_projective(name):
    # Hom(A e_i, M)_k is the vertex-i part of M_k
    a = algebra(name, GF, 4)
    rng = np.random.default_rng(11)
    for _ in range(4):
        m = random_module(a, rng, max_total=8)
        for i in range(1, a.vertex_count + 1):
            p = projective(a, i)
            for k in range(m.lo - a.top_degree, m.hi + 1):
                want = int(np.sum(m.tags(k) == i - 1))
                assert hom_dim(p, m, k) == want


def test_homs_between_simples_and_homomorphism_check():
    a = algebra("trivext_kronecker", QQ, 4)
    for i in (1, 2):
        for j in (1, 2):
            assert hom_dim(simple(a, i), simple(a, j), 0) == (i == j)
    p = projective(a, 1)
    maps = hom_space(simple(a, 1), p, 2)   # the socle of P1 is S1 in degree 2
    assert len(maps) == 1 and maps[0].is_homomorphism()


def test_top_of_projective_is_simple():
    a = algebra("trivext_kronecker", GF, 4)
    t = top(projective(a, 2))
    assert t.total_dim() == 1 and t.hilbert()[0] == [0, 1]


def test_direct_sum_checks_compatibility():
    a = algebra("exterior2", GF, 4)
    b = algebra("exterior1", GF, 4)
    with pytest.raises(ValueError):
        direct_sum([simple(a, 1), simple(b, 1)])
    with pytest.raises(ValueError):
        direct_sum([])
    s = direct_sum([simple(a, 1), shift(simple(a, 1), -1)])
    assert s.dims() == (1, 1)


@given(st.integers(0, 10_000), st.sampled_from(["exterior2", "trivext_A2", "polynomial2",
                                                 "exterior1(x)polynomial1"]))
def test_random_modules_are_valid(seed, name):
    a = algebra(name, GF, 5)
    m = random_module(a, np.random.default_rng(seed), max_total=12)
    assert 1 <= m.total_dim() <= 12
    assert m.is_finite_length()
    assert m.validate() == []


def test_random_generated_modules_are_unbounded_above():
    a = algebra("polynomial2", GF, 5)
    m = random_module(a, np.random.default_rng(5), finite=False)
    assert not m.bounded_above and m.validate() == []
