import numpy as np
import pytest

from conftest import GF, QQ, algebra
from gradedhom.gorenstein import (NotVerified, check_as_gorenstein, dualizing_module, extract_sigma,
                                  verify_double_ext)
from gradedhom.module import algebra_mod_truncation, random_module, simple


@pytest.mark.parametrize("name,n", [("polynomial1", 1), ("polynomial2", 2), ("exterior1", 0), ("exterior2", 0),
                                    ("trivext_A2", 0), ("trivext_kronecker", 0), ("preprojective_A2", 0)])
def test_classical_gorenstein_algebras_are_verified(name, n):
    r = check_as_gorenstein(algebra(name), 6)
    assert r.verdict == "Verified" and r.n == n


@pytest.mark.parametrize("n", [1, 2])
def test_exterior_polynomial_tensor_is_verified(n):
    name = f"exterior{n}(x)polynomial{n}"
    r = check_as_gorenstein(algebra(name), 6)
    assert r.verdict == "Verified" and r.n == n
    # the exterior and polynomial shifts cancel
    assert r.shifts == [0]


def test_kronecker_example_is_verified_with_dimension_two():
    r = check_as_gorenstein(algebra("trivext_kronecker(x)preprojective_kronecker"), 6)
    assert r.verdict == "Verified" and r.n == 2
    sigma, _ = extract_sigma(r)
    assert sorted(sigma) == [0, 1, 2, 3]


def test_shift_conventions():
    assert check_as_gorenstein(algebra("polynomial2")).shifts == [-2]
    assert check_as_gorenstein(algebra("exterior2")).shifts == [2]
    assert check_as_gorenstein(algebra("trivext_A2(x)polynomial1")).shifts == [1, 1]


def test_nakayama_permutations():
    # trivial extensions are symmetric; the A2 preprojective algebra flips the diagram
    sym = check_as_gorenstein(algebra("trivext_A2"))
    assert extract_sigma(sym)[0] == [0, 1]
    flip = check_as_gorenstein(algebra("preprojective_A2"))
    sigma, _ = extract_sigma(flip)
    assert sigma == [1, 0]
    assert [sigma[s] for s in sigma] == [0, 1]


def test_path_algebra_is_refuted():
    r = check_as_gorenstein(algebra("path_A2"), 6)
    assert r.verdict == "Refuted"
    assert r.witness == {"side": "left", "simple": 1, "s": 1}
    with pytest.raises(NotVerified):
        extract_sigma(r)
    with pytest.raises(NotVerified):
        verify_double_ext(r.algebra, simple(r.algebra, 1), r)


def test_insufficient_bounds_are_inconclusive():
    r = check_as_gorenstein(algebra("polynomial2"), 1)
    assert r.verdict == "Inconclusive"
    r = check_as_gorenstein(algebra("path_A2", GF, 1), 6)
    assert r.verdict == "Inconclusive"


def test_verdict_is_field_independent():
    for name in ("trivext_kronecker", "preprojective_A2", "polynomial1"):
        q = check_as_gorenstein(algebra(name, QQ, 6))
        p = check_as_gorenstein(algebra(name, GF, 6))
        assert (q.verdict, q.n, q.sigma, q.shifts) == (p.verdict, p.n, p.sigma, p.shifts)


def test_dualizing_module_of_the_exterior_algebra():
    a = algebra("exterior2")
    d = dualizing_module(a, check_as_gorenstein(a))
    nonzero = {k: v for k, v in d.as_left.hilbert().items() if any(v)}
    assert nonzero == {0: [1], 1: [2], 2: [1]}
    assert d.hilbert_check.verdict == "match"


def test_dualizing_module_sides_agree_for_a_two_vertex_algebra():
    a = algebra("preprojective_A2")
    d = dualizing_module(a, check_as_gorenstein(a))
    assert d.hilbert_check.verdict == "match"
    assert d.as_left.total_dim() == a.dims()[0] + a.dims()[1]


def test_double_ext_of_a_truncated_polynomial_ring():
    a = algebra("polynomial1")
    r = check_as_gorenstein(a)
    out = verify_double_ext(a, algebra_mod_truncation(a, 2), r)
    assert out.ok and out.length == 2 and out.ext_length == 2


@pytest.mark.parametrize("name", ["exterior2", "trivext_kronecker", "polynomial2", "exterior1(x)polynomial1"])
def test_double_ext_recovers_random_modules(name):
    a = algebra(name)
    r = check_as_gorenstein(a)
    rng = np.random.default_rng(4)
    for _ in range(5):
        m = random_module(a, rng, 8)
        out = verify_double_ext(a, m, r)
        assert out.ok, out.to_json()


def test_double_ext_rejects_infinite_modules():
    a = algebra("polynomial1")
    r = check_as_gorenstein(a)
    with pytest.raises(ValueError):
        verify_double_ext(a, random_module(a, np.random.default_rng(0), finite=False), r)


def test_report_json_is_one_based():
    js = check_as_gorenstein(algebra("preprojective_A2")).to_json()
    assert js["sigma"] == [2, 1] and js["verdict"] == "Verified"
