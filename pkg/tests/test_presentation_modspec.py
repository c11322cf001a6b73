from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from conftest import GF, QQ, algebra
from gradedhom.algebra import QuiverPresentation
from gradedhom.modspec import SpecError, parse_module
from gradedhom.presentation import ParseError, emit, load_algebra, parse_file, parse_text

ALGEBRAS = Path(__file__).resolve().parent.parent / "algebras"

KRONECKER_TEXT = """\
# two arrows
name kronecker
field 101
vertices 2
arrows
  a: 1 -> 2
  b: 1 -> 2
"""


def test_parse_quiver_section_file():
    p = parse_text(KRONECKER_TEXT)
    assert p.name == "kronecker" and p.field == GF
    assert p.arrows == [("a", 0, 1), ("b", 0, 1)]
    assert load_algebra(p, 4).dims()[:3] == (2, 2, 0)


def test_relations_with_fractions_and_field_override():
    text = "vertices 1\narrows\n  x: 1 -> 1\n  y: 1 -> 1\nrelations\n  x.y - 1/2 y.x\n"
    p = parse_text(text)
    assert p.field == QQ
    assert p.relations == [[(1, ("x", "y")), (Fraction(-1, 2), ("y", "x"))]]
    assert parse_text(text, GF).field == GF
    assert load_algebra(p, 3).dims() == (1, 2, 3, 4)


@pytest.mark.parametrize("text,line", [
    ("vertices 2\narrows\n  a: 1 -> 3\n", 3),
    ("vertices 2\narrows\n  a: 1 -> 2\nrelations\n  a.a\n", 5),
    ("vertices 1\narrows\n  x: 1 -> 1\nrelations\n  x.x - x.x.x\n", 5),
    ("vertices 1\narrows\n  x: 1 -> 1\nrelations\n  x.z\n", 5),
    ("vertices two\n", 1),
    ("field 101\nfield 7\n", 2),
    ("hello\n", 1),
    ("builtin bogus(1)\n", 1),
    ("builtin exterior(2)\nvertices 1\n", 1),
    ("builtin trivext(2)\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as info:
        parse_text(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_missing_vertices_and_unreadable_files():
    with pytest.raises(ParseError):
        parse_text("field 101\n")
    with pytest.raises(ParseError, match="cannot read"):
        parse_file(ALGEBRAS / "does_not_exist.alg")


@pytest.mark.parametrize("path", sorted(ALGEBRAS.glob("*.alg")), ids=lambda p: p.stem)
def test_shipped_algebra_files_load(path):
    p = parse_file(path)
    a = load_algebra(p, 4)
    assert a.check_associativity()


def test_builtin_files_match_the_fixture_corpus():
    assert load_algebra(parse_file(ALGEBRAS / "ext2_poly2.alg"), 6).dims() == \
        algebra("exterior2(x)polynomial2", GF, 6).dims()
    example = load_algebra(parse_file(ALGEBRAS / "example2.alg"), 5)
    assert example.dims() == algebra("trivext_kronecker(x)preprojective_kronecker", GF, 5).dims()
    assert example.tensor_info is not None


_names = st.sampled_from(["a", "b", "c", "x1", "y_2"])


@st.composite
def presentations(draw):
    vc = draw(st.integers(1, 3))
    names = draw(st.lists(_names, min_size=1, max_size=4, unique=True))
    arrows = [(nm, draw(st.integers(0, vc - 1)), draw(st.integers(0, vc - 1))) for nm in names]
    rels = []
    for _ in range(draw(st.integers(0, 2))):
        coef = draw(st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0))
        path = [draw(st.sampled_from(arrows))]
        for _ in range(draw(st.integers(1, 2))):
            nxt = [a for a in arrows if a[1] == path[-1][2]]
            if not nxt:
                break
            path.append(draw(st.sampled_from(nxt)))
        if len(path) >= 2:
            rels.append([(coef, tuple(a[0] for a in path))])
    field = draw(st.sampled_from([QQ, GF]))
    return QuiverPresentation(vc, arrows, rels, field, draw(st.sampled_from(["", "demo"])))


@given(presentations())
def test_emit_then_parse_round_trips(p):
    q = parse_text(emit(p))
    assert (q.vertex_count, q.arrows, q.field, q.name) == (p.vertex_count, p.arrows, p.field, p.name)
    assert [[(Fraction(c), path) for c, path in r] for r in q.relations] == \
        [[(Fraction(c), path) for c, path in r] for r in p.relations]


def test_module_specs():
    a = algebra("trivext_A2")
    assert parse_module("simple(2)", a).hilbert() == {0: [0, 1]}
    assert parse_module("proj(1)", a).total_dim() == 3
    assert parse_module("trunc(2)", a).dims() == (2, 2)
    assert parse_module("regular", a).total_dim() == 6
    m = parse_module("sum(simple(1), shift(simple(2), -3))", a)
    assert m.total_dim() == 2 and m.dim(3) == 1
    assert m.name == "sum(simple(1),shift(simple(2),-3))"


@pytest.mark.parametrize("spec", ["", "simple(3)", "simple(0)", "simple 1", "trunc(0)", "trunc(99)",
                                  "shift(simple(1))", "sum(simple(1),)", "cube(1)", "simple(1))", "simple(x)",
                                  "simple(1) $"])
def test_bad_module_specs(spec):
    with pytest.raises(SpecError):
        parse_module(spec, algebra("trivext_A2"))


def test_exterior_builtin_shape():
    p = parse_text("builtin exterior(2)\n")
    assert p.vertex_count == 1
    assert [(s, t) for _, s, t in p.arrows] == [(0, 0), (0, 0)]
    assert len(p.relations) == 3
