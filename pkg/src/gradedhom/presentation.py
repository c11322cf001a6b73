"""Plain-text algebra presentations: parsing, emission and loading.

A file is line oriented; ``#`` starts a comment.  Sections::

    name kronecker            # optional
    field 101                 # or: field rationals
    vertices 2
    arrows
      a: 1 -> 2
      b: 1 -> 2
    relations
      a.b - 1/2 b.a           # paths are dot-separated, walked left to right

or, instead of arrows and relations, a single ``builtin`` line::

    builtin exterior(2)
    builtin preprojective(2, a: 1 -> 2, b: 1 -> 2)
    builtin trivext(2, a: 1 -> 2, b: 1 -> 2)
    builtin tensor(ext2.alg, poly2.alg)      # paths relative to this file
"""

from __future__ import annotations

import re
from fractions import Fraction
from pathlib import Path

from .algebra import (GradedAlgebra, PresentationError, QuiverPresentation, build_algebra,
                      exterior_presentation, polynomial_presentation, preprojective_presentation,
                      tensor_algebra, trivial_extension_presentation)
from .exact_linalg import Field

SECTIONS = ("name", "field", "vertices", "arrows", "relations", "builtin")
_NAME = r"[A-Za-z_][A-Za-z0-9_*']*"
_ARROW = re.compile(rf"^({_NAME})\s*:\s*(\d+)\s*->\s*(\d+)$")
_TERM = re.compile(rf"\s*([+-])?\s*(\d+(?:/\d+)?)?\s*\*?\s*({_NAME}(?:\s*\.\s*{_NAME})*)\s*")


class ParseError(PresentationError):
    def __init__(self, message: str, line: int | None = None, token: str | None = None):
        where = f"line {line}: " if line is not None else ""
        tok = f" (at {token!r})" if token else ""
        super().__init__(f"{where}{message}{tok}")
        self.line = line
        self.token = token


def parse_field(text: str) -> Field:
    t = text.strip().lower()
    if t in ("q", "qq", "rationals", "rational"):
        return Field.rationals()
    if t.startswith("gf(") and t.endswith(")"):
        t = t[3:-1]
    try:
        return Field.prime(int(t))
    except ValueError as exc:
        raise ParseError(f"bad field {text!r}") from exc


def parse_arrow(text: str, vertex_count: int, line: int | None = None) -> tuple[str, int, int]:
    m = _ARROW.match(text.strip())
    if not m:
        raise ParseError("expected 'name: src -> tgt'", line, text.strip())
    name, s, t = m.group(1), int(m.group(2)), int(m.group(3))
    for v in (s, t):
        if not 1 <= v <= vertex_count:
            raise ParseError(f"vertex {v} outside 1..{vertex_count}", line, text.strip())
    return name, s - 1, t - 1


def parse_relation(text: str, line: int | None = None) -> list[tuple[object, tuple[str, ...]]]:
    text = text.strip()
    pos, out = 0, []
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("cannot read relation term", line, text[pos:].split()[0])
        sign, coef, path = m.groups()
        if out and sign is None:
            raise ParseError("missing '+' or '-' between terms", line, path)
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        out.append((int(c) if c.denominator == 1 else c, tuple(p.strip() for p in path.split("."))))
        pos = m.end()
    if not out:
        raise ParseError("empty relation", line)
    return out


def _split_args(text: str) -> list[str]:
    depth, cur, out = 0, "", []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


def tensor_presentation(p: QuiverPresentation, q: QuiverPresentation) -> QuiverPresentation:
    """Quiver presentation of the unsigned tensor product; vertex ``(i, j)`` is ``i * |Q_0(q)| + j``."""
    mq = q.vertex_count
    arrows, rels = [], []

    def left(a, j):
        return f"{a}_v{j + 1}"

    def right(i, b):
        return f"v{i + 1}_{b}"

    for a, s, t in p.arrows:
        for j in range(mq):
            arrows.append((left(a, j), s * mq + j, t * mq + j))
    for b, s, t in q.arrows:
        for i in range(p.vertex_count):
            arrows.append((right(i, b), i * mq + s, i * mq + t))
    for rel in p.relations:
        for j in range(mq):
            rels.append([(c, tuple(left(a, j) for a in path)) for c, path in rel])
    for rel in q.relations:
        for i in range(p.vertex_count):
            rels.append([(c, tuple(right(i, b) for b in path)) for c, path in rel])
    for a, s, t in p.arrows:
        for b, u, w in q.arrows:
            rels.append([(1, (left(a, u), right(t, b))), (-1, (right(s, b), left(a, w)))])
    out = QuiverPresentation(p.vertex_count * mq, arrows, rels, p.field, f"{p.name} (x) {q.name}")
    out.factors = (p, q)
    return out


def _builtin(spec: str, field: Field, base: Path | None, line: int | None) -> QuiverPresentation:
    m = re.match(r"^(\w+)\s*\((.*)\)$", spec.strip())
    if not m:
        raise ParseError("expected builtin(args)", line, spec.strip())
    kind, args = m.group(1), _split_args(m.group(2))
    try:
        if kind in ("polynomial", "exterior"):
            if len(args) != 1:
                raise ParseError(f"{kind} takes one argument", line, spec.strip())
            n = int(args[0])
            fn = polynomial_presentation if kind == "polynomial" else exterior_presentation
            return fn(n, field)
        if kind in ("preprojective", "trivext"):
            if not args:
                raise ParseError(f"{kind} needs a vertex count", line, spec.strip())
            vc = int(args[0])
            arrows = [parse_arrow(a, vc, line) for a in args[1:]]
            if kind == "preprojective":
                return preprojective_presentation(vc, arrows, field)
            if not arrows:
                raise ParseError("trivext without arrows has no presentation generated in degree 1",
                                 line, spec.strip())
            return trivial_extension_presentation(vc, arrows, field)
        if kind == "tensor":
            if len(args) != 2:
                raise ParseError("tensor takes two files", line, spec.strip())
            parts = []
            for a in args:
                path = Path(a)
                if base is not None and not path.is_absolute():
                    path = base / path
                parts.append(parse_file(path, field))
            return tensor_presentation(*parts)
    except ValueError as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(str(exc), line, spec.strip()) from exc
    raise ParseError(f"unknown builtin {kind!r}", line, kind)


def parse_text(text: str, field: Field | None = None, base: Path | None = None) -> QuiverPresentation:
    """Parse a presentation; ``field`` overrides the file's ``field`` line."""
    sections: dict[str, list[tuple[int, str]]] = {}
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        head, _, rest = body.partition(" ")
        head = head.rstrip(":").lower()
        if head in SECTIONS:
            if head in sections:
                raise ParseError(f"duplicate section {head!r}", no, head)
            current = head
            sections[head] = []
            if rest.strip():
                sections[head].append((no, rest.strip().lstrip(":").strip()))
            continue
        if current is None:
            raise ParseError("text before any section", no, body.split()[0])
        sections[current].append((no, body))

    def single(key):
        items = sections.get(key, [])
        if len(items) != 1:
            raise ParseError(f"section {key!r} needs exactly one value",
                             items[0][0] if items else None, key)
        return items[0]

    if field is None:
        field = parse_field(single("field")[1]) if "field" in sections else Field.rationals()
    name = single("name")[1] if "name" in sections else ""
    has_quiver = "arrows" in sections or "relations" in sections
    if "builtin" in sections:
        if has_quiver or "vertices" in sections:
            no = sections["builtin"][0][0] if sections["builtin"] else None
            raise ParseError("a file has either builtin or vertices/arrows/relations, not both", no, "builtin")
        no, spec = single("builtin")
        pres = _builtin(spec, field, base, no)
        if name:
            pres.name = name
        return pres
    if "vertices" not in sections:
        raise ParseError("missing 'vertices' section")
    no, vc_text = single("vertices")
    try:
        vc = int(vc_text)
    except ValueError as exc:
        raise ParseError("vertex count must be an integer", no, vc_text) from exc
    arrows = [parse_arrow(t, vc, n) for n, t in sections.get("arrows", [])]
    rels = [(n, parse_relation(t, n)) for n, t in sections.get("relations", [])]
    try:
        pres = QuiverPresentation(vc, arrows, [r for _, r in rels], field, name)
    except PresentationError as exc:
        raise ParseError(str(exc), sections["arrows"][0][0] if arrows else None) from exc
    for n, rel in rels:
        try:
            for _, path in rel:
                pres.path_ends(path)
            QuiverPresentation(vc, arrows, [rel], field).validate()
        except PresentationError as exc:
            raise ParseError(str(exc), n) from exc
    return pres


def parse_file(path: str | Path, field: Field | None = None) -> QuiverPresentation:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_text(text, field, path.parent)


def _coef(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def emit(p: QuiverPresentation) -> str:
    """Text form of a presentation; ``parse_text(emit(p)) == p``."""
    lines = []
    if p.name:
        lines.append(f"name {p.name}")
    lines.append(f"field {'rationals' if p.field.p is None else p.field.p}")
    lines.append(f"vertices {p.vertex_count}")
    lines.append("arrows")
    lines += [f"  {nm}: {s + 1} -> {t + 1}" for nm, s, t in p.arrows]
    lines.append("relations")
    for rel in p.relations:
        parts = []
        for i, (c, path) in enumerate(rel):
            c = Fraction(c)
            sign = "-" if c < 0 else "+"
            mag = _coef(abs(c))
            term = ".".join(path) if mag == "1" else f"{mag} {'.'.join(path)}"
            parts.append(term if i == 0 and sign == "+" else f"{sign} {term}")
        lines.append("  " + " ".join(parts))
    return "\n".join(lines) + "\n"


def load_algebra(p: QuiverPresentation, dmax: int) -> GradedAlgebra:
    """Build the algebra of a parsed presentation, keeping tensor structure when present."""
    factors = getattr(p, "factors", None)
    if factors is not None:
        alg = tensor_algebra(load_algebra(factors[0], dmax), load_algebra(factors[1], dmax))
        alg.name = p.name or alg.name
        return alg
    alg = build_algebra(p, dmax)
    alg.name = p.name or alg.name
    return alg


__all__ = ["ParseError", "parse_text", "parse_file", "emit", "load_algebra", "tensor_presentation",
           "parse_field"]
