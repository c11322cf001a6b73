"""Module expressions used on the command line.

Grammar::

    spec := simple(i) | proj(i) | trunc(k) | regular | shift(spec, n) | sum(spec, spec, ...)

``trunc(k)`` is ``A / A_{>=k}``; vertices are 1-based.
"""

from __future__ import annotations

import re

from .algebra import GradedAlgebra
from .module import GradedModule, algebra_mod_truncation, direct_sum, projective, regular, shift, simple


class SpecError(ValueError):
    pass


_TOKEN = re.compile(r"\s*(?:(\w+)|(-?\d+)|([(),]))")


def _tokens(text: str) -> list[str]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecError(f"unexpected character at {text[pos:]!r}")
        out.append(next(g for g in m.groups() if g is not None))
        pos = m.end()
    return out


def parse_module(text: str, a: GradedAlgebra) -> GradedModule:
    toks = _tokens(text)
    if not toks:
        raise SpecError("empty module spec")
    pos = 0

    def expect(tok):
        nonlocal pos
        if pos >= len(toks) or toks[pos] != tok:
            got = toks[pos] if pos < len(toks) else "end of input"
            raise SpecError(f"expected {tok!r}, got {got!r} in {text!r}")
        pos += 1

    def integer():
        nonlocal pos
        if pos >= len(toks) or not re.fullmatch(r"-?\d+", toks[pos]):
            raise SpecError(f"expected an integer in {text!r}")
        pos += 1
        return int(toks[pos - 1])

    def vertex():
        i = integer()
        if not 1 <= i <= a.vertex_count:
            raise SpecError(f"vertex {i} outside 1..{a.vertex_count}")
        return i

    def expr() -> GradedModule:
        nonlocal pos
        if pos >= len(toks):
            raise SpecError(f"incomplete spec {text!r}")
        head = toks[pos]
        pos += 1
        if head == "regular":
            return regular(a)
        expect("(")
        if head == "simple":
            out = simple(a, vertex())
        elif head == "proj":
            out = projective(a, vertex())
        elif head == "trunc":
            k = integer()
            if not 1 <= k <= a.dmax:
                raise SpecError(f"trunc({k}) needs 1 <= k <= {a.dmax}")
            out = algebra_mod_truncation(a, k)
        elif head == "shift":
            inner = expr()
            expect(",")
            out = shift(inner, integer())
        elif head == "sum":
            parts = [expr()]
            while pos < len(toks) and toks[pos] == ",":
                pos += 1
                parts.append(expr())
            out = direct_sum(parts)
        else:
            raise SpecError(f"unknown module constructor {head!r}")
        expect(")")
        return out

    mod = expr()
    if pos != len(toks):
        raise SpecError(f"trailing input {' '.join(toks[pos:])!r} in {text!r}")
    mod.name = re.sub(r"\s+", "", text)
    return mod
