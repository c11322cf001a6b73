"""Machine-readable reports and their tab-delimited text rendering.

Every numeric leaf is wrapped as ``{"value": x, "certified": bool}`` or sits in
a cell record carrying its own ``certified``/``status`` flag.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .algebra import GradedAlgebra
from .homology import BigradedTable, Comparison, Resolution

SCHEMA = "gradedhom.report/1"


def tagged(value, certified: bool = True) -> dict:
    return {"value": value, "certified": bool(certified)}


def algebra_summary(a: GradedAlgebra) -> dict:
    # degree dims are exact up to dmax; beyond it only a finite algebra is known
    return {
        "name": a.name,
        "field": "rationals" if a.field.p is None else a.field.p,
        "vertices": tagged(a.vertex_count),
        "dmax": a.dmax,
        "finite": a.finite,
        "dims": [{"degree": d, **tagged(v)} for d, v in enumerate(a.dims())],
    }


def resolution_summary(res: Resolution) -> dict:
    terms = []
    for s in range(res.hmax + 1):
        gens = [{"vertex": v + 1, "degree": d, "count": c}
                for (v, d), c in sorted(res.multiplicities(s).items(), key=lambda kv: (kv[0][1], kv[0][0]))]
        terms.append({"s": s, "complete": res.complete(s), "generators": gens})
    return {"module": res.module.name, "hmax": res.hmax, "window_top": res.E, "terms": terms}


def hilbert_summary(mod) -> dict:
    cells = []
    for d, by_vertex in sorted(mod.hilbert().items()):
        cells.append({"degree": d, "by_vertex": by_vertex, **tagged(sum(by_vertex))})
    return {"module": mod.name, "bounded_above": mod.bounded_above, "cells": cells}


@dataclass
class Report:
    command: str
    flags: dict
    sections: dict = dc_field(default_factory=dict)
    verdicts: list[str] = dc_field(default_factory=list)

    def add(self, key: str, value) -> None:
        self.sections[key] = value

    def verdict(self, v: str) -> None:
        self.verdicts.append(v)

    @property
    def exit_code(self) -> int:
        if any(v in ("Refuted", "mismatch", "fail") for v in self.verdicts):
            return 1
        if any(v in ("Inconclusive", "uncertified") for v in self.verdicts):
            return 2
        return 0

    def to_json(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "flags": self.flags,
                "verdicts": self.verdicts, "exit_code": self.exit_code, "sections": self.sections}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, default=_jsonable) + "\n"


def _jsonable(o):
    if hasattr(o, "to_json"):
        return o.to_json()
    if hasattr(o, "item"):
        return o.item()
    if isinstance(o, (set, frozenset, tuple)):
        return sorted(o) if isinstance(o, (set, frozenset)) else list(o)
    raise TypeError(f"cannot serialize {type(o).__name__}")


# -- text rendering -------------------------------------------------------------

def _line(*cols) -> str:
    return "\t".join(str(c) for c in cols)


def render_table(title: str, table: BigradedTable, row_label: str = "s") -> str:
    """Rows are homological degrees, columns internal degrees; ``?`` marks uncertified cells."""
    if not table.dims:
        return f"# {title}\n(empty)\n"
    rows = sorted({s for s, _ in table.dims})
    cols = sorted({d for _, d in table.dims})
    out = [f"# {title}", _line(f"{row_label}/degree", *cols)]
    for s in rows:
        vals = []
        for d in cols:
            if (s, d) not in table.dims:
                vals.append(".")
            else:
                v = table.dims[(s, d)]
                vals.append(f"{v}" if table.certified[(s, d)] else f"{v}?")
        out.append(_line(s, *vals))
    return "\n".join(out) + "\n"


def render_comparison(cmp: Comparison) -> str:
    out = [f"# {cmp.name}: {cmp.verdict}", _line("key", "lhs", "rhs", "status")]
    for r in cmp.rows:
        key = r["key"]
        key = ",".join(map(str, key)) if isinstance(key, (tuple, list)) else key
        out.append(_line(key, "-" if r["lhs"] is None else r["lhs"], "-" if r["rhs"] is None else r["rhs"],
                         r["status"]))
    return "\n".join(out) + "\n"


def render_pairs(title: str, pairs) -> str:
    out = [f"# {title}"] + [_line(k, v) for k, v in pairs]
    return "\n".join(out) + "\n"


__all__ = ["SCHEMA", "Report", "tagged", "algebra_summary", "resolution_summary", "hilbert_summary",
           "render_table", "render_comparison", "render_pairs"]
