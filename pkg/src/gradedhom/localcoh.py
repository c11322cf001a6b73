"""Local cohomology with respect to the graded radical.

``gamma_via_limit`` computes ``lim_k Ext^i(A/A_{>=k}, M)`` per (i, degree, vertex)
from the stage groups, certifying each cell through the long exact sequence of
one truncation layer.  The direct-system maps themselves (lifts of the
projections ``A/A_{>=k+1} -> A/A_{>=k}`` to chain maps) are available as a
cross-check.  ``gamma_via_tor`` computes the same groups as
``Tor_{n-i}(I', M)`` from the dualizing module.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .algebra import GradedAlgebra, WindowError
from .exact_linalg import matmul, rank, solve
from .free import FreeMap
from .gorenstein import DualizingModule
from .homology import (BigradedTable, Comparison, HomCell, _coboundary, cell_certified, compare_tables, ext,
                       ext_into_algebra, hom_cell, induced_hom, resolve, tor)
from .module import (GradedModule, algebra_mod_truncation, direct_sum, projective, regular, shift, simple, top,
                     truncate_above)

# -- the direct system ----------------------------------------------------------------

def _truncation(alg: GradedAlgebra, k: int, v: int) -> GradedModule:
    key = ("trunc", k, v)
    if key not in alg.cache:
        alg.cache[key] = truncate_above(projective(alg, v + 1), k - 1)
    return alg.cache[key]


def _lift(alg: GradedAlgebra, k: int, v: int, hmax: int) -> list[list[dict[int, np.ndarray]]]:
    """Chain map over the projection ``A e_v/A_{>=k+1} e_v -> A e_v/A_{>=k} e_v``.

    Returns, for each ``s <= hmax``, images of the generators of the stage-``k+1``
    resolution in the stage-``k`` resolution.
    """
    key = ("lift", k, v, hmax)
    if key in alg.cache:
        return alg.cache[key]
    f = alg.field
    big = resolve(_truncation(alg, k + 1, v), hmax + 1)
    small = resolve(_truncation(alg, k, v), hmax + 1)
    tb, ts = _truncation(alg, k + 1, v), _truncation(alg, k, v)
    out: list[list[dict[int, np.ndarray]]] = []
    for s in range(hmax + 1):
        imgs: list[dict[int, np.ndarray]] = []
        prev = FreeMap(big.terms[s - 1], small.terms[s - 1], out[s - 1]) if s > 0 else None
        for g, (gv, dg) in enumerate(big.terms[s].gens):
            if dg > small.E:
                imgs.append({})
                continue
            if s == 0:
                y = big.aug[g]
                # the projection is the identity below degree k and zero at k
                y = y.copy() if dg < k else f.zeros(ts.dim(dg))
                if ts.dim(dg) != len(y):
                    y = f.zeros(ts.dim(dg))
            else:
                col = _generator_column(big, s, g)
                y = matmul(prev.matrix(dg), col[:, None], f)[:, 0]
            if not np.any(y != 0):
                imgs.append({})
                continue
            mat = small.boundary(s, dg)
            x = solve(mat, y[:, None], f)
            if x is None:
                raise ValueError(f"chain map lift failed at s={s}, degree {dg}")
            imgs.append(small.terms[s].split(dg, x[:, 0]))
        out.append(imgs)
    alg.cache[key] = out
    return out


def _generator_column(res, s: int, g: int) -> np.ndarray:
    """Image of generator ``g`` of ``P_s`` as a vector of ``P_{s-1}`` in its degree."""
    f = res.algebra.field
    dg = res.terms[s].gens[g][1]
    vec = f.zeros(res.terms[s - 1].dim(dg))
    for h, idx, off in res.terms[s - 1].blocks(dg):
        if h in res.maps[s].images[g]:
            vec[off:off + idx.size] = res.maps[s].images[g][h][idx]
    return vec


@dataclass
class LimitTable:
    """Stabilized direct limits per (i, degree, vertex)."""

    k_max: int
    entries: dict[tuple[int, int, int], dict] = dc_field(default_factory=dict)
    stages: dict[tuple[int, int, int], list] = dc_field(default_factory=dict)
    tail_assumed: bool = False

    def totals(self) -> BigradedTable:
        out = BigradedTable("gamma", tail_assumed=self.tail_assumed, bounds={"k_max": self.k_max})
        keys = sorted({(i, d) for i, d, _ in self.entries})
        for i, d in keys:
            cells = [e for (a, b, _), e in self.entries.items() if (a, b) == (i, d)]
            ok = all(c["status"] == "stabilized" for c in cells)
            out.dims[(i, d)] = sum(c["value"] or 0 for c in cells)
            out.certified[(i, d)] = ok
            out.vertex_dims[(i, d)] = [self.entries[(i, d, v)]["value"] or 0
                                       for v in range(len(cells))]
        return out

    def max_nonzero(self) -> int | None:
        hits = [i for (i, _, _), e in self.entries.items() if e["status"] == "stabilized" and e["value"]]
        return max(hits) if hits else None

    def to_json(self) -> dict:
        return {"k_max": self.k_max, "tail_assumed": self.tail_assumed,
                "cells": [{"i": i, "degree": d, "vertex": v + 1, **e}
                          for (i, d, v), e in sorted(self.entries.items())]}


def _layer_bounds(m: GradedModule, i_max: int) -> dict[int, float]:
    """For each ``i``, the top degree ``u`` where ``Ext^{i-1}(S, M)_u`` or ``Ext^i(S, M)_u`` may be nonzero.

    ``A e_v/A_{>=k+1} e_v`` is an extension of ``A/A_{>=k} e_v`` by the semisimple
    layer ``A_k e_v``, so the long exact sequence makes the stage map ``k -> k+1`` an
    isomorphism in degree ``t`` once both rows vanish at ``u = t + k`` for every simple.
    Uncertified cells count as possibly nonzero; degrees past the computed window
    are taken to vanish.
    """
    alg = m.algebra
    high = [float("-inf")] * (i_max + 1)
    for w in range(alg.vertex_count):
        tab = ext(simple(alg, w + 1), m, i_max)
        for (j, u), val in tab.dims.items():
            if val or not tab.certified[(j, u)]:
                high[j] = max(high[j], u)
    return {i: max(high[i], high[i - 1] if i else float("-inf")) for i in range(i_max + 1)}


def gamma_via_limit(m: GradedModule, i_max: int, k_max: int, check_maps: bool = False,
                    all_stages: bool = False) -> LimitTable:
    """``Gamma^i(M) = lim_k Ext^i(A/A_{>=k}, M)`` for ``i <= i_max``.

    A cell is stabilized from stage ``k0 = u_i - t + 1`` on (see :func:`_layer_bounds`)
    and reported when ``k0 <= k_max``.  With ``check_maps`` the stage maps from ``k0``
    to ``k_max`` are also lifted and checked to be isomorphisms; a failure raises.
    Only the last stage is computed unless ``all_stages`` or ``check_maps`` is set.
    """
    alg = m.algebra
    if not (1 <= k_max <= alg.dmax):
        raise ValueError(f"k_max={k_max} must lie in 1..{alg.dmax}")
    table = LimitTable(k_max)
    top_deg = _vanishing_top(m)
    if top_deg is not None and not m.bounded_above:
        m = truncate_above(m, top_deg)
    bounds = _layer_bounds(m, i_max)
    for v in range(alg.vertex_count):
        stages = range(1, k_max + 1) if (all_stages or check_maps) else [k_max]
        ress = {k: resolve(_truncation(alg, k, v), i_max + 1) for k in stages}
        lifts = _LazyLifts(alg, v, i_max)
        cob = {k: {} for k in ress}
        maxdeg = max((d for r in ress.values() for t in r.terms for _, d in t.gens), default=0)
        for i in range(i_max + 1):
            for t in range(m.lo - maxdeg, m.hi + 1):
                cells = {k: _Cell.make(ress[k], m, i, t, cob[k]) for k in ress}
                last = cells[k_max]
                if last is None:
                    continue
                k0 = max(int(bounds[i] - t + 1), 1) if bounds[i] > float("-inf") else 1
                if last.certified and k0 <= k_max:
                    entry = {"value": last.dim, "stage": k0, "status": "stabilized"}
                    if check_maps:
                        for k in range(k0, k_max):
                            if not _iso(cells[k], cells[k + 1], ress, lifts, k, i, m, t):
                                raise AssertionError(f"stage map {k}->{k + 1} not iso at i={i}, t={t}")
                else:
                    entry = {"value": last.dim, "stage": None, "status": "not-yet-stable"}
                table.entries[(i, t, v)] = entry
                table.stages[(i, t, v)] = [None if k not in cells or cells[k] is None else cells[k].dim
                                           for k in range(1, k_max + 1)]
    table.tail_assumed = not m.bounded_above
    return _prune(table, alg.vertex_count)


class _LazyLifts(dict):
    def __init__(self, alg, v, hmax):
        super().__init__()
        self.args = (alg, v, hmax)

    def __missing__(self, k):
        alg, v, hmax = self.args
        self[k] = _lift(alg, k, v, hmax)
        return self[k]


class _Cell:
    """Dimension of one stage cell, with representatives built only on demand."""

    def __init__(self, res, m, i, t, dim, certified, cochains):
        self.res, self.m, self.i, self.t = res, m, i, t
        self.dim, self.certified = dim, certified
        self.cochains = cochains
        self._full = None

    @classmethod
    def make(cls, res, m: GradedModule, i: int, t: int, cache: dict):
        f = m.field

        def cob(s):
            if (s, t) not in cache:
                c = _coboundary(res, s, m, t)
                cache[(s, t)] = None if c is None else (c[1], rank(c[0], f))
            return cache[(s, t)]

        nxt = cob(i)
        prv = cob(i - 1) if i > 0 else (0, 0)
        if nxt is None or prv is None:
            return None
        return cls(res, m, i, t, nxt[0] - nxt[1] - prv[1], cell_certified(res, m, i, t), nxt[0])

    @property
    def full(self) -> HomCell:
        if self._full is None:
            self._full = hom_cell(self.res, self.m, self.i, self.t)
        return self._full


def _iso(a_: _Cell | None, b_: _Cell | None, ress, lifts, k: int, i: int, m: GradedModule, t: int) -> bool:
    """Whether the direct-system map from stage ``k`` to ``k + 1`` is an isomorphism."""
    if a_ is None or b_ is None or not (a_.certified and b_.certified) or a_.dim != b_.dim:
        return False
    if a_.dim == 0:
        return True
    a_, b_ = a_.full, b_.full
    fm = induced_hom(ress[k + 1].terms[i], ress[k].terms[i], lifts[k][i], m, t)
    if fm is None:
        return False
    f = m.field
    coords = b_.coords(matmul(fm[0], a_.reps, f), f)
    return rank(coords, f) == a_.dim


def _vanishing_top(m: GradedModule) -> int | None:
    """Top nonzero degree when ``M`` is known to vanish above it, else ``None``.

    A module flagged unbounded still vanishes from ``d`` on when ``M_d = 0`` for
    some ``d`` past all of its generators (generators assumed inside the window).
    """
    supp = m.support()
    if m.bounded_above:
        return max(supp) if supp else m.lo
    gens = top(m).support() if m.bounded_below else None
    if gens is None:
        return None
    start = max(gens) + 1 if gens else m.lo
    for d in range(start, m.hi + 1):
        if m.dim(d) == 0:
            below = [x for x in supp if x < d]
            return max(below) if below else m.lo
    return None


def _prune(table: LimitTable, m: int) -> LimitTable:
    """Keep (i, degree) rows that have an entry for every vertex."""
    keys = {(i, d) for i, d, _ in table.entries}
    for i, d in keys:
        for v in range(m):
            if (i, d, v) not in table.entries:
                table.entries[(i, d, v)] = {"value": None, "stage": None, "status": "out-of-window"}
    return table


# -- Tor route and the formula ------------------------------------------------------------

def gamma_via_tor(m: GradedModule, i: int, dualizing: DualizingModule, n: int) -> BigradedTable:
    """``Tor_{n-i}(I', M)`` re-keyed as ``(i, degree)``."""
    if not 0 <= i <= n:
        raise ValueError(f"i={i} outside [0, {n}]")
    t = tor(dualizing.as_right, m, n - i)
    out = BigradedTable("gamma_via_tor", tail_assumed=t.tail_assumed, bounds=t.bounds)
    for (s, d), v in t.dims.items():
        if s == n - i:
            out.dims[(i, d)] = v
            out.certified[(i, d)] = t.certified[(s, d)]
    return out


def compare_routes(m: GradedModule, dualizing: DualizingModule, n: int, k_max: int,
                   limit: LimitTable | None = None) -> Comparison:
    limit = limit or gamma_via_limit(m, n, k_max)
    lt = limit.totals()
    cmp = Comparison(f"two routes for {m.name}")
    for i in range(n + 1):
        tt = gamma_via_tor(m, i, dualizing, n)
        part = compare_tables("", _row(lt, i), tt)
        cmp.rows.extend(part.rows)
    return cmp


def _row(t: BigradedTable, i: int) -> BigradedTable:
    out = BigradedTable(t.kind, tail_assumed=t.tail_assumed, bounds=t.bounds)
    for (s, d), v in t.dims.items():
        if s == i:
            out.dims[(s, d)] = v
            out.certified[(s, d)] = t.certified[(s, d)]
    return out


def anchor_check(a: GradedAlgebra, dualizing: DualizingModule, n: int, k_max: int) -> Comparison:
    """``Gamma^n(A)`` against ``I'`` per degree and vertex."""
    lim = gamma_via_limit(regular(a), n, k_max)
    cmp = Comparison("top local cohomology of A vs dualizing module")
    il = dualizing.as_left
    for (i, d, v), e in sorted(lim.entries.items()):
        if i != n:
            continue
        rhs = int(np.sum(il.tags(d) == v)) if il.known(d) else None
        cmp.add((d, v + 1), e["value"], rhs, e["status"] == "stabilized" and rhs is not None)
    return cmp


@dataclass
class FormulaReport:
    i: int
    comparison: Comparison

    @property
    def verdict(self) -> str:
        return self.comparison.verdict

    def to_json(self) -> dict:
        return {"i": self.i, **self.comparison.to_json()}


def dual_of_dualizing(a: GradedAlgebra, report_shifts: list[int]) -> GradedModule:
    """``D(I')`` as a left module: ``(+)_w A e_w [m_w]``."""
    return direct_sum([shift(projective(a, w + 1), ms) for w, ms in enumerate(report_shifts)], name="D(I')")


def verify_lcf(m: GradedModule, i: int, dualizing: DualizingModule, n: int, op_shifts: list[int],
               k_max: int, limit: LimitTable | None = None) -> FormulaReport:
    """``D Gamma^i(M)`` against ``Ext^{n-i}(M, D(I'))`` degree-wise."""
    limit = limit or gamma_via_limit(m, n, k_max)
    lhs = _row(limit.totals(), i)
    target = dual_of_dualizing(m.algebra, op_shifts)
    rhs = ext(m, target, n - i)
    rhs = _row(rhs, n - i)
    cmp = compare_tables(f"local cohomology formula i={i}", lhs, rhs,
                         lambda s, d: -d, lambda s, d: d)
    return FormulaReport(i, cmp)


def verify_prop5(a: GradedAlgebra, i_max: int, k_max: int) -> Comparison:
    left = gamma_via_limit(regular(a), i_max, k_max).totals()
    right = gamma_via_limit(regular(a, "right"), i_max, k_max).totals()
    return compare_tables("left vs right local cohomology of A", left, right)


# -- tensor products --------------------------------------------------------------------------

def tensor_module(x: GradedModule, y: GradedModule, t: GradedAlgebra) -> GradedModule:
    """``X (x)_k Y`` over ``t = tensor_algebra(A, B)`` (both left modules)."""
    if t.tensor_info is None:
        raise ValueError("not a tensor algebra")
    a, b, splits, offsets = t.tensor_info
    if x.algebra is not a or y.algebra is not b:
        raise ValueError("factor modules over the wrong algebras")
    f = t.field
    mb = b.vertex_count
    lo, hi = x.lo + y.lo, x.hi + y.hi
    if not x.bounded_above:
        hi = min(hi, x.hi + y.lo)
    if not y.bounded_above:
        hi = min(hi, x.lo + y.hi)
    tags, blocks = {}, {}
    for d in range(lo, hi + 1):
        parts, off, blk = [], 0, {}
        for p in range(max(x.lo, d - y.hi), min(x.hi, d - y.lo) + 1):
            tx, ty = x.tags(p), y.tags(d - p)
            if len(tx) and len(ty):
                parts.append((tx[:, None] * mb + ty[None, :]).ravel())
            blk[p] = (off, len(tx) * len(ty))
            off += len(tx) * len(ty)
        tags[d] = np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)
        blocks[d] = blk
    act1 = {}
    n1 = t.dim(1)
    for d in range(lo, hi):
        out = f.zeros((n1, len(tags[d + 1]), len(tags[d])))
        for (pa, qb) in splits[1]:
            base = offsets[1][(pa, qb)]
            for p, (off, size) in blocks[d].items():
                if size == 0:
                    continue
                q = d - p
                if p + pa not in blocks[d + 1]:
                    continue
                off2, size2 = blocks[d + 1][p + pa]
                if size2 == 0:
                    continue
                ax, ay = x.act(pa, p), y.act(qb, q)
                for ia in range(ax.shape[0]):
                    for ib in range(ay.shape[0]):
                        g = base + ia * ay.shape[0] + ib
                        kb = np.kron(ax[ia], ay[ib])
                        out[g, off2:off2 + size2, off:off + size] = f.reduce(kb)
        act1[d] = out
    return GradedModule(t, "left", lo, hi, tags, act1, x.bounded_below and y.bounded_below,
                        x.bounded_above and y.bounded_above, f"{x.name}(x){y.name}")


def _convolve(ta: BigradedTable, tb: BigradedTable, s_max: int,
              bounded_below: bool = False) -> dict[tuple[int, int], tuple[int, bool]]:
    """Convolution of two tables over (s, d) with a per-cell completeness flag.

    A cell is certified when every contributing pair is certified and no cell of
    one factor that may be nonzero has its partner degree outside the other
    factor's computed range.  With ``bounded_below`` a partner degree under a
    row's lowest computed degree counts as a known zero.
    """
    def rows(t):
        out: dict[int, dict[int, tuple[int, bool]]] = {}
        for (s, d), v in t.dims.items():
            out.setdefault(s, {})[d] = (v, t.certified[(s, d)])
        return out

    ra, rb = rows(ta), rows(tb)
    keys = set()
    for s1, r1 in ra.items():
        for s2, r2 in rb.items():
            if s1 + s2 <= s_max:
                keys |= {(s1 + s2, d1 + d2) for d1 in r1 for d2 in r2}
    out = {}
    for s, d in keys:
        total, ok = 0, True
        for s1 in range(s + 1):
            r1, r2 = ra.get(s1, {}), rb.get(s - s1, {})
            lo1 = min(r1) if r1 and bounded_below else None
            lo2 = min(r2) if r2 and bounded_below else None
            for d1, (v1, c1) in r1.items():
                if (d - d1) in r2:
                    v2, c2 = r2[d - d1]
                    total += v1 * v2
                    ok = ok and ((c1 and c2) or (c1 and v1 == 0) or (c2 and v2 == 0))
                elif (v1 or not c1) and not (lo2 is not None and d - d1 < lo2):
                    ok = False
            for d2, (v2, c2) in r2.items():
                if (d - d2) not in r1 and (v2 or not c2) and not (lo1 is not None and d - d2 < lo1):
                    ok = False
        out[(s, d)] = (total, ok)
    return out


def verify_kunneth(a: GradedAlgebra, b: GradedAlgebra, t_max: int, t: GradedAlgebra | None = None) -> Comparison:
    """Ext of the tensor top into the tensor algebra against the convolution of factor tables."""
    from .algebra import tensor_algebra
    t = t or tensor_algebra(a, b)
    ea = ext_into_algebra(algebra_mod_truncation(a, 1), t_max).table
    eb = ext_into_algebra(algebra_mod_truncation(b, 1), t_max).table
    et = ext_into_algebra(algebra_mod_truncation(t, 1), t_max).table
    return _compare_conv("Kunneth formula for Ext of the top", et, _convolve(ea, eb, t_max, bounded_below=True), t_max)


def _compare_conv(name: str, lhs: BigradedTable, conv: dict, s_max: int) -> Comparison:
    cmp = Comparison(name)
    for key in sorted({k for k in lhs.dims if k[0] <= s_max} | set(conv)):
        lv = lhs.dims.get(key)
        rv, rc = conv.get(key, (None, False))
        cmp.add(key, lv, rv, lv is not None and lhs.certified.get(key, False) and rc)
    return cmp


def verify_tensor_composition(t: GradedAlgebra, x: GradedModule, y: GradedModule, i_max: int, k_max: int,
                              m: GradedModule | None = None) -> Comparison:
    """``Gamma`` over the tensor algebra against the convolution of the factor ``Gamma`` tables."""
    m = m or tensor_module(x, y, t)
    tt = gamma_via_limit(m, i_max, k_max).totals()
    ga = gamma_via_limit(x, i_max, k_max).totals()
    gb = gamma_via_limit(y, i_max, k_max).totals()
    return _compare_conv("local cohomology of a tensor product", tt, _convolve(ga, gb, i_max), i_max)


# -- probing the local cohomology dimension ------------------------------------------------------

@dataclass
class ProbeReport:
    l_max: int
    per_sample: list[dict]

    @property
    def max_nonzero(self) -> int | None:
        vals = [r["max_i"] for r in self.per_sample if r["max_i"] is not None]
        return max(vals) if vals else None

    def to_json(self) -> dict:
        return {"l_max": self.l_max, "max_nonzero": self.max_nonzero, "samples": self.per_sample}


def lc_dimension_probe(a: GradedAlgebra, l_max: int, samples: list[GradedModule], k_max: int) -> ProbeReport:
    rows = []
    for mod in samples:
        lim = gamma_via_limit(mod, l_max, k_max)
        rows.append({"module": mod.name, "max_i": lim.max_nonzero(),
                     "unstable": sum(e["status"] != "stabilized" for e in lim.entries.values())})
    return ProbeReport(l_max, rows)
