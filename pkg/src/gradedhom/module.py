"""Graded modules over a :class:`GradedAlgebra`.

A module stores, for every degree ``d`` in ``[lo, hi]``, the vertex tag of each
basis slot and the action of the degree-1 basis of the algebra as an array
``act1[d]`` of shape ``(dim A_1, n_{d+1}, n_d)``.  Outside ``[lo, hi]`` a module
is either known to vanish (``bounded_below`` / ``bounded_above``) or unknown;
asking for unknown data raises :class:`WindowError`.

Right modules are left modules over the opposite algebra with ``side="right"``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .algebra import GradedAlgebra, WindowError
from .exact_linalg import (Field, complement_columns, image_basis, kernel_basis,
                           matmul, rank, solve)


class LazyBlocks(Mapping):
    """Read-only ``{degree: block}`` whose blocks are rebuilt on every access.

    Large free modules would otherwise hold every action block at once.
    """

    def __init__(self, build, keys):
        self._build = build
        self._keys = list(keys)

    def __getitem__(self, d):
        if d not in self._keys:
            raise KeyError(d)
        return self._build(d)

    def __iter__(self):
        return iter(self._keys)

    def __len__(self):
        return len(self._keys)


class GradedModule:
    def __init__(self, algebra: GradedAlgebra, side: str, lo: int, hi: int,
                 tags: dict[int, np.ndarray], act1: dict[int, np.ndarray],
                 bounded_below: bool = True, bounded_above: bool = False, name: str = ""):
        if side not in ("left", "right"):
            raise ValueError(f"bad side {side!r}")
        self.algebra = algebra
        self.side = side
        self.lo, self.hi = lo, hi
        self._tags = {d: np.asarray(tags[d], dtype=np.int64) for d in range(lo, hi + 1)}
        self._act1 = act1
        self.bounded_below = bounded_below
        self.bounded_above = bounded_above
        self.name = name
        self._act: dict[tuple[int, int], np.ndarray] = {}

    @property
    def field(self) -> Field:
        return self.algebra.field

    def __repr__(self):
        return f"GradedModule({self.name or '?'}, {self.side}, [{self.lo},{self.hi}], dims={self.dims()})"

    # -- window -------------------------------------------------------------
    def known(self, d: int) -> bool:
        if d < self.lo:
            return self.bounded_below
        if d > self.hi:
            return self.bounded_above
        return True

    def tags(self, d: int) -> np.ndarray:
        if self.lo <= d <= self.hi:
            return self._tags[d]
        if self.known(d):
            return np.zeros(0, dtype=np.int64)
        raise WindowError(f"module {self.name} unknown in degree {d}")

    def dim(self, d: int) -> int:
        return len(self.tags(d))

    def dims(self) -> tuple[int, ...]:
        return tuple(len(self._tags[d]) for d in range(self.lo, self.hi + 1))

    def slots(self, d: int, v: int) -> np.ndarray:
        return np.flatnonzero(self.tags(d) == v)

    def is_finite_length(self) -> bool:
        return self.bounded_below and self.bounded_above

    def total_dim(self) -> int:
        return sum(self.dims())

    def support(self) -> list[int]:
        return [d for d in range(self.lo, self.hi + 1) if len(self._tags[d])]

    # -- actions ------------------------------------------------------------
    def act1(self, d: int) -> np.ndarray:
        if self.lo <= d < self.hi:
            return self._act1[d]
        return self.act(1, d)

    def act(self, k: int, d: int) -> np.ndarray:
        """Action of the degree-``k`` basis: array ``(dim A_k, n_{d+k}, n_d)``."""
        key = (k, d)
        if key in self._act:
            return self._act[key]
        f = self.field
        a = self.algebra
        nk = a.dim(k)
        src, dst = self.dim(d), self.dim(d + k)
        if k == 0:
            out = f.zeros((nk, dst, src))
            tg = self.tags(d)
            for v in range(nk):
                for i in np.flatnonzero(tg == v):
                    out[v, i, i] = 1
        elif src == 0 or dst == 0 or nk == 0:
            out = f.zeros((nk, dst, src))
        elif k == 1:
            if self.lo <= d < self.hi:
                return self._act1[d]
            raise WindowError(f"action out of window at degree {d}")
        else:
            fac = a.factorization(k)
            prev = self.act(k - 1, d)
            t = np.tensordot(fac, prev, axes=([2], [0]))           # x g n_{d+k-1} n_d
            out = np.tensordot(self.act(1, d + k - 1), t, axes=([0, 2], [1, 2]))
            out = f.reduce(np.ascontiguousarray(out.transpose(1, 0, 2)))
        self._act[key] = out
        return out

    def act_element(self, k: int, d: int, coeffs: np.ndarray) -> np.ndarray:
        """Matrix of the degree-``k`` algebra element with the given coordinates."""
        return self.field.reduce(np.tensordot(coeffs, self.act(k, d), axes=([0], [0])))

    def validate(self) -> list[str]:
        """Problems found: tag violations or relations acting nonzero."""
        f, a = self.field, self.algebra
        errs = []
        t1 = a.tags(1)
        for d in range(self.lo, self.hi):
            m = self._act1[d]
            ti, to = self.tags(d), self.tags(d + 1)
            for g, (s, t) in enumerate(t1):
                mask = (to[:, None] == t) & (ti[None, :] == s)
                if np.any(m[g][~mask] != 0):
                    errs.append(f"arrow {a.labels[1][g]} breaks vertex tags at degree {d}")
        for d in range(self.lo, self.hi + 1):
            for b in range(1, self.hi - d):
                if not a.known(b + 1):
                    break
                left = np.tensordot(self.act(1, d + b), self.act(b, d), axes=([2], [1]))   # g n y n
                right = np.tensordot(a.mult(1, b), self.act(b + 1, d), axes=([2], [0]))    # g y n n
                if np.any(f.reduce(left.transpose(0, 2, 1, 3) - right) != 0):
                    errs.append(f"relation acts nonzero from degree {d} at length {b + 1}")
        return errs

    def hilbert(self) -> dict[int, list[int]]:
        m = self.algebra.vertex_count
        return {d: np.bincount(self._tags[d], minlength=m).tolist() for d in range(self.lo, self.hi + 1)}


@dataclass
class GradedMap:
    source: GradedModule
    target: GradedModule
    degree: int
    blocks: dict[int, np.ndarray]

    def is_homomorphism(self) -> bool:
        f = self.source.field
        n1 = self.source.algebra.dim(1)
        for d, m in self.blocks.items():
            if d + 1 not in self.blocks:
                continue
            for g in range(n1):
                lhs = matmul(self.blocks[d + 1], self.source.act(1, d)[g], f)
                rhs = matmul(self.target.act(1, d + self.degree)[g], m, f)
                if np.any(f.reduce(lhs - rhs) != 0):
                    return False
        return True


# -- constructors -----------------------------------------------------------

def _check_vertex(a: GradedAlgebra, i: int):
    if not (1 <= i <= a.vertex_count):
        raise ValueError(f"vertex {i} out of range 1..{a.vertex_count}")


def simple(a: GradedAlgebra, i: int, side: str = "left") -> GradedModule:
    _check_vertex(a, i)
    alg = a if side == "left" else a.opposite()
    return GradedModule(alg, side, 0, 0, {0: [i - 1]}, {}, True, True, f"S{i}")


def projective(a: GradedAlgebra, i: int, side: str = "left") -> GradedModule:
    """``A e_i`` (left) or ``e_i A`` (right), on the window ``[0, dmax]``."""
    _check_vertex(a, i)
    alg = a if side == "left" else a.opposite()
    v = i - 1
    tags, act1 = {}, {}
    for d in range(alg.dmax + 1):
        idx = alg.src_idx(d, v)
        tags[d] = alg.tags(d)[idx, 1]
        if d < alg.dmax:
            nxt = alg.src_idx(d + 1, v)
            act1[d] = np.ascontiguousarray(alg.mult(1, d)[:, idx][:, :, nxt].transpose(0, 2, 1))
    return GradedModule(alg, side, 0, alg.dmax, tags, act1, True, alg.finite,
                        f"P{i}" if side == "left" else f"P{i}^r")


def regular(a: GradedAlgebra, side: str = "left") -> GradedModule:
    return direct_sum([projective(a, i, side) for i in range(1, a.vertex_count + 1)], name="A")


def zero_module(a: GradedAlgebra, side: str = "left") -> GradedModule:
    alg = a if side == "left" else a.opposite()
    return GradedModule(alg, side, 0, 0, {0: []}, {}, True, True, "0")


def shift(m: GradedModule, n: int) -> GradedModule:
    """``M[n]`` with ``M[n]_i = M_{n+i}``."""
    tags = {d - n: m.tags(d) for d in range(m.lo, m.hi + 1)}
    act1 = {d - n: m.act1(d) for d in range(m.lo, m.hi)}
    return GradedModule(m.algebra, m.side, m.lo - n, m.hi - n, tags, act1,
                        m.bounded_below, m.bounded_above, f"{m.name}[{n}]" if n else m.name)


def truncate_below(m: GradedModule, n: int) -> GradedModule:
    """``M_{>=n}``."""
    if n <= m.lo and m.bounded_below:
        return m
    if n < m.lo:
        raise WindowError(f"{m.name} unknown below {m.lo}")
    lo = n
    hi = max(m.hi, n)
    for d in range(lo, hi + 1):
        m.tags(d)
    tags = {d: m.tags(d) for d in range(lo, hi + 1)}
    act1 = {d: m.act(1, d) for d in range(lo, hi)}
    return GradedModule(m.algebra, m.side, lo, hi, tags, act1, True, m.bounded_above, f"{m.name}>={n}")


def truncate_above(m: GradedModule, n: int) -> GradedModule:
    """Quotient ``M / M_{>n}``."""
    hi = min(m.hi, n) if m.bounded_above else n
    if hi > m.hi:
        raise WindowError(f"{m.name} unknown above {m.hi}")
    lo = min(m.lo, hi)
    tags = {d: m.tags(d) for d in range(lo, hi + 1)}
    act1 = {d: m.act(1, d) for d in range(lo, hi)}
    return GradedModule(m.algebra, m.side, lo, hi, tags, act1, m.bounded_below, True, f"{m.name}<={n}")


def algebra_mod_truncation(a: GradedAlgebra, k: int, vertex: int | None = None) -> GradedModule:
    """``A / A_{>=k}`` (or its summand ``A e_v / A_{>=k} e_v``)."""
    if not (1 <= k <= a.dmax + 1):
        raise ValueError(f"k={k} outside 1..{a.dmax + 1}")
    if vertex is None:
        return direct_sum([algebra_mod_truncation(a, k, v) for v in range(1, a.vertex_count + 1)],
                          name=f"A/A>={k}")
    return truncate_above(projective(a, vertex), k - 1)


def direct_sum(mods: list[GradedModule], name: str = "") -> GradedModule:
    if not mods:
        raise ValueError("empty direct sum")
    alg, side = mods[0].algebra, mods[0].side
    if any(m.algebra is not alg or m.side != side for m in mods):
        raise ValueError("direct sum of modules over different algebras or sides")
    unb_lo = [m.lo for m in mods if not m.bounded_below]
    unb_hi = [m.hi for m in mods if not m.bounded_above]
    lo = max(unb_lo) if unb_lo else min(m.lo for m in mods)
    hi = min(unb_hi) if unb_hi else max(m.hi for m in mods)
    if hi < lo:
        raise WindowError("direct sum has an empty common window")
    f = alg.field
    tags, act1 = {}, {}
    for d in range(lo, hi + 1):
        tags[d] = np.concatenate([m.tags(d) for m in mods]).astype(np.int64)
    n1 = alg.dim(1)
    for d in range(lo, hi):
        rows = sum(m.dim(d + 1) for m in mods)
        cols = sum(m.dim(d) for m in mods)
        blk = f.zeros((n1, rows, cols))
        r = c = 0
        for m in mods:
            a_, b_ = m.dim(d + 1), m.dim(d)
            if a_ and b_:
                blk[:, r:r + a_, c:c + b_] = m.act(1, d)
            r, c = r + a_, c + b_
        act1[d] = blk
    return GradedModule(alg, side, lo, hi, tags, act1,
                        all(m.bounded_below for m in mods), all(m.bounded_above for m in mods),
                        name or " + ".join(m.name for m in mods))


def dual(m: GradedModule) -> GradedModule:
    """``D(M)_j = Hom_k(M_{-j}, k)``; flips the side."""
    tags = {-d: m.tags(d) for d in range(m.lo, m.hi + 1)}
    act1 = {}
    for j in range(-m.hi, -m.lo):
        # D_j -> D_{j+1} is the transpose of M_{-j-1} -> M_{-j}
        act1[j] = np.ascontiguousarray(m.act1(-j - 1).transpose(0, 2, 1))
    side = "right" if m.side == "left" else "left"
    return GradedModule(m.algebra.opposite(), side, -m.hi, -m.lo, tags, act1,
                        m.bounded_above, m.bounded_below, f"D({m.name})")


# -- subquotients -------------------------------------------------------------

def _column_vertices(cols: np.ndarray, tags: np.ndarray) -> np.ndarray:
    out = np.full(cols.shape[1], -1, dtype=np.int64)
    for j in range(cols.shape[1]):
        nz = np.flatnonzero(cols[:, j])
        if nz.size:
            out[j] = tags[nz[0]]
    return out


def subquotient(m: GradedModule, z: dict[int, np.ndarray], b: dict[int, np.ndarray],
                lo: int, hi: int, bounded_below: bool, bounded_above: bool,
                name: str = "", algebra: GradedAlgebra | None = None, side: str | None = None) -> GradedModule:
    """Module ``Z/B`` where ``B <= Z <= M`` are stable, vertex-homogeneous column spans.

    ``z[d]`` / ``b[d]`` are matrices whose columns are each supported on one
    vertex.  Missing keys in ``b`` mean zero; missing keys in ``z`` mean all of ``M_d``.
    """
    f = m.field
    reps, tags = {}, {}
    for d in range(lo, hi + 1):
        n = m.dim(d)
        tg = m.tags(d)
        zd = z.get(d)
        if zd is None:
            zd = f.eye(n)
        bd = b.get(d, f.zeros((n, 0)))
        zv, bv = _column_vertices(zd, tg), _column_vertices(bd, tg)
        cols, ctag = [], []
        for v in range(m.algebra.vertex_count):
            zs = zd[:, zv == v]
            if zs.shape[1] == 0:
                continue
            bs = bd[:, bv == v]
            keep = complement_columns(bs, zs, f)
            for j in keep:
                cols.append(zs[:, j])
                ctag.append(v)
        reps[d] = np.stack(cols, axis=1) if cols else f.zeros((n, 0))
        tags[d] = np.array(ctag, dtype=np.int64)
    act1 = {}
    n1 = m.algebra.dim(1) if hi > lo else 0
    for d in range(lo, hi):
        r0, r1 = reps[d], reps[d + 1]
        if r0.shape[1] == 0 or r1.shape[1] == 0:
            act1[d] = f.zeros((n1, r1.shape[1], r0.shape[1]))
            continue
        a = m.act(1, d)
        imgs = f.reduce(np.tensordot(a, r0, axes=([2], [0])))          # g n_{d+1} c
        rhs = imgs.transpose(1, 0, 2).reshape(imgs.shape[1], imgs.shape[0] * imgs.shape[2])
        bd = b.get(d + 1, f.zeros((m.dim(d + 1), 0)))
        basis = np.concatenate([bd, r1], axis=1)
        x = solve(basis, rhs, f)
        if x is None:
            raise ValueError("subquotient data is not stable under the action")
        x = x[bd.shape[1]:].reshape(r1.shape[1], n1, r0.shape[1]).transpose(1, 0, 2)
        act1[d] = np.ascontiguousarray(x)
    out = GradedModule(algebra or m.algebra, side or m.side, lo, hi, tags, act1,
                       bounded_below, bounded_above, name)
    out.reps = reps
    return out


def _homogeneous_image(cols: np.ndarray, tags: np.ndarray, f: Field, nverts: int) -> np.ndarray:
    vs = _column_vertices(cols, tags)
    parts = [image_basis(cols[:, vs == v], f) for v in range(nverts) if np.any(vs == v)]
    parts = [p for p in parts if p.shape[1]]
    return np.concatenate(parts, axis=1) if parts else f.zeros((cols.shape[0], 0))


def radical_spans(m: GradedModule) -> dict[int, np.ndarray]:
    f = m.field
    out = {}
    start = m.lo if m.bounded_below else m.lo + 1
    for d in range(start, m.hi + 1):
        n = m.dim(d)
        if d - 1 < m.lo or m.dim(d - 1) == 0:
            out[d] = f.zeros((n, 0))
            continue
        a = m.act(1, d - 1)
        cols = a.transpose(1, 0, 2).reshape(n, a.shape[0] * a.shape[2])
        out[d] = _homogeneous_image(cols, m.tags(d), f, m.algebra.vertex_count)
    return out


def radical(m: GradedModule) -> GradedModule:
    b = radical_spans(m)
    lo = min(b) if b else m.lo
    return subquotient(m, b, {}, lo, m.hi, m.bounded_below, m.bounded_above, f"rad({m.name})")


def top(m: GradedModule) -> GradedModule:
    if not m.bounded_below:
        raise WindowError("top needs a module known to vanish in low degrees")
    return subquotient(m, {}, radical_spans(m), m.lo, m.hi, True, m.bounded_above, f"top({m.name})")


def submodule_generated(m: GradedModule, gens: dict[int, np.ndarray]) -> dict[int, np.ndarray]:
    """Degree-wise spans of the submodule generated by homogeneous columns."""
    f = m.field
    span = {}
    for d in range(m.lo, m.hi + 1):
        n = m.dim(d)
        parts = []
        if d - 1 in span and span[d - 1].shape[1] and n:
            imgs = f.reduce(np.tensordot(m.act(1, d - 1), span[d - 1], axes=([2], [0])))
            parts.append(imgs.transpose(1, 0, 2).reshape(n, imgs.shape[0] * imgs.shape[2]))
        if d in gens:
            parts.append(gens[d])
        cols = np.concatenate(parts, axis=1) if parts else f.zeros((n, 0))
        span[d] = _homogeneous_image(cols, m.tags(d), f, m.algebra.vertex_count)
    return span


def quotient(m: GradedModule, gens: dict[int, np.ndarray], name: str = "") -> GradedModule:
    return subquotient(m, {}, submodule_generated(m, gens), m.lo, m.hi,
                       m.bounded_below, m.bounded_above, name or f"{m.name}/N")


# -- Hom ----------------------------------------------------------------------

def hom_space(m: GradedModule, n: GradedModule, k: int) -> list[GradedMap]:
    """Basis of degree-``k`` homomorphisms ``M -> N``; ``M`` must have finite length."""
    if m.algebra is not n.algebra:
        raise ValueError("modules over different algebras")
    if not m.is_finite_length():
        raise WindowError("hom_space needs a source known to be finite length")
    f = m.field
    degs = list(range(m.lo, m.hi + 1))
    for d in degs:
        if m.dim(d) and not n.known(d + k):
            raise WindowError(f"target unknown in degree {d + k}")
    # unknowns: entries (r, c) of f_d with matching vertex tags
    var = {}
    count = 0
    for d in degs:
        tm, tn = m.tags(d), n.tags(d + k)
        rr, cc = np.nonzero(tn[:, None] == tm[None, :])
        var[d] = (rr, cc, count)
        count += len(rr)
    rows = []
    n1 = m.algebra.dim(1)
    for d in degs[:-1]:
        if m.dim(d) == 0:
            continue
        am, an = m.act(1, d), n.act(1, d + k)
        rr0, cc0, off0 = var[d]
        rr1, cc1, off1 = var[d + 1]
        for g in range(n1):
            # f_{d+1} am[g] - an[g] f_d = 0, entry (p, q) for p in N_{d+1+k}, q in M_d
            p_n, q_n = an.shape[1], am.shape[2]
            eq = f.zeros((p_n * q_n, count))
            for t, (r, c) in enumerate(zip(rr1, cc1)):
                # f_{d+1}[r, c] contributes am[g][c, q] to entry (r, q)
                eq[r * q_n + np.arange(q_n), off1 + t] += am[g][c, :]
            for t, (r, c) in enumerate(zip(rr0, cc0)):
                # -an[g][p, r] f_d[r, c] contributes to entry (p, c)
                eq[np.arange(p_n) * q_n + c, off0 + t] -= an[g][:, r]
            rows.append(f.reduce(eq))
    sys_ = np.concatenate(rows, axis=0) if rows else f.zeros((0, count))
    ker = kernel_basis(sys_, f)
    out = []
    for j in range(ker.shape[1]):
        blocks = {}
        for d in degs:
            rr, cc, off = var[d]
            blk = f.zeros((n.dim(d + k), m.dim(d)))
            for t, (r, c) in enumerate(zip(rr, cc)):
                blk[r, c] = ker[off + t, j]
            blocks[d] = blk
        out.append(GradedMap(m, n, k, blocks))
    return out


def hom_dim(m: GradedModule, n: GradedModule, k: int) -> int:
    return len(hom_space(m, n, k))


# -- random sampling ------------------------------------------------------------

def random_module(a: GradedAlgebra, rng: np.random.Generator, max_total: int = 12,
                  finite: bool = True, max_gens: int = 2, max_relations: int = 2,
                  side: str = "left") -> GradedModule:
    """Random quotient of a small free module by random homogeneous relations.

    With ``finite=True`` the result is also cut off above a random degree and has
    total dimension between 1 and ``max_total``.
    """
    alg = a if side == "left" else a.opposite()
    f = alg.field
    for _ in range(200):
        ng = int(rng.integers(1, max_gens + 1))
        gens = [(int(rng.integers(0, alg.vertex_count)), int(rng.integers(0, 2))) for _ in range(ng)]
        lo = min(d for _, d in gens)
        parts = [shift(projective(a, v + 1, side), -d) for v, d in gens]
        free = direct_sum(parts, name="F")
        rel_gens: dict[int, list] = {}
        for _ in range(int(rng.integers(0, max_relations + 1))):
            d = int(rng.integers(lo + 1, min(free.hi, lo + 3) + 1)) if free.hi > lo else lo
            v = int(rng.integers(0, alg.vertex_count))
            sl = free.slots(d, v)
            if sl.size == 0:
                continue
            vec = f.zeros(free.dim(d))
            vec[sl] = f.random(rng, sl.size)
            rel_gens.setdefault(d, []).append(vec)
        gmat = {d: np.stack(v, axis=1) for d, v in rel_gens.items()}
        mod = quotient(free, gmat, name="R")
        if finite:
            cut = int(rng.integers(lo, lo + 3))
            if not mod.known(cut):
                continue
            mod = truncate_above(mod, cut)
            if not (1 <= mod.total_dim() <= max_total):
                continue
        elif mod.dim(lo) == 0:
            continue
        mod.name = "random"
        return mod
    raise RuntimeError("could not sample a module within the size limit")
