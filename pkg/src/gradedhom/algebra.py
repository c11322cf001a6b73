"""Quiver presentations compiled into truncated graded algebras.

Conventions
-----------
A basis element is a path tagged ``(source, target)``; it lies in
``e_target * A * e_source``.  Multiplication is composition of functions:
``x * y`` is nonzero only when ``target(y) == source(x)`` and corresponds to
walking ``y`` first, then ``x``.  Paths in presentations are written as
arrow-name sequences in walking order, so the path ``a.b`` is the algebra
element ``b * a``.  Left modules are therefore covariant representations and
``A e_i`` (paths starting at ``i``) is the projective cover of the simple at
``i``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from math import comb

import numpy as np

from .exact_linalg import Field, rref, solve


class WindowError(ValueError):
    """A computation needed data outside a certified degree window."""


class PresentationError(ValueError):
    """An invalid quiver presentation."""


class NotGeneratedInDegreeOne(ValueError):
    """The algebra has basis elements that are not products of degree-1 elements."""


Path = tuple[str, ...]


@dataclass
class QuiverPresentation:
    vertex_count: int
    arrows: list[tuple[str, int, int]]
    relations: list[list[tuple[object, Path]]]
    field: Field = dc_field(default_factory=Field.rationals)
    name: str = ""

    def __post_init__(self):
        names = [a[0] for a in self.arrows]
        if len(set(names)) != len(names):
            raise PresentationError(f"duplicate arrow names in {names}")
        for nm, s, t in self.arrows:
            if not (0 <= s < self.vertex_count and 0 <= t < self.vertex_count):
                raise PresentationError(f"arrow {nm} has a vertex out of range")

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a[0]: i for i, a in enumerate(self.arrows)}

    def path_ends(self, path: Path) -> tuple[int, int]:
        idx = self.arrow_index
        for nm in path:
            if nm not in idx:
                raise PresentationError(f"unknown arrow {nm!r} in path {'.'.join(path)}")
        for a, b in zip(path, path[1:]):
            if self.arrows[idx[a]][2] != self.arrows[idx[b]][1]:
                raise PresentationError(f"path {'.'.join(path)} is not composable at {a}.{b}")
        return self.arrows[idx[path[0]]][1], self.arrows[idx[path[-1]]][2]

    def validate(self):
        for rel in self.relations:
            if not rel:
                continue
            lengths = {len(p) for _, p in rel}
            ends = {self.path_ends(p) for _, p in rel}
            if len(lengths) != 1 or min(lengths) < 2:
                raise PresentationError(f"inhomogeneous relation {format_relation(rel)}")
            if len(ends) != 1:
                raise PresentationError(f"relation {format_relation(rel)} mixes parallel classes")


def format_relation(rel) -> str:
    parts = []
    for c, p in rel:
        parts.append(f"{c}*{'.'.join(p)}")
    return " + ".join(parts) if parts else "0"


class GradedAlgebra:
    """Per-degree bases with vertex tags and structure constants up to ``dmax``."""

    def __init__(self, field: Field, vertex_count: int, dmax: int,
                 tags: list[list[tuple[int, int]]], labels: list[list[str]],
                 mult: dict[tuple[int, int], np.ndarray], name: str = ""):
        self.field = field
        self.vertex_count = vertex_count
        self.dmax = dmax
        self._tags = [np.array(t, dtype=np.int64).reshape(-1, 2) for t in tags]
        self.labels = labels
        self._mult = mult
        self.name = name
        self.finite = any(len(t) == 0 for t in tags[1:])
        self._op: GradedAlgebra | None = None
        self._fact: dict[int, np.ndarray] = {}
        self._src: dict[tuple[int, int], np.ndarray] = {}
        self.tensor_info = None
        self.cache: dict = {}
        # assumed degree gap between consecutive syzygy generators (relation length - 1)
        self.syzygy_step = 1

    def __repr__(self):
        return f"GradedAlgebra({self.name or '?'}, dims={self.dims()}, {self.field})"

    # -- degree bookkeeping -------------------------------------------------
    def known(self, d: int) -> bool:
        return d >= 0 and (d <= self.dmax or self.finite)

    def dim(self, d: int) -> int:
        if d < 0:
            return 0
        if d <= self.dmax:
            return len(self._tags[d])
        if self.finite:
            return 0
        raise WindowError(f"degree {d} beyond algebra bound {self.dmax}")

    def dims(self) -> tuple[int, ...]:
        return tuple(len(t) for t in self._tags)

    @property
    def top_degree(self) -> int | None:
        """Largest nonzero degree when the algebra is known to be finite-dimensional."""
        if not self.finite:
            return None
        return max(d for d in range(self.dmax + 1) if len(self._tags[d]))

    def tags(self, d: int) -> np.ndarray:
        if d < 0 or (d > self.dmax and self.finite):
            return np.zeros((0, 2), dtype=np.int64)
        if d > self.dmax:
            raise WindowError(f"degree {d} beyond algebra bound {self.dmax}")
        return self._tags[d]

    def src_idx(self, d: int, v: int) -> np.ndarray:
        key = (d, v)
        if key not in self._src:
            t = self.tags(d)
            self._src[key] = np.flatnonzero(t[:, 0] == v) if len(t) else np.zeros(0, dtype=np.int64)
        return self._src[key]

    def mult(self, a: int, b: int) -> np.ndarray:
        """Array ``C[x, y, z]``: coefficient of basis ``z`` in ``x * y``."""
        if a < 0 or b < 0:
            raise WindowError("negative degree")
        if (a, b) in self._mult:
            return self._mult[(a, b)]
        if a + b > self.dmax and self.finite:
            return self.field.zeros((self.dim(a), self.dim(b), 0))
        raise WindowError(f"product of degrees {a}+{b} beyond algebra bound {self.dmax}")

    def product(self, a: int, x: np.ndarray, b: int, y: np.ndarray) -> np.ndarray:
        """Product of coefficient vectors ``x`` (degree a) and ``y`` (degree b)."""
        c = self.mult(a, b)
        out = np.tensordot(np.tensordot(x, c, axes=([0], [0])), y, axes=([0], [0]))
        return self.field.reduce(out)

    # -- derived structure --------------------------------------------------
    def opposite(self) -> "GradedAlgebra":
        if self._op is None:
            mult = {(a, b): np.ascontiguousarray(c.transpose(1, 0, 2))
                    for (b, a), c in self._mult.items()}
            tags = [[(int(t), int(s)) for s, t in tg] for tg in self._tags]
            op = GradedAlgebra(self.field, self.vertex_count, self.dmax, tags,
                               self.labels, mult, name=f"({self.name})^op")
            op._op = self
            op.finite = self.finite
            op.syzygy_step = self.syzygy_step
            self._op = op
        return self._op

    def factorization(self, k: int) -> np.ndarray:
        """``F[x, g, y]`` with ``x = sum F[x,g,y] g*y`` for ``g`` of degree 1."""
        if k not in self._fact:
            n1, nk1, nk = self.dim(1), self.dim(k - 1), self.dim(k)
            if nk == 0:
                self._fact[k] = self.field.zeros((0, n1, nk1))
            else:
                prod = self.mult(1, k - 1).reshape(n1 * nk1, nk)
                sol = solve(prod.T.copy(), self.field.eye(nk), self.field)
                if sol is None:
                    raise NotGeneratedInDegreeOne(f"degree {k} of {self.name} is not generated by degree 1")
                self._fact[k] = np.ascontiguousarray(sol.T.reshape(nk, n1, nk1))
        return self._fact[k]

    def check_associativity(self) -> bool:
        f = self.field
        for a, b, c in itertools.product(range(self.dmax + 1), repeat=3):
            if a + b + c > self.dmax:
                continue
            ab = self.mult(a, b)
            left = np.tensordot(ab, self.mult(a + b, c), axes=([2], [0]))   # x y z w
            bc = self.mult(b, c)
            right = np.tensordot(self.mult(a, b + c), bc, axes=([1], [2]))  # x w y z
            right = right.transpose(0, 2, 3, 1)
            if np.any(f.reduce(left - right) != 0):
                return False
        return True

    def structure_signature(self):
        """Hashable summary of the full multiplication table (for involution tests)."""
        return tuple(sorted((k, v.shape, tuple(v.ravel().tolist())) for k, v in self._mult.items()))


# -- compilation ------------------------------------------------------------

def _paths_by_length(p: QuiverPresentation, dmax: int) -> list[list[Path]]:
    names = sorted(a[0] for a in p.arrows)
    info = {a[0]: (a[1], a[2]) for a in p.arrows}
    out: list[list[Path]] = [[]]
    out.append([(n,) for n in names] if dmax >= 1 else [])
    for _ in range(2, dmax + 1):
        nxt = []
        for q in out[-1]:
            t = info[q[-1]][1]
            for n in names:
                if info[n][0] == t:
                    nxt.append(q + (n,))
        nxt.sort()
        out.append(nxt)
    return out


def build_algebra(p: QuiverPresentation, dmax: int) -> GradedAlgebra:
    """Compile ``kQ/I`` degree by degree up to ``dmax``."""
    if dmax < 0:
        raise ValueError("dmax must be nonnegative")
    p.validate()
    f = p.field
    info = {a[0]: (a[1], a[2]) for a in p.arrows}
    paths = _paths_by_length(p, dmax)
    pos = [{q: i for i, q in enumerate(ps)} for ps in paths]
    rels_by_len: dict[int, list] = {}
    for rel in p.relations:
        if rel:
            rels_by_len.setdefault(len(rel[0][1]), []).append(rel)

    # ideal I_d as rref rows over paths of length d; normal forms of paths
    ideal_rows = [None, f.zeros((0, len(paths[1]) if dmax >= 1 else 0))]
    basis_paths: list[list[Path]] = [[], list(paths[1]) if dmax >= 1 else []]
    normal: list[np.ndarray] = [None, f.eye(len(paths[1])) if dmax >= 1 else None]
    for d in range(2, dmax + 1):
        n = len(paths[d])
        rows = []
        for rel in rels_by_len.get(d, []):
            r = f.zeros(n)
            for c, q in rel:
                r[pos[d][q]] = f.reduce(r[pos[d][q]] + f.scalar(c))
            rows.append(r)
        prev = ideal_rows[d - 1]
        if prev.shape[0]:
            for nm in sorted(info):
                s, t = info[nm]
                app = np.zeros((len(paths[d - 1]),), dtype=np.int64) - 1
                pre = np.zeros((len(paths[d - 1]),), dtype=np.int64) - 1
                for i, q in enumerate(paths[d - 1]):
                    if info[q[-1]][1] == s:
                        app[i] = pos[d][q + (nm,)]
                    if info[q[0]][0] == t:
                        pre[i] = pos[d][(nm,) + q]
                for mapping in (app, pre):
                    sel = np.flatnonzero(mapping >= 0)
                    if sel.size == 0:
                        continue
                    block = f.zeros((prev.shape[0], n))
                    block[:, mapping[sel]] = prev[:, sel]
                    rows.extend(list(block))
        if rows:
            mat = np.array(rows, dtype=f.dtype).reshape(len(rows), n)
            r, piv = rref(mat, f)
            r = r[: len(piv)]
        else:
            r, piv = f.zeros((0, n)), []
        ideal_rows.append(r)
        pivset = set(piv)
        nonpiv = [c for c in range(n) if c not in pivset]
        basis_paths.append([paths[d][c] for c in nonpiv])
        nf = f.zeros((n, len(nonpiv)))
        for j, c in enumerate(nonpiv):
            nf[c, j] = 1
        for i, c in enumerate(piv):
            nf[c] = f.reduce(-r[i, nonpiv])
        normal.append(nf)

    tags: list[list[tuple[int, int]]] = [[(v, v) for v in range(p.vertex_count)]]
    labels: list[list[str]] = [[f"e{v + 1}" for v in range(p.vertex_count)]]
    for d in range(1, dmax + 1):
        tags.append([(info[q[0]][0], info[q[-1]][1]) for q in basis_paths[d]])
        labels.append([".".join(q) for q in basis_paths[d]])

    mult: dict[tuple[int, int], np.ndarray] = {}
    for a in range(dmax + 1):
        for b in range(dmax + 1 - a):
            na, nb, nab = len(tags[a]), len(tags[b]), len(tags[a + b])
            c = f.zeros((na, nb, nab))
            for i, (sx, tx) in enumerate(tags[a]):
                for j, (sy, ty) in enumerate(tags[b]):
                    if ty != sx:
                        continue
                    if a == 0:
                        c[i, j, j] = 1
                    elif b == 0:
                        c[i, j, i] = 1
                    else:
                        q = basis_paths[b][j] + basis_paths[a][i]
                        c[i, j] = normal[a + b][pos[a + b][q]]
            mult[(a, b)] = c
    out = GradedAlgebra(f, p.vertex_count, dmax, tags, labels, mult, name=p.name)
    out.syzygy_step = max([len(r[0][1]) - 1 for r in p.relations if r] + [1])
    return out


def tensor_algebra(a: GradedAlgebra, b: GradedAlgebra) -> GradedAlgebra:
    """``a (x)_k b`` with unsigned multiplication; vertices are pairs ``(i, i')``."""
    if a.field != b.field:
        raise ValueError(f"field mismatch {a.field} vs {b.field}")
    f = a.field
    dmax = min(a.dmax, b.dmax)
    mb = b.vertex_count
    splits: list[list[tuple[int, int]]] = []   # per degree: (p, q) blocks in order
    offsets: list[dict[tuple[int, int], int]] = []
    tags, labels = [], []
    for d in range(dmax + 1):
        sp, off, tg, lb = [], {}, [], []
        o = 0
        for p in range(d + 1):
            q = d - p
            off[(p, q)] = o
            sp.append((p, q))
            for ix, (sa, ta) in enumerate(a.tags(p)):
                for iy, (sb, tb) in enumerate(b.tags(q)):
                    tg.append((int(sa) * mb + int(sb), int(ta) * mb + int(tb)))
                    lb.append(f"{a.labels[p][ix]}(x){b.labels[q][iy]}")
            o += a.dim(p) * b.dim(q)
        splits.append(sp)
        offsets.append(off)
        tags.append(tg)
        labels.append(lb)
    mult = {}
    for da in range(dmax + 1):
        for db in range(dmax + 1 - da):
            c = f.zeros((len(tags[da]), len(tags[db]), len(tags[da + db])))
            for (p, q) in splits[da]:
                for (p2, q2) in splits[db]:
                    ca, cb = a.mult(p, p2), b.mult(q, q2)
                    if ca.size == 0 or cb.size == 0:
                        continue
                    blk = np.multiply.outer(ca, cb).transpose(0, 3, 1, 4, 2, 5)
                    s0, s1, s2 = ca.shape[0] * cb.shape[0], ca.shape[1] * cb.shape[1], ca.shape[2] * cb.shape[2]
                    blk = f.reduce(blk.reshape(s0, s1, s2))
                    r0 = offsets[da][(p, q)]
                    r1 = offsets[db][(p2, q2)]
                    r2 = offsets[da + db][(p + p2, q + q2)]
                    c[r0:r0 + s0, r1:r1 + s1, r2:r2 + s2] = blk
            mult[(da, db)] = c
    out = GradedAlgebra(f, a.vertex_count * mb, dmax, tags, labels, mult,
                        name=f"{a.name} (x) {b.name}")
    out.tensor_info = (a, b, splits, offsets)
    out.syzygy_step = max(a.syzygy_step, b.syzygy_step)
    return out


def opposite(a: GradedAlgebra) -> GradedAlgebra:
    return a.opposite()


# -- example families -------------------------------------------------------

def polynomial_presentation(n: int, field: Field) -> QuiverPresentation:
    if n < 1:
        raise ValueError("need at least one variable")
    names = [f"x{i + 1}" for i in range(n)]
    rels = [[(1, (names[i], names[j])), (-1, (names[j], names[i]))]
            for i in range(n) for j in range(i + 1, n)]
    return QuiverPresentation(1, [(nm, 0, 0) for nm in names], rels, field, f"poly({n})")


def exterior_presentation(n: int, field: Field) -> QuiverPresentation:
    if n < 1:
        raise ValueError("need at least one variable")
    names = [f"y{i + 1}" for i in range(n)]
    rels = [[(1, (nm, nm))] for nm in names]
    rels += [[(1, (names[i], names[j])), (1, (names[j], names[i]))]
             for i in range(n) for j in range(i + 1, n)]
    return QuiverPresentation(1, [(nm, 0, 0) for nm in names], rels, field, f"ext({n})")


def polynomial(n: int, field: Field, dmax: int) -> GradedAlgebra:
    return build_algebra(polynomial_presentation(n, field), dmax)


def exterior(n: int, field: Field, dmax: int) -> GradedAlgebra:
    return build_algebra(exterior_presentation(n, field), dmax)


def path_algebra(vertex_count: int, arrows, field: Field, dmax: int, name: str = "") -> GradedAlgebra:
    return build_algebra(QuiverPresentation(vertex_count, list(arrows), [], field, name or "kQ"), dmax)


def ground_field(field: Field, dmax: int = 0) -> GradedAlgebra:
    return build_algebra(QuiverPresentation(1, [], [], field, "k"), dmax)


def _star(name: str) -> str:
    return name + "*"


def preprojective_presentation(vertex_count: int, arrows, field: Field) -> QuiverPresentation:
    """Doubled quiver with ``sum_out a* a = sum_in a a*`` at every vertex."""
    arrows = list(arrows)
    for nm, s, t in arrows:
        if s == t:
            raise PresentationError(f"loop {nm} not allowed in a preprojective quiver")
    doubled = arrows + [(_star(nm), t, s) for nm, s, t in arrows]
    rels = []
    for v in range(vertex_count):
        rel = []
        for nm, s, t in arrows:
            if s == v:
                rel.append((1, (nm, _star(nm))))     # a*.a as element: walk a then a*
            if t == v:
                rel.append((-1, (_star(nm), nm)))    # a.a*: walk a* then a
        if rel:
            rels.append(rel)
    return QuiverPresentation(vertex_count, doubled, rels, field, "preproj")


def preprojective(vertex_count: int, arrows, field: Field, dmax: int) -> GradedAlgebra:
    return build_algebra(preprojective_presentation(vertex_count, arrows, field), dmax)


def trivial_extension_presentation(vertex_count: int, arrows, field: Field) -> QuiverPresentation:
    """Doubled quiver presenting ``kQ |x D(kQ)`` for a quiver of sinks and sources."""
    arrows = list(arrows)
    sources = {s for _, s, _ in arrows}
    targets = {t for _, _, t in arrows}
    if sources & targets:
        bad = sorted(sources & targets)
        raise PresentationError(f"vertices {[b + 1 for b in bad]} are neither sink nor source")
    doubled = arrows + [(_star(nm), t, s) for nm, s, t in arrows]
    rels = []
    for v in range(vertex_count):
        out = [nm for nm, s, _ in arrows if s == v]
        inc = [nm for nm, _, t in arrows if t == v]
        # at a source: walk b then a*; all loops a.a* agree, mixed ones vanish
        for i, a in enumerate(out):
            for b in out:
                if b != a and dict((x[0], x[2]) for x in arrows)[a] == dict((x[0], x[2]) for x in arrows)[b]:
                    rels.append([(1, (b, _star(a)))])
            if i:
                rels.append([(1, (a, _star(a))), (-1, (out[0], _star(out[0])))])
        for i, a in enumerate(inc):
            for b in inc:
                if b != a and dict((x[0], x[1]) for x in arrows)[a] == dict((x[0], x[1]) for x in arrows)[b]:
                    rels.append([(1, (_star(b), a))])
            if i:
                rels.append([(1, (_star(a), a)), (-1, (_star(inc[0]), inc[0]))])
    pres = QuiverPresentation(vertex_count, doubled, rels, field, "trivext")
    info = {a[0]: (a[1], a[2]) for a in doubled}
    names = sorted(info)
    for x, y, z in itertools.product(names, repeat=3):
        if info[x][1] == info[y][0] and info[y][1] == info[z][0]:
            rels.append([(1, (x, y, z))])
    return pres


def trivial_extension(vertex_count: int, arrows, field: Field, dmax: int) -> GradedAlgebra:
    """``kQ |x D(kQ)`` graded in degrees 0, 1, 2."""
    arrows = list(arrows)
    if arrows:
        alg = build_algebra(trivial_extension_presentation(vertex_count, arrows, field), dmax)
        alg.name = "trivext"
        return alg
    # no arrows: A = kQ_0 + D(kQ_0) with the dual part in degree 2, not generated in degree 1
    m = vertex_count
    tags = [[(v, v) for v in range(m)], [], [(v, v) for v in range(m)]][: dmax + 1]
    tags += [[] for _ in range(len(tags), dmax + 1)]
    labels = [[f"e{v + 1}" for v in range(m)], [], [f"e{v + 1}^*" for v in range(m)]][: dmax + 1]
    labels += [[] for _ in range(len(labels), dmax + 1)]
    mult = {}
    for a in range(dmax + 1):
        for b in range(dmax + 1 - a):
            c = field.zeros((len(tags[a]), len(tags[b]), len(tags[a + b])))
            if a == 0 or b == 0:
                for i in range(len(tags[a])):
                    for j in range(len(tags[b])):
                        if i == j:
                            c[i, j, j if a == 0 else i] = 1
            mult[(a, b)] = c
    out = GradedAlgebra(field, m, dmax, tags, labels, mult, name="trivext")
    out.finite = dmax >= 3
    out.syzygy_step = 2
    return out


def polynomial_dim(n: int, d: int) -> int:
    return comb(n + d - 1, d)


def exterior_dim(n: int, d: int) -> int:
    return comb(n, d)
