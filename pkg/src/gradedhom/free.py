"""Finitely generated graded free modules and the maps between them.

A free module is a list of generators ``(vertex, degree)``; generator ``(v, d)``
spans a copy of ``A e_v[-d]``.  Its degree-``e`` component is the concatenation,
over generators, of the basis of ``A_{e-d}`` restricted to paths starting at ``v``.
A map is stored by the images of generators: ``images[g][h]`` is the coordinate
vector (over all of ``A_{d_g - d_h}``) of the coefficient of generator ``h``.
"""

from __future__ import annotations

import numpy as np

from .algebra import GradedAlgebra, WindowError
from .module import GradedModule, LazyBlocks


class FreeModule:
    def __init__(self, algebra: GradedAlgebra, gens: list[tuple[int, int]] | None = None):
        self.algebra = algebra
        self.gens: list[tuple[int, int]] = list(gens or [])

    def __repr__(self):
        return f"FreeModule({len(self.gens)} gens, degrees={sorted(d for _, d in self.gens)})"

    def add(self, v: int, d: int) -> int:
        self.gens.append((v, d))
        return len(self.gens) - 1

    def blocks(self, e: int) -> list[tuple[int, np.ndarray, int]]:
        """``(generator, basis indices into A_{e-d}, offset)`` for the degree-``e`` component."""
        out, off = [], 0
        a = self.algebra
        for g, (v, d) in enumerate(self.gens):
            k = e - d
            if k < 0:
                continue
            idx = a.src_idx(k, v)
            if idx.size:
                out.append((g, idx, off))
                off += idx.size
        return out

    def dim(self, e: int) -> int:
        return sum(idx.size for _, idx, _ in self.blocks(e))

    def tags(self, e: int) -> np.ndarray:
        parts = [self.algebra.tags(e - self.gens[g][1])[idx, 1] for g, idx, _ in self.blocks(e)]
        return np.concatenate(parts).astype(np.int64) if parts else np.zeros(0, dtype=np.int64)

    def known(self, e: int) -> bool:
        return all(self.algebra.known(e - d) or e < d for _, d in self.gens)

    def min_degree(self) -> int | None:
        return min((d for _, d in self.gens), default=None)

    def max_degree(self) -> int | None:
        return max((d for _, d in self.gens), default=None)

    def _act1_block(self, e: int) -> np.ndarray:
        a, f = self.algebra, self.algebra.field
        src, dst = self.blocks(e), {g: (idx, off) for g, idx, off in self.blocks(e + 1)}
        blk = f.zeros((a.dim(1), self.dim(e + 1), self.dim(e)))
        for g, idx, off in src:
            if g not in dst:
                continue
            idx2, off2 = dst[g]
            c = a.mult(1, e - self.gens[g][1])[:, idx][:, :, idx2]      # g y z
            blk[:, off2:off2 + idx2.size, off:off + idx.size] = c.transpose(0, 2, 1)
        return blk

    def split(self, e: int, vec: np.ndarray) -> dict[int, np.ndarray]:
        """Coordinates of a degree-``e`` vector as ``{generator: full A_{e-d} vector}``."""
        a, f = self.algebra, self.algebra.field
        out = {}
        for g, idx, off in self.blocks(e):
            part = vec[off:off + idx.size]
            if np.any(part != 0):
                full = f.zeros(a.dim(e - self.gens[g][1]))
                full[idx] = part
                out[g] = full
        return out

    def as_module(self, lo: int, hi: int, side: str = "left", name: str = "") -> GradedModule:
        """The window ``[lo, hi]`` as a module; action blocks are built on demand."""
        a = self.algebra
        tags = {e: self.tags(e) for e in range(lo, hi + 1)}
        act1 = LazyBlocks(self._act1_block, range(lo, hi))
        mind = self.min_degree()
        bb = mind is None or lo <= mind
        return GradedModule(a, side, lo, hi, tags, act1, bb, a.finite or not self.gens, name)


class FreeMap:
    """Degree-0 map between free modules given by generator images."""

    def __init__(self, source: FreeModule, target: FreeModule, images: list[dict[int, np.ndarray]] | None = None):
        self.source = source
        self.target = target
        self.images: list[dict[int, np.ndarray]] = list(images or [])
        self._cache: dict[tuple[int, int, int], np.ndarray] = {}

    def matrix(self, e: int) -> np.ndarray:
        key = (e, len(self.source.gens), len(self.target.gens))
        if key in self._cache:
            return self._cache[key]
        a, f = self.source.algebra, self.source.algebra.field
        tblocks = {h: (idx, off) for h, idx, off in self.target.blocks(e)}
        out = f.zeros((self.target.dim(e), self.source.dim(e)))
        for g, idx, off in self.source.blocks(e):
            dg = self.source.gens[g][1]
            for h, c in self.images[g].items():
                if h not in tblocks:
                    continue
                dh = self.target.gens[h][1]
                cm = a.mult(e - dg, dg - dh)                       # y z w
                blk = np.tensordot(cm, c, axes=([1], [0]))          # y w
                idx2, off2 = tblocks[h]
                out[off2:off2 + idx2.size, off:off + idx.size] = blk[idx][:, idx2].T
        out = f.reduce(out)
        self._cache[key] = out
        return out

    def forget(self, e: int | None = None) -> None:
        """Drop cached matrices (of degree ``e``, or all)."""
        if e is None:
            self._cache.clear()
        else:
            for key in [k for k in self._cache if k[0] == e]:
                del self._cache[key]


def augmentation_matrix(p0: FreeModule, images: list[np.ndarray], m: GradedModule, e: int) -> np.ndarray:
    """Matrix of ``P_0 -> M`` in degree ``e``; ``images[g]`` lies in ``M_{d_g}``."""
    f = m.field
    out = f.zeros((m.dim(e), p0.dim(e)))
    for g, idx, off in p0.blocks(e):
        dg = p0.gens[g][1]
        act = m.act(e - dg, dg)                                     # y n_e n_dg
        blk = np.tensordot(act, images[g], axes=([2], [0]))         # y n_e
        out[:, off:off + idx.size] = blk[idx].T
    return f.reduce(out)


def require_known(free: FreeModule, e: int):
    if not free.known(e):
        raise WindowError(f"free module unknown in degree {e}")
