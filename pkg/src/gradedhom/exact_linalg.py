"""Exact dense linear algebra over the rationals and prime fields.

Matrices are numpy arrays: ``int64`` residues for a prime field, ``object``
arrays of :class:`fractions.Fraction` (or ``int``) for the rationals.  The
functions here take the raw array plus a :class:`Field`; :class:`Matrix` is a
small immutable wrapper for callers that want the field carried along.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numba import njit
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components


class ShapeError(ValueError):
    """Raised when matrix shapes are incompatible."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The rationals (``p is None``) or the prime field of order ``p``."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None and not _is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    @property
    def dtype(self):
        return np.int64 if self.p is not None else object

    def __str__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    def scalar(self, x):
        if self.p is not None:
            if isinstance(x, Fraction):
                return (x.numerator % self.p) * pow(x.denominator % self.p, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.p is not None:
            return pow(int(x), -1, self.p)
        return 1 / Fraction(x)

    def array(self, rows, shape=None) -> np.ndarray:
        if self.p is not None:
            a = np.array(rows, dtype=object)
            if shape is not None:
                a = a.reshape(shape)
            out = np.zeros(a.shape, dtype=np.int64)
            for idx, v in np.ndenumerate(a):
                out[idx] = self.scalar(v)
            return out
        a = np.array(rows, dtype=object)
        if shape is not None:
            a = a.reshape(shape)
        out = np.empty(a.shape, dtype=object)
        for idx, v in np.ndenumerate(a):
            out[idx] = Fraction(v)
        return out

    def zeros(self, shape) -> np.ndarray:
        if self.p is not None:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = 1 if self.p is not None else Fraction(1)
        return out

    def reduce(self, a: np.ndarray) -> np.ndarray:
        if self.p is not None:
            if a.dtype == np.int64 and a.size > 4096:
                out = np.array(a, order="C")
                _mod_kernel(out.reshape(-1), self.p)
                return out
            return np.mod(a, self.p)
        return a

    def random(self, rng: np.random.Generator, shape, low=-3, high=3) -> np.ndarray:
        vals = rng.integers(low, high + 1, size=shape)
        if self.p is not None:
            return np.mod(vals.astype(np.int64), self.p)
        return self.array(vals.tolist(), shape)


def matmul(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    if a.shape[-1] != b.shape[0]:
        raise ShapeError(f"cannot multiply {a.shape} by {b.shape}")
    if a.shape[-1] == 0:
        return field.zeros(a.shape[:-1] + b.shape[1:])
    if field.p is not None:
        # residues < p keep every partial sum far below 2**63 at desk scale
        return np.mod(a @ b, field.p)
    return a @ b


def transpose(a: np.ndarray) -> np.ndarray:
    return a.T.copy()


def hstack(blocks, field: Field, rows: int | None = None) -> np.ndarray:
    blocks = list(blocks)
    if not blocks:
        return field.zeros((rows or 0, 0))
    r = {b.shape[0] for b in blocks}
    if len(r) != 1:
        raise ShapeError(f"hstack row mismatch {sorted(r)}")
    return np.concatenate(blocks, axis=1)


def vstack(blocks, field: Field, cols: int | None = None) -> np.ndarray:
    blocks = list(blocks)
    if not blocks:
        return field.zeros((0, cols or 0))
    c = {b.shape[1] for b in blocks}
    if len(c) != 1:
        raise ShapeError(f"vstack column mismatch {sorted(c)}")
    return np.concatenate(blocks, axis=0)


def kronecker(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray:
    ra, ca = a.shape
    rb, cb = b.shape
    out = field.zeros((ra * rb, ca * cb))
    for i in range(ra):
        for j in range(ca):
            if a[i, j] != 0:
                out[i * rb:(i + 1) * rb, j * cb:(j + 1) * cb] = field.reduce(a[i, j] * b)
    return out


def rref(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form (unique, so independent of the pivoting order)."""
    if field.p is None and a.size > _SPLIT_SIZE:
        return _rref_split(a, field)
    return _rref_dense(a, field)


def _rref_split(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    # rows from different components have disjoint supports, so the RREF is the
    # union of the component RREFs sorted by pivot column
    rows, cols = a.shape
    out = field.zeros((rows, cols))
    found: list[tuple[int, np.ndarray, np.ndarray]] = []
    for ri, ci in _blocks(a):
        r, piv = _rref_dense(a[np.ix_(ri, ci)], field)
        for j, c in enumerate(piv):
            found.append((int(ci[c]), ci, r[j]))
    found.sort(key=lambda x: x[0])
    for j, (_, ci, row) in enumerate(found):
        out[j, ci] = row
    return out, [c for c, _, _ in found]


@njit(cache=True)
def _mod_kernel(flat, p):  # pragma: no cover - compiled
    for i in range(flat.size):
        v = flat[i]
        if v < 0 or v >= p:
            flat[i] = v % p


@njit(cache=True)
def _rref_kernel(m, p):  # pragma: no cover - compiled
    rows, cols = m.shape
    for i in range(rows):
        for j in range(cols):
            v = m[i, j]
            if v < 0 or v >= p:
                m[i, j] = v % p
    pivots = np.empty(min(rows, cols), dtype=np.int64)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(cols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        # inverse by Fermat
        inv, b, e = 1, m[r, c], p - 2
        while e:
            if e & 1:
                inv = inv * b % p
            b = b * b % p
            e >>= 1
        for j in range(c, cols):
            m[r, j] = m[r, j] * inv % p
        for i in range(rows):
            if i != r and m[i, c] != 0:
                f = m[i, c]
                for j in range(c, cols):
                    if m[r, j] != 0:
                        m[i, j] = (m[i, j] - f * m[r, j]) % p
        pivots[r] = c
        r += 1
    return pivots[:r]


def _rref_dense(a: np.ndarray, field: Field) -> tuple[np.ndarray, list[int]]:
    if field.p is not None:
        m = np.array(a, dtype=np.int64, order="C")
        piv = _rref_kernel(m, field.p)
        return m, [int(c) for c in piv]
    rows, cols = a.shape
    out = field.zeros((rows, cols))
    if a.size == 0:
        return out, []
    # all-zero rows and columns stay zero under row operations
    mask = a != 0
    live_r = np.flatnonzero(mask.any(axis=1))
    live_c = np.flatnonzero(mask.any(axis=0))
    m = a[np.ix_(live_r, live_c)].copy()
    rr = len(live_r)
    piv_local: list[int] = []
    r = 0
    p = field.p
    for c in range(len(live_c)):
        if r == rr:
            break
        nz = np.flatnonzero(m[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = field.inv(m[r, c])
        m[r] = m[r] * inv
        if p is not None:
            m[r] %= p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            upd = m[hit] - np.outer(col[hit], m[r])
            m[hit] = upd % p if p is not None else upd
        piv_local.append(c)
        r += 1
    out[np.ix_(np.arange(r), live_c)] = m[:r]
    return out, [int(live_c[c]) for c in piv_local]


def rank(a: np.ndarray, field: Field) -> int:
    if a.size == 0:
        return 0
    if field.p is None and a.size > _SPLIT_SIZE:
        return sum(_rank_dense(a[np.ix_(ri, ci)], field) for ri, ci in _blocks(a))
    return _rank_dense(a, field)


_SPLIT_SIZE = 4096


def _rank_dense(a: np.ndarray, field: Field) -> int:
    # eliminate along the shorter side
    if a.shape[0] > a.shape[1]:
        a = a.T
    return len(_rref_dense(a, field)[1])


def _blocks(a: np.ndarray) -> list[tuple[np.ndarray, np.ndarray]]:
    """Row and column index sets of the bipartite components of the support of ``a``."""
    rows, cols = a.shape
    r, c = np.nonzero(a)
    if r.size == 0:
        return []
    graph = coo_matrix((np.ones(r.size), (r, c + rows)), shape=(rows + cols, rows + cols))
    _, label = connected_components(graph, directed=False)
    rl, cl = label[:rows], label[rows:]
    return [(np.flatnonzero(rl == comp), np.flatnonzero(cl == comp)) for comp in np.unique(label[r])]


def kernel_basis(a: np.ndarray, field: Field) -> np.ndarray:
    """Columns spanning the right null space of ``a``."""
    rows, cols = a.shape
    if rows == 0:
        return field.eye(cols)
    r, piv = rref(a, field)
    pivset = set(piv)
    free = [c for c in range(cols) if c not in pivset]
    out = field.zeros((cols, len(free)))
    if free:
        out[free, np.arange(len(free))] = 1
        if piv:
            out[np.ix_(piv, np.arange(len(free)))] = -r[: len(piv)][:, free]
    return field.reduce(out)


def image_basis(a: np.ndarray, field: Field) -> np.ndarray:
    """Columns forming a canonical basis of the column space of ``a``."""
    if a.shape[1] == 0:
        return field.zeros((a.shape[0], 0))
    r, piv = rref(a.T, field)
    return r[: len(piv)].T.copy()


def solve(a: np.ndarray, b: np.ndarray, field: Field) -> np.ndarray | None:
    """Some ``x`` with ``a @ x == b``, or ``None`` when inconsistent."""
    if a.shape[0] != b.shape[0]:
        raise ShapeError(f"solve shape mismatch {a.shape} vs {b.shape}")
    n = a.shape[1]
    if b.shape[1] == 0:
        return field.zeros((n, 0))
    aug = np.concatenate([a, b], axis=1)
    r, piv = rref(aug, field)
    if any(c >= n for c in piv):
        return None
    x = field.zeros((n, b.shape[1]))
    for i, c in enumerate(piv):
        x[c] = r[i, n:]
    return x


def complement_columns(span: np.ndarray, candidates: np.ndarray, field: Field) -> list[int]:
    """Indices of candidate columns extending ``span`` to span(span + candidates), greedily."""
    k = span.shape[1]
    if candidates.shape[1] == 0:
        return []
    aug = np.concatenate([span, candidates], axis=1)
    _, piv = rref(aug, field)
    return [c - k for c in piv if c >= k]


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable matrix over a field; thin wrapper over a numpy array."""

    data: np.ndarray
    field: Field

    @classmethod
    def from_rows(cls, rows, field: Field, ncols: int | None = None) -> "Matrix":
        rows = list(rows)
        if not rows:
            return cls(field.zeros((0, ncols or 0)), field)
        return cls(field.array(rows), field)

    @classmethod
    def identity(cls, n: int, field: Field) -> "Matrix":
        return cls(field.eye(n), field)

    @classmethod
    def zero(cls, r: int, c: int, field: Field) -> "Matrix":
        return cls(field.zeros((r, c)), field)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.field == other.field
                and self.data.shape == other.data.shape
                and bool(np.all(self.data == other.data)))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        return Matrix(matmul(self.data, other.data, self.field), self.field)

    def _same_field(self, other):
        if self.field != other.field:
            raise ValueError(f"field mismatch {self.field} vs {other.field}")

    def tolist(self):
        return self.data.tolist()

    def rref(self) -> tuple["Matrix", list[int]]:
        r, piv = rref(self.data, self.field)
        return Matrix(r, self.field), piv

    def rank(self) -> int:
        return rank(self.data, self.field)

    def kernel_basis(self) -> "Matrix":
        return Matrix(kernel_basis(self.data, self.field), self.field)

    def solve(self, b: "Matrix") -> "Matrix | None":
        self._same_field(b)
        x = solve(self.data, b.data, self.field)
        return None if x is None else Matrix(x, self.field)

    def transpose(self) -> "Matrix":
        return Matrix(transpose(self.data), self.field)

    def hstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        return Matrix(hstack([self.data, other.data], self.field), self.field)

    def vstack(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        return Matrix(vstack([self.data, other.data], self.field), self.field)

    def kronecker(self, other: "Matrix") -> "Matrix":
        self._same_field(other)
        return Matrix(kronecker(self.data, other.data, self.field), self.field)

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)
