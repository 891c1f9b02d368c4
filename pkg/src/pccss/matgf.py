"""Dense matrices over GF(q): echelon forms, nullspaces, products, standard form.

Entries are stored as element indices in a numpy array (uint8 when q <= 256).
GF(2) elimination runs bit-packed, 64 columns per machine word; every other
field goes through a generic element-wise path. Prime fields use modular
integer arithmetic directly; prime-power fields up to q = 256 use cached
q x q operation tables; larger extension fields fall back to per-element
field calls (only tiny matrices live there).

Pivot choice is leftmost column, topmost row, in both paths, so echelon
forms are canonical and golden-file comparable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .galois import FieldSpec, field_of_size

__all__ = [
    "MatrixGF",
    "RrefResult",
    "identity",
    "in_rowspace",
    "kron",
    "mat_from_text",
    "mat_to_text",
    "mul",
    "nullspace",
    "rank",
    "reduce_vector",
    "rref",
    "solve",
    "standard_form",
    "transpose",
    "vstack",
    "hstack",
]


def _dtype_for(q: int):
    return np.uint8 if q <= 256 else np.int64


class MatrixGF:
    """Immutable matrix of field-element indices."""

    __slots__ = ("field", "data")

    def __init__(self, field: FieldSpec, entries):
        data = np.asarray(entries, dtype=_dtype_for(field.size))
        if data.ndim == 1:
            data = data.reshape(1, -1)
        if data.ndim != 2:
            raise ValueError("matrix entries must be two-dimensional")
        if data.size and int(data.max()) >= field.size:
            raise ValueError(f"entry {int(data.max())} out of range for {field}")
        data = np.ascontiguousarray(data)
        data.setflags(write=False)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "data", data)

    def __setattr__(self, name, value):
        raise AttributeError("MatrixGF is immutable")

    @property
    def q(self) -> int:
        return self.field.size

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def T(self) -> "MatrixGF":
        return transpose(self)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixGF)
            and self.field == other.field
            and self.data.shape == other.data.shape
            and np.array_equal(self.data, other.data)
        )

    def __matmul__(self, other: "MatrixGF") -> "MatrixGF":
        return mul(self, other)

    def __repr__(self) -> str:
        return f"MatrixGF({self.field}, {self.rows}x{self.cols})"


def identity(field: FieldSpec, n: int) -> MatrixGF:
    return MatrixGF(field, np.eye(n, dtype=_dtype_for(field.size)))

def zeros(field: FieldSpec, rows: int, cols: int) -> MatrixGF:
    return MatrixGF(field, np.zeros((rows, cols), dtype=_dtype_for(field.size)))


__all__.append("zeros")


# ------------------------------------------------------------ op tables

_TABLES: dict = {}


def _field_tables(field: FieldSpec):
    key = (field.p, field.m0, field.m, field.modulus)
    hit = _TABLES.get(key)
    if hit is None:
        q = field.size
        add = np.empty((q, q), dtype=np.uint8)
        mulo = np.empty((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                add[a, b] = field.add(a, b)
                mulo[a, b] = field.mul(a, b)
        neg = np.array([field.neg(a) for a in range(q)], dtype=np.uint8)
        inv = np.array([0] + [field.inv(a) for a in range(1, q)], dtype=np.uint8)
        hit = (add, mulo, neg, inv)
        _TABLES[key] = hit
    return hit


def _is_prime_field(field: FieldSpec) -> bool:
    return field.degree == 1


# --------------------------------------------------------- bit packing

def _pack_rows(bits: np.ndarray) -> np.ndarray:
    r, c = bits.shape
    words = max(1, (c + 63) // 64)
    by = np.packbits(bits, axis=1, bitorder="little")
    pad = words * 8 - by.shape[1]
    if pad:
        by = np.pad(by, ((0, 0), (0, pad)))
    return np.ascontiguousarray(by).view(np.uint64).reshape(r, words)


def _unpack_rows(packed: np.ndarray, cols: int) -> np.ndarray:
    r = packed.shape[0]
    by = np.ascontiguousarray(packed).view(np.uint8).reshape(r, -1)
    return np.unpackbits(by, axis=1, count=cols, bitorder="little")


# ----------------------------------------------------------------- rref

@dataclass(frozen=True)
class RrefResult:
    matrix: MatrixGF
    rank: int
    pivots: tuple[int, ...]


def _rref_packed(bits: np.ndarray) -> tuple[np.ndarray, int, tuple[int, ...]]:
    r, c = bits.shape
    if r == 0 or c == 0:
        return bits.copy(), 0, ()
    P = _pack_rows(bits)
    one = np.uint64(1)
    pivots: list[int] = []
    cur = 0
    for col in range(c):
        if cur == r:
            break
        w = col >> 6
        b = np.uint64(col & 63)
        nz = np.nonzero((P[cur:, w] >> b) & one)[0]
        if nz.size == 0:
            continue
        piv = cur + int(nz[0])
        if piv != cur:
            P[[cur, piv]] = P[[piv, cur]]
        mask = ((P[:, w] >> b) & one).astype(bool)
        mask[cur] = False
        if mask.any():
            P[mask] ^= P[cur]
        pivots.append(col)
        cur += 1
    return _unpack_rows(P, c), cur, tuple(pivots)


def _rref_prime(a: np.ndarray, p: int) -> tuple[np.ndarray, int, tuple[int, ...]]:
    R = a.astype(np.int64) % p
    r, c = R.shape
    pivots: list[int] = []
    cur = 0
    for col in range(c):
        if cur == r:
            break
        nz = np.nonzero(R[cur:, col])[0]
        if nz.size == 0:
            continue
        piv = cur + int(nz[0])
        if piv != cur:
            R[[cur, piv]] = R[[piv, cur]]
        if R[cur, col] != 1:
            R[cur] = R[cur] * pow(int(R[cur, col]), p - 2, p) % p
        others = np.nonzero(R[:, col])[0]
        others = others[others != cur]
        if others.size:
            R[others] = (R[others] - np.outer(R[others, col], R[cur])) % p
        pivots.append(col)
        cur += 1
    return R, cur, tuple(pivots)


def _rref_tables(a: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, int, tuple[int, ...]]:
    add, mulo, neg, inv = _field_tables(field)
    R = a.astype(np.uint8).copy()
    r, c = R.shape
    pivots: list[int] = []
    cur = 0
    for col in range(c):
        if cur == r:
            break
        nz = np.nonzero(R[cur:, col])[0]
        if nz.size == 0:
            continue
        piv = cur + int(nz[0])
        if piv != cur:
            R[[cur, piv]] = R[[piv, cur]]
        if R[cur, col] != 1:
            R[cur] = mulo[inv[R[cur, col]], R[cur]]
        others = np.nonzero(R[:, col])[0]
        others = others[others != cur]
        if others.size:
            R[others] = add[R[others], mulo[neg[R[others, col]][:, None], R[cur][None, :]]]
        pivots.append(col)
        cur += 1
    return R, cur, tuple(pivots)


def _rref_python(a: np.ndarray, field: FieldSpec) -> tuple[np.ndarray, int, tuple[int, ...]]:
    R = [list(map(int, row)) for row in a]
    r, c = a.shape
    pivots: list[int] = []
    cur = 0
    for col in range(c):
        if cur == r:
            break
        piv = next((i for i in range(cur, r) if R[i][col]), None)
        if piv is None:
            continue
        R[cur], R[piv] = R[piv], R[cur]
        s = field.inv(R[cur][col])
        if s != 1:
            R[cur] = [field.mul(s, v) for v in R[cur]]
        for i in range(r):
            if i != cur and R[i][col]:
                f = field.neg(R[i][col])
                R[i] = [field.add(vi, field.mul(f, vc)) for vi, vc in zip(R[i], R[cur])]
        pivots.append(col)
        cur += 1
    return np.array(R, dtype=_dtype_for(field.size)).reshape(r, c), cur, tuple(pivots)


def rref(M: MatrixGF, method: str = "auto") -> RrefResult:
    """Reduced row echelon form with rank and pivot columns."""
    field = M.field
    q = field.size
    if method not in ("auto", "packed", "generic"):
        raise ValueError(f"unknown rref method {method!r}")
    if method == "packed" and q != 2:
        raise ValueError("packed elimination only applies to GF(2)")
    if q == 2 and method in ("auto", "packed"):
        R, rk, piv = _rref_packed(M.data)
    elif _is_prime_field(field):
        R, rk, piv = _rref_prime(M.data, field.p)
    elif q <= 256:
        R, rk, piv = _rref_tables(M.data, field)
    else:
        R, rk, piv = _rref_python(M.data, field)
    return RrefResult(MatrixGF(field, R), rk, piv)


def rank(M: MatrixGF) -> int:
    return rref(M).rank


# ------------------------------------------------------------ nullspace

def nullspace(M: MatrixGF) -> MatrixGF:
    """Full-rank basis B of the right kernel: M B^T = 0, rows = cols - rank."""
    field = M.field
    rr = rref(M)
    piv = list(rr.pivots)
    free = [j for j in range(M.cols) if j not in set(piv)]
    B = np.zeros((len(free), M.cols), dtype=_dtype_for(field.size))
    if free:
        B[np.arange(len(free)), free] = 1
        if piv:
            R = rr.matrix.data[: rr.rank]
            block = R[:, free].T  # coefficients of pivot variables per free column
            if field.size == 2:
                B[:, piv] = block
            elif _is_prime_field(field):
                B[:, piv] = (-block.astype(np.int64)) % field.p
            elif field.size <= 256:
                neg = _field_tables(field)[2]
                B[:, piv] = neg[block]
            else:
                B[:, piv] = np.vectorize(field.neg)(block)
    return MatrixGF(field, B)


# ------------------------------------------------------------- products

def mul(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    if A.field != B.field:
        raise ValueError("matrix product across different fields")
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    field = A.field
    if A.cols == 0:
        return zeros(field, A.rows, B.cols)
    if _is_prime_field(field):
        p = field.p
        C = A.data.astype(np.int64) @ B.data.astype(np.int64) % p
        return MatrixGF(field, C)
    if field.size <= 256:
        add, mulo, _, _ = _field_tables(field)
        C = np.zeros((A.rows, B.cols), dtype=np.uint8)
        for k in range(A.cols):
            C = add[C, mulo[A.data[:, k][:, None], B.data[k, :][None, :]]]
        return MatrixGF(field, C)
    C = np.zeros((A.rows, B.cols), dtype=np.int64)
    for i in range(A.rows):
        for j in range(B.cols):
            acc = 0
            for k in range(A.cols):
                acc = field.add(acc, field.mul(int(A.data[i, k]), int(B.data[k, j])))
            C[i, j] = acc
    return MatrixGF(field, C)


def transpose(A: MatrixGF) -> MatrixGF:
    return MatrixGF(A.field, A.data.T)


def kron(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    if A.field != B.field:
        raise ValueError("kron across different fields")
    field = A.field
    Arep = np.repeat(np.repeat(A.data, B.rows, axis=0), B.cols, axis=1)
    Btil = np.tile(B.data, (A.rows, A.cols))
    if _is_prime_field(field):
        C = Arep.astype(np.int64) * Btil.astype(np.int64) % field.p
    elif field.size <= 256:
        C = _field_tables(field)[1][Arep, Btil]
    else:
        C = np.vectorize(field.mul)(Arep, Btil)
    return MatrixGF(field, C)


def hstack(mats: list[MatrixGF]) -> MatrixGF:
    field = mats[0].field
    if any(m.field != field for m in mats):
        raise ValueError("hstack across different fields")
    return MatrixGF(field, np.hstack([m.data for m in mats]))


def vstack(mats: list[MatrixGF]) -> MatrixGF:
    field = mats[0].field
    if any(m.field != field for m in mats):
        raise ValueError("vstack across different fields")
    return MatrixGF(field, np.vstack([m.data for m in mats]))


# -------------------------------------------------------- standard form

def standard_form(G: MatrixGF) -> tuple[MatrixGF, np.ndarray]:
    """Row-reduce and permute columns to [I | P]; returns the permutation used."""
    rr = rref(G)
    if rr.rank < G.rows:
        raise ValueError(f"standard form needs full row rank, got {rr.rank} < {G.rows}")
    piv = list(rr.pivots)
    rest = [j for j in range(G.cols) if j not in set(piv)]
    perm = np.array(piv + rest, dtype=np.int64)
    return MatrixGF(G.field, rr.matrix.data[:, perm]), perm


# ----------------------------------------------------- solve / rowspace

def _scaled_rows(field: FieldSpec, coeffs: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Matrix whose row i is coeffs[i] * R[i]."""
    if _is_prime_field(field):
        return coeffs.astype(np.int64)[:, None] * R.astype(np.int64) % field.p
    if field.size <= 256:
        return _field_tables(field)[1][coeffs[:, None], R]
    return np.vectorize(field.mul)(coeffs[:, None], R)


def reduce_vector(rr: RrefResult, v: np.ndarray) -> np.ndarray:
    """Residual of v after removing its row-space component of rr.

    Because rr is fully reduced, the coefficient of row i is just v[pivots[i]],
    so the reduction is a single pass.
    """
    field = rr.matrix.field
    v = np.asarray(v)
    if rr.rank == 0:
        return v.copy()
    R = rr.matrix.data[: rr.rank]
    coeffs = v[list(rr.pivots)]
    contrib = _scaled_rows(field, coeffs, R)
    if field.size == 2:
        return (v ^ np.bitwise_xor.reduce(contrib, axis=0)).astype(v.dtype)
    if _is_prime_field(field):
        return ((v.astype(np.int64) - contrib.sum(axis=0)) % field.p).astype(v.dtype)
    out = v.copy()
    for row in contrib:
        out = np.array([field.sub(int(a), int(b)) for a, b in zip(out, row)], dtype=v.dtype)
    return out


def in_rowspace(rr: RrefResult, v: np.ndarray) -> bool:
    return not reduce_vector(rr, v).any()


def solve(A: MatrixGF, b: np.ndarray):
    """One solution x of A x = b, or None if the system is inconsistent."""
    field = A.field
    b = np.asarray(b).reshape(-1)
    if b.shape[0] != A.rows:
        raise ValueError("right-hand side length mismatch")
    aug = MatrixGF(field, np.hstack([A.data, b.reshape(-1, 1).astype(A.data.dtype)]))
    rr = rref(aug)
    if any(p == A.cols for p in rr.pivots):
        return None
    x = np.zeros(A.cols, dtype=A.data.dtype)
    R = rr.matrix.data
    for i, p in enumerate(rr.pivots):
        x[p] = R[i, A.cols]
    return x


# ----------------------------------------------------------- text format

def mat_to_text(M: MatrixGF) -> str:
    lines = [f"{M.q} {M.rows} {M.cols}"]
    for row in M.data:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def mat_from_text(text: str) -> MatrixGF:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    q, rows, cols = map(int, lines[0].split())
    field = field_of_size(q)
    if len(lines) != rows + 1:
        raise ValueError(f"expected {rows} rows, found {len(lines) - 1}")
    data = np.zeros((rows, cols), dtype=_dtype_for(q))
    for i, ln in enumerate(lines[1:]):
        vals = ln.split()
        if len(vals) != cols:
            raise ValueError(f"row {i} has {len(vals)} entries, expected {cols}")
        data[i] = [int(v) for v in vals]
    return MatrixGF(field, data)
