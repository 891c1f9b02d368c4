"""Syndrome decoders: exhaustive coset-leader search, bounded-distance
decoding of alternant codes, bit-flip decoding on sparse graphs, one-step
majority-logic for the repetition blocks, and the two-sided decoder for the
product-construction CSS family.

Status vocabulary for every decoder: "corrected" means the returned estimate
reproduces the input syndrome exactly; "detected-uncorrectable" means the
decoder gave up with a certificate (non-convergence, inconsistent locator,
out-of-field value); "failure" is reserved for callers that discover a
miscorrection after the fact.
"""
from __future__ import annotations

import heapq
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .galois import FieldSpec
from .matgf import MatrixGF, _field_tables, mul, solve

__all__ = [
    "Syndrome",
    "DecodeOutcome",
    "syndrome_of",
    "grs_syndrome",
    "exhaustive_decode",
    "bdd_alternant",
    "flip_decode",
    "osmlg_block_decode",
    "pccss_decode_x",
    "pccss_decode_z",
]

CORRECTED = "corrected"
DETECTED = "detected-uncorrectable"
FAILURE = "failure"


@dataclass(frozen=True)
class Syndrome:
    """A syndrome vector together with the field it lives in."""

    q: int
    values: np.ndarray


@dataclass
class DecodeOutcome:
    status: str
    estimate: np.ndarray
    counters: dict = dc_field(default_factory=dict)
    residual: np.ndarray | None = None


def _as_vector(s) -> np.ndarray:
    values = getattr(s, "values", s)
    return np.asarray(values).reshape(-1)


def syndrome_of(M: MatrixGF, e: np.ndarray) -> np.ndarray:
    """Syndrome of an error vector against the given check matrix."""
    e = np.asarray(e).reshape(-1)
    col = MatrixGF(M.field, e.reshape(-1, 1).astype(M.data.dtype))
    return mul(M, col).data.reshape(-1)


# --------------------------------------------------------------- exhaustive

_EXHAUSTIVE_CAP = 2 ** 18


def exhaustive_decode(code, s) -> DecodeOutcome:
    """Minimum-weight coset leader by full enumeration, lexicographic ties.

    Only intended for small codes; refuses n > 24 or more than 2^18 codewords.
    """
    s = _as_vector(s)
    field = code.field
    q = field.size
    if code.n > 24:
        raise ValueError(f"exhaustive decoding capped at n = 24, got {code.n}")
    if q ** code.k > _EXHAUSTIVE_CAP:
        raise ValueError(f"coset of {q}^{code.k} codewords is too large to enumerate")
    x0 = solve(code.H, s)
    if x0 is None:
        return DecodeOutcome(DETECTED, np.zeros(code.n, dtype=np.uint8), {"cosets": 0})
    if code.k == 0:
        est = x0.astype(np.uint8)
        return DecodeOutcome(CORRECTED, est, {"cosets": 1})

    add = _field_tables(field)[0] if q <= 256 else None
    best_w = None
    best = None
    total = q ** code.k
    pows = q ** np.arange(code.k, dtype=np.int64)
    for lo in range(0, total, 4096):
        hi = min(lo + 4096, total)
        idx = np.arange(lo, hi, dtype=np.int64)
        msgs = ((idx[:, None] // pows[None, :]) % q).astype(code.G.data.dtype)
        cw = mul(MatrixGF(field, msgs), code.G).data
        if add is not None:
            vecs = add[cw, x0[None, :]]
        else:
            vecs = np.array(
                [[field.add(int(a), int(b)) for a, b in zip(row, x0)] for row in cw],
                dtype=cw.dtype,
            )
        weights = (vecs != 0).sum(axis=1)
        wmin = int(weights.min())
        if best_w is None or wmin <= best_w:
            cand = min(map(tuple, vecs[weights == wmin]))
            if best_w is None or (wmin, cand) < (best_w, best):
                best_w, best = wmin, cand
    est = np.array(best, dtype=np.uint8 if q <= 256 else np.int64)
    assert np.array_equal(syndrome_of(code.H, est), s)
    return DecodeOutcome(CORRECTED, est, {"cosets": total})


# ------------------------------------------------- polynomial helpers (EEA)

def _pdeg(p: list[int]) -> int:
    for i in range(len(p) - 1, -1, -1):
        if p[i]:
            return i
    return -1


def _ptrim(p: list[int]) -> list[int]:
    d = _pdeg(p)
    return p[: d + 1] if d >= 0 else [0]

def _padd(f: FieldSpec, u: list[int], v: list[int]) -> list[int]:
    n = max(len(u), len(v))
    return _ptrim([f.add(u[i] if i < len(u) else 0, v[i] if i < len(v) else 0) for i in range(n)])


def _pscale(f: FieldSpec, u: list[int], c: int) -> list[int]:
    return _ptrim([f.mul(c, a) for a in u])


def _pmul(f: FieldSpec, u: list[int], v: list[int]) -> list[int]:
    out = [0] * (len(u) + len(v) - 1)
    for i, a in enumerate(u):
        if not a:
            continue
        for j, b in enumerate(v):
            if b:
                out[i + j] = f.add(out[i + j], f.mul(a, b))
    return _ptrim(out)


def _pdivmod(f: FieldSpec, u: list[int], v: list[int]) -> tuple[list[int], list[int]]:
    du, dv = _pdeg(u), _pdeg(v)
    if dv < 0:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(u[: du + 1]) if du >= 0 else [0]
    quo = [0] * max(du - dv + 1, 1)
    inv_lead = f.inv(v[dv])
    for i in range(du - dv, -1, -1):
        c = f.mul(rem[i + dv], inv_lead)
        if not c:
            continue
        quo[i] = c
        for j in range(dv + 1):
            rem[i + j] = f.sub(rem[i + j], f.mul(c, v[j]))
    return _ptrim(quo), _ptrim(rem)


def _peval(f: FieldSpec, p: list[int], x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = f.add(f.mul(acc, x), c)
    return acc


def _pderiv(f: FieldSpec, p: list[int]) -> list[int]:
    out = []
    for i in range(1, len(p)):
        out.append(f.mul(p[i], i % f.p))
    return _ptrim(out) if out else [0]


# ------------------------------------------------------------ bdd alternant

def grs_syndrome(field: FieldSpec, a: Sequence[int], y: Sequence[int], r: int, e) -> list[int]:
    """Extension-field syndrome of a base-field error against the power rows."""
    base = field.base_field()
    e = np.asarray(e).reshape(-1)
    active = [(i, field.embed(base, int(v))) for i, v in enumerate(e) if v]
    syn = []
    for j in range(r):
        acc = 0
        for i, ev in active:
            acc = field.add(acc, field.mul(field.mul(y[i], field.pow(a[i], j)), ev))
        syn.append(acc)
    return syn


def _bdd_single_error(code, field: FieldSpec, a, y, s0: int) -> DecodeOutcome:
    base = field.base_field()
    hits = []
    for i in range(code.n):
        val = field.mul(s0, field.inv(y[i]))
        try:
            ev = field.project(base, val)
        except ValueError:
            continue
        if ev:
            hits.append((i, ev))
    if len(hits) != 1:
        return DecodeOutcome(DETECTED, np.zeros(code.n, dtype=np.uint8), {"euclid_steps": 0})
    est = np.zeros(code.n, dtype=np.uint8)
    est[hits[0][0]] = hits[0][1]
    return DecodeOutcome(CORRECTED, est, {"euclid_steps": 0})


def bdd_alternant(code, s, t: int | None = None) -> DecodeOutcome:
    """Bounded-distance decoding from the extension-field syndrome.

    The syndrome s has one extension-field entry per power row.  The key
    equation is solved with the extended Euclidean algorithm, roots are
    searched over the evaluation points, and values come from the evaluator
    polynomial; anything inconsistent is reported detected-uncorrectable.
    """
    prov = code.provenance
    if prov.get("origin") != "alternant":
        raise ValueError("bdd decoding needs an alternant construction recipe")
    field: FieldSpec = prov["ext"]
    a = list(prov["a"])
    y = list(prov["y"])
    r = prov["r"]
    s = [int(v) for v in np.asarray(_as_vector(s))]
    if len(s) != r:
        raise ValueError(f"syndrome length {len(s)} does not match {r} power rows")
    if t is None:
        t = 1 if r == 1 else r // 2
    elif r >= 2 and t > r // 2:
        raise ValueError(f"requested radius {t} exceeds floor(r/2) = {r // 2}")

    n = code.n
    zeros = np.zeros(n, dtype=np.uint8)
    if not any(s):
        return DecodeOutcome(CORRECTED, zeros, {"euclid_steps": 0})
    if r == 1:
        return _bdd_single_error(code, field, a, y, s[0])

    # extended Euclid on (x^r, S), stopping below ceil(r/2)
    stop = -(-r // 2)
    r_prev = [0] * r + [1]
    r_cur = _ptrim(s)
    u_prev, u_cur = [0], [1]
    steps = 0
    while _pdeg(r_cur) >= stop:
        quo, rem = _pdivmod(field, r_prev, r_cur)
        u_next = _padd(field, u_prev, [field.neg(c) for c in _pmul(field, quo, u_cur)])
        r_prev, r_cur = r_cur, rem
        u_prev, u_cur = u_cur, u_next
        steps += 1
        if _pdeg(r_cur) < 0:
            break

    sigma, omega = u_cur, r_cur
    detected = DecodeOutcome(DETECTED, zeros, {"euclid_steps": steps})
    if not sigma[0]:
        return detected
    scale = field.inv(sigma[0])
    sigma = _pscale(field, sigma, scale)
    omega = _pscale(field, omega, scale)
    nu = _pdeg(sigma)
    if nu > t:
        return detected

    roots = [
        i for i, ai in enumerate(a) if ai and _peval(field, sigma, field.inv(ai)) == 0
    ]
    if len(roots) != nu:
        return detected

    base = field.base_field()
    dsigma = _pderiv(field, sigma)
    est = zeros.copy()
    for i in roots:
        z = field.inv(a[i])
        den = field.mul(y[i], _peval(field, dsigma, z))
        if not den:
            return detected
        val = field.neg(field.mul(field.mul(a[i], _peval(field, omega, z)), field.inv(den)))
        try:
            ev = field.project(base, val)
        except ValueError:
            return detected
        if not ev:
            return detected
        est[i] = ev

    resid = [field.sub(sv, cv) for sv, cv in zip(s, grs_syndrome(field, a, y, r, est))]
    if any(resid):
        # a zero evaluation point only shows up in the constant syndrome row
        z_idx = a.index(0) if 0 in a else None
        if (
            z_idx is None
            or est[z_idx]
            or any(resid[1:])
            or len(roots) + 1 > t
        ):
            return detected
        try:
            ev = field.project(base, field.mul(resid[0], field.inv(y[z_idx])))
        except ValueError:
            return detected
        if not ev:
            return detected
        est[z_idx] = ev
    assert grs_syndrome(field, a, y, r, est) == s
    return DecodeOutcome(CORRECTED, est, {"euclid_steps": steps})


# ------------------------------------------------------------------- flip

def _graph_arrays(H: MatrixGF):
    data = H.data != 0
    bit_edges, check_edges = np.nonzero(data.T)
    degree = data.sum(axis=0).astype(np.int64)
    return bit_edges, check_edges, degree


def flip_decode(code, s, max_rounds: int = 100, parallel: bool = False) -> DecodeOutcome:
    """Bit-flip decoding over a binary sparse check matrix.

    Sequential mode flips the lowest-index bit whose unsatisfied incident
    checks form a strict majority, one at a time; parallel mode flips every
    such bit per round.  Non-convergence inside the flip budget is reported
    as detected-uncorrectable with the residual syndrome attached.
    """
    H = getattr(code, "H", code)
    if H.q != 2:
        raise ValueError("flip decoding is defined over GF(2)")
    s = _as_vector(s).astype(np.uint8)
    if s.shape[0] != H.rows:
        raise ValueError(f"syndrome length {s.shape[0]} does not match {H.rows} checks")
    n = H.cols
    bit_edges, check_edges, degree = _graph_arrays(H)
    unsat = s.copy()
    est = np.zeros(n, dtype=np.uint8)
    flips = 0
    rounds = 0
    budget = max_rounds * n

    if parallel:
        while rounds < max_rounds and unsat.any():
            ucount = np.bincount(bit_edges, weights=unsat[check_edges], minlength=n)
            flip_mask = 2 * ucount > degree
            if not flip_mask.any():
                break
            est ^= flip_mask.astype(np.uint8)
            touched = check_edges[flip_mask[bit_edges]]
            unsat ^= (np.bincount(touched, minlength=H.rows) % 2).astype(np.uint8)
            flips += int(flip_mask.sum())
            rounds += 1
    else:
        checks_of_bit = [check_edges[bit_edges == i] for i in range(n)]
        bits_of_check = [bit_edges[check_edges == j] for j in range(H.rows)]
        heap = sorted({int(b) for j in np.flatnonzero(unsat) for b in bits_of_check[j]})
        heapq.heapify(heap)
        while heap and flips < budget:
            i = heapq.heappop(heap)
            incident = checks_of_bit[i]
            if 2 * int(unsat[incident].sum()) <= degree[i]:
                continue
            est[i] ^= 1
            flips += 1
            unsat[incident] ^= 1
            for j in incident:
                for b in bits_of_check[j]:
                    heapq.heappush(heap, int(b))

    counters = {"flips": flips, "rounds": rounds}
    if unsat.any():
        return DecodeOutcome(DETECTED, est, counters, residual=unsat)
    return DecodeOutcome(CORRECTED, est, counters)


# ------------------------------------------------------------------ osmlg

def osmlg_block_decode(n0: int, s_block: np.ndarray) -> np.ndarray:
    """One-step majority decoding of a single repetition block.

    Exact whenever the block error has weight at most floor((n0-1)/2).
    """
    s = np.asarray(s_block).reshape(-1).astype(np.uint8)
    if s.shape[0] != n0 - 1:
        raise ValueError(f"block syndrome must have length {n0 - 1}")
    heavy = int(s.sum()) >= (n0 - 1) // 2 + 1
    if heavy:
        return np.concatenate([s ^ 1, [1]]).astype(np.uint8)
    return np.concatenate([s, [0]]).astype(np.uint8)


# ------------------------------------------------------- two-sided decoder

def pccss_decode_x(Q, s_x, max_rounds: int = 100) -> DecodeOutcome:
    """X-side decoding: flip-decode the outer code, then place each recovered
    block parity on that block's representative (first) coordinate.
    """
    n0 = Q.n0
    inner = flip_decode(Q.outer, s_x, max_rounds=max_rounds)
    est = np.zeros(Q.n, dtype=np.uint8)
    blocks = np.flatnonzero(inner.estimate)
    est[blocks * n0] = 1
    if inner.status != CORRECTED:
        return DecodeOutcome(DETECTED, est, inner.counters, residual=inner.residual)
    return DecodeOutcome(CORRECTED, est, inner.counters)


def _osmlg_rows(S: np.ndarray, d0: int) -> np.ndarray:
    flag = (S.sum(axis=1) >= d0 + 1).astype(np.uint8)
    return np.concatenate([S ^ flag[:, None], flag[:, None]], axis=1)


def pccss_decode_z(Q, s_z, partitions: int = 1) -> DecodeOutcome:
    """Z-side decoding: independent majority decoding of every block.

    With partitions > 1 the blocks are split into contiguous chunks decoded
    concurrently; the output is bitwise identical to the serial order.
    """
    n0 = Q.n0
    n2 = Q.n // n0
    d0 = (n0 - 1) // 2
    s = _as_vector(s_z).astype(np.uint8)
    if s.shape[0] != n2 * (n0 - 1):
        raise ValueError(f"syndrome length {s.shape[0]} does not match {n2} blocks")
    S = s.reshape(n2, n0 - 1)
    if partitions <= 1:
        blocks = _osmlg_rows(S, d0)
    else:
        chunks = np.array_split(S, partitions)
        with ThreadPoolExecutor(max_workers=partitions) as pool:
            parts = list(pool.map(lambda c: _osmlg_rows(c, d0), chunks))
        blocks = np.concatenate(parts, axis=0)
    return DecodeOutcome(CORRECTED, blocks.reshape(-1), {"block_decodes": n2})
