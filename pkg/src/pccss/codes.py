"""Classical component codes: repetition, block lifts, GRS, alternant,
random GV-achieving, and expander codes, with exact-distance bookkeeping.

Distances are only ever recorded when certified (brute force or construction);
randomized evidence from probe_min_weight is reported separately and never
stored as d_certified.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field as dc_field

import numpy as np

from .bounds import vol_q
from .galois import FieldSpec, field_of_size
from .matgf import (
    MatrixGF,
    _field_tables,
    identity,
    kron,
    mat_from_text,
    mat_to_text,
    mul,
    nullspace,
    rank,
    rref,
    transpose,
    zeros,
)

__all__ = [
    "ExpanderGraph",
    "GrsSpec",
    "LinearCode",
    "certify_distance",
    "code_from_text",
    "code_to_text",
    "dual",
    "lift_block",
    "make_alternant",
    "make_expander",
    "make_grs",
    "make_random_gv",
    "make_repetition",
    "min_weight",
    "probe_min_weight",
]


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: FieldSpec
    n: int
    k: int
    G: MatrixGF
    H: MatrixGF
    d_certified: int | None = None
    d_method: str | None = None
    provenance: dict = dc_field(default_factory=dict)

    @property
    def q(self) -> int:
        return self.field.size


def _new_code(field, n, k, G, H, d=None, method=None, provenance=None, validate=True):
    code = LinearCode(field, n, k, G, H, d, method, provenance or {})
    if validate:
        if G.cols != n or H.cols != n:
            raise ValueError("generator/check length mismatch")
        if G.rows != k:
            raise ValueError("generator row count is not k")
        if mul(G, transpose(H)).data.any():
            raise ValueError("generator and check matrices do not annihilate")
        if rank(G) != k:
            raise ValueError("generator is rank-deficient")
        if rank(H) != n - k:
            raise ValueError(f"check matrix rank {rank(H)} != n - k = {n - k}")
    return code


# ------------------------------------------------------------ enumeration

def min_weight(G: MatrixGF, cap: int = 2**22) -> int:
    """Exact minimum weight of the row space, by enumerating all codewords."""
    field = G.field
    k, n = G.rows, G.cols
    if k == 0:
        raise ValueError("zero-dimensional code has no nonzero codeword")
    total = field.size**k
    if total > cap:
        raise ValueError(f"{total} codewords exceed enumeration cap {cap}")
    if field.size == 2:
        rows = [
            int.from_bytes(np.packbits(G.data[i], bitorder="little").tobytes(), "little")
            for i in range(k)
        ]
        best = n + 1
        cw = 0
        for i in range(1, total):
            cw ^= rows[(i & -i).bit_length() - 1]
            w = cw.bit_count()
            if w < best:
                best = w
        return best
    add, mulo, _, _ = _field_tables(field)
    q = field.size
    digits = [0] * k
    cw = np.zeros(n, dtype=np.uint8)
    best = n + 1
    for _ in range(total - 1):
        pos = 0
        while True:
            old = digits[pos]
            new = old + 1
            if new == q:
                digits[pos] = 0
                cw = add[cw, mulo[field.sub(0, old), G.data[pos]]]
                pos += 1
            else:
                digits[pos] = new
                cw = add[cw, mulo[field.sub(new, old), G.data[pos]]]
                break
        w = int(np.count_nonzero(cw))
        if w and w < best:
            best = w
    return best


def certify_distance(code: LinearCode, cap: int = 2**22) -> LinearCode:
    w = min_weight(code.G, cap)
    return dataclasses.replace(code, d_certified=w, d_method="exhaustive")


def probe_min_weight(code: LinearCode, trials: int = 100000, seed: int = 0) -> int:
    """Smallest codeword weight seen over randomized low-weight probes.

    An observed upper bound on the distance, useful as evidence that no very
    light codeword exists; never a certificate.
    """
    rng = np.random.default_rng(seed)
    k, n = code.k, code.n
    q = code.field.size
    best = min(int(np.count_nonzero(row)) for row in code.G.data)
    done = 0
    while done < trials:
        batch = min(trials - done, 4096)
        M = np.zeros((batch, k), dtype=np.uint8)
        weights = rng.integers(1, 4, size=batch)
        for i in range(batch):
            w = min(int(weights[i]), k)
            cols = rng.choice(k, size=w, replace=False)
            M[i, cols] = rng.integers(1, q, size=w)
        cw = mul(MatrixGF(code.field, M), code.G).data
        wts = np.count_nonzero(cw, axis=1)
        wts = wts[wts > 0]
        if wts.size:
            best = min(best, int(wts.min()))
        done += batch
    return best


# ------------------------------------------------------------ repetition

def make_repetition(n0: int) -> LinearCode:
    """[n0, 1, n0] binary repetition code; H = [I | all-ones column]."""
    if n0 < 2:
        raise ValueError(f"repetition length must be >= 2, got {n0}")
    f2 = field_of_size(2)
    H = np.hstack([np.eye(n0 - 1, dtype=np.uint8), np.ones((n0 - 1, 1), dtype=np.uint8)])
    G = np.ones((1, n0), dtype=np.uint8)
    return _new_code(
        f2, n0, 1, MatrixGF(f2, G), MatrixGF(f2, H),
        d=n0, method="construction", provenance={"origin": "repetition", "n0": n0},
    )


def lift_block(inner: LinearCode, copies: int, validate: bool = True) -> LinearCode:
    """Direct sum of `copies` disjoint copies: H = I (x) H0, G = I (x) G0."""
    if copies < 1:
        raise ValueError("need at least one copy")
    if copies == 1:
        return inner
    eye = identity(inner.field, copies)
    return _new_code(
        inner.field,
        copies * inner.n,
        copies * inner.k,
        kron(eye, inner.G),
        kron(eye, inner.H),
        d=inner.d_certified,
        method=inner.d_method,
        provenance={"origin": "lift", "copies": copies, "inner": inner.provenance},
        validate=validate,
    )


# ------------------------------------------------------------------- GRS

@dataclass(frozen=True)
class GrsSpec:
    """Evaluation points a, column multipliers v, dimension k; y derived."""

    field: FieldSpec
    a: tuple[int, ...]
    v: tuple[int, ...]
    k: int
    y: tuple[int, ...] = dc_field(init=False)

    def __post_init__(self):
        f = self.field
        a = tuple(int(x) for x in self.a)
        v = tuple(int(x) for x in self.v)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)
        n = len(a)
        if len(v) != n:
            raise ValueError("points and multipliers differ in length")
        if len(set(a)) != n:
            raise ValueError("evaluation points must be pairwise distinct")
        if any(not 0 <= x < f.size for x in a + v):
            raise ValueError("entry out of field range")
        if any(x == 0 for x in v):
            raise ValueError("column multipliers must be nonzero")
        if not 1 <= self.k <= n - 1:
            raise ValueError(f"dimension {self.k} outside [1, {n - 1}]")
        y = []
        for i, ai in enumerate(a):
            prod = v[i]
            for j, aj in enumerate(a):
                if j != i:
                    prod = f.mul(prod, f.sub(ai, aj))
            y.append(f.inv(prod))
        object.__setattr__(self, "y", tuple(y))

    @property
    def n(self) -> int:
        return len(self.a)


def make_grs(spec: GrsSpec) -> LinearCode:
    """[n, k, n-k+1] MDS code: G rows v_i a_i^t, H rows y_i a_i^j."""
    f = spec.field
    n, k = spec.n, spec.k
    r = n - k
    G = np.zeros((k, n), dtype=np.int64)
    H = np.zeros((r, n), dtype=np.int64)
    for i in range(n):
        ai, vi, yi = spec.a[i], spec.v[i], spec.y[i]
        power = 1
        for t in range(max(k, r)):
            if t < k:
                G[t, i] = f.mul(vi, power)
            if t < r:
                H[t, i] = f.mul(yi, power)
            power = f.mul(power, ai)
    return _new_code(
        f, n, k, MatrixGF(f, G), MatrixGF(f, H),
        d=r + 1, method="mds",
        provenance={"origin": "grs", "a": spec.a, "v": spec.v, "y": spec.y, "k": k},
    )


# -------------------------------------------------------------- alternant

def make_alternant(field: FieldSpec, a, y, r: int) -> LinearCode:
    """Subfield subcode over GF(q) of the GRS code with parity rows y_i a_i^j.

    Each extension-field parity row expands to field.m rows of base-field
    coordinates in the polynomial basis. k >= n - m r; distance >= r + 1.
    """
    a = tuple(int(x) for x in a)
    y = tuple(int(x) for x in y)
    n = len(a)
    base = field.base_field()
    m = field.m
    if m < 2:
        raise ValueError("alternant construction needs a proper extension field")
    if len(set(a)) != n:
        raise ValueError("evaluation points must be pairwise distinct")
    if len(y) != n or any(x == 0 for x in y):
        raise ValueError("multipliers must be nonzero, one per point")
    if not 1 <= r < n:
        raise ValueError(f"redundancy {r} outside [1, {n - 1}]")
    expanded = np.zeros((m * r, n), dtype=np.int64)
    for i in range(n):
        power = y[i]
        for j in range(r):
            coords = field.to_base_coords(power)
            for l in range(m):
                expanded[j * m + l, i] = coords[l]
            power = field.mul(power, a[i])
    rr = rref(MatrixGF(base, expanded))
    H = MatrixGF(base, rr.matrix.data[: rr.rank])
    k = n - rr.rank
    assert k >= n - m * r
    G = nullspace(H)
    return _new_code(
        base, n, k, G, H,
        provenance={
            "origin": "alternant",
            "ext": field,
            "a": a,
            "y": y,
            "r": r,
            "d_lower": r + 1,
        },
    )


# -------------------------------------------------------------- random GV

def make_random_gv(n: int, k: int, seed: int, q: int = 2) -> LinearCode:
    """Random code resampled until it meets the GV distance target.

    Target: largest d with vol_q(n-1, d-2) < q^(n-k). Length capped at 28 so
    the certification stays a feasible brute force.
    """
    if n > 28:
        raise ValueError(f"length {n} exceeds the exact-certification cap of 28")
    if not 1 <= k <= n:
        raise ValueError(f"dimension {k} outside [1, {n}]")
    f = field_of_size(q)
    if k == n:
        return _new_code(
            f, n, k, identity(f, n), zeros(f, 0, n),
            d=1, method="construction", provenance={"origin": "random_gv", "seed": seed},
        )
    target = 1
    cand = 2
    while cand <= n and vol_q(n - 1, cand - 2, q) < q ** (n - k):
        target = cand
        cand += 1
    rng = np.random.default_rng(seed)
    for _ in range(5000):
        Gd = rng.integers(0, q, size=(k, n))
        G = MatrixGF(f, Gd)
        if rank(G) < k:
            continue
        w = min_weight(G)
        if w >= target:
            return _new_code(
                f, n, k, G, nullspace(G),
                d=w, method="exhaustive",
                provenance={"origin": "random_gv", "seed": seed, "gv_target": target},
            )
    raise RuntimeError(f"no [{n},{k}] code of distance {target} in 5000 samples")


# --------------------------------------------------------------- expander

@dataclass(frozen=True)
class ExpanderGraph:
    """Biregular bipartite graph: n bits of degree c, r checks of degree d."""

    n: int
    r: int
    c: int
    d: int
    left: tuple[tuple[int, ...], ...]
    right: tuple[tuple[int, ...], ...]
    seed: int

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """Parallel (bit, check) arrays, one entry per edge, bit-major order."""
        bits = np.repeat(np.arange(self.n), self.c)
        checks = np.concatenate([np.array(nb, dtype=np.int64) for nb in self.left])
        return bits, checks


def make_expander(n: int, c: int, d: int, seed: int) -> tuple[LinearCode, ExpanderGraph]:
    """Configuration-model (c, d)-biregular code; resamples until simple.

    The whole stub matching is resampled whenever a repeated edge appears,
    capped at 1000 attempts, so dense degree pairs with vanishing
    simple-graph probability are rejected rather than silently repaired.
    """
    if n * c % d != 0:
        raise ValueError(f"degree accounting fails: {n}*{c} not divisible by {d}")
    r = n * c // d
    if r >= n:
        raise ValueError(f"{r} checks on {n} bits leaves no rate")
    rng = np.random.default_rng(seed)
    left_nodes = np.repeat(np.arange(n), c)
    right_stubs = np.repeat(np.arange(r), d)
    for _ in range(1000):
        assign = right_stubs[rng.permutation(n * c)]
        key = left_nodes * r + assign
        if np.unique(key).size == n * c:
            break
    else:
        raise RuntimeError(f"no simple ({c},{d}) graph on {n} bits in 1000 matchings")
    f2 = field_of_size(2)
    Hd = np.zeros((r, n), dtype=np.uint8)
    Hd[assign, left_nodes] = 1
    left = tuple(tuple(sorted(assign[i * c:(i + 1) * c].tolist())) for i in range(n))
    right = tuple(tuple(sorted(np.nonzero(Hd[j])[0].tolist())) for j in range(r))
    graph = ExpanderGraph(n, r, c, d, left, right, seed)
    H = MatrixGF(f2, Hd)
    rk = rank(H)
    code = _new_code(
        f2, n, n - rk, nullspace(H), H,
        provenance={"origin": "expander", "c": c, "d": d, "seed": seed},
        validate=False,
    )
    assert not mul(code.G, transpose(code.H)).data.any()
    return code, graph


# ------------------------------------------------------------------- dual

def dual(C: LinearCode) -> LinearCode:
    """Dual code: row spaces of G and H trade places.

    When H carries redundant rows (expander codes keep every check), the dual
    generator is a full-rank basis of the same row space.
    """
    f = C.field
    if C.H.rows == C.n - C.k:
        Hbasis = C.H
    else:
        rr = rref(C.H)
        Hbasis = MatrixGF(f, rr.matrix.data[: rr.rank])
    return _new_code(
        f, C.n, C.n - C.k, Hbasis, C.G,
        provenance={"origin": "dual", "of": C.provenance.get("origin")},
    )


# ---------------------------------------------------------------- bundles

def code_to_text(code: LinearCode, graph: ExpanderGraph | None = None) -> str:
    """Bundle: header, optional distance line, optional alternant recipe,
    G and H in the matrix text format, optional expander adjacency block."""
    parts = [f"linearcode {code.q} {code.n} {code.k}\n"]
    if code.d_certified is not None:
        parts.append(f"d {code.d_certified} {code.d_method}\n")
    if code.provenance.get("origin") == "alternant":
        ext: FieldSpec = code.provenance["ext"]
        parts.append(f"alternant {ext.p} {ext.m0} {ext.m} {code.provenance['r']}\n")
        parts.append("points " + " ".join(map(str, code.provenance["a"])) + "\n")
        parts.append("mults " + " ".join(map(str, code.provenance["y"])) + "\n")
    parts.append(mat_to_text(code.G))
    parts.append(mat_to_text(code.H))
    if graph is not None:
        parts.append(f"expander {graph.n} {graph.r} {graph.c} {graph.d} {graph.seed}\n")
        for nb in graph.left:
            parts.append(" ".join(map(str, nb)) + "\n")
        for nb in graph.right:
            parts.append(" ".join(map(str, nb)) + "\n")
    return "".join(parts)


def code_from_text(text: str) -> tuple[LinearCode, ExpanderGraph | None]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    head = lines[0].split()
    if head[0] != "linearcode":
        raise ValueError(f"not a code bundle: {lines[0]!r}")
    q, n, k = int(head[1]), int(head[2]), int(head[3])
    pos = 1
    d_val = None
    d_method = None
    provenance: dict = {}
    if pos < len(lines) and lines[pos].startswith("d "):
        _, dv, dm = lines[pos].split()
        d_val, d_method = int(dv), dm
        pos += 1
    if pos < len(lines) and lines[pos].startswith("alternant "):
        _, p, m0, m, r = lines[pos].split()
        ext = FieldSpec(int(p), int(m0), int(m))
        pts = tuple(int(v) for v in lines[pos + 1].split()[1:])
        mults = tuple(int(v) for v in lines[pos + 2].split()[1:])
        provenance = {
            "origin": "alternant", "ext": ext, "a": pts, "y": mults,
            "r": int(r), "d_lower": int(r) + 1,
        }
        pos += 3

    def read_matrix(start: int) -> tuple[MatrixGF, int]:
        rows = int(lines[start].split()[1])
        block = "\n".join(lines[start: start + rows + 1])
        return mat_from_text(block), start + rows + 1

    G, pos = read_matrix(pos)
    H, pos = read_matrix(pos)
    graph = None
    if pos < len(lines) and lines[pos].startswith("expander "):
        _, gn, gr, gc, gd, gseed = lines[pos].split()
        gn, gr, gc, gd = int(gn), int(gr), int(gc), int(gd)
        pos += 1
        left = tuple(tuple(int(v) for v in lines[pos + i].split()) for i in range(gn))
        pos += gn
        right = tuple(tuple(int(v) for v in lines[pos + j].split()) for j in range(gr))
        pos += gr
        graph = ExpanderGraph(gn, gr, gc, gd, left, right, int(gseed))
        if not provenance:
            provenance = {"origin": "expander", "c": gc, "d": gd, "seed": int(gseed)}
    field = field_of_size(q)
    code = LinearCode(field, n, k, G, H, d_val, d_method, provenance)
    return code, graph
