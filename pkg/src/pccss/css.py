"""Quantum code constructions: CSS pairs, the partially concatenated family,
Steane-style enlargement, validity reports, and brute-force degenerate
distance oracles.

Check-matrix convention throughout: hx multiplies X-error vectors and hz
multiplies Z-error vectors, so commutation is hx · hzᵀ = 0 and the degenerate
X distance is the minimum weight over null(hx) \\ rowspace(hz).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import InitVar, dataclass, field as dc_field

import numpy as np

from .codes import LinearCode, lift_block, make_expander, make_repetition
from .galois import GF2, FieldSpec, is_irreducible
from .matgf import (
    MatrixGF,
    hstack,
    identity,
    kron,
    mat_from_text,
    mat_to_text,
    mul,
    nullspace,
    rank,
    rref,
    vstack,
    zeros,
)

__all__ = [
    "CssCode",
    "StabilizerCode",
    "ValidityReport",
    "make_css",
    "make_pccss",
    "fast_family",
    "make_enlarged",
    "check_valid",
    "check_valid_stabilizer",
    "distance_css",
    "distance_stabilizer",
    "counting_check",
    "counting_check_enlarged",
    "css_to_text",
    "css_from_text",
    "stab_to_text",
    "stab_from_text",
]


class CssCode:
    """A CSS code held as its two check matrices.

    hx and hz may be passed as matrices or as zero-argument builders; a
    builder runs on first access, so large structured families never pay for
    a matrix the caller does not touch.
    """

    def __init__(
        self,
        n: int,
        hx,
        hz,
        k: int | None = None,
        n0: int | None = None,
        outer: LinearCode | None = None,
        graph=None,
        d_x: int | None = None,
        d_z: int | None = None,
        d_method: str | None = None,
        field: FieldSpec | None = None,
        provenance: dict | None = None,
        validate: bool = True,
    ):
        self.n = n
        self._hx = hx if isinstance(hx, MatrixGF) else None
        self._hx_builder = None if isinstance(hx, MatrixGF) else hx
        self._hz = hz if isinstance(hz, MatrixGF) else None
        self._hz_builder = None if isinstance(hz, MatrixGF) else hz
        self.field = field or (self._hx.field if self._hx is not None else GF2)
        self.n0 = n0
        self.outer = outer
        self.graph = graph
        self.d_x = d_x
        self.d_z = d_z
        self.d_method = d_method
        self.provenance = provenance or {}
        if k is None:
            k = n - rank(self.hx) - rank(self.hz)
        self.k = k
        if validate:
            self._validate()

    @property
    def hx(self) -> MatrixGF:
        if self._hx is None:
            self._hx = self._hx_builder()
        return self._hx

    @property
    def hz(self) -> MatrixGF:
        if self._hz is None:
            self._hz = self._hz_builder()
        return self._hz

    def _validate(self) -> None:
        prod = mul(self.hx, self.hz.T)
        if prod.data.any():
            i, j = map(int, np.argwhere(prod.data)[0])
            raise ValueError(f"check matrices do not commute: entry ({i},{j}) nonzero")
        k_rank = self.n - rank(self.hx) - rank(self.hz)
        if self.k != k_rank:
            raise ValueError(f"k = {self.k} disagrees with rank bookkeeping {k_rank}")
        if self.k < 0:
            raise ValueError("negative logical dimension")
        if self.n <= 26:
            for side, claimed in (("x", self.d_x), ("z", self.d_z)):
                if claimed is not None and distance_css(self, side) != claimed:
                    raise ValueError(f"claimed d_{side} = {claimed} fails re-verification")

    def __repr__(self):
        return f"CssCode([[{self.n}, {self.k}]], q={self.field.size})"


@dataclass(eq=False)
class StabilizerCode:
    """Stabilizer generators as symplectic rows (x-part | z-part)."""

    n: int
    gens: MatrixGF
    k: int
    d: int | None = None
    d_method: str | None = None
    provenance: dict = dc_field(default_factory=dict)
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool = True):
        if not validate:
            return
        x = MatrixGF(self.gens.field, self.gens.data[:, : self.n])
        z = MatrixGF(self.gens.field, self.gens.data[:, self.n :])
        if mul(x, z.T) != mul(z, x.T):
            raise ValueError("generators do not commute under the symplectic form")
        if self.k != self.n - rank(self.gens):
            raise ValueError(f"k = {self.k} disagrees with generator rank")


# ----------------------------------------------------------- constructions

def make_css(c1: LinearCode, c2: LinearCode) -> CssCode:
    """CSS pair: hz from c1, hx from c2; needs the dual of c2 inside c1."""
    if c1.field != c2.field or c1.n != c2.n:
        raise ValueError("component codes must share field and length")
    prod = mul(c1.H, c2.H.T)
    if prod.data.any():
        j = int(np.argwhere(prod.data)[0][1])
        witness = tuple(int(v) for v in c2.H.data[j])
        raise ValueError(f"dual containment fails, witness {witness}")
    return CssCode(
        n=c1.n,
        hx=c2.H,
        hz=c1.H,
        k=c1.k + c2.k - c1.n,
        field=c1.field,
        provenance={"construction": "css"},
    )


def make_pccss(c1: LinearCode, c2: LinearCode) -> CssCode:
    """Partial concatenation: hx = H2·G1 over the inner information symbols,
    hz = H1; commutation is automatic from G1·H1ᵀ = 0.
    """
    if c2.n != c1.k:
        raise ValueError(f"outer code length {c2.n} must equal inner dimension {c1.k}")
    hx = mul(c2.H, c1.G)
    n0 = None
    inner_prov = c1.provenance.get("inner", {})
    if c1.provenance.get("origin") == "lift" and inner_prov.get("origin") == "repetition":
        n0 = inner_prov["n0"]
    return CssCode(
        n=c1.n,
        hx=hx,
        hz=c1.H,
        k=c2.k,
        n0=n0,
        outer=c2,
        field=c1.field,
        provenance={"construction": "pccss"},
    )


def fast_family(N: int, n0: int, c: int, d: int, seed: int, validate: bool = True) -> CssCode:
    """The asymmetric family: lifted repetition blocks inside, a random
    sparse-graph code outside.  Check matrices are built lazily because at
    large N only the decoders (which use the block structure and the outer
    graph directly) ever run.
    """
    if n0 < 2 or N % n0:
        raise ValueError(f"block length {n0} must divide N = {N}")
    copies = N // n0
    outer, graph = make_expander(copies, c, d, seed)
    inner = make_repetition(n0)

    def build_hx():
        return MatrixGF(GF2, np.repeat(outer.H.data, n0, axis=1))

    def build_hz():
        return kron(identity(GF2, copies), inner.H)

    return CssCode(
        n=N,
        hx=build_hx,
        hz=build_hz,
        k=outer.k,
        n0=n0,
        outer=outer,
        graph=graph,
        field=GF2,
        provenance={"construction": "fast-family", "c": c, "d": d, "seed": seed},
        validate=validate,
    )


# ------------------------------------------------------------- enlargement

def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _primitive_poly(deg: int) -> list[int]:
    order = (1 << deg) - 1
    primes = _prime_factors(order)
    for enc in range(1 << deg, 1 << (deg + 1)):
        coeffs = [(enc >> i) & 1 for i in range(deg + 1)]
        if coeffs[0] == 0 or not is_irreducible(coeffs, 2):
            continue
        f = FieldSpec(2, 1, deg, modulus=tuple(coeffs))
        if all(f.pow(2, order // p) != 1 for p in primes):
            return coeffs
    raise RuntimeError(f"no primitive polynomial of degree {deg}")


def _companion(field: FieldSpec, coeffs: list[int]) -> MatrixGF:
    deg = len(coeffs) - 1
    a = np.zeros((deg, deg), dtype=np.uint8)
    for i in range(1, deg):
        a[i, i - 1] = 1
    for i in range(deg):
        a[i, deg - 1] = coeffs[i] % field.p
    return MatrixGF(field, a)


def make_enlarged(c1: LinearCode, c2: LinearCode, seed: int = 0, attempts: int = 2000) -> StabilizerCode:
    """Enlarge the CSS code of a dual-containing c1 by the supercode cut out
    by c2's checks acting through H1.  Quotient generators are paired through
    a fixed-point-free companion matrix; a commuting coset-representative
    shift is searched for and the result verified numerically.
    """
    field = c1.field
    if field.size != 2:
        raise NotImplementedError("enlargement implemented over GF(2)")
    n1, k1 = c1.n, c1.k
    prod = mul(c1.H, c1.H.T)
    if prod.data.any():
        i = int(np.argwhere(prod.data)[0][0])
        witness = tuple(int(v) for v in c1.H.data[i])
        raise ValueError(f"not dual-containing, witness {witness}")
    if c2.n != n1 - k1:
        raise ValueError(f"second code length {c2.n} must equal {n1 - k1}")

    h3 = mul(c2.H, c1.H)
    rr3 = rref(h3)
    h3b = MatrixGF(field, rr3.matrix.data[: rr3.rank])
    k3 = n1 - rr3.rank
    kq = k3 - k1
    if kq < 2:
        raise ValueError(f"quotient dimension {kq} must exceed 1")

    g3 = nullspace(h3b)
    e_rows: list[np.ndarray] = []
    span = c1.G
    for row in g3.data:
        cand = vstack([span, MatrixGF(field, row.reshape(1, -1))])
        if rank(cand) > rank(span):
            e_rows.append(row)
            span = cand
        if len(e_rows) == kq:
            break
    if len(e_rows) < kq:
        raise RuntimeError("quotient basis extraction failed")
    e0 = np.array(e_rows, dtype=np.uint8)

    a_mat = _companion(field, _primitive_poly(kq))
    rng = np.random.default_rng(seed)
    e_cur = None
    for attempt in range(attempts):
        if attempt == 0:
            shifted = e0
        else:
            r = MatrixGF(field, rng.integers(0, 2, size=(kq, k1)).astype(np.uint8))
            shifted = e0 ^ mul(r, c1.G).data
        em = MatrixGF(field, shifted)
        m = mul(em, em.T)
        if mul(m, a_mat.T) != mul(a_mat, m):
            continue
        # a qubit missed by both the product checks and the paired rows
        # would admit an undetectable weight-1 error
        if not np.vstack([h3b.data, shifted]).any(axis=0).all():
            continue
        e_cur = em
        break
    if e_cur is None:
        raise RuntimeError(f"no admissible representative shift in {attempts} attempts")

    r3 = h3b.rows
    pad = zeros(field, r3, n1)
    gens = vstack(
        [
            hstack([h3b, pad]),
            hstack([pad, h3b]),
            hstack([e_cur, mul(a_mat, e_cur)]),
        ]
    )
    k = n1 - rank(gens)
    if k != 2 * k1 + kq - n1:
        raise RuntimeError(f"rank bookkeeping broke: k = {k}")
    return StabilizerCode(
        n=n1,
        gens=gens,
        k=k,
        provenance={"construction": "enlarged", "seed": seed},
    )


# ---------------------------------------------------------------- validity

@dataclass(frozen=True)
class ValidityReport:
    ok: bool
    messages: tuple[str, ...] = ()


def check_valid(q: CssCode) -> ValidityReport:
    msgs = []
    prod = mul(q.hx, q.hz.T)
    bad = np.argwhere(prod.data)
    if len(bad):
        i, j = map(int, bad[0])
        msgs.append(f"commutator has {len(bad)} nonzero entries, first at ({i},{j})")
    k_rank = q.n - rank(q.hx) - rank(q.hz)
    if q.k != k_rank:
        msgs.append(f"k = {q.k} but rank bookkeeping gives {k_rank}")
    if q.k < 0:
        msgs.append("negative logical dimension")
    return ValidityReport(ok=not msgs, messages=tuple(msgs))


def check_valid_stabilizer(s: StabilizerCode) -> ValidityReport:
    msgs = []
    x = MatrixGF(s.gens.field, s.gens.data[:, : s.n])
    z = MatrixGF(s.gens.field, s.gens.data[:, s.n :])
    bad = np.argwhere(mul(x, z.T).data != mul(z, x.T).data)
    if len(bad):
        i, j = map(int, bad[0])
        msgs.append(f"{len(bad)} anticommuting generator pairs, first at ({i},{j})")
    k_rank = s.n - rank(s.gens)
    if s.k != k_rank:
        msgs.append(f"k = {s.k} but rank bookkeeping gives {k_rank}")
    return ValidityReport(ok=not msgs, messages=tuple(msgs))


# --------------------------------------------------------- distance oracles

def _pack_int(row: np.ndarray) -> int:
    out = 0
    for i in np.flatnonzero(row):
        out |= 1 << int(i)
    return out


def _pivot_rows(M: MatrixGF) -> list[tuple[int, int]]:
    rr = rref(M)
    return [
        (col, _pack_int(rr.matrix.data[i]))
        for i, col in enumerate(rr.pivots)
    ]


def _scan_gray(lo: int, hi: int, basis: list[int], pivots: list[tuple[int, int]], weigh):
    """Walk gray codes of [lo, hi); return the best (weight, vector-int)."""
    v = 0
    g = lo ^ (lo >> 1)
    for b in range(g.bit_length()):
        if (g >> b) & 1:
            v ^= basis[b]
    best = None
    for i in range(lo, hi):
        if v:
            x = v
            for col, row in pivots:
                if (x >> col) & 1:
                    x ^= row
            if x:
                w = weigh(v)
                if best is None or (w, v) < best:
                    best = (w, v)
        flip = (i + 1) & -(i + 1)
        if i + 1 < hi:
            v ^= basis[flip.bit_length() - 1]
    return best


def _min_weight_excluded(basis: list[int], pivots, weigh, workers: int):
    total = 1 << len(basis)
    if workers <= 1 or total < 4096:
        return _scan_gray(1, total, basis, pivots, weigh)
    bounds = np.linspace(1, total, workers + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(
            pool.map(
                lambda ab: _scan_gray(int(ab[0]), int(ab[1]), basis, pivots, weigh),
                zip(bounds[:-1], bounds[1:]),
            )
        )
    parts = [p for p in parts if p is not None]
    return min(parts) if parts else None


def distance_css(q: CssCode, side: str, cap: int = 26, workers: int = 1) -> int:
    """Exact degenerate distance on one side by nullspace enumeration."""
    if q.field.size != 2:
        raise ValueError("distance oracle implemented over GF(2)")
    side = side.lower()
    if side == "x":
        a, b = q.hx, q.hz
    elif side == "z":
        a, b = q.hz, q.hx
    else:
        raise ValueError(f"side must be x or z, got {side!r}")
    basis_m = nullspace(a)
    if basis_m.rows > cap:
        raise ValueError(f"nullspace dimension {basis_m.rows} exceeds cap {cap}")
    basis = [_pack_int(row) for row in basis_m.data]
    pivots = _pivot_rows(b)
    best = _min_weight_excluded(basis, pivots, lambda v: v.bit_count(), workers)
    if best is None:
        raise ValueError(f"no logical operator on side {side}")
    return best[0]


def distance_stabilizer(s: StabilizerCode, cap: int = 12) -> int:
    """Minimum symplectic weight over the normalizer minus the stabilizer."""
    n = s.n
    if n > cap:
        raise ValueError(f"n = {n} exceeds cap {cap}")
    field = s.gens.field
    x = MatrixGF(field, s.gens.data[:, :n])
    z = MatrixGF(field, s.gens.data[:, n:])
    commute = hstack([z, x])  # error (x|z) commutes iff z·x_e + x·z_e = 0
    basis_m = nullspace(commute)
    basis = [_pack_int(row) for row in basis_m.data]
    pivots = _pivot_rows(s.gens)
    mask = (1 << n) - 1

    def weigh(v: int) -> int:
        return ((v & mask) | (v >> n)).bit_count()

    best = _min_weight_excluded(basis, pivots, weigh, workers=1)
    if best is None:
        raise ValueError("normalizer equals the stabilizer group")
    return best[0]


# --------------------------------------------------------- counting checks

def _counting_core(n1: int, kdim: int, f: int, m: int, lam: int, q: int):
    if not 1 <= f <= kdim:
        raise ValueError(f"f = {f} must lie in [1, {kdim}]")
    if m < 2:
        raise ValueError("m must be at least 2")
    if (n1 - f) % m:
        raise ValueError(f"m = {m} must divide n1 - f = {n1 - f}")
    s = sum((q - 1) ** j * math.comb(n1, j) for j in range(1, lam))
    ok = s**m < (q**m - 1) ** (kdim - f)
    margin = (kdim - f) / m * math.log(q**m - 1) - (math.log(s) if s else 0.0)
    return ok, margin


def counting_check(n1: int, k1: int, f_x: int, m: int, lam_x: int, q: int = 2):
    """Exact big-integer evaluation of the search-space counting inequality,
    returning its truth value and the log margin."""
    return _counting_core(n1, k1, f_x, m, lam_x, q)


def counting_check_enlarged(n1: int, r1: int, f_a: int, m: int, lam_a: int, q: int = 2):
    """Same inequality with the enlarged construction's row count in place
    of the code dimension."""
    return _counting_core(n1, r1, f_a, m, lam_a, q)


# ----------------------------------------------------------------- bundles

def css_to_text(q: CssCode) -> str:
    lines = [f"csscode {q.field.size} {q.n} {q.k}"]
    if q.n0 is not None:
        lines.append(f"n0 {q.n0}")
    name = q.provenance.get("construction")
    if name:
        lines.append(f"construction {name}")
    if q.d_x is not None:
        lines.append(f"dx {q.d_x} {q.d_method or 'uncertified'}")
    if q.d_z is not None:
        lines.append(f"dz {q.d_z} {q.d_method or 'uncertified'}")
    lines.append("hx")
    lines.append(mat_to_text(q.hx).rstrip("\n"))
    lines.append("hz")
    lines.append(mat_to_text(q.hz).rstrip("\n"))
    return "\n".join(lines) + "\n"


def _take_matrix(lines: list[str], at: int) -> tuple[MatrixGF, int]:
    rows = int(lines[at].split()[1])
    chunk = lines[at : at + 1 + rows]
    return mat_from_text("\n".join(chunk)), at + 1 + rows


def _outer_from_hx(hx: MatrixGF, n0: int) -> LinearCode:
    h2 = MatrixGF(hx.field, hx.data[:, ::n0])
    k = h2.cols - rank(h2)
    return LinearCode(
        field=h2.field,
        n=h2.cols,
        k=k,
        G=nullspace(h2),
        H=h2,
        provenance={"origin": "bundle"},
    )


def css_from_text(text: str, validate: bool = True) -> CssCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    tag, qs, ns, ks = lines[0].split()
    if tag != "csscode":
        raise ValueError(f"not a csscode bundle: {lines[0]!r}")
    n, k = int(ns), int(ks)
    n0 = None
    construction = None
    d_x = d_z = None
    d_method = None
    at = 1
    while lines[at] not in ("hx",):
        key, val = lines[at].split(maxsplit=1)
        if key == "n0":
            n0 = int(val)
        elif key == "construction":
            construction = val
        elif key in ("dx", "dz"):
            dist, d_method = val.split()
            if key == "dx":
                d_x = int(dist)
            else:
                d_z = int(dist)
        at += 1
    at += 1  # past "hx"
    hx, at = _take_matrix(lines, at)
    if lines[at] != "hz":
        raise ValueError("bundle missing hz section")
    hx_rows_end = at + 1
    hz, at = _take_matrix(lines, hx_rows_end)
    outer = _outer_from_hx(hx, n0) if n0 else None
    prov = {"construction": construction} if construction else {}
    return CssCode(
        n=n,
        hx=hx,
        hz=hz,
        k=k,
        n0=n0,
        outer=outer,
        d_x=d_x,
        d_z=d_z,
        d_method=d_method,
        provenance=prov,
        validate=validate,
    )


def stab_to_text(s: StabilizerCode) -> str:
    lines = [f"stabcode {s.gens.field.size} {s.n} {s.k}"]
    if s.d is not None:
        lines.append(f"d {s.d} {s.d_method or 'uncertified'}")
    lines.append("gens")
    lines.append(mat_to_text(s.gens).rstrip("\n"))
    return "\n".join(lines) + "\n"


def stab_from_text(text: str, validate: bool = True) -> StabilizerCode:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    tag, qs, ns, ks = lines[0].split()
    if tag != "stabcode":
        raise ValueError(f"not a stabcode bundle: {lines[0]!r}")
    d = None
    d_method = None
    at = 1
    while lines[at] != "gens":
        key, val = lines[at].split(maxsplit=1)
        if key == "d":
            dist, d_method = val.split()
            d = int(dist)
        else:
            raise ValueError(f"unknown bundle key {key!r}")
        at += 1
    gens, _ = _take_matrix(lines, at + 1)
    return StabilizerCode(
        n=int(ns), gens=gens, k=int(ks), d=d, d_method=d_method, validate=validate
    )
