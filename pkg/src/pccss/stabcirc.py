"""Encoding circuits for block-concatenated CSS codes, plus a small
stabilizer-tableau simulator to verify them.

The encoder works in two stages.  Stage I writes the outer codeword onto one
representative qubit per block with CNOTs taken from the outer generator's
standard form.  Stage II puts each representative in superposition and fans
it out across its block, which realizes the block-repetition checks.  Stage
II uses exactly one CNOT per non-representative qubit.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .galois import GF2
from .matgf import MatrixGF, in_rowspace, rref, standard_form

__all__ = [
    "Gate",
    "Circuit",
    "Tableau",
    "VerifyReport",
    "build_encoder",
    "circuit_depth",
    "tableau_new",
    "tableau_apply",
    "tableau_run",
    "verify_encoder",
    "circuit_to_text",
    "circuit_from_text",
]


@dataclass(frozen=True)
class Gate:
    name: str  # "H" or "CX"
    qubits: tuple[int, ...]
    stage: str = "I"


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...] = ()
    meta: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        for g in self.gates:
            if g.name not in ("H", "CX"):
                raise ValueError(f"unsupported gate {g.name!r}")
            if len(g.qubits) != (1 if g.name == "H" else 2):
                raise ValueError(f"{g.name} takes {1 if g.name == 'H' else 2} qubits")
            if len(set(g.qubits)) != len(g.qubits):
                raise ValueError("gate qubits must be distinct")
            if any(not 0 <= q < self.n for q in g.qubits):
                raise ValueError(f"qubit index out of range in {g}")


def circuit_depth(c: Circuit) -> tuple[int, int]:
    """Greedy layering: each gate lands on the first layer where all its
    qubits are free.  Returns (depth, gate count)."""
    free = np.zeros(c.n, dtype=np.int64)
    depth = 0
    for g in c.gates:
        layer = max(int(free[q]) for q in g.qubits) + 1
        for q in g.qubits:
            free[q] = layer
        depth = max(depth, layer)
    return depth, len(c.gates)


# ------------------------------------------------- stage I gate scheduling

def _color_edges(edges: list[tuple[int, int]]) -> list[int]:
    """Proper edge coloring of a bipartite multigraph with max-degree many
    colors, by alternating-path exchange.  edges are (control, target) with
    the two endpoint namespaces disjoint by construction."""
    used: dict[tuple[int, int], dict[int, int]] = {}
    color_of = [0] * len(edges)
    other = {}

    def node_colors(v):
        return used.setdefault(v, {})

    for idx, (u, v) in enumerate(edges):
        cu = node_colors(("c", u))
        cv = node_colors(("t", v))
        a = 0
        while a in cu:
            a += 1
        b = 0
        while b in cv:
            b += 1
        if a != b:
            # walk the a/b alternating path from the target side and swap;
            # bipartiteness keeps the path away from the control endpoint
            x, want = ("t", v), a
            path = []
            while want in node_colors(x):
                eidx = node_colors(x)[want]
                path.append((x, other[(eidx, x)], eidx, want))
                x = other[(eidx, x)]
                want = b if want == a else a
            for x, y, eidx, col in path:
                del node_colors(x)[col]
                del node_colors(y)[col]
            for x, y, eidx, col in path:
                newc = b if col == a else a
                node_colors(x)[newc] = eidx
                node_colors(y)[newc] = eidx
                color_of[eidx] = newc
        cu = node_colors(("c", u))
        cv = node_colors(("t", v))
        cu[a] = idx
        cv[a] = idx
        color_of[idx] = a
        other[(idx, ("c", u))] = ("t", v)
        other[(idx, ("t", v))] = ("c", u)
    return color_of


def build_encoder(q) -> Circuit:
    """Two-stage encoder for a code with block structure: q must carry n0
    (block length) and outer (the code across block representatives).

    Stage I CNOTs are emitted in edge-colored layers so the greedy depth of
    that stage never exceeds the larger of the parity-part row and column
    weights.  Stage II is one Hadamard per block plus a star fan-out from
    each representative, exactly n - n/n0 CNOTs.
    """
    n0 = getattr(q, "n0", None)
    outer = getattr(q, "outer", None)
    if n0 is None or outer is None:
        raise ValueError("encoder needs a block-structured code with n0 and outer set")
    copies = q.n // n0
    gstd, perm = standard_form(outer.G)
    k2 = gstd.rows
    p2 = gstd.data[:, k2:]

    edges = [(j, i) for i in range(copies - k2) for j in range(k2) if p2[j, i]]
    colors = _color_edges(edges)
    gates = []
    for layer in range(max(colors, default=-1) + 1):
        for eidx, (j, i) in enumerate(edges):
            if colors[eidx] == layer:
                ctrl = int(perm[j]) * n0
                tgt = int(perm[k2 + i]) * n0
                gates.append(Gate("CX", (ctrl, tgt), "I"))
    stage_one = len(gates)

    for b in range(copies):
        gates.append(Gate("H", (b * n0,), "II"))
    for b in range(copies):
        rep = b * n0
        for j in range(1, n0):
            gates.append(Gate("CX", (rep, rep + j), "II"))

    circ = Circuit(q.n, tuple(gates))
    depth, count = circuit_depth(circ)
    circ.meta.update(
        stage_one_cnots=stage_one,
        stage_two_cnots=q.n - copies,
        hadamards=copies,
        depth=depth,
        gate_count=count,
    )
    return circ


# ----------------------------------------------------------------- tableau

@dataclass
class Tableau:
    """2n rows in (x|z) form with sign bits: rows [0, n) are destabilizers,
    rows [n, 2n) the stabilizer generators."""

    n: int
    x: np.ndarray
    z: np.ndarray
    r: np.ndarray

    def stabilizer_rows(self) -> np.ndarray:
        return np.hstack([self.x[self.n :], self.z[self.n :]])


def tableau_new(n: int) -> Tableau:
    x = np.zeros((2 * n, n), dtype=np.uint8)
    z = np.zeros((2 * n, n), dtype=np.uint8)
    x[:n] = np.eye(n, dtype=np.uint8)
    z[n:] = np.eye(n, dtype=np.uint8)
    return Tableau(n=n, x=x, z=z, r=np.zeros(2 * n, dtype=np.uint8))


def tableau_apply(t: Tableau, g: Gate) -> None:
    if g.name == "H":
        (a,) = g.qubits
        t.r ^= t.x[:, a] & t.z[:, a]
        t.x[:, a], t.z[:, a] = t.z[:, a].copy(), t.x[:, a].copy()
    elif g.name == "CX":
        c, a = g.qubits
        t.r ^= t.x[:, c] & t.z[:, a] & (t.x[:, a] ^ t.z[:, c] ^ 1)
        t.x[:, a] ^= t.x[:, c]
        t.z[:, c] ^= t.z[:, a]
    else:
        raise ValueError(f"unsupported gate {g.name!r}")


def tableau_run(c: Circuit) -> Tableau:
    t = tableau_new(c.n)
    for g in c.gates:
        tableau_apply(t, g)
    return t


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    messages: tuple[str, ...] = ()


def verify_encoder(q, c: Circuit) -> VerifyReport:
    """Run the circuit on the all-zero state and check that every X check
    row (as an X operator) and Z check row (as a Z operator) lies in the
    GF(2) row space of the resulting stabilizer generators."""
    if c.n > 64:
        raise ValueError(f"tableau verification capped at 64 qubits, got {c.n}")
    t = tableau_run(c)
    rr = rref(MatrixGF(GF2, t.stabilizer_rows()))
    pad = np.zeros(c.n, dtype=np.uint8)
    msgs = []
    for label, rows, x_side in (("x", q.hx, True), ("z", q.hz, False)):
        for i, h in enumerate(rows.data):
            vec = np.concatenate([h, pad] if x_side else [pad, h])
            if not in_rowspace(rr, vec):
                msgs.append(f"{label}-check row {i} missing from encoded group")
    return VerifyReport(ok=not msgs, messages=tuple(msgs))


# ---------------------------------------------------------------- file IO

def circuit_to_text(c: Circuit) -> str:
    lines = [f"# qubits {c.n}"]
    stage = None
    for g in c.gates:
        if g.stage != stage:
            stage = g.stage
            lines.append(f"# stage {stage}")
        lines.append(f"H {g.qubits[0]}" if g.name == "H" else f"CX {g.qubits[0]} {g.qubits[1]}")
    return "\n".join(lines) + "\n"


def circuit_from_text(text: str) -> Circuit:
    n = None
    stage = "I"
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if parts[:1] == ["qubits"]:
                n = int(parts[1])
            elif parts[:1] == ["stage"]:
                stage = parts[1]
            continue
        parts = line.split()
        if parts[0] == "H":
            gates.append(Gate("H", (int(parts[1]),), stage))
        elif parts[0] == "CX":
            gates.append(Gate("CX", (int(parts[1]), int(parts[2])), stage))
        else:
            raise ValueError(f"unrecognized gate line {line!r}")
    if n is None:
        n = 1 + max((max(g.qubits) for g in gates), default=-1)
    return Circuit(n, tuple(gates))
