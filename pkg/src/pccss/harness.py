"""Seeded Monte Carlo experiments on block-concatenated CSS codes: logical
failure rates under asymmetric Pauli noise, adversarial fixed-weight sweeps,
and serial-versus-partitioned decoder timing.

Every trial is keyed by (seed, trial index), so record streams are identical
for any partition width and any scheduling of the workers.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bounds import pz_upper_bound
from .channel import PauliError, make_channel, sample_error
from .decode import (
    CORRECTED,
    exhaustive_decode,
    pccss_decode_x,
    pccss_decode_z,
)
from .matgf import in_rowspace, rref

__all__ = [
    "ExperimentConfig",
    "TrialRecord",
    "SweepRow",
    "TimingRow",
    "TimingReport",
    "logical_check",
    "run_trials",
    "adversarial_sweep",
    "timing_scaling",
    "wilson_interval",
    "wilson_upper",
    "records_to_csv",
]


def wilson_interval(failures: int, trials: int, z: float = 1.959963984540054):
    """Two-sided Wilson score interval for a binomial rate."""
    if trials < 1:
        raise ValueError("need at least one trial")
    phat = failures / trials
    denom = 1 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, center - half), min(1.0, center + half)


def wilson_upper(failures: int, trials: int, z: float = 1.6448536269514722) -> float:
    """One-sided 95% Wilson upper confidence limit (default z)."""
    return wilson_interval(failures, trials, z=z)[1]


# ----------------------------------------------------------- logical check

def _cached_rref(q, attr: str, matrix):
    cache = getattr(q, attr, None)
    if cache is None:
        cache = rref(matrix)
        try:
            setattr(q, attr, cache)
        except AttributeError:
            pass
    return cache


def logical_check(q, residual: PauliError) -> tuple[bool, bool]:
    """(x_failed, z_failed): a side fails when its residual commutes with
    every check yet is not itself a product of the other side's checks."""
    n0 = getattr(q, "n0", None)
    outer = getattr(q, "outer", None)
    if n0 and outer is not None:
        n2 = q.n // n0
        h2 = outer.H.data
        pi = residual.x.reshape(n2, n0).sum(axis=1).astype(np.uint8) % 2
        x_failed = bool(pi.any()) and not ((h2 @ pi) % 2).any()
        blocks = residual.z.reshape(n2, n0)
        if (blocks ^ blocks[:, :1]).any():
            z_failed = False
        else:
            w = blocks[:, 0]
            if not w.any():
                z_failed = False
            else:
                z_failed = not in_rowspace(_cached_rref(q, "_h2_rref", outer.H), w)
        return x_failed, z_failed

    sx = (q.hx.data @ residual.x) % 2
    x_failed = not sx.any() and residual.x.any() and not in_rowspace(
        _cached_rref(q, "_hz_rref", q.hz), residual.x
    )
    sz = (q.hz.data @ residual.z) % 2
    z_failed = not sz.any() and residual.z.any() and not in_rowspace(
        _cached_rref(q, "_hx_rref", q.hx), residual.z
    )
    return bool(x_failed), bool(z_failed)


# ------------------------------------------------------------- experiments

@dataclass
class ExperimentConfig:
    p: float
    zeta: float
    trials: int
    n: int | None = None
    n0: int | None = None
    c: int = 3
    d: int = 6
    code_seed: int = 0
    bundle: str | None = None
    seed: int = 0
    partitions: int | None = None
    decoder: str = "flip"
    max_rounds: int = 100
    out: str | None = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trial count must be >= 1")
        if self.decoder not in ("flip", "exhaustive"):
            raise ValueError(f"unknown decoder {self.decoder!r}")
        if self.bundle is None and (self.n is None or self.n0 is None):
            raise ValueError("config needs either a bundle path or (n, n0)")
        if self.bundle is not None and not os.path.exists(self.bundle):
            raise ValueError(f"bundle {self.bundle!r} does not exist")

    def resolved_partitions(self) -> int:
        if self.partitions is not None:
            return max(1, self.partitions)
        return max(1, int(os.environ.get("PCCSS_WORKERS", "1")))


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    wt_x: int
    wt_z: int
    status_x: str
    status_z: str
    x_failed: bool
    z_failed: bool
    flips: int
    block_decodes: int
    decode_seconds: float


def _build_code(cfg: ExperimentConfig):
    if cfg.bundle is not None:
        from .css import css_from_text

        with open(cfg.bundle) as fh:
            return css_from_text(fh.read())
    from .css import fast_family

    return fast_family(cfg.n, cfg.n0, c=cfg.c, d=cfg.d, seed=cfg.code_seed, validate=False)


def _syndromes(q, e: PauliError) -> tuple[np.ndarray, np.ndarray]:
    """Both syndromes through the block structure, never materializing the
    full check matrices."""
    n0 = q.n0
    n2 = q.n // n0
    pi = e.x.reshape(n2, n0).sum(axis=1).astype(np.uint8) % 2
    s_x = (q.outer.H.data @ pi % 2).astype(np.uint8)
    blocks = e.z.reshape(n2, n0)
    s_z = (blocks[:, : n0 - 1] ^ blocks[:, n0 - 1 :]).ravel()
    return s_x, s_z


def _decode_x(q, s_x, decoder: str, max_rounds: int):
    if decoder == "flip":
        return pccss_decode_x(q, s_x, max_rounds=max_rounds)
    out = exhaustive_decode(q.outer, s_x)
    est = np.zeros(q.n, dtype=np.uint8)
    est[np.flatnonzero(out.estimate) * q.n0] = 1
    out.estimate = est
    return out


def _one_trial(q, ch, cfg: ExperimentConfig, t: int) -> TrialRecord:
    e = sample_error(ch, q.n, cfg.seed, trial=t)
    s_x, s_z = _syndromes(q, e)
    t0 = time.perf_counter()
    out_x = _decode_x(q, s_x, cfg.decoder, cfg.max_rounds)
    out_z = pccss_decode_z(q, s_z)
    seconds = time.perf_counter() - t0
    residual = PauliError(n=q.n, x=e.x ^ out_x.estimate, z=e.z ^ out_z.estimate)
    x_logical, z_logical = logical_check(q, residual)
    return TrialRecord(
        trial=t,
        wt_x=int(e.x.sum()),
        wt_z=int(e.z.sum()),
        status_x=out_x.status,
        status_z=out_z.status,
        x_failed=bool(x_logical or out_x.status != CORRECTED),
        z_failed=bool(z_logical or out_z.status != CORRECTED),
        flips=int(out_x.counters.get("flips", 0)),
        block_decodes=int(out_z.counters.get("block_decodes", 0)),
        decode_seconds=seconds,
    )


def run_trials(cfg: ExperimentConfig, code=None):
    """Run cfg.trials seeded trials; returns (records, summary) and writes a
    CSV when cfg.out is set.  Identical output for every partition width."""
    q = code if code is not None else _build_code(cfg)
    if getattr(q, "n0", None) is None or getattr(q, "outer", None) is None:
        raise ValueError("run_trials needs a block-structured code with n0 and outer")
    ch = make_channel(cfg.p, cfg.zeta)
    width = cfg.resolved_partitions()
    trials = range(cfg.trials)
    if width == 1:
        records = [_one_trial(q, ch, cfg, t) for t in trials]
    else:
        chunks = np.array_split(np.arange(cfg.trials), width)
        with ThreadPoolExecutor(max_workers=width) as pool:
            parts = list(
                pool.map(lambda idx: [_one_trial(q, ch, cfg, int(t)) for t in idx], chunks)
            )
        records = [r for part in parts for r in part]

    x_fail = sum(r.x_failed for r in records)
    z_fail = sum(r.z_failed for r in records)
    summary = {
        "n": q.n,
        "n0": q.n0,
        "p": cfg.p,
        "zeta": cfg.zeta,
        "trials": cfg.trials,
        "x_failures": x_fail,
        "z_failures": z_fail,
        "x_rate": x_fail / cfg.trials,
        "z_rate": z_fail / cfg.trials,
        "x_wilson_upper95": wilson_upper(x_fail, cfg.trials),
        "z_wilson_upper95": wilson_upper(z_fail, cfg.trials),
        "pz_bound": pz_upper_bound(q.n, q.n0, ch.p_z),
        "pz_bound_tight": pz_upper_bound(q.n, q.n0, ch.p_z, tight=True),
    }
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(records_to_csv(records, summary))
    return records, summary


_CSV_FIELDS = (
    "trial",
    "wt_x",
    "wt_z",
    "status_x",
    "status_z",
    "x_failed",
    "z_failed",
    "flips",
    "block_decodes",
    "decode_seconds",
)


def records_to_csv(records, summary=None) -> str:
    lines = [",".join(_CSV_FIELDS)]
    for r in records:
        vals = [getattr(r, f) for f in _CSV_FIELDS]
        lines.append(",".join(f"{v:.6g}" if isinstance(v, float) else str(v) for v in vals))
    if summary:
        for k, v in summary.items():
            lines.append(f"# {k} {v}")
    return "\n".join(lines) + "\n"


# -------------------------------------------------------- adversarial sweep

@dataclass(frozen=True)
class SweepRow:
    weight: int
    trials: int
    successes: int
    exhaustive: bool

    @property
    def rate(self) -> float:
        return self.successes / self.trials


def _weight_patterns(n: int, w: int, samples: int, rng):
    if w == 0:
        return [np.zeros(0, dtype=np.int64)], True
    if math.comb(n, w) <= 10_000:
        return [np.array(t, dtype=np.int64) for t in combinations(range(n), w)], True
    picks = [np.sort(rng.choice(n, size=w, replace=False)) for _ in range(samples)]
    return picks, False


def adversarial_sweep(q, side: str, weights, samples: int = 500, seed: int = 0,
                      decoder: str = "auto", max_rounds: int = 100):
    """Correction rate per exact error weight on one side.  Exhaustive when
    the pattern count is at most 10^4, sampled otherwise."""
    side = side.lower()
    if side not in ("x", "z"):
        raise ValueError(f"side must be x or z, got {side!r}")
    if any(w > q.n or w < 0 for w in weights):
        raise ValueError("weights must lie in [0, n]")
    if decoder == "auto":
        outer = q.outer
        small = outer.n <= 24 and outer.field.size**outer.k <= 1 << 18
        decoder = "exhaustive" if small else "flip"
    rng = np.random.default_rng(seed)
    zeros = np.zeros(q.n, dtype=np.uint8)
    rows = []
    for w in weights:
        patterns, exhaustive = _weight_patterns(q.n, int(w), samples, rng)
        good = 0
        for pos in patterns:
            vec = zeros.copy()
            vec[pos] = 1
            if side == "x":
                e = PauliError(n=q.n, x=vec, z=zeros)
            else:
                e = PauliError(n=q.n, x=zeros, z=vec)
            s_x, s_z = _syndromes(q, e)
            if side == "x":
                out = _decode_x(q, s_x, decoder, max_rounds)
                residual = PauliError(n=q.n, x=vec ^ out.estimate, z=zeros)
                failed = logical_check(q, residual)[0]
            else:
                out = pccss_decode_z(q, s_z)
                residual = PauliError(n=q.n, x=zeros, z=vec ^ out.estimate)
                failed = logical_check(q, residual)[1]
            if out.status == CORRECTED and not failed:
                good += 1
        rows.append(SweepRow(weight=int(w), trials=len(patterns), successes=good,
                             exhaustive=exhaustive))
    return tuple(rows)


# ------------------------------------------------------------------ timing

@dataclass(frozen=True)
class TimingRow:
    n: int
    serial_seconds: float
    partitioned_seconds: float
    partitions: int


@dataclass(frozen=True)
class TimingReport:
    rows: tuple[TimingRow, ...]
    ratios: tuple[float, ...]
    ok: bool
    threshold: float

    def csv_text(self) -> str:
        lines = ["n,serial_seconds,partitioned_seconds,partitions"]
        for r in self.rows:
            lines.append(
                f"{r.n},{r.serial_seconds:.6g},{r.partitioned_seconds:.6g},{r.partitions}"
            )
        for i, ratio in enumerate(self.ratios):
            lines.append(f"# doubling_ratio_{i} {ratio:.4g}")
        lines.append(f"# ok {self.ok}")
        return "\n".join(lines) + "\n"


def timing_scaling(codes, trials: int = 32, partitions: int = 2, p: float = 0.05,
                   seed: int = 0, repeats: int = 3, threshold: float = 2.5) -> TimingReport:
    """Serial and partitioned Z-decode wall clock over a code grid sorted by
    size; checks that serial time at most `threshold`-folds per size doubling."""
    sizes = [q.n for q in codes]
    if sizes != sorted(sizes):
        raise ValueError("code grid must be sorted by n")
    ch = make_channel(p, math.inf)
    rows = []
    for q in codes:
        batches = [
            _syndromes(q, sample_error(ch, q.n, seed, trial=t))[1] for t in range(trials)
        ]
        serial = min(
            _timed_decode(q, batches, 1) for _ in range(repeats)
        )
        parted = min(
            _timed_decode(q, batches, partitions) for _ in range(repeats)
        )
        rows.append(TimingRow(n=q.n, serial_seconds=serial,
                              partitioned_seconds=parted, partitions=partitions))
    ratios = []
    for prev, cur in zip(rows, rows[1:]):
        if cur.n == 2 * prev.n:
            ratios.append(cur.serial_seconds / prev.serial_seconds)
    ok = all(r <= threshold for r in ratios)
    return TimingReport(rows=tuple(rows), ratios=tuple(ratios), ok=ok, threshold=threshold)


def _timed_decode(q, batches, partitions: int) -> float:
    t0 = time.perf_counter()
    for s_z in batches:
        pccss_decode_z(q, s_z, partitions=partitions)
    return time.perf_counter() - t0
