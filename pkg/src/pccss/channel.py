"""Asymmetric Pauli channel: independent per-qubit I/X/Y/Z draws with
p_X = p_Y and a Z bias controlled by the asymmetry zeta.

Sampling is counter-based: every (seed, trial) pair gets its own keyed
generator, so partitioned parallel trial loops reproduce the serial stream
no matter how the work is scheduled.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["PauliChannel", "PauliError", "make_channel", "sample_error"]


@dataclass(frozen=True)
class PauliChannel:
    p: float
    zeta: float
    p_x: float
    p_y: float
    p_z: float

    @property
    def p_i(self) -> float:
        return 1.0 - self.p


@dataclass(frozen=True)
class PauliError:
    n: int
    x: np.ndarray
    z: np.ndarray


def make_channel(p: float, zeta: float) -> PauliChannel:
    """p_X = p_Y = p/(2*zeta+1); p_Z takes the rest of p.  zeta may be
    math.inf for a pure-Z channel."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"total error probability {p} outside [0, 1]")
    if not zeta >= 1.0:
        raise ValueError(f"asymmetry {zeta} must be >= 1")
    p_x = 0.0 if math.isinf(zeta) else p / (2.0 * zeta + 1.0)
    return PauliChannel(p=p, zeta=zeta, p_x=p_x, p_y=p_x, p_z=p - 2.0 * p_x)


def sample_error(ch: PauliChannel, n: int, seed: int, trial: int = 0) -> PauliError:
    """One i.i.d. error on n qubits from the generator keyed (seed, trial)."""
    key = np.array([seed, trial], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    u = rng.random(n)
    x = (u < ch.p_x + ch.p_y).astype(np.uint8)
    z = ((u >= ch.p_x) & (u < ch.p)).astype(np.uint8)
    return PauliError(n=n, x=x, z=z)
