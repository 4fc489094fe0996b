"""Brute-force path-sum reference for the walk.

The amplitude of ``(position, label)`` after ``N`` steps is the sum, over
every sequence of coin labels ``c_1 .. c_N``, of the product of coin-matrix
elements picked up along the path times the initial amplitude. Nothing here
touches the evolution engine; paths are enumerated depth-first in a fixed
order so the result is reproducible bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import OracleBoundError
from .evolution import GameSchedule, ShiftRule
from .state import CoinBasis, WalkerState

__all__ = [
    "MAX_STEPS",
    "MAX_PATHS",
    "PathSumConfig",
    "oracle_state",
    "oracle_amplitude",
    "compare_with_engine",
]

MAX_STEPS = 12
MAX_PATHS = 3**12


@dataclass(frozen=True)
class PathSumConfig:
    basis: CoinBasis
    position: int
    coin_amplitudes: Sequence[complex]
    coin_a: np.ndarray
    coin_b: np.ndarray
    schedule: GameSchedule
    rule: ShiftRule
    steps: int

    def check_bound(self):
        d = self.basis.dimension
        if self.steps < 0:
            raise OracleBoundError("number of steps must be non-negative")
        if self.steps > MAX_STEPS or d**self.steps > MAX_PATHS:
            raise OracleBoundError(
                f"{d}^{self.steps} paths exceeds the oracle bound "
                f"(N <= {MAX_STEPS}, at most {MAX_PATHS} paths)"
            )


def _matrix(coin) -> list[list[complex]]:
    m = getattr(coin, "matrix", coin)
    return [[complex(x) for x in row] for row in np.asarray(m)]


def oracle_state(config: PathSumConfig) -> dict[tuple[int, str], complex]:
    """All nonzero path-sum amplitudes keyed by ``(position, label)``."""
    config.check_bound()
    labels = config.basis.labels
    d = len(labels)
    disp = [config.rule.displacement[lab] for lab in labels]
    mats = {"A": _matrix(config.coin_a), "B": _matrix(config.coin_b)}
    coins = [mats[config.schedule.coin_for_step(t)] for t in range(config.steps)]
    n_steps = config.steps
    result: dict[tuple[int, str], complex] = {}

    # Each leaf of the recursion is one complete path c_0 -> c_1 -> ... -> c_N.
    def walk(t: int, prev: int, pos: int, amp: complex):
        if t == n_steps:
            key = (pos, labels[prev])
            result[key] = result.get(key, 0j) + amp
            return
        row_src = coins[t]
        for c in range(d):
            walk(t + 1, c, pos + disp[c], amp * row_src[c][prev])

    for c0, a0 in enumerate(config.coin_amplitudes):
        a0 = complex(a0)
        if a0 != 0:
            walk(0, c0, config.position, a0)
    return result


def oracle_amplitude(config: PathSumConfig, position: int, label) -> complex:
    return oracle_state(config).get((position, str(label)), 0j)


def compare_with_engine(config: PathSumConfig, engine_state: WalkerState) -> float:
    """Max ``|engine - oracle|`` over every (position, label) either one populates."""
    ref = oracle_state(config)
    keys = set(ref)
    for pos, row in engine_state.amplitudes.items():
        for lab, amp in zip(engine_state.basis.labels, row):
            if amp != 0:
                keys.add((pos, lab))
    worst = 0.0
    for pos, lab in keys:
        diff = abs(engine_state.amplitude(pos, lab) - ref.get((pos, lab), 0j))
        worst = max(worst, diff)
    return worst
