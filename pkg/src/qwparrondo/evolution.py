"""Walk dynamics: coin-then-shift steps under a game schedule."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

import numpy as np

from .coins import CoinMatrix
from .errors import DimensionError
from .state import CoinBasis, WalkerState

__all__ = [
    "ShiftRule",
    "QUBIT_S",
    "QUTRIT_S",
    "QUTRIT_S1",
    "QUTRIT_S2",
    "SHIFT_RULES",
    "Periodic",
    "Pattern",
    "GameSchedule",
    "coin_for_step",
    "apply_coin",
    "apply_shift",
    "step",
    "iter_evolution",
    "evolve",
]


@dataclass(frozen=True)
class ShiftRule:
    """Coin label -> lattice displacement in {-1, 0, +1}."""

    displacement: Mapping[str, int] = field(hash=False)
    name: str = "custom"

    def __post_init__(self):
        disp = {str(k): int(v) for k, v in dict(self.displacement).items()}
        bad = {k: v for k, v in disp.items() if v not in (-1, 0, 1)}
        if bad:
            raise ValueError(f"displacements must be -1, 0 or +1, got {bad}")
        object.__setattr__(self, "displacement", disp)

    def compile(self, basis: CoinBasis) -> tuple[int, ...]:
        """Displacements in slot order of ``basis``."""
        if set(self.displacement) != set(basis.labels):
            raise DimensionError(
                f"shift rule {self.name!r} covers labels {sorted(self.displacement)}, "
                f"basis has {sorted(basis.labels)}"
            )
        return tuple(self.displacement[lab] for lab in basis.labels)

    def inverse(self) -> "ShiftRule":
        return ShiftRule({k: -v for k, v in self.displacement.items()}, self.name + "^-1")


QUBIT_S = ShiftRule({"0": +1, "1": -1}, "S")
QUTRIT_S = ShiftRule({"0": +1, "1": 0, "2": -1}, "S_prime")
QUTRIT_S1 = ShiftRule({"1": +1, "0": 0, "2": -1}, "S_prime_1")
QUTRIT_S2 = ShiftRule({"1": +1, "0": -1, "2": 0}, "S_prime_2")

SHIFT_RULES = {r.name: r for r in (QUBIT_S, QUTRIT_S, QUTRIT_S1, QUTRIT_S2)}


@dataclass(frozen=True)
class Periodic:
    """Coin A on steps ``t = 0, q, 2q, ...``; coin B otherwise."""

    q: int

    def __post_init__(self):
        if int(self.q) != self.q or self.q < 1:
            raise ValueError(f"period must be a positive integer, got {self.q!r}")

    def coin_for_step(self, t: int) -> str:
        return "A" if t % self.q == 0 else "B"


@dataclass(frozen=True)
class Pattern:
    """Explicit game string, e.g. ``"ABB"``, repeated cyclically."""

    pattern: str

    def __post_init__(self):
        p = str(self.pattern).upper()
        if not p or set(p) - {"A", "B"}:
            raise ValueError(f"pattern must be a non-empty string over A/B, got {self.pattern!r}")
        object.__setattr__(self, "pattern", p)

    def coin_for_step(self, t: int) -> str:
        return self.pattern[t % len(self.pattern)]


GameSchedule = Union[Periodic, Pattern]


def coin_for_step(schedule: GameSchedule, t: int) -> str:
    """``"A"`` or ``"B"`` for step index ``t`` (steps count from 0)."""
    if t < 0:
        raise ValueError("step index must be non-negative")
    return schedule.coin_for_step(t)


def _check_dims(state: WalkerState, coin: CoinMatrix):
    if coin.dimension != state.dimension:
        raise DimensionError(
            f"coin is {coin.dimension}x{coin.dimension}, state has {state.dimension} coin slots"
        )


def apply_coin(state: WalkerState, coin: CoinMatrix) -> WalkerState:
    """Multiply the coin vector at every site by ``coin``."""
    _check_dims(state, coin)
    return WalkerState(state.basis, state.offset, state.window @ coin.matrix.T)


def _shift_window(offset: int, window: np.ndarray, disp: tuple[int, ...]):
    n, d = window.shape
    out = np.zeros((n + 2, d), dtype=np.complex128)
    for c, dx in enumerate(disp):
        out[1 + dx : 1 + dx + n, c] = window[:, c]
    return offset - 1, out


def apply_shift(state: WalkerState, rule: ShiftRule) -> WalkerState:
    """Move the amplitude of each coin label by its displacement; a permutation."""
    offset, out = _shift_window(state.offset, state.window, rule.compile(state.basis))
    return WalkerState(state.basis, offset, out)


def step(
    state: WalkerState,
    coin_a: CoinMatrix,
    coin_b: CoinMatrix,
    schedule: GameSchedule,
    rule: ShiftRule,
    t: int,
) -> WalkerState:
    """One step ``psi_{t+1} = S (I x C_t) psi_t`` with ``C_t`` chosen by the schedule."""
    coin = coin_a if coin_for_step(schedule, t) == "A" else coin_b
    return apply_shift(apply_coin(state, coin), rule)


def iter_evolution(
    initial: WalkerState,
    coin_a: CoinMatrix,
    coin_b: CoinMatrix,
    schedule: GameSchedule,
    rule: ShiftRule,
    steps: int,
) -> Iterator[WalkerState]:
    """Yield ``psi_0, psi_1, ..., psi_N`` lazily (for payoff-only streaming)."""
    if steps < 0:
        raise ValueError("number of steps must be non-negative")
    _check_dims(initial, coin_a)
    _check_dims(initial, coin_b)
    rule.compile(initial.basis)
    state = initial
    yield state
    for t in range(steps):
        state = step(state, coin_a, coin_b, schedule, rule, t)
        yield state


def evolve(
    initial: WalkerState,
    coin_a: CoinMatrix,
    coin_b: CoinMatrix,
    schedule: GameSchedule,
    rule: ShiftRule,
    steps: int,
) -> list[WalkerState]:
    """Full trajectory ``[psi_0, ..., psi_N]``; index equals step number."""
    return list(iter_evolution(initial, coin_a, coin_b, schedule, rule, steps))
