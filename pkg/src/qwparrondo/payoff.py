"""Left/origin/right probability split and the P_R - P_L payoff."""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Iterable, TextIO

import numpy as np

from .state import WalkerState

__all__ = [
    "DRAW_TOL",
    "Outcome",
    "PayoffPoint",
    "split_probabilities",
    "payoff",
    "classify",
    "payoff_point",
    "payoff_series",
    "write_payoff_csv",
    "payoff_csv",
]

DRAW_TOL = 1e-10
CSV_HEADER = ("step", "p_left", "p_origin", "p_right", "payoff")


class Outcome(str, enum.Enum):
    WIN = "Win"
    LOSS = "Loss"
    DRAW = "Draw"


@dataclass(frozen=True)
class PayoffPoint:
    t: int
    p_left: float
    p_origin: float
    p_right: float

    @property
    def payoff(self) -> float:
        return self.p_right - self.p_left


def split_probabilities(state: WalkerState) -> tuple[float, float, float]:
    """``(P_L, P_0, P_R)``: mass strictly left of, at, and strictly right of the origin."""
    probs = state.probabilities()
    pos = state.positions
    return (
        float(np.sum(probs[pos < 0])),
        float(np.sum(probs[pos == 0])),
        float(np.sum(probs[pos > 0])),
    )


def payoff(state: WalkerState) -> float:
    p_left, _, p_right = split_probabilities(state)
    return p_right - p_left


def classify(payoff_value: float, draw_tolerance: float = DRAW_TOL) -> Outcome:
    if draw_tolerance < 0:
        raise ValueError("draw tolerance must be non-negative")
    if abs(payoff_value) <= draw_tolerance:
        return Outcome.DRAW
    return Outcome.WIN if payoff_value > 0 else Outcome.LOSS


def payoff_point(t: int, state: WalkerState) -> PayoffPoint:
    return PayoffPoint(t, *split_probabilities(state))


def payoff_series(trajectory: Iterable[WalkerState]) -> list[PayoffPoint]:
    return [payoff_point(t, s) for t, s in enumerate(trajectory)]


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_payoff_csv(points: Iterable[PayoffPoint], fh: TextIO) -> None:
    """``step,p_left,p_origin,p_right,payoff`` rows, 17 significant digits, LF endings."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for p in points:
        writer.writerow(
            [p.t, _fmt(p.p_left), _fmt(p.p_origin), _fmt(p.p_right), _fmt(p.payoff)]
        )


def payoff_csv(points: Iterable[PayoffPoint]) -> str:
    buf = io.StringIO()
    write_payoff_csv(points, buf)
    return buf.getvalue()
