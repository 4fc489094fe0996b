"""Walker wavefunction on the integer lattice.

A state stores one coin-amplitude vector per lattice site. Internally the
occupied sites are kept as a contiguous window ``[offset, offset + n)`` of
shape ``(n, d)`` so evolution can be vectorised; the public view is a
position -> amplitudes mapping that omits all-zero sites.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import DimensionError, NormalizationError

__all__ = [
    "CoinBasis",
    "QUBIT",
    "QUTRIT",
    "WalkerState",
    "new_localized",
    "total_norm",
    "position_probability",
    "distribution_records",
    "distribution_json",
]

NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class CoinBasis:
    """Ordered coin labels; slot ``i`` of every coin vector holds ``labels[i]``."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"coin labels must be distinct, got {self.labels}")
        if len(self.labels) not in (2, 3):
            raise ValueError("coin dimension must be 2 or 3")

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def slot(self, label) -> int:
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise DimensionError(f"label {label!r} not in basis {self.labels}") from None


QUBIT = CoinBasis(("0", "1"))
# |1> is slot 0, |0> slot 1, |2> slot 2
QUTRIT = CoinBasis(("1", "0", "2"))


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class WalkerState:
    """Immutable walker wavefunction.

    Parameters
    ----------
    basis : CoinBasis
    offset : int
        Lattice position of row 0 of ``window``.
    window : ndarray, shape (n, d), complex
        Coin amplitudes for positions ``offset .. offset + n - 1``.
    """

    basis: CoinBasis
    offset: int
    window: np.ndarray = field(repr=False)

    def __post_init__(self):
        win = np.array(self.window, dtype=np.complex128)
        if win.ndim != 2 or win.shape[1] != self.basis.dimension:
            raise DimensionError(
                f"window must have shape (n, {self.basis.dimension}), got {win.shape}"
            )
        if not np.all(np.isfinite(win)):
            raise ValueError("amplitudes must be finite")
        # trim exactly-zero edge rows so the window tracks the true support
        nz = np.flatnonzero(np.any(win != 0, axis=1))
        if nz.size:
            lo, hi = nz[0], nz[-1] + 1
            off = int(self.offset) + int(lo)
            win = win[lo:hi]
        else:
            off, win = int(self.offset), win[:0]
        object.__setattr__(self, "offset", off)
        object.__setattr__(self, "window", _frozen(win.copy()))

    @classmethod
    def from_mapping(
        cls, basis: CoinBasis, amplitudes: Mapping[int, Sequence[complex]]
    ) -> "WalkerState":
        """Build a state from ``{position: coin vector}``."""
        if not amplitudes:
            return cls(basis, 0, np.zeros((0, basis.dimension)))
        lo, hi = min(amplitudes), max(amplitudes)
        win = np.zeros((hi - lo + 1, basis.dimension), dtype=np.complex128)
        for pos, vec in amplitudes.items():
            vec = np.asarray(vec, dtype=np.complex128)
            if vec.shape != (basis.dimension,):
                raise DimensionError(
                    f"coin vector at {pos} has shape {vec.shape}, "
                    f"expected ({basis.dimension},)"
                )
            win[pos - lo] = vec
        return cls(basis, lo, win)

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    @property
    def positions(self) -> np.ndarray:
        return np.arange(self.offset, self.offset + len(self.window))

    @property
    def amplitudes(self) -> dict[int, np.ndarray]:
        """Occupied positions mapped to their coin vectors (all-zero sites omitted)."""
        return {
            int(p): row
            for p, row in zip(self.positions, self.window)
            if np.any(row != 0)
        }

    def amplitude(self, position: int, label) -> complex:
        i = position - self.offset
        if 0 <= i < len(self.window):
            return complex(self.window[i, self.basis.slot(label)])
        return 0j

    def support(self) -> tuple[int, int] | None:
        """Smallest and largest occupied position, or None for the zero state."""
        if not len(self.window):
            return None
        return self.offset, self.offset + len(self.window) - 1

    def to_dense(self, lo: int, hi: int) -> np.ndarray:
        """Amplitudes on positions ``lo..hi`` inclusive as a ``(hi-lo+1, d)`` array."""
        out = np.zeros((hi - lo + 1, self.dimension), dtype=np.complex128)
        sup = self.support()
        if sup is None:
            return out
        a, b = max(lo, sup[0]), min(hi, sup[1])
        if a <= b:
            out[a - lo : b - lo + 1] = self.window[a - self.offset : b - self.offset + 1]
        return out

    def probabilities(self) -> np.ndarray:
        """Per-site probabilities aligned with :attr:`positions`."""
        return np.sum(np.abs(self.window) ** 2, axis=1)


def new_localized(
    position: int, coin_amplitudes: Iterable[complex], basis: CoinBasis
) -> WalkerState:
    """Walker fully localized at ``position`` with the given coin vector.

    Raises
    ------
    DimensionError
        If the vector length differs from the basis dimension.
    NormalizationError
        If the squared norm differs from 1 by more than 1e-12. The vector is
        never rescaled.
    """
    vec = np.asarray(list(coin_amplitudes), dtype=np.complex128)
    if vec.shape != (basis.dimension,):
        raise DimensionError(
            f"coin vector has {vec.size} components, basis has {basis.dimension}"
        )
    norm2 = float(np.sum(np.abs(vec) ** 2))
    if abs(norm2 - 1.0) > NORMALIZATION_TOL:
        raise NormalizationError(f"coin vector squared norm is {norm2!r}, expected 1")
    return WalkerState(basis, int(position), vec[None, :])


def total_norm(state: WalkerState) -> float:
    """Sum of ``|psi(n, c)|^2`` over all sites and coin slots."""
    return float(np.sum(np.abs(state.window) ** 2))


def position_probability(state: WalkerState, position: int) -> float:
    i = position - state.offset
    if 0 <= i < len(state.window):
        return float(np.sum(np.abs(state.window[i]) ** 2))
    return 0.0


def distribution_records(state: WalkerState) -> list[dict]:
    """Snapshot of the position distribution, positions ascending."""
    records = []
    for pos, row in state.amplitudes.items():
        probs = np.abs(row) ** 2
        records.append(
            {
                "position": pos,
                "probability": {lab: float(p) for lab, p in zip(state.basis.labels, probs)},
                "total": float(probs.sum()),
            }
        )
    return records


def distribution_json(state: WalkerState) -> str:
    return json.dumps(distribution_records(state), indent=2)
