"""Coin operators: the SU(2) qubit coin and the four-parameter qutrit coin.

Every :class:`CoinMatrix` is checked for unitarity when it is created. The
qutrit family is assembled from six real numbers ``I, J, K, R, G, B``; the
phase offset in ``K`` is selectable because the commonly quoted form
(``pi/3``) is not unitary for ordinary parameter choices, whereas ``4pi/3``
completes the equally spaced ``0, 2pi/3, 4pi/3`` pattern and is.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import UnitarityError

__all__ = [
    "UNITARITY_TOL",
    "KTermConvention",
    "SU2Params",
    "QutritParams",
    "QutritEntries",
    "CoinMatrix",
    "unitarity_defect",
    "build_su2",
    "qutrit_entries",
    "build_qutrit",
]

UNITARITY_TOL = 1e-10


class KTermConvention(str, enum.Enum):
    CORRECTED = "corrected"
    AS_PRINTED = "as_printed"

    @classmethod
    def parse(cls, value) -> "KTermConvention":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_"))

    @property
    def phase(self) -> float:
        return 4 * np.pi / 3 if self is KTermConvention.CORRECTED else np.pi / 3


class SU2Params(NamedTuple):
    alpha: float
    beta: float
    gamma: float


class QutritParams(NamedTuple):
    alpha: float
    beta: float
    gamma: float
    theta: float


class QutritEntries(NamedTuple):
    I: float
    J: float
    K: float
    R: float
    G: float
    B: float


def unitarity_defect(matrix) -> float:
    """Max-entry magnitude of ``C^dagger C - I`` for a square matrix."""
    m = np.asarray(matrix, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


@dataclass(frozen=True)
class CoinMatrix:
    """A validated unitary coin.

    Raises
    ------
    UnitarityError
        If ``unitarity_defect(matrix) > tolerance``.
    """

    matrix: np.ndarray = field(repr=False)
    params: tuple | None = None
    tolerance: float = UNITARITY_TOL
    defect: float = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if not np.all(np.isfinite(m)):
            raise ValueError("coin matrix entries must be finite")
        defect = unitarity_defect(m)
        if defect > self.tolerance:
            raise UnitarityError(defect, self.params, self.tolerance)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "defect", defect)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    def __eq__(self, other):
        if not isinstance(other, CoinMatrix):
            return NotImplemented
        return np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())


def build_su2(params) -> CoinMatrix:
    """Qubit coin ``[[e^{ia}cos b, -e^{-ig}sin b], [e^{ig}sin b, e^{-ia}cos b]]``.

    Angles are in radians.
    """
    a, b, g = SU2Params(*params)
    m = np.array(
        [
            [np.exp(1j * a) * np.cos(b), -np.exp(-1j * g) * np.sin(b)],
            [np.exp(1j * g) * np.sin(b), np.exp(-1j * a) * np.cos(b)],
        ],
        dtype=np.complex128,
    )
    return CoinMatrix(m, params=tuple(float(x) for x in (a, b, g)))


def qutrit_entries(params, convention=KTermConvention.CORRECTED) -> QutritEntries:
    """The six real entries ``I, J, K, R, G, B`` of the qutrit coin."""
    a, b, g, t = QutritParams(*params)
    k_phase = KTermConvention.parse(convention).phase
    ct, st = 2 * np.cos(t), 2 * np.sin(t)
    cg, sg = np.cos(g), np.sin(g)
    return QutritEntries(
        I=(cg + ct * np.cos(a)) / 3,
        J=(cg + ct * np.cos(a + 2 * np.pi / 3)) / 3,
        K=(cg + ct * np.cos(a + k_phase)) / 3,
        R=(sg + st * np.cos(b)) / 3,
        G=(sg + st * np.cos(b + 2 * np.pi / 3)) / 3,
        B=(sg + st * np.cos(b + 4 * np.pi / 3)) / 3,
    )


def build_qutrit(params, convention=KTermConvention.CORRECTED) -> CoinMatrix:
    """Assemble the 3x3 qutrit coin from its six entries.

    Real part is the circulant ``[[I, J, K], [K, I, J], [J, K, I]]``; the
    imaginary part is ``[[R, B, G], [B, G, R], [G, R, B]]``.

    Raises
    ------
    UnitarityError
        If the assembled matrix has defect above 1e-10. The error carries the
        defect and the parameters.
    """
    e = qutrit_entries(params, convention)
    real = np.array([[e.I, e.J, e.K], [e.K, e.I, e.J], [e.J, e.K, e.I]])
    imag = np.array([[e.R, e.B, e.G], [e.B, e.G, e.R], [e.G, e.R, e.B]])
    return CoinMatrix(
        real + 1j * imag,
        params=tuple(float(x) for x in params) + (KTermConvention.parse(convention).value,),
    )
