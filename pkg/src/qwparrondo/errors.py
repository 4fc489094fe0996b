"""Exception hierarchy for the walk simulator."""

from __future__ import annotations


class WalkError(ValueError):
    """Base class for all simulator errors."""


class DimensionError(WalkError):
    """Coin vector, matrix or shift rule does not match the coin basis."""


class NormalizationError(WalkError):
    """A coin vector or state is not normalized to the required tolerance."""


class UnitarityError(WalkError):
    """A coin matrix failed the unitarity gate.

    Attributes
    ----------
    defect : float
        Max-entry magnitude of ``C^dagger C - I``.
    params : tuple or None
        Parameters the matrix was built from, when known.
    """

    def __init__(self, defect: float, params=None, tolerance: float | None = None):
        self.defect = float(defect)
        self.params = params
        self.tolerance = tolerance
        msg = f"coin matrix is not unitary: defect {self.defect:.3g}"
        if tolerance is not None:
            msg += f" > tolerance {tolerance:.0e}"
        if params is not None:
            msg += f" (params={params})"
        super().__init__(msg)


class OracleBoundError(WalkError):
    """Requested path enumeration is too large."""


class ScenarioError(WalkError):
    """Scenario or grid file failed validation."""
