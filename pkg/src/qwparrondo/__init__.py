"""Discrete-time quantum walks with qubit and qutrit coins, played as Parrondo games."""

from .coins import (
    CoinMatrix,
    KTermConvention,
    QutritEntries,
    build_qutrit,
    build_su2,
    qutrit_entries,
    unitarity_defect,
)
from .errors import (
    DimensionError,
    NormalizationError,
    OracleBoundError,
    ScenarioError,
    UnitarityError,
    WalkError,
)
from .evolution import (
    QUBIT_S,
    QUTRIT_S,
    QUTRIT_S1,
    QUTRIT_S2,
    Pattern,
    Periodic,
    ShiftRule,
    apply_coin,
    apply_shift,
    coin_for_step,
    evolve,
    iter_evolution,
    step,
)
from .payoff import Outcome, PayoffPoint, classify, payoff, payoff_series, split_probabilities
from .state import QUBIT, QUTRIT, CoinBasis, WalkerState, new_localized, position_probability, total_norm

__version__ = "0.1.0"
