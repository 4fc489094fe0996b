"""Scenario configuration, figure presets, runs, sweeps and oracle checks.

Scenario files are JSON objects::

    {
      "name": "fig3c",
      "coin_kind": "qutrit",                 # "qubit" | "qutrit"
      "angle_unit": "rad",                   # "rad" | "deg"
      "coin_a": [3.14159, 1.5708, 3.14159, 3.14159],
      "coin_b": [1.5708, 1.5708, 4.71239, 1.5708],
      "k_term_convention": "corrected",      # "corrected" | "as_printed"
      "schedule": {"periodic": 2},           # or {"pattern": "ABB"}
      "shift": "S_prime",                    # name or {"label": displacement}
      "initial_position": 0,
      "initial_coin": [[0.577, 0], [0.577, 0], [0, -0.577]],
      "steps": 500
    }

``initial_coin`` is listed in coin-slot order: ``|0>, |1>`` for qubits and
``|1>, |0>, |2>`` for qutrits.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Any, Callable, Mapping, Sequence

from .coins import CoinMatrix, KTermConvention, build_qutrit, build_su2
from .errors import ScenarioError, UnitarityError
from .evolution import (
    SHIFT_RULES,
    GameSchedule,
    Pattern,
    Periodic,
    ShiftRule,
    evolve,
    iter_evolution,
)
from .oracle import PathSumConfig, compare_with_engine
from .payoff import DRAW_TOL, Outcome, PayoffPoint, classify, payoff, payoff_point
from .state import QUBIT, QUTRIT, CoinBasis, WalkerState, new_localized

__all__ = [
    "ScenarioConfig",
    "FigurePreset",
    "PRESETS",
    "get_preset",
    "load_scenario",
    "dump_scenario",
    "RunResult",
    "run_scenario",
    "SweepGrid",
    "load_grid",
    "sweep",
    "sweep_csv",
    "ORACLE_TOL",
    "OracleReport",
    "oracle_check",
]

ORACLE_TOL = 1e-10
_PARAM_COUNT = {"qubit": 3, "qutrit": 4}


def _schedule_from_dict(spec) -> GameSchedule:
    if isinstance(spec, (Periodic, Pattern)):
        return spec
    if not isinstance(spec, Mapping) or len(spec) != 1:
        raise ScenarioError("schedule: expected {'periodic': q} or {'pattern': 'AB...'}")
    (kind, value), = spec.items()
    try:
        if kind == "periodic":
            if isinstance(value, bool) or not isinstance(value, int):
                raise ValueError(f"period must be an integer, got {value!r}")
            return Periodic(value)
        if kind == "pattern":
            return Pattern(value)
    except ValueError as exc:
        raise ScenarioError(f"schedule: {exc}") from None
    raise ScenarioError(f"schedule: unknown kind {kind!r}")


def _schedule_to_dict(schedule: GameSchedule) -> dict:
    if isinstance(schedule, Periodic):
        return {"periodic": schedule.q}
    return {"pattern": schedule.pattern}


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully specified walk run."""

    coin_kind: str
    coin_a: tuple[float, ...]
    coin_b: tuple[float, ...]
    schedule: GameSchedule
    shift: str | Mapping[str, int]
    initial_coin: tuple[complex, ...]
    steps: int
    angle_unit: str = "rad"
    k_term_convention: str = "corrected"
    initial_position: int = 0
    name: str = ""

    @property
    def basis(self) -> CoinBasis:
        return QUBIT if self.coin_kind == "qubit" else QUTRIT

    def _radians(self, params) -> tuple[float, ...]:
        if self.angle_unit == "deg":
            return tuple(math.radians(p) for p in params)
        return tuple(params)

    def build_coins(self) -> tuple[CoinMatrix, CoinMatrix]:
        """Coins A and B; raises UnitarityError if either fails the gate."""
        if self.coin_kind == "qubit":
            return build_su2(self._radians(self.coin_a)), build_su2(self._radians(self.coin_b))
        conv = KTermConvention.parse(self.k_term_convention)
        return (
            build_qutrit(self._radians(self.coin_a), conv),
            build_qutrit(self._radians(self.coin_b), conv),
        )

    def shift_rule(self) -> ShiftRule:
        if isinstance(self.shift, str):
            return SHIFT_RULES[self.shift]
        return ShiftRule(self.shift)

    def initial_state(self) -> WalkerState:
        return new_localized(self.initial_position, self.initial_coin, self.basis)

    def validate(self, check_coins: bool = True) -> "ScenarioConfig":
        """Field-level checks, then the normalization check and unitarity gate."""
        if self.coin_kind not in _PARAM_COUNT:
            raise ScenarioError(f"coin_kind: expected 'qubit' or 'qutrit', got {self.coin_kind!r}")
        if self.angle_unit not in ("rad", "deg"):
            raise ScenarioError(f"angle_unit: expected 'rad' or 'deg', got {self.angle_unit!r}")
        n = _PARAM_COUNT[self.coin_kind]
        for fname in ("coin_a", "coin_b"):
            vals = getattr(self, fname)
            if len(vals) != n or not all(math.isfinite(v) for v in vals):
                raise ScenarioError(f"{fname}: expected {n} finite angles for a {self.coin_kind} coin")
        try:
            KTermConvention.parse(self.k_term_convention)
        except ValueError:
            raise ScenarioError(
                f"k_term_convention: expected 'corrected' or 'as_printed', got {self.k_term_convention!r}"
            ) from None
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 0:
            raise ScenarioError(f"steps: expected a non-negative integer, got {self.steps!r}")
        if isinstance(self.shift, str) and self.shift not in SHIFT_RULES:
            raise ScenarioError(f"shift: unknown rule {self.shift!r}; known: {sorted(SHIFT_RULES)}")
        try:
            self.shift_rule().compile(self.basis)
        except ValueError as exc:
            raise ScenarioError(f"shift: {exc}") from None
        if len(self.initial_coin) != self.basis.dimension:
            raise ScenarioError(
                f"initial_coin: expected {self.basis.dimension} amplitudes, got {len(self.initial_coin)}"
            )
        self.initial_state()
        if check_coins:
            self.build_coins()
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "coin_kind": self.coin_kind,
            "angle_unit": self.angle_unit,
            "coin_a": list(self.coin_a),
            "coin_b": list(self.coin_b),
            "k_term_convention": KTermConvention.parse(self.k_term_convention).value,
            "schedule": _schedule_to_dict(self.schedule),
            "shift": self.shift if isinstance(self.shift, str) else dict(self.shift),
            "initial_position": self.initial_position,
            "initial_coin": [[c.real, c.imag] for c in self.initial_coin],
            "steps": self.steps,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "ScenarioConfig":
        if not isinstance(data, Mapping):
            raise ScenarioError("scenario must be a JSON object")
        required = ("coin_kind", "coin_a", "coin_b", "schedule", "shift", "initial_coin", "steps")
        missing = [k for k in required if k not in data]
        if missing:
            raise ScenarioError(f"missing field(s): {', '.join(missing)}")
        known = set(required) | {"angle_unit", "k_term_convention", "initial_position", "name"}
        extra = sorted(set(data) - known)
        if extra:
            raise ScenarioError(f"unknown field(s): {', '.join(extra)}")
        try:
            coin_a = tuple(float(x) for x in data["coin_a"])
            coin_b = tuple(float(x) for x in data["coin_b"])
        except (TypeError, ValueError):
            raise ScenarioError("coin_a/coin_b: expected lists of numbers") from None
        try:
            initial = tuple(complex(float(re), float(im)) for re, im in data["initial_coin"])
        except (TypeError, ValueError):
            raise ScenarioError("initial_coin: expected a list of [re, im] pairs") from None
        shift = data["shift"]
        if isinstance(shift, Mapping):
            try:
                shift = {str(k): int(v) for k, v in shift.items()}
            except (TypeError, ValueError):
                raise ScenarioError("shift: displacements must be integers") from None
        elif not isinstance(shift, str):
            raise ScenarioError("shift: expected a rule name or a label -> displacement map")
        pos = data.get("initial_position", 0)
        if isinstance(pos, bool) or not isinstance(pos, int):
            raise ScenarioError(f"initial_position: expected an integer, got {pos!r}")
        cfg = cls(
            coin_kind=data["coin_kind"],
            coin_a=coin_a,
            coin_b=coin_b,
            schedule=_schedule_from_dict(data["schedule"]),
            shift=shift,
            initial_coin=initial,
            steps=data["steps"],
            angle_unit=data.get("angle_unit", "rad"),
            k_term_convention=data.get("k_term_convention", "corrected"),
            initial_position=pos,
            name=data.get("name", ""),
        )
        return cfg.validate()


def load_scenario(text: str) -> ScenarioConfig:
    """Parse and validate a JSON scenario document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"scenario is not valid JSON: {exc}") from None
    return ScenarioConfig.from_dict(data)


def dump_scenario(config: ScenarioConfig) -> str:
    return json.dumps(config.to_dict(), indent=2)


# ---------------------------------------------------------------------------
# presets

_PI = math.pi
_R2, _R3 = 1 / math.sqrt(2), 1 / math.sqrt(3)

# qubit slots (|0>, |1>); qutrit slots (|1>, |0>, |2>)
QUBIT_START = (complex(_R2), complex(0, -_R2))
START_DEFAULT = (complex(_R3), complex(_R3), complex(0, -_R3))  # (|0> + |1> - i|2>)/sqrt3
START_REAL = (complex(_R3), complex(_R3), complex(-_R3))  # (|1> + |0> - |2>)/sqrt3
START_PHASE_ON_1 = (complex(0, _R3), complex(_R3), complex(-_R3))  # (i|1> + |0> - |2>)/sqrt3
START_PHASE_ON_0 = (complex(_R3), complex(0, _R3), complex(-_R3))  # (i|0> + |1> - |2>)/sqrt3

GAME_A = (_PI, _PI / 2, _PI, _PI)
GAME_B = (_PI / 2, _PI / 2, 3 * _PI / 2, _PI / 2)

ALWAYS_A, ALWAYS_B, ALTERNATE = Pattern("A"), Pattern("B"), Periodic(2)


@dataclass(frozen=True)
class FigurePreset:
    name: str
    config: ScenarioConfig
    expected: Outcome | None
    description: str


def _trio(prefix, description, expected, steps, coin_a, coin_b, shift, start, **kw):
    presets = []
    for suffix, sched, label, exp in zip(
        "abc", (ALWAYS_A, ALWAYS_B, ALTERNATE), ("AAAA", "BBBB", "ABAB"), expected
    ):
        name = f"{prefix}{suffix}" if "-" not in prefix else prefix.replace("-", f"{suffix}-", 1)
        cfg = ScenarioConfig(
            coin_kind=kw.get("coin_kind", "qutrit"),
            coin_a=coin_a,
            coin_b=coin_b,
            schedule=sched,
            shift=shift,
            initial_coin=start,
            steps=steps,
            angle_unit=kw.get("angle_unit", "rad"),
            name=name,
        )
        presets.append(FigurePreset(name, cfg, exp, f"{description}, {label}"))
    return presets


L, W, D = Outcome.LOSS, Outcome.WIN, Outcome.DRAW


def _build_presets() -> dict[str, FigurePreset]:
    out: list[FigurePreset] = []
    qubit = dict(coin_kind="qubit", angle_unit="deg")
    out += _trio(
        "fig2", "qubit, A=U(-45,45,0), B=U(0,88,-15)", (L, L, L), 500,
        (-45.0, 45.0, 0.0), (0.0, 88.0, -15.0), "S", QUBIT_START, **qubit,
    )[:2]
    for name, beta_a, note in (("fig2c", 40.0, "caption beta_A=40"), ("fig2c-alt", 45.0, "text beta_A=45")):
        cfg = ScenarioConfig(
            coin_kind="qubit", coin_a=(-45.0, beta_a, 0.0), coin_b=(0.0, 88.0, -15.0),
            schedule=Periodic(4), shift="S", initial_coin=QUBIT_START, steps=500,
            angle_unit="deg", name=name,
        )
        out.append(FigurePreset(name, cfg, L, f"qubit, ABBB, {note}; early win, asymptotic loss"))
    out += _trio("fig3", "qutrit, start (|0>+|1>-i|2>)/sqrt3, shift S'", (L, L, W), 500,
                 GAME_A, GAME_B, "S_prime", START_DEFAULT)
    out += _trio("fig4", "qutrit, start (|1>+|0>-|2>)/sqrt3, shift S'", (None, None, L), 200,
                 GAME_A, GAME_B, "S_prime", START_REAL)
    out += _trio("fig5", "qutrit, start (i|1>+|0>-|2>)/sqrt3, shift S'", (L, L, W), 400,
                 GAME_A, GAME_B, "S_prime", START_PHASE_ON_1)
    out += _trio("fig5-alt", "qutrit, start (i|0>+|1>-|2>)/sqrt3 (caption), shift S'", (L, L, W), 400,
                 GAME_A, GAME_B, "S_prime", START_PHASE_ON_0)
    out += _trio("fig6", "qutrit, start (|0>+|1>-i|2>)/sqrt3, shift S'_1", (L, L, W), 400,
                 GAME_A, GAME_B, "S_prime_1", START_DEFAULT)
    out += _trio("fig7", "qutrit, start (|0>+|1>-i|2>)/sqrt3, shift S'_2", (D, W, L), 400,
                 GAME_A, GAME_B, "S_prime_2", START_DEFAULT)
    out += _trio("fig8", "qutrit, A=C(pi/8,3pi/8,3pi/4,pi/4), B=C(2pi/3,7pi,3pi/2,2pi), shift S'",
                 (L, L, W), 400,
                 (_PI / 8, 3 * _PI / 8, 3 * _PI / 4, _PI / 4),
                 (2 * _PI / 3, 7 * _PI, 3 * _PI / 2, 2 * _PI), "S_prime", START_DEFAULT)
    out += _trio("fig9", "qutrit, A=C(pi/8,2pi/8,3pi/4,6pi/4), B=C(2pi,3pi,2pi,pi), shift S' (no paradox)",
                 (None, None, None), 400,
                 (_PI / 8, 2 * _PI / 8, 3 * _PI / 4, 6 * _PI / 4),
                 (2 * _PI, 3 * _PI, 2 * _PI, _PI), "S_prime", START_DEFAULT)
    return {p.name: p for p in out}


PRESETS: dict[str, FigurePreset] = _build_presets()


def get_preset(name: str) -> FigurePreset:
    try:
        return PRESETS[name]
    except KeyError:
        raise ScenarioError(f"unknown preset {name!r}; run 'presets' to list them") from None


# ---------------------------------------------------------------------------
# running


@dataclass
class RunResult:
    config: ScenarioConfig
    points: list[PayoffPoint]
    final_state: WalkerState

    @property
    def final_payoff(self) -> float:
        return self.points[-1].payoff


def run_scenario(config: ScenarioConfig, steps: int | None = None) -> RunResult:
    """Evolve ``config`` and collect the payoff series (state is not retained per step)."""
    if steps is not None:
        config = replace(config, steps=steps)
    coin_a, coin_b = config.build_coins()
    points = []
    state = None
    traj = iter_evolution(
        config.initial_state(), coin_a, coin_b, config.schedule, config.shift_rule(), config.steps
    )
    for t, state in enumerate(traj):
        points.append(payoff_point(t, state))
    return RunResult(config, points, state)


# ---------------------------------------------------------------------------
# sweeps

_AXES = ("alpha", "beta", "gamma", "theta")
SKIPPED = "SKIPPED_NONUNITARY"
SWEEP_HEADER = (
    [f"{a}A" for a in _AXES]
    + [f"{a}B" for a in _AXES]
    + ["outcome_AAAA", "outcome_BBBB", "outcome_ABAB", "paradox"]
)


@dataclass(frozen=True)
class SweepGrid:
    """Cartesian grid over qutrit parameters of coins A and B."""

    coin_a: Mapping[str, Sequence[float]]
    coin_b: Mapping[str, Sequence[float]]
    steps: int
    shift: str | Mapping[str, int] = "S_prime"
    initial_coin: tuple[complex, ...] = START_DEFAULT
    angle_unit: str = "rad"
    k_term_convention: str = "corrected"
    draw_tolerance: float = DRAW_TOL
    workers: int = 1

    def points(self):
        axes = [self.coin_a[a] for a in _AXES] + [self.coin_b[a] for a in _AXES]
        for combo in itertools.product(*axes):
            yield tuple(float(x) for x in combo[:4]), tuple(float(x) for x in combo[4:])


def load_grid(text: str) -> SweepGrid:
    """Parse a JSON grid document (see README for the schema)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"grid is not valid JSON: {exc}") from None
    if not isinstance(data, Mapping):
        raise ScenarioError("grid must be a JSON object")
    for key in ("coin_a", "coin_b", "steps"):
        if key not in data:
            raise ScenarioError(f"grid: missing field {key!r}")
    for key in ("coin_a", "coin_b"):
        axes = data[key]
        if not isinstance(axes, Mapping) or set(axes) != set(_AXES):
            raise ScenarioError(f"grid.{key}: expected lists for exactly {', '.join(_AXES)}")
    kw = {}
    if "initial_coin" in data:
        try:
            kw["initial_coin"] = tuple(complex(float(r), float(i)) for r, i in data["initial_coin"])
        except (TypeError, ValueError):
            raise ScenarioError("grid.initial_coin: expected a list of [re, im] pairs") from None
    for key in ("shift", "angle_unit", "k_term_convention", "draw_tolerance", "workers"):
        if key in data:
            kw[key] = data[key]
    grid = SweepGrid(coin_a=data["coin_a"], coin_b=data["coin_b"], steps=data["steps"], **kw)
    # reuse scenario validation for the fixed parts
    ScenarioConfig(
        coin_kind="qutrit", coin_a=(0.0,) * 4, coin_b=(0.0,) * 4, schedule=ALTERNATE,
        shift=grid.shift, initial_coin=grid.initial_coin, steps=grid.steps,
        angle_unit=grid.angle_unit, k_term_convention=grid.k_term_convention,
    ).validate(check_coins=False)
    if isinstance(grid.workers, bool) or not isinstance(grid.workers, int) or grid.workers < 1:
        raise ScenarioError(f"grid.workers: expected a positive integer, got {grid.workers!r}")
    return grid


def _final_payoff(initial, coin_a, coin_b, schedule, rule, steps) -> float:
    *_, last = iter_evolution(initial, coin_a, coin_b, schedule, rule, steps)
    return payoff(last)


def _sweep_row(args) -> list[str]:
    grid, params_a, params_b = args
    base = ScenarioConfig(
        coin_kind="qutrit", coin_a=params_a, coin_b=params_b, schedule=ALTERNATE,
        shift=grid.shift, initial_coin=grid.initial_coin, steps=grid.steps,
        angle_unit=grid.angle_unit, k_term_convention=grid.k_term_convention,
    )
    row = [format(x, ".17g") for x in params_a + params_b]
    try:
        coin_a, coin_b = base.build_coins()
    except UnitarityError:
        return row + [SKIPPED] * 3 + ["false"]
    initial, rule = base.initial_state(), base.shift_rule()
    outcomes = [
        classify(_final_payoff(initial, coin_a, coin_b, s, rule, grid.steps), grid.draw_tolerance)
        for s in (ALWAYS_A, ALWAYS_B, ALTERNATE)
    ]
    paradox = outcomes[0] is L and outcomes[1] is L and outcomes[2] is W
    return row + [o.value for o in outcomes] + ["true" if paradox else "false"]


def sweep(grid: SweepGrid) -> list[list[str]]:
    """Classify every grid point; rows follow grid order whatever the worker count."""
    jobs = [(grid, a, b) for a, b in grid.points()]
    if grid.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=grid.workers) as pool:
            return list(pool.map(_sweep_row, jobs))
    return [_sweep_row(j) for j in jobs]


def sweep_csv(rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    writer.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# oracle check


@dataclass
class OracleReport:
    steps: int
    max_diff: float
    tolerance: float = ORACLE_TOL

    @property
    def passed(self) -> bool:
        return self.max_diff <= self.tolerance


def oracle_check(
    config: ScenarioConfig,
    n_small: int,
    engine: Callable[..., list[WalkerState]] = evolve,
) -> OracleReport:
    """Compare the engine against path enumeration after ``n_small`` steps.

    ``engine`` defaults to :func:`evolve`; tests swap in a corrupted one to
    check that the harness notices.
    """
    coin_a, coin_b = config.build_coins()
    rule = config.shift_rule()
    path_cfg = PathSumConfig(
        basis=config.basis,
        position=config.initial_position,
        coin_amplitudes=config.initial_coin,
        coin_a=coin_a.matrix,
        coin_b=coin_b.matrix,
        schedule=config.schedule,
        rule=rule,
        steps=n_small,
    )
    path_cfg.check_bound()
    final = engine(config.initial_state(), coin_a, coin_b, config.schedule, rule, n_small)[-1]
    return OracleReport(n_small, compare_with_engine(path_cfg, final))
