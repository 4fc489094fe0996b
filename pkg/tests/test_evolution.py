import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qwparrondo.coins import CoinMatrix, build_qutrit, build_su2
from qwparrondo.errors import DimensionError
from qwparrondo.evolution import (
    QUBIT_S,
    QUTRIT_S,
    QUTRIT_S1,
    QUTRIT_S2,
    Pattern,
    Periodic,
    apply_coin,
    apply_shift,
    coin_for_step,
    evolve,
    step,
)
from qwparrondo.payoff import payoff_series
from qwparrondo.state import QUBIT, QUTRIT, WalkerState, new_localized, position_probability, total_norm

PI = math.pi
R3 = 1 / math.sqrt(3)
A = build_qutrit((PI, PI / 2, PI, PI))
B = build_qutrit((PI / 2, PI / 2, 3 * PI / 2, PI / 2))
QA = build_su2(tuple(math.radians(x) for x in (-45, 45, 0)))
QB = build_su2(tuple(math.radians(x) for x in (0, 88, -15)))


def dense_reference(initial, coin_a, coin_b, schedule, rule, steps):
    """Full Kronecker-product evolution on a fixed lattice [-steps-1, steps+1]."""
    d = initial.dimension
    lo, hi = initial.offset - steps - 1, initial.offset + steps + 1
    n = hi - lo + 1
    disp = rule.compile(initial.basis)
    shift = np.zeros((n * d, n * d))
    for x in range(n):
        for c in range(d):
            y = x + disp[c]
            if 0 <= y < n:
                shift[y * d + c, x * d + c] = 1
    psi = initial.to_dense(lo, hi).reshape(-1)
    for t in range(steps):
        coin = coin_a if schedule.coin_for_step(t) == "A" else coin_b
        psi = shift @ np.kron(np.eye(n), coin.matrix) @ psi
    return lo, psi.reshape(n, d)


@pytest.mark.parametrize(
    "schedule, expected",
    [
        (Periodic(2), "ABAB"),
        (Periodic(4), "ABBBABBB"),
        (Pattern("ABB"), "ABBABB"),
        (Periodic(1), "AAAA"),
        (Pattern("b"), "BBBB"),
    ],
)
def test_coin_for_step(schedule, expected):
    assert "".join(coin_for_step(schedule, t) for t in range(len(expected))) == expected


@pytest.mark.parametrize("bad", [lambda: Periodic(0), lambda: Pattern(""), lambda: Pattern("AC")])
def test_schedule_validation(bad):
    with pytest.raises(ValueError):
        bad()


def test_shift_rule_constants():
    assert QUTRIT_S.compile(QUTRIT) == (0, 1, -1)
    assert QUTRIT_S1.compile(QUTRIT) == (1, 0, -1)
    assert QUTRIT_S2.compile(QUTRIT) == (1, -1, 0)
    assert QUBIT_S.compile(QUBIT) == (1, -1)
    with pytest.raises(DimensionError):
        QUBIT_S.compile(QUTRIT)


def test_apply_coin_identity(eq5_state):
    out = apply_coin(eq5_state, CoinMatrix(np.eye(3)))
    np.testing.assert_array_equal(out.window, eq5_state.window)


def test_apply_coin_game_a(eq5_state):
    out = apply_coin(eq5_state, A)
    expected = np.array([-1 + 2j, -1 + 2j, -4 - 1j]) / 3 * R3
    np.testing.assert_allclose(out.window[0], expected, atol=1e-15)
    assert total_norm(out) == pytest.approx(1.0, abs=1e-12)


def test_apply_coin_basis_vector_gives_column():
    s = new_localized(0, [1, 0, 0], QUTRIT)
    np.testing.assert_allclose(apply_coin(s, B).window[0], B.matrix[:, 0], atol=1e-15)


def test_apply_coin_dimension_mismatch(eq5_state):
    with pytest.raises(DimensionError):
        apply_coin(eq5_state, QA)


def test_shift_examples():
    s = new_localized(0, [0, 1, 0], QUTRIT)  # |0>
    assert apply_shift(s, QUTRIT_S).amplitude(1, "0") == 1
    w = new_localized(0, [0, 0, 1], QUTRIT)  # |2>, wait state under S'_2
    out = apply_shift(w, QUTRIT_S2)
    assert out.support() == (0, 0) and out.amplitude(0, "2") == 1
    q = new_localized(0, [1 / math.sqrt(2)] * 2, QUBIT)
    out = apply_shift(q, QUBIT_S)
    assert out.amplitude(1, "0") == pytest.approx(1 / math.sqrt(2))
    assert out.amplitude(-1, "1") == pytest.approx(1 / math.sqrt(2))
    assert out.amplitude(0, "0") == 0


def test_one_step_from_eq5(eq5_state):
    out = step(eq5_state, A, B, Periodic(2), QUTRIT_S, 0)
    assert position_probability(out, 1) == pytest.approx(5 / 27, abs=1e-15)
    assert position_probability(out, 0) == pytest.approx(5 / 27, abs=1e-15)
    assert position_probability(out, -1) == pytest.approx(17 / 27, abs=1e-15)


def test_step_uses_coin_a_at_t0(eq5_state):
    played_a = step(eq5_state, A, B, Periodic(2), QUTRIT_S, 0)
    played_b = step(eq5_state, A, B, Periodic(2), QUTRIT_S, 1)
    np.testing.assert_array_equal(played_a.window, step(eq5_state, A, A, Pattern("B"), QUTRIT_S, 0).window)
    assert not np.allclose(played_a.to_dense(-1, 1), played_b.to_dense(-1, 1))


def test_evolve_zero_steps(eq5_state):
    traj = evolve(eq5_state, A, B, Periodic(2), QUTRIT_S, 0)
    assert traj == [eq5_state]


def test_evolve_one_step_matches_step(eq5_state):
    traj = evolve(eq5_state, A, B, Periodic(2), QUTRIT_S, 1)
    assert len(traj) == 2
    np.testing.assert_array_equal(traj[1].window, step(eq5_state, A, B, Periodic(2), QUTRIT_S, 0).window)


def test_evolve_rejects_negative(eq5_state):
    with pytest.raises(ValueError):
        evolve(eq5_state, A, B, Periodic(2), QUTRIT_S, -1)


@pytest.mark.parametrize("rule", [QUTRIT_S, QUTRIT_S1, QUTRIT_S2])
@pytest.mark.parametrize("schedule", [Periodic(2), Pattern("A"), Pattern("B"), Pattern("ABB")])
def test_engine_matches_dense_reference(eq5_state, rule, schedule):
    lo, ref = dense_reference(eq5_state, A, B, schedule, rule, 15)
    final = evolve(eq5_state, A, B, schedule, rule, 15)[-1]
    np.testing.assert_allclose(final.to_dense(lo, lo + len(ref) - 1), ref, atol=1e-13)


def test_qubit_engine_matches_dense_reference(qubit_start):
    lo, ref = dense_reference(qubit_start, QA, QB, Periodic(4), QUBIT_S, 20)
    final = evolve(qubit_start, QA, QB, Periodic(4), QUBIT_S, 20)[-1]
    np.testing.assert_allclose(final.to_dense(lo, lo + len(ref) - 1), ref, atol=1e-13)


def test_norm_conservation_500_steps(eq5_state):
    for s in evolve(eq5_state, A, B, Periodic(2), QUTRIT_S, 500):
        assert abs(total_norm(s) - 1) <= 1e-9


def test_light_cone_and_parity(qubit_start, eq5_state):
    for t, s in enumerate(evolve(qubit_start, QA, QB, Periodic(2), QUBIT_S, 60)):
        lo, hi = s.support()
        assert -t <= lo and hi <= t
        assert all((p - t) % 2 == 0 for p in s.amplitudes)
    for t, s in enumerate(evolve(eq5_state, A, B, Periodic(2), QUTRIT_S2, 60)):
        lo, hi = s.support()
        assert -t <= lo and hi <= t


def test_periodic_two_equals_pattern_ab(eq5_state):
    p = evolve(eq5_state, A, B, Periodic(2), QUTRIT_S, 50)
    q = evolve(eq5_state, A, B, Pattern("AB"), QUTRIT_S, 50)
    for x, y in zip(p, q):
        assert x.offset == y.offset
        np.testing.assert_array_equal(x.window, y.window)


def test_same_coin_ignores_schedule(eq5_state):
    ref = payoff_series(evolve(eq5_state, B, B, Periodic(1), QUTRIT_S, 40))
    for q in (2, 3, 5):
        assert payoff_series(evolve(eq5_state, B, B, Periodic(q), QUTRIT_S, 40)) == ref


unit_vectors = st.lists(
    st.tuples(st.floats(-1, 1), st.floats(-1, 1)), min_size=3, max_size=3
).filter(lambda v: sum(a * a + b * b for a, b in v) > 1e-3)


def _normalized(v):
    vec = np.array([complex(a, b) for a, b in v])
    return vec / np.linalg.norm(vec)


@settings(max_examples=50, deadline=None)
@given(unit_vectors, st.integers(-20, 20), st.sampled_from([QUTRIT_S, QUTRIT_S1, QUTRIT_S2]))
def test_shift_is_a_bijection(v, k, rule):
    vec = _normalized(v)
    s = WalkerState.from_mapping(QUTRIT, {k: vec, k + 3: vec[::-1]})
    back = apply_shift(apply_shift(s, rule), rule.inverse())
    assert back.offset == s.offset
    np.testing.assert_array_equal(back.window, s.window)
    # amplitudes are permuted exactly; only summation order differs
    assert total_norm(apply_shift(s, rule)) == pytest.approx(total_norm(s), abs=1e-15)


@settings(max_examples=30, deadline=None)
@given(unit_vectors, st.integers(-50, 50))
def test_translation_covariance(v, k):
    vec = _normalized(v)
    base = evolve(new_localized(0, vec, QUTRIT), A, B, Periodic(2), QUTRIT_S, 30)[-1]
    moved = evolve(new_localized(k, vec, QUTRIT), A, B, Periodic(2), QUTRIT_S, 30)[-1]
    assert moved.offset == base.offset + k
    np.testing.assert_array_equal(moved.window, base.window)


@settings(max_examples=30, deadline=None)
@given(unit_vectors)
def test_coin_preserves_norm(v):
    s = new_localized(0, _normalized(v), QUTRIT)
    assert abs(total_norm(apply_coin(s, B)) - total_norm(s)) <= 1e-12
