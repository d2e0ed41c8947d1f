"""Mechanistic three-step urn simulator for the walk.

The state is the number of blue balls in the main urn.  One step, with
state n and integer exponents (alpha, beta):

1. Mix in n + alpha + beta + 1 red balls from an unlimited bath, then draw
   one ball uniformly from the 2n + alpha + beta + 1 in the urn (n blue).
2. Decide whether the drawn ball changes color by one auxiliary draw:
   * drawn ball blue: the auxiliary urn holds n + alpha blue and n + beta
     red (2n + alpha + beta balls); a *blue* auxiliary draw is a match and
     the drawn ball turns red;
   * drawn ball red: the auxiliary urn holds n + alpha + 1 blue and
     n + beta + 1 red (2n + alpha + beta + 2 balls); a *red* auxiliary draw
     is a match and the drawn ball turns blue.
   The color changes exactly on a match; otherwise nothing changes.
3. Remove every red ball.  The new state is the blue count: n - 1 after a
   blue-to-red flip, n + 1 after a red-to-blue flip, n otherwise.

At n = 0 there is no blue ball to draw, so the blue branch (and its
auxiliary urn, which would hold alpha + beta balls and may be empty) never
comes into play.

``simulate_step`` performs the draws literally, two bounded uniform draws
per step; it never samples the one-step law (down, stay, up) directly, so
comparing its statistics with the recurrence coefficients is a real test of
the mechanism, not a tautology.  ``step_distribution_exact`` enumerates the
same branches with exact rational probabilities and is the corresponding
brute-force oracle; it shares the match rule with the simulator but is
deliberately independent of the coefficient formulas in polynomials.py.

Ensemble runs (``estimate_transition``, ``terminal_state_counts``) assign
substream k of the master seed to trajectory k and reduce to terminal-state
counts, so results are bit-reproducible regardless of thread count or
chunking.  A vectorized sampler that draws from the float one-step law
directly (one draw per step) is available as sampler="coefficients"; it is
a labeled fast path and is excluded from mechanism-agreement tests.
"""

from __future__ import annotations

import operator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from typing import Literal

import numpy as np

from .model import ModelParams
from .polynomials import step_coefficients
from .rng import CounterStream, draw_below_many, raw_many, stream_keys

__all__ = [
    "StepTrace",
    "TransitionEstimate",
    "estimate_transition",
    "simulate_step",
    "simulate_trajectory",
    "step_distribution_exact",
    "terminal_state_counts",
]

Color = Literal["blue", "red"]

# Trajectories are simulated in fixed-size chunks; the chunk grid depends
# only on the trajectory count, so thread scheduling cannot affect results.
_CHUNK = 1 << 18


@dataclass(frozen=True)
class StepTrace:
    """Full record of one simulated step."""

    state_before: int
    mixed_in: int
    chosen_color: Color
    auxiliary_color: Color
    color_changed: bool
    state_after: int

    def __post_init__(self) -> None:
        assert self.color_changed == (self.chosen_color == self.auxiliary_color)
        if self.color_changed:
            expected = self.state_before + (-1 if self.chosen_color == "blue" else 1)
        else:
            expected = self.state_before
        assert self.state_after == expected
        assert self.state_after >= 0


def _state_change(chosen: Color, auxiliary: Color) -> int:
    """The match rule: the drawn ball flips color exactly when the auxiliary
    draw matches it; a blue-to-red flip lowers the blue count, red-to-blue
    raises it."""
    if auxiliary != chosen:
        return 0
    return -1 if chosen == "blue" else 1


def _check_state(n) -> int:
    n = operator.index(n)
    if n < 0:
        raise ValueError(f"state must be >= 0, got {n}")
    return n


def simulate_step(n, params: ModelParams, rng) -> StepTrace:
    """One literal mechanism step; ``rng`` provides draw_below(bound)."""
    n = _check_state(n)
    a, b = params.require_integral("simulate_step")
    mixed_in = n + a + b + 1
    main_pick = rng.draw_below(2 * n + a + b + 1)
    if main_pick < n:
        chosen: Color = "blue"
        # n >= 1 on this branch, so the auxiliary urn is nonempty
        aux_pick = rng.draw_below(2 * n + a + b)
        auxiliary: Color = "blue" if aux_pick < n + a else "red"
    else:
        chosen = "red"
        aux_pick = rng.draw_below(2 * n + a + b + 2)
        auxiliary = "blue" if aux_pick < n + a + 1 else "red"
    delta = _state_change(chosen, auxiliary)
    return StepTrace(
        state_before=n,
        mixed_in=mixed_in,
        chosen_color=chosen,
        auxiliary_color=auxiliary,
        color_changed=delta != 0,
        state_after=n + delta,
    )


def step_distribution_exact(n, params: ModelParams) -> tuple[Fraction, Fraction, Fraction]:
    """Exact (down, stay, up) law of one step, by outcome enumeration.

    Walks the same branches as simulate_step with ball-count probabilities,
    aggregating by the state change the match rule produces.
    """
    n = _check_state(n)
    a, b = params.require_integral("step_distribution_exact")
    main_total = 2 * n + a + b + 1
    outcomes: list[tuple[Color, Color, Fraction]] = []
    if n > 0:
        aux_total = 2 * n + a + b
        p_blue = Fraction(n, main_total)
        outcomes.append(("blue", "blue", p_blue * Fraction(n + a, aux_total)))
        outcomes.append(("blue", "red", p_blue * Fraction(n + b, aux_total)))
    aux_total = 2 * n + a + b + 2
    p_red = Fraction(main_total - n, main_total)
    outcomes.append(("red", "blue", p_red * Fraction(n + a + 1, aux_total)))
    outcomes.append(("red", "red", p_red * Fraction(n + b + 1, aux_total)))
    law = {-1: Fraction(0), 0: Fraction(0), 1: Fraction(0)}
    for chosen, auxiliary, probability in outcomes:
        law[_state_change(chosen, auxiliary)] += probability
    assert sum(law.values()) == 1
    return law[-1], law[0], law[1]


def simulate_trajectory(n0, t, params: ModelParams, rng) -> list[int]:
    """States visited over t literal mechanism steps, starting at n0."""
    n0 = _check_state(n0)
    t = operator.index(t)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    states = [n0]
    for _ in range(t):
        states.append(simulate_step(states[-1], params, rng).state_after)
    return states


def _mechanism_chunk(
    n0: int, t: int, a: int, b: int, seed: int, start: int, size: int
) -> np.ndarray:
    """Terminal states of trajectories start..start+size-1, literal mechanism,
    all lanes advanced in lockstep (two bounded draws per step per lane)."""
    keys = stream_keys(seed, start, size)
    counters = np.zeros(size, dtype=np.uint64)
    states = np.full(size, n0, dtype=np.int64)
    for _ in range(t):
        main_total = (2 * states + (a + b + 1)).astype(np.uint64)
        main_pick, counters = draw_below_many(keys, counters, main_total)
        blue = main_pick < states.astype(np.uint64)
        aux_total = np.where(blue, main_total - np.uint64(1), main_total + np.uint64(1))
        aux_pick, counters = draw_below_many(keys, counters, aux_total)
        blue_side = states.astype(np.uint64) + np.uint64(a)
        matched = np.where(blue, aux_pick < blue_side, aux_pick >= blue_side + np.uint64(1))
        states += np.where(matched, np.where(blue, -1, 1), 0)
    return np.bincount(states, minlength=n0 + t + 1).astype(np.int64)


def _coefficient_chunk(
    n0: int,
    t: int,
    thresholds: tuple[np.ndarray, np.ndarray],
    seed: int,
    start: int,
    size: int,
) -> np.ndarray:
    """Fast path: one categorical draw per step from the float one-step law."""
    down_below, stay_below = thresholds
    keys = stream_keys(seed, start, size)
    counters = np.zeros(size, dtype=np.uint64)
    states = np.full(size, n0, dtype=np.int64)
    for _ in range(t):
        raws, counters = raw_many(keys, counters)
        u = raws * 2.0**-64
        states += np.where(u < down_below[states], -1, np.where(u < stay_below[states], 0, 1))
    return np.bincount(states, minlength=n0 + t + 1).astype(np.int64)


def terminal_state_counts(
    n0,
    t,
    params: ModelParams,
    trajectories,
    seed,
    threads: int = 1,
    sampler: str = "urn",
) -> np.ndarray:
    """Histogram of terminal states over an ensemble of trajectories.

    Returns int64 counts for states 0..n0+t (every reachable state).
    Trajectory k runs on substream k of ``seed``, so the result depends
    only on (n0, t, params, trajectories, seed, sampler), not on threads.
    sampler="urn" is the literal mechanism; sampler="coefficients" draws
    from the float one-step law directly (faster, but no longer a test of
    the mechanism, and a different draw sequence).
    """
    n0 = _check_state(n0)
    t = operator.index(t)
    trajectories = operator.index(trajectories)
    threads = operator.index(threads)
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if trajectories < 1:
        raise ValueError(f"trajectories must be >= 1, got {trajectories}")
    if threads < 1:
        raise ValueError(f"threads must be >= 1, got {threads}")
    if sampler not in ("urn", "coefficients"):
        raise ValueError(f"sampler must be 'urn' or 'coefficients', got {sampler!r}")
    a, b = params.require_integral("terminal_state_counts")
    if sampler == "urn":
        def run(start: int, size: int) -> np.ndarray:
            return _mechanism_chunk(n0, t, a, b, seed, start, size)
    else:
        laws = [step_coefficients(s, params, "float") for s in range(n0 + t + 1)]
        thresholds = (
            np.array([c.down for c in laws]),
            np.array([c.down + c.stay for c in laws]),
        )
        def run(start: int, size: int) -> np.ndarray:
            return _coefficient_chunk(n0, t, thresholds, seed, start, size)
    jobs = [
        (start, min(_CHUNK, trajectories - start)) for start in range(0, trajectories, _CHUNK)
    ]
    if threads == 1 or len(jobs) == 1:
        pieces = [run(start, size) for start, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            pieces = list(pool.map(lambda job: run(*job), jobs))
    # counts add commutatively, so summation order is irrelevant
    return np.sum(pieces, axis=0)


@dataclass(frozen=True)
class TransitionEstimate:
    """Monte Carlo estimate of one t-step transition probability."""

    estimate: float
    trajectories: int
    standard_error: float
    start: int
    steps: int
    target: int


def estimate_transition(
    n0, t, j, params: ModelParams, trajectories, seed, threads: int = 1
) -> TransitionEstimate:
    """Empirical frequency of ending at j after t steps, with binomial stderr."""
    j = _check_state(j)
    counts = terminal_state_counts(n0, t, params, trajectories, seed, threads=threads)
    hits = int(counts[j]) if j < counts.size else 0
    p = hits / trajectories
    return TransitionEstimate(
        estimate=p,
        trajectories=trajectories,
        standard_error=sqrt(p * (1.0 - p) / trajectories),
        start=n0,
        steps=t,
        target=j,
    )
