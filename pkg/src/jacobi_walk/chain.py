"""Walk dynamics: banded one-step matrix, exact powers, spectral closed form.

The walk's one-step matrix P is tridiagonal: row n holds (down_n, stay_n,
up_n) at columns (n-1, n, n+1).  Two independent routes to the t-step
probabilities (P^t)_{ij} live here:

* ``matrix_power_transition``: t banded row-vector products in exact
  rational arithmetic on a finite truncation.  The truncation at
  N = max(i, j) + t + 1 states is exact, not approximate: starting from i,
  t steps of a tridiagonal walk reach at most state i + t, and the only
  coefficient the truncation drops (the up-move out of state N - 1) is
  never touched by reachable mass.  This is the brute-force oracle.

* ``spectral_transition``: the Karlin-McGregor representation

      (P^t)_{ij} = pi_j * integral_0^1 x^t Q_i(x) Q_j(x) W(x) dx,

  with pi_j = 1 / norm_squared(j).  In float mode the integrand is a
  polynomial of degree t + i + j, so a Gauss rule with
  floor((t+i+j)/2) + 1 nodes integrates it exactly up to rounding; in
  exact mode the integrand is expanded in the monomial basis and pushed
  through the rational moments.

``stationarity_residual`` verifies the fixed-point identity pi P = pi for
the pi_0-normalized invariant measure.  pi is a measure, not a
distribution: its total mass diverges, so no probability normalization
exists and none is attempted.  Residuals are reported relative to the
local component pi_i, since pi_i grows polynomially in i and an absolute
residual would be dominated by the largest retained component's rounding.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction

from .model import ModelParams, NumericalError, check_engine
from .polynomials import (
    StepCoefficients,
    invariant_measure,
    monomial_coefficients,
    norm_squared,
    poly_product,
    poly_table,
    step_coefficients,
)
from .integrate import gauss_jacobi_rule, integrate_poly_exact, moment

__all__ = [
    "BandedTransition",
    "build_transition",
    "matrix_power_row",
    "matrix_power_transition",
    "spectral_transition",
    "spectral_transition_row",
    "stationarity_residual",
]

# Rounding dust this far past [0, 1] is clamped; anything worse is a bug
# and raises instead of being silently hidden.
_CLAMP_SLACK = 1e-9


def _check_count(value, name: str, minimum: int):
    value = operator.index(value)
    if value < minimum:
        raise ValueError(f"{name} must be >= {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class BandedTransition:
    """Truncation of the one-step matrix to states 0..size-1.

    sub holds down_1..down_{size-1} (the entry at row n, column n-1), diag
    holds stay_0..stay_{size-1}, sup holds up_0..up_{size-2}.  Every
    interior row sums to 1 (exactly in rational mode); the last row sums to
    1 - up_{size-1}, i.e. truncation leaks mass upward only.
    """

    size: int
    sub: tuple
    diag: tuple
    sup: tuple
    params: ModelParams
    engine: str

    def row(self, n: int) -> StepCoefficients:
        """The retained entries of row n as a StepCoefficients triple.

        Entries clipped by the truncation read as zero.
        """
        if not 0 <= n < self.size:
            raise IndexError(f"row {n} outside truncation of size {self.size}")
        zero = Fraction(0) if self.engine == "exact" else 0.0
        return StepCoefficients(
            n=n,
            up=self.sup[n] if n < self.size - 1 else zero,
            stay=self.diag[n],
            down=self.sub[n - 1] if n > 0 else zero,
        )

    def propagate(self, mass):
        """One walk step applied to a row vector of state masses."""
        if len(mass) != self.size:
            raise ValueError(f"mass vector of length {len(mass)} for size {self.size}")
        out = [mass[n] * self.diag[n] for n in range(self.size)]
        for n in range(1, self.size):
            out[n] += mass[n - 1] * self.sup[n - 1]
        for n in range(self.size - 1):
            out[n] += mass[n + 1] * self.sub[n]
        return out


def build_transition(N, params: ModelParams, engine: str = "float") -> BandedTransition:
    """One-step matrix truncated to the first N states."""
    N = _check_count(N, "N", 1)
    check_engine(engine)
    coeffs = [step_coefficients(n, params, engine) for n in range(N)]
    return BandedTransition(
        size=N,
        sub=tuple(c.down for c in coeffs[1:]),
        diag=tuple(c.stay for c in coeffs),
        sup=tuple(c.up for c in coeffs[:-1]),
        params=params,
        engine=engine,
    )


def matrix_power_row(t, i, j_max, params: ModelParams, engine: str = "exact") -> list:
    """Row i of P^t, entries j = 0..j_max, by repeated banded products.

    Exact by the truncation argument in the module docstring; the float
    variant runs the same recursion in binary64.
    """
    t = _check_count(t, "t", 0)
    i = _check_count(i, "i", 0)
    j_max = _check_count(j_max, "j_max", 0)
    transition = build_transition(max(i, j_max) + t + 1, params, engine)
    one = Fraction(1) if engine == "exact" else 1.0
    zero = Fraction(0) if engine == "exact" else 0.0
    mass = [zero] * transition.size
    mass[i] = one
    for _ in range(t):
        mass = transition.propagate(mass)
    return mass[: j_max + 1]


def matrix_power_transition(t, i, j, params: ModelParams) -> Fraction:
    """(P^t)_{ij} as an exact rational: the brute-force oracle."""
    j = _check_count(j, "j", 0)
    return matrix_power_row(t, i, j, params, "exact")[j]


def _clamp_probability(value: float, context: str) -> float:
    if 0.0 <= value <= 1.0:
        return value
    if -_CLAMP_SLACK <= value < 0.0:
        return 0.0
    if 1.0 < value <= 1.0 + _CLAMP_SLACK:
        return 1.0
    raise NumericalError(f"{context}: value {value!r} outside [0, 1] beyond rounding slack")


def spectral_transition(t, i, j, params: ModelParams, engine: str = "float"):
    """(P^t)_{ij} via the Karlin-McGregor integral representation.

    Float mode clamps rounding dust at the [0, 1] boundary (within 1e-9)
    and raises NumericalError further out.  Exact mode returns a Fraction
    and requires integer parameters.
    """
    t = _check_count(t, "t", 0)
    i = _check_count(i, "i", 0)
    j = _check_count(j, "j", 0)
    check_engine(engine)
    if abs(i - j) > t:
        # unreachable in t steps of a birth-death walk
        return Fraction(0) if engine == "exact" else 0.0
    if engine == "exact":
        params.require_integral("engine='exact'")
        product = poly_product(
            monomial_coefficients(i, params), monomial_coefficients(j, params)
        )
        # integral of x^t * Qi * Qj: the x^t shift is a moment offset
        total = sum(
            (c * moment(k + t, params) for k, c in enumerate(product) if c), Fraction(0)
        )
        return total / norm_squared(j, params, "exact")
    rule = gauss_jacobi_rule((t + i + j) // 2 + 1, params)
    table = poly_table(max(i, j), rule.nodes, params)
    value = float((rule.weights * rule.nodes**t * table[i] * table[j]).sum())
    value /= norm_squared(j, params, "float")
    return _clamp_probability(value, f"spectral_transition(t={t}, i={i}, j={j})")


def spectral_transition_row(t, i, params: ModelParams, j_max, engine: str = "float") -> list:
    """Row i of P^t for j = 0..j_max via the spectral representation."""
    j_max = _check_count(j_max, "j_max", 0)
    return [spectral_transition(t, i, j, params, engine) for j in range(j_max + 1)]


def stationarity_residual(N, params: ModelParams, engine: str = "float"):
    """Largest relative residual of the fixed-point identity pi P = pi.

    Checks components i = 0..N-2 of pi P against pi on the truncation to N
    states (the component N-1 would need pi_N and is excluded).  Each
    residual is |(pi P)_i - pi_i| / pi_i.  Exact mode returns Fraction(0);
    the identity is algebraic.
    """
    N = _check_count(N, "N", 2)
    check_engine(engine)
    pi = [invariant_measure(n, params, engine) for n in range(N)]
    coeffs = [step_coefficients(n, params, engine) for n in range(N)]
    worst = Fraction(0) if engine == "exact" else 0.0
    for n in range(N - 1):
        flow = pi[n] * coeffs[n].stay + pi[n + 1] * coeffs[n + 1].down
        if n > 0:
            flow += pi[n - 1] * coeffs[n - 1].up
        residual = abs(flow - pi[n]) / pi[n]
        if residual > worst:
            worst = residual
    return worst
