"""Integration against the weight x**alpha * (1 - x)**beta on [0, 1].

Two independent routes:

* exact rational integration of polynomials via the closed-form monomial
  moments (the oracle), and
* M-point Gauss quadrature for the weight, built by the Golub-Welsch
  procedure from the recurrence coefficients (the production float path).

An M-point rule integrates polynomials of degree <= 2M - 1 exactly, which
the tests exploit by checking quadrature against the rational route.

The symmetric tridiagonal eigensolver underneath Golub-Welsch is written
out here (implicit-shift QL with accumulation of first eigenvector
components only) rather than taken from a linear-algebra package, keeping
the quadrature path dependency-light and the failure mode explicit: it
raises NumericalError if any eigenvalue fails to converge, rather than
returning silently wrong nodes.  The rule polishes the QL output with a
couple of Newton corrections in extended precision before rounding back,
because downstream identities divide by polynomially small norms and feel
every spare ulp.
"""

from __future__ import annotations

import math
import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .model import ModelParams, NumericalError, check_engine
from .polynomials import (
    monomial_coefficients,
    norm_squared,
    poly_product,
    step_coefficients,
    total_mass,
)

__all__ = [
    "QuadratureRule",
    "gauss_jacobi_rule",
    "integrate_poly_exact",
    "integrate_quadrature",
    "moment",
    "orthonormality_table",
]

# Deflation is relative to neighbouring diagonal magnitude; 50 implicit QL
# sweeps per eigenvalue is far beyond what well-conditioned Jacobi matrices
# need (typically 2-3).
_QL_TOL = 1e-14
_QL_MAX_SWEEPS = 50


@lru_cache(maxsize=None)
def moment(k, params: ModelParams) -> Fraction:
    """Exact k-th moment of the weight: integral of x**k * x**a * (1-x)**b.

    Equals (a+k)! b! / (a+b+k+1)! for integer exponents.
    """
    k = operator.index(k)
    if k < 0:
        raise ValueError(f"moment order must be >= 0, got {k}")
    a, b = params.require_integral("moment")
    return Fraction(
        math.factorial(a + k) * math.factorial(b), math.factorial(a + b + k + 1)
    )


def integrate_poly_exact(coeffs, params: ModelParams) -> Fraction:
    """Exact weighted integral of a polynomial given by monomial coefficients.

    ``coeffs`` lists the coefficients lowest degree first (Fractions or
    ints); the result is sum_k coeffs[k] * moment(k).
    """
    params.require_integral("integrate_poly_exact")
    return sum((Fraction(c) * moment(k, params) for k, c in enumerate(coeffs)), Fraction(0))


def _tridiag_eigen_first_components(diag, off):
    """Eigen-decomposition data of a symmetric tridiagonal matrix.

    Implicit-shift QL iteration; only the first component of each
    eigenvector is accumulated, which is all Golub-Welsch needs.  Returns
    (eigenvalues ascending, matching first components).
    """
    d = [float(v) for v in diag]
    e = [float(v) for v in off] + [0.0]
    n = len(d)
    if len(off) != n - 1:
        raise ValueError("off-diagonal must be one shorter than the diagonal")
    z = [0.0] * n
    z[0] = 1.0
    for l in range(n):
        sweeps = 0
        while True:
            for m in range(l, n - 1):
                if abs(e[m]) <= _QL_TOL * (abs(d[m]) + abs(d[m + 1])):
                    break
            else:
                m = n - 1
            if m == l:
                break
            if sweeps == _QL_MAX_SWEEPS:
                raise NumericalError(
                    f"tridiagonal eigensolver failed to converge at index {l} "
                    f"after {_QL_MAX_SWEEPS} sweeps"
                )
            sweeps += 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            for i in range(m - 1, l - 1, -1):
                f = s * e[i]
                h = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    # rare underflow escape: drop the shift and restart
                    d[i + 1] -= p
                    e[m] = 0.0
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * h
                p = s * r
                d[i + 1] = g + p
                g = c * r - h
                f = z[i + 1]
                z[i + 1] = s * z[i] + c * f
                z[i] = c * z[i] - s * f
            else:
                d[l] -= p
                e[l] = g
                e[m] = 0.0
    order = sorted(range(n), key=d.__getitem__)
    values = np.array([d[i] for i in order])
    first = np.array([z[i] for i in order])
    return values, first


def _symmetrized_recurrence(order, params: ModelParams):
    """Double-precision data of the symmetrized three-term recurrence.

    Returns (diag, off, mass): stay_0..stay_{order-1} on the diagonal,
    sqrt(up_k * down_{k+1}) for k = 0..order-1 off it (one entry past the
    order-sized matrix, so callers can climb to the order-th polynomial),
    and the weight's total mass.  Rule construction and the orthonormality
    check must share these exact double values; the quadrature identities
    hold for the recurrence family as rounded, not the ideal one.
    """
    coeffs = [step_coefficients(k, params, "float") for k in range(order + 1)]
    diag = np.array([c.stay for c in coeffs[:order]])
    off = np.array([math.sqrt(coeffs[k].up * coeffs[k + 1].down) for k in range(order)])
    return diag, off, total_mass(params, "float")


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes and weights of an M-point Gauss rule for the weight.

    Integrates polynomials of degree <= 2 * order - 1 exactly (up to
    rounding).  Nodes are strictly increasing inside (0, 1); weights are
    positive and sum to the total mass of the weight.  Arrays are read-only.
    """

    order: int
    params: ModelParams
    nodes: np.ndarray
    weights: np.ndarray

    def integrate(self, values) -> float:
        """Weighted sum of function values given at the nodes.

        The weight function itself is built into the weights; ``values``
        must be the bare integrand evaluated at ``nodes``.
        """
        values = np.asarray(values, dtype=float)
        if values.shape != self.nodes.shape:
            raise ValueError("values must match the rule's nodes in shape")
        return float(np.dot(self.weights, values))


@lru_cache(maxsize=None)
def gauss_jacobi_rule(order, params: ModelParams) -> QuadratureRule:
    """Build (and cache) the M-point Gauss rule via Golub-Welsch.

    The Jacobi matrix is the symmetric tridiagonal with stay_0..stay_{M-1}
    on the diagonal and sqrt(up_n * down_{n+1}) off it; its eigenvalues are
    the nodes, and the squared first eigenvector components scaled by the
    weight's total mass are the weights.  Raises NumericalError if the
    eigensolver stalls or the resulting rule violates its validity
    invariants (node ordering and containment, weight positivity).
    """
    order = operator.index(order)
    if order < 1:
        raise ValueError(f"quadrature order must be >= 1, got {order}")
    diag, off, mass = _symmetrized_recurrence(order, params)
    raw_nodes, _ = _tridiag_eigen_first_components(diag, off[: order - 1])
    # The QL eigenvalues carry a few ulps of backward error and the
    # rotation-accumulated first components drift to ~1e-12 by order 40,
    # which is too coarse for the invariant-measure-weighted identities
    # downstream.  Two Newton corrections in extended precision pin each
    # node to the same double-precision recurrence the evaluations use, and
    # the kernel identity mass * v[0]**2 == 1 / sum_k q_k(node)**2 then
    # rebuilds the weights at matching accuracy.
    xs = raw_nodes.astype(np.longdouble)
    dl = diag.astype(np.longdouble)
    ol = off.astype(np.longdouble)
    q0 = 1.0 / np.sqrt(np.longdouble(mass))
    for _ in range(2):
        q_prev = np.zeros_like(xs)
        d_prev = np.zeros_like(xs)
        q = np.full_like(xs, q0)
        d = np.zeros_like(xs)
        for k in range(order):
            back = ol[k - 1] if k else np.longdouble(0.0)
            q_next = ((xs - dl[k]) * q - back * q_prev) / ol[k]
            d_next = (q + (xs - dl[k]) * d - back * d_prev) / ol[k]
            q_prev, q, d_prev, d = q, q_next, d, d_next
        xs = xs - q / d
    q_prev = np.zeros_like(xs)
    q = np.full_like(xs, q0)
    kernel = q * q
    for k in range(order - 1):
        back = ol[k - 1] if k else np.longdouble(0.0)
        q_prev, q = q, ((xs - dl[k]) * q - back * q_prev) / ol[k]
        kernel += q * q
    nodes = xs.astype(float)
    weights = (1.0 / kernel).astype(float)
    if not (np.all(nodes > 0.0) and np.all(nodes < 1.0) and np.all(np.diff(nodes) > 0.0)):
        raise NumericalError(f"Gauss rule of order {order}: nodes violate (0, 1) ordering")
    if not np.all(weights > 0.0):
        raise NumericalError(f"Gauss rule of order {order}: nonpositive weight")
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return QuadratureRule(order=order, params=params, nodes=nodes, weights=weights)


def integrate_quadrature(f, order, params: ModelParams) -> float:
    """Approximate the weighted integral of a callable with an M-point rule.

    ``f`` is evaluated once per node; exact for polynomials of degree
    <= 2 * order - 1.
    """
    rule = gauss_jacobi_rule(order, params)
    return rule.integrate([float(f(x)) for x in rule.nodes])


def orthonormality_table(n_max, params: ModelParams, engine: str = "float"):
    """Table of integral(Q_i * Q_j * W) / norm_squared(j) for i, j <= n_max.

    The exact engine integrates the monomial expansions and returns a nested
    list of Fractions, equal to the identity matrix by orthogonality.  The
    float engine quadratures the orthonormalized recurrence against a rule
    of 2 * n_max + 1 nodes and rescales each entry by norm_i / norm_j,
    returning an ndarray.  Entries with j >> i divide near-cancelled dust by
    a polynomially small norm, so the float gram is accumulated in extended
    precision and rounded once at the end; plain double evaluation loses an
    order of magnitude there.
    """
    n_max = operator.index(n_max)
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    check_engine(engine)
    size = n_max + 1
    if engine == "exact":
        coeffs = [monomial_coefficients(n, params) for n in range(size)]
        scale = [norm_squared(j, params, "exact") for j in range(size)]
        return [
            [
                integrate_poly_exact(poly_product(coeffs[i], coeffs[j]), params) / scale[j]
                for j in range(size)
            ]
            for i in range(size)
        ]
    rule = gauss_jacobi_rule(2 * n_max + 1, params)
    diag, off, mass = _symmetrized_recurrence(n_max, params)
    xs = rule.nodes.astype(np.longdouble)
    dl = diag.astype(np.longdouble)
    ol = off.astype(np.longdouble)
    table = np.empty((size, xs.size), dtype=np.longdouble)
    table[0] = 1.0 / np.sqrt(np.longdouble(mass))
    if n_max >= 1:
        table[1] = (xs - dl[0]) * table[0] / ol[0]
    for k in range(1, n_max):
        table[k + 1] = ((xs - dl[k]) * table[k] - ol[k - 1] * table[k - 1]) / ol[k]
    gram = (table * rule.weights.astype(np.longdouble)) @ table.T
    norm_engine = "exact" if params.is_integral else "float"
    norms = np.array(
        [float(norm_squared(j, params, norm_engine)) for j in range(size)],
        dtype=np.longdouble,
    )
    ratio = np.sqrt(norms[:, None] / norms[None, :])
    return (gram * ratio).astype(float)
