"""Monic orthogonal polynomials for the weight |x|^(2a) e^(-nV(x)).

The three-term recurrence is produced by a discretized Stieltjes procedure
on the composite Gauss grid of :mod:`rmtkernels.quadrature`.  All inner
products carry the weight in log form: the working arrays hold
pi_j(x) * sqrt(w(x)) rescaled by one per-degree exponent, which keeps every
intermediate O(1) even though norms decay like e^(-c*n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .quadrature import WeightGrid, build_weight_grid
from .scaled import ScaledComplex


class PrecisionError(RuntimeError):
    """Raised when the orthogonality self-check fails."""


class WeightDomainError(ValueError):
    pass


@dataclass(frozen=True)
class PotentialSpec:
    """Polynomial confining potential, constant term first."""

    coeffs: tuple

    def __post_init__(self):
        c = tuple(float(v) for v in self.coeffs)
        object.__setattr__(self, "coeffs", c)
        trimmed = np.trim_zeros(np.asarray(c), "b")
        if trimmed.size <= 1:
            raise WeightDomainError("constant potential violates the growth condition")
        deg = trimmed.size - 1
        if deg % 2 != 0 or trimmed[-1] <= 0:
            raise WeightDomainError(
                "potential must have even degree and positive leading coefficient"
            )

    @property
    def degree(self) -> int:
        return len(np.trim_zeros(np.asarray(self.coeffs), "b")) - 1

    def poly(self) -> np.polynomial.Polynomial:
        return np.polynomial.Polynomial(self.coeffs)

    def __call__(self, x):
        return self.poly()(x)

    def derivative(self, x):
        return self.poly().deriv()(x)

    def is_even(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs[1::2])


@dataclass(frozen=True)
class WeightSpec:
    alpha: float
    n: int
    potential: PotentialSpec

    def __post_init__(self):
        if self.alpha <= -0.5:
            raise WeightDomainError("alpha must exceed -1/2 for an integrable weight")
        if self.n < 1:
            raise WeightDomainError("n must be a positive integer")


@dataclass(frozen=True)
class QuadratureConfig:
    dense_panels: int = 48
    order: int = 20
    jacobi_at_origin: bool = True


def eval_weight(w: WeightSpec, x: float) -> ScaledComplex:
    """w_n(x) = |x|^2a e^(-nV(x)) as a ScaledComplex."""
    x = float(x)
    if not math.isfinite(x):
        raise WeightDomainError("x must be finite")
    if x == 0.0:
        if w.alpha > 0:
            return ScaledComplex.zero()
        if w.alpha == 0:
            return ScaledComplex.from_parts(1.0, -w.n * w.potential(0.0))
        raise WeightDomainError("weight diverges at x = 0 for alpha < 0")
    log_scale = 2.0 * w.alpha * math.log(abs(x)) - w.n * w.potential(x)
    return ScaledComplex.from_parts(1.0, log_scale)


@dataclass
class RecurrenceTable:
    """Monic recurrence pi_{j+1} = (x - a_j) pi_j - b_j pi_{j-1}, with norms in log form."""

    weight: WeightSpec
    max_degree: int
    a: np.ndarray              # a[0..K]
    b: np.ndarray              # b[0] unused, b[1..K] > 0
    log_norm_sq: np.ndarray    # log ||pi_j||^2, j = 0..K
    grid: WeightGrid
    orthogonality_residual: float = 0.0
    _scales: np.ndarray = field(default=None, repr=False)  # per-degree log scale of pi_j sqrt(w) on grid

    def log_gamma_sq(self, j: int) -> float:
        """log gamma_j^2 = -log ||pi_j||^2 (orthonormal leading coefficient squared)."""
        return -float(self.log_norm_sq[j])

    def gamma_sq(self, j: int) -> ScaledComplex:
        return ScaledComplex.from_parts(1.0, self.log_gamma_sq(j))


def build_recurrence(
    w: WeightSpec, max_degree: int, quad: QuadratureConfig | None = None
) -> RecurrenceTable:
    quad = quad or QuadratureConfig()
    dense_panels = max(quad.dense_panels, int(0.8 * max_degree) + 12)
    grid = build_weight_grid(
        w.alpha,
        w.n,
        w.potential.coeffs,
        dense_panels=dense_panels,
        order=quad.order,
        jacobi_at_origin=quad.jacobi_at_origin,
    )
    x, qw, logw = grid.x, grid.qw, grid.logw
    K = max_degree

    a = np.zeros(K + 1)
    b = np.zeros(K + 1)
    log_norm_sq = np.zeros(K + 1)
    scales = np.zeros(K + 1)
    U = np.zeros((K + 1, x.size))

    t0 = 0.5 * logw.max()
    u = np.exp(0.5 * logw - t0)
    scales[0] = t0
    U[0] = u
    s_prev = None
    u_prev = np.zeros_like(u)
    for j in range(K + 1):
        sj = float(np.dot(qw, U[j] * U[j]))
        if not (sj > 0) or not math.isfinite(sj):
            raise PrecisionError(f"lost positivity of the norm at degree {j}")
        log_norm_sq[j] = math.log(sj) + 2.0 * scales[j]
        a[j] = float(np.dot(qw, x * U[j] * U[j])) / sj
        if j > 0:
            b[j] = sj / s_prev * math.exp(2.0 * (scales[j] - scales[j - 1]))
        if j < K:
            nxt = (x - a[j]) * U[j]
            if j > 0:
                nxt = nxt - b[j] * u_prev * math.exp(scales[j - 1] - scales[j])
            m = np.abs(nxt).max()
            if m == 0 or not math.isfinite(m):
                raise PrecisionError(f"recurrence breakdown at degree {j + 1}")
            scales[j + 1] = scales[j] + math.log(m)
            U[j + 1] = nxt / m
            u_prev = U[j]
        s_prev = sj

    # orthogonality self-check on the full Gram matrix (scale-invariant)
    G = np.einsum("ik,k,jk->ij", U, qw, U)
    d = np.sqrt(np.abs(np.diag(G)))
    R = np.abs(G) / np.outer(d, d)
    np.fill_diagonal(R, 0.0)
    residual = float(R.max())
    if residual > 1e-7:
        i, j = np.unravel_index(np.argmax(R), R.shape)
        raise PrecisionError(
            f"orthogonality residual {residual:.3e} at degrees ({i},{j}) "
            f"exceeds 1e-7; increase the quadrature budget or lower max_degree"
        )

    return RecurrenceTable(
        weight=w,
        max_degree=K,
        a=a,
        b=b,
        log_norm_sq=log_norm_sq,
        grid=grid,
        orthogonality_residual=residual,
        _scales=scales,
    )


def eval_monic(t: RecurrenceTable, j: int, z) -> ScaledComplex:
    """pi_j(z) by the forward three-term recurrence in scaled arithmetic."""
    _check_degree(t, j)
    z = complex(z)
    if j == 0:
        return ScaledComplex.one()
    prev = ScaledComplex.one()
    cur = ScaledComplex.from_complex(z - t.a[0])
    for k in range(1, j):
        nxt = ScaledComplex.from_complex(z - t.a[k]) * cur - t.b[k] * prev
        prev, cur = cur, nxt
    return cur


def eval_monic_derivative(t: RecurrenceTable, j: int, z) -> ScaledComplex:
    """pi'_j(z) via the differentiated recurrence."""
    _check_degree(t, j)
    z = complex(z)
    if j == 0:
        return ScaledComplex.zero()
    p_prev, p_cur = ScaledComplex.one(), ScaledComplex.from_complex(z - t.a[0])
    d_prev, d_cur = ScaledComplex.zero(), ScaledComplex.one()
    for k in range(1, j):
        zm = ScaledComplex.from_complex(z - t.a[k])
        d_nxt = p_cur + zm * d_cur - t.b[k] * d_prev
        p_nxt = zm * p_cur - t.b[k] * p_prev
        p_prev, p_cur = p_cur, p_nxt
        d_prev, d_cur = d_cur, d_nxt
    return d_cur


def monic_values_scaled(t: RecurrenceTable, degrees, x: np.ndarray):
    """pi_j at many (real or complex) points for each j in ``degrees``.

    Returns {j: (values, log_scale)} with values O(1); vectorized over x.
    """
    degrees = sorted(set(int(j) for j in degrees))
    for j in degrees:
        _check_degree(t, j)
    x = np.asarray(x)
    out = {}
    jmax = degrees[-1]
    prev = np.ones_like(x, dtype=complex)
    s_prev = 0.0
    if 0 in degrees:
        out[0] = (prev.copy(), 0.0)
    if jmax == 0:
        return out
    cur = x - t.a[0]
    s_cur = 0.0
    if 1 in degrees:
        out[1] = (cur.copy(), 0.0)
    for k in range(1, jmax):
        nxt = (x - t.a[k]) * cur - t.b[k] * math.exp(s_prev - s_cur) * prev
        s_nxt = s_cur
        m = float(np.abs(nxt).max())
        if m > 1e50 or (0 < m < 1e-50):
            nxt = nxt / m
            s_nxt = s_cur + math.log(m)
        prev, cur = cur, nxt
        s_prev, s_cur = s_cur, s_nxt
        if k + 1 in degrees:
            out[k + 1] = (cur.copy(), s_cur)
    return out


def _check_degree(t: RecurrenceTable, j: int):
    if not (0 <= j <= t.max_degree):
        raise IndexError(f"degree {j} outside table range 0..{t.max_degree}")
