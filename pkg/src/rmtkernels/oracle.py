"""Brute-force averages over the joint eigenvalue density at tiny n.

Everything here is direct tensor-product quadrature of
P(x_1..x_n) = prod w(x_j) * Vandermonde(x)^2 / Z_n with n <= 3, evaluated
at two quadrature budgets that must agree.  The averages give independent
values for the characteristic-polynomial identities that the kernel
modules compute through recurrences and Cauchy transforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .orthopoly import WeightSpec
from .quadrature import build_weight_grid
from .scaled import ScaledComplex


class OracleError(RuntimeError):
    pass


_MAX_N = 3

# coarse and fine tensor budgets (dense_panels, order, jacobi_order)
_BUDGETS = ((10, 8, 28), (14, 10, 36))


def _grid_1d(w: WeightSpec, budget):
    dense_panels, order, jacobi_order = budget
    g = build_weight_grid(
        w.alpha, w.n, w.potential.coeffs,
        dense_panels=dense_panels, order=order, jacobi_order=jacobi_order,
    )
    ls = float(np.max(g.logw))
    wv = g.qw * np.exp(g.logw - ls)
    return g.x, wv, ls


def _sum_weighted(x, wv, n, f):
    """sum over the tensor grid of f * Vandermonde^2 * prod(weights)."""
    if n == 1:
        return complex(np.sum(wv * f((x,))))
    if n == 2:
        x1, x2 = x[:, None], x[None, :]
        base = wv[:, None] * wv[None, :] * (x1 - x2) ** 2
        return complex(np.sum(base * f((x1, x2))))
    x2, x3 = x[:, None], x[None, :]
    base = wv[:, None] * wv[None, :] * (x2 - x3) ** 2
    total = 0j
    for i in range(x.size):
        x1 = x[i]
        gap = (x1 - x2) ** 2 * (x1 - x3) ** 2
        total += wv[i] * complex(np.sum(base * gap * f((x1, x2, x3))))
    return total


@dataclass
class JointDensitySpec:
    w: WeightSpec
    n: int
    z_n: ScaledComplex
    _grids: list = field(repr=False, default=None)  # [(x, wv, log_scale), ...]
    _z_raw: list = field(repr=False, default=None)  # raw partition sums per budget


def make_joint_density(w: WeightSpec) -> JointDensitySpec:
    """Builds the two quadrature grids and the partition function Z_n."""
    n = w.n
    if n > _MAX_N:
        raise OracleError(f"direct quadrature capped at n <= {_MAX_N}")
    grids = [_grid_1d(w, b) for b in _BUDGETS]
    z_raw = []
    z_vals = []
    for x, wv, ls in grids:
        raw = _sum_weighted(x, wv, n, lambda _: 1.0)
        if not (raw.real > 0):
            raise OracleError("partition function not positive")
        z_raw.append(raw)
        z_vals.append(math.log(raw.real) + n * ls)
    if abs(z_vals[0] - z_vals[1]) > 1e-7:
        raise OracleError(
            f"partition function budgets disagree: {z_vals[0]} vs {z_vals[1]}"
        )
    z_n = ScaledComplex.from_parts(1.0, z_vals[1])
    return JointDensitySpec(w=w, n=n, z_n=z_n, _grids=grids, _z_raw=z_raw)


def _average(d: JointDensitySpec, f, rel_tol: float) -> ScaledComplex:
    """mean of f under the joint density, with the two-budget consistency check."""
    vals = []
    mags = []
    for (x, wv, _), z_raw in zip(d._grids, d._z_raw):
        vals.append(_sum_weighted(x, wv, d.n, f) / z_raw)
        mags.append(abs(_sum_weighted(x, wv, d.n, lambda xs: abs(f(xs))) / z_raw))
    # |f| mass sets the floor so near-perfect cancellation is not flagged
    scale = max(max(abs(v) for v in vals), 1e-10 * max(mags))
    if scale > 0 and abs(vals[0] - vals[1]) / scale > rel_tol:
        raise OracleError(
            f"quadrature budgets disagree: {vals[0]} vs {vals[1]}"
        )
    return ScaledComplex.from_complex(vals[1])


def _char(z, xs):
    out = 1.0 + 0j
    for xj in xs:
        out = out * (z - xj)
    return out


def average_char_poly(d: JointDensitySpec, x) -> ScaledComplex:
    """<det(x - M)>: equals the degree-n monic orthogonal polynomial at x."""
    x = complex(x)
    return _average(d, lambda xs: _char(x, xs), 1e-6)


def average_product_pair(d: JointDensitySpec, x, y) -> ScaledComplex:
    """<det(x - M) det(y - M)>."""
    x, y = complex(x), complex(y)
    return _average(d, lambda xs: _char(x, xs) * _char(y, xs), 1e-5)


def average_ratio(d: JointDensitySpec, x, y) -> ScaledComplex:
    """<det(y - M) / det(x - M)>; needs Im x != 0."""
    x, y = complex(x), complex(y)
    if x.imag == 0.0:
        raise OracleError("average_ratio requires Im x != 0")
    return _average(d, lambda xs: _char(y, xs) / _char(x, xs), 1e-5)


def average_inverse_pair(d: JointDensitySpec, x1, x2) -> ScaledComplex:
    """<1 / (det(x1 - M) det(x2 - M))>; needs n = 3 and both points off axis."""
    x1, x2 = complex(x1), complex(x2)
    if d.n != 3:
        raise OracleError("average_inverse_pair needs n = 3")
    if x1.imag == 0.0 or x2.imag == 0.0:
        raise OracleError("average_inverse_pair requires Im x1, Im x2 != 0")
    return _average(d, lambda xs: 1.0 / (_char(x1, xs) * _char(x2, xs)), 1e-4)
