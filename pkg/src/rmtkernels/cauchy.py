"""Cauchy transforms h_j(z) = 1/(2 pi i) * integral of pi_j(x) w(x) / (x - z) dx.

Evaluation reuses the node set of the recurrence table, which makes the
discrete measure exactly orthogonal to the computed polynomials; the
geometric-series cancellation for |z| large is then inherited to rounding
accuracy.  Near the real axis the base panels around Re z are replaced by
panels refined geometrically down to width |Im z|/4, so the quadrature
resolves the near-pole without principal-value machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .orthopoly import RecurrenceTable, eval_weight, monic_values_scaled
from .quadrature import legendre_panel
from .scaled import ScaledComplex

_INV_2PI_I = -0.5j / math.pi  # 1/(2 pi i), kept in the mantissa


class CauchyDomainError(ValueError):
    pass


class CauchyConvergenceError(RuntimeError):
    pass


@dataclass(frozen=True)
class CauchyEvalConfig:
    panel_budget: int = 16          # Gauss order on refined local panels
    near_axis_threshold: float = 0.3  # switch distance (fraction of dense width)
    jacobi_panels_at_origin: bool = True
    check_accuracy: bool = True

    def __post_init__(self):
        if self.panel_budget < 16:
            raise ValueError("panel_budget must be at least 16")
        if self.near_axis_threshold <= 0:
            raise ValueError("near_axis_threshold must be positive")


DEFAULT_CONFIG = CauchyEvalConfig()


def _local_region(t: RecurrenceTable, x0: float, halfwidth: float):
    """Base panels overlapping [x0 - hw, x0 + hw]; returns (kept mask, lo, hi)."""
    g = t.grid
    keep = np.ones(g.x.size, dtype=bool)
    lo = hi = None
    for p in g.panels:
        if p.b >= x0 - halfwidth and p.a <= x0 + halfwidth:
            keep[p.start:p.stop] = False
            lo = p.a if lo is None else min(lo, p.a)
            hi = p.b if hi is None else max(hi, p.b)
    return keep, lo, hi


def _refined_nodes(t: RecurrenceTable, lo, hi, x0, min_width, order):
    """Panels on [lo, hi] refined geometrically toward x0 (and split at 0)."""
    breaks = {lo, hi}
    if lo <= 0.0 <= hi:
        # resolve the |x|^2a kink: geometric refinement toward 0 from both sides
        breaks.add(0.0)
        for side_end in (lo, hi):
            cur = abs(side_end)
            while cur > 1e-12:
                cur *= 0.25
                breaks.add(math.copysign(cur, side_end))
    x0 = min(max(x0, lo), hi)
    breaks.add(x0)
    for side_end in (lo, hi):
        width = abs(side_end - x0)
        cur = width
        while cur > min_width:
            cur *= 0.5
            breaks.add(x0 + math.copysign(cur, side_end - x0))
    edges = sorted(breaks)
    xs, ws = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        if b - a <= 0:
            continue
        xn, wn = legendre_panel(a, b, order)
        xs.append(xn)
        ws.append(wn)
    return np.concatenate(xs), np.concatenate(ws)


def _quad_sum(values, log_weights, qw, kernel):
    """sum qw * e^(log_weights) * values * kernel, factored against overflow.

    Also returns the sum of absolute terms, which bounds how much
    cancellation the signed sum went through.
    """
    lw_max = float(np.max(log_weights))
    terms = qw * np.exp(log_weights - lw_max) * values * kernel
    return complex(np.sum(terms)), float(np.sum(np.abs(terms))), lw_max


def _transform(t: RecurrenceTable, j: int, z: complex, cfg: CauchyEvalConfig,
               power: int, order: int, width_divisor: float) -> ScaledComplex:
    g = t.grid
    w = t.weight
    d = abs(z.imag)
    dense_width = g.dense_hi - g.dense_lo
    x0 = z.real

    near = (
        g.dense_lo - 0.2 * dense_width < x0 < g.dense_hi + 0.2 * dense_width
        and d < cfg.near_axis_threshold * dense_width
    )

    total = 0j
    mass = 0.0
    total_log = -math.inf

    def accumulate(val, amp, lg):
        nonlocal total, mass, total_log
        if val == 0 and amp == 0:
            return
        if mass == 0:
            total, mass, total_log = val, amp, lg
            return
        if lg > total_log:
            shift = math.exp(total_log - lg)
            total, mass, total_log = total * shift + val, mass * shift + amp, lg
        else:
            shift = math.exp(lg - total_log)
            total, mass = total + val * shift, mass + amp * shift

    if near:
        halfwidth = max(4.0 * d, 1.5 * dense_width / max(len(g.panels), 8))
        keep, lo, hi = _local_region(t, x0, halfwidth)
        if lo is not None:
            xl, wl = _refined_nodes(t, lo, hi, x0, max(d / width_divisor, 1e-14), order)
            vals, s = monic_values_scaled(t, [j], xl)[j]
            logw = 2.0 * w.alpha * np.log(np.abs(xl)) - w.n * w.potential(xl)
            kern = 1.0 / (xl - z) ** power
            val, amp, lg = _quad_sum(vals, logw, wl, kern)
            accumulate(val, amp, lg + s)
    else:
        keep = np.ones(g.x.size, dtype=bool)

    xb = g.x[keep]
    if xb.size:
        vals, s = monic_values_scaled(t, [j], xb)[j]
        kern = 1.0 / (xb - z) ** power
        val, amp, lg = _quad_sum(vals, g.logw[keep], g.qw[keep], kern)
        accumulate(val, amp, lg + s)

    pref = _INV_2PI_I * (1.0 if power == 1 else float(power - 1))
    mass_log = total_log + (math.log(mass * abs(pref)) if mass > 0 else -math.inf)
    return ScaledComplex.from_parts(total * pref, total_log), mass_log


def cauchy_transform(t: RecurrenceTable, j: int, z,
                     cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> ScaledComplex:
    """h_j(z), including the 1/(2 pi i) prefactor; requires Im z != 0."""
    return _transform_checked(t, j, z, cfg, power=1)


def cauchy_transform_derivative(t: RecurrenceTable, j: int, z,
                                cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> ScaledComplex:
    """d/dz h_j(z) = 1/(2 pi i) * integral pi_j w / (x-z)^2 dx."""
    return _transform_checked(t, j, z, cfg, power=2)


def _transform_checked(t, j, z, cfg, power):
    z = complex(z)
    if z.imag == 0.0:
        raise CauchyDomainError("Cauchy transform requires Im z != 0")
    if not (0 <= j <= t.max_degree):
        raise IndexError(f"degree {j} outside table range 0..{t.max_degree}")
    coarse, _ = _transform(t, j, z, cfg, power, order=cfg.panel_budget, width_divisor=4.0)
    if not cfg.check_accuracy:
        return coarse
    fine, mass_log = _transform(t, j, z, cfg, power, order=cfg.panel_budget + 8,
                                width_divisor=8.0)
    diff_log = (coarse - fine).log_abs()
    # near a zero of h_j no quadrature reaches pure relative accuracy, so the
    # comparison scale is floored by a small multiple of the absolute mass
    scale_log = max(fine.log_abs(), mass_log + math.log(1e-9))
    if math.isfinite(diff_log) and diff_log - scale_log > math.log(1e-6):
        raise CauchyConvergenceError(
            f"panel refinements disagree by {math.exp(min(diff_log - scale_log, 700)):.3e} "
            f"relative at j={j}, z={z}"
        )
    return fine


@dataclass
class JumpReport:
    x: float
    j: int
    eps: list
    residuals: list          # relative residual per epsilon
    extrapolated_residual: float


def plemelj_jump_check(t: RecurrenceTable, j: int, x: float, eps_list,
                       cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> JumpReport:
    """|h_j(x + i eps) - h_j(x - i eps) - pi_j(x) w(x)|, extrapolated to eps -> 0.

    The Poisson-kernel error of the jump has a full power series in eps, so
    the jumps are extrapolated to eps = 0 by Neville's scheme through every
    supplied epsilon.
    """
    if x == 0.0:
        raise CauchyDomainError("jump check undefined at the weight kink x = 0")
    eps_list = sorted(float(e) for e in eps_list)
    target = _pi_w(t, j, x).to_complex()
    t_abs = abs(target)
    jumps = []
    residuals = []
    for eps in eps_list:
        hp = cauchy_transform(t, j, complex(x, eps), cfg)
        hm = cauchy_transform(t, j, complex(x, -eps), cfg)
        jump = (hp - hm).to_complex()
        jumps.append(jump)
        residuals.append(abs(jump - target) / t_abs if t_abs > 0 else abs(jump))
    extr = _neville_at_zero(eps_list, jumps)
    extr_res = abs(extr - target) / t_abs if t_abs > 0 else abs(extr)
    return JumpReport(x=x, j=j, eps=eps_list, residuals=residuals,
                      extrapolated_residual=extr_res)


def _neville_at_zero(xs, ys):
    vals = list(ys)
    m = len(vals)
    for level in range(1, m):
        for i in range(m - level):
            x_i, x_k = xs[i], xs[i + level]
            vals[i] = (x_k * vals[i] - x_i * vals[i + 1]) / (x_k - x_i)
    return vals[0]


def _pi_w(t: RecurrenceTable, j: int, x: float) -> ScaledComplex:
    from .orthopoly import eval_monic

    return eval_monic(t, j, x) * eval_weight(t.weight, x)


def second_kind_recurrence(t: RecurrenceTable, z: complex, jmax: int,
                           cfg: CauchyEvalConfig = DEFAULT_CONFIG):
    """q_j(z) by the forward recurrence seeded with quadrature q_0.

    Cross-validates cauchy_transform for moderate j; the forward direction
    is unstable for j beyond ~n/2 near the support, which callers must
    respect (documented, not asserted).
    """
    q_prev = cauchy_transform(t, 0, z, cfg)
    out = [q_prev]
    if jmax == 0:
        return out
    m0 = ScaledComplex.from_parts(_INV_2PI_I, t.log_norm_sq[0])
    q_cur = m0 + ScaledComplex.from_complex(z - t.a[0]) * q_prev
    out.append(q_cur)
    for k in range(1, jmax):
        q_nxt = ScaledComplex.from_complex(z - t.a[k]) * q_cur - t.b[k] * q_prev
        q_prev, q_cur = q_cur, q_nxt
        out.append(q_cur)
    return out
