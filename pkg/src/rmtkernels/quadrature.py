"""Composite Gauss panels for the varying weight |x|^(2a) e^(-nV).

The weight spans hundreds of orders of magnitude across the integration
range, so every grid stores the smooth part of the weight in log form:
the panels integrate  f -> sum qw * e^(logw) * f(x),  where for ordinary
Gauss-Legendre panels logw = 2a log|x| - nV(x), and for the optional
Gauss-Jacobi panels touching the origin the |x|^(2a) factor is absorbed
into the quadrature weights qw and logw = -nV(x).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp


@functools.lru_cache(maxsize=256)
def _leggauss(order: int):
    return np.polynomial.legendre.leggauss(order)


@functools.lru_cache(maxsize=256)
def _jacgauss(order: int, beta: float):
    # nodes/weights for integral over [-1,1] of (1+t)^beta f(t)
    return _sp.roots_jacobi(order, 0.0, beta)


def legendre_panel(a: float, b: float, order: int):
    t, w = _leggauss(order)
    half = 0.5 * (b - a)
    return a + half * (t + 1.0), half * w


@dataclass
class Panel:
    a: float
    b: float
    start: int  # node index range [start, stop) in the flat grid arrays
    stop: int
    jacobi: bool = False


@dataclass
class WeightGrid:
    """Flat node set for one weight, with panel bookkeeping."""

    x: np.ndarray
    qw: np.ndarray        # positive quadrature weights (incl. |x|^2a on Jacobi panels)
    logw: np.ndarray      # log of the remaining weight factor at each node
    panels: list = field(default_factory=list)
    lo: float = 0.0
    hi: float = 0.0
    dense_lo: float = 0.0
    dense_hi: float = 0.0


def geometric_edges(outer: float, inner: float, ratio: float = 2.0):
    """Edges from |outer| down toward |inner| (same sign), geometric widths."""
    edges = [outer]
    cur = outer
    while abs(cur) > abs(inner) * (1 + 1e-12):
        cur = cur / ratio if abs(cur) / ratio > abs(inner) else inner
        edges.append(cur)
    return edges


def _tail_edges(start: float, end: float, ratio: float = 1.7):
    """Edges from |start| out to |end| (same sign), growing widths."""
    edges = [start]
    width = abs(start) * 0.5 + 1e-3
    cur = start
    sgn = 1.0 if end >= start else -1.0
    while abs(cur) < abs(end):
        cur = cur + sgn * width
        if abs(cur) >= abs(end):
            cur = end
        edges.append(cur)
        width *= ratio
    return edges


def cutoff_radius(n: int, alpha: float, vcoeffs, direction: float, budget: float = 750.0):
    """Smallest L with n V(sgn L) - max(0, 2a) log L beyond the underflow budget."""
    v = np.polynomial.Polynomial(vcoeffs)

    def margin(r):
        return n * v(direction * r) - max(0.0, 2.0 * alpha) * math.log(max(r, 1.0)) - budget

    r = 1.0
    for _ in range(200):
        if margin(r) > 0:
            break
        r *= 1.3
    else:
        raise ValueError("potential does not grow fast enough for a finite cutoff")
    return r


def dense_radius(n: int, vcoeffs, direction: float, drop: float = 8.0):
    """Radius covering the oscillatory region (equilibrium support plus margin).

    The support is set by V alone, so the criterion V - min V >= drop is
    n-independent; the cutoff radius caps it for very large n.
    """
    v = np.polynomial.Polynomial(vcoeffs)
    vmin = min(v(np.linspace(-6, 6, 1201)))
    r = 0.05
    while v(direction * r) - vmin < drop and r < 1e3:
        r *= 1.05
    return r


def build_weight_grid(
    alpha: float,
    n: int,
    vcoeffs,
    dense_panels: int,
    order: int = 20,
    jacobi_at_origin: bool = True,
    jacobi_order: int = 48,
) -> WeightGrid:
    v = np.polynomial.Polynomial(vcoeffs)
    xs, ws, lws, panels = [], [], [], []

    def push_leg(a, b, p_order):
        x, w = legendre_panel(a, b, p_order)
        start = sum(len(c) for c in xs)
        xs.append(x)
        ws.append(w)
        lws.append(2.0 * alpha * np.log(np.abs(x)) - n * v(x))
        panels.append(Panel(a, b, start, start + len(x)))

    def push_jac(d, p_order):
        # integral over [0, d] (d may be negative) of |x|^2a e^(-nV) f
        t, w = _jacgauss(p_order, 2.0 * alpha)
        ad = abs(d)
        x = 0.5 * ad * (t + 1.0)
        qw = w * (0.5 * ad) ** (2.0 * alpha + 1.0)
        if d < 0:
            x = -x[::-1]
            qw = qw[::-1]
        start = sum(len(c) for c in xs)
        xs.append(x)
        ws.append(qw)
        lws.append(-n * v(x))
        a, b = (d, 0.0) if d < 0 else (0.0, d)
        panels.append(Panel(a, b, start, start + len(x), jacobi=True))

    lo = -cutoff_radius(n, alpha, vcoeffs, -1.0)
    hi = cutoff_radius(n, alpha, vcoeffs, +1.0)
    lo_d = max(-dense_radius(n, vcoeffs, -1.0), lo)
    hi_d = min(dense_radius(n, vcoeffs, +1.0), hi)

    for sgn, dense_edge, far_edge in ((-1.0, lo_d, lo), (+1.0, hi_d, hi)):
        inner = abs(dense_edge) / dense_panels
        if jacobi_at_origin and alpha != 0.0:
            push_jac(sgn * inner, jacobi_order)
        else:
            # resolve |x|^2a by geometric refinement toward 0
            edges = geometric_edges(sgn * inner, sgn * inner * 1e-10, ratio=3.0)
            edges.append(0.0)
            for a, b in zip(edges[1:], edges[:-1]):
                aa, bb = (a, b) if a < b else (b, a)
                push_leg(aa, bb, max(8, order // 2))
        # uniform dense panels
        dense_bounds = np.linspace(sgn * inner, dense_edge, dense_panels)
        for a, b in zip(dense_bounds[:-1], dense_bounds[1:]):
            aa, bb = (a, b) if a < b else (b, a)
            push_leg(aa, bb, order)
        # tail panels, growing geometrically
        if abs(far_edge) > abs(dense_edge) * (1 + 1e-12):
            tail = _tail_edges(dense_edge, far_edge)
            for a, b in zip(tail[:-1], tail[1:]):
                aa, bb = (a, b) if a < b else (b, a)
                push_leg(aa, bb, max(12, order - 4))

    x = np.concatenate(xs)
    qw = np.concatenate(ws)
    logw = np.concatenate(lws)
    panels.sort(key=lambda p: p.a)
    return WeightGrid(x=x, qw=qw, logw=logw, panels=panels,
                      lo=lo, hi=hi, dense_lo=lo_d, dense_hi=hi_d)
