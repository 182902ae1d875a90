"""Convergence harness: scaled finite kernels against their Bessel limits.

For each case the finite kernel is evaluated at arguments shrunk by
1/(n psi(0)), multiplied by the squared leading coefficient and divided by
the explicit exponential prefactor; the remainder is an O(1) complex number
whose distance to the limiting kernel decays like 1/n.  The harness
measures that decay over a grid and fits the log-log rate.
"""

from __future__ import annotations

import cmath
import enum
import functools
import math
import time
from dataclasses import dataclass, field

import numpy as np

from .bessel_limits import LimitKernelId, limit_kernel, _SPEC, _power, _PI
from .cauchy import CauchyEvalConfig, DEFAULT_CONFIG
from .equilibrium import solve_equilibrium
from .finite_kernels import KernelFamily, w_kernel, w_kernel_times_gap
from .orthopoly import PotentialSpec, WeightSpec, build_recurrence
from .scaled import ScaledComplex, sc_exp


class ScaleCancellationError(RuntimeError):
    """The exponential bookkeeping failed to cancel; an implementation bug."""


class Theorem(enum.Enum):
    T1 = "T1"
    T2a = "T2a"
    T2b = "T2b"
    T3a = "T3a"
    T3b = "T3b"
    T3c = "T3c"


_FAMILY = {
    Theorem.T1: KernelFamily.I,
    Theorem.T2a: KernelFamily.II,
    Theorem.T2b: KernelFamily.II,
    Theorem.T3a: KernelFamily.III,
    Theorem.T3b: KernelFamily.III,
    Theorem.T3c: KernelFamily.III,
}

_LIMIT = {
    Theorem.T1: LimitKernelId.I,
    Theorem.T2a: LimitKernelId.II_plus,
    Theorem.T2b: LimitKernelId.II_minus,
    Theorem.T3a: LimitKernelId.III_plus,
    Theorem.T3b: LimitKernelId.III_pm,
    Theorem.T3c: LimitKernelId.III_minus,
}

# required half-plane of (zeta, eta): +1 upper, -1 lower, 0 unconstrained
_HALF_PLANES = {
    Theorem.T1: (0, 0),
    Theorem.T2a: (+1, 0),
    Theorem.T2b: (-1, 0),
    Theorem.T3a: (+1, +1),
    Theorem.T3b: (+1, -1),
    Theorem.T3c: (-1, -1),
}

_FREE_GRID = (0.4, -0.3, 1.1 + 0.5j, -0.8 - 0.6j)
_UPPER_ZETA = (0.5 + 0.15j, -0.4 + 0.6j, 1.3 + 0.3j, -1.1 + 0.9j)
_UPPER_ETA = (0.7 + 0.2j, -0.2 + 0.5j, 1.5 + 0.7j, -1.3 + 0.4j)

DEFAULT_N_LIST = (8, 16, 32, 64)


def default_grid(side: int, slot: int):
    """Reference evaluation points for one kernel argument.

    side: +1 upper half-plane, -1 lower, 0 unconstrained; slot 0/1
    distinguishes the two arguments so default grids never collide.
    """
    if side == 0:
        return _FREE_GRID if slot == 0 else tuple(z + 0.25 for z in _FREE_GRID)
    base = _UPPER_ZETA if slot == 0 else _UPPER_ETA
    if side > 0:
        return base
    return tuple(z.conjugate() for z in base)


@dataclass
class TheoremCase:
    theorem: Theorem
    alpha: float
    potential: PotentialSpec
    m: int = 0
    zeta_grid: tuple = None
    eta_grid: tuple = None
    n_list: tuple = DEFAULT_N_LIST

    def __post_init__(self):
        sz, se = _HALF_PLANES[self.theorem]
        if self.zeta_grid is None:
            self.zeta_grid = default_grid(sz, 0)
        if self.eta_grid is None:
            self.eta_grid = default_grid(se, 1)
        self.zeta_grid = tuple(complex(z) for z in self.zeta_grid)
        self.eta_grid = tuple(complex(z) for z in self.eta_grid)
        for z, s, name in [(z, sz, "zeta") for z in self.zeta_grid] + \
                          [(z, se, "eta") for z in self.eta_grid]:
            if s > 0 and z.imag <= 0:
                raise ValueError(f"{name} grid point {z} not in the upper half-plane")
            if s < 0 and z.imag >= 0:
                raise ValueError(f"{name} grid point {z} not in the lower half-plane")
        if list(self.n_list) != sorted(set(self.n_list)):
            raise ValueError("n_list must be strictly increasing")


@dataclass
class ConvergenceReport:
    n_list: list
    errors: list                 # sup-grid error per n
    slope: float
    passed: bool
    worst: list                  # (n, zeta, eta, abs_err) of the worst grid point
    records: list = field(repr=False, default_factory=list)
    # rows: (n, zeta, eta, lhs, limit, abs_err)
    decay_ratio: float = math.nan   # e_last / e_first
    runtime_seconds: float = 0.0
    values: list = None          # used by ratio_convergence_check


@functools.lru_cache(maxsize=32)
def _cached_table(alpha: float, coeffs: tuple, n: int):
    w = WeightSpec(alpha, n, PotentialSpec(coeffs))
    return build_recurrence(w, n + 8)


@functools.lru_cache(maxsize=8)
def _cached_equilibrium(coeffs: tuple):
    return solve_equilibrium(PotentialSpec(coeffs))


def normalized_lhs(case: TheoremCase, n: int, zeta, eta,
                   cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> complex:
    """Finite-kernel side with the scaling and exponential prefactor removed."""
    zeta, eta = complex(zeta), complex(eta)
    t = _cached_table(case.alpha, case.potential.coeffs, n)
    eq = _cached_equilibrium(case.potential.coeffs)
    s = n * eq.psi0
    zs, es = zeta / s, eta / s
    fam = _FAMILY[case.theorem]
    g2 = t.gamma_sq(n + case.m - 1)
    drift = eq.v_prime_at_0 / (2.0 * eq.psi0)
    log_amp = 2.0 * case.alpha * math.log(s) + n * eq.v_at_0

    if fam is KernelFamily.II:
        core = g2 * w_kernel_times_gap(fam, t, case.m, zs, es, cfg)
        pref = sc_exp(complex(0.0, 0.0) - drift * (zeta - eta))
    else:
        core = g2 * w_kernel(fam, t, case.m, zs, es, cfg) / ScaledComplex.from_complex(s)
        if fam is KernelFamily.I:
            pref = sc_exp(log_amp + drift * (zeta + eta))
        else:
            pref = sc_exp(-log_amp - drift * (zeta + eta))

    out = core / pref
    la = out.log_abs()
    if math.isfinite(la) and abs(la) > 60.0:
        raise ScaleCancellationError(
            f"normalized kernel has log magnitude {la:.1f}; the exponential "
            f"scales failed to cancel (n={n}, zeta={zeta}, eta={eta})"
        )
    return out.to_complex()


def limit_target(case: TheoremCase, zeta, eta) -> complex:
    """Right-hand side the normalized kernel converges to."""
    kid = _LIMIT[case.theorem]
    val = limit_kernel(kid, case.alpha, zeta, eta)
    if _FAMILY[case.theorem] is KernelFamily.II:
        return (complex(zeta) - complex(eta)) * val
    return val


def convergence_study(case: TheoremCase,
                      cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> ConvergenceReport:
    start = time.time()
    errors = []
    worst = []
    records = []
    for n in case.n_list:
        e_n = -1.0
        w_pt = None
        for zeta in case.zeta_grid:
            for eta in case.eta_grid:
                lhs = normalized_lhs(case, n, zeta, eta, cfg)
                tgt = limit_target(case, zeta, eta)
                err = abs(lhs - tgt)
                records.append((n, zeta, eta, lhs, tgt, err))
                if err > e_n:
                    e_n, w_pt = err, (n, zeta, eta, err)
        if not math.isfinite(e_n):
            raise ScaleCancellationError(f"non-finite error at n={n}, point {w_pt}")
        errors.append(e_n)
        worst.append(w_pt)
    slope = float(np.polyfit(np.log(case.n_list), np.log(errors), 1)[0])
    decay_ratio = errors[-1] / errors[0] if errors[0] > 0 else math.nan
    passed = -1.5 <= slope <= -0.6 and errors[-1] < errors[0]
    return ConvergenceReport(
        n_list=list(case.n_list), errors=errors, slope=slope, passed=passed,
        worst=worst, records=records, decay_ratio=decay_ratio,
        runtime_seconds=time.time() - start,
    )


def ratio_convergence_check(alpha: float, p: PotentialSpec, zeta,
                            n_list=DEFAULT_N_LIST,
                            cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> ConvergenceReport:
    """2 pi i gamma^2 (zeta - eta) W_II at eta = zeta after origin scaling.

    The value is identically 1 at every finite n (it is the average of a
    ratio of identical characteristic polynomials), so the reported
    |value - 1| measures the numerical pipeline, not an asymptotic rate.
    """
    zeta = complex(zeta)
    if zeta.imag == 0.0:
        raise ValueError("ratio check needs Im zeta != 0")
    start = time.time()
    eq = _cached_equilibrium(p.coeffs)
    values = []
    errors = []
    for n in n_list:
        t = _cached_table(alpha, p.coeffs, n)
        zs = zeta / (n * eq.psi0)
        core = w_kernel_times_gap(KernelFamily.II, t, 0, zs, zs, cfg)
        val = (ScaledComplex.from_parts(2j * _PI, t.log_gamma_sq(n - 1)) * core).to_complex()
        values.append(val)
        errors.append(abs(val - 1.0))
    slope = float(np.polyfit(np.log(n_list), np.log(np.maximum(errors, 1e-300)), 1)[0]) \
        if len(n_list) > 1 else math.nan
    passed = all(e < 0.1 for e in errors)
    return ConvergenceReport(
        n_list=list(n_list), errors=errors, slope=slope, passed=passed,
        worst=[], records=[], decay_ratio=errors[-1] / errors[0] if errors[0] else math.nan,
        runtime_seconds=time.time() - start, values=values,
    )
