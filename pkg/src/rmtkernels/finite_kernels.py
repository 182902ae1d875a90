"""The three finite kernels built from monic polynomials and Cauchy transforms.

Family I pairs polynomial values, family II a Cauchy transform in the first
slot with a polynomial in the second, family III Cauchy transforms in both.
Families I and III have a vanishing numerator on the diagonal and are
switched to the derivative (l'Hopital) form near it.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .cauchy import (
    CauchyDomainError,
    CauchyEvalConfig,
    DEFAULT_CONFIG,
    cauchy_transform,
    cauchy_transform_derivative,
)
from .orthopoly import RecurrenceTable, eval_monic, eval_monic_derivative
from .scaled import ScaledComplex

TWO_PI_I = 2j * 3.141592653589793


class KernelFamily(enum.Enum):
    I = "I"
    II = "II"
    III = "III"


@dataclass(frozen=True)
class YColumns:
    """Entries of the 2x2 matrix solving the orthogonal-polynomial RH problem."""

    y11: ScaledComplex
    y21: ScaledComplex
    y12: ScaledComplex
    y22: ScaledComplex

    def det(self) -> ScaledComplex:
        return self.y11 * self.y22 - self.y12 * self.y21


def confluence_threshold(zeta: complex) -> float:
    return 1e-4 * max(1.0, abs(zeta))


def _values(family: KernelFamily, t, deg, z, side, cfg, derivative=False):
    """F_deg(z) for the function family owning the given kernel slot."""
    use_h = (family is KernelFamily.II and side == 0) or family is KernelFamily.III
    if use_h:
        if derivative:
            return cauchy_transform_derivative(t, deg, z, cfg)
        return cauchy_transform(t, deg, z, cfg)
    if derivative:
        return eval_monic_derivative(t, deg, z)
    return eval_monic(t, deg, z)


def w_kernel(family: KernelFamily, t: RecurrenceTable, m: int, zeta, eta,
             cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> ScaledComplex:
    """W_{family, n+m}(zeta, eta) = (F_{n+m}(zeta) G_{n+m-1}(eta) - F_{n+m-1}(zeta) G_{n+m}(eta)) / (zeta - eta)."""
    zeta, eta = complex(zeta), complex(eta)
    n = t.weight.n
    hi, lo = n + m, n + m - 1
    if lo < 0 or hi > t.max_degree:
        raise IndexError(f"kernel degrees ({lo},{hi}) outside table range")
    if family in (KernelFamily.II, KernelFamily.III) and zeta.imag == 0.0:
        raise CauchyDomainError("family II/III kernels need Im zeta != 0")
    if family is KernelFamily.III and eta.imag == 0.0:
        raise CauchyDomainError("family III kernels need Im eta != 0")

    diagonal = family in (KernelFamily.I, KernelFamily.III)
    if diagonal and abs(zeta - eta) < confluence_threshold(zeta):
        return _confluent(family, t, hi, lo, zeta, cfg)

    f_hi = _values(family, t, hi, zeta, 0, cfg)
    f_lo = _values(family, t, lo, zeta, 0, cfg)
    g_hi = _values(family, t, hi, eta, 1, cfg)
    g_lo = _values(family, t, lo, eta, 1, cfg)
    num = f_hi * g_lo - f_lo * g_hi
    if diagonal:
        # guard against catastrophic cancellation just outside the threshold
        mags = max(abs(f_hi * g_lo), abs(f_lo * g_hi))
        if mags > 0 and abs(num) < 1e-12 * mags:
            return _confluent(family, t, hi, lo, zeta, cfg)
    return num / ScaledComplex.from_complex(zeta - eta)


def _confluent(family, t, hi, lo, zeta, cfg) -> ScaledComplex:
    """Diagonal limit F'_{hi} F_{lo} - F'_{lo} F_{hi} at zeta."""
    f_hi = _values(family, t, hi, zeta, 0, cfg)
    f_lo = _values(family, t, lo, zeta, 0, cfg)
    d_hi = _values(family, t, hi, zeta, 0, cfg, derivative=True)
    d_lo = _values(family, t, lo, zeta, 0, cfg, derivative=True)
    return d_hi * f_lo - d_lo * f_hi


def w_kernel_times_gap(family: KernelFamily, t: RecurrenceTable, m: int, zeta, eta,
                       cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> ScaledComplex:
    """(zeta - eta) * W_{family,n+m}(zeta, eta), finite on the diagonal for family II."""
    zeta, eta = complex(zeta), complex(eta)
    n = t.weight.n
    hi, lo = n + m, n + m - 1
    f_hi = _values(family, t, hi, zeta, 0, cfg)
    f_lo = _values(family, t, lo, zeta, 0, cfg)
    g_hi = _values(family, t, hi, eta, 1, cfg)
    g_lo = _values(family, t, lo, eta, 1, cfg)
    return f_hi * g_lo - f_lo * g_hi


def y_matrix(t: RecurrenceTable, m: int, z,
             cfg: CauchyEvalConfig = DEFAULT_CONFIG) -> YColumns:
    """The RH solution matrix: polynomials in column 1, Cauchy transforms in column 2."""
    z = complex(z)
    n = t.weight.n
    hi, lo = n + m, n + m - 1
    if z.imag == 0.0:
        raise CauchyDomainError("second column of Y needs Im z != 0")
    factor = ScaledComplex.from_parts(-TWO_PI_I, t.log_gamma_sq(lo))
    return YColumns(
        y11=eval_monic(t, hi, z),
        y21=factor * eval_monic(t, lo, z),
        y12=cauchy_transform(t, hi, z, cfg),
        y22=factor * cauchy_transform(t, lo, z, cfg),
    )
