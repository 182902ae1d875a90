import cmath
import math

import pytest

from rmtkernels.orthopoly import PotentialSpec
from rmtkernels.universality import (
    Theorem,
    TheoremCase,
    convergence_study,
    default_grid,
    limit_target,
    normalized_lhs,
    ratio_convergence_check,
)

V_X2 = PotentialSpec((0.0, 0.0, 1.0))
V_2X2 = PotentialSpec((0.0, 0.0, 2.0))


def test_sine_kernel_point_value():
    # alpha = 0 reduces the limit to sin(pi(z-e))/(pi(z-e)); the finite-n
    # correction at this asymmetric point is the generic O(1/n)
    case = TheoremCase(Theorem.T1, 0.0, V_2X2, zeta_grid=(0.9,), eta_grid=(0.2,))
    want = math.sin(0.7 * math.pi) / (0.7 * math.pi)
    assert limit_target(case, 0.9, 0.2) == pytest.approx(want, rel=1e-14)
    e32 = abs(normalized_lhs(case, 32, 0.9, 0.2) - want)
    e64 = abs(normalized_lhs(case, 64, 0.9, 0.2) - want)
    assert e32 < 0.15 * abs(want)
    assert e64 < 0.65 * e32


def test_convergence_rate_bulk_case():
    case = TheoremCase(Theorem.T1, 0.3, V_2X2,
                       zeta_grid=(0.4, 1.1 + 0.5j),
                       eta_grid=(-0.3, -0.8 - 0.6j),
                       n_list=(8, 16, 32))
    rep = convergence_study(case)
    assert rep.passed
    assert -1.5 <= rep.slope <= -0.6
    assert rep.errors[-1] < rep.errors[0]
    assert len(rep.records) == 3 * 4


def test_degree_shift_robustness():
    # the same limit must emerge for shifted degree pairs m = -1, 0, 1
    vals = []
    for m in (-1, 0, 1):
        case = TheoremCase(Theorem.T1, 0.3, V_2X2, m=m,
                           zeta_grid=(0.5,), eta_grid=(-0.2,))
        vals.append(normalized_lhs(case, 48, 0.5, -0.2))
    tgt = limit_target(
        TheoremCase(Theorem.T1, 0.3, V_2X2, zeta_grid=(0.5,), eta_grid=(-0.2,)),
        0.5, -0.2,
    )
    for v in vals:
        assert v == pytest.approx(tgt, rel=0.1)


def test_schwarz_invariant_between_theorem_pairs():
    # upper/lower scaled kernels are conjugates: the second-family pair picks
    # up a sign, the third-family pair does not
    zeta, eta = 0.5 + 0.15j, 0.45
    ca = TheoremCase(Theorem.T2a, 0.3, V_2X2, zeta_grid=(zeta,), eta_grid=(eta,))
    cb = TheoremCase(Theorem.T2b, 0.3, V_2X2,
                     zeta_grid=(zeta.conjugate(),), eta_grid=(eta,))
    va = normalized_lhs(ca, 16, zeta, eta)
    vb = normalized_lhs(cb, 16, zeta.conjugate(), eta)
    assert vb == pytest.approx(-va.conjugate(), rel=1e-8)

    zeta, eta = 0.5 + 0.15j, 0.7 + 0.2j
    ca = TheoremCase(Theorem.T3a, 0.3, V_2X2, zeta_grid=(zeta,), eta_grid=(eta,))
    cc = TheoremCase(Theorem.T3c, 0.3, V_2X2,
                     zeta_grid=(zeta.conjugate(),), eta_grid=(eta.conjugate(),))
    va = normalized_lhs(ca, 16, zeta, eta)
    vc = normalized_lhs(cc, 16, zeta.conjugate(), eta.conjugate())
    assert vc == pytest.approx(va.conjugate(), rel=1e-8)


def test_limit_targets_share_the_invariant():
    zeta, eta = 0.5 + 0.15j, 0.45
    a = limit_target(TheoremCase(Theorem.T2a, 0.3, V_2X2,
                                 zeta_grid=(zeta,), eta_grid=(eta,)), zeta, eta)
    b = limit_target(TheoremCase(Theorem.T2b, 0.3, V_2X2,
                                 zeta_grid=(zeta.conjugate(),), eta_grid=(eta,)),
                     zeta.conjugate(), eta)
    # the gap factor (zeta - eta) conjugates along with the kernel, which
    # itself flips sign under conjugation, so the pair is related by -conj
    assert b == pytest.approx(-a.conjugate(), rel=1e-12)


def test_case_validation():
    with pytest.raises(ValueError):
        TheoremCase(Theorem.T2a, 0.3, V_2X2, zeta_grid=(0.5 - 0.1j,))
    with pytest.raises(ValueError):
        TheoremCase(Theorem.T3c, 0.3, V_2X2, eta_grid=(0.5 + 0.1j,))
    with pytest.raises(ValueError):
        TheoremCase(Theorem.T1, 0.3, V_2X2, n_list=(16, 8))
    with pytest.raises(ValueError):
        TheoremCase(Theorem.T1, 0.3, V_2X2, n_list=(8, 8, 16))


def test_default_grids_respect_half_planes():
    for side in (-1, 0, +1):
        for slot in (0, 1):
            for z in default_grid(side, slot):
                if side > 0:
                    assert z.imag > 0
                elif side < 0:
                    assert z.imag < 0
    assert set(default_grid(0, 0)).isdisjoint(default_grid(0, 1))


def test_ratio_check_both_half_planes():
    for zeta in (0.5 + 0.5j, 0.5 - 0.5j):
        rep = ratio_convergence_check(0.3, V_2X2, zeta, n_list=(8, 16))
        assert rep.passed
        for v in rep.values:
            assert v == pytest.approx(1.0, abs=1e-8)
    with pytest.raises(ValueError):
        ratio_convergence_check(0.3, V_2X2, 0.5)
