"""Tests for the tau-level KP/mKP machinery and soliton fixtures."""

from fractions import Fraction

import pytest

from openhurwitz.hurwitz import closed_tau
from openhurwitz.kp import (BdFailure, BdSeries, SolitonParams, TauSeries,
                            adjoint_tau, bd_apply, bd_detect, exp_xi,
                            fay_holds_graded, fay_residual, mkp_verify,
                            ortho_rows, soliton_chain_holds, soliton_tau,
                            tau_shift, wave)
from openhurwitz.series import SymSeries, coef_x, coef_x0, default_profile
from openhurwitz.symfun import partitions_of, z_centralizer

PROF = default_profile(weight=3, beta_order=2, q1_max=3, window=6)


# ---------------------------------------------------------------------------
# exp_xi, shifts, wave functions
# ---------------------------------------------------------------------------

def test_exp_xi_cauchy_identity():
    # [x^k] exp(sum p_n x^n / n) = sum_{|lam|=k} p_lam / z_lam
    prof = default_profile(weight=4, beta_order=1, q1_max=1, window=6)
    ex = exp_xi(+1, prof)
    for k in range(5):
        expect = SymSeries.zero(prof)
        for lam in partitions_of(k):
            expect = expect + SymSeries.monomial(
                prof, lam, coeff=Fraction(1, z_centralizer(lam)))
        assert coef_x(ex, k) == expect


def test_tau_shift_exponential():
    tau = TauSeries(SymSeries.monomial(PROF, (1,), 1, 0).exp())
    L = tau_shift(tau, -1)
    for k in range(3):
        mq = SymSeries.monomial(PROF, (), 1, 0, coeff=Fraction(-1))
        expect = tau.s
        for _ in range(k):
            expect = expect * mq
        num = Fraction(1)
        for j in range(1, k + 1):
            num /= j
        assert coef_x(L, -k) == expect * num


def test_wave_trivial_tau():
    one = TauSeries(SymSeries.one(PROF))
    assert wave(one, 0) == exp_xi(+1, PROF)
    assert wave(one, 0, "adjoint") == exp_xi(-1, PROF)


# ---------------------------------------------------------------------------
# Fay certificate
# ---------------------------------------------------------------------------

def test_fay_exp_qp1():
    tau = TauSeries(SymSeries.monomial(PROF, (1,), 1, 0).exp())
    assert fay_residual(tau).is_zero()


def test_fay_closed_tau():
    assert fay_residual(TauSeries(closed_tau(PROF))).is_zero()
    assert fay_residual(adjoint_tau(TauSeries(closed_tau(PROF)))).is_zero()


def test_fay_detects_non_tau():
    prof = default_profile(weight=4, beta_order=1, q1_max=4, window=7)
    bad = closed_tau(prof) + SymSeries.monomial(prof, (2,), 2, 0)
    assert not fay_residual(TauSeries(bad)).is_zero()
    assert not fay_holds_graded(TauSeries(bad))


def test_fay_scale_invariance():
    tau = closed_tau(PROF) * Fraction(7, 2)
    assert fay_residual(TauSeries(tau)).is_zero()


# ---------------------------------------------------------------------------
# Backlund-Darboux
# ---------------------------------------------------------------------------

def test_bd_apply_vacuum_to_p1():
    # C(x) = 1 + x^{-1} maps tau = 1 to 1 + p1
    one = TauSeries(SymSeries.one(PROF))
    C = BdSeries.from_rationals((1, 1), PROF)
    out = bd_apply(one, C, "forward")
    expect = SymSeries.one(PROF) + SymSeries.monomial(PROF, (1,))
    assert out.s == expect


def test_bd_backward_inverse_is_trivial_series():
    # the inverse of the transformation above is generated by the
    # reciprocal eigenfunction, whose detected series is 1 -- not the
    # reciprocal power series (1 + x^{-1})^{-1}
    one = TauSeries(SymSeries.one(PROF))
    expect = TauSeries(SymSeries.one(PROF)
                       + SymSeries.monomial(PROF, (1,)))
    back = bd_detect(expect, one, direction="backward")
    assert isinstance(back, BdSeries)
    assert back.coeffs[0] == SymSeries.one(PROF)
    for k, c in back.coeffs.items():
        if k > 0:
            assert c.is_zero()


def test_bd_detect_forward_vacuum_pair():
    one = TauSeries(SymSeries.one(PROF))
    target = TauSeries(SymSeries.one(PROF) + SymSeries.monomial(PROF, (1,)))
    C = bd_detect(one, target)
    assert isinstance(C, BdSeries)
    assert C.coeffs[1] == SymSeries.one(PROF)
    # applying the detected series reproduces the target
    assert bd_apply(one, C, "forward").s == target.s


def test_bd_detect_failure_reports_witness():
    one = TauSeries(SymSeries.one(PROF))
    # 1 + p2 is not a forward BD image of 1 (nor a tau-function)
    bad = TauSeries(SymSeries.one(PROF) + SymSeries.monomial(PROF, (2,)))
    res = bd_detect(one, bad)
    assert isinstance(res, BdFailure)
    assert not res


def test_mkp_verify_trivial_chain():
    one = TauSeries(SymSeries.one(PROF))
    p1 = TauSeries(SymSeries.one(PROF) + SymSeries.monomial(PROF, (1,)))
    reports = mkp_verify([one, p1])
    assert all(r["status"] == "pass" for r in reports)


# ---------------------------------------------------------------------------
# Solitons
# ---------------------------------------------------------------------------

PARAMS = SolitonParams((1, 2, 3), (-1, -2, -3), (1, 2, 3))


def test_soliton_degenerate_rejected():
    with pytest.raises(ValueError):
        SolitonParams((1,), (1,), (-1,))
    with pytest.raises(ValueError):
        SolitonParams((1, 2), (1,), (1,))


def test_soliton_constant_terms():
    prof = default_profile(weight=2, beta_order=1, q1_max=0, window=6)
    consts = [soliton_tau(PARAMS, k, prof).s.constant_term().rational_part()
              for k in (1, 2, 3)]
    assert consts == [2, -4, -20]


@pytest.mark.parametrize("k", [1, 2, 3])
def test_soliton_fay_and_chain(k):
    prof = default_profile(weight=4, beta_order=1, q1_max=0, window=7)
    assert fay_holds_graded(soliton_tau(PARAMS, k, prof))
    assert soliton_chain_holds(PARAMS, k, prof)


def test_soliton_round_trip():
    prof = default_profile(weight=3, beta_order=1, q1_max=0, window=6)
    tau = soliton_tau(PARAMS, 1, prof, normalized=True)
    C = BdSeries.from_rationals((1, 2), prof)
    fwd = TauSeries(bd_apply(tau, C, "forward").s).normalized()
    back = bd_detect(fwd, tau, direction="backward")
    assert isinstance(back, BdSeries)


# ---------------------------------------------------------------------------
# Orthogonalization
# ---------------------------------------------------------------------------

def test_ortho_vacuum_rows():
    dual = ortho_rows([], 1, 2, PROF)
    # dual of a pure-row point is pure
    for row in dual:
        assert row.pure() or all(s.is_zero() for j, s in row.coeffs.items()
                                 if j != 0)
