"""Tests for closed/open Hurwitz series, the oracle, and the contour route."""

from fractions import Fraction

import pytest

from openhurwitz.hurwitz import (closed_hurwitz, closed_hurwitz_oracle,
                                 closed_tau, closed_tau_q1q2,
                                 cutjoin_ode_residual, d_series, open_hurwitz,
                                 open_tau, open_tau_base, open_tau1_via_D)
from openhurwitz.series import default_profile
from openhurwitz.symfun import partitions_of

PROF = default_profile(weight=3, beta_order=3, q1_max=3, window=6)
TAU_C = closed_tau(PROF)


def test_oracle_pinned_values():
    assert closed_hurwitz_oracle((1,), 0) == 1
    assert closed_hurwitz_oracle((2,), 1) == Fraction(1, 2)
    assert closed_hurwitz_oracle((3,), 2) == 1
    assert closed_hurwitz_oracle((1, 1), 2) == Fraction(1, 2)
    # parity: h^c vanishes when m and the profile have opposite parity
    assert closed_hurwitz_oracle((2, 1), 1) == 0
    assert closed_hurwitz_oracle((3,), 1) == 0
    assert closed_hurwitz_oracle((1, 1), 1) == 0


def test_engine_matches_oracle_small():
    for d in range(1, PROF.max_p_weight + 1):
        for lam in partitions_of(d):
            for m in range(PROF.beta_order + 1):
                assert closed_hurwitz(lam, m, PROF, tau=TAU_C) \
                    == closed_hurwitz_oracle(lam, m)


def test_closed_route_equality():
    prof = default_profile(weight=3, beta_order=2, q1_max=3, window=6)
    assert closed_tau(prof, "cutjoin") == closed_tau(prof, "fermionic")


def test_closed_query_outside_profile():
    with pytest.raises(ValueError):
        closed_hurwitz((4,), 0, PROF, tau=TAU_C)
    with pytest.raises(ValueError):
        closed_hurwitz_oracle((7,), 0)


def test_n0_collapse():
    # tau^o_0 = tau^c(p, beta1+beta2, q1 q2)
    assert open_tau(0, PROF, tau_c=TAU_C) \
        == closed_tau_q1q2(PROF, beta_sum=True, tau=TAU_C)


def test_open_base_negative_q2_cancellation():
    # construction asserts internally that negative q2 powers cancel
    for n in (-2, 1, 3):
        out = open_tau_base(n, PROF, tau_c=TAU_C)
        assert out.min_q2_exponent() >= 0


def test_case1_single_row():
    for n in (-2, -1, 1, 2, 3):
        for k in range(1, PROF.max_p_weight + 1):
            assert open_hurwitz((k,), 0, 0, 0, n, PROF, tau_c=TAU_C) \
                == Fraction(n, k)


def test_case1_spot_values():
    assert open_hurwitz((1,), 0, 0, 0, 3, PROF, tau_c=TAU_C) == 3
    assert open_hurwitz((1,), 0, 0, 0, 1, PROF, tau_c=TAU_C) == 1
    assert open_hurwitz((1,), 0, 0, 0, -1, PROF, tau_c=TAU_C) == -1


def test_pure_boundary_degree_row():
    # the (empty profile, d1 = 1) entry at N = 1 is -1
    assert open_hurwitz((), 0, 0, 1, 1, PROF, tau_c=TAU_C) == -1


def test_branch_flow_ode():
    for n in (-2, -1, 0, 1, 2):
        assert cutjoin_ode_residual(n, PROF, tau_c=TAU_C).is_zero()


def test_level1_contour_equals_flow():
    assert open_tau1_via_D(PROF, tau_c=TAU_C) == open_tau(1, PROF, tau_c=TAU_C)


def test_d_series_leading_terms():
    D = d_series(PROF)
    top = D.coef(0)
    # l = 0 slice at q1^0 is 1
    assert top.coeff((), 0, 0).rational_part() == 1
    # l = 0, k = 1 term: -q1 / 1
    assert top.coeff((), 1, 0).coeff(0, 0) == -1
    # l = 1 slice leading term: q2/z
    assert D.coef(-1).coeff((), 0, 1).coeff(0, 0) == 1
