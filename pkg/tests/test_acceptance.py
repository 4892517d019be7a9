"""Acceptance gate: the ten headline verification criteria.

Each test covers one criterion exactly, over exact rationals with zero
tolerance, and emits a single pass/fail line (visible with ``pytest -s``;
the ``-v`` listing shows the same per-criterion outcome by test name).
"""

import sys
from fractions import Fraction

import pytest

from openhurwitz.hurwitz import (closed_hurwitz, closed_hurwitz_oracle,
                                 closed_tau, closed_tau_q1q2,
                                 cutjoin_ode_residual, open_hurwitz, open_tau,
                                 open_tau1_via_D)
from openhurwitz.kp import TauSeries, adjoint_tau, fay_residual
from openhurwitz.series import default_profile
from openhurwitz.symfun import partitions_of
from openhurwitz.verify import (suite_bd_explicit, suite_fock, suite_mkp,
                                suite_ortho, suite_passes, suite_soliton)


def report(name: str, ok: bool):
    line = f"[{'PASS' if ok else 'FAIL'}] {name}"
    print(line)
    sys.stdout.flush()
    assert ok, line


def test_criterion_01_closed_oracle_equivalence():
    profile = default_profile(weight=5, beta_order=6, q1_max=5, window=7)
    tau = closed_tau(profile)
    ok = True
    for d in range(1, 6):
        for lam in partitions_of(d):
            for m in range(7):
                if closed_hurwitz(lam, m, profile, tau=tau) \
                        != closed_hurwitz_oracle(lam, m):
                    ok = False
    # pinned spot values
    ok = ok and closed_hurwitz((1,), 0, profile, tau=tau) == 1
    ok = ok and closed_hurwitz((2,), 1, profile, tau=tau) == Fraction(1, 2)
    ok = ok and closed_hurwitz((3,), 2, profile, tau=tau) == 1
    ok = ok and closed_hurwitz((1, 1), 2, profile, tau=tau) == Fraction(1, 2)
    # parity-zero cases are part of the sweep; assert one explicitly
    ok = ok and closed_hurwitz((2, 1), 1, profile, tau=tau) == 0
    report("criterion 1: closed Hurwitz oracle equivalence "
           "(|lambda| <= 5, m <= 6)", ok)


def test_criterion_02_closed_route_equality():
    profile = default_profile(weight=5, beta_order=4, q1_max=5, window=7)
    ok = closed_tau(profile, "fermionic") == closed_tau(profile, "cutjoin")
    report("criterion 2: fermionic route equals cut-and-join route "
           "(weight <= 5, branch order <= 4)", ok)


def test_criterion_03_kp_certificate():
    profile = default_profile(weight=4, beta_order=3, q1_max=4, window=7)
    ok = fay_residual(TauSeries(closed_tau(profile))).is_zero()
    report("criterion 3: differential Fay residual vanishes for the closed "
           "function (weight <= 4, branch order <= 3)", ok)


def test_criterion_04_mkp_sequence():
    profile = default_profile(weight=3, beta_order=2, q1_max=3, window=7)
    reports = suite_mkp(profile, n_range=(-2, 2))
    ok = suite_passes(reports)
    report("criterion 4: rescaled open functions form an mKP sequence, "
           "N in -2..1 -> N+1 (weight <= 3)", ok)


def test_criterion_05_explicit_transformation():
    profile = default_profile(weight=3, beta_order=2, q1_max=3, window=7)
    tau_c = closed_tau(profile)
    ok = open_tau1_via_D(profile, tau_c=tau_c) \
        == open_tau(1, profile, tau_c=tau_c)
    ok = ok and suite_passes(suite_bd_explicit(profile))
    report("criterion 5: explicit level-0 -> level-1 contour kernel equals "
           "the flow construction", ok)


def test_criterion_06_branch_flow_ode():
    profile = default_profile(weight=3, beta_order=3, q1_max=3, window=7)
    tau_c = closed_tau(profile)
    ok = all(cutjoin_ode_residual(n, profile, tau_c=tau_c).is_zero()
             for n in range(-2, 3))
    report("criterion 6: branch-flow differential equation for the open "
           "functions, N in -2..2", ok)


def test_criterion_07_collapse_and_single_row():
    profile = default_profile(weight=5, beta_order=1, q1_max=5, window=7)
    tau_c = closed_tau(profile)
    ok = open_tau(0, profile, tau_c=tau_c) \
        == closed_tau_q1q2(profile, beta_sum=True, tau=tau_c)
    for n in range(-2, 4):
        tau_o = open_tau(n, profile, tau_c=tau_c)
        for k in range(1, 6):
            if open_hurwitz((k,), 0, 0, 0, n, profile, tau_o=tau_o,
                            tau_c=tau_c) != Fraction(n, k):
                ok = False
    report("criterion 7: level-0 collapse to the closed function; "
           "single-row values N/k for k <= 5, N in -2..3", ok)


def test_criterion_08_fock_layer():
    profile = default_profile(weight=6, beta_order=1, q1_max=6, window=7)
    ok = suite_passes(suite_fock(profile, cutoff=6))
    report("criterion 8: wedge layer (basis -> Schur for |lambda| <= 6, "
           "N in -2..2; anticommutation; dual mode routes; reduction at "
           "cutoff 3)", ok)


def test_criterion_09_soliton_suite():
    profile = default_profile(weight=4, beta_order=1, q1_max=0, window=7)
    ok = suite_passes(suite_soliton(profile))
    report("criterion 9: 3-soliton Wronskians pass Fay, the k=1..3 chain, "
           "and the forward/backward round trip (weight <= 4)", ok)


def test_criterion_10_orthogonality():
    profile = default_profile(weight=2, beta_order=1, q1_max=2, window=6)
    ok = suite_passes(suite_ortho(profile))
    # the adjoint relation itself on the closed function
    tau = TauSeries(closed_tau(profile))
    ok = ok and fay_residual(adjoint_tau(tau)).is_zero()
    report("criterion 10: orthogonalized rows realize the sign-flipped "
           "tau-function (branch order 1, cutoff 2)", ok)
