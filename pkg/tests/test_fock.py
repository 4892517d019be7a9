"""Tests for the infinite-wedge layer and the boson-fermion map."""

from fractions import Fraction

import pytest

from openhurwitz.fock import (LaurentRow, WedgeState, alpha_apply,
                              boson_fermion, exp_qz_row, fermion_apply,
                              slot_exponent, wedge_from_rows,
                              wedge_reduce_exp_row)
from openhurwitz.series import SymSeries, default_profile
from openhurwitz.symfun import partitions_up_to, schur_p
from openhurwitz.verify import wedge_reduction_holds

PROF = default_profile(weight=4, beta_order=1, q1_max=4, window=6)


def test_slot_exponents():
    # v_lambda at level N occupies exponents lambda_i - i + N
    assert [slot_exponent((2, 1), 0, i) for i in (1, 2, 3, 4)] == [1, -1, -3, -4]
    assert [slot_exponent((), 2, i) for i in (1, 2, 3)] == [1, 0, -1]


def test_psi_vacuum_and_basis():
    for n in (-1, 0, 2):
        st = WedgeState.vacuum(n, 4, PROF)
        assert boson_fermion(st, "schur") == SymSeries.one(PROF)
    for lam in partitions_up_to(4):
        st = WedgeState.basis(lam, 0, 4, PROF)
        assert boson_fermion(st, "schur") == schur_p(lam, PROF)
        assert boson_fermion(st, "alpha") == schur_p(lam, PROF)


def test_fermion_level_shifts():
    # level-0 vacuum occupies exponents -1, -2, ...
    st = WedgeState.vacuum(0, 4, PROF)
    up = fermion_apply(st, "theta", 0)
    assert up.N == 1 and up.coeffs == WedgeState.vacuum(1, 4, PROF).coeffs
    down = fermion_apply(st, "theta_dag", -1)
    assert down.N == -1 and down.coeffs == WedgeState.vacuum(-1, 4, PROF).coeffs
    # theta_a on an occupied slot kills the state
    assert fermion_apply(st, "theta", -1).is_zero()
    # theta_dag on an empty slot kills the state
    assert fermion_apply(st, "theta_dag", 0).is_zero()


def test_theta_creates_partition():
    # theta_0 theta_dag_{-1} |0> = v_{(1)} at level 0
    st = fermion_apply(fermion_apply(WedgeState.vacuum(0, 4, PROF),
                                     "theta_dag", -1), "theta", 0)
    assert boson_fermion(st, "schur") == schur_p((1,), PROF)


def test_anticommutation():
    st = WedgeState.basis((2, 1), 0, 6, PROF)
    for a in (-2, 0, 1, 3):
        x = fermion_apply(fermion_apply(st, "theta_dag", a), "theta", a)
        y = fermion_apply(fermion_apply(st, "theta", a), "theta_dag", a)
        assert (x + y).coeffs == st.coeffs
    xy = fermion_apply(fermion_apply(st, "theta", 2), "theta", -1)
    yx = fermion_apply(fermion_apply(st, "theta", -1), "theta", 2)
    assert (xy + yx).is_zero()


def test_alpha_routes_agree():
    for lam in partitions_up_to(3):
        st = WedgeState.basis(lam, 0, 6, PROF)
        for n in (-3, -2, -1, 1, 2, 3):
            assert alpha_apply(st, n, "direct") == alpha_apply(st, n, "fermion")


def test_alpha_minus_one_on_vacuum():
    st = alpha_apply(WedgeState.vacuum(0, 4, PROF), -1)
    assert boson_fermion(st, "schur") == schur_p((1,), PROF)


def test_wedge_from_pure_rows_is_vacuum():
    st = wedge_from_rows([], 1, 3, PROF)
    assert boson_fermion(st, "schur") == SymSeries.one(PROF)


def test_wedge_from_perturbed_row():
    # z^{-1} + c z^0 at level 0: tau = 1 + c s_(1) + c^2 s_(1,1)? no --
    # a single perturbed top row gives 1 + c*p1-free? compute directly:
    # rows: (z^{-1} + c), z^{-2}, z^{-3}, ...  The wedge expands as
    # v_() + c * v_... with the slot raised by one: coefficient c on (1).
    c = SymSeries.from_rational(Fraction(5, 3), PROF)
    rows = [LaurentRow(-1, {0: SymSeries.one(PROF), 1: c})]
    st = wedge_from_rows(rows, 0, 3, PROF)
    tau = boson_fermion(st, "schur")
    expect = SymSeries.one(PROF) + schur_p((1,), PROF) * Fraction(5, 3)
    assert tau == expect


def test_exp_row_wedge_is_exp_qp1():
    # the wedge of rows z^{-i} e^{qz} maps to exp(q p1)
    cutoff = PROF.max_p_weight
    st = wedge_from_rows(lambda i: exp_qz_row(1 - i, cutoff, PROF),
                         1, cutoff, PROF)
    tau = boson_fermion(st, "schur")
    assert tau == SymSeries.monomial(PROF, (1,), 1, 0).exp()


@pytest.mark.parametrize("k", [1, 2])
def test_wedge_reduction_small(k):
    assert wedge_reduction_holds(k, 2, PROF)


def test_reduced_row_leading_term():
    row = wedge_reduce_exp_row(2, 3, PROF)
    assert row.offset == 0
    # l = 0 term: (-q)^k / ((0+k)(k-1)! 0!) = q^2/2 at the z^0 slot
    lead = row.coeffs[0]
    assert lead.coeff((), 2, 0).rational_part() == Fraction(1, 2)
