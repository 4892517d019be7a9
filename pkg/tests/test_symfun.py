"""Tests for partitions, characters, Schur functions, and cut-and-join."""

from fractions import Fraction

from openhurwitz.series import SymSeries, default_profile
from openhurwitz.symfun import (CharTable, character, cutjoin_apply,
                                cutjoin_eigenvalue, cutjoin_exp,
                                cutjoin_exp_iterated, partitions_of,
                                partitions_up_to, schur_expand, schur_p,
                                schur_specialize_equal, z_centralizer)

PROF = default_profile(weight=4, beta_order=2, q1_max=4, window=6)


def test_partition_counts():
    expected = [1, 1, 2, 3, 5, 7, 11, 15, 22]
    assert [len(partitions_of(n)) for n in range(9)] == expected
    assert partitions_of(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(partitions_up_to(4)) == sum(expected[:5])


def test_z_centralizer():
    assert z_centralizer(()) == 1
    assert z_centralizer((1, 1, 1)) == 6
    assert z_centralizer((3,)) == 3
    assert z_centralizer((2, 1)) == 2
    assert z_centralizer((2, 2, 1)) == 8


def test_character_table_s3():
    # rows: (3), (2,1), (1,1,1); columns: (1,1,1), (2,1), (3)
    assert character((3,), (1, 1, 1)) == 1
    assert character((3,), (3,)) == 1
    assert character((2, 1), (1, 1, 1)) == 2
    assert character((2, 1), (2, 1)) == 0
    assert character((2, 1), (3,)) == -1
    assert character((1, 1, 1), (2, 1)) == -1


def test_character_table_s4_dimensions():
    dims = {lam: character(lam, (1,) * 4) for lam in partitions_of(4)}
    assert dims == {(4,): 1, (3, 1): 3, (2, 2): 2, (2, 1, 1): 3,
                    (1, 1, 1, 1): 1}


def test_orthogonality():
    for d in (3, 4, 5):
        t = CharTable(d)
        assert t.column_orthogonality_holds()
        assert t.row_orthogonality_holds()


def test_schur_p_known_expansions():
    s2 = schur_p((2,), PROF)
    assert s2.coeff((2,)).rational_part() == Fraction(1, 2)
    assert s2.coeff((1, 1)).rational_part() == Fraction(1, 2)
    s11 = schur_p((1, 1), PROF)
    assert s11.coeff((2,)).rational_part() == Fraction(-1, 2)
    assert s11.coeff((1, 1)).rational_part() == Fraction(1, 2)


def test_schur_expand_inverts_schur_p():
    for lam in partitions_up_to(4):
        got = schur_expand(schur_p(lam, PROF))
        assert list(got) == [(lam, 0, 0)]
        assert got[(lam, 0, 0)].rational_part() == Fraction(1)


def test_schur_specialize_equal():
    # s_lambda(1^N) = prod over cells (N + j - i) / hook; spot values
    assert schur_specialize_equal((1,), 2) == 2
    assert schur_specialize_equal((2,), 2) == 3
    assert schur_specialize_equal((1, 1), 2) == 1
    assert schur_specialize_equal((2, 1), 3) == 8
    assert schur_specialize_equal((1, 1, 1), 3) == 1
    import pytest
    with pytest.raises(ValueError):
        schur_specialize_equal((1, 1, 1), 2)


def test_cutjoin_eigenvalues():
    assert cutjoin_eigenvalue(()) == 0
    assert cutjoin_eigenvalue((1,)) == 0
    assert cutjoin_eigenvalue((2,)) == 1
    assert cutjoin_eigenvalue((1, 1)) == -1
    assert cutjoin_eigenvalue((3,)) == 3
    assert cutjoin_eigenvalue((2, 1)) == 0
    assert cutjoin_eigenvalue((1, 1, 1)) == -3


def test_cutjoin_diagonal_on_schur():
    for lam in partitions_up_to(4):
        s = schur_p(lam, PROF)
        assert cutjoin_apply(s) == s * cutjoin_eigenvalue(lam)


def test_cutjoin_exp_routes_agree():
    prof = default_profile(weight=3, beta_order=3, q1_max=3, window=6)
    base = SymSeries.monomial(prof, (1,), 1, 0).exp()
    assert cutjoin_exp(base, "beta1") == cutjoin_exp_iterated(base, "beta1")
    assert cutjoin_exp(base, "beta2") == cutjoin_exp_iterated(base, "beta2")
