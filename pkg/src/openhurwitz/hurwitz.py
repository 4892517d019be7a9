"""Closed and open Hurwitz generating series, plus the permutation oracle.

The closed partition function is computed by two independent routes (an
infinite-wedge determinant and a cut-and-join flow applied to exp(q*p1)),
and cross-checked against brute-force counting of transitive transposition
factorizations in symmetric groups.  The open partition functions are built
from the closed one by a power-sum shift, a q2 rescaling, and a second
cut-and-join flow; an independent contour-extraction route reproduces the
level-1 function from the level-0 data.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .fock import LaurentRow, boson_fermion, wedge_from_rows
from .series import (BetaScalar, LaurentX, Rat, SymSeries, TruncationProfile,
                     coef_x0)
from .symfun import cutjoin_apply, cutjoin_exp, partitions_of


# ---------------------------------------------------------------------------
# Closed partition function
# ---------------------------------------------------------------------------

def _fermionic_row(i, cutoff, profile):
    """Row i of the closed-series wedge: z^{-i} sum_l e^{b*l(l-2i+1)/2} (qz)^l / l!.

    The half-integer exponent l(l-2i+1)/2 is an integer because l(l-2i+1)
    is even for every l, i.  The single branch parameter rides in the beta1
    slot and the grading q in the q1 slot.
    """
    coeffs = {}
    for l in range(cutoff + 1):
        e = l * (l - 2 * i + 1)
        assert e % 2 == 0
        b = BetaScalar.exp_linear(e // 2, 0, profile.beta_order) * Rat(1, factorial(l))
        s = SymSeries.monomial(profile, (), l, 0, coeff=Rat(1)) * b
        if not s.is_zero():
            coeffs[l] = s
    return LaurentRow(-i, coeffs)


def closed_tau(profile: TruncationProfile, route: str = "cutjoin") -> SymSeries:
    """Closed Hurwitz partition function tau^c(p, beta1, q1).

    ``route="cutjoin"``: exp(beta*A) applied to exp(q*p1), using the Schur
    diagonalization of the cut-and-join operator A.
    ``route="fermionic"``: Psi_0 of the wedge of the rows z^{-i} e^{qz}
    weighted by the diagonal branch factors.
    Both use beta1 for the branch parameter and q1 for the degree grading.
    """
    if route == "cutjoin":
        qp1 = SymSeries.monomial(profile, (1,), 1, 0)
        base = qp1.exp()
        return cutjoin_exp(base, "beta1")
    if route == "fermionic":
        cutoff = profile.max_p_weight
        state = wedge_from_rows(lambda i: _fermionic_row(i, cutoff, profile),
                                0, cutoff, profile)
        return boson_fermion(state, route="schur")
    raise ValueError(f"unknown closed route {route!r}")


def closed_hurwitz(lam, m, profile: TruncationProfile,
                   tau: SymSeries | None = None) -> Fraction:
    """Extract h^c(lam, m): coefficient of (beta^m/m!) q^{|lam|} p_lam in log tau^c."""
    lam = tuple(lam)
    d = sum(lam)
    if d > profile.max_p_weight or m > profile.beta_order or d > profile.max_q1:
        raise ValueError("query outside the truncation profile")
    if tau is None:
        tau = closed_tau(profile)
    h = tau.log()
    return h.coeff(lam, d, 0).coeff(m, 0) * factorial(m)


def closed_hurwitz_oracle(lam, m) -> Fraction:
    """Brute-force h^c(lam, m) by transposition-factorization counting.

    Counts tuples (t_1, ..., t_m, sigma) in S_d with each t_i a
    transposition, sigma of cycle type lam, t_1 ... t_m sigma = id, and the
    whole tuple acting transitively on {1..d}; the count is divided by d!.
    """
    lam = tuple(sorted(lam, reverse=True))
    d = sum(lam)
    if d > 6 or m > 7:
        raise ValueError("oracle bounds exceeded (d <= 6, m <= 7)")
    if d == 0:
        return Fraction(0)
    counts = _oracle_counts(d, m)
    return Fraction(counts.get((m, lam), 0), factorial(d))


@lru_cache(maxsize=None)
def _oracle_counts(d, m_max):
    """Count transitive factorizations for all (m <= m_max, cycle type)."""
    trans = [(a, b) for a in range(d) for b in range(a + 1, d)]
    counts = {}
    perm = list(range(d))          # running product t_1 ... t_k
    parent = list(range(d))        # union-find over generator supports

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def record(k):
        # sigma = (t_1...t_k)^{-1}; its cycle type equals that of the product
        seen = [False] * d
        typ = []
        for s in range(d):
            if seen[s]:
                continue
            ln, x = 0, s
            while not seen[x]:
                seen[x] = True
                x = perm[x]
                ln += 1
            typ.append(ln)
        # transitivity of <t_1..t_k, sigma>: union the t-supports (already
        # in the union-find) with sigma's cycles
        par = [find(x) for x in range(d)]
        def find2(x):
            while par[x] != x:
                x = par[x]
            return x
        for s in range(d):
            ra, rb = find2(s), find2(perm[s])
            if ra != rb:
                par[ra] = rb
        roots = len({find2(x) for x in range(d)})
        if roots == 1:
            key = (k, tuple(sorted(typ, reverse=True)))
            counts[key] = counts.get(key, 0) + 1

    def dfs(k):
        record(k)
        if k == m_max:
            return
        for (a, b) in trans:
            perm[a], perm[b] = perm[b], perm[a]
            ra, rb = find(a), find(b)
            merged = ra != rb
            if merged:
                parent[ra] = rb
            dfs(k + 1)
            if merged:
                parent[ra] = ra
            perm[a], perm[b] = perm[b], perm[a]

    dfs(0)
    return counts


# ---------------------------------------------------------------------------
# Open partition functions
# ---------------------------------------------------------------------------

def closed_tau_q1q2(profile, beta_sum=False, tau=None) -> SymSeries:
    """tau^c with the grading split q -> q1*q2, optionally beta1 -> beta1+beta2."""
    if tau is None:
        tau = closed_tau(profile)
    out = tau.subst_q_to_q1q2()
    if beta_sum:
        out = out.subst_beta1_to_sum()
    return out


def open_tau_base(N: int, profile: TruncationProfile,
                  tau_c: SymSeries | None = None) -> SymSeries:
    """The open function at second branch order zero:

        tau^c(p - N*[q2^{-1}], beta1, q1*q2) * exp(N sum_n p_n q2^n / n).

    All negative q2 powers cancel in the product; this is asserted.
    """
    if profile.min_q2 > -profile.max_p_weight:
        raise ValueError("profile must admit q2 exponents down to -max_p_weight")
    base = closed_tau_q1q2(profile, tau=tau_c)
    shifted = base.shift_p(-N, "q2")
    expo = SymSeries.zero(profile)
    for n in range(1, profile.max_q2 + 1):
        expo = expo + SymSeries.monomial(profile, (n,), 0, n, coeff=Rat(N, n))
    out = shifted * expo.exp()
    if out.min_q2_exponent() < 0:
        raise AssertionError("negative q2 powers failed to cancel")
    return out


def open_tau(N: int, profile: TruncationProfile, tilde: bool = False,
             tau_c: SymSeries | None = None) -> SymSeries:
    """Open partition function tau^o_N, via the second cut-and-join flow.

    With ``tilde=True`` the q2 grading is rescaled by exp(N*beta2), which is
    the normalization entering the mKP sequence.
    """
    out = cutjoin_exp(open_tau_base(N, profile, tau_c=tau_c), "beta2")
    if tilde:
        out = out.scale_q2(N)
    return out


def cutjoin_ode_residual(N: int, profile: TruncationProfile,
                         tau_c: SymSeries | None = None) -> SymSeries:
    """Residual of the branch-flow equation d tau^o_N / d beta2 = A tau^o_N.

    The derivative of a series truncated at joint beta order B is only
    meaningful through order B - 1 (the order-B slice of the derivative
    comes from discarded order-B+1 terms), so the residual is compared
    after truncation to that order; within it the identity is exact.
    """
    tau = open_tau(N, profile, tau_c=tau_c)
    res = tau.derive("beta2") - cutjoin_apply(tau)
    return res.truncate_beta(profile.beta_order - 1)


def open_hurwitz(lam, m1, m2, d1, N, profile,
                 tau_o: SymSeries | None = None,
                 tau_c: SymSeries | None = None) -> Fraction:
    """Extract h^o_N(lam, m1, m2, d1) from the connected open series.

    The connected series is log tau^o_N minus the closed contribution
    H^c(p, beta1+beta2, q1*q2), both computed by this engine in one run.
    """
    lam = tuple(lam)
    if d1 == 0 and not lam:
        raise ValueError("query must have positive bidegree")
    if tau_o is None:
        tau_o = open_tau(N, profile, tau_c=tau_c)
    h_open = tau_o.log() - closed_tau_q1q2(profile, beta_sum=True, tau=tau_c).log()
    b = h_open.coeff(lam, d1, sum(lam))
    return b.coeff(m1, m2) * factorial(m1) * factorial(m2)


# ---------------------------------------------------------------------------
# The explicit level-0 -> level-1 transformation
# ---------------------------------------------------------------------------

def d_series(profile: TruncationProfile, zwindow=None) -> LaurentX:
    """The kernel D(z, beta1, beta2, q1, q2) of the explicit transformation:

        sum_{l>=0} (1 + sum_{k>=1} e^{beta1 (l^2+l-k^2+k)/2} (-1)^k
                        q1^{k+l} / ((l+k)(k-1)! l!))
                   * e^{beta2 l(l-1)/2} * (q2/z)^l

    returned as a Laurent series in z (nonpositive exponents only).
    """
    if zwindow is None:
        zwindow = (profile.x_low, profile.x_high)
    order = profile.beta_order
    out = LaurentX(profile, (zwindow,))
    for l in range(min(profile.max_q2, -zwindow[0]) + 1):
        inner = SymSeries.monomial(profile, (), 0, l)
        for k in range(1, profile.max_q1 - l + 1):
            e = l * l + l - k * k + k
            assert e % 2 == 0
            b = (BetaScalar.exp_linear(e // 2, 0, order)
                 * Rat((-1) ** k, (l + k) * factorial(k - 1) * factorial(l)))
            inner = inner + SymSeries.monomial(profile, (), k + l, l) * b
        e2 = l * (l - 1)
        assert e2 % 2 == 0
        inner = inner * BetaScalar.exp_linear(0, e2 // 2, order)
        out._add_term((-l,), inner)
    return out


def open_tau1_via_D(profile: TruncationProfile,
                    tau_c: SymSeries | None = None) -> SymSeries:
    """Level-1 open function by the explicit contour formula:

        Coef_{x^0}[ D(x) * tau^c(p - [x^{-1}], beta1+beta2, e^{-beta2} q1 q2)
                    * exp(sum_n p_n x^n / n) ].
    """
    from .kp import exp_xi  # local import to avoid a module cycle
    if profile.x_low > -profile.max_q2:
        raise ValueError("x window too narrow for the contour extraction")
    core = closed_tau_q1q2(profile, beta_sum=True, tau=tau_c)
    # q1*q2 -> e^{-beta2} q1 q2: each key has e1 = e2 = d, so this is the
    # inverse q2 rescaling by one unit
    core = core.scale_q2(-1)
    shifted = core.shift_p(-1, "x")
    prod = d_series(profile) * shifted * exp_xi(+1, profile)
    return coef_x0(prod)
