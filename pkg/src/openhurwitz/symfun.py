"""Partitions, symmetric-group characters, Schur functions, cut-and-join.

Characters come from the Murnaghan-Nakayama recurrence (memoized on
beta-sets), Schur functions are realized in the power-sum basis as
s_lambda = sum_mu chi^lambda(mu) p_mu / z_mu, and the cut-and-join operator
is implemented both as a second-order differential operator on SymSeries and
through its diagonal action on the Schur basis.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .series import BetaScalar, Rat, SymSeries, TruncationProfile


# ---------------------------------------------------------------------------
# Partitions
# ---------------------------------------------------------------------------

def is_partition(lam) -> bool:
    lam = tuple(lam)
    return all(p >= 1 for p in lam) and all(
        lam[i] >= lam[i + 1] for i in range(len(lam) - 1))


@lru_cache(maxsize=None)
def _partitions_max(n, mx):
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, mx), 0, -1):
        for rest in _partitions_max(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions_of(n: int):
    """All partitions of n, largest-part-first (reverse-lexicographic) order.

    >>> partitions_of(4)
    [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions_max(n, n))


def partitions_up_to(n: int):
    """All partitions of weight <= n, by increasing weight."""
    out = []
    for d in range(n + 1):
        out.extend(partitions_of(d))
    return out


def z_centralizer(mu) -> int:
    """Centralizer order z_mu = prod i^{m_i} m_i! of a cycle type."""
    z = 1
    mults = {}
    for p in mu:
        mults[p] = mults.get(p, 0) + 1
    for p, m in mults.items():
        z *= p ** m * factorial(m)
    return z


# ---------------------------------------------------------------------------
# Characters (Murnaghan-Nakayama)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _mn(lam, mu):
    # chi^lam(mu) with both partitions of the same weight.
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    L = len(lam)
    betas = [lam[i] + (L - 1 - i) for i in range(L)]
    bset = set(betas)
    total = 0
    for j, b in enumerate(betas):
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        # height of the removed border strip = number of betas strictly
        # between the old and new value
        height = sum(1 for x in betas if nb < x < b)
        new = sorted((x if x != b else nb) for x in betas)
        new_lam = tuple(v - i for i, v in enumerate(new))
        new_lam = tuple(p for p in reversed(new_lam) if p > 0)
        total += (-1) ** height * _mn(new_lam, rest)
    return total


def character(lam, mu) -> int:
    """Irreducible S_d character chi^lambda evaluated on cycle type mu."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        raise ValueError("character requires |lambda| = |mu|")
    return _mn(lam, tuple(sorted(mu, reverse=True)))


class CharTable:
    """Character table of S_d with centralizer orders, indexed by partitions."""

    def __init__(self, d: int):
        self.d = d
        self.parts = partitions_of(d)
        self.z = {mu: z_centralizer(mu) for mu in self.parts}
        self.chi = {(lam, mu): character(lam, mu)
                    for lam in self.parts for mu in self.parts}

    def column_orthogonality_holds(self) -> bool:
        for mu in self.parts:
            for nu in self.parts:
                s = sum(self.chi[(lam, mu)] * self.chi[(lam, nu)]
                        for lam in self.parts)
                if s != (self.z[mu] if mu == nu else 0):
                    return False
        return True

    def row_orthogonality_holds(self) -> bool:
        for lam in self.parts:
            for rho in self.parts:
                s = sum(Fraction(self.chi[(lam, mu)] * self.chi[(rho, mu)],
                                 self.z[mu]) for mu in self.parts)
                if s != (1 if lam == rho else 0):
                    return False
        return True


# ---------------------------------------------------------------------------
# Schur functions
# ---------------------------------------------------------------------------

def schur_p(lam, profile: TruncationProfile) -> SymSeries:
    """Schur function s_lambda in power sums: sum_mu chi^lambda(mu) p_mu/z_mu."""
    lam = tuple(lam)
    d = sum(lam)
    if d > profile.max_p_weight:
        raise ValueError("Schur weight exceeds profile")
    s = SymSeries.zero(profile)
    for mu in partitions_of(d):
        c = Rat(character(lam, mu), z_centralizer(mu))
        if c:
            s = s + SymSeries.monomial(profile, mu, coeff=c)
    return s


def schur_expand(s: SymSeries):
    """Expand a SymSeries in the Schur basis.

    Returns a map (lam, e1, e2) -> BetaScalar such that
    s = sum coeff * schur_p(lam) * q1^e1 * q2^e2.  Uses the z-weighted
    character pairing <p_lambda, p_mu> = delta * z_lambda.
    """
    by_grade = {}
    for (mu, e1, e2), b in s.terms.items():
        by_grade.setdefault((sum(mu), e1, e2), {})[mu] = b
    out = {}
    for (d, e1, e2), comp in by_grade.items():
        for lam in partitions_of(d):
            acc = BetaScalar.zero(s.profile.beta_order)
            for mu, b in comp.items():
                chi = character(lam, mu)
                if chi:
                    acc = acc + b * Rat(chi)
            if not acc.is_zero():
                out[(lam, e1, e2)] = acc
    return out


def schur_specialize_equal(lam, N: int) -> Fraction:
    """Principal specialization multiplier: s_lambda(x,...,x) = c * x^{|lambda|}.

    Closed form prod_{i<j} (a_i - a_j)/(j - i) with a_i = lam_i + N - i
    over N slots.  Requires N >= l(lambda).
    """
    lam = tuple(lam)
    if N < len(lam):
        raise ValueError("need N >= length of the partition")
    a = [(lam[i] if i < len(lam) else 0) + N - (i + 1) for i in range(N)]
    c = Fraction(1)
    for i in range(N):
        for j in range(i + 1, N):
            c *= Fraction(a[i] - a[j], j - i)
    return c


# ---------------------------------------------------------------------------
# Cut-and-join
# ---------------------------------------------------------------------------

def cutjoin_apply(s: SymSeries) -> SymSeries:
    """Apply the cut-and-join operator

        (1/2) sum_{i,j>=1} ( (i+j) p_i p_j d/dp_{i+j}
                             + i j p_{i+j} d^2/(dp_i dp_j) ).

    Acts key by key on power-sum monomials; weight-homogeneous.
    """
    out = SymSeries.zero(s.profile)
    for (lam, e1, e2), b in s.terms.items():
        mults = {}
        for p in lam:
            mults[p] = mults.get(p, 0) + 1
        base = list(lam)
        # cut: remove a part a = i + j, add parts i and j
        for a, m in mults.items():
            if a < 2:
                continue
            rest = list(base)
            rest.remove(a)
            for i in range(1, a):
                j = a - i
                new = tuple(sorted(rest + [i, j], reverse=True))
                out._add_term(new, e1, e2, b * Rat(a * m, 2))
        # join: remove parts i and j, add a part i + j
        for i, mi in mults.items():
            for j, mj in mults.items():
                if j < i:
                    continue
                count = mi * (mi - 1) if i == j else mi * mj
                if not count:
                    continue
                factor = Rat(i * j * count, 2) if i == j else Rat(i * j * count)
                rest = list(base)
                rest.remove(i)
                rest.remove(j)
                new = tuple(sorted(rest + [i + j], reverse=True))
                out._add_term(new, e1, e2, b * factor)
    return out


def cutjoin_eigenvalue(lam) -> Fraction:
    """Eigenvalue of cut-and-join on s_lambda: sum_i lam_i(lam_i - 2i + 1)/2."""
    return sum((Fraction(p * (p - 2 * i + 1), 2)
                for i, p in enumerate(lam, start=1)), Fraction(0))


def cutjoin_exp(s: SymSeries, which_beta: str) -> SymSeries:
    """Apply exp(beta * cut-and-join) via the Schur diagonalization.

    ``which_beta`` is one of "beta1", "beta2", "beta1+beta2"; the eigenvalue
    exponentials are truncated in the beta-ring.  Eigenvalues are integers
    (the half-sum telescopes over even increments), asserted here because
    closure of the beta-ring depends on it.
    """
    coeffs = {"beta1": (1, 0), "beta2": (0, 1), "beta1+beta2": (1, 1)}
    if which_beta not in coeffs:
        raise ValueError(f"unknown beta designator {which_beta!r}")
    c1, c2 = coeffs[which_beta]
    order = s.profile.beta_order
    out = SymSeries.zero(s.profile)
    for (lam, e1, e2), b in schur_expand(s).items():
        ev = cutjoin_eigenvalue(lam)
        assert ev.denominator == 1, f"non-integer cut-and-join eigenvalue on {lam}"
        factor = BetaScalar.exp_linear(c1 * ev, c2 * ev, order)
        term = schur_p(lam, s.profile) * (b * factor)
        for (mu, _, _), bb in term.terms.items():
            out._add_term(mu, e1, e2, bb)
    return out


def cutjoin_exp_iterated(s: SymSeries, which_beta: str) -> SymSeries:
    """exp(beta*A) as the operator sum sum_k beta^k A^k(s) / k!.

    Independent of the Schur route; the two must agree exactly.
    """
    coeffs = {"beta1": (1, 0), "beta2": (0, 1), "beta1+beta2": (1, 1)}
    c1, c2 = coeffs[which_beta]
    order = s.profile.beta_order
    out = SymSeries.zero(s.profile)
    term = s
    for k in range(order + 1):
        if k:
            term = cutjoin_apply(term)
        if which_beta == "beta1+beta2":
            # beta^k with beta = beta1 + beta2, expanded binomially
            bk = BetaScalar.zero(order)
            from math import comb
            for j in range(k + 1):
                bk = bk + BetaScalar.monomial(k - j, j, order, comb(k, j))
        else:
            bk = BetaScalar.monomial(k * c1, k * c2, order)
        out = out + term * (bk * Rat(1, factorial(k)))
    return out
