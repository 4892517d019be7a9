"""Truncated semi-infinite wedge space and the boson-fermion correspondence.

A level-N basis vector indexed by a partition lam is the wedge
z^{a_1} ^ z^{a_2} ^ ... with a_i = lam_i - i + N, agreeing with the vacuum
tail a_i = N - i for i beyond the length of lam.  States store coefficients
per partition; the coefficients live in the scalar (p-free) part of the
series ring so that q-gradings and beta content ride along for free.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .series import BetaScalar, LaurentX, Rat, SymSeries, TruncationProfile
from .symfun import partitions_up_to, schur_p, partitions_of, z_centralizer


def slot_exponent(lam, N, i):
    """Exponent in slot i (1-based) of the level-N wedge indexed by lam."""
    return (lam[i - 1] - i + N) if i <= len(lam) else (N - i)


def _lam_from_exponents(exps, N):
    """Recover the partition from a full (finite-prefix) exponent list.

    ``exps`` must be strictly decreasing and agree with the vacuum tail
    N - i after its last entry.
    """
    lam = []
    for i, a in enumerate(exps, start=1):
        p = a - N + i
        if p < 0:
            raise ValueError("exponent below vacuum tail")
        lam.append(p)
    while lam and lam[-1] == 0:
        lam.pop()
    return tuple(lam)


class WedgeState:
    """Finite linear combination of level-N wedge basis vectors.

    ``coeffs`` maps a partition to a scalar (p-free) SymSeries; terms with
    |lam| > cutoff are dropped eagerly.
    """

    __slots__ = ("N", "cutoff", "profile", "coeffs")

    def __init__(self, N, cutoff, profile, coeffs=None):
        self.N = N
        self.cutoff = cutoff
        self.profile = profile
        self.coeffs = {} if coeffs is None else coeffs

    @classmethod
    def vacuum(cls, N, cutoff, profile):
        return cls(N, cutoff, profile, {(): SymSeries.one(profile)})

    @classmethod
    def basis(cls, lam, N, cutoff, profile):
        lam = tuple(lam)
        if sum(lam) > cutoff:
            return cls(N, cutoff, profile)
        return cls(N, cutoff, profile, {lam: SymSeries.one(profile)})

    def _add(self, lam, s: SymSeries):
        if s.is_zero() or sum(lam) > self.cutoff:
            return
        cur = self.coeffs.get(lam)
        tot = s if cur is None else cur + s
        if tot.is_zero():
            self.coeffs.pop(lam, None)
        else:
            self.coeffs[lam] = tot

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if not isinstance(other, WedgeState):
            return NotImplemented
        return (self.N == other.N and self.cutoff == other.cutoff
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        if (self.N, self.cutoff) != (other.N, other.cutoff):
            raise ValueError("wedge level/cutoff mismatch")
        out = WedgeState(self.N, self.cutoff, self.profile, dict(self.coeffs))
        for lam, s in other.coeffs.items():
            out._add(lam, s)
        return out

    def __neg__(self):
        return self * Rat(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        out = WedgeState(self.N, self.cutoff, self.profile)
        for lam, s in self.coeffs.items():
            out._add(lam, s * scalar)
        return out

    __rmul__ = __mul__

    def __repr__(self):
        return (f"WedgeState(N={self.N}, cutoff={self.cutoff}, "
                f"{len(self.coeffs)} basis terms)")


# ---------------------------------------------------------------------------
# Fermion operators
# ---------------------------------------------------------------------------

def _theta_insert(lam, N, a):
    """Wedge z^a in front of the level-N basis vector lam, then sort.

    Returns (sign, new_lam at level N+1) or None when z^a collides with an
    existing factor.
    """
    i = 1
    while slot_exponent(lam, N, i) > a:
        i += 1
    if slot_exponent(lam, N, i) == a:
        return None
    # z^a lands in slot i; crossing i-1 factors gives the sign
    prefix = [slot_exponent(lam, N, j) for j in range(1, i)] + [a]
    upto = max(len(lam) + 1, i)
    exps = prefix + [slot_exponent(lam, N, j) for j in range(i, upto + 1)]
    return (-1) ** (i - 1), _lam_from_exponents(exps, N + 1)


def _theta_contract(lam, N, a):
    """Contract the factor z^a out of the level-N basis vector lam.

    Returns (sign, new_lam at level N-1) or None when z^a is absent.
    """
    j = None
    for i in range(1, len(lam) + 1):
        if slot_exponent(lam, N, i) == a:
            j = i
            break
    if j is None:
        # vacuum tail: slot N - a, valid only past the explicit part
        if a <= N - len(lam) - 1:
            j = N - a
        else:
            return None
    upto = max(len(lam), j) + 1
    exps = [slot_exponent(lam, N, i) for i in range(1, upto + 1) if i != j]
    return (-1) ** (j - 1), _lam_from_exponents(exps, N - 1)


def fermion_apply(state: WedgeState, kind: str, a: int) -> WedgeState:
    """Apply theta_a (kind="theta") or its adjoint (kind="theta_dag")."""
    if kind == "theta":
        out = WedgeState(state.N + 1, state.cutoff, state.profile)
        op = lambda lam: _theta_insert(lam, state.N, a)
    elif kind == "theta_dag":
        out = WedgeState(state.N - 1, state.cutoff, state.profile)
        op = lambda lam: _theta_contract(lam, state.N, a)
    else:
        raise ValueError(f"unknown fermion kind {kind!r}")
    for lam, s in state.coeffs.items():
        res = op(lam)
        if res is None:
            continue
        sign, new_lam = res
        out._add(new_lam, s * Rat(sign))
    return out


def alpha_apply(state: WedgeState, n: int, route: str = "direct") -> WedgeState:
    """Bosonic mode alpha_n = sum_i theta_i theta^dag_{i+n}.

    ``route="direct"`` subtracts n from one exponent per slot and re-sorts
    with the crossing sign; ``route="fermion"`` composes the two fermion
    operators.  Both must agree.
    """
    if n == 0:
        raise ValueError("alpha_0 is excluded")
    if route == "fermion":
        # theta_i theta^dag_{i+n} can act nontrivially only when i + n is an
        # occupied exponent; occupied exponents lie within a bounded band
        # around the level.  Contracting a deep slot temporarily raises the
        # weight (every factor above it shifts), so intermediates run at a
        # widened cutoff before the final truncation.
        hi = state.N + state.cutoff + abs(n) + 1
        lo = state.N - state.cutoff - abs(n) - max(lam_len(state) + 1, 1)
        wide_cut = state.cutoff + (state.N - 1 - (lo + n)) + abs(n)
        wide = WedgeState(state.N, wide_cut, state.profile, dict(state.coeffs))
        acc = WedgeState(state.N, wide_cut, state.profile)
        for i in range(lo, hi + 1):
            mid = fermion_apply(wide, "theta_dag", i + n)
            if mid.is_zero():
                continue
            acc = acc + fermion_apply(mid, "theta", i)
        out = WedgeState(state.N, state.cutoff, state.profile)
        for lam, s in acc.coeffs.items():
            out._add(lam, s)
        return out
    if route != "direct":
        raise ValueError(f"unknown alpha route {route!r}")
    out = WedgeState(state.N, state.cutoff, state.profile)
    for lam, s in state.coeffs.items():
        nslots = len(lam) + (abs(n) if n < 0 else 0) + max(1, n)
        for j in range(1, nslots + 1):
            a = slot_exponent(lam, state.N, j) - n
            if n > 0 and j > len(lam):
                # lowering a vacuum-tail exponent always collides with the
                # occupied tail slot below it
                continue
            others = set()
            collision = False
            upto = max(len(lam), j) + abs(n) + 1
            vals = []
            for i in range(1, upto + 1):
                if i == j:
                    continue
                v = slot_exponent(lam, state.N, i)
                vals.append(v)
                others.add(v)
            if a in others:
                continue
            crossings = sum(1 for v in vals if min(a, slot_exponent(lam, state.N, j))
                            < v < max(a, slot_exponent(lam, state.N, j)))
            exps = sorted(vals + [a], reverse=True)
            try:
                new_lam = _lam_from_exponents(exps, state.N)
            except ValueError:
                continue
            out._add(new_lam, s * Rat((-1) ** crossings))
    return out


def lam_len(state: WedgeState) -> int:
    return max((len(lam) for lam in state.coeffs), default=0)


# ---------------------------------------------------------------------------
# Boson-fermion correspondence
# ---------------------------------------------------------------------------

def boson_fermion(state: WedgeState, route: str = "schur") -> SymSeries:
    """The correspondence Psi_N: send the basis vector v_lam to s_lam.

    ``route="schur"`` multiplies coefficients by Schur polynomials;
    ``route="alpha"`` expands <N| exp(sum t_n alpha_n) independently,
    using Psi(u) = sum_mu p_mu/z_mu <N| alpha_mu u>.
    """
    profile = state.profile
    if route == "schur":
        out = SymSeries.zero(profile)
        for lam, s in state.coeffs.items():
            out = out + schur_p(lam, profile) * s
        return out
    if route != "alpha":
        raise ValueError(f"unknown correspondence route {route!r}")
    out = SymSeries.zero(profile)
    for lam, s in state.coeffs.items():
        d = sum(lam)
        if d > profile.max_p_weight:
            continue
        basis = WedgeState.basis(lam, state.N, state.cutoff, profile)
        for mu in partitions_of(d):
            cur = basis
            for part in mu:
                cur = alpha_apply(cur, part, route="direct")
                if cur.is_zero():
                    break
            pairing = cur.coeffs.get((), SymSeries.zero(profile))
            if pairing.is_zero():
                continue
            out = out + SymSeries.monomial(profile, mu,
                                           coeff=Rat(1, z_centralizer(mu))) \
                * pairing * s
    return out


# ---------------------------------------------------------------------------
# Wedges from adapted-basis rows
# ---------------------------------------------------------------------------

@dataclass
class LaurentRow:
    """One adapted-basis row: sum_{j>=0} coeffs[j] * z^{offset+j}.

    Coefficients are scalar (p-free) SymSeries; coeffs[0] is the leading
    coefficient (1 for leading-normalized rows).
    """
    offset: int
    coeffs: dict

    @classmethod
    def pure(cls, offset, profile):
        return cls(offset, {0: SymSeries.one(profile)})

    def deficiency(self, nominal_offset):
        """How far the actual leading exponent sits below the nominal one."""
        return max(0, nominal_offset - self.offset)


def wedge_from_rows(rows, N, cutoff, profile, nrows=None) -> WedgeState:
    """Wedge together rows f_{N-1}, f_{N-2}, ... into a level-N state.

    ``rows`` is either a finite list (rows beyond it follow the pure-tail
    rule z^{N-i}) or a callable i -> LaurentRow (i = 1, 2, ...).  The wedge
    is built by prepending rows from the deep tail upward; truncation at
    each stage keeps degrees reachable within ``cutoff`` plus the total
    leading-exponent deficiency of the rows not yet wedged.
    """
    if callable(rows):
        row_fn = rows
        explicit = None
    else:
        explicit = list(rows)
        row_fn = lambda i: (explicit[i - 1] if i <= len(explicit)
                            else LaurentRow.pure(N - i, profile))
    if nrows is None:
        n_explicit = len(explicit) if explicit is not None else 0
        nrows = max(n_explicit, 2 * cutoff + 2)
        if explicit is not None:
            nrows += sum(r.deficiency(N - i)
                         for i, r in enumerate(explicit, start=1))
    all_rows = [row_fn(i) for i in range(1, nrows + 1)]
    # degree budget available from rows 1..i-1 when row i is about to be
    # wedged: their deficiencies can still lower the total degree
    deficits = [r.deficiency(N - i) for i, r in enumerate(all_rows, start=1)]
    total_deficit = sum(deficits)
    if explicit is None and total_deficit:
        nrows += total_deficit
        all_rows = [row_fn(i) for i in range(1, nrows + 1)]
        deficits = [r.deficiency(N - i) for i, r in enumerate(all_rows, start=1)]
        total_deficit = sum(deficits)

    state = WedgeState.vacuum(N - nrows, cutoff + total_deficit, profile)
    remaining = total_deficit
    for i in range(nrows, 0, -1):
        row = all_rows[i - 1]
        remaining -= deficits[i - 1]
        budget = cutoff + remaining
        nxt = WedgeState(state.N + 1, cutoff + remaining, profile)
        for j, c in row.coeffs.items():
            if c.is_zero():
                continue
            a = row.offset + j
            for lam, s in state.coeffs.items():
                res = _theta_insert(lam, state.N, a)
                if res is None:
                    continue
                sign, new_lam = res
                if sum(new_lam) > budget:
                    continue
                nxt._add(new_lam, s * c * Rat(sign))
        state = nxt
    assert state.N == N
    out = WedgeState(N, cutoff, profile)
    for lam, s in state.coeffs.items():
        out._add(lam, s)
    return out


def wedge_reduce_exp_row(k, cutoff, profile, q_slot="q1", beta_weight=None) -> LaurentRow:
    """The row replacing z^{-k} once wedged against the tail z^{-j} e^{qz}.

    Closed form (-q)^k sum_{l>=0} q^l z^l / ((l+k) (k-1)! l!); the grading
    symbol q is carried in the q1 (default) or q2 exponent slot.  When
    ``beta_weight`` is a callable l -> (c1, c2), each term additionally
    carries exp(c1*beta1 + c2*beta2).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    coeffs = {}
    sign = Rat(-1) ** k
    for l in range(cutoff + 1):
        c = sign * Rat(1, (l + k) * factorial(k - 1) * factorial(l))
        e1, e2 = (k + l, 0) if q_slot == "q1" else (0, k + l)
        s = SymSeries.monomial(profile, (), e1, e2, coeff=c)
        if beta_weight is not None:
            c1, c2 = beta_weight(l)
            s = s * BetaScalar.exp_linear(c1, c2, profile.beta_order)
        if not s.is_zero():
            coeffs[l] = s
    return LaurentRow(0, coeffs)


def exp_qz_row(offset, cutoff, profile, q_slot="q1") -> LaurentRow:
    """Row z^{offset} e^{qz} truncated at z^{offset+cutoff}."""
    coeffs = {}
    for l in range(cutoff + 1):
        e1, e2 = (l, 0) if q_slot == "q1" else (0, l)
        s = SymSeries.monomial(profile, (), e1, e2, coeff=Rat(1, factorial(l)))
        if not s.is_zero():
            coeffs[l] = s
    return LaurentRow(offset, coeffs)
