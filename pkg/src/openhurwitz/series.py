"""Exact truncated multigraded series arithmetic.

The coefficient tower is:

    rationals  ->  BetaScalar  (polynomials in beta1, beta2, jointly truncated)
               ->  SymSeries   (power-sum monomials p_lambda with q1/q2 grading)
               ->  LaurentX    (Laurent adjunction variables x, z, ... on top)

Everything is exact: coefficients are `fractions.Fraction`, truncation is
eager (out-of-profile keys are dropped at creation time), and all values are
immutable by convention.  No floating point appears anywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

Rat = Fraction


class ProfileError(ValueError):
    """Operands disagree on truncation profile, or a profile is inconsistent."""


class WindowExhausted(ValueError):
    """A required Laurent/q2 exponent fell outside the configured window."""


@dataclass(frozen=True)
class TruncationProfile:
    """Joint truncation bounds for all formal variables.

    ``max_p_weight`` bounds |lambda| of power-sum monomials, ``max_q1`` /
    ``max_q2`` / ``min_q2`` bound the grading exponents (negative q2 powers
    are allowed internally), ``beta_order`` is the joint order in beta1,
    beta2, and ``x_low``/``x_high`` is the window of retained x exponents.
    """

    max_p_weight: int = 4
    max_q1: int = 4
    max_q2: int = 4
    min_q2: int = -4
    beta_order: int = 3
    x_low: int = -7
    x_high: int = 7

    def __post_init__(self):
        if self.max_p_weight < 0 or self.max_q1 < 0 or self.max_q2 < 0:
            raise ProfileError("weight and q bounds must be nonnegative")
        if self.beta_order < 0:
            raise ProfileError("beta_order must be nonnegative")
        if not (self.min_q2 <= 0 <= self.max_q2):
            raise ProfileError("q2 window must contain 0")
        if not (self.x_low <= 0 <= self.x_high):
            raise ProfileError("x window must contain 0")

    def contains(self, other: "TruncationProfile") -> bool:
        """True if every series valid under `other` is valid under self."""
        return (self.max_p_weight >= other.max_p_weight
                and self.max_q1 >= other.max_q1
                and self.max_q2 >= other.max_q2
                and self.min_q2 <= other.min_q2
                and self.beta_order >= other.beta_order
                and self.x_low <= other.x_low
                and self.x_high >= other.x_high)

    def to_json_obj(self):
        return {
            "max_p_weight": self.max_p_weight,
            "max_q1": self.max_q1,
            "max_q2": self.max_q2,
            "min_q2": self.min_q2,
            "beta_order": self.beta_order,
            "x_low": self.x_low,
            "x_high": self.x_high,
        }


def default_profile(weight=4, beta_order=3, q1_max=4, window=7) -> TruncationProfile:
    """The desk-scale profile used by the CLI and most tests."""
    return TruncationProfile(
        max_p_weight=weight,
        max_q1=q1_max,
        max_q2=weight,
        min_q2=-weight,
        beta_order=beta_order,
        x_low=-window,
        x_high=window,
    )


# ---------------------------------------------------------------------------
# BetaScalar
# ---------------------------------------------------------------------------

class BetaScalar:
    """Exact rational polynomial in beta1, beta2, truncated at a joint order.

    Keys of ``c`` are (m1, m2) exponent pairs with m1 + m2 <= order; zero
    coefficients are never stored.
    """

    __slots__ = ("order", "c")

    def __init__(self, order: int, c=None):
        self.order = order
        self.c = {} if c is None else c

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, order):
        return cls(order)

    @classmethod
    def one(cls, order):
        return cls(order, {(0, 0): Rat(1)})

    @classmethod
    def from_rational(cls, r, order):
        r = Rat(r)
        return cls(order, {(0, 0): r} if r else {})

    @classmethod
    def monomial(cls, m1, m2, order, coeff=Rat(1)):
        coeff = Rat(coeff)
        if m1 + m2 > order or not coeff:
            return cls(order)
        return cls(order, {(m1, m2): coeff})

    @classmethod
    def exp_linear(cls, c1, c2, order):
        """Truncated expansion of exp(c1*beta1 + c2*beta2).

        Every exponential of beta occurring in the pipeline has integer
        linear coefficients; this is asserted because closure of the
        beta-ring depends on it.
        """
        c1, c2 = Rat(c1), Rat(c2)
        if c1.denominator != 1 or c2.denominator != 1:
            raise ValueError("exp of beta requires integer coefficients: "
                             f"got {c1}, {c2}")
        out = {}
        for m1 in range(order + 1):
            for m2 in range(order + 1 - m1):
                v = (c1 ** m1) * (c2 ** m2) / (factorial(m1) * factorial(m2))
                if v:
                    out[(m1, m2)] = v
        return cls(order, out)

    # -- basic queries ------------------------------------------------------

    def is_zero(self):
        return not self.c

    def rational_part(self) -> Rat:
        return self.c.get((0, 0), Rat(0))

    def coeff(self, m1, m2) -> Rat:
        return self.c.get((m1, m2), Rat(0))

    def __eq__(self, other):
        if isinstance(other, BetaScalar):
            return self.order == other.order and self.c == other.c
        if isinstance(other, (int, Fraction)):
            r = Rat(other)
            return self.c == ({(0, 0): r} if r else {})
        return NotImplemented

    def __hash__(self):
        return hash((self.order, tuple(sorted(self.c.items()))))

    def __repr__(self):
        if not self.c:
            return "BetaScalar(0)"
        bits = []
        for (m1, m2) in sorted(self.c):
            v = self.c[(m1, m2)]
            mono = "".join(s for s, m in (("b1^%d" % m1, m1), ("b2^%d" % m2, m2)) if m)
            bits.append(f"{v}{('*' + mono) if mono else ''}")
        return "BetaScalar(%s)" % " + ".join(bits)

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if self.order != other.order:
            raise ProfileError("beta order mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BetaScalar.from_rational(other, self.order)
        self._check(other)
        out = dict(self.c)
        for k, v in other.c.items():
            s = out.get(k, Rat(0)) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return BetaScalar(self.order, out)

    def __neg__(self):
        return BetaScalar(self.order, {k: -v for k, v in self.c.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BetaScalar.from_rational(other, self.order)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            r = Rat(other)
            if not r:
                return BetaScalar(self.order)
            return BetaScalar(self.order, {k: v * r for k, v in self.c.items()})
        self._check(other)
        out = {}
        order = self.order
        for (a1, a2), u in self.c.items():
            for (b1, b2), v in other.c.items():
                m1, m2 = a1 + b1, a2 + b2
                if m1 + m2 > order:
                    continue
                k = (m1, m2)
                s = out.get(k, Rat(0)) + u * v
                if s:
                    out[k] = s
                else:
                    del out[k]
        return BetaScalar(self.order, out)

    __rmul__ = __mul__

    def inv(self):
        """Inverse of a unit (nonzero rational part)."""
        u = self.rational_part()
        if not u:
            raise ZeroDivisionError("BetaScalar is not a unit")
        # self = u * (1 + n) with n nilpotent of index <= order + 1
        n = (self - u) * (1 / u)
        acc = BetaScalar.one(self.order)
        pw = BetaScalar.one(self.order)
        for _ in range(self.order):
            pw = pw * n
            if pw.is_zero():
                break
            acc = acc + pw * Rat(-1) ** 0  # placeholder to keep structure clear
        # geometric series 1 - n + n^2 - ...
        acc = BetaScalar.one(self.order)
        pw = BetaScalar.one(self.order)
        sign = Rat(1)
        for _ in range(self.order):
            pw = pw * n
            sign = -sign
            if pw.is_zero():
                break
            acc = acc + pw * sign
        return acc * (1 / u)

    def exp(self):
        """exp of an element with zero rational part (nilpotent argument)."""
        if self.rational_part():
            raise ValueError("exp requires zero constant term")
        acc = BetaScalar.one(self.order)
        term = BetaScalar.one(self.order)
        for k in range(1, self.order + 1):
            term = term * self * Rat(1, k)
            if term.is_zero():
                break
            acc = acc + term
        return acc

    def subst_beta1_to_sum(self):
        """Substitute beta1 -> beta1 + beta2 (binomial expansion)."""
        out = BetaScalar(self.order)
        for (m1, m2), v in self.c.items():
            for j in range(m1 + 1):
                out = out + BetaScalar.monomial(m1 - j, m2 + j, self.order,
                                                v * comb(m1, j))
        return out

    def to_json_obj(self):
        return [
            {"m1": m1, "m2": m2,
             "num": str(v.numerator), "den": str(v.denominator)}
            for (m1, m2), v in sorted(self.c.items())
        ]


# ---------------------------------------------------------------------------
# SymSeries
# ---------------------------------------------------------------------------

def _term_sort_key(key):
    # lambda in reverse-lexicographic order (by weight, then largest parts
    # first), then q1, then q2 exponent
    lam, e1, e2 = key
    return (sum(lam), tuple(-p for p in lam), e1, e2)


class SymSeries:
    """Truncated series in power sums p1, p2, ... over the beta-ring.

    ``terms`` maps (lambda, e1, e2) -> BetaScalar where lambda is a weakly
    decreasing tuple of positive integers (the power-sum monomial p_lambda),
    e1 is the q1 exponent and e2 the q2 exponent.
    """

    __slots__ = ("profile", "terms")

    def __init__(self, profile: TruncationProfile, terms=None):
        self.profile = profile
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, profile):
        return cls(profile)

    @classmethod
    def one(cls, profile):
        return cls(profile, {((), 0, 0): BetaScalar.one(profile.beta_order)})

    @classmethod
    def from_rational(cls, r, profile):
        r = Rat(r)
        if not r:
            return cls(profile)
        return cls(profile, {((), 0, 0): BetaScalar.from_rational(r, profile.beta_order)})

    @classmethod
    def from_beta(cls, b: BetaScalar, profile):
        if b.order != profile.beta_order:
            raise ProfileError("beta order mismatch")
        if b.is_zero():
            return cls(profile)
        return cls(profile, {((), 0, 0): b})

    @classmethod
    def monomial(cls, profile, lam=(), e1=0, e2=0, coeff=Rat(1)):
        lam = tuple(lam)
        if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or \
                any(p < 1 for p in lam):
            raise ValueError(f"not a partition: {lam}")
        b = (coeff if isinstance(coeff, BetaScalar)
             else BetaScalar.from_rational(coeff, profile.beta_order))
        s = cls(profile)
        s._add_term(lam, e1, e2, b)
        return s

    # -- internals ----------------------------------------------------------

    def _in_profile(self, lam, e1, e2):
        pr = self.profile
        return (sum(lam) <= pr.max_p_weight and 0 <= e1 <= pr.max_q1
                and pr.min_q2 <= e2 <= pr.max_q2)

    def _add_term(self, lam, e1, e2, b: BetaScalar):
        """Accumulate b into the (lam, e1, e2) slot, dropping out-of-profile keys."""
        if b.is_zero() or not self._in_profile(lam, e1, e2):
            return
        key = (lam, e1, e2)
        cur = self.terms.get(key)
        s = b if cur is None else cur + b
        if s.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = s

    def _check(self, other):
        if self.profile != other.profile:
            raise ProfileError("profile mismatch")

    # -- queries ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, lam=(), e1=0, e2=0) -> BetaScalar:
        return self.terms.get((tuple(lam), e1, e2),
                              BetaScalar.zero(self.profile.beta_order))

    def constant_term(self) -> BetaScalar:
        return self.coeff()

    def is_p_free(self):
        return all(not lam for (lam, _, _) in self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymSeries.from_rational(other, self.profile)
        if not isinstance(other, SymSeries):
            return NotImplemented
        return self.profile == other.profile and self.terms == other.terms

    def __hash__(self):
        return hash((self.profile, tuple(sorted(self.terms.items(),
                                                key=lambda kv: _term_sort_key(kv[0])))))

    def __repr__(self):
        if not self.terms:
            return "SymSeries(0)"
        bits = []
        for key in sorted(self.terms, key=_term_sort_key)[:8]:
            lam, e1, e2 = key
            mono = "".join(f"p{n}" for n in lam) or "1"
            if e1:
                mono += f"*q1^{e1}"
            if e2:
                mono += f"*q2^{e2}"
            bits.append(f"({self.terms[key]!r})*{mono}")
        more = "" if len(self.terms) <= 8 else f" + <{len(self.terms) - 8} more>"
        return "SymSeries(%s%s)" % (" + ".join(bits), more)

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymSeries.from_rational(other, self.profile)
        self._check(other)
        out = SymSeries(self.profile, dict(self.terms))
        for (lam, e1, e2), b in other.terms.items():
            out._add_term(lam, e1, e2, b)
        return out

    __radd__ = __add__

    def __neg__(self):
        return SymSeries(self.profile, {k: -b for k, b in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = SymSeries.from_rational(other, self.profile)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BetaScalar)):
            if isinstance(other, BetaScalar):
                b = other
            else:
                b = BetaScalar.from_rational(other, self.profile.beta_order)
            out = SymSeries(self.profile)
            for (lam, e1, e2), c in self.terms.items():
                out._add_term(lam, e1, e2, c * b)
            return out
        self._check(other)
        out = SymSeries(self.profile)
        for (la, a1, a2), ba in self.terms.items():
            for (lb, b1, b2), bb in other.terms.items():
                lam = tuple(sorted(la + lb, reverse=True))
                out._add_term(lam, a1 + b1, a2 + b2, ba * bb)
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        out = SymSeries.one(self.profile)
        for _ in range(n):
            out = out * self
        return out

    # -- analytic operations ------------------------------------------------

    def _nilpotency_bound(self):
        pr = self.profile
        return (pr.max_p_weight + pr.max_q1 + (pr.max_q2 - pr.min_q2)
                + pr.beta_order + 2)

    def exp(self):
        """Truncated exponential.

        Requires a nilpotent argument: the constant key may carry beta
        content but no pure rational part.
        """
        c0 = self.constant_term()
        if c0.rational_part():
            raise ValueError("series exp requires nilpotent constant term")
        acc = SymSeries.one(self.profile)
        term = SymSeries.one(self.profile)
        for k in range(1, self._nilpotency_bound() + 1):
            term = term * self * Rat(1, k)
            if term.is_zero():
                return acc
            acc = acc + term
        raise ValueError("series exp did not terminate within the profile")

    def log(self):
        """Truncated logarithm; requires constant term exactly 1."""
        if self.constant_term() != BetaScalar.one(self.profile.beta_order):
            raise ValueError("series log requires constant term 1")
        n = self - 1
        acc = SymSeries.zero(self.profile)
        pw = SymSeries.one(self.profile)
        for k in range(1, self._nilpotency_bound() + 1):
            pw = pw * n
            if pw.is_zero():
                return acc
            acc = acc + pw * Rat((-1) ** (k + 1), k)
        raise ValueError("series log did not terminate within the profile")

    def inv(self):
        """Inverse of a unit (constant term a BetaScalar unit)."""
        c0 = self.constant_term()
        u = c0.inv()
        n = (self - SymSeries.from_beta(c0, self.profile)) * u
        acc = SymSeries.one(self.profile)
        pw = SymSeries.one(self.profile)
        sign = Rat(1)
        for _ in range(self._nilpotency_bound()):
            pw = pw * n
            sign = -sign
            if pw.is_zero():
                return acc * u
            acc = acc + pw * sign
        raise ValueError("series inverse did not terminate within the profile")

    # -- substitutions ------------------------------------------------------

    def _shift_terms(self, c):
        """Expand p_n -> p_n + c*u^{-n}; return {u-exponent: SymSeries}.

        The shift base variable is abstract here; callers route the exponent
        into q2 or a Laurent variable.
        """
        c = Rat(c)
        out = {}
        for (lam, e1, e2), b in self.terms.items():
            mults = {}
            for p in lam:
                mults[p] = mults.get(p, 0) + 1
            parts = sorted(mults)
            # choices[i] = how many copies of parts[i] get replaced
            def rec(i, kept, exp_u, factor):
                if i == len(parts):
                    key_lam = tuple(sorted(kept, reverse=True))
                    tgt = out.setdefault(exp_u, SymSeries(self.profile))
                    tgt._add_term(key_lam, e1, e2, b * factor)
                    return
                p, m = parts[i], mults[parts[i]]
                for k in range(m + 1):
                    rec(i + 1, kept + [p] * (m - k), exp_u - p * k,
                        factor * comb(m, k) * c ** k)
            rec(0, [], 0, Rat(1))
        return {e: s for e, s in out.items() if not s.is_zero()}

    def shift_p(self, c, base):
        """Substitute p_n -> p_n + c * u^{-n} with u = x or q2.

        For ``base='q2'`` the result is a SymSeries (exponents folded into
        the q2 grading); for ``base='x'`` it is a one-variable LaurentX.
        Raises WindowExhausted if a nonzero term needs an exponent below the
        window.
        """
        shifted = self._shift_terms(c)
        pr = self.profile
        if base == "q2":
            out = SymSeries(pr)
            for e_u, s in shifted.items():
                for (lam, e1, e2), b in s.terms.items():
                    e2n = e2 + e_u
                    if e2n < pr.min_q2:
                        raise WindowExhausted(
                            f"q2 exponent {e2n} below cutoff {pr.min_q2}")
                    out._add_term(lam, e1, e2n, b)
            return out
        if base == "x":
            low = min(shifted) if shifted else 0
            if low < pr.x_low:
                raise WindowExhausted(f"x exponent {low} below cutoff {pr.x_low}")
            return LaurentX(pr, ((pr.x_low, pr.x_high),),
                            {(e,): s for e, s in shifted.items()})
        raise ValueError(f"unknown shift base {base!r}")

    def scale_q2(self, n: int):
        """Substitute q2 -> exp(n*beta2) * q2."""
        out = SymSeries(self.profile)
        order = self.profile.beta_order
        for (lam, e1, e2), b in self.terms.items():
            out._add_term(lam, e1, e2, b * BetaScalar.exp_linear(0, n * e2, order))
        return out

    def derive(self, wrt, n=None):
        """Formal partial derivative.

        ``wrt`` is one of "p", "t" (with index n; d/dt_n = n d/dp_n since
        p_i = i*t_i), "beta1", "beta2".
        """
        out = SymSeries(self.profile)
        if wrt in ("p", "t"):
            factor = Rat(n) if wrt == "t" else Rat(1)
            for (lam, e1, e2), b in self.terms.items():
                m = lam.count(n)
                if not m:
                    continue
                rest = list(lam)
                rest.remove(n)
                out._add_term(tuple(rest), e1, e2, b * (m * factor))
            return out
        if wrt in ("beta1", "beta2"):
            idx = 0 if wrt == "beta1" else 1
            for (lam, e1, e2), b in self.terms.items():
                nb = BetaScalar(b.order)
                for (m1, m2), v in b.c.items():
                    e = (m1, m2)[idx]
                    if e:
                        k = (m1 - 1, m2) if idx == 0 else (m1, m2 - 1)
                        nb = nb + BetaScalar.monomial(*k, b.order, v * e)
                out._add_term(lam, e1, e2, nb)
            return out
        raise ValueError(f"unknown derivative designator {wrt!r}")

    def subst_q_to_q1q2(self):
        """Substitute the single grading q -> q1*q2.

        Requires all q2 exponents to be zero (the series tracks q in the q1
        slot); every key (lam, d, 0) becomes (lam, d, d).
        """
        out = SymSeries(self.profile)
        for (lam, e1, e2), b in self.terms.items():
            if e2:
                raise ValueError("series already uses the q2 grading")
            out._add_term(lam, e1, e1, b)
        return out

    def subst_beta1_to_sum(self):
        """Substitute beta1 -> beta1 + beta2 in every coefficient."""
        out = SymSeries(self.profile)
        for (lam, e1, e2), b in self.terms.items():
            out._add_term(lam, e1, e2, b.subst_beta1_to_sum())
        return out

    def truncate_p(self, wmax: int):
        """Drop keys of p-weight above ``wmax`` (profile kept)."""
        return SymSeries(self.profile,
                         {k: b for k, b in self.terms.items()
                          if sum(k[0]) <= wmax})

    def truncate_beta(self, order: int):
        """Drop beta-monomials of joint degree above ``order`` (profile kept)."""
        out = SymSeries(self.profile)
        for (lam, e1, e2), b in self.terms.items():
            nb = BetaScalar(b.order,
                            {k: v for k, v in b.c.items() if sum(k) <= order})
            out._add_term(lam, e1, e2, nb)
        return out

    def restrict_t1_line(self):
        """Keep only keys whose partition has parts equal to 1."""
        out = SymSeries(self.profile)
        for (lam, e1, e2), b in self.terms.items():
            if all(p == 1 for p in lam):
                out._add_term(lam, e1, e2, b)
        return out

    def embed(self, profile: TruncationProfile):
        """Explicitly re-embed into a wider profile (silent widening is forbidden)."""
        if not profile.contains(self.profile):
            raise ProfileError("target profile does not contain the current one")
        out = SymSeries(profile)
        for (lam, e1, e2), b in self.terms.items():
            nb = BetaScalar(profile.beta_order, dict(b.c))
            out._add_term(lam, e1, e2, nb)
        return out

    def min_q2_exponent(self):
        return min((e2 for (_, _, e2) in self.terms), default=0)

    # -- serialization ------------------------------------------------------

    def to_json_obj(self):
        terms = []
        for key in sorted(self.terms, key=_term_sort_key):
            lam, e1, e2 = key
            terms.append({
                "lambda": list(lam),
                "q1": e1,
                "q2": e2,
                "beta": self.terms[key].to_json_obj(),
            })
        return {"profile": self.profile.to_json_obj(), "terms": terms}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True,
                          separators=(",", ":"))


# ---------------------------------------------------------------------------
# LaurentX
# ---------------------------------------------------------------------------

class LaurentX:
    """Laurent adjunction of one or more bounded-window variables.

    ``terms`` maps an exponent tuple (one entry per adjoined variable) to a
    SymSeries coefficient.  Products drop keys outside the window (eager
    truncation); explicit coefficient extraction outside the window is an
    error, since it signals an under-provisioned profile.
    """

    __slots__ = ("profile", "windows", "terms")

    def __init__(self, profile, windows, terms=None):
        self.profile = profile
        self.windows = tuple((int(lo), int(hi)) for lo, hi in windows)
        for lo, hi in self.windows:
            if not lo <= 0 <= hi:
                raise ProfileError("Laurent window must contain 0")
        self.terms = {} if terms is None else terms

    @property
    def nvars(self):
        return len(self.windows)

    @classmethod
    def from_series(cls, s: SymSeries, windows):
        z = (0,) * len(windows)
        return cls(s.profile, windows, {z: s} if not s.is_zero() else {})

    def _in_window(self, exps):
        return all(lo <= e <= hi for (lo, hi), e in zip(self.windows, exps))

    def _add_term(self, exps, s: SymSeries):
        if s.is_zero() or not self._in_window(exps):
            return
        cur = self.terms.get(exps)
        tot = s if cur is None else cur + s
        if tot.is_zero():
            self.terms.pop(exps, None)
        else:
            self.terms[exps] = tot

    def _check(self, other):
        if self.profile != other.profile or self.windows != other.windows:
            raise ProfileError("Laurent profile/window mismatch")

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentX.from_series(
                SymSeries.from_rational(other, self.profile), self.windows)
        if not isinstance(other, LaurentX):
            return NotImplemented
        return (self.profile == other.profile and self.windows == other.windows
                and self.terms == other.terms)

    def __repr__(self):
        return f"LaurentX({len(self.terms)} terms, windows={self.windows})"

    def __add__(self, other):
        if isinstance(other, (int, Fraction, SymSeries)):
            if not isinstance(other, SymSeries):
                other = SymSeries.from_rational(other, self.profile)
            other = LaurentX.from_series(other, self.windows)
        self._check(other)
        out = LaurentX(self.profile, self.windows, dict(self.terms))
        for e, s in other.terms.items():
            out._add_term(e, s)
        return out

    __radd__ = __add__

    def __neg__(self):
        return LaurentX(self.profile, self.windows,
                        {e: -s for e, s in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, SymSeries)):
            if not isinstance(other, SymSeries):
                other = SymSeries.from_rational(other, self.profile)
            other = LaurentX.from_series(other, self.windows)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, BetaScalar, SymSeries)):
            out = LaurentX(self.profile, self.windows)
            for e, s in self.terms.items():
                out._add_term(e, s * other)
            return out
        self._check(other)
        out = LaurentX(self.profile, self.windows)
        for ea, sa in self.terms.items():
            for eb, sb in other.terms.items():
                e = tuple(a + b for a, b in zip(ea, eb))
                if out._in_window(e):
                    out._add_term(e, sa * sb)
        return out

    __rmul__ = __mul__

    def coef(self, *exps) -> SymSeries:
        """Coefficient of the given exponent tuple; out-of-window is an error."""
        if len(exps) != self.nvars:
            raise ValueError("exponent arity mismatch")
        if not self._in_window(exps):
            raise WindowExhausted(f"exponent {exps} outside windows {self.windows}")
        return self.terms.get(tuple(exps), SymSeries.zero(self.profile))

    def mul_var_power(self, var: int, k: int):
        """Multiply by x_var^k, dropping keys pushed outside the window."""
        out = LaurentX(self.profile, self.windows)
        for e, s in self.terms.items():
            ne = list(e)
            ne[var] += k
            out._add_term(tuple(ne), s)
        return out

    def append_var(self, window):
        """Adjoin a fresh Laurent variable (exponent 0 everywhere)."""
        return LaurentX(self.profile, self.windows + (tuple(window),),
                        {e + (0,): s for e, s in self.terms.items()})

    def shift_p_new_var(self, c, window):
        """Apply p_n -> p_n + c*u^{-n} with u a fresh Laurent variable."""
        out = LaurentX(self.profile, self.windows + (tuple(window),))
        lo = window[0]
        for e, s in self.terms.items():
            for e_u, part in s._shift_terms(c).items():
                if e_u < lo:
                    raise WindowExhausted(
                        f"shift exponent {e_u} below window {lo}")
                out._add_term(e + (e_u,), part)
        return out

    def map_coeffs(self, fn):
        out = LaurentX(self.profile, self.windows)
        for e, s in self.terms.items():
            out._add_term(e, fn(s))
        return out

    def derive(self, wrt, n=None):
        return self.map_coeffs(lambda s: s.derive(wrt, n))

    def exp(self):
        """Truncated exponential of a nilpotent Laurent element."""
        for e, s in self.terms.items():
            if all(x == 0 for x in e) and s.constant_term().rational_part():
                raise ValueError("Laurent exp requires nilpotent constant term")
        bound = (self.profile.max_p_weight + self.profile.beta_order
                 + sum(hi - lo for lo, hi in self.windows) + 2)
        acc = LaurentX.from_series(SymSeries.one(self.profile), self.windows)
        term = acc
        for k in range(1, bound + 1):
            term = term * self * Rat(1, k)
            if term.is_zero():
                return acc
            acc = acc + term
        raise ValueError("Laurent exp did not terminate within the windows")


def coef_x0(L: LaurentX) -> SymSeries:
    """Constant coefficient in all adjoined Laurent variables."""
    return L.coef(*([0] * L.nvars))


def coef_x(L: LaurentX, k: int) -> SymSeries:
    """Coefficient of x^k for a one-variable Laurent adjunction."""
    if L.nvars != 1:
        raise ValueError("coef_x expects a single Laurent variable")
    return L.coef(k)
