"""Exact-arithmetic engine for Hurwitz tau-functions and their KP structure.

The package computes closed and open Hurwitz generating series over exact
rationals at configurable truncation orders, certifies them as KP
tau-functions through the differential Fay identity, and verifies that the
rescaled open series form an mKP sequence linked by explicit
Backlund-Darboux transformations.
"""

from .series import (BetaScalar, LaurentX, ProfileError, SymSeries,
                     TruncationProfile, WindowExhausted, coef_x, coef_x0,
                     default_profile)
from .symfun import (CharTable, character, cutjoin_apply, cutjoin_eigenvalue,
                     cutjoin_exp, partitions_of, schur_p,
                     schur_specialize_equal)
from .fock import (LaurentRow, WedgeState, alpha_apply, boson_fermion,
                   fermion_apply, wedge_from_rows, wedge_reduce_exp_row)
from .hurwitz import (closed_hurwitz, closed_hurwitz_oracle, closed_tau,
                      open_hurwitz, open_tau, open_tau_base, open_tau1_via_D)
from .kp import (BdSeries, SolitonParams, TauSeries, adjoint_tau, bd_apply,
                 bd_detect, exp_xi, fay_holds_graded, fay_residual,
                 mkp_verify, ortho_rows, soliton_chain_holds, soliton_gamma,
                 soliton_tau, tau_shift, wave)

__version__ = "0.1.0"
