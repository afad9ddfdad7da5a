"""Exact and numeric radial limits of specializations of the odd-order
universal mock theta function at roots of unity."""

from .bigcomplex import BigComplex
from .errors import (CaseMismatch, DivisionByZero, DomainError,
                     HypothesisViolated, InvalidParams, MockRadialError,
                     NearSingular, OrderMismatch, PrecisionExhausted,
                     UnsupportedCase)
from .exact import (CyclotomicNumber, IntPolynomial, Rational,
                    cyclotomic_polynomial, embed_complex, euler_phi,
                    field_arithmetic, get_order_cap, promote, root_of_unity,
                    set_order_cap)
from .mocktheta import (AffineRelation, affine_transport, edge_eta_companion,
                        eta_quotient_formal_zero, g3_eval, g_tilde_eval,
                        g_tilde_tail, kang_rhs, lost_notebook_sides, mtc73_rhs,
                        tailid2_rhs, tailid_rhs)
from .qseries import (TruncationReport, appell_lerch, appell_lerch_sum,
                      euler_cubed_infinite, euler_infinite, jacobi_theta,
                      jacobi_triple, periodic_pochhammer_closed_form,
                      pochhammer, pochhammer_infinite, pochhammer_negative)
from .radial import (CaseLabel, CuspData, ModularCompanion, RadialLimitResult,
                     SpecializationParams, SUPPORTED_LABELS, classify,
                     companion_value, cusp_data, limit_convergent, limit_edge,
                     limit_kang, limit_pole, radial_limit)
from .verify import (ConvergenceReport, IdentityReport, IDENTITY_IDS,
                     RadialSchedule, conjecture_check, corollary_check,
                     identity_check, lim0_quotient, radial_check)

__version__ = "0.1.0"
