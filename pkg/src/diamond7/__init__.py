"""diamond7: checking d_2(n) == 0 mod 7^floor(alpha/2) on 8n == 1 mod 7^alpha.

The package computes the generating functions L_alpha of the progression,
writes them in the localized ring Z_(7)[x, y] / (1 + 7x)^nu, and checks
the profile bounds and congruence relations that keep the representation
stable under U_7.  Everything is exact integer or rational arithmetic.
"""

from ._version import __version__
from . import errors
from .errors import *  # noqa: F401,F403
from .qseries import QSeries, u_operator, mul, invert
from .eta import (SPECS, EtaQuotientSpec, named, d_k, lambda_index, build_L1, build_ladder,
                  catalog)
from .profiles import theta, pi, pi_hat
from .localized import (TRACKED_SLOTS, XYElement, represent, represent_mod, evaluate,
                        s_vector, membership_report)
from .modeq import (load_modular_equation_data, verify_modeq_x, verify_modeq_z,
                    verify_substitution, verify_recurrence_data)
from .htable import HTable, compute_h_table, standard_tables, verify_h_congruences
from .relations import failure_set, verify_profile_inequalities, growth_certificate
from .ideal import (GENERATORS, DEFAULT_IDEAL, CongruenceIdeal, LinearFormMod49,
                    evaluate_ideal, is_zero_ideal, stability_check, psi)
from .crossval import l1_representation, ladder_representation, cross_validate_successor
from .pipeline import (VerificationConfig, check_congruence, run_full_verification,
                       validate_report)

__all__ = errors.__all__ + [
    "__version__", "QSeries", "u_operator", "mul", "invert", "SPECS", "EtaQuotientSpec",
    "named", "d_k", "lambda_index", "build_L1", "build_ladder", "catalog", "theta", "pi",
    "pi_hat", "TRACKED_SLOTS", "XYElement", "represent", "represent_mod", "evaluate",
    "s_vector", "membership_report", "load_modular_equation_data", "verify_modeq_x",
    "verify_modeq_z", "verify_substitution", "verify_recurrence_data", "HTable",
    "compute_h_table", "standard_tables", "verify_h_congruences", "failure_set",
    "verify_profile_inequalities", "growth_certificate", "GENERATORS", "DEFAULT_IDEAL",
    "CongruenceIdeal", "LinearFormMod49", "evaluate_ideal", "is_zero_ideal",
    "stability_check", "psi", "l1_representation", "ladder_representation",
    "cross_validate_successor", "VerificationConfig", "check_congruence",
    "run_full_verification", "validate_report"
]
