"""Exact symbolic computation of quantum b-functions for the six regular
parabolic families (A, B, C, D at two vertices, E7)."""

from .scalars import (QScalar, QS_ZERO, QS_ONE, qs, q_power, qint, qfact,
                      qbinom, serialize, parse, specialize_at_one, PoleAtOne)
from .roots import RootSystem, ParabolicDatum, build_root_system, \
    parabolic_datum, reduced_word, longest_element
from .freealg import (FreeOracle, RelationTable, DerivationError,
                      NonProportional, BudgetExceeded)
from .pbw import PBWAlgebra, PBWElem, MissingRule
from .bfunc import (construct_f_intrinsic, construct_f_explicit, ladder,
                    b_samples, interpolate, theorem_check, classical_limit,
                    gram_check, invariance_check, product_rule_check,
                    compute_bfunc, factored_form, expected_exponents,
                    expected_constant, BFuncResult, InvariantLadder,
                    DimensionError, InterpolationMismatch, DegreeOverflow)
from .cache import get_table, save_table, load_table, StaleCache
from .suite import run_property_suite

__all__ = [n for n in dir() if not n.startswith("_")]
__version__ = "1.0.0"
