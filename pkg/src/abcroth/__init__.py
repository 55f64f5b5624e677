"""Exact continued-fraction and ABC-triple toolkit for roots k**(1/s)."""

__version__ = "0.1.0"

from .arith import factorize, integer_nth_root, log_big, radical
from .bounds import (
    eps_abc_from_roth,
    eps_roth_from_abc,
    explicit_power_gain_bound,
    inverse_c_bound,
    ridout_cbrt_bound,
    ridout_sqrt_bound,
    ridout_sqrt_solutions,
    roth_table,
)
from .cf import Convergent, RootSpec, convergents, expand
from .equations import AbcTriple, ResultingEquation, normalize_to_abc, resulting_equation
from .metrics import approximation_gain, is_hit, k_epsilon, power_gain, quality
