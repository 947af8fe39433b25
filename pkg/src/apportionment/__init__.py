"""Exact proportional apportionment: divisor methods, rho-rounding methods and
the general minimiser of decomposable error functions."""

__version__ = '0.1.0'

from apportionment.core import (  # noqa: E402
    ERROR,
    INDEX_ORDER,
    LARGEST_VOTES,
    ApportionmentResult,
    ElectionProblem,
    QuotaVector,
    TiePolicy,
    build_problem,
    exact_quotas,
    quotas_from_decimals,
    seeded,
)
from apportionment.methods import MethodSpec, apportion, parse_method  # noqa: E402

__all__ = [
    'ERROR', 'INDEX_ORDER', 'LARGEST_VOTES', 'ApportionmentResult', 'ElectionProblem',
    'MethodSpec', 'QuotaVector', 'TiePolicy', 'apportion', 'build_problem', 'exact_quotas',
    'parse_method', 'quotas_from_decimals', 'seeded',
]
