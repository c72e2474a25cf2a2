"""Pool sizes for Dorfman two-stage group testing: optimal, minimax, Bayesian."""

from .bayes import (
    BayesResult,
    PriorSpec,
    QuadratureError,
    bayes_optimal_k,
    expected_tests_under_prior,
    expected_tests_uniform,
    jeffreys_constant,
    uniform_optimal_k,
)
from .core import (
    P0,
    Q0,
    expected_tests,
    loss,
    optimal_expected_tests,
    samuels_optimal_k,
)
from .efficiency import (
    TableReport,
    check_table,
    generate_table,
    relative_efficiency,
)
from .minimax import (
    LossPoint,
    MinimaxResult,
    minimax_group_size,
    sup_loss_analytic,
    sup_loss_grid,
)
from .ranges import OptimalityRange, delta, larger_root, optimality_range

__version__ = "0.1.0"

__all__ = [
    "P0",
    "Q0",
    "expected_tests",
    "samuels_optimal_k",
    "optimal_expected_tests",
    "loss",
    "delta",
    "larger_root",
    "optimality_range",
    "OptimalityRange",
    "LossPoint",
    "MinimaxResult",
    "sup_loss_analytic",
    "sup_loss_grid",
    "minimax_group_size",
    "PriorSpec",
    "BayesResult",
    "QuadratureError",
    "jeffreys_constant",
    "expected_tests_uniform",
    "uniform_optimal_k",
    "expected_tests_under_prior",
    "bayes_optimal_k",
    "relative_efficiency",
    "generate_table",
    "check_table",
    "TableReport",
]
