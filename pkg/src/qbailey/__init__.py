"""Exact q-series toolkit: configuration sums, string functions, Bailey pairs."""
from ._backend import BACKEND
from .series import (
    INF,
    BudgetExceeded,
    GridError,
    NonUnitError,
    OrderError,
    QSeries,
    equal_to_order,
    make_monomial,
    sum_converging,
)
from .configsum import X, PreconditionError
from .report import IdentityReport

__all__ = [
    "BACKEND",
    "INF",
    "BudgetExceeded",
    "GridError",
    "NonUnitError",
    "OrderError",
    "QSeries",
    "equal_to_order",
    "make_monomial",
    "sum_converging",
    "X",
    "PreconditionError",
    "IdentityReport",
]
__version__ = "0.1.0"
