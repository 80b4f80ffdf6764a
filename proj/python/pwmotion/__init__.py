"""Python interface to the pwmotion C++ core.

Everything public re-exports from the compiled module. The import works
both for an installed wheel (extension placed inside this package) and for
a plain CMake build (extension directory on PYTHONPATH).
"""

try:
    from ._pwmotion import *  # noqa: F401,F403
    from ._pwmotion import __doc__  # noqa: F401
except ImportError:
    from _pwmotion import *  # noqa: F401,F403
    from _pwmotion import __doc__  # noqa: F401

__all__ = [
    "classify",
    "construct",
    "realize",
    "matrix_coefficient",
    "default_band",
    "poisson_integral",
    "divergence_scan",
    "free_propagate",
    "uniqueness_rn",
    "Error",
    "DivergentLogIntegral",
    "InconclusiveLogIntegral",
    "BudgetExhausted",
    "ConfigError",
    "GridTooCoarse",
]
