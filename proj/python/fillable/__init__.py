"""Fillable arrays: read/write plus constant-time whole-array fill.

The heavy lifting lives in the compiled extension; this package simply
re-exports it. Backends share one operation contract (1-based read/write,
fill) and run on a metered word arena so per-operation access counts can be
checked machine-independently.
"""

try:
    from fillable._core import *  # noqa: F401,F403
    from fillable._core import __doc__ as _core_doc
except ImportError:  # build-tree layout: the module sits next to the package
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "WordArena",
    "CostMeter",
    "Fillable",
    "OracleArray",
    "TrivialArray",
    "AmortizedFillable",
    "RandomizedFillable",
    "PermutationSeed",
    "ContractViolation",
    "UsageError",
    "is_prime",
    "find_prime",
    "family_prime",
    "run_fuzz",
    "run_replay_text",
    "run_perm_test",
]
