"""Step-function toolkit for the Erdos minimum overlap problem.

Evaluates the worst-shift overlap objective of step functions on [0, 2]
in exact rational arithmetic, searches for good functions with a seeded
multi-start projected subgradient optimizer, and brute-forces the discrete
minimum M(n) over balanced partitions of {1, ..., 2n}.

Exact values cross the Python boundary as "num/den" strings; feed them to
fractions.Fraction to keep computing losslessly.
"""

from minoverlap._core import (
    CapacityError,
    StepFunction,
    builtin,
    builtin_names,
    continuous_at,
    difference_counts,
    from_json,
    load,
    max_overlap,
    max_overlap_decimal,
    max_overlap_exact,
    min_over_partitions,
    minimize,
    optimize,
    partition_to_stepfn,
    project_feasible,
    shift_values,
    shift_values_exact,
    store,
    subgradient,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "StepFunction",
    "builtin",
    "builtin_names",
    "continuous_at",
    "difference_counts",
    "from_json",
    "load",
    "max_overlap",
    "max_overlap_decimal",
    "max_overlap_exact",
    "min_over_partitions",
    "minimize",
    "optimize",
    "partition_to_stepfn",
    "project_feasible",
    "shift_values",
    "shift_values_exact",
    "store",
    "subgradient",
]
