"""Memory-reinforced random walks with stable increments.

Thin wrapper re-exporting the compiled extension: exact samplers, percolated
recursive tree growth, Yule processes with mutation, closed-form analytics,
and the phase-regime verification experiments.
"""

from ._core import (  # noqa: F401
    analytics,
    cf_identity_check,
    classify_regime,
    critical_experiment,
    enumerate_root_cluster_pmf,
    grow_cluster_sizes,
    sample_isotropic_stable,
    sample_mittag_leffler,
    stable_cf,
    subcritical_experiment,
    supercritical_experiment,
    walk_final_position,
    yule_type_counts,
)

__all__ = [
    "analytics",
    "cf_identity_check",
    "classify_regime",
    "critical_experiment",
    "enumerate_root_cluster_pmf",
    "grow_cluster_sizes",
    "sample_isotropic_stable",
    "sample_mittag_leffler",
    "stable_cf",
    "subcritical_experiment",
    "supercritical_experiment",
    "walk_final_position",
    "yule_type_counts",
]
