"""Vertical handover decision toolkit (Python bindings)."""

from ._vho import (
    breakdown_probability,
    default_config,
    figure_csv,
    figure_ids,
    gra_rank_file,
    gra_rank_text,
    hne_sweep_csv,
    htce_sweep_csv,
    packet_loss,
    prob_failure,
    prob_unnecessary,
    theta_cdf,
    threshold_failure,
    threshold_unnecessary,
    traversal_distance,
    traversal_time_cdf,
    trigger_radius,
)

__all__ = [
    "breakdown_probability",
    "default_config",
    "figure_csv",
    "figure_ids",
    "gra_rank_file",
    "gra_rank_text",
    "hne_sweep_csv",
    "htce_sweep_csv",
    "packet_loss",
    "prob_failure",
    "prob_unnecessary",
    "theta_cdf",
    "threshold_failure",
    "threshold_unnecessary",
    "traversal_distance",
    "traversal_time_cdf",
    "trigger_radius",
]
