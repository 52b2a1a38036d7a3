"""q-entropic Bell and contextuality inequalities."""

from qbell._core import (
    EtaReport,
    MaxViolation,
    PolytopeVerdict,
    ViolationReport,
    binary_q_entropy,
    chain_rule_residual,
    chsh_correlation,
    chsh_cq,
    chsh_joint_dist,
    chsh_mutual_info_form,
    conditional_entropy,
    cycle_entropic_lhs,
    cycle_polytope_check,
    deform_joint,
    joint_entropy,
    kcbs_cq,
    kcbs_deformed_cq,
    kcbs_pair_correlation,
    kcbs_sequential_joint,
    kcbs_theta_series,
    kcbs_vectors,
    mutual_information,
    q_ln,
    q_threshold,
    ratio_linear_fit,
    scan_chsh,
    scan_kcbs,
    single_detector_cq,
    table2_ratios,
    tsallis_entropy,
    two_detector_report,
)

__all__ = [
    "EtaReport",
    "MaxViolation",
    "PolytopeVerdict",
    "ViolationReport",
    "binary_q_entropy",
    "chain_rule_residual",
    "chsh_correlation",
    "chsh_cq",
    "chsh_joint_dist",
    "chsh_mutual_info_form",
    "conditional_entropy",
    "cycle_entropic_lhs",
    "cycle_polytope_check",
    "deform_joint",
    "joint_entropy",
    "kcbs_cq",
    "kcbs_deformed_cq",
    "kcbs_pair_correlation",
    "kcbs_sequential_joint",
    "kcbs_theta_series",
    "kcbs_vectors",
    "mutual_information",
    "q_ln",
    "q_threshold",
    "ratio_linear_fit",
    "scan_chsh",
    "scan_kcbs",
    "single_detector_cq",
    "table2_ratios",
    "tsallis_entropy",
    "two_detector_report",
]
