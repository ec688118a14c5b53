"""Middle-mile backhaul planner."""

from ._core import (
    EmptySelection,
    Node,
    ParseError,
    RadioConfig,
    Scenario,
    ValidationError,
    __version__,
    evaluate,
    generate_scenario,
    load_scenario,
    lp_utilities,
    multihop_tree,
    path_loss_db,
    per_rb_rate_bps,
    rbs_required,
    run_batch,
    save_scenario,
    scenario_hash,
    snr_db,
)

__all__ = [
    "EmptySelection",
    "Node",
    "ParseError",
    "RadioConfig",
    "Scenario",
    "ValidationError",
    "__version__",
    "evaluate",
    "generate_scenario",
    "load_scenario",
    "lp_utilities",
    "multihop_tree",
    "path_loss_db",
    "per_rb_rate_bps",
    "rbs_required",
    "run_batch",
    "save_scenario",
    "scenario_hash",
    "snr_db",
]
