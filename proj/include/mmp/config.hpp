#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "mmp/eval.hpp"
#include "mmp/radio.hpp"

namespace mmp {

/// Everything a `batch` run needs. JSON layout:
///
///   {
///     "radio": { <RadioConfig field>: number, ... },
///     "radio_overrides": { "pmp": { <RadioConfig field>: number }, ... },
///     "experiment": {
///       "n_aps_list": [2, ..., 10], "area_list": [10], "n_scenarios": 2000,
///       "topologies": ["pmp", "mh2", "mh4", "lp"], "master_seed": 1,
///       "filter": "all" | "mutually-feasible", "demand_set_mbps": [2, 4, 6, 8, 10],
///       "pop_at_center": false, "lp_scale_on_infeasible": false
///     },
///     "output_dir": "out"
///   }
///
/// Every key is optional; unknown keys are rejected. Overrides are applied on
/// top of "radio".
struct RunConfig {
  BatchSpec batch;
  std::filesystem::path output_dir = "out";
};

/// Throws ParseError (bad JSON, unknown key, wrong type) or ValidationError.
RunConfig parse_run_config(std::string_view json_text);

/// Applies RadioConfig fields present in a JSON object onto `base`.
RadioConfig parse_radio_config(std::string_view json_object, RadioConfig base = {});

std::string_view to_string(ServedFilter f);

}  // namespace mmp
