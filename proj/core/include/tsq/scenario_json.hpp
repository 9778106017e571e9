#pragma once

#include <string>

#include "tsq/scenario.hpp"

namespace tsq::tsv {

// JSON round-trip for scenarios; the on-disk format shared with the CLI.
// Complex numbers are [re, im] pairs, matrices row-major nested arrays.
// Parsing is strict: unknown keys are rejected.
std::string scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const std::string& text);

}  // namespace tsq::tsv
