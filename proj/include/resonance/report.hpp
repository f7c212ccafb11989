#pragma once

#include <string>

#include "resonance/potential.hpp"

namespace resonance {

// Machine-readable report document, schema version 1:
//   {"schema": 1, "kappa_star": {"lo": .., "hi": ..}, "method": ..,
//    "n": .., "classification": .., "certified": .., "potential": ..,
//    "diagnostics": {..}}
// plus "generated_at" unless with_timestamp is false (byte-stable output for
// identical runs).
std::string report_to_json(const ResonanceReport& rep, bool with_timestamp);

std::string report_to_human(const ResonanceReport& rep);

// One header row plus one data row.
std::string report_to_csv(const ResonanceReport& rep);

}  // namespace resonance
