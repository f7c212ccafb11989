#pragma once

#include "resonance/enclosure.hpp"

namespace resonance {

// Value and derivative of a radial solution at the matching radius r = 1.
// Certified paths produce genuine enclosures; estimated paths produce
// value +/- error-estimate intervals and say so.
struct BoundaryTrace {
    Enclosure value;
    Enclosure derivative;
    enum class Side { interior, exterior } side;
};

}  // namespace resonance
