#pragma once

#include <gmpxx.h>

#include <vector>

#include "resonance/alpha.hpp"
#include "resonance/enclosure.hpp"

namespace resonance::yukawa {

// Truncation depths for the two boundary traces: the interior trace uses
// partial sums to k = 2*interior_pairs - 1 and 2*interior_pairs, the exterior
// trace uses orders 1..exterior_order.
struct Truncation {
    int interior_pairs;
    int exterior_order;
};

// Coarsest truncation: interior sums to k = 7 and 8, exterior orders 1 and 2.
inline constexpr Truncation kBaseTruncation{4, 2};
inline constexpr int kMaxInteriorPairs = 64;
inline constexpr int kMaxEscalations = 5;

struct WronskianSample {
    mpq_class kappa;
    Enclosure enclosure;
    CertifiedSign sign;
    Truncation truncation;  // depth at which the enclosure was produced
};

// Enclosure of W(kappa) = u_ext(1) u_int'(1) - u_int(1) u_ext'(1) at a fixed
// truncation, as the interval product/difference of the four boundary-trace
// enclosures.
WronskianSample wronskian_enclosure_at(const mpq_class& kappa, const Truncation& t);

// Same, but escalates the truncation (interior pairs doubled, exterior order
// incremented, up to kMaxEscalations retries) until the sign is certified.
// Returns the last sample — sign indeterminate only if escalation is exhausted.
WronskianSample wronskian_enclosure(const mpq_class& kappa);

struct BracketResult {
    mpq_class lo, hi;        // certified sign + at lo, - at hi
    Enclosure bracket;       // outward-rounded [lo, hi]
    bool tol_met;            // width <= tol achieved
    int accepted_steps;      // midpoints with certified sign
    Truncation deepest;      // deepest truncation used by any sample
};

// Bisect on certified signs inside [lo, hi]; requires certified + at lo and
// - at hi. Midpoints with indeterminate sign trigger truncation escalation;
// if escalation is exhausted the best certified bracket so far is returned
// with tol_met = false (never an uncertified point).
BracketResult bracket_first_zero(const mpq_class& lo, const mpq_class& hi, double tol);

// Certified sign + at `count` equispaced rationals j*lo/count, j = 1..count:
// finite no-earlier-zero certificate for a bracket starting at lo.
// Returns the samples; throws CertificationError if any sign fails to certify.
std::vector<WronskianSample> minimality_sweep(const mpq_class& lo, int count);

}  // namespace resonance::yukawa
