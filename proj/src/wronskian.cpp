#include "resonance/wronskian.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "resonance/errors.hpp"
#include "resonance/omega.hpp"

namespace resonance::yukawa {

namespace {

// Alpha tables are expensive to build and immutable once built: cache by depth.
const AlphaTable& shared_alpha_table(int depth) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<AlphaTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(depth);
    if (it == cache.end())
        it = cache.emplace(depth, std::make_unique<AlphaTable>(depth)).first;
    return *it->second;
}

Truncation escalate(const Truncation& t) {
    return {std::min(2 * t.interior_pairs, kMaxInteriorPairs),
            std::min(t.exterior_order + 1, kMaxExteriorOrder)};
}

}  // namespace

WronskianSample wronskian_enclosure_at(const mpq_class& kappa, const Truncation& t) {
    if (kappa < 0) throw std::domain_error("wronskian_enclosure: kappa must be >= 0");
    if (t.interior_pairs < 2 || t.interior_pairs > kMaxInteriorPairs ||
        t.exterior_order < 1 || t.exterior_order > kMaxExteriorOrder)
        throw std::invalid_argument("wronskian_enclosure: truncation out of range");
    const AlphaTable& table = shared_alpha_table(2 * t.interior_pairs);
    const BoundaryTrace in = u_int_trace(table, kappa, t.interior_pairs);
    const BoundaryTrace ex = u_ext_trace(kappa, t.exterior_order);
    const Enclosure w = ex.value * in.derivative - in.value * ex.derivative;
    return {kappa, w, sign_of(w), t};
}

WronskianSample wronskian_enclosure(const mpq_class& kappa) {
    Truncation t = kBaseTruncation;
    for (int attempt = 0;; ++attempt) {
        try {
            WronskianSample s = wronskian_enclosure_at(kappa, t);
            if (s.sign != CertifiedSign::indeterminate || attempt == kMaxEscalations) return s;
        } catch (const CertificationError&) {
            // A truncation too shallow for this kappa (e.g. the monotone start
            // of the alpha terms beyond 2K-1) is curable by escalation; rethrow
            // only once the ladder is exhausted.
            if (attempt == kMaxEscalations) throw;
        }
        t = escalate(t);
    }
}

BracketResult bracket_first_zero(const mpq_class& lo, const mpq_class& hi, double tol) {
    if (!(lo < hi)) throw std::invalid_argument("bracket_first_zero: requires lo < hi");
    if (!(tol > 0)) throw std::invalid_argument("bracket_first_zero: tol must be positive");

    const WronskianSample at_lo = wronskian_enclosure(lo);
    if (at_lo.sign == CertifiedSign::indeterminate)
        throw PrecisionError("bracket_first_zero: sign at lo not certifiable");
    if (at_lo.sign != CertifiedSign::positive)
        throw std::invalid_argument("bracket_first_zero: certified sign at lo is not +");
    const WronskianSample at_hi = wronskian_enclosure(hi);
    if (at_hi.sign == CertifiedSign::indeterminate)
        throw PrecisionError("bracket_first_zero: sign at hi not certifiable");
    if (at_hi.sign != CertifiedSign::negative)
        throw std::invalid_argument("bracket_first_zero: certified sign at hi is not -");

    BracketResult result{lo, hi, Enclosure(0, 0), false, 0,
                         {std::max(at_lo.truncation.interior_pairs, at_hi.truncation.interior_pairs),
                          std::max(at_lo.truncation.exterior_order, at_hi.truncation.exterior_order)}};
    while (result.hi - result.lo > tol) {
        const mpq_class mid = (result.lo + result.hi) / 2;
        const WronskianSample s = wronskian_enclosure(mid);
        if (s.sign == CertifiedSign::indeterminate) break;  // best certified bracket so far
        if (s.sign == CertifiedSign::positive)
            result.lo = mid;
        else
            result.hi = mid;
        ++result.accepted_steps;
        result.deepest.interior_pairs =
            std::max(result.deepest.interior_pairs, s.truncation.interior_pairs);
        result.deepest.exterior_order =
            std::max(result.deepest.exterior_order, s.truncation.exterior_order);
    }
    result.tol_met = result.hi - result.lo <= tol;
    result.bracket = Enclosure(to_enclosure(result.lo).lo, to_enclosure(result.hi).hi);
    return result;
}

std::vector<WronskianSample> minimality_sweep(const mpq_class& lo, int count) {
    if (lo <= 0) throw std::invalid_argument("minimality_sweep: lo must be positive");
    if (count < 1) throw std::invalid_argument("minimality_sweep: count must be >= 1");
    std::vector<WronskianSample> samples;
    samples.reserve(count);
    for (int j = 1; j <= count; ++j) {
        WronskianSample s = wronskian_enclosure(mpq_class(j) * lo / count);
        if (s.sign != CertifiedSign::positive)
            throw CertificationError("minimality_sweep: sign not certified + at sample " +
                                     std::to_string(j) + "/" + std::to_string(count));
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace resonance::yukawa
