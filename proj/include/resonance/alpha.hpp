#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "resonance/enclosure.hpp"
#include "resonance/trace.hpp"

namespace resonance::yukawa {

using resonance::BoundaryTrace;

// Polynomial in kappa with exact rational coefficients, ascending degree.
class RationalPoly {
  public:
    RationalPoly() = default;
    explicit RationalPoly(std::vector<mpq_class> coeffs);

    static RationalPoly constant(const mpq_class& c);

    const std::vector<mpq_class>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return coeffs_.empty() ? -1 : static_cast<int>(coeffs_.size()) - 1; }

    RationalPoly& add_scaled(const RationalPoly& other, const mpq_class& scale);
    RationalPoly times_kappa() const;          // multiply by the variable
    RationalPoly scaled(const mpq_class& s) const;

    mpq_class eval(const mpq_class& kappa) const;  // exact Horner evaluation

    bool operator==(const RationalPoly& other) const { return coeffs_ == other.coeffs_; }

  private:
    void trim();
    std::vector<mpq_class> coeffs_;
};

// Outward-rounded double enclosure of an exact rational.
Enclosure to_enclosure(const mpq_class& q);

// Coefficients alpha_0..alpha_K of the interior series
//   u_int(r; kappa) = 1 + sum_{k>=1} (-1)^k alpha_k(kappa) r^k   (n = 3, Yukawa),
// built from alpha_0 = 1, alpha_1 = kappa/2 and
//   alpha_{k+1}(kappa) = kappa/((k+1)(k+2)) * sum_{l=0}^{k} alpha_{k-l}(kappa)/l!.
class AlphaTable {
  public:
    explicit AlphaTable(int K);

    int depth() const { return static_cast<int>(alphas_.size()) - 1; }
    const RationalPoly& alpha(int k) const { return alphas_.at(k); }

    // Exact values alpha_k(kappa), k = 0..depth.
    std::vector<mpq_class> evaluate(const mpq_class& kappa) const;

  private:
    std::vector<RationalPoly> alphas_;
};

// Smallest k0 <= depth-1 with alpha_{k0+1}(kappa) < min_{k<=k0} alpha_k(kappa),
// by exact rational comparison. Once this hypothesis holds, alpha_{k+1} < alpha_k
// for all k >= k0 and (k+1) alpha_{k+1} < k alpha_k for k >= max(k0, 3).
// Empty when no such k0 exists within the table.
std::optional<int> verify_monotone_from(const AlphaTable& table, const mpq_class& kappa);

// Leibniz enclosures of u_int(1;kappa) and u_int'(1;kappa) using partial sums
// to k = 2K-1 and k = 2K. Requires 2K-1 >= max(k0, 3) (certified via
// verify_monotone_from); throws CertificationError otherwise. kappa = 0 is the
// exact trace ([1,1], [0,0]).
BoundaryTrace u_int_trace(const AlphaTable& table, const mpq_class& kappa, int K);

// Exact partial sum S_j = sum_{k=0}^{j} (-1)^k alpha_k(kappa); weight 0 -> alpha_k,
// weight 1 -> k*alpha_k. Exposed for the Leibniz-nesting property tests.
mpq_class partial_sum(const AlphaTable& table, const mpq_class& kappa, int j, int weight);

// Leibniz enclosure of u_int(r) = sum_k (-1)^k alpha_k(kappa) r^k at a general
// radius 0 < r <= 1 (alpha_k decreasing keeps alpha_k r^k decreasing there).
Enclosure u_int_value(const AlphaTable& table, const mpq_class& kappa, const mpq_class& r, int K);

}  // namespace resonance::yukawa
