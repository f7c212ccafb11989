#include "resonance/alpha.hpp"

#include <stdexcept>
#include <string>

#include "resonance/errors.hpp"

namespace resonance::yukawa {

RationalPoly::RationalPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

RationalPoly RationalPoly::constant(const mpq_class& c) {
    return RationalPoly(std::vector<mpq_class>{c});
}

void RationalPoly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

RationalPoly& RationalPoly::add_scaled(const RationalPoly& other, const mpq_class& scale) {
    if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), mpq_class(0));
    for (size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] += scale * other.coeffs_[i];
    trim();
    return *this;
}

RationalPoly RationalPoly::times_kappa() const {
    if (is_zero()) return {};
    std::vector<mpq_class> c(coeffs_.size() + 1, mpq_class(0));
    for (size_t i = 0; i < coeffs_.size(); ++i) c[i + 1] = coeffs_[i];
    return RationalPoly(std::move(c));
}

RationalPoly RationalPoly::scaled(const mpq_class& s) const {
    std::vector<mpq_class> c = coeffs_;
    for (auto& x : c) x *= s;
    return RationalPoly(std::move(c));
}

mpq_class RationalPoly::eval(const mpq_class& kappa) const {
    mpq_class acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * kappa + *it;
    return acc;
}

Enclosure to_enclosure(const mpq_class& q) {
    const double d = q.get_d();  // GMP rounds toward zero
    if (mpq_class(d) == q) return Enclosure::exact(d);
    return sgn(q) > 0 ? Enclosure(d, next_up(d)) : Enclosure(next_down(d), d);
}

AlphaTable::AlphaTable(int K) {
    if (K < 1) throw std::invalid_argument("AlphaTable: K must be >= 1");
    alphas_.reserve(K + 1);
    alphas_.push_back(RationalPoly::constant(mpq_class(1)));
    alphas_.push_back(RationalPoly::constant(mpq_class(1, 2)).times_kappa());
    mpz_class factorial(1);
    for (int k = 1; k < K; ++k) {
        RationalPoly sum;
        factorial = 1;
        for (int l = 0; l <= k; ++l) {
            if (l > 0) factorial *= l;
            sum.add_scaled(alphas_[k - l], mpq_class(mpz_class(1), factorial));
        }
        mpq_class prefactor(mpz_class(1), mpz_class(k + 1) * (k + 2));
        alphas_.push_back(sum.times_kappa().scaled(prefactor));
    }
}

std::vector<mpq_class> AlphaTable::evaluate(const mpq_class& kappa) const {
    std::vector<mpq_class> vals;
    vals.reserve(alphas_.size());
    for (const auto& p : alphas_) vals.push_back(p.eval(kappa));
    return vals;
}

namespace {

std::optional<int> monotone_start(const std::vector<mpq_class>& vals) {
    mpq_class running_min = vals[0];
    for (int k0 = 1; k0 + 1 < static_cast<int>(vals.size()); ++k0) {
        if (vals[k0] < running_min) running_min = vals[k0];
        if (vals[k0 + 1] < running_min) return k0;
    }
    return std::nullopt;
}

mpq_class signed_sum(const std::vector<mpq_class>& vals, int j, int weight) {
    mpq_class s(0);
    for (int k = 0; k <= j; ++k) {
        mpq_class term = vals[k];
        if (weight == 1) term *= k;
        if (k % 2 == 1)
            s -= term;
        else
            s += term;
    }
    return s;
}

}  // namespace

std::optional<int> verify_monotone_from(const AlphaTable& table, const mpq_class& kappa) {
    if (kappa <= 0) throw std::domain_error("verify_monotone_from: kappa must be positive");
    return monotone_start(table.evaluate(kappa));
}

mpq_class partial_sum(const AlphaTable& table, const mpq_class& kappa, int j, int weight) {
    if (j > table.depth()) throw std::invalid_argument("partial_sum: j exceeds table depth");
    return signed_sum(table.evaluate(kappa), j, weight);
}

Enclosure u_int_value(const AlphaTable& table, const mpq_class& kappa, const mpq_class& r,
                      int K) {
    if (kappa < 0) throw std::domain_error("u_int_value: kappa must be >= 0");
    if (r <= 0 || r > 1) throw std::domain_error("u_int_value: need 0 < r <= 1");
    if (kappa == 0) return Enclosure::exact(1.0);
    const int odd = 2 * K - 1, even = 2 * K;
    if (even > table.depth())
        throw std::invalid_argument("u_int_value: table depth too small for K");
    const auto vals = table.evaluate(kappa);
    const auto k0 = monotone_start(vals);
    if (!k0 || odd < std::max(*k0, 3))
        throw CertificationError("u_int_value: term decrease not certified at this depth");
    mpq_class s_odd(0), s_even(0), rpow(1);
    for (int k = 0; k <= even; ++k) {
        const mpq_class term = vals[k] * rpow;
        s_even += (k % 2 == 1) ? -term : term;
        if (k == odd) s_odd = s_even;
        rpow *= r;
    }
    return {to_enclosure(s_odd).lo, to_enclosure(s_even).hi};
}

BoundaryTrace u_int_trace(const AlphaTable& table, const mpq_class& kappa, int K) {
    if (kappa < 0) throw std::domain_error("u_int_trace: kappa must be >= 0");
    if (kappa == 0)
        return {Enclosure::exact(1.0), Enclosure::exact(0.0), BoundaryTrace::Side::interior};
    const int odd = 2 * K - 1, even = 2 * K;
    if (even > table.depth())
        throw std::invalid_argument("u_int_trace: table depth too small for K");
    const auto vals = table.evaluate(kappa);
    const auto k0 = monotone_start(vals);
    if (!k0)
        throw CertificationError("u_int_trace: alpha monotonicity not certifiable at this depth");
    const int need = std::max(*k0, 3);
    if (odd < need)
        throw CertificationError("u_int_trace: 2K-1 = " + std::to_string(odd) +
                                 " below certified monotone start " + std::to_string(need));
    // Alternating series with decreasing terms: consecutive partial sums bracket.
    const mpq_class v_lo = signed_sum(vals, odd, 0);
    const mpq_class v_hi = signed_sum(vals, even, 0);
    const mpq_class d_lo = signed_sum(vals, odd, 1);
    const mpq_class d_hi = signed_sum(vals, even, 1);
    return {Enclosure(to_enclosure(v_lo).lo, to_enclosure(v_hi).hi),
            Enclosure(to_enclosure(d_lo).lo, to_enclosure(d_hi).hi),
            BoundaryTrace::Side::interior};
}

}  // namespace resonance::yukawa
