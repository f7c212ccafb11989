#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <stdexcept>

#include "resonance/errors.hpp"
#include "resonance/potential.hpp"
#include "resonance/volterra.hpp"
#include "resonance/wronskian.hpp"

using namespace resonance::yukawa;
using resonance::CertifiedSign;
using resonance::Enclosure;
using resonance::PrecisionError;
using resonance::RadialPotential;

namespace {

mpq_class q(long num, long den) {
    mpq_class x(num, den);
    x.canonicalize();
    return x;
}

// Independent high-precision reference for the first zero (adaptive ODE
// shooting cross-checked against deep series evaluation).
constexpr double kFirstZeroRef = 1.67980777339544;

const mpq_class kLo = q(167626, 100000);
const mpq_class kHi = q(168742, 100000);

}  // namespace

TEST_CASE("normalization at kappa = 0") {
    const WronskianSample s = wronskian_enclosure(mpq_class(0));
    CHECK(s.enclosure.contains(1.0));
    CHECK(s.enclosure.width() <= 1e-10);
    CHECK(s.sign == CertifiedSign::positive);
    CHECK(s.truncation.interior_pairs == kBaseTruncation.interior_pairs);
    CHECK(s.truncation.exterior_order == kBaseTruncation.exterior_order);
}

TEST_CASE("bracket endpoints certify only after escalation") {
    // At the coarsest truncation both endpoint enclosures straddle zero.
    CHECK(wronskian_enclosure_at(kLo, kBaseTruncation).sign == CertifiedSign::indeterminate);
    CHECK(wronskian_enclosure_at(kHi, kBaseTruncation).sign == CertifiedSign::indeterminate);

    const WronskianSample at_lo = wronskian_enclosure(kLo);
    CHECK(at_lo.sign == CertifiedSign::positive);
    CHECK(at_lo.truncation.interior_pairs > kBaseTruncation.interior_pairs);

    const WronskianSample at_hi = wronskian_enclosure(kHi);
    CHECK(at_hi.sign == CertifiedSign::negative);
    CHECK(at_hi.truncation.exterior_order > kBaseTruncation.exterior_order);
}

TEST_CASE("deeper truncations tighten the enclosure around a common value") {
    const mpq_class kappa = q(8, 5);
    const WronskianSample base = wronskian_enclosure_at(kappa, kBaseTruncation);
    const WronskianSample mid = wronskian_enclosure_at(kappa, Truncation{8, 3});
    const WronskianSample deep = wronskian_enclosure_at(kappa, Truncation{16, 4});
    CHECK(base.enclosure.width() > mid.enclosure.width());
    CHECK(mid.enclosure.width() > deep.enclosure.width());
    CHECK_NOTHROW(Enclosure::meet(base.enclosure, deep.enclosure));
    CHECK(deep.sign == CertifiedSign::positive);  // 1.6 is left of the first zero
}

TEST_CASE("certified signs agree with the independent Volterra estimate") {
    const RadialPotential V = RadialPotential::yukawa();
    for (const mpq_class kappa :
         {q(3, 10), q(4, 5), q(13, 10), q(8, 5), q(17, 10), q(19, 10), q(5, 2)}) {
        CAPTURE(kappa.get_d());
        const WronskianSample s = wronskian_enclosure(kappa);
        REQUIRE(s.sign != CertifiedSign::indeterminate);
        const double est = resonance::volterra::general_wronskian(V, 3, kappa.get_d(), 1024).value;
        CHECK((s.sign == CertifiedSign::positive) == (est > 0));
    }
}

TEST_CASE("close to the zero the sign still certifies") {
    CHECK(wronskian_enclosure(q(16797, 10000)).sign == CertifiedSign::positive);
    CHECK(wronskian_enclosure(q(16799, 10000)).sign == CertifiedSign::negative);
}

TEST_CASE("bisection from a wide bracket") {
    const BracketResult res = bracket_first_zero(mpq_class(1), mpq_class(2), 0.02);
    CHECK(res.tol_met);
    CHECK(res.hi - res.lo <= q(2, 100));
    CHECK(res.bracket.contains(kFirstZeroRef));
    CHECK(res.accepted_steps >= 6);
}

TEST_CASE("bisection refines the certified bracket below 1e-4") {
    const BracketResult res = bracket_first_zero(kLo, kHi, 1e-4);
    CHECK(res.tol_met);
    CHECK(res.bracket.contains(kFirstZeroRef));
    CHECK(res.bracket.width() < 1.01e-4);
    CHECK(res.bracket.lo >= kLo.get_d() - 1e-12);
    CHECK(res.bracket.hi <= kHi.get_d() + 1e-12);
    CHECK(res.deepest.interior_pairs > kBaseTruncation.interior_pairs);
}

TEST_CASE("bracket argument guards") {
    CHECK_THROWS_AS(bracket_first_zero(mpq_class(2), mpq_class(1), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(bracket_first_zero(mpq_class(1), mpq_class(1), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(bracket_first_zero(kLo, kHi, 0.0), std::invalid_argument);
    // no sign change on [1/2, 1]: the right end certifies + instead of -
    CHECK_THROWS_AS(bracket_first_zero(q(1, 2), mpq_class(1), 0.1), std::invalid_argument);
    CHECK_THROWS_AS(wronskian_enclosure(mpq_class(-1)), std::domain_error);
    CHECK_THROWS_AS(wronskian_enclosure_at(mpq_class(1), Truncation{1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(wronskian_enclosure_at(mpq_class(1), Truncation{4, 9}),
                    std::invalid_argument);
}

TEST_CASE("resonance-free sweep below the bracket") {
    const auto samples = minimality_sweep(kLo, 8);
    REQUIRE(samples.size() == 8);
    for (const auto& s : samples) CHECK(s.sign == CertifiedSign::positive);
    CHECK(samples.back().kappa == kLo);
    CHECK_THROWS_AS(minimality_sweep(mpq_class(0), 8), std::invalid_argument);
    CHECK_THROWS_AS(minimality_sweep(kLo, 0), std::invalid_argument);
}
