#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/expint.hpp>

#include <cmath>
#include <stdexcept>

#include "resonance/enclosure.hpp"
#include "resonance/errors.hpp"
#include "resonance/expint.hpp"

using resonance::Enclosure;
namespace expint = resonance::expint;

TEST_CASE("classical values at r = 1") {
    const Enclosure e1 = expint::exp_integral(1, 1.0);
    CHECK(e1.contains(0.21938393439552027368));
    CHECK(e1.width() <= 1e-12);

    // E_2(1) = e^{-1} - E_1(1)
    const Enclosure e2 = expint::exp_integral(2, 1.0);
    CHECK(e2.contains(0.14849550677592204792));
    CHECK(e2.width() <= 1e-11);
}

TEST_CASE("enclosures contain the boost reference") {
    for (int nu : {1, 2, 3, 4, 5}) {
        for (double r : {0.1, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0, 10.0, 30.0}) {
            CAPTURE(nu);
            CAPTURE(r);
            const Enclosure e = expint::exp_integral(nu, r);
            const double ref = boost::math::expint(static_cast<unsigned>(nu), r);
            const double slack = 1e-13 + 1e-12 * std::abs(ref);
            CHECK(e.lo - slack <= ref);
            CHECK(ref <= e.hi + slack);
            CHECK(e.width() <= 1e-11);
        }
    }
}

TEST_CASE("recurrence consistency: nu E_{nu+1} = e^{-r} - r E_nu") {
    for (int nu : {1, 2, 3, 4}) {
        for (double r : {0.5, 1.0, 2.0, 5.0}) {
            CAPTURE(nu);
            CAPTURE(r);
            const Enclosure lhs = static_cast<double>(nu) * expint::exp_integral(nu + 1, r);
            const Enclosure rhs =
                resonance::exp_enclosure(-r) - r * expint::exp_integral(nu, r);
            CHECK_NOTHROW(Enclosure::meet(lhs, rhs));  // both enclose the same real
        }
    }
}

TEST_CASE("series and continued-fraction branches agree across r = 1") {
    const Enclosure a = expint::e1_series(1.0);
    const Enclosure b = expint::e1_continued_fraction(1.0 + 1e-9);
    // E_1 is strictly decreasing; the step across the branch point is ~3.7e-10.
    CHECK(a.lo > b.hi);
    CHECK(a.mid() - b.mid() < 1e-8);
}

TEST_CASE("two-sided elementary bounds: e^{-r}/(r+nu) < E_nu(r) <= e^{-r}/(r+nu-1)") {
    for (int nu : {1, 2, 3}) {
        for (double r : {0.25, 1.0, 3.0, 8.0}) {
            CAPTURE(nu);
            CAPTURE(r);
            const Enclosure e = expint::exp_integral(nu, r);
            CHECK(e.hi > std::exp(-r) / (r + nu) - 1e-13);
            CHECK(e.lo < std::exp(-r) / (r + nu - 1) + 1e-13);
        }
    }
}

TEST_CASE("strictly decreasing in the order") {
    CHECK(expint::exp_integral(1, 1.0).lo > expint::exp_integral(2, 1.0).hi);
    CHECK(expint::exp_integral(2, 1.0).lo > expint::exp_integral(3, 1.0).hi);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(expint::exp_integral(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(expint::exp_integral(-3, 1.0), std::domain_error);
    CHECK_THROWS_AS(expint::exp_integral(1, 0.0), std::domain_error);
    CHECK_THROWS_AS(expint::exp_integral(1, -2.0), std::domain_error);
}

TEST_CASE("deterministic re-evaluation") {
    const Enclosure a = expint::exp_integral(2, 1.7);
    const Enclosure b = expint::exp_integral(2, 1.7);
    CHECK(a.lo == b.lo);
    CHECK(a.hi == b.hi);
}
