#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "resonance/enclosure.hpp"
#include "resonance/errors.hpp"
#include "resonance/omega.hpp"
#include "resonance/trace.hpp"

using namespace resonance::yukawa;
using resonance::BoundaryTrace;
using resonance::CertificationError;
using resonance::Enclosure;

TEST_CASE("closed forms at r = 1 match the exponential-integral expressions") {
    // omega_1(1) = E_2(1), omega_1'(1) = -E_1(1)
    const OmegaValue w1 = omega(1, 1.0);
    CHECK(std::abs(w1.value.mid() - 0.148496) < 1e-5);
    CHECK(std::abs(w1.derivative.mid() + 0.219384) < 1e-5);
    CHECK(w1.value.width() < 1e-11);

    // omega_2(1) = E_2(2) + E_1(2) - e^{-1} E_1(1), omega_2'(1) = e^{-1} E_1(1) - 2 E_1(2)
    const OmegaValue w2 = omega(2, 1.0);
    CHECK(std::abs(w2.value.mid() - 0.00572793) < 1e-7);
    CHECK(std::abs(w2.derivative.mid() + 0.0170942) < 1e-6);
    CHECK(w2.value.width() < 1e-10);
}

TEST_CASE("a-priori bounds hold for every order and radius") {
    for (int k = 1; k <= 6; ++k) {
        for (double r : {1.0, 2.0, 5.0}) {
            CAPTURE(k);
            CAPTURE(r);
            const OmegaValue w = omega(k, r);
            CHECK(w.value.lo > 0.0);
            CHECK(w.value.hi <= omega_value_bound(k, r));
            CHECK(w.derivative.hi < 0.0);
            CHECK(w.derivative.lo >= -omega_derivative_bound(k, r));
        }
    }
}

TEST_CASE("quadrature table overlaps the closed forms") {
    for (int k : {1, 2}) {
        for (double r : {1.0, 2.0, 5.0}) {
            CAPTURE(k);
            CAPTURE(r);
            const OmegaValue closed = omega(k, r);
            const OmegaValue quad = omega_quadrature(k, r);
            CHECK_NOTHROW(Enclosure::meet(closed.value, quad.value));
            CHECK_NOTHROW(Enclosure::meet(closed.derivative, quad.derivative));
            CHECK(quad.value.width() < 1e-4);
        }
    }
}

TEST_CASE("beyond the table the a-priori bound takes over") {
    const OmegaValue w = omega(4, 50.0);
    CHECK(w.value.lo == 0.0);
    CHECK(w.value.hi <= omega_value_bound(4, 50.0));
    CHECK(w.derivative.hi == 0.0);
}

TEST_CASE("omega domain guards") {
    CHECK_THROWS_AS(omega(0, 2.0), std::domain_error);
    CHECK_THROWS_AS(omega(3, 0.5), std::domain_error);
    CHECK_THROWS_AS(omega(8, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(omega_quadrature(0, 2.0), std::domain_error);
}

TEST_CASE("exterior trace") {
    SUBCASE("kappa = 0 is the exact r^{2-n} trace for n = 3") {
        const BoundaryTrace t = u_ext_trace(mpq_class(0), 2);
        CHECK(t.value.lo == 1.0);
        CHECK(t.value.hi == 1.0);
        CHECK(t.derivative.lo == -1.0);
        CHECK(t.derivative.hi == -1.0);
    }
    SUBCASE("consecutive orders nest") {
        mpq_class kappa(42, 25);
        kappa.canonicalize();
        Enclosure prev_v, prev_d;
        for (int K = 1; K <= 7; ++K) {
            const BoundaryTrace t = u_ext_trace(kappa, K);
            if (K > 1) {
                CHECK(prev_v.contains(t.value));
                CHECK(prev_d.contains(t.derivative));
                CHECK(t.value.width() <= prev_v.width());
            }
            prev_v = t.value;
            prev_d = t.derivative;
        }
        CHECK(prev_v.width() < 1e-4);
        // positive decaying solution: value in (0,1), derivative negative
        CHECK(prev_v.lo > 0.0);
        CHECK(prev_v.hi < 1.0);
        CHECK(prev_d.hi < 0.0);
    }
    SUBCASE("certification window ends near kappa E_2(1) = 1") {
        CHECK_NOTHROW(u_ext_trace(mpq_class(6), 3));
        CHECK_THROWS_AS(u_ext_trace(mpq_class(7), 3), CertificationError);
    }
    SUBCASE("order and sign guards") {
        CHECK_THROWS_AS(u_ext_trace(mpq_class(1), 0), std::invalid_argument);
        CHECK_THROWS_AS(u_ext_trace(mpq_class(1), 8), std::invalid_argument);
        CHECK_THROWS_AS(u_ext_trace(mpq_class(-1), 2), std::domain_error);
    }
}

TEST_CASE("exterior value at a general radius") {
    SUBCASE("kappa = 0 gives 1/r") {
        for (double r : {1.0, 2.5, 10.0}) {
            const Enclosure e = u_ext_value(mpq_class(0), r, 3);
            CHECK(e.contains(1.0 / r));
            CHECK(e.width() < 1e-14);
        }
    }
    SUBCASE("r = 1 reproduces the trace value") {
        mpq_class kappa(42, 25);
        kappa.canonicalize();
        const Enclosure a = u_ext_value(kappa, 1.0, 3);
        const BoundaryTrace t = u_ext_trace(kappa, 3);
        CHECK(a.lo == doctest::Approx(t.value.lo).epsilon(1e-14));
        CHECK(a.hi == doctest::Approx(t.value.hi).epsilon(1e-14));
    }
    SUBCASE("positive and decreasing in r") {
        const mpq_class kappa(1);
        double prev_lo = 2.0;
        for (double r : {1.0, 1.5, 3.0, 10.0, 40.0}) {
            const Enclosure e = u_ext_value(kappa, r, 3);
            CHECK(e.lo > 0.0);
            CHECK(e.hi < prev_lo);
            prev_lo = e.lo;
        }
    }
}
