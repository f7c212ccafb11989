#pragma once

#include "resonance/enclosure.hpp"

namespace resonance::expint {

// Enclosure of E_nu(r) = \int_1^\infty e^{-r s} s^{-nu} ds, integer nu >= 1.
// E_1 by power series (r <= 1) or Stieltjes continued fraction (r > 1);
// higher orders by the recurrence nu*E_{nu+1}(r) = e^{-r} - r*E_nu(r).
// Throws std::domain_error for r <= 0 or nu < 1, PrecisionError if the
// enclosure cannot be tightened to `tol` (absolute width).
Enclosure exp_integral(int nu, double r, double tol = 1e-12);

// E_1 pieces, exposed for tests.
Enclosure e1_series(double r, double tol = 1e-12);              // 0 < r <= 1
Enclosure e1_continued_fraction(double r, double tol = 1e-12);  // r > 1

}  // namespace resonance::expint
