#pragma once

#include <gmpxx.h>

#include "resonance/alpha.hpp"
#include "resonance/enclosure.hpp"

namespace resonance::yukawa {

struct OmegaValue {
    int k;
    double r;
    Enclosure value;       // omega_k(r) >= 0
    Enclosure derivative;  // omega_k'(r) <= 0
};

// A-priori bounds on the expansion coefficients (outward-rounded):
//   0 < omega_k(r) <= e^{-kr}/(k!)^2,   -e^{-kr}/(k!(k-1)!) < omega_k'(r) < 0.
double omega_value_bound(int k, double r);
double omega_derivative_bound(int k, double r);

// omega_k(r) and omega_k'(r) for r >= 1. Closed forms for k = 1, 2
// (exponential integrals); certified midpoint/trapezoid quadrature of the
// defining double integral for 3 <= k <= 7 via a cached table on [1, 33],
// with the a-priori bound covering r beyond the table.
OmegaValue omega(int k, double r);

// Quadrature path without the closed-form shortcut (k >= 1; the k = 1 level
// integrates from omega_0 == 1); used to check that the table machinery
// overlaps the closed forms.
OmegaValue omega_quadrature(int k, double r);

// Leibniz enclosures of u_ext(1;kappa) and u_ext'(1;kappa) from the exterior
// expansion u_ext(r) = r^{-1}(1 + sum_k (-1)^k kappa^k omega_k(r)), truncated
// at order K (1 <= K <= 7). Valid once kappa * E_2(1) < 1 is certified, which
// covers kappa in (0, 6.7); throws CertificationError beyond that.
BoundaryTrace u_ext_trace(const mpq_class& kappa, int K);

// Same expansion evaluated at a general radius r >= 1:
//   u_ext(r) = r^{-1}(1 + sum_k (-1)^k kappa^k omega_k(r)).
Enclosure u_ext_value(const mpq_class& kappa, double r, int K);

inline constexpr int kMaxExteriorOrder = 7;

}  // namespace resonance::yukawa
