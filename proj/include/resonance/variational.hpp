#pragma once

#include <utility>
#include <vector>

#include "resonance/enclosure.hpp"
#include "resonance/potential.hpp"

namespace resonance::variational {

// Conforming piecewise-linear radial discretization: hat functions on a
// log-uniform grid, clamped to zero at both artificial endpoints, measure
// r^{n-1} dr. Trial space is a subspace of H^1_0, so discrete Rayleigh
// quotients underestimate the continuum supremum.
struct RadialDiscretization {
    std::vector<double> nodes;  // strictly increasing, first/last are clamped
    int n = 3;

    static RadialDiscretization log_uniform(double r_min, double r_max, int intervals, int n);
    int interior_dofs() const { return static_cast<int>(nodes.size()) - 2; }
};

// Symmetric tridiagonal matrix on the interior dofs.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;  // off[i] couples dof i and i+1
};

// Dirichlet stiffness integral u'^2 r^{n-1} dr (exact per element) and the
// potential / Hardy mass matrices. Exposed for the assembly-identity tests.
Tridiag assemble_stiffness(const RadialDiscretization& disc);
Tridiag assemble_potential_mass(const RadialPotential& V, const RadialDiscretization& disc);
Tridiag assemble_hardy_mass(const RadialDiscretization& disc);  // V = 1/r^2, exact

struct VariationalResult {
    double J_estimate = 0.0;       // largest eigenvalue of B u = J A u
    double kappa_estimate = 0.0;   // 1 / J_estimate, an upper bound for kappa_*
    std::vector<std::pair<int, double>> refinement_history;  // (interior dofs, J)
};

// Discrete Rayleigh quotient sup integral(V u^2) / integral(u'^2), both with
// the r^{n-1} weight. J_estimate <= J(V), hence kappa_estimate >= kappa_*(V).
VariationalResult variational_J(const RadialPotential& V, int n,
                                const RadialDiscretization& disc);

// Nested refinement: interval counts coarse, 2*coarse, ... (levels entries);
// node-nested on the log-uniform family, so J is nondecreasing level to level.
// The outer cutoff clamps the slowly decaying tail of the maximizer, leaving a
// bias of order 1/r_max that pitch refinement cannot see; probe it by
// re-solving with a different r_max.
VariationalResult variational_J_refined(const RadialPotential& V, int n, int coarse_intervals,
                                        int levels, double r_min = 1e-6, double r_max = 2000.0);

// Hardy-shifted quotient: largest eigenvalue of B2 u = J (A - kappa1 H) u,
// kappa1 in [0, (n-2)^2/4); kappa1 = 0 reduces exactly to variational_J.
// Throws if the shifted denominator fails its positive-definiteness check.
VariationalResult hardy_variational_J(double kappa1, const RadialPotential& V2, int n,
                                      const RadialDiscretization& disc);

// Largest eigenvalue of the pencil (H, A): the discrete Hardy-Rayleigh
// quotient, strictly below the continuum constant 4/(n-2)^2.
double hardy_quotient(const RadialDiscretization& disc);

// kappa_*(V) >= lo(kappa_star_ref)/C0 whenever V <= C0 * V_ref pointwise
// (the caller asserts the domination); rounded down to stay a lower bound.
double comparison_bound(const Enclosure& kappa_star_ref, double C0);

// Dimension dichotomy for the state at kappa_*: not square-integrable for
// n in {3,4}, square-integrable for n >= 5; signed potentials additionally
// need declared V_- decay exponent b > 2 to be covered at all.
Classification classify_state(int n, const SignInfo& info);

}  // namespace resonance::variational
