#pragma once

#include <vector>

#include "resonance/potential.hpp"
#include "resonance/trace.hpp"

namespace resonance::volterra {

// Log-uniform radial grid for one side of the matching radius r = 1.
struct VolterraGrid {
    std::vector<double> nodes;  // strictly increasing; endpoints included
    int n = 3;                  // dimension

    static VolterraGrid log_uniform(double r_min, double r_max, int count, int n);
};

// Grid covering (0, 1] down to r_min.
VolterraGrid interior_grid(int count, int n, double r_min = 1e-8);
// Grid covering [1, r_max], r_max grown until integral_{r_max}^inf r|V| <= tail_tol.
VolterraGrid exterior_grid(const RadialPotential& V, int count, int n, double tail_tol = 1e-12);

// Non-certified solve result. trace carries value +/- the residual-based
// error estimate as an interval; `flagged` marks residuals above threshold.
struct SolveResult {
    BoundaryTrace trace;
    double value = 0.0;       // u(1)
    double derivative = 0.0;  // u'(1)
    double residual = 0.0;    // sup-norm residual of the integral equation
    int iterations = 0;
    bool flagged = false;
    std::vector<double> w;    // fixed-point unknown on the grid nodes
};

// Interior solution u = 1 + w on (0, 1], w solving
//   w(r) = -kappa/(n-2) * integral_0^r s V(s) (1+w(s)) (r^{n-2}-s^{n-2})/r^{n-2} ds,
// by Picard iteration with the kernel integrated exactly against the
// piecewise-linear interpolant of s V(s)(1+w(s)).
SolveResult solve_interior(const RadialPotential& V, int n, double kappa,
                           const VolterraGrid& grid, double tol = 1e-12, int max_iter = 200);

// Exterior solution u = r^{2-n}(1 + w) on [1, r_max), analogous fixed point
//   w(r) = -kappa/(n-2) * integral_r^inf s V(s) (1+w(s)) (s^{n-2}-r^{n-2})/s^{n-2} ds.
SolveResult solve_exterior(const RadialPotential& V, int n, double kappa,
                           const VolterraGrid& grid, double tol = 1e-12, int max_iter = 200);

struct WronskianEstimate {
    double value = 0.0;
    double error_estimate = 0.0;  // propagated from the two solve residuals
    double kappa = 0.0;
};

// W_V(kappa) = u_ext(1) u_int'(1) - u_int(1) u_ext'(1) on freshly built grids
// of `grid_size` nodes per side.
WronskianEstimate general_wronskian(const RadialPotential& V, int n, double kappa,
                                    int grid_size = 2048);

struct ResonanceSearch {
    bool found = false;
    ResonanceReport report;      // meaningful when found
    double kappa_estimate = 0.0;
    double grid_sensitivity = 0.0;  // |estimate - doubled-grid estimate|
    std::string outcome;            // "found" or "no resonance found in range"
};

// First sign change of W_V on (0, search_hi], bisected to tol, with a
// doubled-grid rerun for sensitivity. Requires V >= 0 (first-zero
// characterization needs it); signed V is refused with invalid_argument.
ResonanceSearch find_first_resonance_general(const RadialPotential& V, int n, double search_hi,
                                             double tol, int grid_size = 2048);

}  // namespace resonance::volterra
