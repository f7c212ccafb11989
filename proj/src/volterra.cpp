#include "resonance/volterra.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "resonance/errors.hpp"
#include "resonance/variational.hpp"

namespace resonance::volterra {

namespace {

// integral_a^b s^p ds, p possibly -1 (log case appears for n = 3, 4 exterior
// moments).
double power_moment(double a, double b, double p) {
    if (p == -1.0) return std::log(b / a);
    return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

// integral over [a, b] of (f_a + slope*(s - a)) * s^p ds for the linear
// interpolant of f.
double panel_moment(double a, double b, double f_a, double f_b, double p) {
    const double slope = (f_b - f_a) / (b - a);
    const double m0 = power_moment(a, b, p);
    const double m1 = power_moment(a, b, p + 1);
    return f_a * m0 + slope * (m1 - a * m0);
}

struct PicardOutcome {
    std::vector<double> w;
    int iterations = 0;
    double residual = 0.0;
};

}  // namespace

VolterraGrid VolterraGrid::log_uniform(double r_min, double r_max, int count, int n) {
    if (!(r_min > 0) || !(r_max > r_min)) throw std::invalid_argument("grid: need 0 < r_min < r_max");
    if (count < 8) throw std::invalid_argument("grid: need at least 8 nodes");
    if (n < 3) throw std::domain_error("grid: dimension must be >= 3");
    VolterraGrid g;
    g.n = n;
    g.nodes.resize(count);
    const double la = std::log(r_min), lb = std::log(r_max);
    for (int i = 0; i < count; ++i)
        g.nodes[i] = std::exp(la + (lb - la) * i / (count - 1));
    g.nodes.front() = r_min;
    g.nodes.back() = r_max;
    return g;
}

VolterraGrid interior_grid(int count, int n, double r_min) {
    return VolterraGrid::log_uniform(r_min, 1.0, count, n);
}

VolterraGrid exterior_grid(const RadialPotential& V, int count, int n, double tail_tol) {
    boost::math::quadrature::exp_sinh<double> quad;
    double r_max = 32.0;
    for (; r_max <= 1 << 20; r_max *= 2) {
        const double tail = quad.integrate(
            [&](double t) { return (t + r_max) * std::abs(V(t + r_max)); }, 1e-8);
        if (tail <= tail_tol) break;
    }
    if (r_max > 1 << 20)
        throw PrecisionError("exterior_grid: tail integral does not reach tolerance");
    return VolterraGrid::log_uniform(1.0, r_max, count, n);
}

SolveResult solve_interior(const RadialPotential& V, int n, double kappa,
                           const VolterraGrid& grid, double tol, int max_iter) {
    if (n < 3) throw std::domain_error("solve_interior: dimension must be >= 3");
    if (std::abs(grid.nodes.back() - 1.0) > 1e-14)
        throw std::invalid_argument("solve_interior: grid must end at r = 1");
    const auto& r = grid.nodes;
    const size_t N = r.size();
    const double p = n - 2;

    std::vector<double> sv(N);  // s V(s) at the nodes, fixed across iterations
    for (size_t i = 0; i < N; ++i) sv[i] = r[i] * V(r[i]);

    std::vector<double> rp(N);  // r^{n-2}
    for (size_t i = 0; i < N; ++i) rp[i] = std::pow(r[i], p);

    // One Picard application: w_out(r_i) = -kappa/(n-2) (A_i - B_i / r_i^{n-2})
    // with A = integral_0^r phi, B = integral_0^r phi s^{n-2}, phi = sV(1+w).
    std::vector<double> phi(N), A(N), B(N);
    auto apply = [&](const std::vector<double>& w, std::vector<double>& out) {
        for (size_t i = 0; i < N; ++i) phi[i] = sv[i] * (1.0 + w[i]);
        // Starter panel [0, r_0]: extrapolate phi ~ C s^q from the first two
        // nodes (admissible V makes phi integrable at 0).
        double q = 0.0;
        if (phi[0] != 0.0 && phi[1] / phi[0] > 0.0)
            q = std::clamp(std::log(phi[1] / phi[0]) / std::log(r[1] / r[0]), -0.9, 8.0);
        A[0] = phi[0] * r[0] / (q + 1);
        B[0] = phi[0] * std::pow(r[0], p + 1) / (q + p + 1);
        for (size_t i = 1; i < N; ++i) {
            A[i] = A[i - 1] + panel_moment(r[i - 1], r[i], phi[i - 1], phi[i], 0.0);
            B[i] = B[i - 1] + panel_moment(r[i - 1], r[i], phi[i - 1], phi[i], p);
        }
        const double c = -kappa / p;
        for (size_t i = 0; i < N; ++i) out[i] = c * (A[i] - B[i] / rp[i]);
    };

    PicardOutcome pic;
    pic.w.assign(N, 0.0);
    std::vector<double> next(N);
    for (pic.iterations = 1; pic.iterations <= max_iter; ++pic.iterations) {
        apply(pic.w, next);
        double diff = 0.0;
        for (size_t i = 0; i < N; ++i) diff = std::max(diff, std::abs(next[i] - pic.w[i]));
        pic.w.swap(next);
        if (diff < tol) break;
        if (pic.iterations == max_iter)
            throw ConvergenceError("solve_interior: Picard did not converge");
    }
    apply(pic.w, next);
    for (size_t i = 0; i < N; ++i)
        pic.residual = std::max(pic.residual, std::abs(next[i] - pic.w[i]));

    SolveResult res;
    res.value = 1.0 + pic.w.back();
    res.derivative = -kappa * B.back();  // r^{n-1} w' = -kappa B, at r = 1
    res.residual = pic.residual;
    res.iterations = pic.iterations;
    res.flagged = pic.residual > 10 * tol;
    const double ev = 10 * pic.residual + 1e-15;
    const double ed = ev * (1.0 + std::abs(kappa));
    res.trace = {Enclosure(res.value - ev, res.value + ev),
                 Enclosure(res.derivative - ed, res.derivative + ed),
                 BoundaryTrace::Side::interior};
    res.w = std::move(pic.w);
    return res;
}

SolveResult solve_exterior(const RadialPotential& V, int n, double kappa,
                           const VolterraGrid& grid, double tol, int max_iter) {
    if (n < 3) throw std::domain_error("solve_exterior: dimension must be >= 3");
    if (std::abs(grid.nodes.front() - 1.0) > 1e-14)
        throw std::invalid_argument("solve_exterior: grid must start at r = 1");
    const auto& r = grid.nodes;
    const size_t N = r.size();
    const double p = n - 2;

    std::vector<double> sv(N);
    for (size_t i = 0; i < N; ++i) sv[i] = r[i] * V(r[i]);
    std::vector<double> rp(N);
    for (size_t i = 0; i < N; ++i) rp[i] = std::pow(r[i], p);

    // w(r_i) = -kappa/(n-2) (C_i - r_i^{n-2} D_i), C = integral_r^inf phi,
    // D = integral_r^inf phi s^{2-n}; the tail beyond r_max is below the grid
    // builder's tail tolerance and is dropped.
    std::vector<double> phi(N), C(N), D(N);
    auto apply = [&](const std::vector<double>& w, std::vector<double>& out) {
        for (size_t i = 0; i < N; ++i) phi[i] = sv[i] * (1.0 + w[i]);
        C[N - 1] = 0.0;
        D[N - 1] = 0.0;
        for (size_t i = N - 1; i-- > 0;) {
            C[i] = C[i + 1] + panel_moment(r[i], r[i + 1], phi[i], phi[i + 1], 0.0);
            D[i] = D[i + 1] + panel_moment(r[i], r[i + 1], phi[i], phi[i + 1], -p);
        }
        const double c = -kappa / p;
        for (size_t i = 0; i < N; ++i) out[i] = c * (C[i] - rp[i] * D[i]);
    };

    PicardOutcome pic;
    pic.w.assign(N, 0.0);
    std::vector<double> next(N);
    for (pic.iterations = 1; pic.iterations <= max_iter; ++pic.iterations) {
        apply(pic.w, next);
        double diff = 0.0;
        for (size_t i = 0; i < N; ++i) diff = std::max(diff, std::abs(next[i] - pic.w[i]));
        pic.w.swap(next);
        if (diff < tol) break;
        if (pic.iterations == max_iter)
            throw ConvergenceError("solve_exterior: Picard did not converge");
    }
    apply(pic.w, next);
    for (size_t i = 0; i < N; ++i)
        pic.residual = std::max(pic.residual, std::abs(next[i] - pic.w[i]));

    SolveResult res;
    res.value = 1.0 + pic.w.front();
    // u = r^{2-n}(1+w): u'(1) = (2-n)(1+w(1)) + w'(1) and w'(1) = kappa D(1).
    res.derivative = (2.0 - n) * res.value + kappa * D.front();
    res.residual = pic.residual;
    res.iterations = pic.iterations;
    res.flagged = pic.residual > 10 * tol;
    const double ev = 10 * pic.residual + 1e-15;
    const double ed = ev * (1.0 + std::abs(kappa) + (n - 2));
    res.trace = {Enclosure(res.value - ev, res.value + ev),
                 Enclosure(res.derivative - ed, res.derivative + ed),
                 BoundaryTrace::Side::exterior};
    res.w = std::move(pic.w);
    return res;
}

namespace {

WronskianEstimate wronskian_on_grids(const RadialPotential& V, int n, double kappa,
                                     const VolterraGrid& gi, const VolterraGrid& ge) {
    const SolveResult in = solve_interior(V, n, kappa, gi);
    const SolveResult ex = solve_exterior(V, n, kappa, ge);
    WronskianEstimate est;
    est.kappa = kappa;
    est.value = ex.value * in.derivative - in.value * ex.derivative;
    const double e_in = in.trace.value.width() / 2, e_ind = in.trace.derivative.width() / 2;
    const double e_ex = ex.trace.value.width() / 2, e_exd = ex.trace.derivative.width() / 2;
    est.error_estimate = std::abs(ex.value) * e_ind + std::abs(in.derivative) * e_ex +
                         std::abs(in.value) * e_exd + std::abs(ex.derivative) * e_in;
    return est;
}

}  // namespace

WronskianEstimate general_wronskian(const RadialPotential& V, int n, double kappa,
                                    int grid_size) {
    const VolterraGrid gi = interior_grid(grid_size, n);
    const VolterraGrid ge = exterior_grid(V, grid_size, n);
    return wronskian_on_grids(V, n, kappa, gi, ge);
}

ResonanceSearch find_first_resonance_general(const RadialPotential& V, int n, double search_hi,
                                             double tol, int grid_size) {
    if (!V.sign_info().nonneg)
        throw std::invalid_argument(
            "find_first_resonance_general: requires V >= 0 (the smallest-zero "
            "characterization does not cover signed potentials)");
    if (!(search_hi > 0) || !(tol > 0))
        throw std::invalid_argument("find_first_resonance_general: need search_hi, tol > 0");

    const VolterraGrid gi = interior_grid(grid_size, n);
    const VolterraGrid ge = exterior_grid(V, grid_size, n);

    // W_V(0) = n-2 > 0; walk a refining kappa ladder until the first sign
    // change. Volterra structure makes W entire in kappa, so on a fine enough
    // ladder the first negative sample brackets the first zero.
    auto first_crossing = [&](const VolterraGrid& a, const VolterraGrid& b,
                              double& lo, double& hi) {
        for (int points : {64, 256}) {
            double prev = 0.0;  // treat kappa=0 as positive sign anchor
            for (int j = 1; j <= points; ++j) {
                const double k = search_hi * j / points;
                const double w = wronskian_on_grids(V, n, k, a, b).value;
                if (w < 0) {
                    lo = prev;
                    hi = k;
                    return true;
                }
                prev = k;
            }
        }
        return false;
    };

    auto bisect = [&](const VolterraGrid& a, const VolterraGrid& b, double lo, double hi) {
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (wronskian_on_grids(V, n, mid, a, b).value > 0)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };

    ResonanceSearch out;
    double lo = 0, hi = 0;
    if (!first_crossing(gi, ge, lo, hi)) {
        out.outcome = "no resonance found in range";
        return out;
    }
    out.kappa_estimate = bisect(gi, ge, lo, hi);

    const VolterraGrid gi2 = interior_grid(2 * grid_size, n);
    const VolterraGrid ge2 = exterior_grid(V, 2 * grid_size, n);
    const double refined = bisect(gi2, ge2, std::max(0.0, lo - tol), hi + tol);
    out.grid_sensitivity = std::abs(refined - out.kappa_estimate);

    out.found = true;
    out.outcome = "found";
    const double pad = tol + out.grid_sensitivity + 1e-12;
    out.report.n = n;
    out.report.potential = V.describe();
    out.report.kappa_star = Enclosure(out.kappa_estimate - pad, out.kappa_estimate + pad);
    out.report.method = Method::volterra;
    out.report.classification = variational::classify_state(n, V.sign_info());
    out.report.certified = false;
    out.report.diagnostics = {{"grid_size", static_cast<double>(grid_size)},
                              {"grid_sensitivity", out.grid_sensitivity},
                              {"bisection_tol", tol},
                              {"search_hi", search_hi}};
    return out;
}

}  // namespace resonance::volterra
