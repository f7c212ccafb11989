#include "resonance/variational.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

#include "resonance/errors.hpp"

namespace resonance::variational {

namespace {

// integral_a^b s^p ds for nonnegative integer-valued p (n >= 3 keeps all
// exact mass moments nonnegative).
double power_moment(double a, double b, double p) {
    return (std::pow(b, p + 1) - std::pow(a, p + 1)) / (p + 1);
}

// Number of pencil eigenvalues of B u = mu A u below lambda = number of
// negative pivots in the LDL^T factorization of B - lambda A (Sylvester
// inertia; A positive definite).
int eigenvalues_below(const Tridiag& B, const Tridiag& A, double lambda) {
    const size_t m = B.diag.size();
    int count = 0;
    double d = B.diag[0] - lambda * A.diag[0];
    if (std::abs(d) < 1e-300) d = -1e-300;
    if (d < 0) ++count;
    for (size_t i = 1; i < m; ++i) {
        const double e = B.off[i - 1] - lambda * A.off[i - 1];
        d = (B.diag[i] - lambda * A.diag[i]) - e * e / d;
        if (std::abs(d) < 1e-300) d = -1e-300;
        if (d < 0) ++count;
    }
    return count;
}

// Largest eigenvalue of the symmetric pencil (B, A), A positive definite,
// via inertia bisection. Throws when every eigenvalue is <= 0.
double largest_pencil_eigenvalue(const Tridiag& B, const Tridiag& A) {
    const int m = static_cast<int>(B.diag.size());
    if (eigenvalues_below(B, A, 1e-14) == m)
        throw std::invalid_argument("pencil eigenvalue: no positive eigenvalue "
                                    "(V not somewhere positive on the grid)");
    double hi = 1.0;
    int guard = 0;
    while (eigenvalues_below(B, A, hi) < m) {
        hi *= 2;
        if (++guard > 1024) throw PrecisionError("pencil eigenvalue: upper bound search diverged");
    }
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (eigenvalues_below(B, A, mid) < m)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// All LDL^T pivots positive <=> positive definite.
bool positive_definite(const Tridiag& T) {
    const size_t m = T.diag.size();
    double d = T.diag[0];
    if (!(d > 0)) return false;
    for (size_t i = 1; i < m; ++i) {
        const double e = T.off[i - 1];
        d = T.diag[i] - e * e / d;
        if (!(d > 0)) return false;
    }
    return true;
}

}  // namespace

RadialDiscretization RadialDiscretization::log_uniform(double r_min, double r_max,
                                                       int intervals, int n) {
    if (!(r_min > 0) || !(r_max > r_min))
        throw std::invalid_argument("discretization: need 0 < r_min < r_max");
    if (intervals < 4) throw std::invalid_argument("discretization: need >= 4 intervals");
    if (n < 3) throw std::domain_error("discretization: dimension must be >= 3");
    RadialDiscretization d;
    d.n = n;
    d.nodes.resize(intervals + 1);
    const double la = std::log(r_min), lb = std::log(r_max);
    for (int i = 0; i <= intervals; ++i)
        d.nodes[i] = std::exp(la + (lb - la) * i / intervals);
    d.nodes.front() = r_min;
    d.nodes.back() = r_max;
    return d;
}

Tridiag assemble_stiffness(const RadialDiscretization& disc) {
    const int m = disc.interior_dofs();
    if (m < 1) throw std::invalid_argument("assemble_stiffness: no interior dofs");
    const auto& r = disc.nodes;
    const int n = disc.n;
    Tridiag A{std::vector<double>(m, 0.0), std::vector<double>(m - 1, 0.0)};
    // Element [r_i, r_{i+1}]: integral of (1/h)^2 r^{n-1} dr, shared by the
    // two adjacent hats with opposite slopes.
    for (size_t i = 0; i + 1 < r.size(); ++i) {
        const double h = r[i + 1] - r[i];
        const double k = power_moment(r[i], r[i + 1], n - 1) / (h * h);
        const int left = static_cast<int>(i) - 1, right = static_cast<int>(i);
        if (left >= 0) A.diag[left] += k;
        if (right < m) A.diag[right] += k;
        if (left >= 0 && right < m) A.off[left] -= k;
    }
    return A;
}

Tridiag assemble_potential_mass(const RadialPotential& V, const RadialDiscretization& disc) {
    const int m = disc.interior_dofs();
    if (m < 1) throw std::invalid_argument("assemble_potential_mass: no interior dofs");
    const auto& r = disc.nodes;
    const int n = disc.n;
    Tridiag B{std::vector<double>(m, 0.0), std::vector<double>(m - 1, 0.0)};
    using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
    for (size_t i = 0; i + 1 < r.size(); ++i) {
        const double a = r[i], b = r[i + 1], h = b - a;
        auto left = [a, b, h](double s) { return (b - s) / h; };
        auto right = [a, h](double s) { return (s - a) / h; };
        auto weight = [&V, n](double s) { return V(s) * std::pow(s, n - 1); };
        const double ll =
            quad::integrate([&](double s) { return weight(s) * left(s) * left(s); }, a, b, 8, 1e-12);
        const double lr =
            quad::integrate([&](double s) { return weight(s) * left(s) * right(s); }, a, b, 8, 1e-12);
        const double rr =
            quad::integrate([&](double s) { return weight(s) * right(s) * right(s); }, a, b, 8, 1e-12);
        const int li = static_cast<int>(i) - 1, ri = static_cast<int>(i);
        if (li >= 0) B.diag[li] += ll;
        if (ri < m) B.diag[ri] += rr;
        if (li >= 0 && ri < m) B.off[li] += lr;
    }
    return B;
}

Tridiag assemble_hardy_mass(const RadialDiscretization& disc) {
    const int m = disc.interior_dofs();
    if (m < 1) throw std::invalid_argument("assemble_hardy_mass: no interior dofs");
    const auto& r = disc.nodes;
    const int n = disc.n;
    Tridiag H{std::vector<double>(m, 0.0), std::vector<double>(m - 1, 0.0)};
    // integral of hat_a hat_b r^{n-3} dr with linear hats: expand the product
    // (p + q s)(u + v s) s^{n-3} into exact power moments.
    for (size_t i = 0; i + 1 < r.size(); ++i) {
        const double a = r[i], b = r[i + 1], h = b - a;
        // left hat = (b - s)/h, right hat = (s - a)/h
        const double m0 = power_moment(a, b, n - 3);
        const double m1 = power_moment(a, b, n - 2);
        const double m2 = power_moment(a, b, n - 1);
        const double ll = (b * b * m0 - 2 * b * m1 + m2) / (h * h);
        const double rr = (a * a * m0 - 2 * a * m1 + m2) / (h * h);
        const double lr = (-a * b * m0 + (a + b) * m1 - m2) / (h * h);
        const int li = static_cast<int>(i) - 1, ri = static_cast<int>(i);
        if (li >= 0) H.diag[li] += ll;
        if (ri < m) H.diag[ri] += rr;
        if (li >= 0 && ri < m) H.off[li] += lr;
    }
    return H;
}

VariationalResult variational_J(const RadialPotential& V, int n,
                                const RadialDiscretization& disc) {
    if (n != disc.n) throw std::invalid_argument("variational_J: dimension mismatch with grid");
    const Tridiag A = assemble_stiffness(disc);
    const Tridiag B = assemble_potential_mass(V, disc);
    VariationalResult res;
    res.J_estimate = largest_pencil_eigenvalue(B, A);
    res.kappa_estimate = 1.0 / res.J_estimate;
    res.refinement_history = {{disc.interior_dofs(), res.J_estimate}};
    return res;
}

VariationalResult variational_J_refined(const RadialPotential& V, int n, int coarse_intervals,
                                        int levels, double r_min, double r_max) {
    if (levels < 1) throw std::invalid_argument("variational_J_refined: need >= 1 level");
    VariationalResult out;
    int intervals = coarse_intervals;
    for (int l = 0; l < levels; ++l, intervals *= 2) {
        const auto disc = RadialDiscretization::log_uniform(r_min, r_max, intervals, n);
        const auto step = variational_J(V, n, disc);
        out.J_estimate = step.J_estimate;
        out.kappa_estimate = step.kappa_estimate;
        out.refinement_history.emplace_back(disc.interior_dofs(), step.J_estimate);
    }
    return out;
}

VariationalResult hardy_variational_J(double kappa1, const RadialPotential& V2, int n,
                                      const RadialDiscretization& disc) {
    if (n != disc.n)
        throw std::invalid_argument("hardy_variational_J: dimension mismatch with grid");
    const double hardy_cap = (n - 2) * (n - 2) / 4.0;
    if (kappa1 < 0 || kappa1 >= hardy_cap)
        throw std::domain_error("hardy_variational_J: kappa1 must lie in [0, (n-2)^2/4)");
    const Tridiag A = assemble_stiffness(disc);
    const Tridiag B2 = assemble_potential_mass(V2, disc);
    Tridiag S = A;
    if (kappa1 > 0) {
        const Tridiag H = assemble_hardy_mass(disc);
        for (size_t i = 0; i < S.diag.size(); ++i) S.diag[i] -= kappa1 * H.diag[i];
        for (size_t i = 0; i < S.off.size(); ++i) S.off[i] -= kappa1 * H.off[i];
        if (!positive_definite(S))
            throw std::invalid_argument(
                "hardy_variational_J: shifted form lost positive definiteness "
                "(kappa1 too close to the Hardy constant for this grid)");
    }
    VariationalResult res;
    res.J_estimate = largest_pencil_eigenvalue(B2, S);
    res.kappa_estimate = 1.0 / res.J_estimate;
    res.refinement_history = {{disc.interior_dofs(), res.J_estimate}};
    return res;
}

double hardy_quotient(const RadialDiscretization& disc) {
    const Tridiag A = assemble_stiffness(disc);
    const Tridiag H = assemble_hardy_mass(disc);
    return largest_pencil_eigenvalue(H, A);
}

double comparison_bound(const Enclosure& kappa_star_ref, double C0) {
    if (!(C0 > 0)) throw std::domain_error("comparison_bound: C0 must be positive");
    return next_down(kappa_star_ref.lo / C0);
}

Classification classify_state(int n, const SignInfo& info) {
    if (n < 3) throw std::domain_error("classify_state: dimension must be >= 3");
    if (!info.nonneg && !(info.neg_decay_b > 2)) return Classification::outside_hypotheses;
    return n <= 4 ? Classification::resonance_not_L2 : Classification::eigenstate_L2;
}

}  // namespace resonance::variational
