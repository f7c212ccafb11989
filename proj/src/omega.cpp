#include "resonance/omega.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "resonance/errors.hpp"
#include "resonance/expint.hpp"

namespace resonance::yukawa {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

Enclosure omega1_value(double r) { return expint::exp_integral(2, r); }
Enclosure omega1_derivative(double r) { return -expint::exp_integral(1, r); }

Enclosure omega2_value(double r) {
    const Enclosure e1r = expint::exp_integral(1, r);
    const Enclosure e12r = expint::exp_integral(1, 2 * r);
    return exp_enclosure(-2 * r) - exp_enclosure(-r) * e1r + (1.0 - 2.0 * r) * e12r;
}

Enclosure omega2_derivative(double r) {
    return exp_enclosure(-r) * expint::exp_integral(1, r) - 2.0 * expint::exp_integral(1, 2 * r);
}

// ---- certified quadrature table for k >= 3 (and k = 1, 2 on the check path) ----
//
// omega_{k}(r) = \int_r^\infty G_k(s) ds,  G_k(s) = \int_s^\infty f_k(t) dt,
// f_k(t) = (e^{-t}/t) omega_{k-1}(t), and omega_k'(r) = -G_k(r).
//
// All three functions are positive, decreasing and convex on [1, oo)
// (f_k is a product of two positive decreasing convex factors; G and Omega
// gain one more integration each). For convex g on a panel [a, b]:
//   (b-a) g((a+b)/2)  <=  \int_a^b g  <=  (b-a) (g(a)+g(b))/2,
// which yields rigorous two-sided panel bounds. Sums run right-to-left and the
// tail beyond R = 33 is absorbed by the a-priori bounds.
//
// Grid: h0 = 2^-11 on [1, 33]. Level k evaluates f on stride s, builds G on
// stride 2s (panel midpoints fall on the f grid) and Omega on stride 4s
// (midpoints on the G grid). Level 3 sources the closed form omega_2 at
// stride 1; level k+1 sources level k's Omega, quadrupling the stride.

constexpr int kNodesPerUnit = 2048;
constexpr double kH0 = 1.0 / kNodesPerUnit;
constexpr double kRmin = 1.0;
constexpr double kRmax = 33.0;
constexpr int kLastNode = static_cast<int>((kRmax - kRmin) * kNodesPerUnit);  // 65536

double node_r(int i) { return kRmin + i * kH0; }

struct Level {
    int fstride = 1;
    int gstride = 2;
    int ostride = 4;
    std::vector<Enclosure> G;      // G[j] at node j*gstride
    std::vector<Enclosure> Omega;  // Omega[j] at node j*ostride
};

// Integrate enclosures `vals` (at node stride `in_stride`) from each node of
// stride `out_stride = 2*in_stride` out to R, then add `tail` at R.
std::vector<Enclosure> integrate_right_to_left(const std::vector<Enclosure>& vals, int in_stride,
                                               const Enclosure& tail) {
    const int out_stride = 2 * in_stride;
    const int n_out = kLastNode / out_stride + 1;
    const double h = out_stride * kH0;
    std::vector<Enclosure> out(n_out);
    out[n_out - 1] = tail;
    for (int j = n_out - 2; j >= 0; --j) {
        const Enclosure& left = vals[2 * j];
        const Enclosure& mid = vals[2 * j + 1];
        const Enclosure& right = vals[2 * j + 2];
        const double panel_lo = next_down(h * mid.lo);
        const double panel_hi = next_up(0.5 * h * next_up(left.hi + right.hi));
        out[j] = out[j + 1] + Enclosure(panel_lo, panel_hi);
    }
    return out;
}

class OmegaTable {
  public:
    static OmegaTable& instance() {
        static OmegaTable table;
        return table;
    }

    const Level& level(int k) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = levels_.find(k);
        if (it != levels_.end()) return it->second;
        return levels_.emplace(k, build(k)).first->second;
    }

  private:
    Level build(int k) {
        if (k < 1 || k > kMaxExteriorOrder)
            throw std::invalid_argument("OmegaTable: order out of range");
        Level lv;
        if (k <= 3) {
            lv.fstride = 1;
        } else {
            // previous production level's Omega stride
            lv.fstride = prior_ostride(k - 1);
        }
        lv.gstride = 2 * lv.fstride;
        lv.ostride = 4 * lv.fstride;

        const int nf = kLastNode / lv.fstride + 1;
        std::vector<Enclosure> f(nf);
        if (k <= 3) {
            // Seed from omega_0 == 1 (k = 1) or a closed form; level 3 is the
            // first production level and sources omega_2 exactly this way.
            for (int j = 0; j < nf; ++j) {
                const double t = node_r(j * lv.fstride);
                const Enclosure prev = (k == 1)   ? Enclosure::exact(1.0)
                                       : (k == 2) ? omega1_value(t)
                                                  : omega2_value(t);
                f[j] = exp_enclosure(-t) / Enclosure::exact(t) * prev;
            }
        } else {
            const Level& below = level_nolock(k - 1);
            for (int j = 0; j < nf; ++j) {
                const double t = node_r(j * lv.fstride);
                f[j] = exp_enclosure(-t) / Enclosure::exact(t) * below.Omega[j];
            }
        }
        // f_k(t) <= e^{-kt}/((k-1)!)^2 for t >= 1, so the f tail beyond R is
        // at most e^{-kR}/(k ((k-1)!)^2).
        const double fm1 = factorial(k - 1);
        const Enclosure g_tail(0.0, next_up(std::exp(-k * kRmax) / (k * fm1 * fm1) * 1.0000001));
        lv.G = integrate_right_to_left(f, lv.fstride, g_tail);
        const Enclosure o_tail(0.0, next_up(omega_value_bound(k, kRmax)));
        lv.Omega = integrate_right_to_left(lv.G, lv.gstride, o_tail);
        return lv;
    }

    int prior_ostride(int k) {
        // production strides: level 3 -> 4, each next level quadruples
        int s = 4;
        for (int j = 3; j < k; ++j) s *= 4;
        return s;
    }

    const Level& level_nolock(int k) {
        auto it = levels_.find(k);
        if (it != levels_.end()) return it->second;
        return levels_.emplace(k, build(k)).first->second;
    }

    std::mutex mutex_;
    std::map<int, Level> levels_;
};

// Sandwich a decreasing positive function given its enclosures on stride-
// aligned nodes: g(r) is between the node enclosures on either side.
Enclosure sample_decreasing(const std::vector<Enclosure>& vals, int stride, double r) {
    const double x = (r - kRmin) * kNodesPerUnit / stride;
    const int j_left = static_cast<int>(std::floor(x));
    const int j_right = static_cast<int>(std::ceil(x));
    if (j_left == j_right) return vals[j_left];
    return Enclosure(vals[j_right].lo, vals[j_left].hi);
}

OmegaValue table_omega(int k, double r) {
    if (r >= kRmax) {
        return {k, r, Enclosure(0.0, omega_value_bound(k, r)),
                Enclosure(-omega_derivative_bound(k, r), 0.0)};
    }
    const Level& lv = OmegaTable::instance().level(k);
    const Enclosure value = sample_decreasing(lv.Omega, lv.ostride, r);
    const Enclosure g = sample_decreasing(lv.G, lv.gstride, r);
    return {k, r, value, Enclosure(-g.hi, -g.lo)};
}

}  // namespace

double omega_value_bound(int k, double r) {
    const double f = factorial(k);
    return next_up(next_up(std::exp(-k * r)) / next_down(f * f));
}

double omega_derivative_bound(int k, double r) {
    return next_up(next_up(std::exp(-k * r)) / next_down(factorial(k) * factorial(k - 1)));
}

OmegaValue omega(int k, double r) {
    if (k < 1) throw std::domain_error("omega: k must be >= 1");
    if (r < 1.0) throw std::domain_error("omega: r must be >= 1 (matching happens at r = 1)");
    if (k > kMaxExteriorOrder) throw std::invalid_argument("omega: order beyond table maximum");
    switch (k) {
        case 1:
            return {k, r, omega1_value(r), omega1_derivative(r)};
        case 2:
            return {k, r, omega2_value(r), omega2_derivative(r)};
        default:
            return table_omega(k, r);
    }
}

OmegaValue omega_quadrature(int k, double r) {
    if (k < 1) throw std::domain_error("omega_quadrature: k must be >= 1");
    if (r < 1.0) throw std::domain_error("omega_quadrature: r must be >= 1");
    if (k > kMaxExteriorOrder) throw std::invalid_argument("omega_quadrature: order beyond table");
    return table_omega(k, r);
}

Enclosure u_ext_value(const mpq_class& kappa, double r, int K) {
    if (kappa < 0) throw std::domain_error("u_ext_value: kappa must be >= 0");
    if (r < 1.0) throw std::domain_error("u_ext_value: r must be >= 1");
    if (K < 1 || K > kMaxExteriorOrder)
        throw std::invalid_argument("u_ext_value: truncation order out of range");
    const Enclosure inv_r(next_down(1.0 / r), next_up(1.0 / r));
    if (kappa == 0) return inv_r;

    const Enclosure kap = to_enclosure(kappa);
    const Enclosure e21 = expint::exp_integral(2, 1.0);
    if (!(next_up(kap.hi * e21.hi) < 1.0))
        throw CertificationError(
            "u_ext_value: kappa * E_2(1) < 1 not certifiable (kappa beyond ~6.73)");

    Enclosure t_even = Enclosure::exact(1.0), t_odd, t_run = t_even;
    mpq_class p(1);
    for (int k = 1; k <= K; ++k) {
        p *= kappa;
        const Enclosure term = to_enclosure(p) * omega(k, r).value;
        if (k % 2 == 1) {
            t_run = t_run - term;
            t_odd = t_run;
        } else {
            t_run = t_run + term;
            t_even = t_run;
        }
    }
    return Enclosure(t_odd.lo, t_even.hi) * inv_r;
}

BoundaryTrace u_ext_trace(const mpq_class& kappa, int K) {
    if (kappa < 0) throw std::domain_error("u_ext_trace: kappa must be >= 0");
    if (K < 1 || K > kMaxExteriorOrder)
        throw std::invalid_argument("u_ext_trace: truncation order out of range");
    if (kappa == 0)
        return {Enclosure::exact(1.0), Enclosure::exact(-1.0), BoundaryTrace::Side::exterior};

    // Monotonicity hypothesis kappa*omega_{k+1} < omega_k for all k >= 0 and
    // r >= 1 follows inductively from kappa*omega_1(r) <= kappa*E_2(1) < 1.
    const Enclosure kap = to_enclosure(kappa);
    const Enclosure e21 = expint::exp_integral(2, 1.0);
    if (!(next_up(kap.hi * e21.hi) < 1.0))
        throw CertificationError(
            "u_ext_trace: kappa * E_2(1) < 1 not certifiable (kappa beyond ~6.73)");

    // kappa^k exactly, then outward.
    std::vector<Enclosure> kpow(K + 1);
    mpq_class p(1);
    for (int k = 0; k <= K; ++k) {
        kpow[k] = to_enclosure(p);
        p *= kappa;
    }

    // Partial sums of the value series 1 + sum (-1)^k kappa^k omega_k(1):
    // odd cuts bound below, even cuts above.
    Enclosure t_even = Enclosure::exact(1.0);  // T_0
    Enclosure t_odd;                           // T_1 after first term
    Enclosure v_even = Enclosure::exact(0.0);  // V_0 (derivative series)
    Enclosure v_odd;
    Enclosure t_run = t_even, v_run = v_even;
    for (int k = 1; k <= K; ++k) {
        const OmegaValue w = omega(k, 1.0);
        const Enclosure term_v = kpow[k] * w.value;
        const Enclosure term_d = kpow[k] * w.derivative;
        if (k % 2 == 1) {
            t_run = t_run - term_v;
            v_run = v_run - term_d;
            t_odd = t_run;
            v_odd = v_run;
        } else {
            t_run = t_run + term_v;
            v_run = v_run + term_d;
            t_even = t_run;
            v_even = v_run;
        }
    }
    const Enclosure value(t_odd.lo, t_even.hi);
    // v_e'(1) = sum (-1)^k kappa^k omega_k'(1): first term positive, so odd
    // cuts bound above, even cuts (including the empty sum) below.
    const Enclosure vprime(v_even.lo, v_odd.hi);
    // u_ext'(1) = -u_ext(1) + v_e'(1) for the r^{-1}-normalized ansatz.
    const Enclosure derivative = vprime - value;
    return {value, derivative, BoundaryTrace::Side::exterior};
}

}  // namespace resonance::yukawa
