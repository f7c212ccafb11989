#include "resonance/expint.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "resonance/errors.hpp"

namespace resonance::expint {

namespace {

// Euler-Mascheroni constant, 30 significant digits.
constexpr double kEulerGamma = 0.577215664901532860606512090082;

Enclosure log_enclosure(double x) { return Enclosure::around(std::log(x)); }

}  // namespace

// E_1(r) = -gamma - ln r + sum_{k>=1} (-1)^{k+1} r^k / (k * k!), valid for r <= 1
// where the terms decrease monotonically from the start.
Enclosure e1_series(double r, double tol) {
    Enclosure sum = Enclosure::exact(0.0);
    Enclosure power = Enclosure::exact(1.0);  // r^k accumulator
    double factorial = 1.0;
    constexpr int kMaxTerms = 64;
    int k = 1;
    for (; k <= kMaxTerms; ++k) {
        power = power * Enclosure::exact(r);
        factorial *= k;
        Enclosure term = power / Enclosure::exact(k * factorial);
        if (k % 2 == 1)
            sum += term;
        else
            sum -= term;
        // Alternating with decreasing terms: remainder is bounded by the next term.
        double next = term.hi * r / (k + 1);
        if (next < 0x1p-60) {
            sum = Enclosure(next_down(sum.lo - next), next_up(sum.hi + next));
            break;
        }
    }
    if (k > kMaxTerms) throw PrecisionError("e1_series: term budget exhausted");
    Enclosure result = Enclosure::exact(-kEulerGamma) - log_enclosure(r) + sum;
    // The 30-digit constant itself is off by < 1e-30; absorb with one ulp.
    result = Enclosure(next_down(result.lo), next_up(result.hi));
    if (result.width() > tol)
        throw PrecisionError("e1_series: width " + std::to_string(result.width()));
    return result;
}

// Stieltjes fraction e^r E_1(r) = 1/(r+ 1/(1+ 1/(r+ 2/(1+ 2/(r+ 3/(1+ ...)))))).
// Successive convergents of a Stieltjes fraction bracket the value; we verify
// the alternation numerically and return the bracket scaled by e^{-r}.
Enclosure e1_continued_fraction(double r, double tol) {
    // Convergent recurrences A_n = b_n A_{n-1} + a_n A_{n-2}, same for B.
    double Am1 = 1.0, A0 = 0.0, Bm1 = 0.0, B0 = 1.0;
    double prev = 0.0, curr = 0.0;
    bool have_prev = false;
    constexpr int kMaxIter = 512;
    double lo = 0.0, hi = 0.0;
    int n = 1;
    for (; n <= kMaxIter; ++n) {
        double a, b;
        if (n == 1) {
            a = 1.0;
            b = r;
        } else if (n % 2 == 0) {
            a = static_cast<double>(n / 2);
            b = 1.0;
        } else {
            a = static_cast<double>(n / 2);
            b = r;
        }
        double A1 = b * A0 + a * Am1;
        double B1 = b * B0 + a * Bm1;
        if (B1 > 0x1p500) {  // renormalize to avoid overflow
            A1 *= 0x1p-500;
            B1 *= 0x1p-500;
            A0 *= 0x1p-500;
            B0 *= 0x1p-500;
        }
        Am1 = A0;
        A0 = A1;
        Bm1 = B0;
        B0 = B1;
        curr = A0 / B0;
        if (have_prev) {
            lo = std::min(prev, curr);
            hi = std::max(prev, curr);
            if (hi - lo < 0.25 * tol && n > 4) break;
        }
        prev = curr;
        have_prev = true;
    }
    if (n > kMaxIter)
        throw PrecisionError("e1_continued_fraction: no convergence at r=" + std::to_string(r));
    // Guard against accumulated rounding in the convergent recurrences: inflate
    // the bracket by a relative margin well above n*eps.
    const double slack = 1e-13 * hi + 0x1p-1000;
    Enclosure bracket(next_down(lo - slack), next_up(hi + slack));
    Enclosure result = exp_enclosure(-r) * bracket;
    if (result.width() > tol)
        throw PrecisionError("e1_continued_fraction: width " + std::to_string(result.width()));
    return result;
}

Enclosure exp_integral(int nu, double r, double tol) {
    if (nu < 1) throw std::domain_error("exp_integral: order must be >= 1");
    if (!(r > 0.0)) throw std::domain_error("exp_integral: r must be positive");
    Enclosure e = (r <= 1.0) ? e1_series(r, tol) : e1_continued_fraction(r, tol);
    for (int j = 1; j < nu; ++j)
        e = (exp_enclosure(-r) - Enclosure::exact(r) * e) / Enclosure::exact(static_cast<double>(j));
    if (e.width() > tol) throw PrecisionError("exp_integral: recurrence width exceeds tolerance");
    return e;
}

}  // namespace resonance::expint
