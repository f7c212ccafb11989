#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace resonance {

inline double next_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double next_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

// Closed interval [lo, hi] guaranteed to contain the represented real number.
// All arithmetic rounds outward by one ulp per operation, so results remain
// true enclosures under IEEE round-to-nearest.
struct Enclosure {
    double lo = 0.0;
    double hi = 0.0;

    Enclosure() = default;
    Enclosure(double l, double h) : lo(l), hi(h) {
        if (!(lo <= hi)) throw std::invalid_argument("Enclosure: lo > hi");
    }

    static Enclosure exact(double v) { return {v, v}; }

    // Enclosure of a value computed by a correctly-rounded-ish libm routine;
    // two ulps covers the <= 1 ulp error of the functions we use with margin.
    static Enclosure around(double v) {
        return {next_down(next_down(v)), next_up(next_up(v))};
    }

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains(const Enclosure& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_inside(const Enclosure& outer) const {
        return outer.lo < lo && hi < outer.hi;
    }

    Enclosure operator-() const { return {-hi, -lo}; }

    Enclosure& operator+=(const Enclosure& o) {
        lo = next_down(lo + o.lo);
        hi = next_up(hi + o.hi);
        return *this;
    }
    Enclosure& operator-=(const Enclosure& o) { return *this += -o; }

    friend Enclosure operator+(Enclosure a, const Enclosure& b) { return a += b; }
    friend Enclosure operator-(Enclosure a, const Enclosure& b) { return a -= b; }

    friend Enclosure operator*(const Enclosure& a, const Enclosure& b) {
        const double p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
        return {next_down(std::min({p1, p2, p3, p4})), next_up(std::max({p1, p2, p3, p4}))};
    }

    friend Enclosure operator/(const Enclosure& a, const Enclosure& b) {
        if (b.lo <= 0.0 && b.hi >= 0.0)
            throw std::domain_error("Enclosure division by interval containing zero");
        const double q1 = a.lo / b.lo, q2 = a.lo / b.hi, q3 = a.hi / b.lo, q4 = a.hi / b.hi;
        return {next_down(std::min({q1, q2, q3, q4})), next_up(std::max({q1, q2, q3, q4}))};
    }

    friend Enclosure operator*(double s, const Enclosure& a) { return Enclosure::exact(s) * a; }
    friend Enclosure operator*(const Enclosure& a, double s) { return Enclosure::exact(s) * a; }
    friend Enclosure operator+(const Enclosure& a, double s) { return a + Enclosure::exact(s); }
    friend Enclosure operator+(double s, const Enclosure& a) { return a + Enclosure::exact(s); }
    friend Enclosure operator-(const Enclosure& a, double s) { return a - Enclosure::exact(s); }
    friend Enclosure operator-(double s, const Enclosure& a) { return Enclosure::exact(s) - a; }

    // Intersection of two enclosures of the same quantity.
    static Enclosure meet(const Enclosure& a, const Enclosure& b) {
        const double l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
        if (l > h) throw std::domain_error("Enclosure::meet: disjoint enclosures");
        return {l, h};
    }

    // Smallest enclosure containing both (interval hull).
    static Enclosure hull(const Enclosure& a, const Enclosure& b) {
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
};

// Enclosure of exp(x) via libm with outward rounding.
inline Enclosure exp_enclosure(double x) { return Enclosure::around(std::exp(x)); }

enum class CertifiedSign { positive, negative, indeterminate };

inline CertifiedSign sign_of(const Enclosure& e) {
    if (e.lo > 0.0) return CertifiedSign::positive;
    if (e.hi < 0.0) return CertifiedSign::negative;
    return CertifiedSign::indeterminate;
}

}  // namespace resonance
