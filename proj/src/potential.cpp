#include "resonance/potential.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace resonance {

RadialPotential::RadialPotential(PotentialKind kind, SignInfo sign, std::string description,
                                 std::function<double(double)> eval)
    : kind_(kind), sign_(sign), description_(std::move(description)), eval_(std::move(eval)) {}

RadialPotential RadialPotential::yukawa() {
    return {PotentialKind::yukawa, SignInfo{true, 0.0}, "yukawa",
            [](double r) { return std::exp(-r) / r; }};
}

RadialPotential RadialPotential::exponential() {
    return {PotentialKind::exponential, SignInfo{true, 0.0}, "exponential",
            [](double r) { return std::exp(-r); }};
}

RadialPotential RadialPotential::scaled(double c, RadialPotential base) {
    if (!(c > 0)) throw std::invalid_argument("scaled potential: factor must be > 0");
    std::ostringstream name;
    name << "scaled(" << c << ", " << base.describe() << ")";
    auto inner = base.eval_;
    return {PotentialKind::scaled, base.sign_, name.str(),
            [c, inner](double r) { return c * inner(r); }};
}

RadialPotential RadialPotential::truncated_hardy(double eps) {
    std::ostringstream name;
    name << "truncated_hardy(" << eps << ")";
    if (eps <= 0)
        return {PotentialKind::truncated_hardy, SignInfo{true, 0.0}, name.str(),
                [](double r) { return 1.0 / (r * r); }};
    return {PotentialKind::truncated_hardy, SignInfo{true, 0.0}, name.str(),
            [eps](double r) {
                const double c = std::max(r, eps);
                return 1.0 / (c * c);
            }};
}

RadialPotential RadialPotential::tabulated(std::vector<double> radii, std::vector<double> values) {
    if (radii.size() != values.size() || radii.empty())
        throw std::invalid_argument("tabulated potential: need matching nonempty r/value lists");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0)) throw std::invalid_argument("tabulated potential: radii must be > 0");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw std::invalid_argument("tabulated potential: radii must be strictly increasing");
    }
    const bool nonneg = std::all_of(values.begin(), values.end(), [](double v) { return v >= 0; });
    auto data = std::make_shared<std::pair<std::vector<double>, std::vector<double>>>(
        std::move(radii), std::move(values));
    auto eval = [data](double r) {
        const auto& rs = data->first;
        const auto& vs = data->second;
        if (r <= rs.front()) return vs.front();
        if (r >= rs.back()) return r == rs.back() ? vs.back() : 0.0;
        const auto it = std::upper_bound(rs.begin(), rs.end(), r);
        const size_t j = it - rs.begin();  // rs[j-1] < r < rs[j]
        const double t = std::log(r / rs[j - 1]) / std::log(rs[j] / rs[j - 1]);
        return (1 - t) * vs[j - 1] + t * vs[j];
    };
    return {PotentialKind::tabulated, SignInfo{nonneg, 0.0}, "tabulated", std::move(eval)};
}

RadialPotential RadialPotential::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("tabulated potential: cannot open " + path);
    std::vector<double> rs, vs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        double r, v;
        if (!(fields >> r)) continue;  // blank or comment-only line
        if (!(fields >> v))
            throw std::invalid_argument("tabulated potential: " + path + ":" +
                                        std::to_string(line_no) + ": expected 'r value'");
        rs.push_back(r);
        vs.push_back(v);
    }
    auto result = tabulated(std::move(rs), std::move(vs));
    result.description_ = "tabulated(" + path + ")";
    return result;
}

double RadialPotential::operator()(double r) const {
    if (!(r > 0)) throw std::domain_error("RadialPotential: r must be > 0");
    return eval_(r);
}

RadialPotential RadialPotential::with_neg_decay(double b) const {
    RadialPotential copy = *this;
    copy.sign_.nonneg = false;
    copy.sign_.neg_decay_b = b;
    return copy;
}

AdmissibilityReport check_admissible(const RadialPotential& V) {
    AdmissibilityReport rep;

    // r^2 V at geometric sample sequences toward both ends; the measured value
    // at the innermost/outermost sample must be negligible and not growing.
    auto limit_vanishes = [&V](bool toward_zero, double& measured) {
        double r = toward_zero ? 1e-2 : 1e2;
        double prev = std::abs(r * r * V(r));
        bool monotone_ok = true;
        for (int step = 0; step < 7; ++step) {
            r = toward_zero ? r / 10 : r * 10;
            const double cur = std::abs(r * r * V(r));
            if (cur > prev + 1e-12) monotone_ok = false;
            prev = cur;
        }
        measured = prev;
        return monotone_ok && prev < 1e-3;
    };
    try {
        rep.decay_at_zero = limit_vanishes(true, rep.r2v_at_zero);
        rep.decay_at_infinity = limit_vanishes(false, rep.r2v_at_infinity);
    } catch (const std::exception& e) {
        rep.failure_reason = std::string("potential evaluation failed: ") + e.what();
        return rep;
    }

    // integral of r |V| over (0,1] + [1,inf), endpoint-tolerant quadratures.
    try {
        boost::math::quadrature::tanh_sinh<double> inner;
        boost::math::quadrature::exp_sinh<double> outer;
        double err1 = 0, err2 = 0, l1 = 0;
        const double part1 =
            inner.integrate([&V](double r) { return r * std::abs(V(r)); }, 0.0, 1.0,
                            std::sqrt(std::numeric_limits<double>::epsilon()), &err1, &l1);
        const double part2 =
            outer.integrate([&V](double r) { return (r + 1) * std::abs(V(r + 1)); },
                            std::sqrt(std::numeric_limits<double>::epsilon()), &err2);
        rep.weighted_integral = part1 + part2;
        rep.integral_finite = std::isfinite(rep.weighted_integral) &&
                              rep.weighted_integral < 1e9 &&
                              err1 + err2 < 1e-4 * (1 + rep.weighted_integral);
    } catch (const std::exception&) {
        rep.integral_finite = false;
    }

    rep.pass = rep.decay_at_zero && rep.decay_at_infinity && rep.integral_finite;
    if (!rep.pass) {
        std::ostringstream why;
        if (!rep.decay_at_zero)
            why << "r^2 V does not vanish as r -> 0 (measured " << rep.r2v_at_zero << "); ";
        if (!rep.decay_at_infinity)
            why << "r^2 V does not vanish as r -> infinity (measured " << rep.r2v_at_infinity
                << "); ";
        if (!rep.integral_finite) why << "integral of r|V| did not converge; ";
        rep.failure_reason = why.str();
    }
    return rep;
}

std::string to_string(Method m) {
    switch (m) {
        case Method::yukawa_series: return "yukawa_series";
        case Method::volterra: return "volterra";
        case Method::variational: return "variational";
    }
    return "unknown";
}

std::string to_string(Classification c) {
    switch (c) {
        case Classification::resonance_not_L2: return "resonance_not_L2";
        case Classification::eigenstate_L2: return "eigenstate_L2";
        case Classification::outside_hypotheses: return "outside_hypotheses";
    }
    return "unknown";
}

}  // namespace resonance
