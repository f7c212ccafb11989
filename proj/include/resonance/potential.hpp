#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "resonance/enclosure.hpp"

namespace resonance {

enum class PotentialKind { yukawa, exponential, scaled, truncated_hardy, tabulated };

// Sign/decay metadata the classification theorems consume. For signed
// potentials, neg_decay_b is the declared decay exponent of the negative part
// (V_-(r) ~ (1+r)^{-b}); it is metadata, not something we verify.
struct SignInfo {
    bool nonneg = true;
    double neg_decay_b = 0.0;
};

// Radial potential V(r), r > 0, shared by every computation path.
class RadialPotential {
  public:
    static RadialPotential yukawa();                 // e^{-r}/r
    static RadialPotential exponential();            // e^{-r}
    static RadialPotential scaled(double c, RadialPotential base);  // c * base, c > 0
    // Hardy 1/r^2 with the origin singularity capped at 1/eps^2 (eps > 0);
    // eps <= 0 gives the uncapped 1/r^2. Either way the r^2 V -> 0 decay
    // hypothesis fails at infinity: this preset exists to exercise refusals.
    static RadialPotential truncated_hardy(double eps);
    // Samples at strictly increasing radii; evaluation interpolates linearly
    // in log r between samples, extends by the first value below the first
    // sample, and is zero beyond the last sample.
    static RadialPotential tabulated(std::vector<double> radii, std::vector<double> values);
    // Text file, one "r value" pair per line, '#' starts a comment.
    static RadialPotential from_file(const std::string& path);

    double operator()(double r) const;

    PotentialKind kind() const { return kind_; }
    const SignInfo& sign_info() const { return sign_; }
    RadialPotential with_neg_decay(double b) const;  // declare V_- decay exponent
    const std::string& describe() const { return description_; }

  private:
    RadialPotential(PotentialKind kind, SignInfo sign, std::string description,
                    std::function<double(double)> eval);

    PotentialKind kind_;
    SignInfo sign_;
    std::string description_;
    std::function<double(double)> eval_;
};

// Hypotheses for the resonance machinery: r^2 V(r) -> 0 at both ends and
// integral_0^infty r |V(r)| dr finite. Checked numerically on sample
// sequences plus adaptive quadrature of the weighted integral.
struct AdmissibilityReport {
    bool pass = false;
    bool decay_at_zero = false;       // r^2 V -> 0 as r -> 0
    bool decay_at_infinity = false;   // r^2 V -> 0 as r -> infinity
    double r2v_at_zero = 0.0;         // measured at the innermost sample
    double r2v_at_infinity = 0.0;     // measured at the outermost sample
    bool integral_finite = false;
    double weighted_integral = 0.0;   // integral of r |V|
    std::string failure_reason;       // empty on pass
};

AdmissibilityReport check_admissible(const RadialPotential& V);

// Classification targets shared by the solver paths and the CLI.
enum class Method { yukawa_series, volterra, variational };
enum class Classification { resonance_not_L2, eigenstate_L2, outside_hypotheses };

struct ResonanceReport {
    int n = 3;
    std::string potential;
    Enclosure kappa_star;
    Method method = Method::yukawa_series;
    Classification classification = Classification::resonance_not_L2;
    bool certified = false;
    std::string outcome = "found";  // or e.g. "no resonance found in range"
    std::vector<std::pair<std::string, double>> diagnostics;
};

std::string to_string(Method m);
std::string to_string(Classification c);

}  // namespace resonance
