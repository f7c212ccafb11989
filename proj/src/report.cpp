#include "resonance/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace resonance {

namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream out;
    out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return out.str();
}

}  // namespace

std::string report_to_json(const ResonanceReport& rep, bool with_timestamp) {
    nlohmann::json doc;
    doc["schema"] = 1;
    auto bound = [](double v) {
        return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
    };
    doc["kappa_star"] = {{"lo", bound(rep.kappa_star.lo)}, {"hi", bound(rep.kappa_star.hi)}};
    doc["method"] = to_string(rep.method);
    doc["n"] = rep.n;
    doc["classification"] = to_string(rep.classification);
    doc["certified"] = rep.certified;
    doc["potential"] = rep.potential;
    doc["outcome"] = rep.outcome;
    nlohmann::json diag = nlohmann::json::object();
    for (const auto& [key, value] : rep.diagnostics) diag[key] = value;
    doc["diagnostics"] = diag;
    if (with_timestamp) doc["generated_at"] = iso_timestamp();
    return doc.dump(2) + "\n";
}

std::string report_to_human(const ResonanceReport& rep) {
    std::ostringstream out;
    out << std::setprecision(15);
    out << "potential:      " << rep.potential << "\n"
        << "dimension:      " << rep.n << "\n"
        << "method:         " << to_string(rep.method) << "\n"
        << "outcome:        " << rep.outcome << "\n"
        << "kappa_star:     [" << rep.kappa_star.lo << ", " << rep.kappa_star.hi << "]\n"
        << "certified:      " << (rep.certified ? "yes" : "no (estimate)") << "\n"
        << "classification: " << to_string(rep.classification) << "\n";
    if (!rep.diagnostics.empty()) {
        out << "diagnostics:\n";
        for (const auto& [key, value] : rep.diagnostics)
            out << "  " << key << " = " << value << "\n";
    }
    return out.str();
}

std::string report_to_csv(const ResonanceReport& rep) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "potential,n,method,kappa_lo,kappa_hi,certified,classification\n"
        << rep.potential << "," << rep.n << "," << to_string(rep.method) << ","
        << rep.kappa_star.lo << "," << rep.kappa_star.hi << "," << (rep.certified ? 1 : 0) << ","
        << to_string(rep.classification) << "\n";
    return out.str();
}

}  // namespace resonance
