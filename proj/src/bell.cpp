#include "halq/bell.hpp"

#include <algorithm>
#include <cmath>

namespace halq {

namespace {

constexpr double kRegimeTolerance = 1e-9;
const double kCirelsonBound = 2.0 * std::sqrt(2.0);

void check_unit(const std::string& object, const char* name, double mu) {
    if (!(mu >= 0.0 && mu <= 1.0))
        throw DataError("record '" + object + "': " + name + " = " + std::to_string(mu) +
                        " outside [0, 1]");
}

void check_record(const PollRecord& r) {
    check_unit(r.object, "mu_a", r.mu_a);
    check_unit(r.object, "mu_b", r.mu_b);
    check_unit(r.object, "mu_a_or_b", r.mu_a_or_b);
}

}  // namespace

double mean_score(std::span<const double> responses, double scale) {
    if (responses.empty()) throw DataError("mean_score: no responses");
    if (!(scale > 0.0)) throw DataError("mean_score: scale must be positive");
    double sum = 0.0;
    for (double r : responses) {
        if (!(r >= 0.0 && r <= scale))
            throw DataError("mean_score: response " + std::to_string(r) + " outside [0, " +
                            std::to_string(scale) + "]");
        sum += r;
    }
    return sum / static_cast<double>(responses.size()) / scale;
}

std::string to_string(ExtensionFlag flag) {
    switch (flag) {
        case ExtensionFlag::Over: return "over";
        case ExtensionFlag::Sub: return "sub";
        default: return "normal";
    }
}

InterferenceReport interference_analysis(const PollRecord& record) {
    check_record(record);
    InterferenceReport report;
    report.object = record.object;
    report.classical_average = (record.mu_a + record.mu_b) / 2.0;
    report.interference_term = record.mu_a_or_b - report.classical_average;

    const double product = record.mu_a * record.mu_b;
    if (product > 0.0) {
        const double root = std::sqrt(product);
        report.cos_phi_unit_c = report.interference_term / root;
        report.required_c = std::abs(report.interference_term) / root;
    }

    if (record.mu_a_or_b > std::max(record.mu_a, record.mu_b))
        report.extension_flag = ExtensionFlag::Over;
    else if (record.mu_a_or_b < std::min(record.mu_a, record.mu_b))
        report.extension_flag = ExtensionFlag::Sub;
    else
        report.extension_flag = ExtensionFlag::Normal;
    return report;
}

std::string to_string(Regime regime) {
    switch (regime) {
        case Regime::Classical: return "classical";
        case Regime::Quantum: return "quantum";
        default: return "beyond_cirelson";
    }
}

Regime classify_regime(double s) {
    if (s < 0.0) throw std::invalid_argument("classify_regime: s must be non-negative");
    if (s <= 2.0 + kRegimeTolerance) return Regime::Classical;
    if (s <= kCirelsonBound + kRegimeTolerance) return Regime::Quantum;
    return Regime::BeyondCirelson;
}

BellReport bell_poll(const PollRecord& record) {
    check_record(record);
    BellReport report;
    report.label = record.object;
    report.formula_variant = "poll";
    const double e_uu = record.mu_a * record.mu_b;
    const double e_un = record.mu_a * (1.0 - record.mu_b);
    const double e_nn = 1.0 - record.mu_a_or_b;
    const double e_nu = (1.0 - record.mu_a) * record.mu_b;
    report.terms = {e_uu, e_un, e_nn, e_nu};
    report.s_value = e_uu + e_un + std::abs(e_nn - e_nu);
    report.regime = classify_regime(std::abs(report.s_value));
    return report;
}

std::optional<HalVariant> parse_hal_variant(const std::string& text) {
    if (text == "table") return HalVariant::Table;
    if (text == "printed") return HalVariant::Printed;
    return std::nullopt;
}

std::string to_string(HalVariant variant) {
    return variant == HalVariant::Table ? "table" : "printed";
}

BellReport bell_hal(const std::string& label, double x_af, double x_al, double x_bf,
                    double x_bl, HalVariant variant) {
    for (double x : {x_af, x_al, x_bf, x_bl})
        if (!(x >= 0.0 && x <= 1.0))
            throw DataError("bell_hal '" + label + "': score " + std::to_string(x) +
                            " outside [0, 1]");

    const auto expectation = [](double x) { return 2.0 * x - 1.0; };
    BellReport report;
    report.label = label;
    report.formula_variant = to_string(variant);
    report.terms = {expectation(x_af), expectation(x_al), expectation(x_bf), expectation(x_bl)};
    const double first = std::abs(report.terms[0] - report.terms[1]);
    const double second = variant == HalVariant::Table
                              ? std::abs(report.terms[2] + report.terms[3])
                              : std::abs(report.terms[2] - report.terms[3]);
    report.s_value = first + second;
    report.regime = classify_regime(report.s_value);
    return report;
}

ExclusivityStats exclusivity_stats(std::span<const ScoredPair> rows, double scale,
                                   double epsilon) {
    if (rows.empty()) throw DataError("exclusivity_stats: no rows");
    if (!(scale > 0.0)) throw DataError("exclusivity_stats: scale must be positive");

    ExclusivityStats stats;
    stats.epsilon = epsilon;
    stats.rows.reserve(rows.size());
    double sum = 0.0;
    for (const auto& row : rows) {
        for (double s : {row.score_a, row.score_b})
            if (!(s >= 0.0 && s <= scale))
                throw DataError("exclusivity_stats '" + row.label + "': score " +
                                std::to_string(s) + " outside [0, " + std::to_string(scale) + "]");
        const double deficit = row.score_a + row.score_b - scale;
        stats.rows.push_back({row.label, deficit});
        if (std::abs(deficit) <= epsilon) ++stats.zero_deficit_rows;
        sum += deficit;
    }
    stats.mean_deficit = sum / static_cast<double>(rows.size());
    return stats;
}

}  // namespace halq
