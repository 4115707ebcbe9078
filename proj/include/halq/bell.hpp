#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "halq/common.hpp"

namespace halq {

// Membership means of one poll object on the unit scale.
struct PollRecord {
    std::string object;
    double mu_a = 0.0;
    double mu_b = 0.0;
    double mu_a_or_b = 0.0;
};

// Mean of raw responses, rescaled to [0, 1]. Throws DataError when the
// sequence is empty or a response falls outside [0, scale].
double mean_score(std::span<const double> responses, double scale);

enum class ExtensionFlag { Over, Sub, Normal };
std::string to_string(ExtensionFlag flag);

// Decomposition of mu(A or B) into the classical average plus an
// interference term of amplitude c and phase phi; only the product
// c * cos(phi) is identifiable from one triple.
struct InterferenceReport {
    std::string object;
    double classical_average = 0.0;          // (mu_a + mu_b) / 2
    double interference_term = 0.0;          // mu_a_or_b - classical_average
    std::optional<double> cos_phi_unit_c;    // interference / sqrt(mu_a * mu_b); unset when mu_a*mu_b = 0
    std::optional<double> required_c;        // minimum c with |cos phi| <= 1
    ExtensionFlag extension_flag = ExtensionFlag::Normal;
};

InterferenceReport interference_analysis(const PollRecord& record);

enum class Regime { Classical, Quantum, BeyondCirelson };
std::string to_string(Regime regime);

// classical: s <= 2; quantum: 2 < s <= 2*sqrt(2); beyond_cirelson above.
// Boundary comparisons use an absolute tolerance of 1e-9. Negative s is an
// argument error.
Regime classify_regime(double s);

struct BellReport {
    std::string label;
    double s_value = 0.0;
    std::array<double, 4> terms{};  // the four expectation values behind s
    Regime regime = Regime::Classical;
    std::string formula_variant;
};

// Bell parameter of a poll triple:
//   S = muA*muB + muA*(1-muB) + |(1 - muAorB) - (1-muA)*muB|
// The four addends are the expectation values E(u,u), E(u,u'), E(u',u'),
// E(u',u); the last two sit inside the absolute value.
BellReport bell_poll(const PollRecord& record);

enum class HalVariant { Table, Printed };
std::optional<HalVariant> parse_hal_variant(const std::string& text);
std::string to_string(HalVariant variant);

// Bell parameter of four query scores, with E(x) = 2x - 1.
//   printed: S = |E(x_af) - E(x_al)| + |E(x_bf) - E(x_bl)|
//   table:   S = |E(x_af) - E(x_al)| + |E(x_bf) + E(x_bl)|
// Scores outside [0, 1] are a data error.
BellReport bell_hal(const std::string& label, double x_af, double x_al, double x_bf,
                    double x_bl, HalVariant variant = HalVariant::Table);

// How rarely two category scores exhaust the scale.
struct ExclusivityRow {
    std::string label;
    double deficit = 0.0;  // score_a + score_b - scale, on the raw scale
};

struct ExclusivityStats {
    std::vector<ExclusivityRow> rows;
    std::size_t zero_deficit_rows = 0;  // |deficit| <= epsilon
    double mean_deficit = 0.0;
    double epsilon = 1e-9;
};

struct ScoredPair {
    std::string label;
    double score_a = 0.0;
    double score_b = 0.0;
};

ExclusivityStats exclusivity_stats(std::span<const ScoredPair> rows, double scale,
                                   double epsilon = 1e-9);

}  // namespace halq
