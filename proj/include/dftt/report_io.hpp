#pragma once

// JSON bindings for the report types. Kept out of the core headers so the
// library proper has no dependency on the JSON parser; include this from
// CLIs and tests that serialize. nlohmann dumps are deterministic (sorted
// keys, shortest-roundtrip doubles), which the reproducibility checks rely
// on.

#include <string>

#include <json.hpp>

#include "dftt/dft_test.hpp"
#include "dftt/experiments.hpp"
#include "dftt/simplex.hpp"
#include "dftt/theory.hpp"
#include "dftt/version.hpp"

namespace dftt {

inline void to_json(nlohmann::json& j, const TestOutcome& out) {
  j = nlohmann::json{{"n", out.n},
                     {"n1", out.n1},
                     {"d", out.d},
                     {"p", out.p},
                     {"threshold", std::string(out.threshold.name())},
                     {"model", std::string(variance_model_name(out.model))},
                     {"a", out.divisor},
                     {"threshold_value", out.threshold_value}};
}

namespace theory {

inline void to_json(nlohmann::json& j, const TheoreticalQuantities& q) {
  j = nlohmann::json{{"m", q.m},       {"t2", q.t2},         {"mean_f", q.mean_f},
                     {"var_f", q.var_f}, {"corr", q.corr},   {"var_n1", q.var_n1},
                     {"a", q.a}};
}

}  // namespace theory

namespace simplex {

inline void to_json(nlohmann::json& j, const IndicatorStats& s) {
  j = nlohmann::json{{"m", s.m},
                     {"t2", s.t2},
                     {"n_samples", s.n_samples},
                     {"batches", s.batches},
                     {"master_seed", s.master_seed},
                     {"mean_f", s.mean_f},
                     {"var_f", s.var_f},
                     {"corr", s.corr},
                     {"var_n1", s.var_n1},
                     {"se_mean_f", s.se_mean_f},
                     {"se_var_f", s.se_var_f},
                     {"se_corr", s.se_corr},
                     {"se_var_n1", s.se_var_n1},
                     {"batch_mean_f", s.batch_mean_f},
                     {"batch_var_f", s.batch_var_f},
                     {"batch_corr", s.batch_corr},
                     {"batch_var_n1", s.batch_var_n1}};
}

}  // namespace simplex

namespace experiments {

inline void to_json(nlohmann::json& j, const McConfig& c) {
  j = nlohmann::json{{"n", c.n},
                     {"n_sequences", c.n_sequences},
                     {"master_seed", c.master_seed},
                     {"batches", c.batches}};
}

inline void to_json(nlohmann::json& j, const McReport& r) {
  j = nlohmann::json{{"config", r.config},
                     {"estimate", r.estimate},
                     {"stderr", r.stderr_value},
                     {"per_batch", r.per_batch},
                     {"predicted", r.predicted},
                     {"warnings", r.warnings}};
}

inline void to_json(nlohmann::json& j, const ExactMoments& m) {
  j = nlohmann::json{{"n", m.n},
                     {"threshold", std::string(m.rule.name())},
                     {"mean_energy", m.mean_energy},
                     {"var_energy", m.var_energy},
                     {"mean_n1", m.mean_n1},
                     {"var_n1", m.var_n1},
                     {"half_energy_mean", m.half_energy_mean},
                     {"half_energy_var", m.half_energy_var},
                     {"max_restriction_error", m.max_restriction_error}};
}

inline void to_json(nlohmann::json& j, const NormalityReport::Coefficient& c) {
  j = nlohmann::json{{"kind", std::string(1, c.kind)}, {"index", c.index}};
}

inline void to_json(nlohmann::json& j, const NormalityReport& r) {
  j = nlohmann::json{{"n", r.n},
                     {"n_sequences", r.n_sequences},
                     {"r_pairs", r.r_pairs},
                     {"master_seed", r.master_seed},
                     {"coefficients", r.coefficients},
                     {"means", r.means},
                     {"variances", r.variances},
                     {"excess_kurtoses", r.excess_kurtoses},
                     {"ks_stats", r.ks_stats},
                     {"correlations", r.correlations}};
}

inline void to_json(nlohmann::json& j, const LemmaReport& r) {
  j = nlohmann::json{{"x_max", r.x_max},
                     {"c", r.c},
                     {"grid", r.grid},
                     {"pass", r.pass},
                     {"max_ratio", r.max_ratio},
                     {"argmax_x", r.argmax_x},
                     {"ratio_at_smallest", r.ratio_at_smallest}};
}

}  // namespace experiments

// Standard envelope: every CLI report carries the tool version and the
// subcommand that produced it.
inline nlohmann::json report_envelope(std::string subcommand) {
  return nlohmann::json{{"version", std::string(kVersion)},
                        {"subcommand", std::move(subcommand)}};
}

}  // namespace dftt
