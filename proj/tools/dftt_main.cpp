// Command-line front end: every library operation behind one binary with
// machine-readable output. Randomized subcommands demand an explicit --seed;
// identical argv must produce byte-identical output, so all serialization
// below is deterministic (sorted JSON keys, %.17g CSV numbers).

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dftt/bitseq.hpp"
#include "dftt/dft_test.hpp"
#include "dftt/experiments.hpp"
#include "dftt/report_io.hpp"
#include "dftt/rng.hpp"
#include "dftt/simplex.hpp"
#include "dftt/spectrum.hpp"
#include "dftt/theory.hpp"
#include "dftt/version.hpp"

namespace {

using nlohmann::json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open input file: " + path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return bytes;
}

// --format ascii|packed; packed needs an explicit bit count, ascii infers it
// (and cross-checks when --n was given anyway).
dftt::BitSequence load_sequence(const std::string& path, const std::string& format,
                                std::size_t n_bits) {
  const std::vector<std::uint8_t> bytes = read_file_bytes(path);
  if (format == "packed") {
    if (n_bits == 0) {
      throw std::invalid_argument("--n is required with --format packed");
    }
    return dftt::BitSequence::from_bytes_msb_first(bytes, n_bits);
  }
  if (format == "ascii") {
    const std::string text(bytes.begin(), bytes.end());
    dftt::BitSequence seq = dftt::BitSequence::from_ascii(text);
    if (n_bits != 0 && n_bits != seq.size()) {
      throw std::invalid_argument(
          "--n=" + std::to_string(n_bits) + " does not match ASCII content (" +
          std::to_string(seq.size()) + " bits)");
    }
    return seq;
  }
  throw std::invalid_argument("--format must be ascii or packed");
}

void print_csv_header_comments(std::ostream& os, const std::string& subcommand,
                               const std::vector<std::pair<std::string, std::string>>& kv) {
  os << "# version=" << dftt::kVersion << "\n";
  os << "# subcommand=" << subcommand << "\n";
  for (const auto& [k, v] : kv) {
    os << "# " << k << "=" << v << "\n";
  }
}

struct FormatFlags {
  bool json = false;
  bool csv = false;

  void attach(CLI::App* sub) {
    sub->add_flag("--json", json, "JSON output");
    sub->add_flag("--csv", csv, "CSV output");
  }
};

// ---------------------------------------------------------------- test ----

int cmd_test(const std::string& input, const std::string& format, std::size_t n_bits,
             const std::string& threshold, const std::string& model,
             const FormatFlags& fmt_flags) {
  const dftt::BitSequence seq = load_sequence(input, format, n_bits);
  const auto rule = dftt::ThresholdRule::parse(threshold);
  const auto variance_model = dftt::parse_variance_model(model);
  const dftt::TestOutcome outcome = dftt::run_test(seq, rule, variance_model);

  if (fmt_flags.json) {
    json j = dftt::report_envelope("test");
    j["config"] = {{"input", input},
                   {"format", format},
                   {"threshold", threshold},
                   {"model", model}};
    j["n"] = outcome.n;
    j["n1"] = outcome.n1;
    j["d"] = outcome.d;
    j["p"] = outcome.p;
    j["threshold"] = std::string(outcome.threshold.name());
    j["model"] = std::string(dftt::variance_model_name(outcome.model));
    j["a"] = outcome.divisor;
    j["threshold_value"] = outcome.threshold_value;
    std::cout << j.dump(2) << "\n";
  } else if (fmt_flags.csv) {
    print_csv_header_comments(std::cout, "test",
                              {{"input", input}, {"format", format}});
    std::cout << "n,n1,d,p,threshold,model,a\n";
    std::cout << outcome.n << "," << outcome.n1 << "," << fmt(outcome.d) << ","
              << fmt(outcome.p) << "," << outcome.threshold.name() << ","
              << dftt::variance_model_name(outcome.model) << ","
              << fmt(outcome.divisor) << "\n";
  } else {
    std::cout << "n:         " << outcome.n << "\n"
              << "n1:        " << outcome.n1 << "\n"
              << "d:         " << fmt(outcome.d) << "\n"
              << "p:         " << fmt(outcome.p) << "\n"
              << "threshold: " << outcome.threshold.name() << " (T="
              << fmt(outcome.threshold_value) << ")\n"
              << "model:     " << dftt::variance_model_name(outcome.model)
              << " (a=" << fmt(outcome.divisor) << ")\n";
  }
  return 0;
}

// ------------------------------------------------------------ spectrum ----

int cmd_spectrum(const std::string& input, const std::string& format,
                 std::size_t n_bits) {
  const dftt::BitSequence seq = load_sequence(input, format, n_bits);
  const dftt::SpectrumMagnitudes spectrum = dftt::dft_fast(seq);
  print_csv_header_comments(std::cout, "spectrum",
                            {{"input", input},
                             {"format", format},
                             {"n", std::to_string(seq.size())}});
  std::cout << "j,magnitude\n";
  const auto lines = spectrum.lines();
  for (std::size_t j = 0; j < lines.size(); ++j) {
    std::cout << j << "," << fmt(lines[j]) << "\n";
  }
  return 0;
}

// -------------------------------------------------------------- theory ----

std::vector<std::size_t> parse_m_grid(const std::string& spec_text, std::size_t points) {
  // lo:hi:log or lo:hi:lin
  std::vector<std::string> parts;
  std::stringstream ss(spec_text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 3 || (parts[2] != "log" && parts[2] != "lin")) {
    throw std::invalid_argument("--m-grid expects lo:hi:log or lo:hi:lin");
  }
  const double lo = std::stod(parts[0]);
  const double hi = std::stod(parts[1]);
  if (!(lo >= 2.0) || !(hi > lo) || points < 2) {
    throw std::invalid_argument("--m-grid needs 2 <= lo < hi and --points >= 2");
  }
  std::vector<std::size_t> grid;
  for (std::size_t i = 0; i < points; ++i) {
    const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
    double value;
    if (parts[2] == "log") {
      value = std::exp(std::log(lo) + frac * (std::log(hi) - std::log(lo)));
    } else {
      value = lo + frac * (hi - lo);
    }
    const std::size_t m = static_cast<std::size_t>(std::llround(value));
    if (grid.empty() || grid.back() != m) grid.push_back(m);
  }
  return grid;
}

int cmd_theory(std::size_t m, const std::string& grid_spec, std::size_t points,
               double t2_override, const FormatFlags& fmt_flags) {
  const bool have_grid = !grid_spec.empty();
  if ((m == 0) == !have_grid) {
    throw std::invalid_argument("theory: pass exactly one of --m or --m-grid");
  }

  auto quantities_for = [&](std::size_t mm) {
    const dftt::theory::TheoryParams params =
        std::isnan(t2_override) ? dftt::theory::TheoryParams::log005(mm)
                                : dftt::theory::TheoryParams(mm, t2_override);
    return dftt::theory::theoretical_quantities(params);
  };

  if (!have_grid) {
    const auto q = quantities_for(m);
    if (fmt_flags.csv) {
      print_csv_header_comments(std::cout, "theory", {{"m", std::to_string(m)}});
      std::cout << "m,t2,mean_f,var_f,corr,var_n1,a\n";
      std::cout << q.m << "," << fmt(q.t2) << "," << fmt(q.mean_f) << ","
                << fmt(q.var_f) << "," << fmt(q.corr) << "," << fmt(q.var_n1)
                << "," << fmt(q.a) << "\n";
    } else {
      json j = dftt::report_envelope("theory");
      j["config"] = {{"m", m}};
      j.update(json(q));
      std::cout << j.dump(2) << "\n";
    }
    return 0;
  }

  const std::vector<std::size_t> grid = parse_m_grid(grid_spec, points);
  if (fmt_flags.json) {
    json rows = json::array();
    for (std::size_t mm : grid) {
      rows.push_back(json(quantities_for(mm)));
    }
    json j = dftt::report_envelope("theory");
    j["config"] = {{"m_grid", grid_spec}, {"points", points}};
    j["rows"] = rows;
    std::cout << j.dump(2) << "\n";
  } else {
    print_csv_header_comments(std::cout, "theory",
                              {{"m_grid", grid_spec},
                               {"points", std::to_string(points)}});
    std::cout << "m,a,vF,corr,varN1\n";
    for (std::size_t mm : grid) {
      const auto q = quantities_for(mm);
      std::cout << q.m << "," << fmt(q.a) << "," << fmt(q.var_f) << ","
                << fmt(q.corr) << "," << fmt(q.var_n1) << "\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------- simplex ----

int cmd_simplex(std::size_t m, std::size_t samples, std::uint32_t seed,
                std::size_t batches, unsigned workers, double t2_override,
                const FormatFlags& fmt_flags) {
  const double t2 = std::isnan(t2_override)
                        ? dftt::theory::TheoryParams::log005(m).t2
                        : t2_override;
  const dftt::simplex::IndicatorStats stats =
      dftt::simplex::indicator_stats(m, t2, samples, seed, batches, workers);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  double cf_mean = nan;
  double cf_var = nan;
  double cf_corr = nan;
  double cf_var_n1 = nan;
  try {
    const dftt::theory::TheoryParams params(m, t2);
    cf_mean = 1.0 - dftt::theory::marginal_survival(t2, m);
    cf_var = dftt::theory::indicator_variance(params);
    cf_corr = dftt::theory::indicator_correlation(params);
    cf_var_n1 = dftt::theory::var_n1(params);
  } catch (const std::exception&) {
    // Closed forms unavailable in this corner (small m or out-of-range t2);
    // empirical columns stay meaningful.
  }

  if (fmt_flags.json) {
    json j = dftt::report_envelope("simplex");
    j["config"] = {{"m", m},
                   {"samples", samples},
                   {"seed", seed},
                   {"batches", batches}};
    j["stats"] = stats;
    j["closed_form"] = {{"mean_f", cf_mean},
                        {"var_f", cf_var},
                        {"corr", cf_corr},
                        {"var_n1", cf_var_n1}};
    std::cout << j.dump(2) << "\n";
  } else {
    print_csv_header_comments(std::cout, "simplex",
                              {{"m", std::to_string(m)},
                               {"samples", std::to_string(samples)},
                               {"seed", std::to_string(seed)},
                               {"batches", std::to_string(batches)},
                               {"t2", fmt(t2)}});
    std::cout << "quantity,empirical,stderr,closed_form\n";
    std::cout << "mean_f," << fmt(stats.mean_f) << "," << fmt(stats.se_mean_f)
              << "," << fmt(cf_mean) << "\n";
    std::cout << "var_f," << fmt(stats.var_f) << "," << fmt(stats.se_var_f) << ","
              << fmt(cf_var) << "\n";
    std::cout << "corr," << fmt(stats.corr) << "," << fmt(stats.se_corr) << ","
              << fmt(cf_corr) << "\n";
    std::cout << "var_n1," << fmt(stats.var_n1) << "," << fmt(stats.se_var_n1)
              << "," << fmt(cf_var_n1) << "\n";
  }
  return 0;
}

// ---------------------------------------------------- mc experiments ------

// The worker count never appears in a report: output must not depend on it.
json mc_report_json(const char* name, const dftt::experiments::McReport& report) {
  json j = dftt::report_envelope(name);
  j.update(json(report));
  return j;
}

void mc_report_csv(std::ostream& os, const char* name,
                   const dftt::experiments::McReport& report,
                   const std::vector<std::pair<std::string, std::string>>& extra) {
  std::vector<std::pair<std::string, std::string>> kv = {
      {"n", std::to_string(report.config.n)},
      {"sequences", std::to_string(report.config.n_sequences)},
      {"seed", std::to_string(report.config.master_seed)},
      {"batches", std::to_string(report.config.batches)},
  };
  kv.insert(kv.end(), extra.begin(), extra.end());
  kv.emplace_back("estimate", fmt(report.estimate));
  kv.emplace_back("stderr", fmt(report.stderr_value));
  kv.emplace_back("predicted", fmt(report.predicted));
  for (const auto& w : report.warnings) {
    kv.emplace_back("warning", w);
  }
  print_csv_header_comments(os, name, kv);
  os << "batch,value\n";
  for (std::size_t b = 0; b < report.per_batch.size(); ++b) {
    os << b << "," << fmt(report.per_batch[b]) << "\n";
  }
}

int cmd_mc_variance(const dftt::experiments::McConfig& config, unsigned workers,
                    const FormatFlags& fmt_flags) {
  const auto report = dftt::experiments::experiment_variance(config, workers);
  if (fmt_flags.csv) {
    mc_report_csv(std::cout, "mc-variance", report, {});
  } else {
    std::cout << mc_report_json("mc-variance", report).dump(2) << "\n";
  }
  return 0;
}

int cmd_mc_correlation(const dftt::experiments::McConfig& config, std::size_t i,
                       std::size_t j, unsigned workers, const FormatFlags& fmt_flags) {
  const auto report = dftt::experiments::experiment_correlation(config, i, j, workers);
  if (fmt_flags.csv) {
    mc_report_csv(std::cout, "mc-correlation", report,
                  {{"i", std::to_string(i)}, {"j", std::to_string(j)}});
  } else {
    json out = mc_report_json("mc-correlation", report);
    out["i"] = i;
    out["j"] = j;
    std::cout << out.dump(2) << "\n";
  }
  return 0;
}

// ----------------------------------------------------------- exhaustive ---

int cmd_exhaustive(std::size_t n, const std::string& threshold,
                   const FormatFlags& fmt_flags) {
  const auto rule = dftt::ThresholdRule::parse(threshold);
  const auto moments = dftt::experiments::exhaustive_moments(n, rule);
  if (fmt_flags.json) {
    json j = dftt::report_envelope("exhaustive");
    j["config"] = {{"n", n}, {"threshold", threshold}};
    j.update(json(moments));
    std::cout << j.dump(2) << "\n";
  } else {
    print_csv_header_comments(
        std::cout, "exhaustive",
        {{"n", std::to_string(n)},
         {"threshold", threshold},
         {"mean_n1", fmt(moments.mean_n1)},
         {"var_n1", fmt(moments.var_n1)},
         {"half_energy_mean", fmt(moments.half_energy_mean)},
         {"half_energy_var", fmt(moments.half_energy_var)},
         {"max_restriction_error", fmt(moments.max_restriction_error)}});
    std::cout << "j,mean_energy,var_energy\n";
    for (std::size_t j = 0; j < moments.mean_energy.size(); ++j) {
      std::cout << j << "," << fmt(moments.mean_energy[j]) << ","
                << fmt(moments.var_energy[j]) << "\n";
    }
  }
  return 0;
}

// ------------------------------------------------------------ normality ---

int cmd_normality(const dftt::experiments::McConfig& config, std::size_t r_pairs,
                  unsigned workers, const FormatFlags& fmt_flags) {
  const auto report = dftt::experiments::normality_check(config, r_pairs, workers);
  if (fmt_flags.csv) {
    print_csv_header_comments(
        std::cout, "normality",
        {{"n", std::to_string(report.n)},
         {"sequences", std::to_string(report.n_sequences)},
         {"seed", std::to_string(report.master_seed)},
         {"r", std::to_string(report.r_pairs)},
         {"max_offdiag_correlation", fmt(report.max_offdiag_correlation())}});
    std::cout << "coefficient,index,mean,variance,excess_kurtosis,ks\n";
    for (std::size_t c = 0; c < report.coefficients.size(); ++c) {
      std::cout << report.coefficients[c].kind << ","
                << report.coefficients[c].index << "," << fmt(report.means[c])
                << "," << fmt(report.variances[c]) << ","
                << fmt(report.excess_kurtoses[c]) << "," << fmt(report.ks_stats[c])
                << "\n";
    }
  } else {
    json j = dftt::report_envelope("normality");
    j.update(json(report));
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

// ------------------------------------------------------------- lemma-a1 ---

int cmd_lemma(double x_max, double c, std::size_t grid, const FormatFlags& fmt_flags) {
  const auto report = dftt::experiments::lemma_a1_check(x_max, c, grid);
  if (fmt_flags.csv) {
    print_csv_header_comments(std::cout, "lemma-a1", {});
    std::cout << "x_max,c,grid,pass,max_ratio,argmax_x,ratio_at_smallest\n";
    std::cout << fmt(report.x_max) << "," << fmt(report.c) << "," << report.grid
              << "," << (report.pass ? 1 : 0) << "," << fmt(report.max_ratio) << ","
              << fmt(report.argmax_x) << "," << fmt(report.ratio_at_smallest)
              << "\n";
  } else {
    json j = dftt::report_envelope("lemma-a1");
    j["config"] = {{"x_max", x_max}, {"c", c}, {"grid", grid}};
    j.update(json(report));
    std::cout << j.dump(2) << "\n";
  }
  return 0;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Spectral randomness test with corrected variance models"};
  app.set_version_flag("--version", std::string(dftt::kVersion));
  app.require_subcommand(1);

  // test
  auto* test_sub = app.add_subcommand("test", "Run the spectral test on one sequence");
  std::string test_input, test_format;
  std::size_t test_n = 0;
  std::string test_threshold = "log005";
  std::string test_model = "limit";
  FormatFlags test_fmt;
  test_sub->add_option("--input", test_input, "Input file")->required();
  test_sub->add_option("--format", test_format, "ascii|packed")->required();
  test_sub->add_option("--n", test_n, "Bit count (required for packed)");
  test_sub->add_option("--threshold", test_threshold, "sqrt3n|log005");
  test_sub->add_option("--model", test_model,
                       "original|kim|hamano|pareschi|theoretical|limit");
  test_fmt.attach(test_sub);

  // spectrum
  auto* spectrum_sub = app.add_subcommand("spectrum", "Emit magnitudes as CSV");
  std::string spec_input, spec_format;
  std::size_t spec_n = 0;
  spectrum_sub->add_option("--input", spec_input, "Input file")->required();
  spectrum_sub->add_option("--format", spec_format, "ascii|packed")->required();
  spectrum_sub->add_option("--n", spec_n, "Bit count (required for packed)");

  // theory
  auto* theory_sub = app.add_subcommand("theory", "Closed-form quantities");
  std::size_t theory_m = 0;
  std::string theory_grid;
  std::size_t theory_points = 61;
  double theory_t2 = std::numeric_limits<double>::quiet_NaN();
  FormatFlags theory_fmt;
  theory_sub->add_option("--m", theory_m, "Single m value");
  theory_sub->add_option("--m-grid", theory_grid, "lo:hi:log or lo:hi:lin");
  theory_sub->add_option("--points", theory_points, "Grid point count");
  theory_sub->add_option("--t2", theory_t2, "Override threshold squared");
  theory_fmt.attach(theory_sub);

  // simplex
  auto* simplex_sub = app.add_subcommand("simplex", "Sample the modeled spectrum");
  std::size_t sx_m = 0, sx_samples = 100000, sx_batches = 20;
  std::uint32_t sx_seed = 0;
  unsigned sx_workers = 1;
  double sx_t2 = std::numeric_limits<double>::quiet_NaN();
  FormatFlags sx_fmt;
  simplex_sub->add_option("--m", sx_m, "Coordinate count")->required();
  simplex_sub->add_option("--samples", sx_samples, "Sample count");
  simplex_sub->add_option("--seed", sx_seed, "Master seed")->required();
  simplex_sub->add_option("--batches", sx_batches, "Batch count");
  simplex_sub->add_option("--workers", sx_workers, "Worker threads");
  simplex_sub->add_option("--t2", sx_t2, "Override threshold squared");
  sx_fmt.attach(simplex_sub);

  // mc-variance
  auto* mcv_sub = app.add_subcommand("mc-variance", "Estimate the divisor a");
  dftt::experiments::McConfig mcv_config;
  unsigned mcv_workers = 1;
  bool mcv_seed_set = false;
  FormatFlags mcv_fmt;
  mcv_sub->add_option("--n", mcv_config.n, "Bits per sequence");
  mcv_sub->add_option("--sequences", mcv_config.n_sequences, "Sequence count");
  mcv_sub->add_option("--batches", mcv_config.batches, "Batch count");
  mcv_sub->add_option("--seed", mcv_config.master_seed, "Master seed")
      ->each([&](const std::string&) { mcv_seed_set = true; });
  mcv_sub->add_option("--workers", mcv_workers, "Worker threads");
  mcv_fmt.attach(mcv_sub);

  // mc-correlation
  auto* mcc_sub = app.add_subcommand("mc-correlation", "Indicator correlation");
  dftt::experiments::McConfig mcc_config;
  mcc_config.n_sequences = 100000;
  std::size_t mcc_i = 1, mcc_j = 2;
  unsigned mcc_workers = 1;
  bool mcc_seed_set = false;
  FormatFlags mcc_fmt;
  mcc_sub->add_option("--n", mcc_config.n, "Bits per sequence");
  mcc_sub->add_option("--i", mcc_i, "First line index");
  mcc_sub->add_option("--j", mcc_j, "Second line index");
  mcc_sub->add_option("--sequences", mcc_config.n_sequences, "Sequence count");
  mcc_sub->add_option("--batches", mcc_config.batches, "Batch count");
  mcc_sub->add_option("--seed", mcc_config.master_seed, "Master seed")
      ->each([&](const std::string&) { mcc_seed_set = true; });
  mcc_sub->add_option("--workers", mcc_workers, "Worker threads");
  mcc_fmt.attach(mcc_sub);

  // exhaustive
  auto* ex_sub = app.add_subcommand("exhaustive", "Exact small-n moments");
  std::size_t ex_n = 0;
  std::string ex_threshold = "log005";
  FormatFlags ex_fmt;
  ex_sub->add_option("--n", ex_n, "Sequence length (even, <= 16)")->required();
  ex_sub->add_option("--threshold", ex_threshold, "sqrt3n|log005");
  ex_fmt.attach(ex_sub);

  // normality
  auto* norm_sub = app.add_subcommand("normality", "Fourier coefficient normality");
  dftt::experiments::McConfig norm_config;
  norm_config.n = 4096;
  norm_config.n_sequences = 100000;
  std::size_t norm_r = 3;
  unsigned norm_workers = 1;
  bool norm_seed_set = false;
  FormatFlags norm_fmt;
  norm_sub->add_option("--n", norm_config.n, "Bits per sequence");
  norm_sub->add_option("--r", norm_r, "Coefficient pair count");
  norm_sub->add_option("--sequences", norm_config.n_sequences, "Sequence count");
  norm_sub->add_option("--seed", norm_config.master_seed, "Master seed")
      ->each([&](const std::string&) { norm_seed_set = true; });
  norm_sub->add_option("--workers", norm_workers, "Worker threads");
  norm_fmt.attach(norm_sub);

  // lemma-a1
  auto* lemma_sub = app.add_subcommand("lemma-a1", "Log-cos remainder bound");
  double lm_xmax = 0.5, lm_c = 0.1;
  std::size_t lm_grid = 10000;
  FormatFlags lm_fmt;
  lemma_sub->add_option("--x-max", lm_xmax, "Grid upper end (< pi/2)");
  lemma_sub->add_option("--c", lm_c, "Bound constant");
  lemma_sub->add_option("--grid", lm_grid, "Grid point count");
  lm_fmt.attach(lemma_sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*test_sub) {
    return cmd_test(test_input, test_format, test_n, test_threshold, test_model,
                    test_fmt);
  }
  if (*spectrum_sub) {
    return cmd_spectrum(spec_input, spec_format, spec_n);
  }
  if (*theory_sub) {
    return cmd_theory(theory_m, theory_grid, theory_points, theory_t2, theory_fmt);
  }
  if (*simplex_sub) {
    return cmd_simplex(sx_m, sx_samples, sx_seed, sx_batches, sx_workers, sx_t2,
                       sx_fmt);
  }
  if (*mcv_sub) {
    if (!mcv_seed_set) {
      throw std::invalid_argument("mc-variance: --seed is required");
    }
    return cmd_mc_variance(mcv_config, mcv_workers, mcv_fmt);
  }
  if (*mcc_sub) {
    if (!mcc_seed_set) {
      throw std::invalid_argument("mc-correlation: --seed is required");
    }
    return cmd_mc_correlation(mcc_config, mcc_i, mcc_j, mcc_workers, mcc_fmt);
  }
  if (*ex_sub) {
    return cmd_exhaustive(ex_n, ex_threshold, ex_fmt);
  }
  if (*norm_sub) {
    if (!norm_seed_set) {
      throw std::invalid_argument("normality: --seed is required");
    }
    return cmd_normality(norm_config, norm_r, norm_workers, norm_fmt);
  }
  if (*lemma_sub) {
    return cmd_lemma(lm_xmax, lm_c, lm_grid, lm_fmt);
  }
  std::cerr << "no subcommand selected\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const dftt::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
