#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "dftt/parallel.hpp"
#include "dftt/rng.hpp"

namespace dftt::simplex {

// One draw from the uniform distribution on the scaled simplex
// { u_j >= 0, sum u_j = 2m^2 }: the modeled squared-magnitude vector.
struct SimplexSample {
  std::vector<double> energies;
};

// Exponential normalization: m iid standard exponentials scaled to the
// target sum are exactly uniform on the simplex.
inline SimplexSample sample(std::size_t m, Mt19937& rng) {
  if (m < 2) {
    throw std::invalid_argument("simplex::sample: m must be >= 2");
  }
  SimplexSample out;
  out.energies.resize(m);
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double e = -std::log(rng.next_open01());
    out.energies[j] = e;
    total += e;
  }
  const double scale =
      2.0 * static_cast<double>(m) * static_cast<double>(m) / total;
  for (double& e : out.energies) e *= scale;
  return out;
}

// Batched empirical moments of the pass indicators F_j = 1{energy_j <= t2}.
// Aggregates are means of per-batch values; standard errors are batch SD
// over sqrt(batches). corr is the all-pairs average covariance divided by
// the average coordinate variance (pooled, coordinates are exchangeable).
struct IndicatorStats {
  std::size_t m = 0;
  double t2 = 0.0;
  std::size_t n_samples = 0;
  std::size_t batches = 0;
  std::uint32_t master_seed = 0;

  double mean_f = 0.0;
  double var_f = 0.0;
  double corr = 0.0;
  double var_n1 = 0.0;
  double se_mean_f = 0.0;
  double se_var_f = 0.0;
  double se_corr = 0.0;
  double se_var_n1 = 0.0;

  std::vector<double> batch_mean_f;
  std::vector<double> batch_var_f;
  std::vector<double> batch_corr;
  std::vector<double> batch_var_n1;
};

namespace detail {

struct MeanSe {
  double mean;
  double se;
};

inline MeanSe mean_and_se(const std::vector<double>& v) {
  const double count = static_cast<double>(v.size());
  double sum = 0.0;
  for (double x : v) sum += x;
  const double mean = sum / count;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / (count - 1.0));
  return {mean, sd / std::sqrt(count)};
}

}  // namespace detail

inline IndicatorStats indicator_stats(std::size_t m, double t2,
                                      std::size_t n_samples,
                                      std::uint32_t master_seed,
                                      std::size_t batches = 20,
                                      unsigned workers = 1) {
  if (m < 2) {
    throw std::invalid_argument("indicator_stats: m must be >= 2");
  }
  if (n_samples < 1000) {
    throw std::invalid_argument("indicator_stats: need at least 1000 samples");
  }
  if (batches < 2 || n_samples < 10 * batches) {
    throw std::invalid_argument(
        "indicator_stats: need >= 2 batches and >= 10 samples per batch");
  }
  IndicatorStats out;
  out.m = m;
  out.t2 = t2;
  out.n_samples = n_samples;
  out.batches = batches;
  out.master_seed = master_seed;
  out.batch_mean_f.resize(batches);
  out.batch_var_f.resize(batches);
  out.batch_corr.resize(batches);
  out.batch_var_n1.resize(batches);

  const SeedPlan plan{master_seed};
  const double md = static_cast<double>(m);
  // Batches are the parallel unit; sample s always gets seed master+s, so
  // the result does not depend on the worker count.
  parallel_for_index(batches, workers, [&](std::size_t b) {
    const std::size_t begin = b * n_samples / batches;
    const std::size_t end = (b + 1) * n_samples / batches;
    const double count = static_cast<double>(end - begin);
    std::vector<std::uint64_t> coord_passes(m, 0);
    std::uint64_t sum_n = 0;
    std::uint64_t sum_n_sq = 0;
    for (std::size_t s = begin; s < end; ++s) {
      Mt19937 rng = plan.generator_for(s);
      const SimplexSample draw = sample(m, rng);
      std::uint64_t n1 = 0;
      for (std::size_t j = 0; j < m; ++j) {
        if (draw.energies[j] <= t2) {
          ++coord_passes[j];
          ++n1;
        }
      }
      sum_n += n1;
      sum_n_sq += n1 * n1;
    }
    // Unbiased per-coordinate variance, averaged over coordinates.
    double var_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      const double c = static_cast<double>(coord_passes[j]);
      var_sum += (c - c * c / count) / (count - 1.0);
    }
    const double mean_var_f = var_sum / md;
    const double var_n1 =
        (static_cast<double>(sum_n_sq) -
         static_cast<double>(sum_n) * static_cast<double>(sum_n) / count) /
        (count - 1.0);
    // Sample variance of N1 decomposes exactly into the coordinate variances
    // plus all pairwise sample covariances: the average covariance falls out.
    const double avg_cov = (var_n1 - var_sum) / (md * (md - 1.0));
    out.batch_mean_f[b] = static_cast<double>(sum_n) / (count * md);
    out.batch_var_f[b] = mean_var_f;
    out.batch_corr[b] = avg_cov / mean_var_f;
    out.batch_var_n1[b] = var_n1;
  });

  const auto mf = detail::mean_and_se(out.batch_mean_f);
  const auto vf = detail::mean_and_se(out.batch_var_f);
  const auto cr = detail::mean_and_se(out.batch_corr);
  const auto vn = detail::mean_and_se(out.batch_var_n1);
  out.mean_f = mf.mean;
  out.se_mean_f = mf.se;
  out.var_f = vf.mean;
  out.se_var_f = vf.se;
  out.corr = cr.mean;
  out.se_corr = cr.se;
  out.var_n1 = vn.mean;
  out.se_var_n1 = vn.se;
  return out;
}

}  // namespace dftt::simplex
