#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dftt/bitseq.hpp"

namespace dftt {

// Magnitudes |f_j| of the DFT of a real ±1 sequence, stored for
// j = 0..floor(n/2). That range is enough to reconstruct full-spectrum
// quantities for either parity; the tested half-spectrum is the prefix
// j < floor(n/2).
class SpectrumMagnitudes {
 public:
  SpectrumMagnitudes(std::size_t n, std::vector<double> lines)
      : n_(n), lines_(std::move(lines)) {
    if (n_ < 2) {
      throw std::invalid_argument("SpectrumMagnitudes: n must be >= 2");
    }
    if (lines_.size() != n_ / 2 + 1) {
      throw std::invalid_argument(
          "SpectrumMagnitudes: expected " + std::to_string(n_ / 2 + 1) +
          " lines for n=" + std::to_string(n_) + ", got " +
          std::to_string(lines_.size()));
    }
    for (double v : lines_) {
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("SpectrumMagnitudes: line not finite/nonnegative");
      }
    }
  }

  std::size_t n() const noexcept { return n_; }

  // All stored lines, j = 0..floor(n/2).
  std::span<const double> lines() const noexcept { return lines_; }

  // The floor(n/2) lines the spectral test counts over.
  std::span<const double> half() const noexcept {
    return std::span<const double>(lines_.data(), n_ / 2);
  }

  double dc() const noexcept { return lines_.front(); }

  bool has_nyquist() const noexcept { return n_ % 2 == 0; }

  double nyquist() const {
    if (!has_nyquist()) {
      throw std::logic_error("SpectrumMagnitudes::nyquist: n is odd");
    }
    return lines_.back();
  }

 private:
  std::size_t n_;
  std::vector<double> lines_;
};

namespace detail {

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double v) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

inline void validate_signed(std::span<const std::int8_t> x) {
  if (x.size() < 2) {
    throw std::invalid_argument("dft: sequence length must be >= 2");
  }
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] != 1 && x[k] != -1) {
      throw std::invalid_argument("dft: value not in {-1,+1} at index " +
                                  std::to_string(k));
    }
  }
}

// Iterative radix-2 Cooley-Tukey. Plans (twiddles + bit reversal) are cached
// per thread so repeated transforms of one length pay the table cost once.
struct Radix2Plan {
  std::size_t n;
  std::vector<std::complex<double>> twiddles;  // exp(-2 pi i k / n), k < n/2
  std::vector<std::uint32_t> bitrev;

  explicit Radix2Plan(std::size_t size) : n(size) {
    twiddles.resize(n / 2);
    for (std::size_t k = 0; k < n / 2; ++k) {
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>(k) / static_cast<double>(n);
      twiddles[k] = {std::cos(angle), std::sin(angle)};
    }
    bitrev.resize(n);
    std::uint32_t bits = 0;
    while ((std::size_t{1} << bits) < n) ++bits;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t r = 0;
      for (std::uint32_t b = 0; b < bits; ++b) {
        r |= ((i >> b) & 1u) << (bits - 1 - b);
      }
      bitrev[i] = r;
    }
  }
};

inline const Radix2Plan& radix2_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<Radix2Plan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<Radix2Plan>(n)).first;
  }
  return *it->second;
}

inline void fft_pow2_inplace(std::vector<std::complex<double>>& a,
                             const Radix2Plan& plan) {
  const std::size_t n = plan.n;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = plan.bitrev[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t step = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const std::complex<double> w = plan.twiddles[k * step];
        const std::complex<double> t = w * a[start + k + half];
        a[start + k + half] = a[start + k] - t;
        a[start + k] += t;
      }
    }
  }
}

// Chirp-z (Bluestein) reduction of an arbitrary-length DFT to a padded
// power-of-2 convolution. Chirp angles use k^2 mod 2n in integers so the
// phase stays exact for large k.
struct BluesteinPlan {
  std::size_t n;
  std::size_t padded;
  std::vector<std::complex<double>> chirp;       // exp(-i pi k^2 / n)
  std::vector<std::complex<double>> kernel_fft;  // FFT of conj-chirp kernel

  explicit BluesteinPlan(std::size_t size) : n(size) {
    padded = std::size_t{1};
    while (padded < 2 * n - 1) padded <<= 1;
    chirp.resize(n);
    const std::uint64_t wrap = 2 * static_cast<std::uint64_t>(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t sq = (static_cast<std::uint64_t>(k) * k) % wrap;
      const double angle = -std::numbers::pi * static_cast<double>(sq) /
                           static_cast<double>(n);
      chirp[k] = {std::cos(angle), std::sin(angle)};
    }
    std::vector<std::complex<double>> kernel(padded, {0.0, 0.0});
    kernel[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k) {
      kernel[k] = std::conj(chirp[k]);
      kernel[padded - k] = std::conj(chirp[k]);
    }
    fft_pow2_inplace(kernel, radix2_plan(padded));
    kernel_fft = std::move(kernel);
  }
};

inline const BluesteinPlan& bluestein_plan(std::size_t n) {
  thread_local std::unordered_map<std::size_t, std::unique_ptr<BluesteinPlan>> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, std::make_unique<BluesteinPlan>(n)).first;
  }
  return *it->second;
}

}  // namespace detail

// Direct O(n^2) transform with compensated summation and exact index
// arithmetic for the twiddle table. This is the oracle the fast path is
// checked against; keep it boring.
inline SpectrumMagnitudes dft_naive(std::span<const std::int8_t> x) {
  detail::validate_signed(x);
  const std::size_t n = x.size();
  std::vector<double> cos_table(n);
  std::vector<double> sin_table(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double angle = -2.0 * std::numbers::pi * static_cast<double>(r) /
                         static_cast<double>(n);
    cos_table[r] = std::cos(angle);
    sin_table[r] = std::sin(angle);
  }
  std::vector<double> lines(n / 2 + 1);
  for (std::size_t j = 0; j <= n / 2; ++j) {
    detail::KahanSum re;
    detail::KahanSum im;
    std::size_t r = 0;  // r = (k*j) mod n without multiplication
    for (std::size_t k = 0; k < n; ++k) {
      if (x[k] > 0) {
        re.add(cos_table[r]);
        im.add(sin_table[r]);
      } else {
        re.add(-cos_table[r]);
        im.add(-sin_table[r]);
      }
      r += j;
      if (r >= n) r -= n;
    }
    lines[j] = std::hypot(re.sum, im.sum);
  }
  return SpectrumMagnitudes(n, std::move(lines));
}

// Fast transform: radix-2 when n is a power of two, Bluestein otherwise.
inline SpectrumMagnitudes dft_fast(std::span<const std::int8_t> x) {
  detail::validate_signed(x);
  const std::size_t n = x.size();
  std::vector<double> lines(n / 2 + 1);
  if ((n & (n - 1)) == 0) {
    const detail::Radix2Plan& plan = detail::radix2_plan(n);
    std::vector<std::complex<double>> a(n);
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = {static_cast<double>(x[k]), 0.0};
    }
    detail::fft_pow2_inplace(a, plan);
    for (std::size_t j = 0; j <= n / 2; ++j) {
      lines[j] = std::abs(a[j]);
    }
  } else {
    const detail::BluesteinPlan& plan = detail::bluestein_plan(n);
    const detail::Radix2Plan& pplan = detail::radix2_plan(plan.padded);
    std::vector<std::complex<double>> a(plan.padded, {0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
      a[k] = plan.chirp[k] * static_cast<double>(x[k]);
    }
    detail::fft_pow2_inplace(a, pplan);
    for (std::size_t k = 0; k < plan.padded; ++k) {
      a[k] = std::conj(a[k] * plan.kernel_fft[k]);
    }
    detail::fft_pow2_inplace(a, pplan);
    // Inverse transform is conj(FFT(conj(.)))/padded; f_j then carries one
    // more unit-modulus chirp factor, which magnitudes ignore.
    const double scale = 1.0 / static_cast<double>(plan.padded);
    for (std::size_t j = 0; j <= n / 2; ++j) {
      lines[j] = std::abs(a[j]) * scale;
    }
  }
  return SpectrumMagnitudes(n, std::move(lines));
}

inline SpectrumMagnitudes dft_naive(const BitSequence& seq) {
  const auto vals = seq.signed_values();
  return dft_naive(std::span<const std::int8_t>(vals));
}

inline SpectrumMagnitudes dft_fast(const BitSequence& seq) {
  const auto vals = seq.signed_values();
  return dft_fast(std::span<const std::int8_t>(vals));
}

// Full-spectrum energy sum reconstructed from the stored half: conjugate
// symmetry doubles every line except DC and (for even n) Nyquist. For a ±1
// input this equals n².
inline double parseval_energy(const SpectrumMagnitudes& spectrum) {
  const std::size_t n = spectrum.n();
  const auto lines = spectrum.lines();
  detail::KahanSum acc;
  acc.add(lines[0] * lines[0]);
  const std::size_t last = n / 2;
  for (std::size_t j = 1; j < last; ++j) {
    acc.add(2.0 * lines[j] * lines[j]);
  }
  if (last >= 1) {
    const double weight = (n % 2 == 0) ? 1.0 : 2.0;
    acc.add(weight * lines[last] * lines[last]);
  }
  return acc.sum;
}

}  // namespace dftt
