#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

// Small statistics helpers for the test suites. Everything here is written
// from scratch on purpose: these are the oracles the implementation is judged
// against, so they must not share code with it.
namespace teststats {

inline double ks_statistic(std::vector<double> samples,
                           const std::function<double(double)>& cdf) {
  if (samples.empty()) throw std::invalid_argument("no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                             f - static_cast<double>(i) / n));
  }
  return d;
}

inline double ks_uniform(std::vector<double> samples, double hi) {
  return ks_statistic(std::move(samples), [hi](double x) {
    return std::clamp(x / hi, 0.0, 1.0);
  });
}

inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("no samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::abs(static_cast<double>(i) / na -
                             static_cast<double>(j) / nb));
  }
  return d;
}

// L1 distance between the sample histogram and the exact bin masses of the
// reference cdf, over `bins` equal-width bins spanning [lo, hi]. Samples
// outside the range land in the end bins.
inline double histogram_l1(std::span<const double> samples,
                           const std::function<double(double)>& cdf, double lo,
                           double hi, std::size_t bins) {
  if (samples.empty() || bins == 0 || !(hi > lo)) {
    throw std::invalid_argument("bad histogram parameters");
  }
  std::vector<std::size_t> counts(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  for (double x : samples) {
    double pos = (x - lo) / width;
    if (pos < 0.0) pos = 0.0;
    auto k = static_cast<std::size_t>(pos);
    ++counts[std::min(k, bins - 1)];
  }
  const double n = static_cast<double>(samples.size());
  double l1 = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const double qa = cdf(lo + width * static_cast<double>(k));
    const double qb = cdf(lo + width * static_cast<double>(k + 1));
    l1 += std::abs(static_cast<double>(counts[k]) / n - (qb - qa));
  }
  return l1;
}

}  // namespace teststats
