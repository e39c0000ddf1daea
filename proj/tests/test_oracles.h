// Copyright 2026 The FairAudit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Reference computations used as expected values in tests. Written from the
// definitions, deliberately different in shape from the library code.

#ifndef FAIRAUDIT_TESTS_TEST_ORACLES_H_
#define FAIRAUDIT_TESTS_TEST_ORACLES_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

// Neumaier compensated sum.
inline double CompensatedSum(const std::vector<double>& v) {
  double sum = 0.0;
  double c = 0.0;
  for (double x : v) {
    const double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      c += (sum - t) + x;
    } else {
      c += (x - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

inline double Mean(const std::vector<double>& v) {
  return CompensatedSum(v) / static_cast<double>(v.size());
}

// Variance via the pairwise form (1/2n^2) * sum_i sum_j (x_i - x_j)^2,
// which never touches the mean.
inline double PairwiseVariance(const std::vector<double>& v) {
  long double total = 0.0L;
  for (double a : v) {
    for (double b : v) {
      const long double d = static_cast<long double>(a) - b;
      total += d * d;
    }
  }
  const long double n = static_cast<long double>(v.size());
  return static_cast<double>(total / (2.0L * n * n));
}

inline double PopulationStd(const std::vector<double>& v) {
  return std::sqrt(PairwiseVariance(v));
}

// Linear interpolation between order statistics, found by selection
// rather than a full sort: rank h = (n-1)p, value x_(floor h) plus the
// fractional part of the step to x_(floor h + 1).
inline double LinearQuantile(std::vector<double> v, double p) {
  const double h = (static_cast<double>(v.size()) - 1.0) * p;
  const size_t lo = static_cast<size_t>(std::floor(h));
  const size_t hi = std::min(lo + 1, v.size() - 1);
  std::nth_element(v.begin(), v.begin() + lo, v.end());
  const double x_lo = v[lo];
  std::nth_element(v.begin(), v.begin() + hi, v.end());
  const double x_hi = v[hi];
  return x_lo + (h - static_cast<double>(lo)) * (x_hi - x_lo);
}

inline double Median(const std::vector<double>& v) {
  return LinearQuantile(v, 0.5);
}

inline double Mad(const std::vector<double>& v) {
  const double m = Median(v);
  std::vector<double> dev;
  for (double x : v) dev.push_back(std::fabs(x - m));
  return Median(dev);
}

// Straight-line recomputation of the detection stage for a score table:
// scores[n][k], baselines[n]. Mirrors how one would lay it out in a
// spreadsheet: sensitivity grid, row variances, column variances, EBV
// columns, prior, then one risk per row.
struct Detection {
  std::vector<double> theta_s;
  std::vector<double> theta_e;
  std::vector<double> ebv;
  double prior = 0.0;
  bool used_ebv = false;
  std::vector<double> theta_s_hat;
  std::vector<double> risk;
  std::vector<bool> triggered;
};

inline Detection Detect(const std::vector<std::vector<double>>& scores,
                        const std::vector<double>& baselines, double c_theta,
                        double lambda, double threshold, bool mean_ebv) {
  const size_t n_rows = scores.size();
  const size_t k_cols = scores.front().size();
  std::vector<std::vector<double>> sigma(n_rows, std::vector<double>(k_cols));
  for (size_t n = 0; n < n_rows; ++n) {
    for (size_t k = 0; k < k_cols; ++k) {
      sigma[n][k] = scores[n][k] - baselines[n];
    }
  }
  Detection d;
  for (size_t n = 0; n < n_rows; ++n) {
    d.theta_s.push_back(PairwiseVariance(sigma[n]));
  }
  std::vector<double> q95(k_cols);
  std::vector<double> mad(k_cols);
  for (size_t k = 0; k < k_cols; ++k) {
    std::vector<double> col;
    std::vector<double> abs_col;
    for (size_t n = 0; n < n_rows; ++n) {
      col.push_back(sigma[n][k]);
      abs_col.push_back(std::fabs(sigma[n][k]));
    }
    d.theta_e.push_back(PairwiseVariance(col));
    q95[k] = LinearQuantile(abs_col, 0.95);
    mad[k] = Mad(col);
  }
  const double q_max = *std::max_element(q95.begin(), q95.end());
  const double m_max = *std::max_element(mad.begin(), mad.end());
  if (mean_ebv && q_max > 0.0 && m_max > 0.0) {
    for (size_t k = 0; k < k_cols; ++k) {
      d.ebv.push_back(0.5 * q95[k] / q_max + 0.5 * mad[k] / m_max);
    }
    d.prior = Mean(d.ebv);
    d.used_ebv = true;
  } else {
    d.prior = Mean(d.theta_e);
  }
  for (size_t n = 0; n < n_rows; ++n) {
    const double hat = std::min(d.theta_s[n], c_theta) / c_theta;
    d.theta_s_hat.push_back(hat);
    d.risk.push_back(lambda * hat + (1.0 - lambda) * d.prior);
    d.triggered.push_back(d.risk.back() >= threshold);
  }
  return d;
}

// Random two-decimal probability table.
inline std::vector<std::vector<double>> RandomScores(std::mt19937_64& rng,
                                                     size_t rows,
                                                     size_t cols) {
  std::uniform_int_distribution<int> cents(0, 100);
  std::vector<std::vector<double>> out(rows, std::vector<double>(cols));
  for (auto& row : out) {
    for (double& x : row) x = cents(rng) / 100.0;
  }
  return out;
}

}  // namespace oracle

#endif  // FAIRAUDIT_TESTS_TEST_ORACLES_H_
