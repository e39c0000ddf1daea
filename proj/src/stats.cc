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

#include "fairaudit/stats.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fairaudit/error.h"

namespace fairaudit::stats {
namespace {

void RequireNonEmpty(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw AuditError(ErrorCode::kEmptyInput,
                     std::string(what) + " of an empty list");
  }
}

}  // namespace

double Mean(std::span<const double> values) {
  RequireNonEmpty(values, "mean");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double PopulationVariance(std::span<const double> values) {
  RequireNonEmpty(values, "variance");
  // Deviations are taken around the first element so a constant input
  // gives exactly zero.
  const double pivot = values.front();
  double shifted_sum = 0.0;
  for (double v : values) shifted_sum += v - pivot;
  const double n = static_cast<double>(values.size());
  const double shifted_mean = shifted_sum / n;
  double sum_sq = 0.0;
  for (double v : values) {
    const double d = (v - pivot) - shifted_mean;
    sum_sq += d * d;
  }
  return sum_sq / n;
}

double PopulationStd(std::span<const double> values) {
  return std::sqrt(PopulationVariance(values));
}

double Quantile(std::span<const double> values, double p) {
  RequireNonEmpty(values, "quantile");
  if (!(p >= 0.0 && p <= 1.0)) {
    throw AuditError(ErrorCode::kInvalidArgument,
                     "quantile level outside [0, 1]");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

double Median(std::span<const double> values) {
  return Quantile(values, 0.5);
}

double Mad(std::span<const double> values) {
  const double median = Median(values);
  std::vector<double> deviations;
  deviations.reserve(values.size());
  for (double v : values) deviations.push_back(std::fabs(v - median));
  return Median(deviations);
}

}  // namespace fairaudit::stats
