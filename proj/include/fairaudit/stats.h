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

// Descriptive statistics used by the bias metrics. Every function throws
// AuditError(kEmptyInput) on an empty span.

#ifndef FAIRAUDIT_STATS_H_
#define FAIRAUDIT_STATS_H_

#include <span>

namespace fairaudit::stats {

double Mean(std::span<const double> values);

// (1/n) * sum (x - mean)^2, i.e. ddof = 0. Two-pass so that constant input
// yields exactly zero.
double PopulationVariance(std::span<const double> values);

double PopulationStd(std::span<const double> values);

// Quantile at level p in [0, 1] by linear interpolation between the closest
// order statistics: h = (n - 1) p, x[floor h] + (h - floor h) * (x[floor h + 1]
// - x[floor h]). Never extrapolates outside [min, max].
double Quantile(std::span<const double> values, double p);

inline double Quantile95(std::span<const double> values) {
  return Quantile(values, 0.95);
}

double Median(std::span<const double> values);

// Unscaled median absolute deviation about the median.
double Mad(std::span<const double> values);

}  // namespace fairaudit::stats

#endif  // FAIRAUDIT_STATS_H_
