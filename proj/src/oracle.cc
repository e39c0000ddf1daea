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

#include "fairaudit/oracle.h"

#include <algorithm>
#include <cmath>

#include "fmt/format.h"

namespace fairaudit {
namespace {

using Vec = std::vector<long double>;

long double Average(const Vec& v) {
  long double total = 0.0L;
  for (size_t i = 0; i < v.size(); ++i) total += v[i];
  return total / static_cast<long double>(v.size());
}

long double Variance(const Vec& v) {
  const long double avg = Average(v);
  long double total = 0.0L;
  for (size_t i = 0; i < v.size(); ++i) {
    total += (v[i] - avg) * (v[i] - avg);
  }
  return total / static_cast<long double>(v.size());
}

// Same interpolation rule as the library, re-derived: position (n-1)p in
// the sorted list, linear between neighbours.
long double Percentile(Vec v, long double p) {
  std::sort(v.begin(), v.end());
  const long double pos = (static_cast<long double>(v.size()) - 1.0L) * p;
  const size_t below = static_cast<size_t>(pos);
  if (below + 1 >= v.size()) return v.back();
  return v[below] + (pos - static_cast<long double>(below)) *
                        (v[below + 1] - v[below]);
}

long double MedianAbsDeviation(const Vec& v) {
  const long double mid = Percentile(v, 0.5L);
  Vec dev;
  for (long double x : v) dev.push_back(x < mid ? mid - x : x - mid);
  return Percentile(dev, 0.5L);
}

class Checker {
 public:
  explicit Checker(double tolerance) : tolerance_(tolerance) {}

  void Check(const std::string& record, const std::string& field,
             long double expected, double actual) {
    ++verdict_.checked;
    const double e = static_cast<double>(expected);
    if (!(std::fabs(e - actual) <= tolerance_)) {
      verdict_.pass = false;
      verdict_.mismatches.push_back({record, field, e, actual});
    }
  }

  void CheckFlag(const std::string& record, const std::string& field,
                 bool expected, bool actual) {
    Check(record, field, expected ? 1.0L : 0.0L, actual ? 1.0 : 0.0);
  }

  void CheckSize(const std::string& record, const std::string& field,
                 size_t expected, size_t actual) {
    Check(record, field, static_cast<long double>(expected),
          static_cast<double>(actual));
  }

  OracleVerdict Take() { return std::move(verdict_); }

 private:
  double tolerance_;
  OracleVerdict verdict_;
};

// Rows of score - baseline for every record.
std::vector<Vec> SensitivityRows(const AuditReport& report, bool after) {
  std::vector<Vec> rows;
  for (const auto& r : report.records) {
    const auto& scores = after ? r.after_scores : r.entity_scores;
    Vec row;
    for (const auto& p : scores) {
      row.push_back(static_cast<long double>(p.value()) -
                    static_cast<long double>(r.baseline.value()));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Vec Column(const std::vector<Vec>& rows, size_t k) {
  Vec col;
  for (const auto& row : rows) col.push_back(row[k]);
  return col;
}

void CheckSummary(Checker& checker, const std::string& label,
                  const Vec& theta_s, const Vec& theta_e,
                  const FairnessSummary& summary) {
  checker.Check("", label + ".sfv_mean", Average(theta_s), summary.sfv_mean);
  checker.Check("", label + ".sfv_std", std::sqrt(Variance(theta_s)),
                summary.sfv_std);
  checker.Check("", label + ".efd_mean", Average(theta_e), summary.efd_mean);
  checker.Check("", label + ".efd_std", std::sqrt(Variance(theta_e)),
                summary.efd_std);
}

}  // namespace

std::string OracleMismatch::Describe() const {
  return fmt::format("{}{}: oracle {:.12g}, report {:.12g}",
                     record_id.empty() ? "" : "record " + record_id + " ",
                     field, expected, actual);
}

OracleVerdict OracleRecompute(const AuditReport& report, double tolerance) {
  Checker checker(tolerance);
  const AuditConfig& config = report.config;
  const size_t k_count = report.entities.size();
  if (report.records.empty()) return checker.Take();

  bool rectangular = true;
  for (const auto& r : report.records) {
    checker.CheckSize(r.id, "entity_scores.size", k_count,
                      r.entity_scores.size());
    rectangular &= r.entity_scores.size() == k_count;
  }
  if (!rectangular) return checker.Take();
  const std::vector<Vec> rows = SensitivityRows(report, false);

  // Corpus-level entity variances and the global prior.
  Vec entity_theta;
  for (size_t k = 0; k < k_count; ++k) {
    entity_theta.push_back(Variance(Column(rows, k)));
  }
  for (size_t k = 0; k < k_count; ++k) {
    const double actual = k < report.entity_theta_before.size()
                              ? report.entity_theta_before[k]
                              : std::nan("");
    checker.Check("", fmt::format("entity_theta_before[{}]", k),
                  entity_theta[k], actual);
  }

  long double prior = Average(entity_theta);
  PriorMode mode = PriorMode::kMeanEntityVariance;
  Vec ebv;
  if (config.global_prior_mode == PriorMode::kMeanEbv) {
    Vec q95;
    Vec mad;
    for (size_t k = 0; k < k_count; ++k) {
      Vec col = Column(rows, k);
      mad.push_back(MedianAbsDeviation(col));
      for (long double& x : col) x = x < 0 ? -x : x;
      q95.push_back(Percentile(col, 0.95L));
    }
    long double q95_max = 0.0L;
    long double mad_max = 0.0L;
    for (size_t k = 0; k < k_count; ++k) {
      if (q95[k] > q95_max) q95_max = q95[k];
      if (mad[k] > mad_max) mad_max = mad[k];
    }
    if (q95_max > 0.0L && mad_max > 0.0L) {
      for (size_t k = 0; k < k_count; ++k) {
        ebv.push_back(q95[k] / q95_max / 2.0L + mad[k] / mad_max / 2.0L);
      }
      prior = Average(ebv);
      mode = PriorMode::kMeanEbv;
    }
  }
  checker.CheckFlag("", "prior_mode_used_is_mean_ebv",
                    mode == PriorMode::kMeanEbv,
                    report.prior_mode_used == PriorMode::kMeanEbv);
  checker.Check("", "global_prior", prior, report.global_prior);
  checker.CheckSize("", "ebv.size", ebv.size(), report.ebv.size());
  for (size_t k = 0; k < ebv.size() && k < report.ebv.size(); ++k) {
    checker.Check("", fmt::format("ebv[{}]", k), ebv[k], report.ebv[k]);
  }

  // Per-record detection values.
  Vec theta_s_before;
  for (size_t n = 0; n < report.records.size(); ++n) {
    const RecordOutcome& r = report.records[n];
    const long double theta_s = Variance(rows[n]);
    theta_s_before.push_back(theta_s);
    const long double clipped =
        theta_s < config.c_theta ? theta_s : config.c_theta;
    const long double theta_s_hat = clipped / config.c_theta;
    const long double risk =
        config.lambda * theta_s_hat + (1.0L - config.lambda) * prior;
    checker.Check(r.id, "theta_s", theta_s, r.bias.theta_s);
    checker.Check(r.id, "theta_s_hat", theta_s_hat, r.bias.theta_s_hat);
    checker.Check(r.id, "risk", risk, r.bias.risk);
    checker.CheckFlag(r.id, "triggered",
                      r.bias.risk >= config.trigger_threshold,
                      r.bias.triggered);
    checker.Check(r.id, "global_prior", prior, r.bias.global_prior);
    checker.CheckSize(r.id, "per_entity_theta.size", k_count,
                      r.bias.per_entity_theta.size());
    for (size_t k = 0; k < k_count && k < r.bias.per_entity_theta.size();
         ++k) {
      checker.Check(r.id, fmt::format("per_entity_theta[{}]", k),
                    entity_theta[k], r.bias.per_entity_theta[k]);
    }
  }
  CheckSummary(checker, "before", theta_s_before, entity_theta, report.before);

  if (!report.after) return checker.Take();

  // After phase, from the after scores and the original baselines.
  size_t mitigated = 0;
  for (const auto& r : report.records) {
    checker.CheckSize(r.id, "after_scores.size", k_count,
                      r.after_scores.size());
    if (r.mitigation) {
      ++mitigated;
      const auto& adj = r.mitigation->adjusted;
      bool same = adj.size() == r.after_scores.size();
      for (size_t k = 0; same && k < adj.size(); ++k) {
        same = adj[k].value() == r.after_scores[k].value();
      }
      checker.CheckFlag(r.id, "after_scores_match_mitigation", true, same);
      long double lo = 1.0L;
      long double hi = 0.0L;
      bool clamped = true;
      for (const auto& p : adj) {
        lo = std::min<long double>(lo, p.value());
        hi = std::max<long double>(hi, p.value());
        clamped = clamped && p.value() >= config.clamp_low &&
                  p.value() <= config.clamp_high;
      }
      checker.CheckFlag(r.id, "mitigation_within_clamp", true, clamped);
      checker.Check(r.id, "mitigation_spread", hi - lo, r.mitigation->spread);
      checker.CheckFlag(r.id, "mitigation_valid",
                        hi - lo <= config.max_spread + 1e-12,
                        r.mitigation->valid);
    } else {
      bool same = r.after_scores.size() == r.entity_scores.size();
      for (size_t k = 0; same && k < r.after_scores.size(); ++k) {
        same = r.after_scores[k].value() == r.entity_scores[k].value();
      }
      checker.CheckFlag(r.id, "unmitigated_scores_unchanged", true, same);
    }
  }
  checker.CheckSize("", "mitigated_count", mitigated, report.mitigated_count);

  const std::vector<Vec> after_rows = SensitivityRows(report, true);
  for (const auto& row : after_rows) rectangular &= row.size() == k_count;
  if (!rectangular) return checker.Take();

  Vec theta_s_after;
  for (size_t n = 0; n < report.records.size(); ++n) {
    const long double v = Variance(after_rows[n]);
    theta_s_after.push_back(v);
    const auto& actual = report.records[n].theta_s_after;
    checker.Check(report.records[n].id, "theta_s_after", v,
                  actual ? *actual : std::nan(""));
  }
  Vec entity_theta_after;
  for (size_t k = 0; k < k_count; ++k) {
    entity_theta_after.push_back(Variance(Column(after_rows, k)));
    const double actual = k < report.entity_theta_after.size()
                              ? report.entity_theta_after[k]
                              : std::nan("");
    checker.Check("", fmt::format("entity_theta_after[{}]", k),
                  entity_theta_after[k], actual);
  }
  CheckSummary(checker, "after", theta_s_after, entity_theta_after,
               *report.after);
  return checker.Take();
}

}  // namespace fairaudit
