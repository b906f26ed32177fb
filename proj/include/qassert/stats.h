// Copyright 2026 The qassert Authors
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

#ifndef QASSERT_STATS_H
#define QASSERT_STATS_H

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace qassert {

struct Interval {
    double lo;
    double hi;
};

/// (0, 1 - (alpha/2)^(1/k)): the exact interval for zero observed failures.
Interval cp_zero_interval(uint64_t k, double alpha);

/// I_x(a, b), the regularized incomplete beta function.
double regularized_incomplete_beta(double x, double a, double b);

/// x with I_x(a, b) = p. Requires 0 < p < 1 and a, b >= 1.
double beta_quantile(double p, double a, double b);

/// Two-sided exact binomial interval for `failures` out of `shots`.
Interval clopper_pearson(uint64_t failures, uint64_t shots, double alpha);

struct DistanceBounds {
    /// Trace distance lies in [0, d_hi].
    double d_hi;
    /// Fidelity lies in [f_lo, 1].
    double f_lo;
    /// Set when k < 100 l^2, where the large-k simplification is unreliable.
    bool small_sample_warning;
};

/// Bounds for l assertions that each passed all k shots.
DistanceBounds theorem1_intervals(uint64_t l, uint64_t k);

struct AssertionCounts {
    /// Failures per site, in program order.
    std::vector<uint64_t> failures;
    uint64_t shots = 0;
};

enum class Verdict { Incorrect, Correct, Inconclusive };

const char *verdict_name(Verdict v);

struct SegmentVerdict {
    double w_minus;
    double w_center;
    double w_plus;
    std::optional<Verdict> verdict;
};

struct SegmentReport {
    std::vector<SegmentVerdict> segments;
    /// Error parameter with which the final state approximately satisfies the
    /// last predicate.
    double delta;
};

/// Per-site beta-quantile intervals and verdicts. Site m uses shapes
/// (k_m + 1, k - sum_{i<=m} k_i); throws ShapeUnderflow when the second shape
/// drops below 1. `alpha` = 0.05 gives the 0.025 / 0.5 / 0.975 quantiles.
SegmentReport theorem2_report(
    const AssertionCounts &counts, std::optional<std::span<const double>> epsilons, double alpha = 0.05);

struct GentleBounds {
    double d_upper;
    double f_lower;
};

/// For a state that passes a projective check with probability 1 - eps.
GentleBounds gentle_bounds(double eps);

}  // namespace qassert

#endif
