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

#include "qassert/stats.h"

#include <cmath>
#include <algorithm>
#include <string>

#include "qassert/error.h"

namespace qassert {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0 && alpha < 1)) {
        throw Error(ErrorCode::BadAlpha, "alpha must lie strictly between 0 and 1");
    }
}

// Continued fraction for I_x(a, b), evaluated with the modified Lentz method.
double beta_continued_fraction(double x, double a, double b) {
    const double tiny = 1e-300;
    const double eps = 1e-16;
    double qab = a + b;
    double qap = a + 1;
    double qam = a - 1;
    double c = 1;
    double d = 1 - qab * x / qap;
    if (std::abs(d) < tiny) {
        d = tiny;
    }
    d = 1 / d;
    double h = d;
    for (int m = 1; m <= 10000; m++) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1 + aa * d;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = 1 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1 + aa * d;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = 1 + aa / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1) < eps) {
            break;
        }
    }
    return h;
}

}  // namespace

Interval cp_zero_interval(uint64_t k, double alpha) {
    require_alpha(alpha);
    if (k == 0) {
        throw Error(ErrorCode::ZeroShots, "need at least one shot");
    }
    return Interval{0, -std::expm1(std::log(alpha / 2) / static_cast<double>(k))};
}

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0 && b > 0)) {
        throw Error(ErrorCode::BadArgs, "beta shapes must be positive");
    }
    if (x <= 0) {
        return 0;
    }
    if (x >= 1) {
        return 1;
    }
    double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    double front = std::exp(log_front);
    if (x > a / (a + b)) {
        return 1 - front * beta_continued_fraction(1 - x, b, a) / b;
    }
    return front * beta_continued_fraction(x, a, b) / a;
}

double beta_quantile(double p, double a, double b) {
    if (!(p > 0 && p < 1)) {
        throw Error(ErrorCode::BadArgs, "quantile level must lie strictly between 0 and 1");
    }
    if (!(a >= 1 && b >= 1)) {
        throw Error(ErrorCode::BadArgs, "beta shapes must be at least 1");
    }
    double lo = 0;
    double hi = 1;
    // The a = 1 closed form brackets the answer tightly when it applies.
    if (a == 1) {
        double guess = -std::expm1(std::log1p(-p) / b);
        lo = std::max(0.0, guess * (1 - 1e-6));
        hi = std::min(1.0, guess * (1 + 1e-6) + 1e-300);
        if (regularized_incomplete_beta(lo, a, b) > p) {
            lo = 0;
        }
        if (regularized_incomplete_beta(hi, a, b) < p) {
            hi = 1;
        }
    }
    for (int iter = 0; iter < 200; iter++) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        if (regularized_incomplete_beta(mid, a, b) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

Interval clopper_pearson(uint64_t failures, uint64_t shots, double alpha) {
    require_alpha(alpha);
    if (shots == 0) {
        throw Error(ErrorCode::ZeroShots, "need at least one shot");
    }
    if (failures > shots) {
        throw Error(ErrorCode::BadArgs, "more failures than shots");
    }
    double x = static_cast<double>(failures);
    double n = static_cast<double>(shots);
    Interval out{0, 1};
    if (failures > 0) {
        out.lo = beta_quantile(alpha / 2, x, n - x + 1);
    }
    if (failures < shots) {
        out.hi = beta_quantile(1 - alpha / 2, x + 1, n - x);
    }
    return out;
}

DistanceBounds theorem1_intervals(uint64_t l, uint64_t k) {
    if (l == 0 || k == 0) {
        throw Error(ErrorCode::BadArgs, "l and k must be positive");
    }
    double dl = static_cast<double>(l);
    double d_hi = (0.9 * dl + std::sqrt(dl)) / std::sqrt(static_cast<double>(k));
    bool warn = static_cast<double>(k) < 100.0 * dl * dl;
    return DistanceBounds{d_hi, std::cos(d_hi), warn};
}

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Incorrect:
            return "Incorrect";
        case Verdict::Correct:
            return "Correct";
        case Verdict::Inconclusive:
            return "Inconclusive";
    }
    return "Unknown";
}

SegmentReport theorem2_report(
    const AssertionCounts &counts, std::optional<std::span<const double>> epsilons, double alpha) {
    require_alpha(alpha);
    if (counts.shots == 0) {
        throw Error(ErrorCode::ZeroShots, "need at least one shot");
    }
    if (epsilons && epsilons->size() != counts.failures.size()) {
        throw Error(ErrorCode::BadArgs, "one epsilon per site is required");
    }
    SegmentReport out;
    uint64_t seen = 0;
    double sum_center = 0;
    double spread = 0;
    for (size_t m = 0; m < counts.failures.size(); m++) {
        uint64_t km = counts.failures[m];
        seen += km;
        if (seen >= counts.shots) {
            throw Error(
                ErrorCode::ShapeUnderflow,
                "site " + std::to_string(m + 1) + " leaves no passing shots to analyze");
        }
        double a = static_cast<double>(km) + 1;
        double b = static_cast<double>(counts.shots - seen);
        SegmentVerdict seg{
            beta_quantile(alpha / 2, a, b), beta_quantile(0.5, a, b), beta_quantile(1 - alpha / 2, a, b),
            std::nullopt};
        if (epsilons) {
            double eps = (*epsilons)[m];
            if (!(eps >= 0 && eps <= 1)) {
                throw Error(ErrorCode::BadArgs, "epsilon must lie in [0, 1]");
            }
            if (eps < seg.w_minus) {
                seg.verdict = Verdict::Incorrect;
            } else if (eps > seg.w_plus) {
                seg.verdict = Verdict::Correct;
            } else {
                seg.verdict = Verdict::Inconclusive;
            }
        }
        sum_center += std::sqrt(seg.w_center);
        double gap = std::sqrt(seg.w_plus) - std::sqrt(seg.w_center);
        spread += gap * gap;
        out.segments.push_back(seg);
    }
    out.delta = sum_center + std::sqrt(spread);
    return out;
}

GentleBounds gentle_bounds(double eps) {
    if (!(eps >= 0 && eps <= 1)) {
        throw Error(ErrorCode::BadArgs, "epsilon must lie in [0, 1]");
    }
    return GentleBounds{eps + std::sqrt(eps * (1 - eps)), std::sqrt(1 - eps)};
}

}  // namespace qassert
