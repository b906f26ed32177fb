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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qassert/error.h"

using namespace qassert;

namespace {

// I_x(a, b) for integer shapes as a binomial tail: P(Bin(a+b-1, x) >= a).
double binomial_tail_oracle(double x, int a, int b) {
    int n = a + b - 1;
    double total = 0;
    for (int j = a; j <= n; j++) {
        double log_term = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0) +
                          j * std::log(x) + (n - j) * std::log1p(-x);
        total += std::exp(log_term);
    }
    return total;
}

ErrorCode code_of(auto &&fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorCode::BadArgs;
}

}  // namespace

TEST(cp_zero_interval, hundred_shots) {
    Interval i = cp_zero_interval(100, 0.05);
    ASSERT_EQ(i.lo, 0);
    // 1 - 0.025^(1/100), evaluated independently.
    ASSERT_NEAR(i.hi, 0.03621669264517646, 1e-15);
}

TEST(cp_zero_interval, one_shot) {
    ASSERT_NEAR(cp_zero_interval(1, 0.05).hi, 0.975, 1e-15);
}

TEST(cp_zero_interval, large_k_series) {
    // -ln(0.025)/k to first order; the exact value at k = 1e6.
    Interval i = cp_zero_interval(1000000, 0.05);
    ASSERT_NEAR(i.hi, 3.688872650231545e-06, 1e-15);
    ASSERT_NEAR(i.hi * 1e6, -std::log(0.025), 1e-5);
}

TEST(cp_zero_interval, errors) {
    ASSERT_EQ(code_of([] { cp_zero_interval(0, 0.05); }), ErrorCode::ZeroShots);
    ASSERT_EQ(code_of([] { cp_zero_interval(10, 0); }), ErrorCode::BadAlpha);
    ASSERT_EQ(code_of([] { cp_zero_interval(10, 1); }), ErrorCode::BadAlpha);
}

TEST(beta_quantile, uniform_median) {
    ASSERT_NEAR(beta_quantile(0.5, 1, 1), 0.5, 1e-12);
}

TEST(beta_quantile, closed_form_a1) {
    ASSERT_NEAR(beta_quantile(0.5, 1, 101), 0.006839347841746557, 1e-12);
    ASSERT_NEAR(beta_quantile(0.975, 1, 100), 0.03621669264517646, 1e-12);
}

TEST(beta_quantile, closed_form_sweep) {
    for (double p : {0.025, 0.5, 0.975}) {
        for (double b = 1; b <= 1e4; b *= 1.3) {
            double shape = std::round(b);
            double expected = 1 - std::pow(1 - p, 1 / shape);
            ASSERT_NEAR(beta_quantile(p, 1, shape), expected, 1e-10) << p << " " << shape;
        }
    }
}

TEST(beta_quantile, inverts_binomial_tail) {
    for (int a : {2, 5, 11}) {
        for (int b : {3, 40, 90}) {
            for (double p : {0.025, 0.5, 0.975}) {
                double x = beta_quantile(p, a, b);
                ASSERT_NEAR(binomial_tail_oracle(x, a, b), p, 1e-10);
            }
        }
    }
}

TEST(beta_quantile, strictly_increasing) {
    double prev = 0;
    for (double p = 0.01; p < 1; p += 0.01) {
        double x = beta_quantile(p, 3, 17);
        ASSERT_GT(x, prev);
        prev = x;
    }
}

TEST(beta_quantile, errors) {
    ASSERT_EQ(code_of([] { beta_quantile(0, 1, 1); }), ErrorCode::BadArgs);
    ASSERT_EQ(code_of([] { beta_quantile(1, 1, 1); }), ErrorCode::BadArgs);
    ASSERT_EQ(code_of([] { beta_quantile(0.5, 0.5, 1); }), ErrorCode::BadArgs);
}

TEST(clopper_pearson, zero_failures_matches_zero_form) {
    Interval general = clopper_pearson(0, 100, 0.05);
    ASSERT_EQ(general.lo, 0);
    ASSERT_NEAR(general.hi, cp_zero_interval(100, 0.05).hi, 1e-12);
}

TEST(clopper_pearson, endpoints_invert_binomial_tails) {
    Interval i = clopper_pearson(10, 100, 0.05);
    ASSERT_NEAR(binomial_tail_oracle(i.lo, 10, 91), 0.025, 1e-10);
    ASSERT_NEAR(binomial_tail_oracle(i.hi, 11, 90), 0.975, 1e-10);
}

TEST(theorem1_intervals, four_sites) {
    DistanceBounds b = theorem1_intervals(4, 10000);
    ASSERT_NEAR(b.d_hi, 0.056, 1e-15);
    ASSERT_NEAR(b.f_lo, 0.9984324097278344, 1e-12);
    ASSERT_FALSE(b.small_sample_warning);
}

TEST(theorem1_intervals, one_site) {
    ASSERT_NEAR(theorem1_intervals(1, 100000000).d_hi, 1.9e-4, 1e-15);
    DistanceBounds b = theorem1_intervals(1, 100);
    ASSERT_NEAR(b.d_hi, 0.19, 1e-15);
    ASSERT_FALSE(b.small_sample_warning);
    ASSERT_TRUE(theorem1_intervals(2, 399).small_sample_warning);
}

TEST(theorem1_intervals, monotone) {
    for (uint64_t k = 100; k < 100000; k *= 3) {
        ASSERT_GT(theorem1_intervals(2, k).d_hi, theorem1_intervals(2, k * 3).d_hi);
        ASSERT_LT(theorem1_intervals(2, k).d_hi, theorem1_intervals(3, k).d_hi);
    }
    ASSERT_EQ(code_of([] { theorem1_intervals(0, 10); }), ErrorCode::BadArgs);
    ASSERT_EQ(code_of([] { theorem1_intervals(1, 0); }), ErrorCode::BadArgs);
}

TEST(theorem2_report, zero_failures_one_site) {
    AssertionCounts counts{{0}, 100};
    SegmentReport r = theorem2_report(counts, std::nullopt);
    ASSERT_EQ(r.segments.size(), 1u);
    const SegmentVerdict &s = r.segments[0];
    ASSERT_NEAR(s.w_minus, 1 - std::pow(0.975, 0.01), 1e-12);
    ASSERT_NEAR(s.w_center, 1 - std::pow(0.5, 0.01), 1e-12);
    ASSERT_NEAR(s.w_plus, 1 - std::pow(0.025, 0.01), 1e-12);
    ASSERT_NEAR(r.delta, std::sqrt(s.w_plus), 1e-12);
    ASSERT_NEAR(r.delta, 0.19030683814612775, 1e-10);
    ASSERT_FALSE(s.verdict.has_value());
}

TEST(theorem2_report, zero_failures_vanish_with_k) {
    double prev = 10;
    for (uint64_t k = 10; k <= 10000000; k *= 10) {
        AssertionCounts counts{{0, 0, 0}, k};
        SegmentReport r = theorem2_report(counts, std::nullopt);
        ASSERT_LT(r.delta, prev);
        prev = r.delta;
    }
    ASSERT_LT(prev, 2e-3);
}

TEST(theorem2_report, ten_failures_is_incorrect) {
    AssertionCounts counts{{10}, 100};
    std::vector<double> eps{0.01};
    SegmentReport r = theorem2_report(counts, std::span<const double>(eps));
    ASSERT_NEAR(binomial_tail_oracle(r.segments[0].w_minus, 11, 90), 0.025, 1e-10);
    ASSERT_NEAR(r.segments[0].w_minus, 0.05620702, 1e-7);
    ASSERT_EQ(r.segments[0].verdict, Verdict::Incorrect);
}

TEST(theorem2_report, verdict_directions) {
    AssertionCounts counts{{0}, 1000};
    std::vector<double> loose{0.5};
    ASSERT_EQ(theorem2_report(counts, std::span<const double>(loose)).segments[0].verdict, Verdict::Correct);
    std::vector<double> tight{0.001};
    ASSERT_EQ(theorem2_report(counts, std::span<const double>(tight)).segments[0].verdict, Verdict::Inconclusive);
}

TEST(theorem2_report, shape_underflow) {
    AssertionCounts counts{{0, 100}, 100};
    ASSERT_EQ(code_of([&] { theorem2_report(counts, std::nullopt); }), ErrorCode::ShapeUnderflow);
}

TEST(theorem2_report, ordered_intervals) {
    AssertionCounts counts{{3, 0, 7}, 200};
    for (const auto &s : theorem2_report(counts, std::nullopt).segments) {
        ASSERT_LE(0, s.w_minus);
        ASSERT_LE(s.w_minus, s.w_center);
        ASSERT_LE(s.w_center, s.w_plus);
        ASSERT_LE(s.w_plus, 1);
    }
}

TEST(gentle_bounds, examples) {
    GentleBounds zero = gentle_bounds(0);
    ASSERT_EQ(zero.d_upper, 0);
    ASSERT_EQ(zero.f_lower, 1);
    GentleBounds one = gentle_bounds(1);
    ASSERT_EQ(one.d_upper, 1);
    ASSERT_EQ(one.f_lower, 0);
    GentleBounds mid = gentle_bounds(0.01);
    ASSERT_NEAR(mid.d_upper, 0.109498743710662, 1e-12);
    ASSERT_NEAR(mid.f_lower, 0.99498743710662, 1e-12);
    ASSERT_EQ(code_of([] { gentle_bounds(-0.1); }), ErrorCode::BadArgs);
}
