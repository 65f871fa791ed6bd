// Copyright 2026 The dgkit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dgkit/eval/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dgkit/error.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit {
namespace {

// Direct O(n^2) average ranks.
std::vector<double> naive_ranks(const std::vector<double>& x) {
  std::vector<double> r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (x[j] < x[i]) ++less;
      if (j != i && x[j] == x[i]) ++equal;
    }
    r[i] = 1 + less + equal / 2;
  }
  return r;
}

double naive_pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  const double cov = sxy - sx * sy / n;
  const double vx = sxx - sx * sx / n, vy = syy - sy * sy / n;
  if (vx <= 1e-12 || vy <= 1e-12) return 0.0;
  return cov / std::sqrt(vx * vy);
}

TEST(Classify, HandBuiltConfusionCase) {
  const std::vector<int> truth = {0, 0, 1, 1, 2, 2};
  const std::vector<int> pred = {0, 1, 1, 1, 2, 0};
  const auto m = classify(truth, pred, {"a", "b", "c"});
  EXPECT_EQ(m.instances, 6u);
  EXPECT_EQ(m.correct, 4u);
  EXPECT_DOUBLE_EQ(m.accuracy, 4.0 / 6.0);
  const std::vector<std::vector<std::size_t>> confusion = {{1, 1, 0}, {0, 2, 0}, {1, 0, 1}};
  EXPECT_EQ(m.confusion, confusion);
  EXPECT_DOUBLE_EQ(m.precision[0], 0.5);
  EXPECT_DOUBLE_EQ(m.precision[1], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.precision[2], 1.0);
  EXPECT_DOUBLE_EQ(m.recall[0], 0.5);
  EXPECT_DOUBLE_EQ(m.recall[1], 1.0);
  EXPECT_DOUBLE_EQ(m.recall[2], 0.5);
  EXPECT_DOUBLE_EQ(m.f1[1], 0.8);
  EXPECT_NEAR(m.macro_precision, 13.0 / 18.0, 1e-12);
  EXPECT_NEAR(m.macro_recall, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(m.macro_f1, 59.0 / 90.0, 1e-12);
}

TEST(Classify, MacroOnlyOverSupportedClasses) {
  const auto m = classify(std::vector<int>{0, 0, 1}, std::vector<int>{0, 2, 1}, {"a", "b", "c"});
  EXPECT_EQ(m.support[2], 0u);
  EXPECT_NEAR(m.macro_recall, (0.5 + 1.0) / 2, 1e-12);
}

TEST(Classify, MissingPredictionsCountAsWrong) {
  const auto m = classify(std::vector<int>{0, 1}, std::vector<int>{kMissingClass, 1}, {"a", "b"});
  EXPECT_EQ(m.correct, 1u);
  EXPECT_EQ(m.unpredicted[0], 1u);
  EXPECT_DOUBLE_EQ(m.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(m.recall[0], 0.0);
}

TEST(Classify, RejectsBadInput) {
  EXPECT_THROW(classify(std::vector<int>{0}, std::vector<int>{0, 1}, {"a", "b"}), Error);
  EXPECT_THROW(classify(std::vector<int>{2}, std::vector<int>{0}, {"a", "b"}), Error);
  EXPECT_THROW(classify(std::vector<int>{0}, std::vector<int>{-2}, {"a", "b"}), Error);
}

TEST(Classify, MacroF1LiesBetweenPerClassExtremes) {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> t(30), p(30);
    for (int k = 0; k < 30; ++k) {
      t[k] = static_cast<int>(rng.below(4));
      p[k] = rng.bernoulli(0.5) ? t[k] : static_cast<int>(rng.below(4));
    }
    const auto m = classify(t, p, {"a", "b", "c", "d"});
    double lo = 1, hi = 0;
    for (std::size_t c = 0; c < 4; ++c) {
      if (m.support[c] == 0) continue;
      lo = std::min(lo, m.f1[c]);
      hi = std::max(hi, m.f1[c]);
    }
    EXPECT_GE(m.macro_f1, lo - 1e-12);
    EXPECT_LE(m.macro_f1, hi + 1e-12);
    std::size_t diag = 0;
    for (std::size_t c = 0; c < 4; ++c) diag += m.confusion[c][c];
    EXPECT_EQ(diag, m.correct);
  }
}

TEST(Classify, PermutationInvariant) {
  Rng rng(6);
  std::vector<int> t(40), p(40);
  for (int k = 0; k < 40; ++k) {
    t[k] = static_cast<int>(rng.below(3));
    p[k] = static_cast<int>(rng.below(3));
  }
  const auto m = classify(t, p, {"a", "b", "c"});
  std::vector<std::size_t> order(40);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), std::mt19937(1));
  std::vector<int> t2, p2;
  for (std::size_t k : order) {
    t2.push_back(t[k]);
    p2.push_back(p[k]);
  }
  const auto m2 = classify(t2, p2, {"a", "b", "c"});
  EXPECT_EQ(m2.confusion, m.confusion);
  EXPECT_EQ(m2.macro_f1, m.macro_f1);
}

TEST(Correlation, DegenerateInputs) {
  const std::vector<double> c = {0.5, 0.5, 0.5}, x = {0.1, 0.2, 0.3};
  EXPECT_TRUE(pearson(c, x).degenerate);
  EXPECT_EQ(pearson(c, x).value, 0.0);
  EXPECT_TRUE(spearman(x, c).degenerate);
  EXPECT_TRUE(pearson(std::vector<double>{1.0}, std::vector<double>{2.0}).degenerate);
  EXPECT_TRUE(pearson(std::vector<double>{}, std::vector<double>{}).degenerate);
  EXPECT_FALSE(pearson(x, x).degenerate);
  EXPECT_DOUBLE_EQ(pearson(x, x).value, 1.0);
}

TEST(Correlation, AverageRanksWithTies) {
  const std::vector<double> x = {3, 1, 3, 2};
  EXPECT_EQ(average_ranks(x), (std::vector<double>{3.5, 1, 3.5, 2}));
}

TEST(Correlation, SpearmanInvariantUnderMonotoneMaps) {
  Rng rng(7);
  std::vector<double> x(50), y(50);
  for (int k = 0; k < 50; ++k) {
    x[k] = rng.uniform();
    y[k] = x[k] + 0.3 * rng.uniform();
  }
  std::vector<double> fx(50);
  std::transform(x.begin(), x.end(), fx.begin(), [](double v) { return std::exp(3 * v) - 7; });
  EXPECT_NEAR(spearman(fx, y).value, spearman(x, y).value, 1e-12);
}

TEST(Correlation, PearsonInvariantUnderPositiveAffineMaps) {
  Rng rng(8);
  std::vector<double> x(50), y(50), ax(50);
  for (int k = 0; k < 50; ++k) {
    x[k] = rng.uniform();
    y[k] = x[k] * x[k] + 0.1 * rng.uniform();
    ax[k] = 4 * x[k] + 2;
  }
  EXPECT_NEAR(pearson(ax, y).value, pearson(x, y).value, 1e-12);
  std::vector<double> neg(50);
  std::transform(x.begin(), x.end(), neg.begin(), [](double v) { return -v; });
  EXPECT_NEAR(pearson(neg, y).value, -pearson(x, y).value, 1e-12);
}

TEST(Correlation, ExhaustiveSmallListsMatchNaiveOracle) {
  const double alphabet[] = {0.0, 0.25, 0.5, 1.0};
  for (std::size_t n = 2; n <= 5; ++n) {
    std::size_t total = 1;
    for (std::size_t k = 0; k < n; ++k) total *= 4;
    for (std::size_t a = 0; a < total; ++a) {
      std::vector<double> x(n);
      for (std::size_t k = 0, v = a; k < n; ++k, v /= 4) x[k] = alphabet[v % 4];
      EXPECT_EQ(average_ranks(x), naive_ranks(x));
      for (std::size_t b = 0; b < total; b += 3) {
        std::vector<double> y(n);
        for (std::size_t k = 0, v = b; k < n; ++k, v /= 4) y[k] = alphabet[v % 4];
        ASSERT_NEAR(pearson(x, y).value, naive_pearson(x, y), 1e-9);
        ASSERT_NEAR(spearman(x, y).value, naive_pearson(naive_ranks(x), naive_ranks(y)), 1e-9);
      }
    }
  }
}

}  // namespace
}  // namespace dgkit
