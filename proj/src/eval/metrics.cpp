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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dgkit/error.hpp"

namespace dgkit {

ClassificationMetrics classify(std::span<const int> truth, std::span<const int> predicted,
                               std::vector<std::string> classes) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::kOutOfRange, "truth and prediction lengths differ");
  }
  const int n_classes = static_cast<int>(classes.size());
  ClassificationMetrics m;
  m.classes = std::move(classes);
  m.instances = truth.size();
  m.support.assign(n_classes, 0);
  m.precision.assign(n_classes, 0.0);
  m.recall.assign(n_classes, 0.0);
  m.f1.assign(n_classes, 0.0);
  m.confusion.assign(n_classes, std::vector<std::size_t>(n_classes, 0));
  m.unpredicted.assign(n_classes, 0);

  std::vector<std::size_t> predicted_count(n_classes, 0);
  for (std::size_t k = 0; k < truth.size(); ++k) {
    const int t = truth[k], p = predicted[k];
    if (t < 0 || t >= n_classes || p < kMissingClass || p >= n_classes) {
      throw Error(ErrorCode::kOutOfRange, "class id out of range at instance " + std::to_string(k));
    }
    ++m.support[t];
    if (p == kMissingClass) {
      ++m.unpredicted[t];
      continue;
    }
    ++m.confusion[t][p];
    ++predicted_count[p];
    if (t == p) ++m.correct;
  }
  if (m.instances == 0) return m;
  m.accuracy = static_cast<double>(m.correct) / static_cast<double>(m.instances);

  int supported = 0;
  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
  for (int c = 0; c < n_classes; ++c) {
    const double tp = static_cast<double>(m.confusion[c][c]);
    m.precision[c] = predicted_count[c] ? tp / predicted_count[c] : 0.0;
    m.recall[c] = m.support[c] ? tp / m.support[c] : 0.0;
    const double pr = m.precision[c] + m.recall[c];
    m.f1[c] = pr > 0.0 ? 2.0 * m.precision[c] * m.recall[c] / pr : 0.0;
    if (m.support[c] == 0) continue;
    ++supported;
    sum_p += m.precision[c];
    sum_r += m.recall[c];
    sum_f += m.f1[c];
  }
  m.macro_precision = sum_p / supported;
  m.macro_recall = sum_r / supported;
  m.macro_f1 = sum_f / supported;
  return m;
}

std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    // Positions i..j (0-based) share rank mean((i+1)..(j+1)).
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

Correlation pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kOutOfRange, "correlation inputs differ in length");
  const std::size_t n = x.size();
  if (n < 2) return {0.0, true};
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double dx = x[k] - mx, dy = y[k] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) return {0.0, true};
  return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), false};
}

Correlation spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kOutOfRange, "correlation inputs differ in length");
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  return pearson(rx, ry);
}

}  // namespace dgkit
