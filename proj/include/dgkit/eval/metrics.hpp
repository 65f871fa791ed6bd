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

// Classification and correlation metrics on plain vectors.

#ifndef DGKIT_EVAL_METRICS_HPP_
#define DGKIT_EVAL_METRICS_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace dgkit {

inline constexpr int kMissingClass = -1;

struct ClassificationMetrics {
  std::vector<std::string> classes;
  std::size_t instances = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  // Macro averages over classes with ground-truth support.
  double macro_precision = 0.0;
  double macro_recall = 0.0;
  double macro_f1 = 0.0;
  std::vector<std::size_t> support;
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f1;
  // confusion[truth][predicted]; instances without a prediction are counted
  // in unpredicted[truth] instead, so each row sum plus unpredicted equals
  // the class support.
  std::vector<std::vector<std::size_t>> confusion;
  std::vector<std::size_t> unpredicted;
};

// truth[k] in [0, classes.size()); predicted[k] likewise or kMissingClass,
// which counts as wrong. Throws kOutOfRange for other values or unequal
// lengths.
ClassificationMetrics classify(std::span<const int> truth, std::span<const int> predicted,
                               std::vector<std::string> classes);

// Average (fractional) ranks, 1-based; ties share the mean of their ranks.
std::vector<double> average_ranks(std::span<const double> values);

struct Correlation {
  double value = 0.0;
  // Set when either input has zero variance (or fewer than two samples);
  // value is then 0.
  bool degenerate = false;
};

Correlation pearson(std::span<const double> x, std::span<const double> y);
// Pearson correlation of average ranks.
Correlation spearman(std::span<const double> x, std::span<const double> y);

}  // namespace dgkit

#endif  // DGKIT_EVAL_METRICS_HPP_
