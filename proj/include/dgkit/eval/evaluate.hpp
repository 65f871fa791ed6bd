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

// Scoring predictions against ground-truth graphs, the random baseline,
// whole-image ranking and prompt rendering.

#ifndef DGKIT_EVAL_EVALUATE_HPP_
#define DGKIT_EVAL_EVALUATE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dgkit/core/graph.hpp"
#include "dgkit/eval/metrics.hpp"

namespace dgkit {

struct RegionPrediction {
  Relation relation = Relation::kSame;
  Family dist_anchor = Family::kClean;
  Family dist_target = Family::kClean;
  Severity sev_anchor = Severity::kNone;
  Severity sev_target = Severity::kNone;
  double score_anchor = 1.0;
  double score_target = 1.0;

  friend bool operator==(const RegionPrediction&, const RegionPrediction&) = default;
};

class PredictionSet {
 public:
  using Key = std::pair<std::string, RegionIndex>;

  // CSV with header
  // "pair_id,region_index,relation,dist_A,dist_T,sev_A,sev_T,score_A,score_T".
  // Throws ParseError (with the line), kDuplicateKey or kScoreOutOfRange.
  static PredictionSet load(std::string_view bytes);

  // Throws kDuplicateKey.
  void insert(std::string pair_id, RegionIndex index, const RegionPrediction& prediction);
  const RegionPrediction* find(std::string_view pair_id, RegionIndex index) const;

  std::size_t size() const { return entries_.size(); }
  const std::map<Key, RegionPrediction>& entries() const { return entries_; }

  std::string to_csv() const;

  friend bool operator==(const PredictionSet&, const PredictionSet&) = default;

 private:
  std::map<Key, RegionPrediction> entries_;
};

// The graphs' own labels as predictions (an oracle predictor).
PredictionSet predictions_from_graphs(std::span<const DistortionGraph> graphs);

// Independent uniform draws: relation over 5, families over 15, severities
// over 4, scores on [0, 1] (quantized to the score grid). Seeded per region,
// so the result does not depend on graph order.
PredictionSet random_baseline(std::span<const DistortionGraph> graphs, std::uint64_t seed);

struct ScoreTaskMetrics {
  std::size_t pairs_scored = 0;
  Correlation srcc;
  Correlation plcc;
  bool degenerate() const { return srcc.degenerate || plcc.degenerate; }
};

struct MetricsReport {
  std::size_t pairs = 0;
  std::size_t regions = 0;
  ClassificationMetrics comparison;
  ClassificationMetrics distortion;  // anchor and target nodes pooled
  ClassificationMetrics severity;    // anchor and target nodes pooled
  ScoreTaskMetrics scores;
  // "<pair_id>:<index>" for regions without a prediction (lenient mode).
  std::vector<std::string> missing;

  std::string to_json() const;
  std::string to_table() const;
};

struct EvaluateOptions {
  // Count missing predictions as wrong instead of failing; their scores are
  // left out of the correlations.
  bool lenient = false;
};

// Throws kMissingPrediction listing every missing (pair, region) unless
// lenient. Extra predictions are ignored.
MetricsReport evaluate(std::span<const DistortionGraph> graphs, const PredictionSet& predictions,
                       const EvaluateOptions& options = {});

// Whole-image ranking.
enum class Verdict : std::uint8_t { kAnchorBetter, kTargetBetter, kTie };
enum class RankMode : std::uint8_t { kPredicateBased, kScoreBased };

std::string_view to_string(Verdict verdict);  // "anchor_better", "target_better", "tie"
std::string_view to_string(RankMode mode);    // "predicate", "score"
std::optional<RankMode> parse_rank_mode(std::string_view text);
Verdict mirror(Verdict verdict);

struct RegionJudgement {
  Relation relation = Relation::kSame;
  double score_anchor = 0.0;
  double score_target = 0.0;
};

// Majority of better vs worse regions (by relation or by score); equal
// counts fall back to the sign of sum(score_anchor - score_target) on the
// 1e-6 grid, and a zero sum is a tie. Throws kEmptyGraph.
Verdict rank_regions(std::span<const RegionJudgement> regions, RankMode mode);

std::vector<RegionJudgement> judgements(const DistortionGraph& graph);
// Throws kMissingPrediction when `graph` has a region without a prediction.
std::vector<RegionJudgement> judgements(const PredictionSet& predictions, const DistortionGraph& graph);

Verdict rank_pair(const DistortionGraph& graph, RankMode mode);

// Preferred side by total score difference on the 1e-6 grid.
Verdict score_order(const DistortionGraph& graph);

// Fraction of equal verdicts; empty input gives 0. Throws kOutOfRange on
// unequal lengths.
double ranking_accuracy(std::span<const Verdict> predicted, std::span<const Verdict> truth);

// The same pair seen from the other side: nodes swapped, relations and
// edge directions mirrored.
DistortionGraph swap_sides(const DistortionGraph& graph);

enum class PromptStyle : std::uint8_t { kCompact, kPerRegion };
std::optional<PromptStyle> parse_prompt_style(std::string_view text);  // "compact", "per-region"

// Plain text, one stanza per matched region in index order (one line per
// region for kCompact).
std::string render_prompt(const DistortionGraph& graph, PromptStyle style);

}  // namespace dgkit

#endif  // DGKIT_EVAL_EVALUATE_HPP_
