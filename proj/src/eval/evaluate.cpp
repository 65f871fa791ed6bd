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

#include "dgkit/eval/evaluate.hpp"

#include <cstdio>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dgkit/core/csv.hpp"
#include "dgkit/core/serialize.hpp"
#include "dgkit/error.hpp"
#include "dgkit/synth/seed.hpp"

namespace dgkit {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kPredictionHeader =
    "pair_id,region_index,relation,dist_A,dist_T,sev_A,sev_T,score_A,score_T";

std::vector<std::string> relation_names() {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < kNumRelations; ++k) out.emplace_back(to_string(static_cast<Relation>(k)));
  return out;
}

std::vector<std::string> family_names() {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < kNumFamilies; ++k) out.emplace_back(to_string(static_cast<Family>(k)));
  return out;
}

std::vector<std::string> severity_names() {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < kNumSeverities; ++k) out.emplace_back(to_string(static_cast<Severity>(k)));
  return out;
}

[[noreturn]] void bad_field(const csv::Row& row, const char* column, const std::string& value) {
  throw ParseError("line " + std::to_string(row.line) + ": invalid " + column + " '" + value + "'",
                   std::nullopt, row.line);
}

template <typename T, typename Parse>
T parse_enum(const csv::Row& row, std::size_t field, const char* column, Parse parse) {
  const auto v = parse(row.fields[field]);
  if (!v) bad_field(row, column, row.fields[field]);
  return *v;
}

Json classification_json(const ClassificationMetrics& m) {
  Json per_class = Json::object();
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    per_class[m.classes[c]] = Json{{"support", m.support[c]},
                                   {"precision", m.precision[c]},
                                   {"recall", m.recall[c]},
                                   {"f1", m.f1[c]}};
  }
  return Json{{"instances", m.instances},
              {"correct", m.correct},
              {"accuracy", m.accuracy},
              {"macro_precision", m.macro_precision},
              {"macro_recall", m.macro_recall},
              {"macro_f1", m.macro_f1},
              {"classes", m.classes},
              {"per_class", std::move(per_class)},
              {"confusion", m.confusion},
              {"unpredicted", m.unpredicted}};
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::int64_t score_sum_micros(std::span<const RegionJudgement> regions) {
  std::int64_t sum = 0;
  for (const auto& r : regions) sum += score_micros(r.score_anchor) - score_micros(r.score_target);
  return sum;
}

}  // namespace

PredictionSet PredictionSet::load(std::string_view bytes) {
  PredictionSet set;
  for (const csv::Row& row : csv::read(bytes, kPredictionHeader)) {
    const std::uint64_t index = csv::parse_uint(row.fields[1], row.line);
    if (index == 0 || index > UINT32_MAX) bad_field(row, "region_index", row.fields[1]);
    RegionPrediction p;
    p.relation = parse_enum<Relation>(row, 2, "relation", parse_relation);
    p.dist_anchor = parse_enum<Family>(row, 3, "dist_A", parse_family);
    p.dist_target = parse_enum<Family>(row, 4, "dist_T", parse_family);
    p.sev_anchor = parse_enum<Severity>(row, 5, "sev_A", parse_severity);
    p.sev_target = parse_enum<Severity>(row, 6, "sev_T", parse_severity);
    p.score_anchor = csv::parse_score(row.fields[7], row.line);
    p.score_target = csv::parse_score(row.fields[8], row.line);
    if (row.fields[0].empty()) bad_field(row, "pair_id", row.fields[0]);
    if (!set.entries_.emplace(Key{row.fields[0], static_cast<RegionIndex>(index)}, p).second) {
      throw Error(ErrorCode::kDuplicateKey, "line " + std::to_string(row.line) + ": duplicate prediction for (" +
                                                row.fields[0] + ", " + row.fields[1] + ")");
    }
  }
  return set;
}

void PredictionSet::insert(std::string pair_id, RegionIndex index, const RegionPrediction& prediction) {
  const std::string id = pair_id;
  if (!entries_.emplace(Key{std::move(pair_id), index}, prediction).second) {
    throw Error(ErrorCode::kDuplicateKey,
                "duplicate prediction for (" + id + ", " + std::to_string(index) + ")");
  }
}

const RegionPrediction* PredictionSet::find(std::string_view pair_id, RegionIndex index) const {
  const auto it = entries_.find(Key{std::string(pair_id), index});
  return it == entries_.end() ? nullptr : &it->second;
}

std::string PredictionSet::to_csv() const {
  std::string out(kPredictionHeader);
  out += "\n";
  for (const auto& [key, p] : entries_) {
    out += key.first + "," + std::to_string(key.second) + "," + std::string(to_string(p.relation)) + "," +
           std::string(to_string(p.dist_anchor)) + "," + std::string(to_string(p.dist_target)) + "," +
           std::string(to_string(p.sev_anchor)) + "," + std::string(to_string(p.sev_target)) + "," +
           format_score(p.score_anchor) + "," + format_score(p.score_target) + "\n";
  }
  return out;
}

PredictionSet predictions_from_graphs(std::span<const DistortionGraph> graphs) {
  PredictionSet set;
  for (const DistortionGraph& g : graphs) {
    for (const RegionNode& a : g.anchor_nodes) {
      const RegionNode& t = g.node(ImageSide::kTarget, a.index);
      set.insert(g.pair_id, a.index,
                 {g.edge(a.index).relation, a.distortion.family, t.distortion.family, a.severity,
                  t.severity, a.score, t.score});
    }
  }
  return set;
}

PredictionSet random_baseline(std::span<const DistortionGraph> graphs, std::uint64_t seed) {
  PredictionSet set;
  for (const DistortionGraph& g : graphs) {
    for (const RegionNode& a : g.anchor_nodes) {
      Rng rng(mix64({seed, hash_string(g.pair_id), a.index}));
      RegionPrediction p;
      p.relation = static_cast<Relation>(rng.below(kNumRelations));
      p.dist_anchor = static_cast<Family>(rng.below(kNumFamilies));
      p.dist_target = static_cast<Family>(rng.below(kNumFamilies));
      p.sev_anchor = static_cast<Severity>(rng.below(kNumSeverities));
      p.sev_target = static_cast<Severity>(rng.below(kNumSeverities));
      p.score_anchor = quantize_score(rng.uniform());
      p.score_target = quantize_score(rng.uniform());
      set.insert(g.pair_id, a.index, p);
    }
  }
  return set;
}

MetricsReport evaluate(std::span<const DistortionGraph> graphs, const PredictionSet& predictions,
                       const EvaluateOptions& options) {
  MetricsReport report;
  std::vector<int> rel_truth, rel_pred, dist_truth, dist_pred, sev_truth, sev_pred;
  std::vector<double> score_truth, score_pred;
  for (const DistortionGraph& g : graphs) {
    ++report.pairs;
    for (const RegionNode& a : g.anchor_nodes) {
      ++report.regions;
      const RegionNode& t = g.node(ImageSide::kTarget, a.index);
      rel_truth.push_back(static_cast<int>(g.edge(a.index).relation));
      dist_truth.push_back(static_cast<int>(a.distortion.family));
      dist_truth.push_back(static_cast<int>(t.distortion.family));
      sev_truth.push_back(static_cast<int>(a.severity));
      sev_truth.push_back(static_cast<int>(t.severity));
      const RegionPrediction* p = predictions.find(g.pair_id, a.index);
      if (!p) {
        report.missing.push_back(g.pair_id + ":" + std::to_string(a.index));
        rel_pred.push_back(kMissingClass);
        dist_pred.insert(dist_pred.end(), {kMissingClass, kMissingClass});
        sev_pred.insert(sev_pred.end(), {kMissingClass, kMissingClass});
        continue;
      }
      rel_pred.push_back(static_cast<int>(p->relation));
      dist_pred.insert(dist_pred.end(), {static_cast<int>(p->dist_anchor), static_cast<int>(p->dist_target)});
      sev_pred.insert(sev_pred.end(), {static_cast<int>(p->sev_anchor), static_cast<int>(p->sev_target)});
      score_truth.insert(score_truth.end(), {a.score, t.score});
      score_pred.insert(score_pred.end(), {p->score_anchor, p->score_target});
    }
  }
  if (!report.missing.empty() && !options.lenient) {
    std::string list;
    for (const auto& m : report.missing) list += "\n  " + m;
    throw Error(ErrorCode::kMissingPrediction,
                std::to_string(report.missing.size()) + " region(s) have no prediction:" + list);
  }
  report.comparison = classify(rel_truth, rel_pred, relation_names());
  report.distortion = classify(dist_truth, dist_pred, family_names());
  report.severity = classify(sev_truth, sev_pred, severity_names());
  report.scores.pairs_scored = score_truth.size();
  report.scores.srcc = spearman(score_pred, score_truth);
  report.scores.plcc = pearson(score_pred, score_truth);
  return report;
}

std::string MetricsReport::to_json() const {
  const Json doc{{"pairs", pairs},
                 {"regions", regions},
                 {"comparison", classification_json(comparison)},
                 {"distortion", classification_json(distortion)},
                 {"severity", classification_json(severity)},
                 {"scores", Json{{"instances", scores.pairs_scored},
                                 {"srcc", scores.srcc.value},
                                 {"plcc", scores.plcc.value},
                                 {"degenerate", scores.degenerate()}}},
                 {"missing", missing}};
  return doc.dump(2) + "\n";
}

std::string MetricsReport::to_table() const {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-12s %9s %9s %9s %9s %9s\n", "task", "instances", "accuracy",
                "precision", "recall", "f1");
  os << line;
  for (const auto& [name, m] : {std::pair<const char*, const ClassificationMetrics*>{"comparison", &comparison},
                                {"distortion", &distortion},
                                {"severity", &severity}}) {
    std::snprintf(line, sizeof line, "%-12s %9zu %9s %9s %9s %9s\n", name, m->instances,
                  fixed4(m->accuracy).c_str(), fixed4(m->macro_precision).c_str(),
                  fixed4(m->macro_recall).c_str(), fixed4(m->macro_f1).c_str());
    os << line;
  }
  std::snprintf(line, sizeof line, "%-12s %9s %9s %9s\n", "task", "instances", "srcc", "plcc");
  os << "\n" << line;
  std::snprintf(line, sizeof line, "%-12s %9zu %9s %9s%s\n", "scores", scores.pairs_scored,
                fixed4(scores.srcc.value).c_str(), fixed4(scores.plcc.value).c_str(),
                scores.degenerate() ? "  (degenerate scores)" : "");
  os << line;
  if (!missing.empty()) os << "\nmissing predictions: " << missing.size() << "\n";
  return os.str();
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAnchorBetter: return "anchor_better";
    case Verdict::kTargetBetter: return "target_better";
    case Verdict::kTie: return "tie";
  }
  return "";
}

std::string_view to_string(RankMode mode) {
  return mode == RankMode::kPredicateBased ? "predicate" : "score";
}

std::optional<RankMode> parse_rank_mode(std::string_view text) {
  if (text == "predicate" || text == "predicate-based") return RankMode::kPredicateBased;
  if (text == "score" || text == "score-based") return RankMode::kScoreBased;
  return std::nullopt;
}

Verdict mirror(Verdict verdict) {
  switch (verdict) {
    case Verdict::kAnchorBetter: return Verdict::kTargetBetter;
    case Verdict::kTargetBetter: return Verdict::kAnchorBetter;
    case Verdict::kTie: return Verdict::kTie;
  }
  return Verdict::kTie;
}

Verdict rank_regions(std::span<const RegionJudgement> regions, RankMode mode) {
  if (regions.empty()) throw Error(ErrorCode::kEmptyGraph, "cannot rank a pair without regions");
  std::size_t better = 0, worse = 0;
  for (const RegionJudgement& r : regions) {
    if (mode == RankMode::kPredicateBased) {
      if (r.relation == Relation::kSlightlyBetter || r.relation == Relation::kSignificantlyBetter) ++better;
      if (r.relation == Relation::kSlightlyWorse || r.relation == Relation::kSignificantlyWorse) ++worse;
    } else {
      const std::int64_t d = score_micros(r.score_anchor) - score_micros(r.score_target);
      if (d > 0) ++better;
      if (d < 0) ++worse;
    }
  }
  if (better != worse) return better > worse ? Verdict::kAnchorBetter : Verdict::kTargetBetter;
  const std::int64_t sum = score_sum_micros(regions);
  if (sum == 0) return Verdict::kTie;
  return sum > 0 ? Verdict::kAnchorBetter : Verdict::kTargetBetter;
}

std::vector<RegionJudgement> judgements(const DistortionGraph& graph) {
  std::vector<RegionJudgement> out;
  for (const RegionNode& a : graph.anchor_nodes) {
    out.push_back({graph.edge(a.index).relation, a.score, graph.node(ImageSide::kTarget, a.index).score});
  }
  return out;
}

std::vector<RegionJudgement> judgements(const PredictionSet& predictions, const DistortionGraph& graph) {
  std::vector<RegionJudgement> out;
  for (const RegionNode& a : graph.anchor_nodes) {
    const RegionPrediction* p = predictions.find(graph.pair_id, a.index);
    if (!p) {
      throw Error(ErrorCode::kMissingPrediction,
                  "no prediction for (" + graph.pair_id + ", " + std::to_string(a.index) + ")");
    }
    out.push_back({p->relation, p->score_anchor, p->score_target});
  }
  return out;
}

Verdict rank_pair(const DistortionGraph& graph, RankMode mode) {
  return rank_regions(judgements(graph), mode);
}

Verdict score_order(const DistortionGraph& graph) {
  if (graph.anchor_nodes.empty()) throw Error(ErrorCode::kEmptyGraph, "graph " + graph.pair_id + " has no regions");
  const std::int64_t sum = score_sum_micros(judgements(graph));
  if (sum == 0) return Verdict::kTie;
  return sum > 0 ? Verdict::kAnchorBetter : Verdict::kTargetBetter;
}

double ranking_accuracy(std::span<const Verdict> predicted, std::span<const Verdict> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorCode::kOutOfRange, "ranking inputs differ in length");
  }
  if (predicted.empty()) return 0.0;
  std::size_t correct = 0;
  for (std::size_t k = 0; k < predicted.size(); ++k) correct += predicted[k] == truth[k];
  return static_cast<double>(correct) / static_cast<double>(predicted.size());
}

DistortionGraph swap_sides(const DistortionGraph& graph) {
  DistortionGraph out = graph;
  std::swap(out.anchor_nodes, out.target_nodes);
  std::swap(out.refs.anchor_image, out.refs.target_image);
  for (RegionNode& n : out.anchor_nodes) n.side = ImageSide::kAnchor;
  for (RegionNode& n : out.target_nodes) n.side = ImageSide::kTarget;
  for (DistortionEdge& e : out.distortion_edges) {
    e.relation = mirror(e.relation);
    std::swap(e.anchor_region, e.target_region);
  }
  for (SceneEdge& e : out.scene_edges) e.side = other_side(e.side);
  canonicalize(out);
  return out;
}

std::optional<PromptStyle> parse_prompt_style(std::string_view text) {
  if (text == "compact") return PromptStyle::kCompact;
  if (text == "per-region" || text == "per_region") return PromptStyle::kPerRegion;
  return std::nullopt;
}

std::string render_prompt(const DistortionGraph& graph, PromptStyle style) {
  std::ostringstream os;
  os << "Distortion graph for pair " << graph.pair_id << ": " << graph.region_count()
     << " matched regions; relations read anchor (A) relative to target (T).\n";
  for (const RegionNode& a : graph.anchor_nodes) {
    const RegionNode& t = graph.node(ImageSide::kTarget, a.index);
    const Relation rel = graph.edge(a.index).relation;
    if (style == PromptStyle::kCompact) {
      os << "region " << a.index << " (" << a.class_name << "): A=" << to_string(a.distortion.family) << "/"
         << to_string(a.severity) << "/" << format_score(a.score) << " T=" << to_string(t.distortion.family)
         << "/" << to_string(t.severity) << "/" << format_score(t.score) << " relation=" << to_string(rel)
         << "\n";
    } else {
      os << "\nRegion " << a.index << ": " << a.class_name << "\n"
         << "  anchor: distortion=" << to_string(a.distortion.family) << ", severity=" << to_string(a.severity)
         << ", score=" << format_score(a.score) << "\n"
         << "  target: distortion=" << to_string(t.distortion.family) << ", severity=" << to_string(t.severity)
         << ", score=" << format_score(t.score) << "\n"
         << "  relation: " << to_string(rel) << "\n";
    }
  }
  return os.str();
}

}  // namespace dgkit
