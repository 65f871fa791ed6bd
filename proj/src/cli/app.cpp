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

#include "dgkit/cli/app.hpp"

#include <algorithm>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "dgkit/bench/benchgen.hpp"
#include "dgkit/core/serialize.hpp"
#include "dgkit/error.hpp"
#include "dgkit/eval/evaluate.hpp"
#include "dgkit/scoring/scorer.hpp"
#include "dgkit/synth/kernels.hpp"
#include "dgkit/synth/plan.hpp"
#include "dgkit/synth/scene.hpp"

#ifndef DGKIT_VERSION
#define DGKIT_VERSION "0.0.0"
#endif

namespace dgkit::cli {
namespace {

namespace fs = std::filesystem;

// Thrown for problems the operator fixes on the command line.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::uint64_t seed = 0;
  int threads = 0;
  std::string config;
  std::string out;
};

struct SceneOptions {
  std::string scenes;
  std::size_t n_scenes = 8;
  int scene_size = 128;
};

struct CorpusOptions {
  std::size_t pairs = 0;
  std::string split = "all";
  std::string splits = "easy,medium,hard";
  std::string scorer = "default";
  std::vector<std::string> severity_overrides;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "Global seed")->capture_default_str();
  sub->add_option("--threads", c.threads, "Worker threads (0: all cores)")->capture_default_str();
  sub->add_option("--config", c.config, "Config file: key=value lines or a JSON object");
  sub->add_option("--out", c.out, "Output path");
}

void add_scene_options(CLI::App* sub, SceneOptions& s) {
  sub->add_option("--scenes", s.scenes,
                  "Directory of <id>.ppm|png + <id>.pgm scenes (default: procedural scenes)");
  sub->add_option("--n-scenes", s.n_scenes, "Number of procedural scenes")->capture_default_str();
  sub->add_option("--scene-size", s.scene_size, "Side length of procedural scenes")
      ->capture_default_str()
      ->check(CLI::Range(kMinImageSide, 4096));
}

void add_corpus_options(CLI::App* sub, CorpusOptions& c) {
  sub->add_option("--scorer", c.scorer, "default | score-table:PATH")->capture_default_str();
  sub->add_option("--severity-override", c.severity_overrides,
                  "FAMILY=minor,moderate,severe primary parameters (repeatable)")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
}

std::string require_out(const Common& c) {
  if (c.out.empty()) throw UsageError("--out is required");
  return c.out;
}

void apply_threads(const Common& c) {
  if (c.threads < 0) throw UsageError("--threads must be >= 0");
  if (c.threads > 0) set_thread_count(c.threads);
}

std::vector<Scene> obtain_scenes(const SceneOptions& s, std::uint64_t seed) {
  if (!s.scenes.empty()) return load_scenes(s.scenes);
  ProceduralSceneOptions options;
  options.width = options.height = s.scene_size;
  return make_procedural_scenes(s.n_scenes, seed, options);
}

std::unique_ptr<RegionScorer> make_scorer(const std::string& spec) {
  if (spec == "default") return std::make_unique<SsimScorer>();
  constexpr std::string_view prefix = "score-table:";
  if (spec.rfind(prefix, 0) == 0) {
    return std::make_unique<TableScorer>(ScoreTable::load(read_file(spec.substr(prefix.size()))));
  }
  throw UsageError("unknown scorer '" + spec + "' (expected default or score-table:PATH)");
}

SeverityTable make_severity_table(const std::vector<std::string>& overrides) {
  SeverityTable table = SeverityTable::defaults();
  for (const std::string& o : overrides) {
    const auto eq = o.find('=');
    const auto family = parse_family(o.substr(0, eq));
    if (eq == std::string::npos || !family) throw UsageError("bad --severity-override '" + o + "'");
    std::array<double, 3> values{};
    std::istringstream in(o.substr(eq + 1));
    std::string item;
    std::size_t k = 0;
    while (std::getline(in, item, ',')) {
      if (k == 3) throw UsageError("--severity-override needs exactly three values: '" + o + "'");
      try {
        std::size_t used = 0;
        values[k] = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw UsageError("bad number '" + item + "' in --severity-override");
      }
      ++k;
    }
    if (k != 3) throw UsageError("--severity-override needs exactly three values: '" + o + "'");
    table.override_primary(*family, values);
  }
  return table;
}

// Config entries become flags placed before the user's own flags, so the
// later (command line) value wins.
std::vector<std::string> config_arguments(const std::string& path) {
  const std::string text = read_file(path);
  std::vector<std::pair<std::string, std::string>> entries;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError("config " + path + ": " + e.what(), e.byte);
    }
    for (const auto& [key, value] : doc.items()) {
      if (value.is_array()) {
        for (const auto& v : value) entries.emplace_back(key, v.is_string() ? v.get<std::string>() : v.dump());
      } else {
        entries.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
      }
    }
  } else {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos || line[start] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw ParseError("config " + path + ": line " + std::to_string(line_no) + ": expected key=value",
                         std::nullopt, line_no);
      }
      const auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
  }
  std::vector<std::string> args;
  for (auto& [key, value] : entries) {
    if (key == "config") continue;
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  for (std::size_t k = 1; k < args.size(); ++k) {
    std::string path;
    if (args[k] == "--config" && k + 1 < args.size()) path = args[k + 1];
    if (args[k].rfind("--config=", 0) == 0) path = args[k].substr(9);
    if (path.empty()) continue;
    std::vector<std::string> out{args[0]};
    for (auto& a : config_arguments(path)) out.push_back(std::move(a));
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
  }
  return args;
}

void write_or_print(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

// ---------------------------------------------------------------- commands

int cmd_synth(const Common& c, const SceneOptions& s, const CorpusOptions& o, std::ostream& out) {
  apply_threads(c);
  const fs::path root = require_out(c);
  const auto split = parse_split(o.split);
  if (!split) throw UsageError("unknown split '" + o.split + "'");
  const auto scorer = make_scorer(o.scorer);
  const SeverityTable table = make_severity_table(o.severity_overrides);
  const std::vector<Scene> scenes = o.pairs ? obtain_scenes(s, c.seed) : std::vector<Scene>{};
  SplitOptions options;
  options.toolkit_version = std::string(toolkit_version());
  const BuiltSplit built = build_split(*split, scenes, o.pairs, c.seed, *scorer, options, table);
  write_split(root, built, scenes);
  std::vector<DistortionGraph> graphs;
  for (const BuiltPair& p : built.pairs) graphs.push_back(p.graph);
  const CorpusSummary summary = summarize_graphs(built.manifest.pairs, graphs);
  write_file_atomic(root / "summary.json", summary.to_json());
  out << "wrote " << built.pairs.size() << " pairs (" << summary.regions << " region nodes) to "
      << root.string() << "\n";
  for (const std::string& f : summary.flags) out << "note: " << f << "\n";
  return kExitOk;
}

int cmd_build_bench(const Common& c, const SceneOptions& s, const CorpusOptions& o, std::ostream& out) {
  apply_threads(c);
  const fs::path root = require_out(c);
  std::vector<Split> splits;
  std::istringstream in(o.splits);
  std::string name;
  while (std::getline(in, name, ',')) {
    const auto sp = parse_split(name);
    if (!sp) throw UsageError("unknown split '" + name + "'");
    splits.push_back(*sp);
  }
  const auto scorer = make_scorer(o.scorer);
  const SeverityTable table = make_severity_table(o.severity_overrides);
  const std::vector<Scene> scenes = obtain_scenes(s, c.seed);
  SplitOptions options;
  options.toolkit_version = std::string(toolkit_version());
  int status = kExitOk;
  for (Split split : splits) {
    const BuiltSplit built = build_split(split, scenes, o.pairs, c.seed, *scorer, options, table);
    const fs::path dir = root / std::string(to_string(split));
    write_split(dir, built, scenes);
    const auto problems = check_split_membership(built.manifest);
    out << to_string(split) << ": " << built.pairs.size() << " pairs, membership "
        << (problems.empty() ? "ok" : "VIOLATED") << "\n";
    for (const auto& p : problems) out << "  " << p << "\n";
    if (!problems.empty()) status = kExitFailure;
  }
  return status;
}

std::vector<fs::path> collect_graph_files(const std::vector<std::string>& inputs) {
  std::vector<fs::path> files;
  for (const std::string& input : inputs) {
    const fs::path p(input);
    if (fs::is_directory(p)) {
      std::vector<fs::path> found;
      for (const auto& e : fs::recursive_directory_iterator(p)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.size() > 8 && name.ends_with(".dg.json")) found.push_back(e.path());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (p.filename() == "manifest.json") {
      const LoadedManifest m = read_manifest(p);
      for (const PairRecord& r : m.manifest.pairs) files.push_back(m.directory / r.graph_ref);
    } else {
      files.push_back(p);
    }
  }
  return files;
}

int cmd_validate(const std::vector<std::string>& inputs, std::ostream& out) {
  std::size_t checked = 0, invalid = 0;
  for (const fs::path& file : collect_graph_files(inputs)) {
    ++checked;
    std::vector<std::string> problems;
    try {
      const DistortionGraph g = deserialize(read_file(file), {.lenient = true});
      for (const Violation& v : validate(g)) {
        problems.push_back(std::string(to_string(v.definition)) + " " + v.element + ": " + v.message);
      }
      const fs::path label_map = file.parent_path() / g.refs.label_map;
      if (problems.empty() && !g.refs.label_map.empty() && fs::exists(label_map)) {
        for (const Violation& v : check_masks(g, read_label_map(label_map).map)) {
          problems.push_back(std::string(to_string(v.definition)) + " " + v.element + ": " + v.message);
        }
      }
    } catch (const Error& e) {
      problems.push_back(std::string(error_code_name(e.code())) + ": " + e.what());
    }
    if (problems.empty()) {
      out << file.string() << ": ok\n";
    } else {
      ++invalid;
      for (const auto& p : problems) out << file.string() << ": " << p << "\n";
    }
  }
  out << "checked " << checked << " graph(s), " << invalid << " invalid\n";
  return invalid ? kExitFailure : kExitOk;
}

struct ScoreOptions {
  std::string manifest, reference, degraded, label_map;
};

int cmd_score(const Common& c, const ScoreOptions& s, std::ostream& out) {
  apply_threads(c);
  const SsimScorer scorer;
  if (!s.manifest.empty()) {
    const LoadedManifest m = read_manifest(s.manifest);
    ScoreTable table;
    for (const PairRecord& r : m.manifest.pairs) {
      const RasterImage scene = read_image(m.directory / r.scene_image);
      const LabelMap lm = read_label_map(m.directory / r.label_map).map;
      for (const auto& [side, ref] : {std::pair{ImageSide::kAnchor, r.anchor_image},
                                      std::pair{ImageSide::kTarget, r.target_image}}) {
        const RasterImage degraded = read_image(m.directory / ref);
        const auto scores = scorer.score_all({scene, degraded, lm, r.pair_id, side}, lm.max_index());
        for (std::size_t k = 0; k < scores.size(); ++k) {
          table.insert(r.pair_id, side, static_cast<std::uint32_t>(k + 1), quantize_score(scores[k]));
        }
      }
    }
    write_or_print(c.out, table.to_csv(), out);
    return kExitOk;
  }
  if (s.reference.empty() || s.degraded.empty() || s.label_map.empty()) {
    throw UsageError("score needs --manifest, or --reference, --degraded and --label-map");
  }
  const RasterImage ref = read_image(s.reference);
  const RasterImage deg = read_image(s.degraded);
  const LabelMap lm = read_label_map(s.label_map).map;
  const auto scores = scorer.score_all({ref, deg, lm, "", ImageSide::kAnchor}, lm.max_index());
  std::string text = "region_index,score\n";
  for (std::size_t k = 0; k < scores.size(); ++k) {
    text += std::to_string(k + 1) + "," + format_score(scores[k]) + "\n";
  }
  write_or_print(c.out, text, out);
  return kExitOk;
}

struct EvalOptions {
  std::string manifest, predictions;
  bool random_baseline = false;
  bool lenient = false;
};

int cmd_eval(const Common& c, const EvalOptions& e, std::ostream& out) {
  if (e.manifest.empty()) throw UsageError("--manifest is required");
  if (e.predictions.empty() == !e.random_baseline) {
    throw UsageError("give exactly one of --predictions and --random-baseline");
  }
  const LoadedManifest m = read_manifest(e.manifest);
  const auto graphs = load_graphs(m);
  const PredictionSet predictions =
      e.random_baseline ? random_baseline(graphs, c.seed) : PredictionSet::load(read_file(e.predictions));
  const MetricsReport report = evaluate(graphs, predictions, {.lenient = e.lenient});
  if (!c.out.empty()) {
    write_file_atomic(fs::path(c.out) / "metrics.json", report.to_json());
    write_file_atomic(fs::path(c.out) / "metrics.txt", report.to_table());
  }
  out << report.to_table();
  return kExitOk;
}

struct RankOptions {
  std::string manifest, predictions, mode = "predicate";
  bool swap_sides = false;
};

int cmd_rank(const RankOptions& r, std::ostream& out) {
  if (r.manifest.empty()) throw UsageError("--manifest is required");
  const auto mode = parse_rank_mode(r.mode);
  if (!mode) throw UsageError("unknown --mode '" + r.mode + "' (predicate or score)");
  const LoadedManifest m = read_manifest(r.manifest);
  const auto graphs = load_graphs(m);
  std::optional<PredictionSet> predictions;
  if (!r.predictions.empty()) predictions = PredictionSet::load(read_file(r.predictions));
  std::vector<Verdict> predicted, truth;
  for (const DistortionGraph& original : graphs) {
    const DistortionGraph g = r.swap_sides ? swap_sides(original) : original;
    Verdict v;
    if (predictions) {
      auto js = judgements(*predictions, original);
      if (r.swap_sides) {
        for (RegionJudgement& j : js) {
          j.relation = mirror(j.relation);
          std::swap(j.score_anchor, j.score_target);
        }
      }
      v = rank_regions(js, *mode);
    } else {
      v = rank_pair(g, *mode);
    }
    // The reference verdict is the same rule applied to the ground-truth graph.
    const Verdict t = rank_pair(g, *mode);
    predicted.push_back(v);
    truth.push_back(t);
    out << g.pair_id << " " << to_string(v) << " (truth " << to_string(t) << ")\n";
  }
  char line[64];
  std::snprintf(line, sizeof line, "%.6f", ranking_accuracy(predicted, truth));
  out << "mode " << to_string(*mode) << ", " << graphs.size() << " pairs, ranking accuracy " << line << "\n";
  return kExitOk;
}

int cmd_prompt(const std::string& graph, const std::string& style_name, std::ostream& out) {
  const auto style = parse_prompt_style(style_name);
  if (!style) throw UsageError("unknown --style '" + style_name + "' (compact or per-region)");
  out << render_prompt(deserialize(read_file(graph)), *style);
  return kExitOk;
}

int cmd_baseline(const Common& c, const std::string& manifest, std::ostream& out) {
  if (manifest.empty()) throw UsageError("--manifest is required");
  const LoadedManifest m = read_manifest(manifest);
  write_or_print(c.out, random_baseline(load_graphs(m), c.seed).to_csv(), out);
  return kExitOk;
}

}  // namespace

std::string_view toolkit_version() { return DGKIT_VERSION; }

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distortion-graph toolkit: synthesize region-degraded pairs, validate, score and evaluate", "dgkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(toolkit_version()));
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  Common common;
  SceneOptions scenes;
  CorpusOptions corpus;
  ScoreOptions score;
  EvalOptions eval;
  RankOptions rank;
  std::vector<std::string> validate_inputs;
  std::string prompt_graph, prompt_style = "per-region", baseline_manifest;

  std::vector<std::pair<CLI::App*, std::function<int()>>> commands;
  const auto add = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    add_common(sub, common);
    return sub;
  };

  CLI::App* synth = add("synth", "Generate a pair corpus with ground-truth graphs");
  add_scene_options(synth, scenes);
  add_corpus_options(synth, corpus);
  corpus.pairs = 240;
  synth->add_option("--pairs", corpus.pairs, "Number of pairs")->capture_default_str();
  synth->add_option("--split", corpus.split, "all | easy | medium | hard")->capture_default_str();
  commands.emplace_back(synth, [&] { return cmd_synth(common, scenes, corpus, out); });

  CLI::App* bench = add("build-bench", "Generate the easy, medium and hard benchmark splits");
  add_scene_options(bench, scenes);
  add_corpus_options(bench, corpus);
  std::size_t bench_pairs = 300;
  bench->add_option("--pairs", bench_pairs, "Pairs per split")->capture_default_str();
  bench->add_option("--splits", corpus.splits, "Comma-separated splits")->capture_default_str();
  commands.emplace_back(bench, [&] {
    corpus.pairs = bench_pairs;
    return cmd_build_bench(common, scenes, corpus, out);
  });

  CLI::App* val = add("validate", "Check graph files, directories or manifests");
  val->add_option("paths", validate_inputs, "Graph files, directories or manifest.json files")
      ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
  commands.emplace_back(val, [&] { return cmd_validate(validate_inputs, out); });

  CLI::App* sc = add("score", "Score regions with the default scorer");
  sc->add_option("--manifest", score.manifest, "Score every pair of a corpus into a score table");
  sc->add_option("--reference", score.reference, "Reference image");
  sc->add_option("--degraded", score.degraded, "Degraded image");
  sc->add_option("--label-map", score.label_map, "Label map (PGM)");
  commands.emplace_back(sc, [&] { return cmd_score(common, score, out); });

  CLI::App* ev = add("eval", "Evaluate predictions against a corpus");
  ev->add_option("--manifest", eval.manifest, "Corpus manifest");
  ev->add_option("--predictions", eval.predictions, "Prediction CSV");
  ev->add_flag("--random-baseline", eval.random_baseline, "Evaluate the seeded random baseline");
  ev->add_flag("--lenient", eval.lenient, "Count missing predictions as wrong instead of failing");
  commands.emplace_back(ev, [&] { return cmd_eval(common, eval, out); });

  CLI::App* rk = add("rank", "Whole-image ranking accuracy");
  rk->add_option("--manifest", rank.manifest, "Corpus manifest");
  rk->add_option("--predictions", rank.predictions, "Prediction CSV (default: ground-truth graphs)");
  rk->add_option("--mode", rank.mode, "predicate | score")->capture_default_str();
  rk->add_flag("--swap-sides", rank.swap_sides, "Rank every pair with anchor and target exchanged");
  commands.emplace_back(rk, [&] { return cmd_rank(rank, out); });

  CLI::App* pr = add("prompt", "Render a graph as text");
  pr->add_option("graph", prompt_graph, "Graph file")->required();
  pr->add_option("--style", prompt_style, "compact | per-region")->capture_default_str();
  commands.emplace_back(pr, [&] { return cmd_prompt(prompt_graph, prompt_style, out); });

  CLI::App* bl = add("baseline", "Write random-baseline predictions for a corpus");
  bl->add_option("--manifest", baseline_manifest, "Corpus manifest");
  commands.emplace_back(bl, [&] { return cmd_baseline(common, baseline_manifest, out); });

  try {
    std::vector<std::string> args = expand_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    for (auto& [sub, fn] : commands) {
      if (sub->parsed()) return fn();
    }
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::kIoError ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace dgkit::cli
