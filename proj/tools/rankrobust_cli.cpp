//
// Copyright 2026 The rankrobust Authors
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
//


// rankrobust: command line front end.
//
//   rankrobust index    --corpus docs.tsv --out index.json
//   rankrobust search   --index index.json --queries q.tsv --out run.txt
//   rankrobust evaluate --run run.txt --qrels qrels.txt --metric map,ndcg@10
//   rankrobust attack   --queries q.tsv --mode char1 --out manifest.tsv
//   rankrobust droprate --treated a.json --baseline b.json --metric map
//   rankrobust compare  --run-a a.txt --run-b b.txt
//   rankrobust tune     --index index.json --queries q.tsv --qrels qrels.txt
//
// Global flags (--seed, --threads, --epsilon) may appear before or after
// the subcommand. Exit status: 0 success, 1 usage error, 2 data fault.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "rankrobust/attacks.hpp"
#include "rankrobust/error.hpp"
#include "rankrobust/index.hpp"
#include "rankrobust/io.hpp"
#include "rankrobust/metrics.hpp"
#include "rankrobust/parallel.hpp"
#include "rankrobust/rankers.hpp"
#include "rankrobust/tuning.hpp"

namespace rankrobust {
namespace {

using json = nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

struct GlobalOptions {
  std::uint64_t seed = 42;
  std::size_t threads = DefaultThreadCount();
  double epsilon = kDefaultGmapEpsilon;
};

struct IndexOptions {
  std::string corpus;
  std::string format = "tsv";
  std::string out;
  std::string stemmer = "none";
  bool no_lowercase = false;
  bool keep_punctuation = false;
};

struct SearchOptions {
  std::string index;
  std::string queries;
  std::string model = "bm25";
  double k1 = 0.9;
  double b = 0.4;
  double mu = 1000.0;
  std::size_t top_k = 1000;
  std::string out;
  std::string group;
  std::string run_tag;
  std::string candidates;
  bool ql_all_docs = false;
};

struct EvaluateOptions {
  std::string run;
  std::string qrels;
  std::vector<std::string> metrics = {"map"};
  std::string queries;
  std::string out;
};

struct AttackOptions {
  std::string queries;
  std::string mode = "char1";
  std::string out;
  std::string attacked_out;
  std::string vocab_from_index;
  std::string vocab;
  std::size_t vocab_size = 10000;
};

struct DropRateOptions {
  std::string treated;
  std::string baseline;
  std::string metric;
  std::string out;
};

struct CompareOptions {
  std::string run_a;
  std::string run_b;
  std::string out;
};

struct TuneOptions {
  std::string index;
  std::string queries;
  std::string qrels;
  std::string model = "bm25";
  std::string grid = "default";
  std::string objective = "map";
  std::string out;
  bool trace = false;
};

void Warn(const std::string& message) {
  std::cerr << "rankrobust: warning: " << message << '\n';
}

// Writes to `path`, or to stdout when the path is empty or "-".
void Emit(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
    std::cout.flush();
  } else {
    WriteStringToFile(path, contents);
  }
}

std::string ReadPath(const std::string& path) { return ReadFileToString(path); }

template <typename Parser>
auto ParseFile(const std::string& path, Parser parser) {
  std::istringstream in(ReadPath(path));
  return parser(in, path);
}

std::string FormatDouble(double v) {
  std::ostringstream out;
  out.precision(17);
  out << v;
  return out.str();
}

InvertedIndex LoadIndexFile(const std::string& path) {
  return ParseFile(path, [](std::istream& in, const std::string& source) {
    return LoadIndex(in, source);
  });
}

std::vector<QueryRecord> LoadQueries(const std::string& path) {
  return ParseFile(path, [](std::istream& in, const std::string& source) {
    return ParseQueries(in, source);
  });
}

Qrels LoadQrels(const std::string& path) {
  return ParseFile(path, [](std::istream& in, const std::string& source) {
    return ParseQrels(in, source);
  });
}

RunSet LoadRun(const std::string& path) {
  std::vector<std::string> warnings;
  auto run = ParseFile(path, [&](std::istream& in, const std::string& source) {
    return ParseRun(in, source, &warnings);
  });
  for (const auto& w : warnings) Warn(w);
  return run;
}

std::vector<MetricReport> LoadReports(const std::string& path) {
  return ParseFile(path, [](std::istream& in, const std::string& source) {
    return ParseReports(in, source);
  });
}

void RunIndex(const IndexOptions& opts) {
  TokenizerConfig config;
  config.lowercase = !opts.no_lowercase;
  config.strip_punctuation = !opts.keep_punctuation;
  config.stemmer = ParseStemmer(opts.stemmer);
  const auto format = ParseCorpusFormat(opts.format);
  const auto docs =
      ParseFile(opts.corpus, [&](std::istream& in, const std::string& source) {
        return ParseCorpus(in, format, source);
      });
  const auto index = InvertedIndex::Build(docs, config);
  for (const auto& w : index.warnings()) Warn(w);
  std::ostringstream out;
  SaveIndex(index, out);
  Emit(opts.out, out.str());
  std::cerr << "indexed " << index.doc_count() << " documents, "
            << index.vocabulary_size() << " terms\n";
}

void RunSearch(const SearchOptions& opts, const GlobalOptions& global) {
  RankerConfig config;
  config.model = ParseModel(opts.model);
  config.k1 = opts.k1;
  config.b = opts.b;
  config.mu = opts.mu;
  config.top_k = opts.top_k;
  config.score_all_docs = opts.ql_all_docs;
  config.Validate();
  if (opts.ql_all_docs && config.model != Model::kQlDirichlet) {
    Warn("--ql-all-docs only affects the ql model");
  }

  const auto index = LoadIndexFile(opts.index);
  std::vector<QueryRecord> queries;
  for (auto& q : LoadQueries(opts.queries)) {
    if (opts.group.empty() || q.group == opts.group) {
      queries.push_back(std::move(q));
    }
  }
  if (queries.empty()) {
    throw DataError("no queries to search" +
                    (opts.group.empty() ? std::string()
                                        : " in group " + opts.group));
  }
  std::optional<RunSet> pool;
  if (!opts.candidates.empty()) pool = LoadRun(opts.candidates);

  std::vector<RankedList> lists(queries.size());
  std::vector<RankDiagnostics> diagnostics(queries.size());
  ParallelFor(queries.size(), global.threads, [&](std::size_t i) {
    const auto& q = queries[i];
    if (!pool) {
      lists[i] = Rank(index, q, config, &diagnostics[i]);
      return;
    }
    std::vector<std::string> ids;
    if (const RankedList* list = pool->Find(q.id)) {
      for (const auto& e : list->entries) ids.push_back(e.doc_id);
    }
    const auto terms = Tokenize(q.text, index.tokenizer_config());
    lists[i] = RankCandidates(index, q.id, terms, ids, config, &diagnostics[i]);
  });

  RunSet run;
  run.run_tag = opts.run_tag.empty() ? std::string(ModelName(config.model))
                                     : opts.run_tag;
  std::size_t oov = 0, empty = 0;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    oov += diagnostics[i].oov_terms;
    empty += lists[i].entries.empty();
    run.lists[lists[i].query_id] = std::move(lists[i]);
  }
  std::ostringstream out;
  WriteRun(run, out);
  Emit(opts.out, out.str());
  std::cerr << "searched " << queries.size() << " queries with "
            << ModelName(config.model) << "; " << oov
            << " out-of-vocabulary query terms; " << empty
            << " queries retrieved nothing\n";
}

void RunEvaluate(const EvaluateOptions& opts, const GlobalOptions& global) {
  std::vector<MetricSpec> specs;
  for (const auto& m : opts.metrics) specs.push_back(MetricSpec::Parse(m));
  const auto run = LoadRun(opts.run);
  const auto qrels = LoadQrels(opts.qrels);
  std::vector<std::string> ids;
  if (opts.queries.empty()) {
    ids = qrels.QueryIds();
  } else {
    for (const auto& q : LoadQueries(opts.queries)) ids.push_back(q.id);
  }

  std::vector<MetricReport> reports;
  for (const auto& spec : specs) {
    auto report = Evaluate(run, qrels, spec, ids);
    AddRobustnessExtras(report, run, qrels, ids, global.epsilon);
    report.extras["config.seed"] = static_cast<double>(global.seed);
    report.extras["config.epsilon"] = global.epsilon;
    report.config = {{"command", "evaluate"},
                     {"run", opts.run},
                     {"qrels", opts.qrels},
                     {"queries", opts.queries},
                     {"metric", spec.ToString()},
                     {"epsilon", FormatDouble(global.epsilon)},
                     {"seed", std::to_string(global.seed)}};
    if (!report.skipped.empty()) {
      Warn(spec.ToString() + ": " + std::to_string(report.skipped.size()) +
           " queries without relevant documents were skipped");
    }
    reports.push_back(std::move(report));
  }
  std::ostringstream out;
  WriteReports(reports, out);
  Emit(opts.out, out.str());
}

std::vector<std::string> ReadVocabulary(const AttackOptions& opts) {
  std::vector<std::string> vocab;
  if (!opts.vocab_from_index.empty()) {
    vocab = LoadIndexFile(opts.vocab_from_index).TopTerms(opts.vocab_size);
  }
  if (!opts.vocab.empty()) {
    std::istringstream in(ReadPath(opts.vocab));
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) vocab.push_back(line);
    }
  }
  return vocab;
}

void RunAttack(const AttackOptions& opts, const GlobalOptions& global) {
  AttackSpec spec;
  spec.mode = ParseAttackMode(opts.mode);
  spec.seed = global.seed;
  spec.vocabulary = ReadVocabulary(opts);
  if (spec.mode == AttackMode::kWord && spec.vocabulary.empty()) {
    Warn("word attack without a vocabulary can only remove words");
  }
  const auto queries = LoadQueries(opts.queries);
  const auto entries = AttackQuerySet(queries, spec, global.threads);

  std::ostringstream manifest;
  WriteManifest(entries, manifest);
  Emit(opts.out, manifest.str());

  if (!opts.attacked_out.empty()) {
    std::vector<QueryRecord> attacked;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      attacked.push_back({entries[i].query_id, entries[i].attacked,
                          queries[i].group});
    }
    std::ostringstream out;
    WriteQueries(attacked, out);
    WriteStringToFile(opts.attacked_out, out.str());
  }

  std::map<std::string, std::size_t> kinds;
  std::size_t skipped = 0;
  for (const auto& e : entries) {
    skipped += e.skipped;
    for (const auto& edit : e.edits) ++kinds[std::string(EditKindName(edit.kind))];
  }
  std::cerr << "attacked " << entries.size() - skipped << " of "
            << entries.size() << " queries (" << AttackModeName(spec.mode)
            << ", seed " << global.seed << ")";
  for (const auto& [kind, n] : kinds) std::cerr << "; " << kind << " " << n;
  std::cerr << '\n';
  if (skipped) Warn(std::to_string(skipped) + " unattackable queries kept as is");
}

const MetricReport& SelectReport(const std::vector<MetricReport>& reports,
                                 const std::string& metric,
                                 const std::string& path) {
  if (metric.empty()) {
    if (reports.size() != 1) {
      throw UsageError(path + " holds " + std::to_string(reports.size()) +
                       " reports; pass --metric to choose one");
    }
    return reports.front();
  }
  const std::string wanted = MetricSpec::Parse(metric).ToString();
  for (const auto& r : reports) {
    if (r.metric_name == wanted) return r;
  }
  throw DataError("no " + wanted + " report in " + path);
}

void RunDropRate(const DropRateOptions& opts) {
  const auto treated_reports = LoadReports(opts.treated);
  const auto baseline_reports = LoadReports(opts.baseline);
  const auto& treated = SelectReport(treated_reports, opts.metric, opts.treated);
  const auto& baseline =
      SelectReport(baseline_reports, opts.metric, opts.baseline);
  if (treated.metric_name != baseline.metric_name) {
    throw DataError("metric mismatch: " + treated.metric_name + " vs " +
                    baseline.metric_name);
  }
  const double dr = DropRate(treated.aggregate, baseline.aggregate);
  const auto test = PairedTTestOn(treated.per_query, baseline.per_query);
  json j;
  j["metric"] = treated.metric_name;
  j["baseline"] = baseline.aggregate;
  j["treated"] = treated.aggregate;
  j["drop_rate"] = dr;
  j["p_value"] = test.p_value;
  j["paired_queries"] = test.n;
  j["mean_difference"] = test.mean_difference;
  Emit(opts.out, j.dump(2) + "\n");
}

void RunCompare(const CompareOptions& opts) {
  const auto a = LoadRun(opts.run_a);
  const auto b = LoadRun(opts.run_b);
  const auto result = CompareRuns(a, b);
  json j;
  j["tc"] = result.tc;
  j["kt"] = result.kt;
  j["queries"] = result.per_query.size();
  json per_query = json::object();
  for (const auto& [qid, d] : result.per_query) {
    per_query[qid] = {{"tc", d.tc}, {"kt", d.kt}};
  }
  j["per_query"] = per_query;
  j["skipped"] = result.skipped;
  Emit(opts.out, j.dump(2) + "\n");
}

json ParamsJson(const RankerConfig& c) {
  json j;
  if (c.model == Model::kBm25) {
    j["k1"] = c.k1;
    j["b"] = c.b;
  } else {
    j["mu"] = c.mu;
  }
  return j;
}

void RunTune(const TuneOptions& opts, const GlobalOptions& global) {
  RankerConfig base;
  base.model = ParseModel(opts.model);
  const auto grid = opts.grid == "default"
                        ? ParameterGrid::Default(base.model)
                        : ParameterGrid::Parse(base.model, opts.grid, base);
  const auto objective = MetricSpec::Parse(opts.objective);
  const auto index = LoadIndexFile(opts.index);
  const auto queries = LoadQueries(opts.queries);
  const auto qrels = LoadQrels(opts.qrels);
  const auto result =
      GridTune(index, queries, qrels, grid, objective, base, global.threads);
  json j;
  j["model"] = ModelName(base.model);
  j["objective_metric"] = objective.ToString();
  j["objective"] = result.objective;
  j["best"] = ParamsJson(result.best);
  j["grid_points"] = result.trace.size();
  if (opts.trace) {
    json trace = json::array();
    for (const auto& point : result.trace) {
      json row = ParamsJson(point.config);
      row["objective"] = point.objective;
      trace.push_back(row);
    }
    j["trace"] = trace;
  }
  Emit(opts.out, j.dump(2) + "\n");
}

int Main(int argc, char** argv) {
  CLI::App app{"Retrieval robustness toolkit: index, search, evaluate, "
               "attack and compare."};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--seed", global.seed, "Master random seed")
      ->capture_default_str();
  app.add_option("--threads", global.threads, "Worker threads")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--epsilon", global.epsilon, "gMAP floor epsilon")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  IndexOptions index_opts;
  auto* index = app.add_subcommand("index", "Build an inverted index");
  index->add_option("--corpus", index_opts.corpus, "Corpus file")->required();
  index->add_option("--format", index_opts.format, "tsv or jsonl")
      ->capture_default_str()
      ->check(CLI::IsMember({"tsv", "jsonl"}));
  index->add_option("--out", index_opts.out, "Index output path")->required();
  index->add_option("--stemmer", index_opts.stemmer, "none or simple_suffix")
      ->capture_default_str()
      ->check(CLI::IsMember({"none", "simple_suffix"}));
  index->add_flag("--no-lowercase", index_opts.no_lowercase,
                  "Keep letter case");
  index->add_flag("--keep-punctuation", index_opts.keep_punctuation,
                  "Do not trim punctuation from tokens");

  SearchOptions search_opts;
  auto* search = app.add_subcommand("search", "Rank documents for queries");
  search->add_option("--index", search_opts.index, "Index file")->required();
  search->add_option("--queries", search_opts.queries, "Queries TSV")
      ->required();
  search->add_option("--model", search_opts.model, "bm25 or ql")
      ->capture_default_str()
      ->check(CLI::IsMember({"bm25", "ql", "ql_dirichlet"}));
  search->add_option("--k1", search_opts.k1)->capture_default_str();
  search->add_option("--b", search_opts.b)->capture_default_str();
  search->add_option("--mu", search_opts.mu)->capture_default_str();
  search->add_option("--top-k", search_opts.top_k)->capture_default_str();
  search->add_option("--out", search_opts.out, "Run file (default stdout)");
  search->add_option("--group", search_opts.group,
                     "Only queries carrying this group tag");
  search->add_option("--run-tag", search_opts.run_tag);
  search->add_option("--candidates", search_opts.candidates,
                     "Re-rank the documents of this run instead of the "
                     "whole collection");
  search->add_flag("--ql-all-docs", search_opts.ql_all_docs,
                   "Score every document with ql");

  EvaluateOptions eval_opts;
  auto* evaluate = app.add_subcommand("evaluate", "Score a run");
  evaluate->add_option("--run", eval_opts.run)->required();
  evaluate->add_option("--qrels", eval_opts.qrels)->required();
  evaluate->add_option("--metric", eval_opts.metrics,
                       "Comma separated: map, p@k, r@k, ndcg@k, mrr@k")
      ->delimiter(',')
      ->capture_default_str();
  evaluate->add_option("--queries", eval_opts.queries,
                       "Restrict evaluation to these queries");
  evaluate->add_option("--out", eval_opts.out, "Report file (default stdout)");

  AttackOptions attack_opts;
  auto* attack = app.add_subcommand("attack", "Perturb queries");
  attack->add_option("--queries", attack_opts.queries)->required();
  attack->add_option("--mode", attack_opts.mode, "char1, char2 or word")
      ->capture_default_str()
      ->check(CLI::IsMember({"char1", "char2", "word"}));
  attack->add_option("--out", attack_opts.out, "Manifest file")->required();
  attack->add_option("--attacked-out", attack_opts.attacked_out,
                     "Also write the attacked queries as TSV");
  attack->add_option("--vocab-from-index", attack_opts.vocab_from_index,
                     "Draw word-attack vocabulary from this index");
  attack->add_option("--vocab-size", attack_opts.vocab_size,
                     "Most frequent terms kept from the index")
      ->capture_default_str();
  attack->add_option("--vocab", attack_opts.vocab,
                     "Vocabulary file, one word per line");

  DropRateOptions dr_opts;
  auto* droprate = app.add_subcommand("droprate", "Drop rate between reports");
  droprate->add_option("--treated", dr_opts.treated)->required();
  droprate->add_option("--baseline", dr_opts.baseline)->required();
  droprate->add_option("--metric", dr_opts.metric);
  droprate->add_option("--out", dr_opts.out);

  CompareOptions cmp_opts;
  auto* compare = app.add_subcommand("compare", "Top change and Kendall tau");
  compare->add_option("--run-a", cmp_opts.run_a)->required();
  compare->add_option("--run-b", cmp_opts.run_b)->required();
  compare->add_option("--out", cmp_opts.out);

  TuneOptions tune_opts;
  auto* tune = app.add_subcommand("tune", "Grid search ranker parameters");
  tune->add_option("--index", tune_opts.index)->required();
  tune->add_option("--queries", tune_opts.queries)->required();
  tune->add_option("--qrels", tune_opts.qrels)->required();
  tune->add_option("--model", tune_opts.model)
      ->capture_default_str()
      ->check(CLI::IsMember({"bm25", "ql", "ql_dirichlet"}));
  tune->add_option("--grid", tune_opts.grid,
                   "default, or e.g. \"k1=0.5:1.5:0.1;b=0.3,0.75\"")
      ->capture_default_str();
  tune->add_option("--objective", tune_opts.objective)->capture_default_str();
  tune->add_option("--out", tune_opts.out);
  tune->add_flag("--trace", tune_opts.trace, "Include every grid point");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*index) RunIndex(index_opts);
    if (*search) RunSearch(search_opts, global);
    if (*evaluate) RunEvaluate(eval_opts, global);
    if (*attack) RunAttack(attack_opts, global);
    if (*droprate) RunDropRate(dr_opts);
    if (*compare) RunCompare(cmp_opts);
    if (*tune) RunTune(tune_opts, global);
  } catch (const UsageError& e) {
    std::cerr << "rankrobust: usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rankrobust: error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}

}  // namespace
}  // namespace rankrobust

int main(int argc, char** argv) { return rankrobust::Main(argc, argv); }
