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

#include "rankrobust/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "rankrobust/error.hpp"

namespace rankrobust {
namespace {

using json = nlohmann::json;

// Reads lines, stripping a trailing '\r', and tracks the line number.
class LineReader {
 public:
  LineReader(std::istream& in, const std::string& source)
      : in_(in), source_(source) {}

  bool Next(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_number_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw DataError(message, source_, line_number_);
  }

  std::string Where() const {
    return (source_.empty() ? std::string("<input>") : source_) + ":" +
           std::to_string(line_number_);
  }

  std::size_t line_number() const { return line_number_; }

 private:
  std::istream& in_;
  const std::string& source_;
  std::size_t line_number_ = 0;
};

bool IsAsciiSpace(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\v' || c == '\f' ||
         c == '\r';
}

std::vector<std::string_view> SplitAsciiWhitespace(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && IsAsciiSpace(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !IsAsciiSpace(line[i])) ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::vector<std::string_view> SplitTabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

bool IsBlank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), IsAsciiSpace);
}

template <typename T>
bool ParseNumber(std::string_view text, T& value) {
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  return ec == std::errc() && ptr == end;
}

std::string_view TrimAscii(std::string_view s) {
  while (!s.empty() && IsAsciiSpace(s.front())) s.remove_prefix(1);
  while (!s.empty() && IsAsciiSpace(s.back())) s.remove_suffix(1);
  return s;
}

json ReportToJson(const MetricReport& report) {
  json j;
  j["metric"] = report.metric_name;
  j["cutoff"] = report.cutoff ? json(*report.cutoff) : json(nullptr);
  j["per_query"] = report.per_query;
  j["aggregate"] = report.aggregate;
  j["extras"] = report.extras;
  j["skipped"] = report.skipped;
  j["config"] = report.config;
  return j;
}

MetricReport ReportFromJson(const json& j) {
  MetricReport report;
  report.metric_name = j.at("metric").get<std::string>();
  if (j.contains("cutoff") && !j.at("cutoff").is_null()) {
    report.cutoff = j.at("cutoff").get<int>();
  }
  report.per_query = j.at("per_query").get<std::map<std::string, double>>();
  report.aggregate = j.at("aggregate").get<double>();
  if (j.contains("extras")) {
    report.extras = j.at("extras").get<std::map<std::string, double>>();
  }
  if (j.contains("skipped")) {
    report.skipped = j.at("skipped").get<std::vector<std::string>>();
  }
  if (j.contains("config")) {
    report.config = j.at("config").get<std::map<std::string, std::string>>();
  }
  return report;
}

}  // namespace

std::string FormatScore(double score) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6g", score);
  return buffer;
}

RunSet ParseRun(std::istream& in, const std::string& source,
                std::vector<std::string>* warnings) {
  struct Row {
    long rank;
    std::size_t line;
    RankedEntry entry;
  };
  std::map<std::string, std::vector<Row>, std::less<>> rows;
  RunSet run;
  LineReader reader(in, source);
  std::string line;
  const auto warn = [&](std::string message) {
    if (warnings) warnings->push_back(std::move(message));
  };
  while (reader.Next(line)) {
    if (IsBlank(line)) continue;
    const auto f = SplitAsciiWhitespace(line);
    if (f.size() != 6) {
      reader.Fail("run line needs 6 columns (qid Q0 docid rank score tag), "
                  "found " + std::to_string(f.size()));
    }
    long rank = 0;
    double score = 0.0;
    if (!ParseNumber(f[3], rank) || rank < 1) reader.Fail("bad rank");
    if (!ParseNumber(f[4], score) || !std::isfinite(score)) {
      reader.Fail("bad score");
    }
    if (run.run_tag.empty()) {
      run.run_tag = std::string(f[5]);
    } else if (run.run_tag != f[5]) {
      warn(reader.Where() + ": run tag " + std::string(f[5]) +
           " differs from " + run.run_tag);
    }
    rows[std::string(f[0])].push_back(
        {rank, reader.line_number(), {std::string(f[2]), score}});
  }
  for (auto& [qid, list_rows] : rows) {
    std::stable_sort(list_rows.begin(), list_rows.end(),
                     [](const Row& a, const Row& b) { return a.rank < b.rank; });
    RankedList list;
    list.query_id = qid;
    for (std::size_t i = 0; i < list_rows.size(); ++i) {
      const long expected = static_cast<long>(i) + 1;
      if (list_rows[i].rank != expected) {
        warn(source + ":" + std::to_string(list_rows[i].line) +
             ": rank gap in query " + qid + " (rank " +
             std::to_string(list_rows[i].rank) + " at position " +
             std::to_string(expected) + ")");
      }
      list.entries.push_back(std::move(list_rows[i].entry));
    }
    for (const auto& v : ValidateRankedList(list)) {
      warn(source + ": query " + qid + ": " + v.message);
    }
    run.lists.emplace(qid, std::move(list));
  }
  return run;
}

void WriteRun(const RunSet& run, std::ostream& out) {
  const std::string tag = run.run_tag.empty() ? "rankrobust" : run.run_tag;
  for (const auto& [qid, list] : run.lists) {
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      const auto& e = list.entries[i];
      out << qid << " Q0 " << e.doc_id << ' ' << (i + 1) << ' '
          << FormatScore(e.score) << ' ' << tag << '\n';
    }
  }
}

Qrels ParseQrels(std::istream& in, const std::string& source) {
  Qrels qrels;
  LineReader reader(in, source);
  std::string line;
  while (reader.Next(line)) {
    if (IsBlank(line)) continue;
    const auto f = SplitAsciiWhitespace(line);
    if (f.size() != 4) {
      reader.Fail("qrels line needs 4 columns (qid 0 docid grade), found " +
                  std::to_string(f.size()));
    }
    int grade = 0;
    if (!ParseNumber(f[3], grade)) reader.Fail("bad grade");
    try {
      qrels.Add(f[0], f[2], grade);
    } catch (const DataError& e) {
      reader.Fail(e.what());
    }
  }
  return qrels;
}

void WriteQrels(const Qrels& qrels, std::ostream& out) {
  for (const auto& [qid, docs] : qrels.all()) {
    for (const auto& [doc, grade] : docs) {
      out << qid << " 0 " << doc << ' ' << grade << '\n';
    }
  }
}

CorpusFormat ParseCorpusFormat(std::string_view name) {
  if (name == "tsv") return CorpusFormat::kTsv;
  if (name == "jsonl") return CorpusFormat::kJsonl;
  throw UsageError("unknown corpus format '" + std::string(name) + "'");
}

std::vector<DocRecord> ParseCorpus(std::istream& in, CorpusFormat format,
                                   const std::string& source) {
  std::vector<DocRecord> docs;
  std::unordered_set<std::string> ids;
  LineReader reader(in, source);
  std::string line;
  while (reader.Next(line)) {
    if (IsBlank(line)) continue;
    DocRecord doc;
    if (format == CorpusFormat::kTsv) {
      const auto tab = line.find('\t');
      if (tab == std::string::npos) reader.Fail("expected docid<TAB>text");
      doc.id = line.substr(0, tab);
      doc.text = line.substr(tab + 1);
    } else {
      json j;
      try {
        j = json::parse(line);
      } catch (const json::exception& e) {
        reader.Fail(std::string("invalid JSON: ") + e.what());
      }
      if (!j.is_object() || !j.contains("id") || !j["id"].is_string() ||
          !j.contains("contents") || !j["contents"].is_string()) {
        reader.Fail("expected an object with string fields id and contents");
      }
      doc.id = j["id"].get<std::string>();
      doc.text = j["contents"].get<std::string>();
    }
    if (doc.id.empty()) reader.Fail("empty doc id");
    if (!ids.insert(doc.id).second) reader.Fail("duplicate doc id " + doc.id);
    docs.push_back(std::move(doc));
  }
  return docs;
}

void WriteCorpus(std::span<const DocRecord> docs, CorpusFormat format,
                 std::ostream& out) {
  std::vector<const DocRecord*> sorted;
  for (const auto& d : docs) sorted.push_back(&d);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  for (const auto* d : sorted) {
    if (format == CorpusFormat::kTsv) {
      out << d->id << '\t' << d->text << '\n';
    } else {
      json j;
      j["id"] = d->id;
      j["contents"] = d->text;
      out << j.dump() << '\n';
    }
  }
}

std::vector<QueryRecord> ParseQueries(std::istream& in,
                                      const std::string& source) {
  std::vector<QueryRecord> queries;
  std::unordered_set<std::string> ids;
  LineReader reader(in, source);
  std::string line;
  while (reader.Next(line)) {
    if (IsBlank(line)) continue;
    const auto f = SplitTabs(line);
    if (f.size() < 2) reader.Fail("expected qid<TAB>text[<TAB>group]");
    if (f.size() > 3) reader.Fail("query text contains a tab character");
    QueryRecord q;
    q.id = std::string(f[0]);
    q.text = std::string(f[1]);
    if (f.size() == 3 && !f[2].empty()) q.group = std::string(f[2]);
    if (q.id.empty()) reader.Fail("empty query id");
    if (TrimAscii(q.text).empty()) reader.Fail("empty query text");
    if (!ids.insert(q.id).second) reader.Fail("duplicate query id " + q.id);
    queries.push_back(std::move(q));
  }
  return queries;
}

void WriteQueries(std::span<const QueryRecord> queries, std::ostream& out) {
  std::vector<const QueryRecord*> sorted;
  for (const auto& q : queries) sorted.push_back(&q);
  std::sort(sorted.begin(), sorted.end(),
            [](const auto* a, const auto* b) { return a->id < b->id; });
  for (const auto* q : sorted) {
    if (q->text.find('\t') != std::string::npos ||
        q->text.find('\n') != std::string::npos) {
      throw DataError("query " + q->id + " contains a tab or newline");
    }
    out << q->id << '\t' << q->text;
    if (q->group) out << '\t' << *q->group;
    out << '\n';
  }
}

std::vector<AttackManifestEntry> ParseManifest(std::istream& in,
                                               const std::string& source) {
  std::vector<AttackManifestEntry> entries;
  std::unordered_set<std::string> closed;
  LineReader reader(in, source);
  std::string line;
  const auto finish = [&](std::size_t line_number) {
    if (entries.empty()) return;
    const auto& e = entries.back();
    closed.insert(e.query_id);
    std::string expected = e.original;
    if (!e.skipped) {
      try {
        expected = ReplayEdits(e.original, e.edits);
      } catch (const DataError& error) {
        throw DataError(error.what(), source, line_number);
      }
    }
    if (expected != e.attacked) {
      throw DataError("edits of query " + e.query_id +
                      " do not reproduce the attacked text",
                      source, line_number);
    }
  };
  while (reader.Next(line)) {
    if (line.empty()) continue;
    const auto f = SplitTabs(line);
    if (f.size() != 9) {
      reader.Fail("manifest line needs 9 tab-separated columns, found " +
                  std::to_string(f.size()));
    }
    std::uint64_t seed = 0;
    if (!ParseNumber(f[8], seed)) reader.Fail("bad seed");
    const bool continues = !entries.empty() &&
                           entries.back().query_id == f[0] &&
                           !entries.back().skipped && f[3] != "skip";
    if (!continues) {
      finish(reader.line_number() - 1);
      if (closed.contains(std::string(f[0]))) {
        reader.Fail("duplicate query id " + std::string(f[0]));
      }
      AttackManifestEntry entry;
      entry.query_id = std::string(f[0]);
      entry.original = std::string(f[1]);
      entry.attacked = std::string(f[2]);
      entry.seed = seed;
      entries.push_back(std::move(entry));
    } else if (entries.back().original != f[1] ||
               entries.back().attacked != f[2] || entries.back().seed != seed) {
      reader.Fail("rows of query " + std::string(f[0]) + " disagree");
    }
    AttackManifestEntry& entry = entries.back();
    if (f[3] == "skip") {
      entry.skipped = true;
      continue;
    }
    EditRecord edit;
    try {
      edit.kind = ParseEditKind(f[3]);
    } catch (const DataError& e) {
      reader.Fail(e.what());
    }
    if (!ParseNumber(f[4], edit.word_index)) reader.Fail("bad word index");
    if (!f[5].empty()) {
      std::size_t c = 0;
      if (!ParseNumber(f[5], c)) reader.Fail("bad char index");
      edit.char_index = c;
    }
    if (IsCharEdit(edit.kind) != edit.char_index.has_value()) {
      reader.Fail("char index must be set for char edits only");
    }
    if (!f[6].empty()) edit.inserted = std::string(f[6]);
    if (!f[7].empty()) edit.removed = std::string(f[7]);
    entry.edits.push_back(std::move(edit));
  }
  finish(reader.line_number());
  return entries;
}

void WriteManifest(std::span<const AttackManifestEntry> entries,
                   std::ostream& out) {
  std::vector<const AttackManifestEntry*> sorted;
  for (const auto& e : entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    return a->query_id < b->query_id;
  });
  for (const auto* e : sorted) {
    const std::string prefix =
        e->query_id + '\t' + e->original + '\t' + e->attacked + '\t';
    if (e->skipped || e->edits.empty()) {
      out << prefix << "skip\t\t\t\t\t" << e->seed << '\n';
      continue;
    }
    for (const auto& edit : e->edits) {
      out << prefix << EditKindName(edit.kind) << '\t' << edit.word_index
          << '\t';
      if (edit.char_index) out << *edit.char_index;
      out << '\t' << edit.inserted.value_or("") << '\t'
          << edit.removed.value_or("") << '\t' << e->seed << '\n';
    }
  }
}

void WriteReport(const MetricReport& report, std::ostream& out) {
  out << ReportToJson(report).dump(2) << '\n';
}

void WriteReports(std::span<const MetricReport> reports, std::ostream& out) {
  json array = json::array();
  for (const auto& r : reports) array.push_back(ReportToJson(r));
  out << array.dump(2) << '\n';
}

std::vector<MetricReport> ParseReports(std::istream& in,
                                       const std::string& source) {
  std::vector<MetricReport> reports;
  try {
    const json j = json::parse(in);
    if (j.is_array()) {
      for (const auto& item : j) reports.push_back(ReportFromJson(item));
    } else {
      reports.push_back(ReportFromJson(j));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid report: ") + e.what(), source,
                    std::nullopt);
  }
  return reports;
}

void SaveIndex(const InvertedIndex& index, std::ostream& out) {
  json j;
  j["format"] = "rankrobust-index";
  j["version"] = 1;
  const auto& config = index.tokenizer_config();
  j["tokenizer"] = {{"lowercase", config.lowercase},
                    {"stemmer", std::string(StemmerName(config.stemmer))},
                    {"strip_punctuation", config.strip_punctuation}};
  json docs = json::array();
  for (std::size_t d = 0; d < index.doc_count(); ++d) {
    docs.push_back({index.DocId(static_cast<std::uint32_t>(d)),
                    index.DocLength(static_cast<std::uint32_t>(d))});
  }
  j["docs"] = std::move(docs);
  json postings = json::object();
  for (const auto& [term, list] : index.postings()) {
    json pl = json::array();
    for (const auto& p : list) pl.push_back({p.doc, p.tf});
    postings[term] = std::move(pl);
  }
  j["postings"] = std::move(postings);
  out << j.dump() << '\n';
}

InvertedIndex LoadIndex(std::istream& in, const std::string& source) {
  try {
    const json j = json::parse(in);
    if (j.value("format", "") != "rankrobust-index" ||
        j.value("version", 0) != 1) {
      throw DataError("not a rankrobust index (format/version mismatch)",
                      source, std::nullopt);
    }
    TokenizerConfig config;
    const auto& t = j.at("tokenizer");
    config.lowercase = t.at("lowercase").get<bool>();
    config.strip_punctuation = t.at("strip_punctuation").get<bool>();
    config.stemmer = ParseStemmer(t.at("stemmer").get<std::string>());
    std::vector<std::string> ids;
    std::vector<std::uint32_t> lengths;
    for (const auto& d : j.at("docs")) {
      ids.push_back(d.at(0).get<std::string>());
      lengths.push_back(d.at(1).get<std::uint32_t>());
    }
    InvertedIndex::PostingMap postings;
    for (const auto& [term, list] : j.at("postings").items()) {
      auto& out = postings[term];
      for (const auto& p : list) {
        out.push_back({p.at(0).get<std::uint32_t>(),
                       p.at(1).get<std::uint32_t>()});
      }
    }
    return InvertedIndex::FromParts(config, std::move(ids), std::move(lengths),
                                    std::move(postings));
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid index: ") + e.what(), source,
                    std::nullopt);
  } catch (const UsageError& e) {
    throw DataError(std::string("invalid index: ") + e.what(), source,
                    std::nullopt);
  }
}

std::string ReadFileToString(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string() + " for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteStringToFile(const std::filesystem::path& path,
                       std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  out << contents;
  if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace rankrobust
