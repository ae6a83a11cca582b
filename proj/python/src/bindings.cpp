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


#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rankrobust/attacks.hpp"
#include "rankrobust/error.hpp"
#include "rankrobust/index.hpp"
#include "rankrobust/io.hpp"
#include "rankrobust/metrics.hpp"
#include "rankrobust/rankers.hpp"
#include "rankrobust/text.hpp"

namespace py = pybind11;

namespace rankrobust {
namespace {

using PyRun = std::map<std::string, std::vector<std::string>>;
using PyQrels = std::map<std::string, std::map<std::string, int>>;

TokenizerConfig MakeTokenizer(bool lowercase, const std::string& stemmer,
                              bool strip_punctuation) {
  TokenizerConfig config;
  config.lowercase = lowercase;
  config.stemmer = ParseStemmer(stemmer);
  config.strip_punctuation = strip_punctuation;
  return config;
}

// Documents in a Python ranking carry no scores; give them descending ones
// so that list order is rank order.
RunSet ToRunSet(const PyRun& run) {
  RunSet out;
  for (const auto& [qid, docs] : run) {
    RankedList list{qid, {}};
    double score = static_cast<double>(docs.size());
    for (const auto& d : docs) list.entries.push_back({d, score--});
    out.lists.emplace(qid, std::move(list));
  }
  return out;
}

Qrels ToQrels(const PyQrels& judgments) {
  Qrels qrels;
  for (const auto& [qid, docs] : judgments) {
    for (const auto& [doc, grade] : docs) qrels.Add(qid, doc, grade);
  }
  return qrels;
}

std::vector<std::string> QueryIdsFor(const PyQrels& judgments) {
  std::vector<std::string> ids;
  for (const auto& [qid, docs] : judgments) ids.push_back(qid);
  return ids;
}

// Holds the index by value; InvertedIndex has no public default ctor.
class PyIndex {
 public:
  explicit PyIndex(InvertedIndex index) : index_(std::move(index)) {}

  static PyIndex Build(const std::vector<std::pair<std::string, std::string>>& docs,
                       bool lowercase, const std::string& stemmer,
                       bool strip_punctuation) {
    std::vector<DocRecord> records;
    records.reserve(docs.size());
    for (const auto& [id, text] : docs) records.push_back({id, text});
    return PyIndex(InvertedIndex::Build(
        records, MakeTokenizer(lowercase, stemmer, strip_punctuation)));
  }

  static PyIndex Load(const std::string& path) {
    std::istringstream in(ReadFileToString(path));
    return PyIndex(LoadIndex(in, path));
  }

  void Save(const std::string& path) const {
    std::ostringstream out;
    SaveIndex(index_, out);
    WriteStringToFile(path, out.str());
  }

  std::vector<std::pair<std::string, double>> Search(
      const std::string& query, const std::string& model, double k1, double b,
      double mu, std::size_t top_k) const {
    RankerConfig config;
    config.model = ParseModel(model);
    config.k1 = k1;
    config.b = b;
    config.mu = mu;
    config.top_k = top_k;
    const auto list = Rank(index_, {"q", query, std::nullopt}, config);
    std::vector<std::pair<std::string, double>> hits;
    for (const auto& e : list.entries) hits.emplace_back(e.doc_id, e.score);
    return hits;
  }

  const InvertedIndex& index() const { return index_; }

 private:
  InvertedIndex index_;
};

py::dict ReportDict(const MetricReport& report) {
  py::dict d;
  d["metric"] = report.metric_name;
  d["aggregate"] = report.aggregate;
  d["per_query"] = report.per_query;
  d["skipped"] = report.skipped;
  d["extras"] = report.extras;
  return d;
}

}  // namespace
}  // namespace rankrobust

PYBIND11_MODULE(_rankrobust, m) {
  using namespace rankrobust;
  m.doc() = "Retrieval robustness toolkit: rankers, metrics and attacks.";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<UnattackableError>(m, "UnattackableError",
                                            PyExc_ValueError);

  m.def("tokenize",
        [](const std::string& text, bool lowercase, const std::string& stemmer,
           bool strip_punctuation) {
          return Tokenize(text,
                          MakeTokenizer(lowercase, stemmer, strip_punctuation));
        },
        py::arg("text"), py::arg("lowercase") = true,
        py::arg("stemmer") = "none", py::arg("strip_punctuation") = true);

  py::class_<PyIndex>(m, "Index")
      .def_static("build", &PyIndex::Build, py::arg("docs"),
                  py::arg("lowercase") = true, py::arg("stemmer") = "none",
                  py::arg("strip_punctuation") = true,
                  "Build from a list of (doc_id, text) pairs.")
      .def_static("load", &PyIndex::Load, py::arg("path"))
      .def("save", &PyIndex::Save, py::arg("path"))
      .def("search", &PyIndex::Search, py::arg("query"),
           py::arg("model") = "bm25", py::arg("k1") = 0.9, py::arg("b") = 0.4,
           py::arg("mu") = 1000.0, py::arg("top_k") = 1000,
           "Ranked (doc_id, score) pairs for one query.")
      .def_property_readonly(
          "doc_count", [](const PyIndex& i) { return i.index().doc_count(); })
      .def_property_readonly(
          "vocabulary_size",
          [](const PyIndex& i) { return i.index().vocabulary_size(); })
      .def("doc_freq",
           [](const PyIndex& i, const std::string& term) {
             return i.index().DocFreq(term);
           })
      .def("top_terms", [](const PyIndex& i, std::size_t n) {
        return i.index().TopTerms(n);
      });

  m.def("evaluate",
        [](const PyRun& run, const PyQrels& qrels, const std::string& metric,
           double epsilon) {
          const auto rs = ToRunSet(run);
          const auto qr = ToQrels(qrels);
          const auto ids = QueryIdsFor(qrels);
          auto report = Evaluate(rs, qr, MetricSpec::Parse(metric), ids);
          AddRobustnessExtras(report, rs, qr, ids, epsilon);
          return ReportDict(report);
        },
        py::arg("run"), py::arg("qrels"), py::arg("metric") = "map",
        py::arg("epsilon") = kDefaultGmapEpsilon,
        "run maps query id to a ranked list of doc ids; qrels maps query id "
        "to {doc id: grade}.");

  m.def("vnap", &Vnap, py::arg("ap_per_query"));
  m.def("gmap", &Gmap, py::arg("ap_per_query"),
        py::arg("epsilon") = kDefaultGmapEpsilon);
  m.def("pct_no",
        [](const PyRun& run, const PyQrels& qrels) {
          const auto ids = QueryIdsFor(qrels);
          return PctNo(ToRunSet(run), ToQrels(qrels), ids);
        },
        py::arg("run"), py::arg("qrels"));
  m.def("drop_rate", &DropRate, py::arg("treated"), py::arg("baseline"));
  m.def("paired_significance", &PairedSignificance, py::arg("a"),
        py::arg("b"));
  m.def("kendall_tau",
        [](const std::vector<std::string>& a,
           const std::vector<std::string>& b) {
          const auto rs = ToRunSet({{"a", a}, {"b", b}});
          return KendallTauDistance(rs.lists.at("a"), rs.lists.at("b"));
        },
        py::arg("a"), py::arg("b"));

  m.def("attack",
        [](const std::vector<std::pair<std::string, std::string>>& queries,
           const std::string& mode, std::uint64_t seed,
           std::vector<std::string> vocabulary, std::size_t threads) {
          std::vector<QueryRecord> records;
          for (const auto& [id, text] : queries) {
            records.push_back({id, text, std::nullopt});
          }
          AttackSpec spec;
          spec.mode = ParseAttackMode(mode);
          spec.seed = seed;
          spec.vocabulary = std::move(vocabulary);
          std::vector<AttackManifestEntry> entries;
          {
            py::gil_scoped_release release;
            entries = AttackQuerySet(records, spec, threads);
          }
          py::list out;
          for (const auto& e : entries) {
            py::list edits;
            for (const auto& edit : e.edits) {
              py::dict d;
              d["kind"] = std::string(EditKindName(edit.kind));
              d["word_index"] = edit.word_index;
              d["char_index"] = edit.char_index;
              d["inserted"] = edit.inserted;
              d["removed"] = edit.removed;
              edits.append(d);
            }
            py::dict d;
            d["query_id"] = e.query_id;
            d["original"] = e.original;
            d["attacked"] = e.attacked;
            d["edits"] = edits;
            d["seed"] = e.seed;
            d["skipped"] = e.skipped;
            out.append(d);
          }
          return out;
        },
        py::arg("queries"), py::arg("mode") = "char1", py::arg("seed") = 42,
        py::arg("vocabulary") = std::vector<std::string>{},
        py::arg("threads") = 1,
        "Attack (query_id, text) pairs; returns one manifest entry each.");
}
