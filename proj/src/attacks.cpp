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

#include "rankrobust/attacks.hpp"

#include <array>
#include <limits>
#include <unordered_set>

#include "rankrobust/error.hpp"
#include "rankrobust/parallel.hpp"
#include "rankrobust/text.hpp"

namespace rankrobust {
namespace {

constexpr std::array<EditKind, 4> kCharKinds = {
    EditKind::kCharAdd, EditKind::kCharRemove, EditKind::kCharSubstitute,
    EditKind::kCharSwap};
constexpr std::array<EditKind, 3> kWordKinds = {
    EditKind::kWordAdd, EditKind::kWordRemove, EditKind::kWordSubstitute};

// Draws before falling back to an explicit scan of unequal pairs.
constexpr int kSwapRetries = 8;
constexpr int kSubstituteRetries = 64;

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t Fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ull;
  }
  return h;
}

bool HasUnequalInternalPair(const std::vector<std::string_view>& chars) {
  for (std::size_t p = 1; p + 2 < chars.size(); ++p) {
    if (chars[p] != chars[p + 1]) return true;
  }
  return false;
}

bool Eligible(EditKind kind, const std::vector<std::string_view>& chars) {
  switch (kind) {
    case EditKind::kCharAdd: return chars.size() >= 2;
    case EditKind::kCharRemove:
    case EditKind::kCharSubstitute: return chars.size() >= 3;
    case EditKind::kCharSwap:
      return chars.size() >= 4 && HasUnequalInternalPair(chars);
    default: return false;
  }
}

std::string Join(const std::vector<std::string_view>& parts) {
  std::string out;
  for (auto p : parts) out += p;
  return out;
}

std::string JoinWords(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

std::string RandomLetter(AttackRng& rng) {
  return std::string(1, static_cast<char>('a' + rng.Uniform(26)));
}

[[noreturn]] void BadEdit(const EditRecord& edit, const std::string& why) {
  throw DataError("cannot apply " + std::string(EditKindName(edit.kind)) +
                  " at word " + std::to_string(edit.word_index) + ": " + why);
}

std::string ApplyCharEdit(std::string_view text, const EditRecord& edit) {
  const auto words = WordSplit(text);
  if (edit.word_index >= words.size()) BadEdit(edit, "no such word");
  if (!edit.char_index) BadEdit(edit, "missing char index");
  const Word& word = words[edit.word_index];
  auto chars = SplitChars(word.text);
  const std::size_t len = chars.size();
  const std::size_t p = *edit.char_index;
  std::string rebuilt;
  switch (edit.kind) {
    case EditKind::kCharAdd: {
      if (len < 2 || p < 1 || p > len - 1) BadEdit(edit, "not internal");
      if (!edit.inserted) BadEdit(edit, "missing inserted text");
      chars.insert(chars.begin() + static_cast<std::ptrdiff_t>(p),
                   *edit.inserted);
      rebuilt = Join(chars);
      break;
    }
    case EditKind::kCharRemove:
    case EditKind::kCharSubstitute: {
      if (len < 3 || p < 1 || p > len - 2) BadEdit(edit, "not internal");
      if (edit.removed && *edit.removed != chars[p]) {
        BadEdit(edit, "removed character mismatch");
      }
      if (edit.kind == EditKind::kCharRemove) {
        chars.erase(chars.begin() + static_cast<std::ptrdiff_t>(p));
      } else {
        if (!edit.inserted) BadEdit(edit, "missing inserted text");
        chars[p] = *edit.inserted;
      }
      rebuilt = Join(chars);
      break;
    }
    case EditKind::kCharSwap: {
      if (len < 4 || p < 1 || p > len - 3) BadEdit(edit, "not internal");
      std::swap(chars[p], chars[p + 1]);
      rebuilt = Join(chars);
      break;
    }
    default: BadEdit(edit, "not a character edit");
  }
  std::string out(text.substr(0, word.start));
  out += rebuilt;
  out += text.substr(word.end);
  return out;
}

std::string ApplyWordEdit(std::string_view text, const EditRecord& edit) {
  std::vector<std::string> words;
  for (auto& w : WordSplit(text)) words.push_back(std::move(w.text));
  const std::size_t i = edit.word_index;
  switch (edit.kind) {
    case EditKind::kWordAdd:
      if (i > words.size()) BadEdit(edit, "no such boundary");
      if (!edit.inserted) BadEdit(edit, "missing inserted word");
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(i),
                   *edit.inserted);
      break;
    case EditKind::kWordRemove:
      if (i >= words.size()) BadEdit(edit, "no such word");
      if (edit.removed && *edit.removed != words[i]) {
        BadEdit(edit, "removed word mismatch");
      }
      words.erase(words.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    case EditKind::kWordSubstitute:
      if (i >= words.size()) BadEdit(edit, "no such word");
      if (!edit.inserted) BadEdit(edit, "missing inserted word");
      if (edit.removed && *edit.removed != words[i]) {
        BadEdit(edit, "removed word mismatch");
      }
      words[i] = *edit.inserted;
      break;
    default: BadEdit(edit, "not a word edit");
  }
  return JoinWords(words);
}

}  // namespace

std::string_view EditKindName(EditKind kind) {
  switch (kind) {
    case EditKind::kCharAdd: return "char_add";
    case EditKind::kCharRemove: return "char_remove";
    case EditKind::kCharSubstitute: return "char_substitute";
    case EditKind::kCharSwap: return "char_swap";
    case EditKind::kWordAdd: return "word_add";
    case EditKind::kWordRemove: return "word_remove";
    case EditKind::kWordSubstitute: return "word_substitute";
  }
  return "unknown";
}

EditKind ParseEditKind(std::string_view name) {
  for (auto kind : kCharKinds) {
    if (EditKindName(kind) == name) return kind;
  }
  for (auto kind : kWordKinds) {
    if (EditKindName(kind) == name) return kind;
  }
  throw DataError("unknown edit kind '" + std::string(name) + "'");
}

bool IsCharEdit(EditKind kind) {
  return kind == EditKind::kCharAdd || kind == EditKind::kCharRemove ||
         kind == EditKind::kCharSubstitute || kind == EditKind::kCharSwap;
}

std::size_t AttackRng::Uniform(std::size_t n) {
  const auto bound = static_cast<std::uint64_t>(n);
  // 2^64 mod bound; draws below it would bias the modulo.
  const std::uint64_t threshold = (0 - bound) % bound;
  while (true) {
    const std::uint64_t r = engine_();
    if (r >= threshold) return static_cast<std::size_t>(r % bound);
  }
}

std::uint64_t DeriveQuerySeed(std::uint64_t master_seed,
                              std::string_view query_id) {
  return SplitMix64(master_seed ^ SplitMix64(Fnv1a64(query_id)));
}

AttackResult CharAttack(std::string_view text, AttackRng& rng,
                        std::optional<EditKind> forced_kind) {
  const auto words = WordSplit(text);
  std::vector<std::vector<std::string_view>> chars;
  chars.reserve(words.size());
  for (const auto& w : words) chars.push_back(SplitChars(w.text));

  std::array<std::vector<std::size_t>, kCharKinds.size()> eligible;
  for (std::size_t k = 0; k < kCharKinds.size(); ++k) {
    for (std::size_t w = 0; w < words.size(); ++w) {
      if (Eligible(kCharKinds[k], chars[w])) eligible[k].push_back(w);
    }
  }

  std::size_t kind_slot = 0;
  if (forced_kind) {
    if (!IsCharEdit(*forced_kind)) {
      throw UsageError("forced kind is not a character edit");
    }
    kind_slot = static_cast<std::size_t>(*forced_kind) -
                static_cast<std::size_t>(EditKind::kCharAdd);
    if (eligible[kind_slot].empty()) {
      throw UnattackableError("query unattackable: no word eligible for " +
                              std::string(EditKindName(*forced_kind)));
    }
  } else {
    kind_slot = rng.Uniform(kCharKinds.size());
    if (eligible[kind_slot].empty()) {
      std::vector<std::size_t> available;
      for (std::size_t k = 0; k < eligible.size(); ++k) {
        if (!eligible[k].empty()) available.push_back(k);
      }
      if (available.empty()) throw UnattackableError("query unattackable");
      kind_slot = available[rng.Uniform(available.size())];
    }
  }

  const auto& candidates = eligible[kind_slot];
  const std::size_t w = candidates[rng.Uniform(candidates.size())];
  const auto& word = chars[w];
  const std::size_t len = word.size();

  EditRecord edit;
  edit.kind = kCharKinds[kind_slot];
  edit.word_index = w;
  switch (edit.kind) {
    case EditKind::kCharAdd:
      edit.char_index = 1 + rng.Uniform(len - 1);
      edit.inserted = RandomLetter(rng);
      break;
    case EditKind::kCharRemove:
      edit.char_index = 1 + rng.Uniform(len - 2);
      edit.removed = std::string(word[*edit.char_index]);
      break;
    case EditKind::kCharSubstitute: {
      const std::size_t p = 1 + rng.Uniform(len - 2);
      edit.char_index = p;
      edit.removed = std::string(word[p]);
      const std::string_view old = word[p];
      const bool lower = old.size() == 1 && old[0] >= 'a' && old[0] <= 'z';
      if (lower) {
        // 25 letters other than the current one.
        auto letter = static_cast<char>('a' + rng.Uniform(25));
        if (letter >= old[0]) ++letter;
        edit.inserted = std::string(1, letter);
      } else {
        edit.inserted = RandomLetter(rng);
      }
      break;
    }
    case EditKind::kCharSwap: {
      std::optional<std::size_t> pick;
      for (int attempt = 0; attempt < kSwapRetries && !pick; ++attempt) {
        const std::size_t p = 1 + rng.Uniform(len - 3);
        if (word[p] != word[p + 1]) pick = p;
      }
      if (!pick) {
        std::vector<std::size_t> unequal;
        for (std::size_t p = 1; p + 2 < len; ++p) {
          if (word[p] != word[p + 1]) unequal.push_back(p);
        }
        pick = unequal[rng.Uniform(unequal.size())];
      }
      edit.char_index = *pick;
      break;
    }
    default: break;
  }
  AttackResult result;
  result.text = ApplyEdit(text, edit);
  result.edits.push_back(std::move(edit));
  return result;
}

AttackResult NCharAttack(std::string_view text, std::size_t n,
                         AttackRng& rng) {
  if (n == 0) throw UsageError("n must be positive");
  AttackResult result{std::string(text), {}};
  for (std::size_t stage = 0; stage < n; ++stage) {
    try {
      auto step = CharAttack(result.text, rng);
      result.text = std::move(step.text);
      result.edits.push_back(std::move(step.edits.front()));
    } catch (const UnattackableError& e) {
      throw UnattackableError(std::string(e.what()) + " at stage " +
                              std::to_string(stage + 1));
    }
  }
  return result;
}

AttackResult WordAttack(std::string_view text,
                        std::span<const std::string> vocabulary,
                        AttackRng& rng, std::optional<EditKind> forced_kind) {
  std::vector<std::string> words;
  for (auto& w : WordSplit(text)) words.push_back(std::move(w.text));
  if (words.empty()) throw UnattackableError("query unattackable: no words");

  std::unordered_set<std::string_view> distinct(vocabulary.begin(),
                                                vocabulary.end());
  std::vector<std::size_t> substitutable;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (distinct.size() >= 2 ||
        (distinct.size() == 1 && !distinct.contains(words[i]))) {
      substitutable.push_back(i);
    }
  }
  const std::array<bool, 3> ok = {!vocabulary.empty(), words.size() >= 2,
                                  !substitutable.empty()};

  std::size_t slot = 0;
  if (forced_kind) {
    const auto it = std::find(kWordKinds.begin(), kWordKinds.end(),
                              *forced_kind);
    if (it == kWordKinds.end()) {
      throw UsageError("forced kind is not a word edit");
    }
    slot = static_cast<std::size_t>(it - kWordKinds.begin());
    if (!ok[slot]) {
      throw UnattackableError("query unattackable: " +
                              std::string(EditKindName(*forced_kind)) +
                              " is not applicable");
    }
  } else {
    slot = rng.Uniform(kWordKinds.size());
    if (!ok[slot]) {
      std::vector<std::size_t> available;
      for (std::size_t k = 0; k < ok.size(); ++k) {
        if (ok[k]) available.push_back(k);
      }
      if (available.empty()) throw UnattackableError("query unattackable");
      slot = available[rng.Uniform(available.size())];
    }
  }

  EditRecord edit;
  edit.kind = kWordKinds[slot];
  switch (edit.kind) {
    case EditKind::kWordAdd:
      edit.word_index = rng.Uniform(words.size() + 1);
      edit.inserted = vocabulary[rng.Uniform(vocabulary.size())];
      break;
    case EditKind::kWordRemove:
      edit.word_index = rng.Uniform(words.size());
      edit.removed = words[edit.word_index];
      break;
    case EditKind::kWordSubstitute: {
      const std::size_t i = substitutable[rng.Uniform(substitutable.size())];
      edit.word_index = i;
      edit.removed = words[i];
      for (int attempt = 0; attempt < kSubstituteRetries; ++attempt) {
        const auto& candidate = vocabulary[rng.Uniform(vocabulary.size())];
        if (candidate != words[i]) {
          edit.inserted = candidate;
          break;
        }
      }
      if (!edit.inserted) {
        std::vector<std::size_t> others;
        for (std::size_t v = 0; v < vocabulary.size(); ++v) {
          if (vocabulary[v] != words[i]) others.push_back(v);
        }
        edit.inserted = vocabulary[others[rng.Uniform(others.size())]];
      }
      break;
    }
    default: break;
  }
  AttackResult result;
  result.text = ApplyEdit(text, edit);
  result.edits.push_back(std::move(edit));
  return result;
}

std::string ApplyEdit(std::string_view text, const EditRecord& edit) {
  return IsCharEdit(edit.kind) ? ApplyCharEdit(text, edit)
                               : ApplyWordEdit(text, edit);
}

std::string ReplayEdits(std::string_view original,
                        std::span<const EditRecord> edits) {
  std::string text(original);
  for (const auto& edit : edits) text = ApplyEdit(text, edit);
  return text;
}

AttackMode ParseAttackMode(std::string_view name) {
  if (name == "char1") return AttackMode::kChar1;
  if (name == "char2") return AttackMode::kChar2;
  if (name == "word") return AttackMode::kWord;
  throw UsageError("unknown attack mode '" + std::string(name) + "'");
}

std::string_view AttackModeName(AttackMode mode) {
  switch (mode) {
    case AttackMode::kChar1: return "char1";
    case AttackMode::kChar2: return "char2";
    case AttackMode::kWord: return "word";
  }
  return "unknown";
}

std::vector<AttackManifestEntry> AttackQuerySet(
    std::span<const QueryRecord> queries, const AttackSpec& spec,
    std::size_t threads) {
  std::unordered_set<std::string_view> ids;
  for (const auto& q : queries) {
    if (!ids.insert(q.id).second) {
      throw DataError("duplicate query id " + q.id);
    }
  }
  for (const auto& word : spec.vocabulary) {
    if (word.empty() || WordSplit(word).size() != 1 ||
        WordSplit(word)[0].text != word) {
      throw UsageError("vocabulary entry '" + word +
                       "' must be one word without whitespace");
    }
  }
  std::vector<AttackManifestEntry> entries(queries.size());
  ParallelFor(queries.size(), threads, [&](std::size_t i) {
    const QueryRecord& query = queries[i];
    AttackManifestEntry& entry = entries[i];
    entry.query_id = query.id;
    entry.original = query.text;
    entry.seed = DeriveQuerySeed(spec.seed, query.id);
    AttackRng rng(entry.seed);
    try {
      AttackResult result;
      switch (spec.mode) {
        case AttackMode::kChar1: result = NCharAttack(query.text, 1, rng); break;
        case AttackMode::kChar2: result = NCharAttack(query.text, 2, rng); break;
        case AttackMode::kWord:
          result = WordAttack(query.text, spec.vocabulary, rng);
          break;
      }
      entry.attacked = std::move(result.text);
      entry.edits = std::move(result.edits);
    } catch (const UnattackableError&) {
      entry.attacked = query.text;
      entry.edits.clear();
      entry.skipped = true;
    }
  });
  return entries;
}

}  // namespace rankrobust
