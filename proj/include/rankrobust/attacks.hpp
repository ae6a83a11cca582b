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

// Seeded query perturbations.
//
// Character edits touch only internal characters of a whitespace-delimited
// word, so the first and last characters always survive:
//   add         insert a random a-z letter at an internal boundary (len >= 2)
//   remove      delete one internal character                     (len >= 3)
//   substitute  replace one internal character with a different
//               random a-z letter                                 (len >= 3)
//   swap        exchange two adjacent, unequal internal characters (len >= 4)
// Word edits insert a vocabulary word at a random boundary, remove a word
// (queries never drop below one word) or substitute a word with a different
// vocabulary word. Word edits re-join the query with single spaces; char
// edits keep the original spacing.
//
// Every random choice comes from AttackRng, so a (query, seed) pair yields
// the same bytes on every platform.

#ifndef RANKROBUST_ATTACKS_HPP_
#define RANKROBUST_ATTACKS_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankrobust/types.hpp"

namespace rankrobust {

enum class EditKind {
  kCharAdd,
  kCharRemove,
  kCharSubstitute,
  kCharSwap,
  kWordAdd,
  kWordRemove,
  kWordSubstitute,
};

std::string_view EditKindName(EditKind kind);
// Throws DataError on an unknown name.
EditKind ParseEditKind(std::string_view name);
bool IsCharEdit(EditKind kind);

struct EditRecord {
  EditKind kind = EditKind::kCharAdd;
  std::size_t word_index = 0;
  // Character position within the word; for swaps, the left of the pair.
  std::optional<std::size_t> char_index;
  std::optional<std::string> inserted;
  std::optional<std::string> removed;

  bool operator==(const EditRecord&) const = default;
};

struct AttackResult {
  std::string text;
  std::vector<EditRecord> edits;
};

// std::mt19937_64 has a fully specified output sequence; bounded draws are
// done here by rejection instead of through std distributions, whose
// results vary between standard libraries.
class AttackRng {
 public:
  explicit AttackRng(std::uint64_t seed) : engine_(seed) {}

  // Uniform integer in [0, n). Requires n > 0.
  std::size_t Uniform(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

// splitmix64(master ^ splitmix64(fnv1a64(query_id))).
std::uint64_t DeriveQuerySeed(std::uint64_t master_seed,
                              std::string_view query_id);

// One character edit. `forced_kind` pins the kind (tests, ablations); it
// must be a char kind with an eligible word. Throws UnattackableError when
// no word is eligible for any kind.
AttackResult CharAttack(std::string_view text, AttackRng& rng,
                        std::optional<EditKind> forced_kind = std::nullopt);

// n stacked character edits, each applied to the previous output.
AttackResult NCharAttack(std::string_view text, std::size_t n, AttackRng& rng);

// One word edit with words drawn from `vocabulary`.
AttackResult WordAttack(std::string_view text,
                        std::span<const std::string> vocabulary,
                        AttackRng& rng,
                        std::optional<EditKind> forced_kind = std::nullopt);

// Re-applies a recorded edit. Throws DataError if the edit does not fit the
// text (index out of range, removed content mismatch).
std::string ApplyEdit(std::string_view text, const EditRecord& edit);
std::string ReplayEdits(std::string_view original,
                        std::span<const EditRecord> edits);

enum class AttackMode { kChar1, kChar2, kWord };

// "char1" / "char2" / "word". Throws UsageError otherwise.
AttackMode ParseAttackMode(std::string_view name);
std::string_view AttackModeName(AttackMode mode);

struct AttackSpec {
  AttackMode mode = AttackMode::kChar1;
  std::uint64_t seed = 42;
  std::vector<std::string> vocabulary;  // word mode only
};

struct AttackManifestEntry {
  std::string query_id;
  std::string original;
  std::string attacked;
  std::vector<EditRecord> edits;
  std::uint64_t seed = 0;  // per-query stream seed
  // Unattackable query passed through unchanged; `edits` is empty.
  bool skipped = false;

  bool operator==(const AttackManifestEntry&) const = default;
};

// One entry per query, in input order. Each query draws from its own stream
// seeded by DeriveQuerySeed, so output does not depend on order or threads.
// Throws DataError on duplicate query ids.
std::vector<AttackManifestEntry> AttackQuerySet(
    std::span<const QueryRecord> queries, const AttackSpec& spec,
    std::size_t threads = 1);

}  // namespace rankrobust

#endif  // RANKROBUST_ATTACKS_HPP_
