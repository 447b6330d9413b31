// Copyright 2026 The forgetlens Authors.
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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "forgetlens/corpus.h"

namespace forgetlens {

// Word alignment for one segment pair: a set of (source index, target
// index) links, stored sorted and deduplicated. Indices are validated
// against segment lengths at application time, not construction.
struct SegmentAlignment {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> links;

  // Sorts and deduplicates in place.
  void normalize();
  bool contains(std::uint32_t i, std::uint32_t j) const;
};

// Parses a line of whitespace-separated "i-j" pairs. Duplicates
// collapse; malformed pairs raise InputError.
SegmentAlignment parse_pharaoh(std::string_view line);

// One alignment per line, same line count as the corpora it applies to.
std::vector<SegmentAlignment> load_alignments(const std::string& path);

enum class Symmetrization { kIntersection, kUnion, kGrowDiagFinalAnd };

// Combines a forward alignment with a reverse one (reverse links come
// in (j,i) orientation and are flipped first). kGrowDiagFinalAnd starts
// from the intersection, grows into union links adjacent -- including
// diagonals -- to current alignment points while either endpoint is
// unaligned, then adds forward and reverse links whose endpoints are
// both still unaligned.
SegmentAlignment symmetrize(const SegmentAlignment& forward,
                            const SegmentAlignment& reverse,
                            Symmetrization heuristic);

// One observed replacement: occurrences of original_token in the
// original hypotheses whose aligned adapted token differs. unaligned
// records (no link for the occurrence) indicate undertranslation and
// carry an empty replacement_token.
struct ReplacementRecord {
  std::string original_token;
  std::string replacement_token;  // empty when unaligned
  bool unaligned = false;
  std::uint64_t occurrence_count = 0;
  std::uint64_t original_freq_in_adaptation = 0;
  std::uint64_t replacement_freq_in_adaptation = 0;
};

// For every occurrence of a focus token at position i of an original
// segment: each link (i,j) whose adapted token differs yields one
// (token -> adapted_j) record; an occurrence with no link yields one
// unaligned record; identical aligned tokens yield nothing. Records
// aggregate by (original, replacement) pair. Parallel across segments
// with a commutative counter merge. Out-of-bounds link indices raise
// ConstraintError with the segment number.
std::vector<ReplacementRecord> extract_replacements(
    const Corpus& original, const Corpus& adapted,
    const std::vector<SegmentAlignment>& alignments,
    const std::unordered_set<std::string>& focus_tokens);

// Fills in adaptation-set frequencies for both sides of each record
// (0 when absent; unaligned replacements get 0). Never changes
// occurrence counts.
std::vector<ReplacementRecord> annotate_frequencies(
    std::vector<ReplacementRecord> records,
    const Vocabulary& adaptation_targets);

// Keeps, per original token, only the most frequent replacement. Ties
// break by adaptation-set frequency, then lexicographically.
std::vector<ReplacementRecord> top_replacements(
    const std::vector<ReplacementRecord>& records);

namespace serial {
std::vector<ReplacementRecord> extract_replacements(
    const Corpus& original, const Corpus& adapted,
    const std::vector<SegmentAlignment>& alignments,
    const std::unordered_set<std::string>& focus_tokens);
}  // namespace serial

}  // namespace forgetlens
