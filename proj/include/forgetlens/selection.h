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
#include <optional>
#include <string>
#include <vector>

#include "forgetlens/corpus.h"

namespace forgetlens {

// Result of a data-selection strategy: which generic-corpus lines to
// mix in. Indices are strictly increasing and within bounds of the
// generic corpus. Random strategies record the seed; coverage-driven
// strategies record coverage statistics.
struct SelectionManifest {
  std::vector<std::uint64_t> selected_indices;
  std::string strategy;
  std::optional<std::uint64_t> seed;
  std::optional<double> coverage_before;
  std::optional<double> coverage_after;
  std::uint64_t selected_line_count = 0;
  std::uint64_t selected_token_count = 0;  // src+trg tokens of selected pairs
  // minimal_test only: target token types never seen in the generic corpus.
  std::vector<std::string> residual_uncovered;
};

// Single deterministic pass over the generic pairs in file order:
// select pair i iff its target side contains at least one token type
// not yet covered, where "covered" starts as the token types of the
// adaptation targets and absorbs the target types of every selected
// pair. After the pass every generic target token type is covered.
// coverage_before/after are measured against the generic corpus's own
// target token types. source_side=true runs the same pass over source
// tokens instead.
SelectionManifest minimal_mixin(const Corpus& adaptation_targets,
                                const ParallelCorpus& generic,
                                bool source_side = false);

// Streaming variant reading the generic pair files line by line in
// lockstep, single pass; for corpora that should not be materialized.
SelectionManifest minimal_mixin_files(const Corpus& adaptation_targets,
                                      const std::string& generic_source_path,
                                      const std::string& generic_target_path,
                                      bool source_side = false);

// Like minimal_mixin, but only token types of the test targets count
// as "new", and the pass stops as soon as every test type that occurs
// anywhere in the generic targets is covered. Test types absent from
// the generic corpus are reported in residual_uncovered.
SelectionManifest minimal_test_mixin(const Corpus& test_targets,
                                     const Corpus& adaptation_targets,
                                     const ParallelCorpus& generic);

// Uniform sample of n line indices without replacement, emitted
// sorted. Bit-deterministic for a given (seed, corpus_size, n): a
// partial Fisher-Yates shuffle driven by std::mt19937_64 with unbiased
// rejection sampling for the bounded draws. n > corpus_size is an
// error.
SelectionManifest random_sample_lines(std::uint64_t corpus_size,
                                      std::uint64_t n, std::uint64_t seed);

// Visits pairs in a seeded uniform random permutation, accumulating
// source+target token counts; the pair that reaches or crosses the
// budget is accepted, then the pass stops. Deterministic per seed.
SelectionManifest subsample_to_token_budget(const ParallelCorpus& parallel,
                                            std::uint64_t budget,
                                            std::uint64_t seed);

// Stable-sorts pairs by ascending source+target token count (ties by
// original index) and takes a prefix under the same accept-crossing
// budget rule. Indices are re-sorted ascending.
SelectionManifest shortest_subsample(const ParallelCorpus& parallel,
                                     std::uint64_t budget);

// Keeps pairs whose score is >= threshold, order preserved. Score
// count must equal the pair count.
SelectionManifest score_filter(const ParallelCorpus& parallel,
                               const ScoreFile& scores, double threshold);

// Adaptation pairs followed by the selected generic pairs in manifest
// order. Manifest indices must be within bounds.
ParallelCorpus materialize(const SelectionManifest& manifest,
                           const ParallelCorpus& generic,
                           const ParallelCorpus& adaptation);

// Fills selected_token_count (src+trg tokens of the selected pairs)
// for manifests produced without corpus access.
void fill_token_count(SelectionManifest& manifest,
                      const ParallelCorpus& generic);

}  // namespace forgetlens
