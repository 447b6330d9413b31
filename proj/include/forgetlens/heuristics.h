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
#include <unordered_set>
#include <vector>

#include "forgetlens/corpus.h"

namespace forgetlens {

// Corpus-level domain heuristics for one parallel dataset measured
// against a generic vocabulary.
struct HeuristicProfile {
  double src_coverage = 0.0;  // in [0,1]
  double trg_coverage = 0.0;
  double src_jsd = 0.0;  // base-2 JSD, in [0,1]
  double trg_jsd = 0.0;
  double mean_tokens_per_pair = 0.0;  // (src+trg tokens) / pairs
  std::optional<double> mean_norm_nll;
  std::uint64_t line_count = 0;
  std::uint64_t token_count = 0;  // src+trg tokens
};

// Fraction of reference_vocab token types appearing at least once in
// the corpus. Counts types, not occurrences. Empty reference vocab is
// an error.
double vocabulary_coverage(
    const std::unordered_set<std::string>& reference_vocab,
    const Corpus& corpus);

// Base-2 Jensen-Shannon divergence with fixed 1/2-1/2 mixture weights
// (independent of corpus sizes). Supports may differ; 0*log 0 = 0.
// Result in [0,1]. Inputs must be valid distributions (non-negative,
// sum 1 within 1e-9).
double jensen_shannon_divergence(const Distribution& p,
                                 const Distribution& q);

// Mean over segments of nll_i / length_i. Lengths must be positive and
// match the score count.
double mean_normalized_nll(const ScoreFile& nll,
                           const std::vector<std::uint64_t>& lengths);

// Assembles the full profile. NLL scores, when given, are normalized
// by target-side token counts. Vocab sets must be non-empty and the
// domain must have at least one pair.
HeuristicProfile profile(const ParallelCorpus& domain,
                         const std::unordered_set<std::string>& generic_src_vocab,
                         const std::unordered_set<std::string>& generic_trg_vocab,
                         const Distribution& generic_src_dist,
                         const Distribution& generic_trg_dist,
                         const ScoreFile* nll = nullptr);

namespace serial {
double vocabulary_coverage(
    const std::unordered_set<std::string>& reference_vocab,
    const Corpus& corpus);
}  // namespace serial

}  // namespace forgetlens
