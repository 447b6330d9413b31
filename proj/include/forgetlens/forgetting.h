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
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "forgetlens/corpus.h"

namespace forgetlens {

// Per-segment triple: reference translation, original-model hypothesis,
// adapted-model hypothesis. All three corpora must have equal segment
// counts (ConstraintError otherwise); segment i of each translates the
// same source sentence.
struct EvalTripleSet {
  Corpus references;
  Corpus original;
  Corpus adapted;

  EvalTripleSet(Corpus refs, Corpus orig, Corpus adapt);

  std::size_t size() const { return references.size(); }
};

// Aggregated counts for one token: how many reference-capped
// occurrences the original model produced but the adapted model lost,
// and the token's total reference occurrences. 0 <= forgotten <=
// ref_occurrences.
struct TokenForgetRecord {
  std::string token;
  std::uint64_t forgotten = 0;
  std::uint64_t ref_occurrences = 0;
};

enum class TokenSet { All, InDomain, OutOfDomain, Explicit };

// Which tokens enter the corpus-level score. InDomain/OutOfDomain are
// defined against the token types of an adaptation target corpus;
// Explicit carries a caller-provided set.
struct TokenSetSpec {
  TokenSet variant = TokenSet::All;
  std::unordered_set<std::string> tokens;  // adaptation types or explicit set

  static TokenSetSpec all() { return {}; }
  static TokenSetSpec in_domain(const Corpus& adaptation_targets);
  static TokenSetSpec out_of_domain(const Corpus& adaptation_targets);
  static TokenSetSpec explicit_set(std::unordered_set<std::string> tokens);

  const char* label() const;
  bool contains(const std::string& token) const;
};

// Corpus-level forgetting report. corpus_score = numerator/denominator
// where the numerator sums forgotten counts and the denominator sums
// reference occurrences of the token set. A zero denominator is an
// error, never a silent 0.
struct ForgetReport {
  std::unordered_map<std::string, TokenForgetRecord> per_token;
  std::string token_set_label;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  double corpus_score = 0.0;
};

// Per-token forgotten counts for a single triple. For each token t in
// ref: max(min(#t_orig, #t_ref) - min(#t_adapt, #t_ref), 0). Tokens
// absent from ref never appear in the result.
std::map<std::string, std::uint64_t> forget_per_segment(
    const Segment& ref, const Segment& orig, const Segment& adapt);

// Aggregates forget_per_segment over all triples, restricted to tokens
// in v. Parallel across segments with per-token integer reductions.
// Raises ConstraintError when no v-token occurs in any reference.
ForgetReport forget_gen_use(const EvalTripleSet& triples,
                            const TokenSetSpec& v);

// Splits universe into tokens that occur at least once in the
// adaptation target corpus and the rest. The two sets partition the
// universe.
std::pair<std::unordered_set<std::string>, std::unordered_set<std::string>>
partition_id_ood(const std::unordered_set<std::string>& universe,
                 const Corpus& adaptation_targets);

enum class BleuSmoothing { kNone, kFloor, kExp };

struct BleuOptions {
  int max_ngram = 4;
  BleuSmoothing smoothing = BleuSmoothing::kExp;
  double floor = 0.1;  // used by kFloor only
};

struct BleuResult {
  double score = 0.0;  // in [0, 100]
  std::vector<double> precisions;  // percent, one per order
  double brevity_penalty = 1.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
};

// Corpus BLEU over pre-tokenized segments, no retokenization: geometric
// mean of clipped modified n-gram precisions times the brevity penalty
// exp(min(0, 1 - ref_len/hyp_len)). Orders with no hypothesis n-grams
// at all are excluded from the mean, so identical corpora score 100
// whatever the segment lengths. kExp doubles a running denominator
// scale for each zero-match order (the mteval scheme); kNone yields 0
// when any order has no matches. Result in [0, 100].
double corpus_bleu(const Corpus& hypotheses, const Corpus& references,
                   const BleuOptions& options = {});

BleuResult corpus_bleu_detailed(const Corpus& hypotheses,
                                const Corpus& references,
                                const BleuOptions& options = {});

// baseline - adapted: positive means the adapted system lost quality.
inline double forgetting_delta(double baseline_score, double adapted_score) {
  return baseline_score - adapted_score;
}

namespace serial {
ForgetReport forget_gen_use(const EvalTripleSet& triples,
                            const TokenSetSpec& v);
double corpus_bleu(const Corpus& hypotheses, const Corpus& references,
                   const BleuOptions& options = {});
}  // namespace serial

}  // namespace forgetlens
