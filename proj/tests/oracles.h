// Test-only brute-force oracles. These deliberately take the slow,
// obvious route (full count tables, map-of-vector n-grams, direct
// formula transcription) so they stay independent of the library
// implementations they check.

#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "forgetlens/alignment.h"
#include "forgetlens/corpus.h"
#include "forgetlens/forgetting.h"

namespace oracle {

struct BruteForgetResult {
  std::map<std::string, std::uint64_t> forgotten;
  std::map<std::string, std::uint64_t> ref_occurrences;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
};

// Materializes a full token x segment count table for each of the three
// corpora, then evaluates the capped-difference formula token-by-token.
BruteForgetResult brute_forget_gen_use(
    const forgetlens::Corpus& refs, const forgetlens::Corpus& orig,
    const forgetlens::Corpus& adapt,
    const std::set<std::string>& token_set, bool restrict_to_set);

// Corpus BLEU computed with map-of-token-vector n-gram tables and the
// formula applied directly. Smoothing semantics match BleuOptions.
double naive_bleu(const forgetlens::Corpus& hyp, const forgetlens::Corpus& ref,
                  const forgetlens::BleuOptions& options);

// Greedy coverage trace with explicit per-step bookkeeping. Returns the
// selected indices and, per selected line, the types it newly covered.
struct GreedyTrace {
  std::vector<std::uint64_t> selected;
  std::vector<std::set<std::string>> newly_covered;  // parallel to selected
};
GreedyTrace greedy_minimal_trace(const forgetlens::Corpus& adaptation_targets,
                                 const forgetlens::Corpus& generic_targets);

// Tie-corrected normal-approximation p for Kendall's S, two-sided.
// Used as the comparison side of the exact-vs-normal sanity band.
double kendall_normal_p(const std::vector<double>& x,
                        const std::vector<double>& y);

// Random corpus helpers. Tokens come from a vocabulary "t0".."t{v-1}".
forgetlens::Corpus random_corpus(std::mt19937& rng, std::size_t max_segments,
                                 std::size_t max_tokens_per_segment,
                                 std::size_t vocab_size,
                                 bool allow_empty = true);

// Replacement counting by direct quadruple loop over (segment,
// occurrence, link) with a map keyed by printable strings.
std::map<std::string, std::uint64_t> brute_replacement_counts(
    const forgetlens::Corpus& original, const forgetlens::Corpus& adapted,
    const std::vector<forgetlens::SegmentAlignment>& alignments,
    const std::set<std::string>& focus);

}  // namespace oracle
