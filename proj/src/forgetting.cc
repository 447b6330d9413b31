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

#include "forgetlens/forgetting.h"

#include <algorithm>
#include <cmath>
#include <string_view>

#include "forgetlens/error.h"
#include "forgetlens/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forgetlens {

namespace {

using CountMap = std::unordered_map<std::string_view, std::uint64_t>;

CountMap token_counts(const Segment& seg) {
  CountMap counts;
  counts.reserve(seg.tokens.size());
  for (const std::string& tok : seg.tokens) ++counts[tok];
  return counts;
}

std::uint64_t lookup(const CountMap& counts, std::string_view tok) {
  auto it = counts.find(tok);
  return it == counts.end() ? 0 : it->second;
}

struct TokenTally {
  std::uint64_t forgotten = 0;
  std::uint64_t ref_occurrences = 0;
};

using TallyMap = std::unordered_map<std::string, TokenTally>;

// Shared per-segment step: for each distinct reference token in v,
// accumulate the capped forgotten count and the raw reference count.
void tally_segment(const Segment& ref, const Segment& orig,
                   const Segment& adapt, const TokenSetSpec& v,
                   TallyMap& tally, std::string& key_scratch) {
  const CountMap ref_counts = token_counts(ref);
  const CountMap orig_counts = token_counts(orig);
  const CountMap adapt_counts = token_counts(adapt);
  for (const auto& [tok, ref_n] : ref_counts) {
    key_scratch.assign(tok);
    if (!v.contains(key_scratch)) continue;
    const std::uint64_t o = std::min(lookup(orig_counts, tok), ref_n);
    const std::uint64_t a = std::min(lookup(adapt_counts, tok), ref_n);
    TokenTally& t = tally[key_scratch];
    if (o > a) t.forgotten += o - a;
    t.ref_occurrences += ref_n;
  }
}

ForgetReport assemble_report(TallyMap tally, const TokenSetSpec& v) {
  ForgetReport report;
  report.token_set_label = v.label();
  for (auto& [token, t] : tally) {
    report.numerator += t.forgotten;
    report.denominator += t.ref_occurrences;
    report.per_token.emplace(
        token, TokenForgetRecord{token, t.forgotten, t.ref_occurrences});
  }
  if (report.denominator == 0) {
    throw ConstraintError(
        "no token of set '" + report.token_set_label +
        "' occurs in any reference: corpus score is undefined");
  }
  report.corpus_score = static_cast<double>(report.numerator) /
                        static_cast<double>(report.denominator);
  return report;
}

}  // namespace

EvalTripleSet::EvalTripleSet(Corpus refs, Corpus orig, Corpus adapt)
    : references(std::move(refs)),
      original(std::move(orig)),
      adapted(std::move(adapt)) {
  if (references.size() != original.size() ||
      references.size() != adapted.size()) {
    throw ConstraintError(
        "evaluation triple sides differ in length: refs=" +
        std::to_string(references.size()) +
        " original=" + std::to_string(original.size()) +
        " adapted=" + std::to_string(adapted.size()));
  }
}

TokenSetSpec TokenSetSpec::in_domain(const Corpus& adaptation_targets) {
  TokenSetSpec spec;
  spec.variant = TokenSet::InDomain;
  spec.tokens = token_types(adaptation_targets);
  return spec;
}

TokenSetSpec TokenSetSpec::out_of_domain(const Corpus& adaptation_targets) {
  TokenSetSpec spec;
  spec.variant = TokenSet::OutOfDomain;
  spec.tokens = token_types(adaptation_targets);
  return spec;
}

TokenSetSpec TokenSetSpec::explicit_set(
    std::unordered_set<std::string> tokens) {
  TokenSetSpec spec;
  spec.variant = TokenSet::Explicit;
  spec.tokens = std::move(tokens);
  return spec;
}

const char* TokenSetSpec::label() const {
  switch (variant) {
    case TokenSet::All:
      return "All";
    case TokenSet::InDomain:
      return "InDomain";
    case TokenSet::OutOfDomain:
      return "OutOfDomain";
    case TokenSet::Explicit:
      return "Explicit";
  }
  return "All";
}

bool TokenSetSpec::contains(const std::string& token) const {
  switch (variant) {
    case TokenSet::All:
      return true;
    case TokenSet::InDomain:
    case TokenSet::Explicit:
      return tokens.count(token) > 0;
    case TokenSet::OutOfDomain:
      return tokens.count(token) == 0;
  }
  return true;
}

std::map<std::string, std::uint64_t> forget_per_segment(const Segment& ref,
                                                        const Segment& orig,
                                                        const Segment& adapt) {
  const CountMap ref_counts = token_counts(ref);
  const CountMap orig_counts = token_counts(orig);
  const CountMap adapt_counts = token_counts(adapt);
  std::map<std::string, std::uint64_t> result;
  for (const auto& [tok, ref_n] : ref_counts) {
    const std::uint64_t o = std::min(lookup(orig_counts, tok), ref_n);
    const std::uint64_t a = std::min(lookup(adapt_counts, tok), ref_n);
    result[std::string(tok)] = o > a ? o - a : 0;
  }
  return result;
}

ForgetReport forget_gen_use(const EvalTripleSet& triples,
                            const TokenSetSpec& v) {
  const int nt = parallel::max_threads();
  const std::int64_t n = static_cast<std::int64_t>(triples.size());
  std::vector<TallyMap> partial(nt);

#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
  {
    TallyMap& local = partial[omp_get_thread_num()];
    std::string scratch;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      tally_segment(triples.references.segments[i],
                    triples.original.segments[i], triples.adapted.segments[i],
                    v, local, scratch);
    }
  }
#else
  {
    std::string scratch;
    for (std::int64_t i = 0; i < n; ++i) {
      tally_segment(triples.references.segments[i],
                    triples.original.segments[i], triples.adapted.segments[i],
                    v, partial[0], scratch);
    }
  }
#endif

  TallyMap merged = std::move(partial[0]);
  for (int t = 1; t < nt; ++t) {
    for (auto& [token, tally] : partial[t]) {
      TokenTally& m = merged[token];
      m.forgotten += tally.forgotten;
      m.ref_occurrences += tally.ref_occurrences;
    }
  }
  return assemble_report(std::move(merged), v);
}

std::pair<std::unordered_set<std::string>, std::unordered_set<std::string>>
partition_id_ood(const std::unordered_set<std::string>& universe,
                 const Corpus& adaptation_targets) {
  const std::unordered_set<std::string> adaptation_types =
      token_types(adaptation_targets);
  std::unordered_set<std::string> in_domain;
  std::unordered_set<std::string> out_of_domain;
  for (const std::string& tok : universe) {
    if (adaptation_types.count(tok) > 0) {
      in_domain.insert(tok);
    } else {
      out_of_domain.insert(tok);
    }
  }
  return {std::move(in_domain), std::move(out_of_domain)};
}

namespace {

struct BleuTally {
  std::vector<std::uint64_t> matches;  // clipped n-gram matches per order
  std::vector<std::uint64_t> totals;   // hypothesis n-grams per order
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;

  explicit BleuTally(int orders) : matches(orders, 0), totals(orders, 0) {}
};

// n-grams as joined views into the segment's token storage; \x1f never
// occurs in tokens (they are whitespace-split), so joins are unambiguous.
std::string ngram_key(const Segment& seg, std::size_t start, int n) {
  std::string key;
  for (int k = 0; k < n; ++k) {
    if (k > 0) key.push_back('\x1f');
    key += seg.tokens[start + k];
  }
  return key;
}

void tally_bleu_segment(const Segment& hyp, const Segment& ref, int max_ngram,
                        BleuTally& tally) {
  tally.hyp_len += hyp.size();
  tally.ref_len += ref.size();
  for (int n = 1; n <= max_ngram; ++n) {
    const std::size_t hn = hyp.size() + 1 > static_cast<std::size_t>(n)
                               ? hyp.size() - n + 1
                               : 0;
    const std::size_t rn = ref.size() + 1 > static_cast<std::size_t>(n)
                               ? ref.size() - n + 1
                               : 0;
    tally.totals[n - 1] += hn;
    if (hn == 0) continue;
    std::unordered_map<std::string, std::uint64_t> ref_ngrams;
    for (std::size_t i = 0; i < rn; ++i) ++ref_ngrams[ngram_key(ref, i, n)];
    std::unordered_map<std::string, std::uint64_t> hyp_ngrams;
    for (std::size_t i = 0; i < hn; ++i) ++hyp_ngrams[ngram_key(hyp, i, n)];
    for (const auto& [gram, count] : hyp_ngrams) {
      auto it = ref_ngrams.find(gram);
      if (it != ref_ngrams.end()) {
        tally.matches[n - 1] += std::min(count, it->second);
      }
    }
  }
}

BleuResult bleu_from_tally(const BleuTally& tally, const BleuOptions& options) {
  const int max_ngram = options.max_ngram;
  BleuResult result;
  result.hyp_len = tally.hyp_len;
  result.ref_len = tally.ref_len;
  result.precisions.assign(max_ngram, 0.0);

  if (tally.ref_len == 0) {
    throw ConstraintError("BLEU needs at least one non-empty reference");
  }
  if (tally.hyp_len == 0) {
    throw ConstraintError("BLEU is undefined for all-empty hypotheses");
  }

  // Orders for which the hypothesis corpus has no n-grams at all drop
  // out of the geometric mean; identity corpora score 100 regardless
  // of segment lengths.
  int effective_order = 0;
  double smooth_scale = 1.0;
  for (int n = 1; n <= max_ngram; ++n) {
    const std::uint64_t total = tally.totals[n - 1];
    const std::uint64_t match = tally.matches[n - 1];
    if (total == 0) break;
    effective_order = n;
    if (match == 0) {
      switch (options.smoothing) {
        case BleuSmoothing::kExp:
          smooth_scale *= 2.0;
          result.precisions[n - 1] =
              100.0 / (smooth_scale * static_cast<double>(total));
          break;
        case BleuSmoothing::kFloor:
          result.precisions[n - 1] =
              100.0 * options.floor / static_cast<double>(total);
          break;
        case BleuSmoothing::kNone:
          break;  // precision stays 0; score collapses to 0 below
      }
    } else {
      result.precisions[n - 1] =
          100.0 * static_cast<double>(match) / static_cast<double>(total);
    }
  }

  result.brevity_penalty =
      tally.hyp_len >= tally.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(tally.ref_len) /
                               static_cast<double>(tally.hyp_len));

  // Geometric mean over precision ratios, so that all-perfect
  // precisions give exactly 100 * bp with no exp/log round-trip error.
  double log_sum = 0.0;
  for (int n = 1; n <= effective_order; ++n) {
    if (result.precisions[n - 1] <= 0.0) {
      result.score = 0.0;
      return result;
    }
    log_sum += std::log(result.precisions[n - 1] / 100.0);
  }
  result.score =
      result.brevity_penalty * 100.0 * std::exp(log_sum / effective_order);
  return result;
}

void validate_bleu_inputs(const Corpus& hypotheses, const Corpus& references,
                          const BleuOptions& options) {
  if (hypotheses.size() != references.size()) {
    throw ConstraintError("BLEU corpora differ in length: " +
                          std::to_string(hypotheses.size()) + " vs " +
                          std::to_string(references.size()));
  }
  if (options.max_ngram < 1 || options.max_ngram > 9) {
    throw ConstraintError("BLEU max n-gram order must be in [1, 9]");
  }
}

}  // namespace

BleuResult corpus_bleu_detailed(const Corpus& hypotheses,
                                const Corpus& references,
                                const BleuOptions& options) {
  validate_bleu_inputs(hypotheses, references, options);
  const int nt = parallel::max_threads();
  const std::int64_t n = static_cast<std::int64_t>(hypotheses.size());
  std::vector<BleuTally> partial(nt, BleuTally(options.max_ngram));

#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
  {
    BleuTally& local = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      tally_bleu_segment(hypotheses.segments[i], references.segments[i],
                         options.max_ngram, local);
    }
  }
#else
  for (std::int64_t i = 0; i < n; ++i) {
    tally_bleu_segment(hypotheses.segments[i], references.segments[i],
                       options.max_ngram, partial[0]);
  }
#endif

  BleuTally merged = std::move(partial[0]);
  for (int t = 1; t < nt; ++t) {
    for (int k = 0; k < options.max_ngram; ++k) {
      merged.matches[k] += partial[t].matches[k];
      merged.totals[k] += partial[t].totals[k];
    }
    merged.hyp_len += partial[t].hyp_len;
    merged.ref_len += partial[t].ref_len;
  }
  return bleu_from_tally(merged, options);
}

double corpus_bleu(const Corpus& hypotheses, const Corpus& references,
                   const BleuOptions& options) {
  return corpus_bleu_detailed(hypotheses, references, options).score;
}

namespace serial {

ForgetReport forget_gen_use(const EvalTripleSet& triples,
                            const TokenSetSpec& v) {
  TallyMap tally;
  std::string scratch;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    tally_segment(triples.references.segments[i], triples.original.segments[i],
                  triples.adapted.segments[i], v, tally, scratch);
  }
  return assemble_report(std::move(tally), v);
}

double corpus_bleu(const Corpus& hypotheses, const Corpus& references,
                   const BleuOptions& options) {
  validate_bleu_inputs(hypotheses, references, options);
  BleuTally tally(options.max_ngram);
  for (std::size_t i = 0; i < hypotheses.size(); ++i) {
    tally_bleu_segment(hypotheses.segments[i], references.segments[i],
                       options.max_ngram, tally);
  }
  return bleu_from_tally(tally, options).score;
}

}  // namespace serial

}  // namespace forgetlens
