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

#include "forgetlens/heuristics.h"

#include <algorithm>
#include <cmath>

#include "forgetlens/error.h"
#include "forgetlens/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forgetlens {

namespace {

void validate_distribution(const Distribution& d, const char* name) {
  double sum = 0.0;
  for (const auto& [token, p] : d) {
    if (p < 0.0 || !std::isfinite(p)) {
      throw ConstraintError(std::string(name) +
                            " is not a distribution: bad probability for '" +
                            token + "'");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw ConstraintError(std::string(name) +
                          " is not a distribution: probabilities sum to " +
                          std::to_string(sum));
  }
}

}  // namespace

double vocabulary_coverage(
    const std::unordered_set<std::string>& reference_vocab,
    const Corpus& corpus) {
  if (reference_vocab.empty()) {
    throw ConstraintError("coverage against an empty reference vocabulary");
  }
  const int nt = parallel::max_threads();
  const std::int64_t n = static_cast<std::int64_t>(corpus.segments.size());
  std::vector<std::unordered_set<std::string>> partial(nt);

#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
  {
    std::unordered_set<std::string>& seen = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      for (const std::string& tok : corpus.segments[i].tokens) {
        if (reference_vocab.count(tok) > 0) seen.insert(tok);
      }
    }
  }
#else
  for (std::int64_t i = 0; i < n; ++i) {
    for (const std::string& tok : corpus.segments[i].tokens) {
      if (reference_vocab.count(tok) > 0) partial[0].insert(tok);
    }
  }
#endif

  std::unordered_set<std::string> covered = std::move(partial[0]);
  for (int t = 1; t < nt; ++t) covered.merge(partial[t]);
  return static_cast<double>(covered.size()) /
         static_cast<double>(reference_vocab.size());
}

double jensen_shannon_divergence(const Distribution& p, const Distribution& q) {
  validate_distribution(p, "p");
  validate_distribution(q, "q");

  // Walk the union of supports in sorted order; both maps are ordered,
  // so the accumulation order (and hence the rounding) is fixed.
  double acc = 0.0;
  auto ip = p.begin();
  auto iq = q.begin();
  auto add_term = [&](double pi, double qi) {
    const double m = 0.5 * (pi + qi);
    if (pi > 0.0) acc += 0.5 * pi * std::log2(pi / m);
    if (qi > 0.0) acc += 0.5 * qi * std::log2(qi / m);
  };
  while (ip != p.end() || iq != q.end()) {
    if (iq == q.end() || (ip != p.end() && ip->first < iq->first)) {
      add_term(ip->second, 0.0);
      ++ip;
    } else if (ip == p.end() || iq->first < ip->first) {
      add_term(0.0, iq->second);
      ++iq;
    } else {
      add_term(ip->second, iq->second);
      ++ip;
      ++iq;
    }
  }
  return std::clamp(acc, 0.0, 1.0);
}

double mean_normalized_nll(const ScoreFile& nll,
                           const std::vector<std::uint64_t>& lengths) {
  if (nll.values.size() != lengths.size()) {
    throw ConstraintError("NLL score count " +
                          std::to_string(nll.values.size()) +
                          " does not match segment count " +
                          std::to_string(lengths.size()));
  }
  if (nll.values.empty()) {
    throw ConstraintError("cannot average an empty NLL score file");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] == 0) {
      throw ConstraintError("segment " + std::to_string(i) +
                            " has zero length; normalized NLL is undefined");
    }
    sum += nll.values[i] / static_cast<double>(lengths[i]);
  }
  return sum / static_cast<double>(lengths.size());
}

HeuristicProfile profile(const ParallelCorpus& domain,
                         const std::unordered_set<std::string>& generic_src_vocab,
                         const std::unordered_set<std::string>& generic_trg_vocab,
                         const Distribution& generic_src_dist,
                         const Distribution& generic_trg_dist,
                         const ScoreFile* nll) {
  if (domain.size() == 0) {
    throw ConstraintError("cannot profile an empty domain corpus");
  }
  HeuristicProfile p;
  p.line_count = domain.size();
  p.token_count = domain.source.token_count() + domain.target.token_count();
  p.mean_tokens_per_pair =
      static_cast<double>(p.token_count) / static_cast<double>(p.line_count);
  p.src_coverage = vocabulary_coverage(generic_src_vocab, domain.source);
  p.trg_coverage = vocabulary_coverage(generic_trg_vocab, domain.target);
  p.src_jsd = jensen_shannon_divergence(generic_src_dist,
                                        distribution(count_vocab(domain.source)));
  p.trg_jsd = jensen_shannon_divergence(generic_trg_dist,
                                        distribution(count_vocab(domain.target)));
  if (nll != nullptr) {
    std::vector<std::uint64_t> lengths;
    lengths.reserve(domain.size());
    for (const Segment& seg : domain.target.segments) {
      lengths.push_back(seg.size());
    }
    p.mean_norm_nll = mean_normalized_nll(*nll, lengths);
  }
  return p;
}

namespace serial {

double vocabulary_coverage(
    const std::unordered_set<std::string>& reference_vocab,
    const Corpus& corpus) {
  if (reference_vocab.empty()) {
    throw ConstraintError("coverage against an empty reference vocabulary");
  }
  std::unordered_set<std::string> covered;
  for (const Segment& seg : corpus.segments) {
    for (const std::string& tok : seg.tokens) {
      if (reference_vocab.count(tok) > 0) covered.insert(tok);
    }
  }
  return static_cast<double>(covered.size()) /
         static_cast<double>(reference_vocab.size());
}

}  // namespace serial

}  // namespace forgetlens
