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

#include "forgetlens/selection.h"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>

#include "forgetlens/error.h"

namespace forgetlens {

namespace {

// Unbiased draw from [0, n) via rejection sampling on the raw 64-bit
// generator output. mt19937_64 is bit-specified by the standard, so
// manifests are stable across platforms and releases (the library
// distributions are not, which is why this does not use them).
std::uint64_t bounded_rand(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;  // (2^64 - n) mod n
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) return r % n;
  }
}

// Seeded Fisher-Yates permutation of 0..n-1.
std::vector<std::uint64_t> random_permutation(std::uint64_t n,
                                              std::uint64_t seed) {
  std::vector<std::uint64_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::uint64_t{0});
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i + 1 < n; ++i) {
    const std::uint64_t j = i + bounded_rand(rng, n - i);
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

// Pull-based pair reader so coverage passes run identically over
// in-memory corpora and over files (streaming, single pass).
class PairSource {
 public:
  virtual ~PairSource() = default;
  // Fills src/trg with the next pair's tokens; false at end of input.
  virtual bool next(std::vector<std::string>& src,
                    std::vector<std::string>& trg) = 0;
};

class MemoryPairSource : public PairSource {
 public:
  explicit MemoryPairSource(const ParallelCorpus& corpus) : corpus_(corpus) {}

  bool next(std::vector<std::string>& src,
            std::vector<std::string>& trg) override {
    if (pos_ >= corpus_.size()) return false;
    src = corpus_.source.segments[pos_].tokens;
    trg = corpus_.target.segments[pos_].tokens;
    ++pos_;
    return true;
  }

 private:
  const ParallelCorpus& corpus_;
  std::size_t pos_ = 0;
};

class FilePairSource : public PairSource {
 public:
  FilePairSource(const std::string& src_path, const std::string& trg_path)
      : src_path_(src_path),
        trg_path_(trg_path),
        src_in_(src_path, std::ios::binary),
        trg_in_(trg_path, std::ios::binary) {
    if (!src_in_) throw InputError("cannot open " + src_path);
    if (!trg_in_) throw InputError("cannot open " + trg_path);
  }

  bool next(std::vector<std::string>& src,
            std::vector<std::string>& trg) override {
    std::string src_line, trg_line;
    const bool got_src = static_cast<bool>(std::getline(src_in_, src_line));
    const bool got_trg = static_cast<bool>(std::getline(trg_in_, trg_line));
    if (got_src != got_trg) {
      throw ConstraintError("parallel files differ in length: " + src_path_ +
                            " vs " + trg_path_);
    }
    if (!got_src) return false;
    ++lineno_;
    src = tokenize(src_line, src_path_);
    trg = tokenize(trg_line, trg_path_);
    return true;
  }

 private:
  std::vector<std::string> tokenize(std::string& line,
                                    const std::string& path) const {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!detail::valid_utf8(line)) {
      throw InputError(path + ":" + std::to_string(lineno_) +
                       ": invalid UTF-8");
    }
    return detail::split_tokens(line);
  }

  std::size_t lineno_ = 0;
  std::string src_path_;
  std::string trg_path_;
  std::ifstream src_in_;
  std::ifstream trg_in_;
};

void finalize(SelectionManifest& m) {
  m.selected_line_count = m.selected_indices.size();
}

// The greedy coverage pass shared by minimal_mixin and its streaming
// variant. Select a pair iff its chosen side contains a token type not
// yet covered; selected pairs extend the covered set.
SelectionManifest minimal_pass(std::unordered_set<std::string> covered,
                               PairSource& source, bool source_side) {
  SelectionManifest manifest;
  manifest.strategy = source_side ? "minimal_source" : "minimal";

  std::uint64_t generic_types_total = 0;
  std::uint64_t generic_types_covered_before = 0;

  std::vector<std::string> src, trg;
  std::uint64_t index = 0;
  std::unordered_set<std::string> generic_types_seen;
  while (source.next(src, trg)) {
    const std::vector<std::string>& side = source_side ? src : trg;
    bool adds_new = false;
    for (const std::string& tok : side) {
      if (generic_types_seen.insert(tok).second) {
        ++generic_types_total;
        if (covered.count(tok) > 0) ++generic_types_covered_before;
      }
      if (!adds_new && covered.count(tok) == 0) adds_new = true;
    }
    if (adds_new) {
      manifest.selected_indices.push_back(index);
      manifest.selected_token_count += src.size() + trg.size();
      for (const std::string& tok : side) covered.insert(tok);
    }
    ++index;
  }

  if (generic_types_total > 0) {
    manifest.coverage_before =
        static_cast<double>(generic_types_covered_before) /
        static_cast<double>(generic_types_total);
    manifest.coverage_after = 1.0;  // every generic type is covered by the pass
  }
  finalize(manifest);
  return manifest;
}

}  // namespace

SelectionManifest minimal_mixin(const Corpus& adaptation_targets,
                                const ParallelCorpus& generic,
                                bool source_side) {
  MemoryPairSource source(generic);
  return minimal_pass(token_types(adaptation_targets), source, source_side);
}

SelectionManifest minimal_mixin_files(const Corpus& adaptation_targets,
                                      const std::string& generic_source_path,
                                      const std::string& generic_target_path,
                                      bool source_side) {
  FilePairSource source(generic_source_path, generic_target_path);
  return minimal_pass(token_types(adaptation_targets), source, source_side);
}

SelectionManifest minimal_test_mixin(const Corpus& test_targets,
                                     const Corpus& adaptation_targets,
                                     const ParallelCorpus& generic) {
  SelectionManifest manifest;
  manifest.strategy = "minimal_test";

  const std::unordered_set<std::string> test_types = token_types(test_targets);
  const std::unordered_set<std::string> adaptation_types =
      token_types(adaptation_targets);

  // Only test-set types count as "new".
  std::unordered_set<std::string> needed;
  for (const std::string& tok : test_types) {
    if (adaptation_types.count(tok) == 0) needed.insert(tok);
  }

  if (!test_types.empty()) {
    manifest.coverage_before =
        static_cast<double>(test_types.size() - needed.size()) /
        static_cast<double>(test_types.size());
  }

  for (std::size_t i = 0; i < generic.size() && !needed.empty(); ++i) {
    const Segment& trg = generic.target.segments[i];
    bool adds_new = false;
    for (const std::string& tok : trg.tokens) {
      if (needed.count(tok) > 0) {
        adds_new = true;
        break;
      }
    }
    if (!adds_new) continue;
    manifest.selected_indices.push_back(i);
    manifest.selected_token_count +=
        generic.source.segments[i].size() + trg.size();
    for (const std::string& tok : trg.tokens) needed.erase(tok);
  }

  manifest.residual_uncovered.assign(needed.begin(), needed.end());
  std::sort(manifest.residual_uncovered.begin(),
            manifest.residual_uncovered.end());
  if (!test_types.empty()) {
    manifest.coverage_after =
        static_cast<double>(test_types.size() - needed.size()) /
        static_cast<double>(test_types.size());
  }
  finalize(manifest);
  return manifest;
}

SelectionManifest random_sample_lines(std::uint64_t corpus_size,
                                      std::uint64_t n, std::uint64_t seed) {
  if (n > corpus_size) {
    throw ConstraintError("cannot sample " + std::to_string(n) +
                          " lines from a corpus of " +
                          std::to_string(corpus_size) +
                          " without replacement");
  }
  SelectionManifest manifest;
  manifest.strategy = "random";
  manifest.seed = seed;

  // Partial Fisher-Yates: after i swaps the prefix holds an unbiased
  // sample of size i.
  std::vector<std::uint64_t> indices(corpus_size);
  std::iota(indices.begin(), indices.end(), std::uint64_t{0});
  std::mt19937_64 rng(seed);
  for (std::uint64_t i = 0; i < n; ++i) {
    const std::uint64_t j = i + bounded_rand(rng, corpus_size - i);
    std::swap(indices[i], indices[j]);
  }
  manifest.selected_indices.assign(indices.begin(), indices.begin() + n);
  std::sort(manifest.selected_indices.begin(), manifest.selected_indices.end());
  finalize(manifest);
  return manifest;
}

namespace {

// Walk `order`, accumulating pair token counts; the pair that reaches
// or crosses the budget is accepted, then the walk stops.
std::vector<std::uint64_t> take_until_budget(
    const ParallelCorpus& parallel, const std::vector<std::uint64_t>& order,
    std::uint64_t budget) {
  std::vector<std::uint64_t> selected;
  std::uint64_t used = 0;
  for (std::uint64_t idx : order) {
    if (used >= budget) break;
    selected.push_back(idx);
    used += parallel.source.segments[idx].size() +
            parallel.target.segments[idx].size();
  }
  return selected;
}

std::uint64_t pair_tokens(const ParallelCorpus& parallel, std::uint64_t idx) {
  return parallel.source.segments[idx].size() +
         parallel.target.segments[idx].size();
}

}  // namespace

SelectionManifest subsample_to_token_budget(const ParallelCorpus& parallel,
                                            std::uint64_t budget,
                                            std::uint64_t seed) {
  SelectionManifest manifest;
  manifest.strategy = "token_budget";
  manifest.seed = seed;
  const std::vector<std::uint64_t> order =
      random_permutation(parallel.size(), seed);
  manifest.selected_indices = take_until_budget(parallel, order, budget);
  std::sort(manifest.selected_indices.begin(), manifest.selected_indices.end());
  for (std::uint64_t idx : manifest.selected_indices) {
    manifest.selected_token_count += pair_tokens(parallel, idx);
  }
  finalize(manifest);
  return manifest;
}

SelectionManifest shortest_subsample(const ParallelCorpus& parallel,
                                     std::uint64_t budget) {
  SelectionManifest manifest;
  manifest.strategy = "shortest";
  std::vector<std::uint64_t> order(parallel.size());
  std::iota(order.begin(), order.end(), std::uint64_t{0});
  // Ascending pair length; stable, so ties keep original index order.
  std::stable_sort(order.begin(), order.end(),
                   [&](std::uint64_t a, std::uint64_t b) {
                     return pair_tokens(parallel, a) < pair_tokens(parallel, b);
                   });
  manifest.selected_indices = take_until_budget(parallel, order, budget);
  std::sort(manifest.selected_indices.begin(), manifest.selected_indices.end());
  for (std::uint64_t idx : manifest.selected_indices) {
    manifest.selected_token_count += pair_tokens(parallel, idx);
  }
  finalize(manifest);
  return manifest;
}

SelectionManifest score_filter(const ParallelCorpus& parallel,
                               const ScoreFile& scores, double threshold) {
  if (scores.size() != parallel.size()) {
    throw ConstraintError("score count " + std::to_string(scores.size()) +
                          " does not match pair count " +
                          std::to_string(parallel.size()));
  }
  SelectionManifest manifest;
  manifest.strategy = "score_filter";
  for (std::size_t i = 0; i < parallel.size(); ++i) {
    if (scores.values[i] >= threshold) {
      manifest.selected_indices.push_back(i);
      manifest.selected_token_count += pair_tokens(parallel, i);
    }
  }
  finalize(manifest);
  return manifest;
}

ParallelCorpus materialize(const SelectionManifest& manifest,
                           const ParallelCorpus& generic,
                           const ParallelCorpus& adaptation) {
  Corpus src;
  Corpus trg;
  src.origin = "materialized:" + manifest.strategy;
  trg.origin = src.origin;
  src.segments.reserve(adaptation.size() + manifest.selected_indices.size());
  trg.segments.reserve(src.segments.capacity());
  for (std::size_t i = 0; i < adaptation.size(); ++i) {
    src.segments.push_back(adaptation.source.segments[i]);
    trg.segments.push_back(adaptation.target.segments[i]);
  }
  for (std::uint64_t idx : manifest.selected_indices) {
    if (idx >= generic.size()) {
      throw ConstraintError("manifest index " + std::to_string(idx) +
                            " out of bounds for generic corpus of " +
                            std::to_string(generic.size()) + " pairs");
    }
    src.segments.push_back(generic.source.segments[idx]);
    trg.segments.push_back(generic.target.segments[idx]);
  }
  for (std::size_t i = 0; i < src.segments.size(); ++i) {
    src.segments[i].index = i;
    trg.segments[i].index = i;
  }
  return ParallelCorpus(std::move(src), std::move(trg));
}

void fill_token_count(SelectionManifest& manifest,
                      const ParallelCorpus& generic) {
  manifest.selected_token_count = 0;
  for (std::uint64_t idx : manifest.selected_indices) {
    if (idx >= generic.size()) {
      throw ConstraintError("manifest index " + std::to_string(idx) +
                            " out of bounds for generic corpus of " +
                            std::to_string(generic.size()) + " pairs");
    }
    manifest.selected_token_count += pair_tokens(generic, idx);
  }
}

}  // namespace forgetlens
