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
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace forgetlens {

// One tokenized line. Tokens are opaque strings: no subword
// segmentation, no case folding, whatever marker convention the input
// uses is kept as-is. Empty lines are legal and carry zero tokens.
struct Segment {
  std::vector<std::string> tokens;
  std::size_t index = 0;  // zero-based line number within the corpus

  bool empty() const { return tokens.empty(); }
  std::size_t size() const { return tokens.size(); }
};

// Ordered list of segments with contiguous indices 0..n-1.
struct Corpus {
  std::vector<Segment> segments;
  std::string origin;  // file path or label

  std::size_t size() const { return segments.size(); }
  std::uint64_t token_count() const;
};

// Two corpora of equal segment count; segment i of source pairs with
// segment i of target. Unequal counts are a hard error.
struct ParallelCorpus {
  Corpus source;
  Corpus target;

  ParallelCorpus() = default;
  ParallelCorpus(Corpus src, Corpus trg);

  std::size_t size() const { return source.size(); }
};

// token -> count map. Zero-count tokens are never stored; total is the
// sum of all counts.
struct Vocabulary {
  std::unordered_map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::uint64_t count(const std::string& token) const {
    auto it = counts.find(token);
    return it == counts.end() ? 0 : it->second;
  }
  std::unordered_set<std::string> support() const;
};

// One real number per segment, aligned by line number.
struct ScoreFile {
  std::vector<double> values;
  std::string origin;

  std::size_t size() const { return values.size(); }
};

// Token probabilities in sorted key order, so that downstream float
// accumulation is reproducible.
using Distribution = std::map<std::string, double>;

// Reads a UTF-8 text file, one segment per line. Tokens are split on
// runs of ASCII whitespace; a trailing CR is stripped before splitting;
// the trailing newline does not create an extra segment. Invalid UTF-8
// raises InputError with the line number.
Corpus load_corpus(const std::string& path);

// Builds a corpus in memory (tests, small fixtures). Tokens must be
// whitespace-free.
Corpus make_corpus(std::vector<std::vector<std::string>> lines,
                   std::string origin = "<memory>");

// One segment per line, tokens joined by single spaces. Loading the
// result reproduces the corpus exactly.
void write_corpus(const Corpus& corpus, const std::string& path);

ParallelCorpus load_parallel(const std::string& source_path,
                             const std::string& target_path);

// Streaming single-pass read: fn is called once per line with a
// freshly tokenized segment. Use for corpora that should not be
// materialized.
void for_each_segment(const std::string& path,
                      const std::function<void(Segment&&)>& fn);

// Occurrence counts over all segments. Parallel across segments; the
// merge is an integer sum, so the result does not depend on the thread
// count.
Vocabulary count_vocab(const Corpus& corpus);

// Streaming variant reading straight from a file, single pass.
Vocabulary count_vocab_file(const std::string& path);

// count/total per token. Probabilities sum to 1 within 1e-9.
// Raises ConstraintError on an empty vocabulary.
Distribution distribution(const Vocabulary& vocab);

// One decimal number per line. Non-numeric lines raise InputError with
// the line number.
ScoreFile load_scores(const std::string& path);

// Vocabulary file: one token per line, or token<TAB>count.
Vocabulary load_vocab_file(const std::string& path);

// Distinct tokens occurring in the corpus.
std::unordered_set<std::string> token_types(const Corpus& corpus);

namespace serial {
// Reference single-threaded implementation, kept for differential
// tests and the benchmark.
Vocabulary count_vocab(const Corpus& corpus);
}  // namespace serial

namespace detail {
// Well-formed UTF-8 check (rejects overlong forms, surrogates, > U+10FFFF).
bool valid_utf8(std::string_view s);
// Split on runs of ASCII whitespace (space, tab, VT, FF, CR).
std::vector<std::string> split_tokens(std::string_view line);
}  // namespace detail

}  // namespace forgetlens
