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

#include "forgetlens/corpus.h"

#include <cmath>
#include <cstdlib>
#include <fstream>

#include "forgetlens/error.h"
#include "forgetlens/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forgetlens {

namespace detail {

namespace {
bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\v' || c == '\f' || c == '\r';
}
}  // namespace

// Accepts well-formed UTF-8 only: no overlong encodings, no surrogates,
// nothing above U+10FFFF.
bool valid_utf8(std::string_view s) {
  std::size_t i = 0;
  const std::size_t n = s.size();
  while (i < n) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (c < 0x80) {
      ++i;
      continue;
    }
    int len;
    unsigned cp;
    if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > n) return false;
    for (int k = 1; k < len; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (len == 2 && cp < 0x80) return false;
    if (len == 3 && cp < 0x800) return false;
    if (len == 4 && cp < 0x10000) return false;
    if (cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return false;
    i += len;
  }
  return true;
}

std::vector<std::string> split_tokens(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && is_ascii_space(line[i])) ++i;
    std::size_t start = i;
    while (i < n && !is_ascii_space(line[i])) ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

}  // namespace detail

namespace {

void stream_lines(const std::string& path,
                  const std::function<void(std::size_t, std::string&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    fn(lineno, line);
  }
  if (in.bad()) throw InputError("I/O error while reading " + path);
}

}  // namespace

std::uint64_t Corpus::token_count() const {
  std::uint64_t total = 0;
  for (const Segment& s : segments) total += s.tokens.size();
  return total;
}

ParallelCorpus::ParallelCorpus(Corpus src, Corpus trg)
    : source(std::move(src)), target(std::move(trg)) {
  if (source.size() != target.size()) {
    throw ConstraintError(
        "parallel corpus sides differ in length: " + source.origin + " has " +
        std::to_string(source.size()) + " segments, " + target.origin +
        " has " + std::to_string(target.size()));
  }
}

std::unordered_set<std::string> Vocabulary::support() const {
  std::unordered_set<std::string> types;
  types.reserve(counts.size());
  for (const auto& [token, _] : counts) types.insert(token);
  return types;
}

void for_each_segment(const std::string& path,
                      const std::function<void(Segment&&)>& fn) {
  stream_lines(path, [&](std::size_t lineno, std::string& line) {
    if (!detail::valid_utf8(line)) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": invalid UTF-8");
    }
    Segment seg;
    seg.tokens = detail::split_tokens(line);
    seg.index = lineno - 1;
    fn(std::move(seg));
  });
}

Corpus load_corpus(const std::string& path) {
  Corpus corpus;
  corpus.origin = path;
  for_each_segment(path, [&](Segment&& seg) {
    corpus.segments.push_back(std::move(seg));
  });
  return corpus;
}

Corpus make_corpus(std::vector<std::vector<std::string>> lines,
                   std::string origin) {
  Corpus corpus;
  corpus.origin = std::move(origin);
  corpus.segments.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    corpus.segments.push_back(Segment{std::move(lines[i]), i});
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot open " + path + " for writing");
  for (const Segment& seg : corpus.segments) {
    for (std::size_t i = 0; i < seg.tokens.size(); ++i) {
      if (i > 0) out << ' ';
      out << seg.tokens[i];
    }
    out << '\n';
  }
  if (!out) throw InputError("I/O error while writing " + path);
}

ParallelCorpus load_parallel(const std::string& source_path,
                             const std::string& target_path) {
  return ParallelCorpus(load_corpus(source_path), load_corpus(target_path));
}

Vocabulary count_vocab(const Corpus& corpus) {
  const int nt = parallel::max_threads();
  const std::int64_t n = static_cast<std::int64_t>(corpus.segments.size());
  std::vector<Vocabulary> partial(nt);

#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
  {
    Vocabulary& local = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      for (const std::string& tok : corpus.segments[i].tokens) {
        ++local.counts[tok];
        ++local.total;
      }
    }
  }
#else
  for (std::int64_t i = 0; i < n; ++i) {
    for (const std::string& tok : corpus.segments[i].tokens) {
      ++partial[0].counts[tok];
      ++partial[0].total;
    }
  }
#endif

  Vocabulary merged = std::move(partial[0]);
  for (int t = 1; t < nt; ++t) {
    for (auto& [tok, c] : partial[t].counts) merged.counts[tok] += c;
    merged.total += partial[t].total;
  }
  return merged;
}

Vocabulary count_vocab_file(const std::string& path) {
  Vocabulary vocab;
  for_each_segment(path, [&](Segment&& seg) {
    for (std::string& tok : seg.tokens) {
      ++vocab.counts[std::move(tok)];
      ++vocab.total;
    }
  });
  return vocab;
}

Distribution distribution(const Vocabulary& vocab) {
  if (vocab.total == 0) {
    throw ConstraintError("cannot build a distribution from an empty vocabulary");
  }
  Distribution dist;
  const double total = static_cast<double>(vocab.total);
  for (const auto& [token, count] : vocab.counts) {
    dist[token] = static_cast<double>(count) / total;
  }
  return dist;
}

ScoreFile load_scores(const std::string& path) {
  ScoreFile scores;
  scores.origin = path;
  stream_lines(path, [&](std::size_t lineno, std::string& line) {
    std::size_t b = 0, e = line.size();
    while (b < e && detail::is_ascii_space(line[b])) ++b;
    while (e > b && detail::is_ascii_space(line[e - 1])) --e;
    std::string trimmed = line.substr(b, e - b);
    if (trimmed.empty()) {
      throw InputError(path + ":" + std::to_string(lineno) + ": empty line in score file");
    }
    char* end = nullptr;
    double value = std::strtod(trimmed.c_str(), &end);
    if (end != trimmed.c_str() + trimmed.size() || !std::isfinite(value)) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": not a number: '" + trimmed + "'");
    }
    scores.values.push_back(value);
  });
  return scores;
}

Vocabulary load_vocab_file(const std::string& path) {
  Vocabulary vocab;
  stream_lines(path, [&](std::size_t lineno, std::string& line) {
    if (!detail::valid_utf8(line)) {
      throw InputError(path + ":" + std::to_string(lineno) + ": invalid UTF-8");
    }
    if (line.empty()) return;
    std::string token = line;
    std::uint64_t count = 1;
    if (auto tab = line.find('\t'); tab != std::string::npos) {
      token = line.substr(0, tab);
      std::string rest = line.substr(tab + 1);
      char* end = nullptr;
      unsigned long long parsed = std::strtoull(rest.c_str(), &end, 10);
      if (end != rest.c_str() + rest.size() || rest.empty()) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": bad count '" + rest + "'");
      }
      count = parsed;
    }
    for (char c : token) {
      if (detail::is_ascii_space(c)) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": token contains whitespace");
      }
    }
    if (token.empty()) {
      throw InputError(path + ":" + std::to_string(lineno) + ": empty token");
    }
    if (count == 0) return;  // zero-count tokens are absent by definition
    vocab.counts[token] += count;
    vocab.total += count;
  });
  return vocab;
}

std::unordered_set<std::string> token_types(const Corpus& corpus) {
  std::unordered_set<std::string> types;
  for (const Segment& seg : corpus.segments) {
    for (const std::string& tok : seg.tokens) types.insert(tok);
  }
  return types;
}

namespace serial {

Vocabulary count_vocab(const Corpus& corpus) {
  Vocabulary vocab;
  for (const Segment& seg : corpus.segments) {
    for (const std::string& tok : seg.tokens) {
      ++vocab.counts[tok];
      ++vocab.total;
    }
  }
  return vocab;
}

}  // namespace serial

}  // namespace forgetlens
