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

#include "forgetlens/stats.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "forgetlens/error.h"

namespace forgetlens {

namespace {

int sgn(double a, double b) { return (a > b) - (a < b); }

// Sum of C - D over all index pairs; integer-valued.
std::int64_t concordance_sum(std::span<const double> x,
                             std::span<const double> y) {
  std::int64_t s = 0;
  const std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      s += sgn(x[j], x[i]) * sgn(y[j], y[i]);
    }
  }
  return s;
}

struct TieStats {
  // over tie groups of size t: sum t(t-1)/2, t(t-1)(t-2), t(t-1)(2t+5)
  std::uint64_t pairs = 0;
  std::uint64_t term1 = 0;
  std::uint64_t term2 = 0;
};

TieStats tie_stats(std::span<const double> values) {
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  TieStats stats;
  std::size_t i = 0;
  while (i < sorted.size()) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    const std::uint64_t t = j - i;
    stats.pairs += t * (t - 1) / 2;
    stats.term1 += t * (t - 1) * (t - 2);
    stats.term2 += t * (t - 1) * (2 * t + 5);
    i = j;
  }
  return stats;
}

// Two-sided permutation p: the fraction of the n! orderings of y whose
// |C - D| reaches the observed one. Enumerating distinct arrangements
// of the sorted multiset is equivalent, since every distinct
// arrangement has the same multiplicity.
double exact_permutation_p(std::span<const double> x,
                           std::span<const double> y, std::int64_t s_observed) {
  std::vector<double> perm(y.begin(), y.end());
  std::sort(perm.begin(), perm.end());
  const std::int64_t s_abs = std::llabs(s_observed);
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  do {
    ++total;
    if (std::llabs(concordance_sum(x, perm)) >= s_abs) ++hits;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(hits) / static_cast<double>(total);
}

// Tie-corrected normal approximation for S = C - D, two-sided.
double normal_approximation_p(std::size_t n, const TieStats& tx,
                              const TieStats& ty, std::int64_t s_observed) {
  const double m = static_cast<double>(n) * (static_cast<double>(n) - 1.0);
  double var = (m * (2.0 * n + 5.0) - static_cast<double>(tx.term2) -
                static_cast<double>(ty.term2)) /
               18.0;
  var += 2.0 * static_cast<double>(tx.pairs) * static_cast<double>(ty.pairs) / m;
  if (n > 2) {
    var += static_cast<double>(tx.term1) * static_cast<double>(ty.term1) /
           (9.0 * m * (static_cast<double>(n) - 2.0));
  }
  if (var <= 0.0) return 1.0;
  const double z = static_cast<double>(s_observed) / std::sqrt(var);
  return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace

CorrelationResult kendall_tau_b(std::span<const double> x,
                                std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size()) {
    throw ConstraintError("series differ in length: " + std::to_string(n) +
                          " vs " + std::to_string(y.size()));
  }
  if (n < 2) {
    throw ConstraintError("correlation needs at least 2 observations");
  }

  CorrelationResult result;
  result.n = static_cast<int>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const int dx = sgn(x[j], x[i]);
      const int dy = sgn(y[j], y[i]);
      if (dx == 0 && dy == 0) {
        ++result.ties_xy;
      } else if (dx == 0) {
        ++result.ties_x;
      } else if (dy == 0) {
        ++result.ties_y;
      } else if (dx == dy) {
        ++result.concordant;
      } else {
        ++result.discordant;
      }
    }
  }

  const TieStats tx = tie_stats(x);
  const TieStats ty = tie_stats(y);
  const std::uint64_t n0 = n * (n - 1) / 2;
  if (tx.pairs == n0 || ty.pairs == n0) {
    throw ConstraintError("tau is undefined for an all-constant series");
  }

  const std::int64_t s = static_cast<std::int64_t>(result.concordant) -
                         static_cast<std::int64_t>(result.discordant);
  result.tau = static_cast<double>(s) /
               (std::sqrt(static_cast<double>(n0 - tx.pairs)) *
                std::sqrt(static_cast<double>(n0 - ty.pairs)));

  if (n <= 8) {
    result.exact_p = true;
    result.p_value = exact_permutation_p(x, y, s);
  } else {
    result.exact_p = false;
    result.p_value = normal_approximation_p(n, tx, ty, s);
  }
  return result;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw ConstraintError("vector dimensions differ: " +
                          std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
  if (a.empty()) throw ConstraintError("cosine of empty vectors");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) {
    throw ConstraintError("cosine similarity of a zero vector is undefined");
  }
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

EmbeddingTable load_embeddings(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  EmbeddingTable table;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
      if (i > start) fields.push_back(line.substr(start, i - start));
    }
    if (fields.empty()) continue;

    if (first) {
      first = false;
      // optional "count dimension" header
      if (fields.size() == 2) {
        char* e1 = nullptr;
        char* e2 = nullptr;
        std::strtoull(fields[0].c_str(), &e1, 10);
        std::strtoull(fields[1].c_str(), &e2, 10);
        if (*e1 == '\0' && *e2 == '\0') continue;
      }
    }

    if (fields.size() < 2) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": embedding line needs a token and values");
    }
    std::vector<double> vec;
    vec.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      char* end = nullptr;
      const double v = std::strtod(fields[k].c_str(), &end);
      if (*end != '\0' || !std::isfinite(v)) {
        throw InputError(path + ":" + std::to_string(lineno) +
                         ": bad embedding value '" + fields[k] + "'");
      }
      vec.push_back(v);
    }
    if (table.dimension == 0) {
      table.dimension = vec.size();
    } else if (vec.size() != table.dimension) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": dimension " + std::to_string(vec.size()) +
                       " != " + std::to_string(table.dimension));
    }
    table.vectors[fields[0]] = std::move(vec);
  }
  if (in.bad()) throw InputError("I/O error while reading " + path);
  return table;
}

NeighborResult nearest_in_domain(const std::string& token,
                                 const std::unordered_set<std::string>& candidates,
                                 const EmbeddingTable& table, std::size_t k) {
  auto it = table.vectors.find(token);
  if (it == table.vectors.end()) {
    throw ConstraintError("token '" + token + "' has no embedding");
  }
  const std::vector<double>& query = it->second;

  NeighborResult result;
  for (const std::string& cand : candidates) {
    auto cit = table.vectors.find(cand);
    if (cit == table.vectors.end()) {
      ++result.skipped;
      continue;
    }
    result.neighbors.emplace_back(cand, cosine_similarity(query, cit->second));
  }
  std::sort(result.neighbors.begin(), result.neighbors.end(),
            [](const auto& a, const auto& b) {
              if (a.second != b.second) return a.second > b.second;
              return a.first < b.first;
            });
  if (result.neighbors.size() > k) result.neighbors.resize(k);
  return result;
}

}  // namespace forgetlens
