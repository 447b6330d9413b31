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
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace forgetlens {

// Kendall rank correlation, tie-corrected (tau-b). Pair counts satisfy
// concordant + discordant + ties_x + ties_y + ties_xy = n(n-1)/2,
// where ties_x/ties_y count pairs tied in exactly one variate and
// ties_xy pairs tied in both.
struct CorrelationResult {
  double tau = 0.0;      // in [-1, 1]
  double p_value = 1.0;  // two-sided, in (0, 1]
  int n = 0;
  std::uint64_t concordant = 0;
  std::uint64_t discordant = 0;
  std::uint64_t ties_x = 0;
  std::uint64_t ties_y = 0;
  std::uint64_t ties_xy = 0;
  bool exact_p = false;  // true when p came from full enumeration
};

// tau-b with a two-sided p-value: exact permutation enumeration of all
// n! orderings for n <= 8, normal approximation with tie-corrected
// variance above. n < 2 or an all-constant variate is an error (tau
// undefined).
CorrelationResult kendall_tau_b(std::span<const double> x,
                                std::span<const double> y);

// dot(a,b) / (|a||b|), in [-1, 1]. Zero vectors and dimension
// mismatches are errors.
double cosine_similarity(std::span<const double> a,
                         std::span<const double> b);

// token -> dense vector, all sharing one dimension.
struct EmbeddingTable {
  std::unordered_map<std::string, std::vector<double>> vectors;
  std::size_t dimension = 0;

  bool contains(const std::string& token) const {
    return vectors.count(token) > 0;
  }
};

// Text format: "token v1 v2 ... vd" per line, with an optional
// "count dimension" header line.
EmbeddingTable load_embeddings(const std::string& path);

struct NeighborResult {
  std::vector<std::pair<std::string, double>> neighbors;  // similarity desc
  std::size_t skipped = 0;  // candidates absent from the table
};

// Top-k candidates by cosine similarity to the query token, descending,
// ties broken lexicographically. Candidates missing from the table are
// skipped and counted. The query token must be present.
NeighborResult nearest_in_domain(const std::string& token,
                                 const std::unordered_set<std::string>& candidates,
                                 const EmbeddingTable& table, std::size_t k);

}  // namespace forgetlens
