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

#include "forgetlens/alignment.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>

#include "forgetlens/error.h"
#include "forgetlens/parallel.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace forgetlens {

namespace {

using Link = std::pair<std::uint32_t, std::uint32_t>;

std::uint32_t parse_index(std::string_view text, std::string_view pair_text) {
  std::uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("malformed alignment pair '" + std::string(pair_text) +
                     "'");
  }
  return value;
}

}  // namespace

void SegmentAlignment::normalize() {
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
}

bool SegmentAlignment::contains(std::uint32_t i, std::uint32_t j) const {
  return std::binary_search(links.begin(), links.end(), Link{i, j});
}

SegmentAlignment parse_pharaoh(std::string_view line) {
  SegmentAlignment alignment;
  std::size_t pos = 0;
  const std::size_t n = line.size();
  while (pos < n) {
    while (pos < n && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    std::size_t start = pos;
    while (pos < n && line[pos] != ' ' && line[pos] != '\t') ++pos;
    if (pos == start) break;
    std::string_view pair_text = line.substr(start, pos - start);
    std::size_t dash = pair_text.find('-');
    if (dash == std::string_view::npos) {
      throw InputError("malformed alignment pair '" + std::string(pair_text) +
                       "': missing dash");
    }
    alignment.links.emplace_back(
        parse_index(pair_text.substr(0, dash), pair_text),
        parse_index(pair_text.substr(dash + 1), pair_text));
  }
  alignment.normalize();
  return alignment;
}

std::vector<SegmentAlignment> load_alignments(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::vector<SegmentAlignment> alignments;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    try {
      alignments.push_back(parse_pharaoh(line));
    } catch (const InputError& e) {
      throw InputError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (in.bad()) throw InputError("I/O error while reading " + path);
  return alignments;
}

namespace {

SegmentAlignment flip(const SegmentAlignment& a) {
  SegmentAlignment out;
  out.links.reserve(a.links.size());
  for (const Link& l : a.links) out.links.emplace_back(l.second, l.first);
  out.normalize();
  return out;
}

SegmentAlignment intersect(const SegmentAlignment& a,
                           const SegmentAlignment& b) {
  SegmentAlignment out;
  std::set_intersection(a.links.begin(), a.links.end(), b.links.begin(),
                        b.links.end(), std::back_inserter(out.links));
  return out;
}

SegmentAlignment unite(const SegmentAlignment& a, const SegmentAlignment& b) {
  SegmentAlignment out;
  std::set_union(a.links.begin(), a.links.end(), b.links.begin(),
                 b.links.end(), std::back_inserter(out.links));
  return out;
}

constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0},  {0, 1},
                                  {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};

SegmentAlignment grow_diag_final_and(const SegmentAlignment& forward,
                                     const SegmentAlignment& flipped_reverse) {
  const SegmentAlignment inter = intersect(forward, flipped_reverse);
  const SegmentAlignment uni = unite(forward, flipped_reverse);

  std::set<Link> aligned(inter.links.begin(), inter.links.end());
  std::set<std::uint32_t> src_aligned;
  std::set<std::uint32_t> trg_aligned;
  for (const Link& l : aligned) {
    src_aligned.insert(l.first);
    trg_aligned.insert(l.second);
  }

  // Grow: repeatedly scan current points in sorted order and adopt
  // union links in their 8-neighborhood while either endpoint is still
  // unaligned. Additions take effect immediately.
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Link> snapshot(aligned.begin(), aligned.end());
    for (const Link& point : snapshot) {
      for (const auto& d : kNeighbors) {
        const std::int64_t ni = static_cast<std::int64_t>(point.first) + d[0];
        const std::int64_t nj = static_cast<std::int64_t>(point.second) + d[1];
        if (ni < 0 || nj < 0) continue;
        const Link cand{static_cast<std::uint32_t>(ni),
                        static_cast<std::uint32_t>(nj)};
        if (aligned.count(cand) > 0) continue;
        if (!uni.contains(cand.first, cand.second)) continue;
        if (src_aligned.count(cand.first) > 0 &&
            trg_aligned.count(cand.second) > 0) {
          continue;
        }
        aligned.insert(cand);
        src_aligned.insert(cand.first);
        trg_aligned.insert(cand.second);
        changed = true;
      }
    }
  }

  // Final-and: adopt forward then reverse links whose endpoints are
  // both still unaligned.
  for (const SegmentAlignment* side : {&forward, &flipped_reverse}) {
    for (const Link& l : side->links) {
      if (src_aligned.count(l.first) == 0 && trg_aligned.count(l.second) == 0) {
        aligned.insert(l);
        src_aligned.insert(l.first);
        trg_aligned.insert(l.second);
      }
    }
  }

  SegmentAlignment out;
  out.links.assign(aligned.begin(), aligned.end());
  return out;
}

}  // namespace

SegmentAlignment symmetrize(const SegmentAlignment& forward,
                            const SegmentAlignment& reverse,
                            Symmetrization heuristic) {
  const SegmentAlignment flipped = flip(reverse);
  switch (heuristic) {
    case Symmetrization::kIntersection:
      return intersect(forward, flipped);
    case Symmetrization::kUnion:
      return unite(forward, flipped);
    case Symmetrization::kGrowDiagFinalAnd:
      return grow_diag_final_and(forward, flipped);
  }
  return {};
}

namespace {

// Aggregation key: replacement text, with unaligned occurrences kept
// distinct from any real token.
struct ReplacementKey {
  std::string original;
  std::string replacement;
  bool unaligned = false;

  bool operator<(const ReplacementKey& o) const {
    if (original != o.original) return original < o.original;
    if (unaligned != o.unaligned) return unaligned < o.unaligned;
    return replacement < o.replacement;
  }
};

using ReplacementCounts = std::map<ReplacementKey, std::uint64_t>;

void extract_segment(const Segment& orig, const Segment& adapt,
                     const SegmentAlignment& alignment,
                     const std::unordered_set<std::string>& focus_tokens,
                     std::size_t segment_index, ReplacementCounts& counts) {
  for (const Link& l : alignment.links) {
    if (l.first >= orig.size() || l.second >= adapt.size()) {
      throw ConstraintError(
          "alignment link " + std::to_string(l.first) + "-" +
          std::to_string(l.second) + " out of bounds at segment " +
          std::to_string(segment_index) + " (lengths " +
          std::to_string(orig.size()) + "/" + std::to_string(adapt.size()) +
          ")");
    }
  }
  for (std::uint32_t i = 0; i < orig.size(); ++i) {
    const std::string& tok = orig.tokens[i];
    if (focus_tokens.count(tok) == 0) continue;
    bool linked = false;
    for (const Link& l : alignment.links) {
      if (l.first != i) continue;
      linked = true;
      const std::string& replacement = adapt.tokens[l.second];
      if (replacement == tok) continue;  // unchanged, not a replacement
      ++counts[ReplacementKey{tok, replacement, false}];
    }
    if (!linked) ++counts[ReplacementKey{tok, "", true}];
  }
}

std::vector<ReplacementRecord> records_from_counts(ReplacementCounts counts) {
  std::vector<ReplacementRecord> records;
  records.reserve(counts.size());
  for (auto& [key, count] : counts) {
    ReplacementRecord rec;
    rec.original_token = key.original;
    rec.replacement_token = key.replacement;
    rec.unaligned = key.unaligned;
    rec.occurrence_count = count;
    records.push_back(std::move(rec));
  }
  // original asc, occurrences desc, aligned before unaligned,
  // replacement asc.
  std::sort(records.begin(), records.end(),
            [](const ReplacementRecord& a, const ReplacementRecord& b) {
              if (a.original_token != b.original_token)
                return a.original_token < b.original_token;
              if (a.occurrence_count != b.occurrence_count)
                return a.occurrence_count > b.occurrence_count;
              if (a.unaligned != b.unaligned) return !a.unaligned;
              return a.replacement_token < b.replacement_token;
            });
  return records;
}

void validate_replacement_inputs(const Corpus& original, const Corpus& adapted,
                                 const std::vector<SegmentAlignment>& alignments) {
  if (original.size() != adapted.size()) {
    throw ConstraintError("original and adapted corpora differ in length: " +
                          std::to_string(original.size()) + " vs " +
                          std::to_string(adapted.size()));
  }
  if (alignments.size() != original.size()) {
    throw ConstraintError("alignment count " +
                          std::to_string(alignments.size()) +
                          " does not match corpus length " +
                          std::to_string(original.size()));
  }
}

}  // namespace

std::vector<ReplacementRecord> extract_replacements(
    const Corpus& original, const Corpus& adapted,
    const std::vector<SegmentAlignment>& alignments,
    const std::unordered_set<std::string>& focus_tokens) {
  validate_replacement_inputs(original, adapted, alignments);
  const int nt = parallel::max_threads();
  const std::int64_t n = static_cast<std::int64_t>(original.size());
  std::vector<ReplacementCounts> partial(nt);
  std::vector<std::string> errors(nt);

#ifdef _OPENMP
#pragma omp parallel num_threads(nt)
  {
    const int tid = omp_get_thread_num();
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < n; ++i) {
      if (!errors[tid].empty()) continue;
      try {
        extract_segment(original.segments[i], adapted.segments[i],
                        alignments[i], focus_tokens, i, partial[tid]);
      } catch (const ConstraintError& e) {
        errors[tid] = e.what();
      }
    }
  }
  for (const std::string& e : errors) {
    if (!e.empty()) {
      // Redo serially so the reported segment is the first in file order.
      return serial::extract_replacements(original, adapted, alignments,
                                          focus_tokens);
    }
  }
#else
  for (std::int64_t i = 0; i < n; ++i) {
    extract_segment(original.segments[i], adapted.segments[i], alignments[i],
                    focus_tokens, i, partial[0]);
  }
#endif

  ReplacementCounts merged = std::move(partial[0]);
  for (int t = 1; t < nt; ++t) {
    for (auto& [key, count] : partial[t]) merged[key] += count;
  }
  return records_from_counts(std::move(merged));
}

std::vector<ReplacementRecord> annotate_frequencies(
    std::vector<ReplacementRecord> records,
    const Vocabulary& adaptation_targets) {
  for (ReplacementRecord& rec : records) {
    rec.original_freq_in_adaptation = adaptation_targets.count(rec.original_token);
    rec.replacement_freq_in_adaptation =
        rec.unaligned ? 0 : adaptation_targets.count(rec.replacement_token);
  }
  return records;
}

std::vector<ReplacementRecord> top_replacements(
    const std::vector<ReplacementRecord>& records) {
  std::map<std::string, const ReplacementRecord*> best;
  for (const ReplacementRecord& rec : records) {
    auto [it, inserted] = best.emplace(rec.original_token, &rec);
    if (inserted) continue;
    const ReplacementRecord& cur = *it->second;
    const bool better =
        rec.occurrence_count > cur.occurrence_count ||
        (rec.occurrence_count == cur.occurrence_count &&
         (rec.replacement_freq_in_adaptation > cur.replacement_freq_in_adaptation ||
          (rec.replacement_freq_in_adaptation == cur.replacement_freq_in_adaptation &&
           rec.replacement_token < cur.replacement_token)));
    if (better) it->second = &rec;
  }
  std::vector<ReplacementRecord> out;
  out.reserve(best.size());
  for (const auto& [_, rec] : best) out.push_back(*rec);
  return out;
}

namespace serial {

std::vector<ReplacementRecord> extract_replacements(
    const Corpus& original, const Corpus& adapted,
    const std::vector<SegmentAlignment>& alignments,
    const std::unordered_set<std::string>& focus_tokens) {
  validate_replacement_inputs(original, adapted, alignments);
  ReplacementCounts counts;
  for (std::size_t i = 0; i < original.size(); ++i) {
    extract_segment(original.segments[i], adapted.segments[i], alignments[i],
                    focus_tokens, i, counts);
  }
  return records_from_counts(std::move(counts));
}

}  // namespace serial

}  // namespace forgetlens
