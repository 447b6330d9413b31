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

#include <optional>
#include <string>
#include <vector>

#include "forgetlens/alignment.h"
#include "forgetlens/forgetting.h"
#include "forgetlens/heuristics.h"
#include "forgetlens/selection.h"
#include "forgetlens/stats.h"

namespace forgetlens {

enum class OutputFormat { kTsv, kJson };

OutputFormat parse_format(const std::string& name);

// Token table sorted by forgotten descending, ties lexicographic;
// corpus score carried in header lines (TSV) or top-level fields (JSON).
std::string format_forget_report(const ForgetReport& report,
                                 OutputFormat format);

// One row per token set (the All/ID/OOD table). Entries with an
// undefined score (zero denominator) render as NA / null.
struct ForgetSplitRow {
  std::string label;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 0;
  std::optional<double> score;
};
std::string format_forget_split(const std::vector<ForgetSplitRow>& rows,
                                OutputFormat format);

// Columns: original, replacement, occurrences, orig_adapt_freq,
// repl_adapt_freq. Unaligned records render the replacement as <NULL>
// in TSV and null in JSON.
std::string format_replacements(const std::vector<ReplacementRecord>& records,
                                OutputFormat format);

std::string format_profile(const HeuristicProfile& profile,
                           OutputFormat format);

// Pairwise correlation table in long form: series_a, series_b, tau,
// p_value, n, method. Rows whose correlation is undefined carry NA
// values and a diagnostic in the method column.
struct CorrelationRow {
  std::string a;
  std::string b;
  std::optional<CorrelationResult> result;
  std::string diagnostic;  // set when result is absent
};
std::string format_correlation(const std::vector<CorrelationRow>& rows,
                               OutputFormat format);

std::string format_bleu(const BleuResult& result, OutputFormat format);

// Manifest JSON round trip. Selections above kManifestRunLengthCutoff
// lines serialize the index list as [start, length] runs.
inline constexpr std::size_t kManifestRunLengthCutoff = 100000;
std::string manifest_to_json(const SelectionManifest& manifest);
SelectionManifest manifest_from_json(const std::string& text);

// Named series, one per row: first cell the series name, remaining
// cells decimal values. A first row whose non-leading cells are all
// non-numeric is a column header.
struct SeriesTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
  std::vector<std::string> columns;  // empty when no header row
};
SeriesTable load_series_tsv(const std::string& path);

}  // namespace forgetlens
