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

#include "forgetlens/report_io.h"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "forgetlens/error.h"
#include "json.hpp"

namespace forgetlens {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

constexpr const char* kNullReplacement = "<NULL>";

std::vector<const TokenForgetRecord*> sorted_records(const ForgetReport& report) {
  std::vector<const TokenForgetRecord*> records;
  records.reserve(report.per_token.size());
  for (const auto& [_, rec] : report.per_token) records.push_back(&rec);
  std::sort(records.begin(), records.end(),
            [](const TokenForgetRecord* a, const TokenForgetRecord* b) {
              if (a->forgotten != b->forgotten) return a->forgotten > b->forgotten;
              return a->token < b->token;
            });
  return records;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "tsv") return OutputFormat::kTsv;
  if (name == "json") return OutputFormat::kJson;
  throw InputError("unknown output format '" + name + "' (expected tsv or json)");
}

std::string format_forget_report(const ForgetReport& report,
                                 OutputFormat format) {
  const auto records = sorted_records(report);
  if (format == OutputFormat::kTsv) {
    std::string out;
    out += "# token_set\t" + report.token_set_label + "\n";
    out += "# corpus_score\t" + fixed6(report.corpus_score) + "\n";
    out += "# numerator\t" + std::to_string(report.numerator) + "\n";
    out += "# denominator\t" + std::to_string(report.denominator) + "\n";
    out += "token\tforgotten\tref_occurrences\n";
    for (const TokenForgetRecord* rec : records) {
      out += rec->token + "\t" + std::to_string(rec->forgotten) + "\t" +
             std::to_string(rec->ref_occurrences) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["token_set"] = report.token_set_label;
  j["corpus_score"] = report.corpus_score;
  j["numerator"] = report.numerator;
  j["denominator"] = report.denominator;
  j["tokens"] = ordered_json::array();
  for (const TokenForgetRecord* rec : records) {
    j["tokens"].push_back({{"token", rec->token},
                           {"forgotten", rec->forgotten},
                           {"ref_occurrences", rec->ref_occurrences}});
  }
  return j.dump() + "\n";
}

std::string format_forget_split(const std::vector<ForgetSplitRow>& rows,
                                OutputFormat format) {
  if (format == OutputFormat::kTsv) {
    std::string out = "set\tnumerator\tdenominator\tscore\n";
    for (const ForgetSplitRow& row : rows) {
      out += row.label + "\t" + std::to_string(row.numerator) + "\t" +
             std::to_string(row.denominator) + "\t" +
             (row.score ? fixed6(*row.score) : std::string("NA")) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["sets"] = ordered_json::array();
  for (const ForgetSplitRow& row : rows) {
    ordered_json item;
    item["set"] = row.label;
    item["numerator"] = row.numerator;
    item["denominator"] = row.denominator;
    if (row.score) {
      item["score"] = *row.score;
    } else {
      item["score"] = nullptr;
    }
    j["sets"].push_back(std::move(item));
  }
  return j.dump() + "\n";
}

std::string format_replacements(const std::vector<ReplacementRecord>& records,
                                OutputFormat format) {
  if (format == OutputFormat::kTsv) {
    std::string out =
        "original\treplacement\toccurrences\torig_adapt_freq\trepl_adapt_freq\n";
    for (const ReplacementRecord& rec : records) {
      out += rec.original_token + "\t" +
             (rec.unaligned ? kNullReplacement : rec.replacement_token) + "\t" +
             std::to_string(rec.occurrence_count) + "\t" +
             std::to_string(rec.original_freq_in_adaptation) + "\t" +
             std::to_string(rec.replacement_freq_in_adaptation) + "\n";
    }
    return out;
  }
  ordered_json j;
  j["replacements"] = ordered_json::array();
  for (const ReplacementRecord& rec : records) {
    ordered_json item;
    item["original"] = rec.original_token;
    if (rec.unaligned) {
      item["replacement"] = nullptr;
    } else {
      item["replacement"] = rec.replacement_token;
    }
    item["unaligned"] = rec.unaligned;
    item["occurrences"] = rec.occurrence_count;
    item["original_freq_in_adaptation"] = rec.original_freq_in_adaptation;
    item["replacement_freq_in_adaptation"] = rec.replacement_freq_in_adaptation;
    j["replacements"].push_back(std::move(item));
  }
  return j.dump() + "\n";
}

std::string format_profile(const HeuristicProfile& profile,
                           OutputFormat format) {
  if (format == OutputFormat::kTsv) {
    std::string out =
        "line_count\ttoken_count\tmean_tokens_per_pair\tsrc_coverage\t"
        "trg_coverage\tsrc_jsd\ttrg_jsd\tmean_norm_nll\n";
    out += std::to_string(profile.line_count) + "\t" +
           std::to_string(profile.token_count) + "\t" +
           fixed6(profile.mean_tokens_per_pair) + "\t" +
           fixed6(profile.src_coverage) + "\t" + fixed6(profile.trg_coverage) +
           "\t" + fixed6(profile.src_jsd) + "\t" + fixed6(profile.trg_jsd) +
           "\t" +
           (profile.mean_norm_nll ? fixed6(*profile.mean_norm_nll)
                                  : std::string("NA")) +
           "\n";
    return out;
  }
  ordered_json j;
  j["line_count"] = profile.line_count;
  j["token_count"] = profile.token_count;
  j["mean_tokens_per_pair"] = profile.mean_tokens_per_pair;
  j["src_coverage"] = profile.src_coverage;
  j["trg_coverage"] = profile.trg_coverage;
  j["src_jsd"] = profile.src_jsd;
  j["trg_jsd"] = profile.trg_jsd;
  if (profile.mean_norm_nll) {
    j["mean_norm_nll"] = *profile.mean_norm_nll;
  } else {
    j["mean_norm_nll"] = nullptr;
  }
  return j.dump() + "\n";
}

std::string format_correlation(const std::vector<CorrelationRow>& rows,
                               OutputFormat format) {
  if (format == OutputFormat::kTsv) {
    std::string out = "series_a\tseries_b\ttau\tp_value\tn\tmethod\n";
    for (const CorrelationRow& row : rows) {
      out += row.a + "\t" + row.b + "\t";
      if (row.result) {
        out += fixed6(row.result->tau) + "\t" + fixed6(row.result->p_value) +
               "\t" + std::to_string(row.result->n) + "\t" +
               (row.result->exact_p ? "exact" : "normal");
      } else {
        out += "NA\tNA\tNA\terror: " + row.diagnostic;
      }
      out += "\n";
    }
    return out;
  }
  ordered_json j;
  j["pairs"] = ordered_json::array();
  for (const CorrelationRow& row : rows) {
    ordered_json item;
    item["a"] = row.a;
    item["b"] = row.b;
    if (row.result) {
      item["tau"] = row.result->tau;
      item["p_value"] = row.result->p_value;
      item["n"] = row.result->n;
      item["method"] = row.result->exact_p ? "exact" : "normal";
      item["concordant"] = row.result->concordant;
      item["discordant"] = row.result->discordant;
    } else {
      item["error"] = row.diagnostic;
    }
    j["pairs"].push_back(std::move(item));
  }
  return j.dump() + "\n";
}

std::string format_bleu(const BleuResult& result, OutputFormat format) {
  if (format == OutputFormat::kTsv) {
    std::string out = "bleu\t" + fixed6(result.score) + "\n";
    out += "precisions";
    for (double p : result.precisions) out += "\t" + fixed6(p);
    out += "\n";
    out += "brevity_penalty\t" + fixed6(result.brevity_penalty) + "\n";
    out += "hyp_len\t" + std::to_string(result.hyp_len) + "\n";
    out += "ref_len\t" + std::to_string(result.ref_len) + "\n";
    return out;
  }
  ordered_json j;
  j["bleu"] = result.score;
  j["precisions"] = result.precisions;
  j["brevity_penalty"] = result.brevity_penalty;
  j["hyp_len"] = result.hyp_len;
  j["ref_len"] = result.ref_len;
  return j.dump() + "\n";
}

std::string manifest_to_json(const SelectionManifest& manifest) {
  ordered_json j;
  j["strategy"] = manifest.strategy;
  if (manifest.seed) {
    j["seed"] = *manifest.seed;
  } else {
    j["seed"] = nullptr;
  }
  j["selected_line_count"] = manifest.selected_line_count;
  j["selected_token_count"] = manifest.selected_token_count;
  if (manifest.coverage_before) {
    j["coverage_before"] = *manifest.coverage_before;
  } else {
    j["coverage_before"] = nullptr;
  }
  if (manifest.coverage_after) {
    j["coverage_after"] = *manifest.coverage_after;
  } else {
    j["coverage_after"] = nullptr;
  }
  j["residual_uncovered"] = manifest.residual_uncovered;
  if (manifest.selected_indices.size() > kManifestRunLengthCutoff) {
    // run-length compression: consecutive indices as [start, length]
    ordered_json runs = ordered_json::array();
    std::size_t i = 0;
    while (i < manifest.selected_indices.size()) {
      std::size_t j2 = i + 1;
      while (j2 < manifest.selected_indices.size() &&
             manifest.selected_indices[j2] ==
                 manifest.selected_indices[j2 - 1] + 1) {
        ++j2;
      }
      runs.push_back({manifest.selected_indices[i], j2 - i});
      i = j2;
    }
    j["index_runs"] = std::move(runs);
  } else {
    j["indices"] = manifest.selected_indices;
  }
  return j.dump() + "\n";
}

SelectionManifest manifest_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw InputError(std::string("bad manifest JSON: ") + e.what());
  }
  SelectionManifest manifest;
  try {
    manifest.strategy = j.at("strategy").get<std::string>();
    if (!j.at("seed").is_null()) {
      manifest.seed = j.at("seed").get<std::uint64_t>();
    }
    manifest.selected_line_count = j.at("selected_line_count").get<std::uint64_t>();
    manifest.selected_token_count = j.at("selected_token_count").get<std::uint64_t>();
    if (j.contains("coverage_before") && !j.at("coverage_before").is_null()) {
      manifest.coverage_before = j.at("coverage_before").get<double>();
    }
    if (j.contains("coverage_after") && !j.at("coverage_after").is_null()) {
      manifest.coverage_after = j.at("coverage_after").get<double>();
    }
    if (j.contains("residual_uncovered")) {
      manifest.residual_uncovered =
          j.at("residual_uncovered").get<std::vector<std::string>>();
    }
    if (j.contains("indices")) {
      manifest.selected_indices =
          j.at("indices").get<std::vector<std::uint64_t>>();
    } else if (j.contains("index_runs")) {
      for (const auto& run : j.at("index_runs")) {
        const std::uint64_t start = run.at(0).get<std::uint64_t>();
        const std::uint64_t length = run.at(1).get<std::uint64_t>();
        for (std::uint64_t k = 0; k < length; ++k) {
          manifest.selected_indices.push_back(start + k);
        }
      }
    } else {
      throw InputError("manifest has neither 'indices' nor 'index_runs'");
    }
  } catch (const ordered_json::exception& e) {
    throw InputError(std::string("bad manifest JSON: ") + e.what());
  }
  return manifest;
}

SeriesTable load_series_tsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  SeriesTable table;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::vector<std::string> cells;
    std::size_t start = 0;
    for (;;) {
      const std::size_t tab = line.find('\t', start);
      if (tab == std::string::npos) {
        cells.push_back(line.substr(start));
        break;
      }
      cells.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    if (cells.size() < 2) {
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": series row needs a name and at least one value");
    }

    std::vector<double> values;
    bool numeric = true;
    values.reserve(cells.size() - 1);
    for (std::size_t k = 1; k < cells.size(); ++k) {
      char* end = nullptr;
      const double v = std::strtod(cells[k].c_str(), &end);
      if (cells[k].empty() || *end != '\0') {
        numeric = false;
        break;
      }
      values.push_back(v);
    }

    if (!numeric) {
      if (first) {
        table.columns.assign(cells.begin() + 1, cells.end());
        first = false;
        continue;
      }
      throw InputError(path + ":" + std::to_string(lineno) +
                       ": non-numeric value in series '" + cells[0] + "'");
    }
    first = false;
    table.names.push_back(cells[0]);
    table.values.push_back(std::move(values));
  }
  if (in.bad()) throw InputError("I/O error while reading " + path);
  return table;
}

}  // namespace forgetlens
