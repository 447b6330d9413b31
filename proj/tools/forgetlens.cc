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

// forgetlens: diagnose vocabulary-shift forgetting in adapted NMT
// systems from their outputs, and build coverage-based mix-in datasets.
//
// Subcommands: forget, bleu, replacements, heuristics, select, corr.
// Exit codes: 0 success, 1 internal error, 2 input/format error,
// 3 semantic constraint violation. Reports go to stdout (or --output);
// diagnostics go to stderr.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "forgetlens/alignment.h"
#include "forgetlens/corpus.h"
#include "forgetlens/error.h"
#include "forgetlens/forgetting.h"
#include "forgetlens/heuristics.h"
#include "forgetlens/report_io.h"
#include "forgetlens/selection.h"
#include "forgetlens/stats.h"

namespace fl = forgetlens;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;
constexpr int kExitConstraint = 3;

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw fl::InputError("cannot open " + output_path + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw fl::InputError("I/O error while writing " + output_path);
}

// Focus tokens for the replacements command: either a plain token list
// or the token column of a forget report TSV (rows with forgotten > 0).
std::unordered_set<std::string> read_focus_file(const std::string& path) {
  std::unordered_set<std::string> tokens;
  const fl::Vocabulary vocab = fl::load_vocab_file(path);
  for (const auto& [token, _] : vocab.counts) tokens.insert(token);
  return tokens;
}

std::unordered_set<std::string> focus_from_forget_report(
    const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fl::InputError("cannot open " + path);
  std::unordered_set<std::string> tokens;
  std::string line;
  std::size_t lineno = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!saw_header) {  // column header line
      saw_header = true;
      continue;
    }
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? std::string::npos
                                                   : line.find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos) {
      throw fl::InputError(path + ":" + std::to_string(lineno) +
                           ": not a forget report row");
    }
    const std::string token = line.substr(0, t1);
    const std::string forgotten = line.substr(t1 + 1, t2 - t1 - 1);
    char* end = nullptr;
    const unsigned long long count = std::strtoull(forgotten.c_str(), &end, 10);
    if (*end != '\0' || forgotten.empty()) {
      throw fl::InputError(path + ":" + std::to_string(lineno) +
                           ": bad forgotten count '" + forgotten + "'");
    }
    if (count > 0) tokens.insert(token);
  }
  return tokens;
}

struct ForgetArgs {
  std::string refs, orig, adapted, adaptation_targets, tokens_file;
  std::string token_set = "all";
  bool split_id_ood = false;
  std::string format = "tsv";
  std::string output;
};

int run_forget(const ForgetArgs& args) {
  const fl::OutputFormat format = fl::parse_format(args.format);
  fl::EvalTripleSet triples(fl::load_corpus(args.refs),
                            fl::load_corpus(args.orig),
                            fl::load_corpus(args.adapted));

  std::optional<fl::Corpus> adaptation;
  if (!args.adaptation_targets.empty()) {
    adaptation = fl::load_corpus(args.adaptation_targets);
  }

  if (args.split_id_ood) {
    if (!adaptation) {
      throw fl::InputError("--split-id-ood needs --adaptation-targets");
    }
    std::vector<fl::ForgetSplitRow> rows;
    const std::vector<fl::TokenSetSpec> specs = {
        fl::TokenSetSpec::all(), fl::TokenSetSpec::in_domain(*adaptation),
        fl::TokenSetSpec::out_of_domain(*adaptation)};
    for (const fl::TokenSetSpec& spec : specs) {
      fl::ForgetSplitRow row;
      row.label = spec.label();
      try {
        const fl::ForgetReport report = fl::forget_gen_use(triples, spec);
        row.numerator = report.numerator;
        row.denominator = report.denominator;
        row.score = report.corpus_score;
      } catch (const fl::ConstraintError&) {
        // This token set never occurs in the references; the score is
        // undefined and the row says so.
      }
      rows.push_back(std::move(row));
    }
    emit(fl::format_forget_split(rows, format), args.output);
    return kExitOk;
  }

  fl::TokenSetSpec spec = fl::TokenSetSpec::all();
  if (!args.tokens_file.empty()) {
    spec = fl::TokenSetSpec::explicit_set(read_focus_file(args.tokens_file));
  } else if (args.token_set == "id" || args.token_set == "ood") {
    if (!adaptation) {
      throw fl::InputError("--token-set " + args.token_set +
                           " needs --adaptation-targets");
    }
    spec = args.token_set == "id" ? fl::TokenSetSpec::in_domain(*adaptation)
                                  : fl::TokenSetSpec::out_of_domain(*adaptation);
  } else if (args.token_set != "all") {
    throw fl::InputError("unknown token set '" + args.token_set + "'");
  }

  emit(fl::format_forget_report(fl::forget_gen_use(triples, spec), format),
       args.output);
  return kExitOk;
}

struct BleuArgs {
  std::string hyp, ref;
  int max_ngram = 4;
  std::string smoothing = "exp";
  double floor = 0.1;
  std::string format = "tsv";
  std::string output;
};

int run_bleu(const BleuArgs& args) {
  const fl::OutputFormat format = fl::parse_format(args.format);
  fl::BleuOptions options;
  options.max_ngram = args.max_ngram;
  options.floor = args.floor;
  if (args.smoothing == "exp") {
    options.smoothing = fl::BleuSmoothing::kExp;
  } else if (args.smoothing == "floor") {
    options.smoothing = fl::BleuSmoothing::kFloor;
  } else if (args.smoothing == "none") {
    options.smoothing = fl::BleuSmoothing::kNone;
  } else {
    throw fl::InputError("unknown smoothing '" + args.smoothing + "'");
  }
  const fl::BleuResult result = fl::corpus_bleu_detailed(
      fl::load_corpus(args.hyp), fl::load_corpus(args.ref), options);
  emit(fl::format_bleu(result, format), args.output);
  return kExitOk;
}

struct ReplacementsArgs {
  std::string orig, adapted, alignments, fwd, rev;
  std::string heuristic = "gdfa";
  std::string focus, from_forget_report, adaptation_targets;
  bool top = false;
  std::string format = "tsv";
  std::string output;
};

int run_replacements(const ReplacementsArgs& args) {
  const fl::OutputFormat format = fl::parse_format(args.format);
  const fl::Corpus orig = fl::load_corpus(args.orig);
  const fl::Corpus adapted = fl::load_corpus(args.adapted);

  std::vector<fl::SegmentAlignment> alignments;
  if (!args.alignments.empty()) {
    alignments = fl::load_alignments(args.alignments);
  } else if (args.fwd.empty() || args.rev.empty()) {
    throw fl::InputError("needs --alignments, or --fwd and --rev");
  } else {
    fl::Symmetrization heuristic;
    if (args.heuristic == "gdfa") {
      heuristic = fl::Symmetrization::kGrowDiagFinalAnd;
    } else if (args.heuristic == "intersection") {
      heuristic = fl::Symmetrization::kIntersection;
    } else if (args.heuristic == "union") {
      heuristic = fl::Symmetrization::kUnion;
    } else {
      throw fl::InputError("unknown symmetrization '" + args.heuristic + "'");
    }
    const std::vector<fl::SegmentAlignment> fwd = fl::load_alignments(args.fwd);
    const std::vector<fl::SegmentAlignment> rev = fl::load_alignments(args.rev);
    if (fwd.size() != rev.size()) {
      throw fl::ConstraintError("forward and reverse alignment files differ "
                                "in length");
    }
    alignments.reserve(fwd.size());
    for (std::size_t i = 0; i < fwd.size(); ++i) {
      alignments.push_back(fl::symmetrize(fwd[i], rev[i], heuristic));
    }
  }

  if (args.focus.empty() && args.from_forget_report.empty()) {
    throw fl::InputError("needs --focus or --from-forget-report");
  }
  const std::unordered_set<std::string> focus =
      !args.focus.empty() ? read_focus_file(args.focus)
                          : focus_from_forget_report(args.from_forget_report);

  std::vector<fl::ReplacementRecord> records =
      fl::extract_replacements(orig, adapted, alignments, focus);
  if (!args.adaptation_targets.empty()) {
    records = fl::annotate_frequencies(
        std::move(records), fl::count_vocab_file(args.adaptation_targets));
  }
  if (args.top) records = fl::top_replacements(records);
  emit(fl::format_replacements(records, format), args.output);
  return kExitOk;
}

struct HeuristicsArgs {
  std::string src, trg;
  std::string generic_src_vocab, generic_trg_vocab;
  std::string generic_src_dist, generic_trg_dist;
  std::string nll;
  std::string format = "json";
  std::string output;
};

int run_heuristics(const HeuristicsArgs& args) {
  const fl::OutputFormat format = fl::parse_format(args.format);
  const fl::ParallelCorpus domain = fl::load_parallel(args.src, args.trg);
  const fl::Vocabulary src_vocab = fl::load_vocab_file(args.generic_src_vocab);
  const fl::Vocabulary trg_vocab = fl::load_vocab_file(args.generic_trg_vocab);
  const fl::Distribution src_dist =
      fl::distribution(fl::load_vocab_file(args.generic_src_dist));
  const fl::Distribution trg_dist =
      fl::distribution(fl::load_vocab_file(args.generic_trg_dist));

  std::optional<fl::ScoreFile> nll;
  if (!args.nll.empty()) nll = fl::load_scores(args.nll);

  const fl::HeuristicProfile result =
      fl::profile(domain, src_vocab.support(), trg_vocab.support(), src_dist,
                  trg_dist, nll ? &*nll : nullptr);
  emit(fl::format_profile(result, format), args.output);
  return kExitOk;
}

struct SelectArgs {
  std::string strategy;
  std::string generic_src, generic_trg;
  std::string adaptation_src, adaptation_trg, adaptation_targets;
  std::string test_targets;
  std::string scores;
  std::uint64_t n = 0;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;
  std::string side = "target";
  bool streaming = false;
  std::string materialize_prefix;
  std::string output;
};

int run_select(const SelectArgs& args) {
  const bool source_side = args.side == "source";
  if (args.side != "source" && args.side != "target") {
    throw fl::InputError("--side must be source or target");
  }

  // The adaptation target side used for coverage: --adaptation-targets,
  // or the target file of --adaptation-src/--adaptation-trg.
  auto load_adaptation_targets = [&]() -> fl::Corpus {
    const std::string& path = !args.adaptation_targets.empty()
                                  ? args.adaptation_targets
                                  : (source_side ? args.adaptation_src
                                                 : args.adaptation_trg);
    if (path.empty()) {
      throw fl::InputError("strategy '" + args.strategy +
                           "' needs --adaptation-targets (or --adaptation-src/"
                           "--adaptation-trg)");
    }
    return fl::load_corpus(path);
  };

  fl::SelectionManifest manifest;
  std::optional<fl::ParallelCorpus> generic;

  if (args.strategy == "minimal" && args.streaming) {
    if (!args.materialize_prefix.empty()) {
      throw fl::InputError("--streaming cannot be combined with --materialize");
    }
    manifest = fl::minimal_mixin_files(load_adaptation_targets(),
                                       args.generic_src, args.generic_trg,
                                       source_side);
  } else {
    generic = fl::load_parallel(args.generic_src, args.generic_trg);
    if (args.strategy == "minimal") {
      manifest = fl::minimal_mixin(load_adaptation_targets(), *generic,
                                   source_side);
    } else if (args.strategy == "minimal-test") {
      if (args.test_targets.empty()) {
        throw fl::InputError("strategy minimal-test needs --test-targets");
      }
      manifest = fl::minimal_test_mixin(fl::load_corpus(args.test_targets),
                                        load_adaptation_targets(), *generic);
    } else if (args.strategy == "random") {
      manifest = fl::random_sample_lines(generic->size(), args.n, args.seed);
      fl::fill_token_count(manifest, *generic);
    } else if (args.strategy == "token-budget") {
      manifest = fl::subsample_to_token_budget(*generic, args.budget, args.seed);
    } else if (args.strategy == "shortest") {
      manifest = fl::shortest_subsample(*generic, args.budget);
    } else if (args.strategy == "filter") {
      if (args.scores.empty()) {
        throw fl::InputError("strategy filter needs --scores");
      }
      manifest = fl::score_filter(*generic, fl::load_scores(args.scores),
                                  args.threshold);
    } else {
      throw fl::InputError("unknown strategy '" + args.strategy + "'");
    }
  }

  if (!args.materialize_prefix.empty()) {
    if (args.adaptation_src.empty() || args.adaptation_trg.empty()) {
      throw fl::InputError(
          "--materialize needs --adaptation-src and --adaptation-trg");
    }
    const fl::ParallelCorpus adaptation =
        fl::load_parallel(args.adaptation_src, args.adaptation_trg);
    const fl::ParallelCorpus mixed =
        fl::materialize(manifest, *generic, adaptation);
    fl::write_corpus(mixed.source, args.materialize_prefix + ".src");
    fl::write_corpus(mixed.target, args.materialize_prefix + ".trg");
  }

  emit(fl::manifest_to_json(manifest), args.output);
  return kExitOk;
}

struct CorrArgs {
  std::string series;
  std::string format = "tsv";
  std::string output;
};

int run_corr(const CorrArgs& args) {
  const fl::OutputFormat format = fl::parse_format(args.format);
  const fl::SeriesTable table = fl::load_series_tsv(args.series);
  if (table.names.size() < 2) {
    throw fl::ConstraintError("need at least two series to correlate");
  }
  std::vector<fl::CorrelationRow> rows;
  bool any_error = false;
  for (std::size_t i = 0; i < table.names.size(); ++i) {
    for (std::size_t j = i + 1; j < table.names.size(); ++j) {
      fl::CorrelationRow row;
      row.a = table.names[i];
      row.b = table.names[j];
      try {
        row.result = fl::kendall_tau_b(table.values[i], table.values[j]);
      } catch (const fl::ConstraintError& e) {
        row.diagnostic = e.what();
        any_error = true;
      }
      rows.push_back(std::move(row));
    }
  }
  emit(fl::format_correlation(rows, format), args.output);
  return any_error ? kExitConstraint : kExitOk;
}

void add_output_flags(CLI::App* cmd, std::string* format, std::string* output,
                      const std::string& default_format) {
  *format = default_format;
  cmd->add_option("--format", *format, "Output format: tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  cmd->add_option("--output", *output, "Write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "forgetlens: vocabulary-shift forgetting diagnostics and coverage-based "
      "mix-in selection for adapted NMT outputs"};
  app.require_subcommand(1);

  ForgetArgs forget;
  CLI::App* cmd_forget = app.add_subcommand(
      "forget", "Forget-gen-use report from reference/original/adapted files");
  cmd_forget->add_option("--refs", forget.refs, "Reference translations")
      ->required()->check(CLI::ExistingFile);
  cmd_forget->add_option("--orig", forget.orig, "Original-model hypotheses")
      ->required()->check(CLI::ExistingFile);
  cmd_forget->add_option("--adapted", forget.adapted, "Adapted-model hypotheses")
      ->required()->check(CLI::ExistingFile);
  cmd_forget->add_option("--adaptation-targets", forget.adaptation_targets,
                         "Adaptation target-side corpus, defines ID/OOD")
      ->check(CLI::ExistingFile);
  cmd_forget->add_option("--token-set", forget.token_set,
                         "Token set: all, id, or ood")
      ->check(CLI::IsMember({"all", "id", "ood"}));
  CLI::Option* tokens_opt =
      cmd_forget->add_option("--tokens", forget.tokens_file,
                             "Explicit token set, one token per line")
          ->check(CLI::ExistingFile);
  tokens_opt->excludes("--token-set");
  cmd_forget->add_flag("--split-id-ood", forget.split_id_ood,
                       "Emit one All/ID/OOD score table");
  add_output_flags(cmd_forget, &forget.format, &forget.output, "tsv");

  BleuArgs bleu;
  CLI::App* cmd_bleu =
      app.add_subcommand("bleu", "Corpus BLEU over pre-tokenized files");
  cmd_bleu->add_option("--hyp", bleu.hyp, "Hypotheses")
      ->required()->check(CLI::ExistingFile);
  cmd_bleu->add_option("--ref", bleu.ref, "References")
      ->required()->check(CLI::ExistingFile);
  cmd_bleu->add_option("--max-ngram", bleu.max_ngram, "Highest n-gram order")
      ->check(CLI::Range(1, 9));
  cmd_bleu->add_option("--smoothing", bleu.smoothing,
                       "Zero-precision smoothing: exp, floor, or none")
      ->check(CLI::IsMember({"exp", "floor", "none"}));
  cmd_bleu->add_option("--floor", bleu.floor, "Floor value for --smoothing floor");
  add_output_flags(cmd_bleu, &bleu.format, &bleu.output, "tsv");

  ReplacementsArgs repl;
  CLI::App* cmd_repl = app.add_subcommand(
      "replacements", "Aligned token replacements between original and "
                      "adapted hypotheses");
  cmd_repl->add_option("--orig", repl.orig, "Original-model hypotheses")
      ->required()->check(CLI::ExistingFile);
  cmd_repl->add_option("--adapted", repl.adapted, "Adapted-model hypotheses")
      ->required()->check(CLI::ExistingFile);
  CLI::Option* align_opt =
      cmd_repl->add_option("--alignments", repl.alignments,
                           "Pre-symmetrized alignments, one line per segment")
          ->check(CLI::ExistingFile);
  CLI::Option* fwd_opt =
      cmd_repl->add_option("--fwd", repl.fwd, "Forward alignments (i-j)")
          ->check(CLI::ExistingFile);
  CLI::Option* rev_opt =
      cmd_repl->add_option("--rev", repl.rev, "Reverse alignments (j-i)")
          ->check(CLI::ExistingFile);
  align_opt->excludes(fwd_opt)->excludes(rev_opt);
  fwd_opt->needs(rev_opt);
  rev_opt->needs(fwd_opt);
  cmd_repl->add_option("--heuristic", repl.heuristic,
                       "Symmetrization: gdfa, intersection, or union")
      ->check(CLI::IsMember({"gdfa", "intersection", "union"}));
  CLI::Option* focus_opt =
      cmd_repl->add_option("--focus", repl.focus,
                           "Focus tokens, one per line")
          ->check(CLI::ExistingFile);
  CLI::Option* report_opt =
      cmd_repl->add_option("--from-forget-report", repl.from_forget_report,
                           "Take focus tokens with forgotten > 0 from a "
                           "forget report TSV")
          ->check(CLI::ExistingFile);
  focus_opt->excludes(report_opt);
  cmd_repl->add_option("--adaptation-targets", repl.adaptation_targets,
                       "Adaptation target corpus for frequency annotation")
      ->check(CLI::ExistingFile);
  cmd_repl->add_flag("--top", repl.top,
                     "Keep only the most frequent replacement per token");
  add_output_flags(cmd_repl, &repl.format, &repl.output, "tsv");

  HeuristicsArgs heur;
  CLI::App* cmd_heur = app.add_subcommand(
      "heuristics", "Domain heuristics profile of a parallel dataset");
  cmd_heur->add_option("--src", heur.src, "Domain source corpus")
      ->required()->check(CLI::ExistingFile);
  cmd_heur->add_option("--trg", heur.trg, "Domain target corpus")
      ->required()->check(CLI::ExistingFile);
  cmd_heur->add_option("--generic-src-vocab", heur.generic_src_vocab,
                       "Generic source vocabulary (token per line)")
      ->required()->check(CLI::ExistingFile);
  cmd_heur->add_option("--generic-trg-vocab", heur.generic_trg_vocab,
                       "Generic target vocabulary (token per line)")
      ->required()->check(CLI::ExistingFile);
  cmd_heur->add_option("--generic-src-dist", heur.generic_src_dist,
                       "Generic source counts (token<TAB>count)")
      ->required()->check(CLI::ExistingFile);
  cmd_heur->add_option("--generic-trg-dist", heur.generic_trg_dist,
                       "Generic target counts (token<TAB>count)")
      ->required()->check(CLI::ExistingFile);
  cmd_heur->add_option("--nll", heur.nll,
                       "Per-segment NLL scores under the generic model")
      ->check(CLI::ExistingFile);
  add_output_flags(cmd_heur, &heur.format, &heur.output, "json");

  SelectArgs sel;
  CLI::App* cmd_sel = app.add_subcommand(
      "select", "Build a generic mix-in selection manifest");
  cmd_sel->add_option("--strategy", sel.strategy,
                      "minimal, minimal-test, random, token-budget, shortest, "
                      "or filter")
      ->required()
      ->check(CLI::IsMember({"minimal", "minimal-test", "random",
                             "token-budget", "shortest", "filter"}));
  cmd_sel->add_option("--generic-src", sel.generic_src, "Generic source corpus")
      ->required()->check(CLI::ExistingFile);
  cmd_sel->add_option("--generic-trg", sel.generic_trg, "Generic target corpus")
      ->required()->check(CLI::ExistingFile);
  cmd_sel->add_option("--adaptation-src", sel.adaptation_src,
                      "Adaptation source corpus (for --materialize)")
      ->check(CLI::ExistingFile);
  cmd_sel->add_option("--adaptation-trg", sel.adaptation_trg,
                      "Adaptation target corpus")
      ->check(CLI::ExistingFile);
  cmd_sel->add_option("--adaptation-targets", sel.adaptation_targets,
                      "Adaptation target corpus for coverage (overrides "
                      "--adaptation-trg)")
      ->check(CLI::ExistingFile);
  cmd_sel->add_option("--test-targets", sel.test_targets,
                      "Test target corpus (minimal-test)")
      ->check(CLI::ExistingFile);
  cmd_sel->add_option("--scores", sel.scores, "Per-pair scores (filter)")
      ->check(CLI::ExistingFile);
  cmd_sel->add_option("--n", sel.n, "Sample size (random)");
  cmd_sel->add_option("--budget", sel.budget,
                      "Token budget, source+target (token-budget, shortest)");
  cmd_sel->add_option("--seed", sel.seed, "PRNG seed (random, token-budget)");
  cmd_sel->add_option("--threshold", sel.threshold, "Score threshold (filter)");
  cmd_sel->add_option("--side", sel.side,
                      "Coverage side for minimal: target or source")
      ->check(CLI::IsMember({"target", "source"}));
  cmd_sel->add_flag("--streaming", sel.streaming,
                    "Stream the generic files in one pass (minimal only)");
  cmd_sel->add_option("--materialize", sel.materialize_prefix,
                      "Write the mixed dataset to PREFIX.src / PREFIX.trg");
  add_output_flags(cmd_sel, &sel.format, &sel.output, "json");

  CorrArgs corr;
  CLI::App* cmd_corr = app.add_subcommand(
      "corr", "Pairwise Kendall tau-b over a TSV of named series");
  cmd_corr->add_option("--series", corr.series,
                       "TSV: series name, then one value per column")
      ->required()->check(CLI::ExistingFile);
  add_output_flags(cmd_corr, &corr.format, &corr.output, "tsv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message to stderr
    return kExitInput;
  }

  try {
    if (*cmd_forget) return run_forget(forget);
    if (*cmd_bleu) return run_bleu(bleu);
    if (*cmd_repl) return run_replacements(repl);
    if (*cmd_heur) return run_heuristics(heur);
    if (*cmd_sel) return run_select(sel);
    if (*cmd_corr) return run_corr(corr);
  } catch (const fl::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fl::ConstraintError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConstraint;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
