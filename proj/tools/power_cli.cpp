// power: score ASR hypotheses with WER and POWER.
#include <CLI11.hpp>
#include <fmt/core.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "power/annotate.hpp"
#include "power/corpus.hpp"
#include "power/error.hpp"
#include "power/lexicon.hpp"
#include "power/normalize.hpp"
#include "power/pipeline.hpp"
#include "power/report.hpp"
#include "power/text_io.hpp"

namespace fs = std::filesystem;

namespace {

enum ExitCode { kOk = 0, kFatalInput = 1, kInvariant = 2 };

struct Options {
  std::string ref;
  std::vector<std::string> hyps;
  std::vector<std::string> sys_ids;
  std::string dict;
  std::string variants;
  std::string closed_class;
  std::string lemmas;
  std::string out_dir;
  std::string format = "text";
  bool no_phonetic = false;
  bool oracle = false;
  bool split_hyphens = false;
  bool alignments = false;
  unsigned workers = 1;
};

std::string join_words(const power::Words& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

void report(const power::Diagnostics& diagnostics) {
  for (const auto& d : diagnostics) std::cerr << power::to_string(d) << '\n';
}

struct Loaded {
  power::Lexicon lexicon;
  power::Annotator annotator;
  power::Corpus corpus;
};

Loaded load(const Options& o) {
  power::Diagnostics diagnostics;
  power::NormRules rules;
  if (!o.variants.empty()) rules.variants = power::VariantMap::load(o.variants, &diagnostics);
  rules.split_hyphens = o.split_hyphens;

  Loaded l{power::load_dictionary(o.dict, &diagnostics), {}, {}};
  if (!o.closed_class.empty()) l.annotator.classes = power::WordClassifier::load(o.closed_class);
  if (!o.lemmas.empty()) l.annotator.lemmas = power::Lemmatizer::load(o.lemmas, &diagnostics);

  std::vector<fs::path> hyp_paths(o.hyps.begin(), o.hyps.end());
  l.corpus = power::load_corpus(o.ref, hyp_paths, o.sys_ids, rules);
  report(diagnostics);
  report(l.corpus.diagnostics);
  return l;
}

power::ReportFormat format_of(const Options& o) {
  return o.format == "csv" ? power::ReportFormat::Csv : power::ReportFormat::Text;
}

std::string extension(const Options& o) { return o.format == "csv" ? ".csv" : ".txt"; }

void emit(const Options& o, const std::string& name, const std::string& content) {
  if (o.out_dir.empty()) {
    std::cout << content;
  } else {
    power::write_text_file(fs::path(o.out_dir) / name, content);
  }
}

power::ScoreRun score(const Options& o, const Loaded& l) {
  power::ScoreOptions so;
  so.phonetic = !o.no_phonetic;
  so.oracle_normalize = o.oracle;
  so.workers = o.workers;
  auto run = power::run_score(l.corpus.utterances, l.lexicon, l.annotator, so);
  report(run.diagnostics);
  return run;
}

void cmd_score(const Options& o) {
  const auto l = load(o);
  const auto run = score(o, l);
  const auto fmt = format_of(o);
  if (o.out_dir.empty()) {
    std::cout << power::render_summary(run.summary, fmt);
    if (o.alignments) std::cout << '\n' << power::render_alignments(run.utterances);
    return;
  }
  emit(o, "summary" + extension(o), power::render_summary(run.summary, fmt));
  emit(o, "utterances" + extension(o), power::render_utterance_scores(run.utterances, fmt));
  emit(o, "confusions" + extension(o), power::render_confusions(run.confusions, fmt));
  if (o.alignments) emit(o, "alignments.tsv", power::render_alignments(run.utterances));
}

void cmd_features(const Options& o) {
  const auto l = load(o);
  const auto run = score(o, l);
  power::Diagnostics warnings;
  const auto rows = power::feature_rows(run.utterances, &warnings);
  report(warnings);
  emit(o, "features.csv", power::render_features(rows));
}

void cmd_confusions(const Options& o) {
  const auto l = load(o);
  const auto run = score(o, l);
  emit(o, "confusions" + extension(o), power::render_confusions(run.confusions, format_of(o)));
}

void cmd_normalize(const Options& o) {
  const auto l = load(o);
  std::map<std::string, std::string> per_system;
  if (o.oracle) {
    const auto run = score(o, l);
    for (const auto& r : run.utterances) {
      per_system[r.utterance.sys_id] += r.utterance.utt_id + '\t' + join_words(r.utterance.hyp) + '\n';
    }
  } else {
    for (const auto& u : l.corpus.utterances) {
      per_system[u.sys_id] += u.utt_id + '\t' + join_words(u.hyp) + '\n';
    }
  }
  for (const auto& [sys, text] : per_system) {
    if (o.out_dir.empty()) {
      std::cout << "# " << sys << '\n' << text;
    } else {
      emit(o, sys + ".tsv", text);
    }
  }
}

void add_common(CLI::App* cmd, Options& o, bool scoring) {
  cmd->add_option("ref", o.ref, "Reference transcript (UTTID<TAB>text)")->required()->check(CLI::ExistingFile);
  cmd->add_option("hyp", o.hyps, "Hypothesis transcripts, one file per system")->required()->check(CLI::ExistingFile);
  cmd->add_option("--dict", o.dict, "CMU-format pronunciation dictionary")->required()->check(CLI::ExistingFile);
  cmd->add_option("--variants", o.variants, "Spelling variant map (variant<TAB>canonical)")->check(CLI::ExistingFile);
  cmd->add_option("--closed-class", o.closed_class, "Closed-class word list")->check(CLI::ExistingFile);
  cmd->add_option("--lemmas", o.lemmas, "Lemma map (word<TAB>lemma)")->check(CLI::ExistingFile);
  cmd->add_option("--sys-id", o.sys_ids, "System ID per hypothesis file (default: file stem)");
  cmd->add_flag("--split-hyphens", o.split_hyphens, "Split hyphenated tokens during normalization");
  cmd->add_flag("--oracle-normalize", o.oracle, "Rewrite homophonous hypothesis spans to the reference form");
  cmd->add_option("--out", o.out_dir, "Write reports into this directory instead of stdout");
  cmd->add_option("--workers", o.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
  if (scoring) {
    cmd->add_flag("--no-phonetic", o.no_phonetic, "Skip phonetic re-alignment; POWER equals WER");
    cmd->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "csv"}));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phonetically-oriented word error rate scoring"};
  app.require_subcommand(1);
  Options o;

  auto* score_cmd = app.add_subcommand("score", "Summary tables for WER and POWER");
  add_common(score_cmd, o, true);
  score_cmd->add_flag("--alignments", o.alignments, "Also write labeled alignments");
  auto* features_cmd = app.add_subcommand("features", "Per-utterance regression feature CSV");
  add_common(features_cmd, o, true);
  auto* confusions_cmd = app.add_subcommand("confusions", "Ranked confusion pairs from POWER alignments");
  add_common(confusions_cmd, o, true);
  auto* normalize_cmd = app.add_subcommand("normalize", "Write normalized hypothesis transcripts");
  add_common(normalize_cmd, o, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kFatalInput;
  }

  try {
    if (score_cmd->parsed()) cmd_score(o);
    if (features_cmd->parsed()) cmd_features(o);
    if (confusions_cmd->parsed()) cmd_confusions(o);
    if (normalize_cmd->parsed()) cmd_normalize(o);
  } catch (const power::InvariantError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInvariant;
  } catch (const power::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFatalInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFatalInput;
  }
  return kOk;
}
