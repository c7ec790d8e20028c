// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <fmt/core.h>
#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracle/brute_force.hpp"
#include "power/corpus.hpp"
#include "power/normalize.hpp"
#include "power/phone_align.hpp"
#include "power/pipeline.hpp"
#include "power/report.hpp"
#include "support/fixtures.hpp"
#include "support/random_phones.hpp"
#include "support/synthetic_corpus.hpp"

using namespace power;
using power::fixture::shipped_lexicon;
using power::fixture::words;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<Utterance> synthetic_utterances(std::size_t refs, std::size_t systems, std::uint32_t seed) {
  fixture::SyntheticOptions o;
  o.references = refs;
  o.systems = systems;
  o.seed = seed;
  return fixture::make_synthetic_corpus(fixture::dictionary_vocabulary(fixture::kDictPath), o).utterances();
}

// 1. anatomy -> "and that to me" inside a longer sentence.
Outcome anatomy_span() {
  const auto start = Clock::now();
  const Lexicon lexicon = load_dictionary(fixture::kDictPath);
  const Utterance u{"stanford1", "sys", words("dr brown in anatomy at stanford"), words("dr brown in and that to me at stanford")};
  const auto r = score_utterance(u, lexicon, Annotator{}, ScoreOptions{});
  const double t = seconds_since(start);
  std::size_t spans = 0;
  bool shape = false;
  for (const auto& b : r.power_alignment.blocks) {
    if (b.label != AlignLabel::SubSpan) continue;
    ++spans;
    shape = b.ref_len == 1 && b.hyp_len == 4 && u.ref[b.ref_begin] == "anatomy";
  }
  const bool ok = spans == 1 && shape && r.score.counts_power.SS == 4 && t < 1.0;
  return {ok, fmt::format("spans={} SS={} POWER={:.4f} time={:.3f}s", spans, r.score.counts_power.SS, r.score.power, t)};
}

// 2. all at -> or: Sub(all->or) + Del(at), checked against exhaustive enumeration.
Outcome all_at_or() {
  const auto r = fixture::phones("all at");
  const auto h = fixture::phones("or");
  const auto a = align_phones(r.tokens, h.tokens);
  const auto oracle = oracle::enumerate_phone_alignments(r.tokens, h.tokens, true);
  const auto s = recombine(a, r, h);
  const bool labels = s.blocks.size() == 2 && s.blocks[0] == AlignedBlock{0, 1, 0, 1, AlignLabel::Sub} &&
                      s.blocks[1] == AlignedBlock{1, 1, 1, 0, AlignLabel::Del};
  const bool matches_oracle = a.cost == oracle.min_cost && interior_gap_count(a, r.tokens, h.tokens) == oracle.min_gaps &&
                              oracle::move_string(a) == oracle.best.moves;
  // Every gap-minimal optimal path leads to the same word labels.
  bool all_minimal_agree = true;
  for (const auto& p : oracle.all_optimal) {
    if (p.gaps != oracle.min_gaps) continue;
    PhoneAlignment pa;
    pa.cost = p.cost;
    std::uint32_t i = 0, j = 0;
    for (std::size_t k = 0; k < p.moves.size(); ++k) {
      PhoneStep st;
      st.op = p.ops[k];
      if (p.moves[k] != '2') st.ref = i++;
      if (p.moves[k] != '1') st.hyp = j++;
      pa.steps.push_back(st);
    }
    all_minimal_agree = all_minimal_agree && recombine(pa, r, h).blocks == s.blocks;
  }
  return {labels && matches_oracle && all_minimal_agree,
          fmt::format("optimal paths={} min gaps={} chosen gaps={} labels={}", oracle.optimal_paths, oracle.min_gaps,
                      interior_gap_count(a, r.tokens, h.tokens), labels ? "Sub+Del" : "other")};
}

// 3. No boundary or vowel/consonant substitutions on random instances.
Outcome constraint_suite() {
  std::mt19937 rng(20170321);
  const std::size_t instances = 10000;
  std::size_t boundary_subs = 0, class_subs = 0, broken = 0;
  for (std::size_t n = 0; n < instances; ++n) {
    const auto r = fixture::random_phone_sequence(rng, 20, 6, 10);
    const auto h = fixture::random_phone_sequence(rng, 20, 6, 10);
    const auto a = align_phones(r.tokens, h.tokens);
    for (const auto& s : a.steps) {
      if (s.op != EditOp::Sub) continue;
      const auto& x = r.tokens[*s.ref].payload;
      const auto& y = h.tokens[*s.hyp].payload;
      if (x.is_boundary() || y.is_boundary()) {
        ++boundary_subs;
      } else if (x.phone.is_vowel() != y.phone.is_vowel()) {
        ++class_subs;
      }
    }
    try {
      check_phone_alignment(a, r.tokens, h.tokens);
    } catch (const InvariantError&) {
      ++broken;
    }
  }
  return {boundary_subs == 0 && class_subs == 0 && broken == 0,
          fmt::format("instances={} boundary subs={} vowel/consonant subs={} invalid={}", instances, boundary_subs,
                      class_subs, broken)};
}

// 4. Cost and interior gaps equal the exhaustive optimum, <= 12 tokens per side.
Outcome oracle_equivalence() {
  const auto start = Clock::now();
  std::mt19937 rng(4242);
  const std::size_t instances = 20000;
  std::size_t cost_mismatch = 0, gap_mismatch = 0, longest = 0;
  for (std::size_t n = 0; n < instances; ++n) {
    const auto r = fixture::random_phone_sequence(rng, 12);
    const auto h = fixture::random_phone_sequence(rng, 12);
    longest = std::max({longest, r.tokens.size(), h.tokens.size()});
    const auto a = align_phones(r.tokens, h.tokens);
    const auto oracle = oracle::enumerate_phone_alignments(r.tokens, h.tokens);
    if (a.cost != oracle.min_cost) ++cost_mismatch;
    if (interior_gap_count(a, r.tokens, h.tokens) != oracle.min_gaps) ++gap_mismatch;
  }
  const double t = seconds_since(start);
  return {cost_mismatch == 0 && gap_mismatch == 0 && longest <= 12 && t < 60.0,
          fmt::format("instances={} max tokens={} cost mismatches={} gap mismatches={} time={:.2f}s", instances, longest,
                      cost_mismatch, gap_mismatch, t)};
}

// 5. S+D+I+SS equals the word-level Levenshtein distance.
Outcome numerator_equality() {
  const auto utts = synthetic_utterances(500, 1, 5);
  std::size_t mismatches = 0, spans = 0;
  for (const auto& u : utts) {
    const auto r = score_utterance(u, shipped_lexicon(), Annotator{}, ScoreOptions{});
    if (r.score.counts_power.errors() != oracle::levenshtein(u.ref, u.hyp)) ++mismatches;
    spans += r.score.spans.spans;
  }
  return {mismatches == 0 && utts.size() == 500,
          fmt::format("utterances={} mismatches={} substitution spans={}", utts.size(), mismatches, spans)};
}

// 6. The confusion-pair table, POWER side.
Outcome confusion_pairs() {
  struct Case {
    const char* ref;
    const char* hyp;
    const char* ref_side;
    const char* hyp_side;
  };
  const std::vector<Case> cases = {
      {"well a day then", "well today then", "a day", "today"},
      {"well ascending then", "well and sending then", "ascending", "and sending"},
      {"well anesthetize then", "well and decent size then", "anesthetize", "and decent size"},
      {"well butchering then", "well the maturing then", "butchering", "maturing"},
      {"well centigrade then", "well cents a great then", "centigrade", "cents a great"},
      {"well crude leaf then", "well crudely then", "crude leaf", "crudely"},
      {"well cyclones then", "well soy clones then", "cyclones", "soy clones"},
      {"well face-to-face then", "well face to face then", "face-to-face", "face to face"},
      {"well of anatomic then", "well obama panic then", "of anatomic", "obama panic"},
  };
  std::size_t reproduced = 0;
  std::string missing;
  for (const auto& c : cases) {
    const Utterance u{"c", "s", words(c.ref), words(c.hyp)};
    const auto run = run_score(std::vector<Utterance>{u}, shipped_lexicon(), Annotator{}, ScoreOptions{});
    bool found = false;
    for (const auto& p : run.confusions) found = found || (p.ref == c.ref_side && p.hyp == c.hyp_side);
    if (found) {
      ++reproduced;
    } else {
      missing += fmt::format(" [{} -> {}]", c.ref_side, c.hyp_side);
    }
  }
  ScoreOptions oracle;
  oracle.oracle_normalize = true;
  const Utterance f{"f", "s", words("well face-to-face then"), words("well face to face then")};
  const auto normalized = score_utterance(f, shipped_lexicon(), Annotator{}, oracle);
  const bool vanished = normalized.score.counts_power.errors() == 0 && normalized.oracle_rewrites == 1;
  return {reproduced == cases.size() && vanished,
          fmt::format("pairs reproduced={}/{}{} face-to-face after oracle normalization: {}", reproduced, cases.size(),
                      missing, vanished ? "gone" : "still present")};
}

// 7. Feature rows decompose the POWER score.
Outcome feature_decomposition() {
  const auto run = run_score(synthetic_utterances(300, 3, 7), shipped_lexicon(), Annotator{}, ScoreOptions{});
  const auto rows = feature_rows(run.utterances);
  std::size_t basic_bad = 0, typed_bad = 0, text_bad = 0;
  double worst = 0;
  for (const auto& r : rows) {
    double basic = 0, typed = 0;
    for (double v : r.basic) basic += v;
    for (double v : r.typed) typed += v;
    worst = std::max({worst, std::abs(basic - r.power), std::abs(typed - r.power)});
    if (std::abs(basic - r.power) > 1e-9) ++basic_bad;
    if (std::abs(typed - r.power) > 1e-9) ++typed_bad;
  }
  // The rendered CSV carries 6 decimals; each printed column is off by at most 5e-7.
  const auto csv = render_features(rows);
  std::size_t line_no = 0;
  for (auto line : split_lines(csv)) {
    if (line_no++ == 0 || line.empty()) continue;
    std::vector<double> v;
    std::size_t pos = 0;
    for (int col = 0; pos != std::string_view::npos; ++col) {
      const auto next = line.find(',', pos);
      if (col >= 3) v.push_back(std::stod(std::string(line.substr(pos, next - pos))));
      pos = next == std::string_view::npos ? next : next + 1;
    }
    double basic = 0, typed = 0;
    for (std::size_t k = 2; k < 6; ++k) basic += v[k];
    for (std::size_t k = 6; k < v.size(); ++k) typed += v[k];
    if (std::abs(basic - v[1]) > 5 * 5e-7 || std::abs(typed - v[1]) > 17 * 5e-7) ++text_bad;
  }
  return {!rows.empty() && basic_bad == 0 && typed_bad == 0 && text_bad == 0,
          fmt::format("rows={} basic violations={} typed violations={} max |sum-power|={:.2e} rendered-row violations={}",
                      rows.size(), basic_bad, typed_bad, worst, text_bad)};
}

std::string all_reports(const ScoreRun& run) {
  return render_summary(run.summary, ReportFormat::Text) + render_summary(run.summary, ReportFormat::Csv) +
         render_utterance_scores(run.utterances, ReportFormat::Csv) +
         render_confusions(run.confusions, ReportFormat::Csv) + render_alignments(run.utterances) +
         render_features(feature_rows(run.utterances));
}

#ifdef POWER_CLI
int run_cli(const std::string& args) {
  const int status = std::system((std::string(POWER_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}
#endif

// 8. One worker and eight workers give byte-identical output.
Outcome determinism() {
  const auto utts = synthetic_utterances(400, 3, 8);
  ScoreOptions one;
  ScoreOptions eight;
  eight.workers = 8;
  const auto a = all_reports(run_score(utts, shipped_lexicon(), Annotator{}, one));
  const auto b = all_reports(run_score(utts, shipped_lexicon(), Annotator{}, eight));
  bool same = a == b;
  std::string cli = "not built";
#ifdef POWER_CLI
  fixture::SyntheticOptions o;
  o.references = 400;
  o.systems = 3;
  o.seed = 8;
  const auto dir = fixture::scratch_dir("acceptance_determinism");
  const auto corpus = fixture::make_synthetic_corpus(fixture::dictionary_vocabulary(fixture::kDictPath), o);
  const auto hyps = fixture::write_synthetic_corpus(corpus, dir);
  std::string files = (dir / "ref.tsv").string();
  for (const auto& h : hyps) files += " " + h.string();
  bool cli_same = true;
  for (const char* format : {"text", "csv"}) {
    const auto base = fmt::format("score --dict {} {} --alignments --format {} --out ", fixture::kDictPath.string(), files, format);
    const int c1 = run_cli(base + (dir / "w1").string() + " --workers 1");
    const int c8 = run_cli(base + (dir / "w8").string() + " --workers 8");
    cli_same = cli_same && c1 == 0 && c8 == 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir / "w1")) {
      cli_same = cli_same && read_text_file(entry.path()) == read_text_file(dir / "w8" / entry.path().filename());
    }
  }
  cli = cli_same ? "identical" : "different";
  same = same && cli_same;
#endif
  return {same, fmt::format("utterances={} report bytes={} library outputs {}; CLI outputs {}", utts.size(), a.size(),
                            a == b ? "identical" : "different", cli)};
}

// 9. 580 references x 8 hypothesis files -> 4,640 feature rows.
Outcome structural_replication() {
  fixture::SyntheticOptions o;
  o.references = 580;
  o.systems = 8;
  o.seed = 2013;
  const auto dir = fixture::scratch_dir("acceptance_structure");
  const auto corpus = fixture::make_synthetic_corpus(fixture::dictionary_vocabulary(fixture::kDictPath), o);
  const auto hyps = fixture::write_synthetic_corpus(corpus, dir);
  const auto loaded = load_corpus(dir / "ref.tsv", hyps, {}, NormRules{});
  ScoreOptions so;
  so.workers = 4;
  const auto run = run_score(loaded.utterances, shipped_lexicon(), Annotator{}, so);
  const auto rows = feature_rows(run.utterances);
  return {loaded.utterances.size() == 4640 && rows.size() == 4640 && loaded.diagnostics.empty(),
          fmt::format("utterances={} feature rows={} diagnostics={}", loaded.utterances.size(), rows.size(),
                      loaded.diagnostics.size())};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"anatomy -> 'and that to me' is one 1:4 substitution span, SS=4, under 1 s", anatomy_span},
      {"'all at' -> 'or' resolves to Sub(all->or) + Del(at), matching brute force", all_at_or},
      {">=10,000 random phone alignments without forbidden substitutions", constraint_suite},
      {"cost and interior gaps equal the exhaustive optimum (<=12 tokens), under 60 s", oracle_equivalence},
      {"POWER numerator equals Levenshtein distance on 500 synthetic utterances", numerator_equality},
      {"nine confusion-table pairs reproduced; face-to-face removed by oracle normalization", confusion_pairs},
      {"feature rows decompose power (basic and typed columns, 1e-9)", feature_decomposition},
      {"1 vs 8 workers give byte-identical reports", determinism},
      {"580 references x 8 hypothesis files give 4,640 feature rows", structural_replication},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s [%zu] %s -- %s\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures), criteria.size());
  return failures == 0 ? 0 : 1;
}
