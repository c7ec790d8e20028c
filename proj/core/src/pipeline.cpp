#include "power/pipeline.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>
#include <tuple>

#include "power/normalize.hpp"
#include "power/phone_align.hpp"

namespace power {

UtteranceResult score_utterance(const Utterance& utterance, const Lexicon& lexicon, const Annotator& annotator,
                                const ScoreOptions& options) {
  UtteranceResult r;
  r.utterance = utterance;
  const Words& ref = r.utterance.ref;
  Words& hyp = r.utterance.hyp;

  if (options.oracle_normalize) {
    const auto first = realign_error_spans(align_words(ref, hyp), ref, hyp, lexicon);
    hyp = oracle_normalize(ref, hyp, first, lexicon, &r.oracle_rewrites);
  }

  r.wer_alignment = align_words(ref, hyp);
  check_alignment(r.wer_alignment, ref, hyp);
  if (options.phonetic) {
    r.power_alignment = realign_error_spans(r.wer_alignment, ref, hyp, lexicon, &r.diagnostics);
    check_alignment(r.power_alignment, ref, hyp);
  } else {
    r.power_alignment = r.wer_alignment;
  }

  auto& s = r.score;
  s.utt_id = utterance.utt_id;
  s.sys_id = utterance.sys_id;
  s.hyp_len = hyp.size();
  for (const auto& w : hyp) {
    if (annotator.classes.classify(w) == WordClass::Closed) {
      ++s.hyp_closed;
    } else {
      ++s.hyp_open;
    }
  }
  s.counts_wer = score_wer(r.wer_alignment);
  s.counts_power = score_power(r.power_alignment);
  if (s.counts_power.errors() != s.counts_wer.errors()) {
    throw InvariantError(fmt::format("{}/{}: POWER numerator {} differs from word distance {}", utterance.utt_id,
                                     utterance.sys_id, s.counts_power.errors(), s.counts_wer.errors()));
  }
  s.wer = s.counts_wer.rate();
  s.power = s.counts_power.rate();
  s.typed_wer = type_errors(r.wer_alignment, ref, hyp, annotator);
  s.typed_power = type_errors(r.power_alignment, ref, hyp, annotator);
  if (s.typed_power.total() != s.counts_power.errors()) {
    throw InvariantError(fmt::format("{}/{}: typed error counts do not sum to the error total", utterance.utt_id,
                                     utterance.sys_id));
  }
  s.spans = span_stats(r.power_alignment);

  for (auto& d : r.diagnostics) {
    if (d.source.empty()) d.source = utterance.utt_id + "/" + utterance.sys_id;
  }
  return r;
}

ScoreRun run_score(std::span<const Utterance> corpus, const Lexicon& lexicon, const Annotator& annotator,
                   const ScoreOptions& options) {
  if (corpus.empty()) throw ArgumentError("nothing to score: the corpus is empty");

  const std::size_t n = corpus.size();
  std::vector<UtteranceResult> results(n);
  std::vector<std::exception_ptr> failures(n);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        results[k] = score_utterance(corpus[k], lexicon, annotator, options);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, n);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  std::sort(results.begin(), results.end(), [](const UtteranceResult& a, const UtteranceResult& b) {
    return std::tie(a.utterance.utt_id, a.utterance.sys_id) < std::tie(b.utterance.utt_id, b.utterance.sys_id);
  });

  ScoreRun run;
  std::vector<UtteranceScore> scores;
  scores.reserve(n);
  ConfusionCounter confusions;
  for (const auto& r : results) {
    run.diagnostics.insert(run.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
    scores.push_back(r.score);
    confusions.add(r.power_alignment, r.utterance.ref, r.utterance.hyp);
  }
  run.summary = aggregate(scores, &run.diagnostics);
  run.confusions = confusions.ranked();
  run.utterances = std::move(results);
  return run;
}

}  // namespace power
