#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "power/annotate.hpp"
#include "power/corpus.hpp"
#include "power/error.hpp"
#include "power/lexicon.hpp"
#include "power/scoring.hpp"
#include "power/word_align.hpp"

namespace power {

struct ScoreOptions {
  bool phonetic = true;  // false: POWER columns mirror WER
  bool oracle_normalize = false;
  unsigned workers = 1;
};

struct UtteranceResult {
  Utterance utterance;  // hyp after oracle normalization when enabled
  std::size_t oracle_rewrites = 0;
  WordAlignment wer_alignment;
  WordAlignment power_alignment;
  UtteranceScore score;
  Diagnostics diagnostics;
};

// Scores one utterance: word alignment, span extraction, phonetic
// re-alignment and recombination, both metrics, typed counts. Throws
// InvariantError if the POWER numerator differs from the Levenshtein
// distance.
UtteranceResult score_utterance(const Utterance& utterance, const Lexicon& lexicon, const Annotator& annotator,
                                const ScoreOptions& options);

struct ScoreRun {
  std::vector<UtteranceResult> utterances;  // sorted by (utt_id, sys_id)
  CorpusSummary summary;
  std::vector<ConfusionPair> confusions;  // from the POWER alignments
  Diagnostics diagnostics;
};

// Scores every utterance on `options.workers` threads; output is independent
// of the worker count. Throws ArgumentError for an empty corpus.
ScoreRun run_score(std::span<const Utterance> corpus, const Lexicon& lexicon, const Annotator& annotator,
                   const ScoreOptions& options);

}  // namespace power
