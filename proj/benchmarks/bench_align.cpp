#include <benchmark/benchmark.h>

#include <random>

#include "power/phone_align.hpp"
#include "power/pipeline.hpp"
#include "power/word_align.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic_corpus.hpp"

using namespace power;

namespace {

std::vector<Utterance> corpus(std::size_t refs, std::size_t systems, std::size_t max_words) {
  fixture::SyntheticOptions o;
  o.references = refs;
  o.systems = systems;
  o.seed = 11;
  o.max_words = max_words;
  return fixture::make_synthetic_corpus(fixture::dictionary_vocabulary(fixture::kDictPath), o).utterances();
}

void BM_AlignWords(benchmark::State& state) {
  const auto utts = corpus(64, 1, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (const auto& u : utts) benchmark::DoNotOptimize(align_words(u.ref, u.hyp));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(utts.size()));
}
BENCHMARK(BM_AlignWords)->Arg(8)->Arg(32)->Arg(128);

void BM_AlignPhones(benchmark::State& state) {
  const auto& lex = fixture::shipped_lexicon();
  const auto utts = corpus(64, 1, static_cast<std::size_t>(state.range(0)));
  std::vector<std::pair<PhoneSequence, PhoneSequence>> pairs;
  for (const auto& u : utts) {
    pairs.emplace_back(build_phone_sequence(u.ref, lex), build_phone_sequence(u.hyp, lex));
  }
  for (auto _ : state) {
    for (const auto& [r, h] : pairs) benchmark::DoNotOptimize(align_phones(r.tokens, h.tokens));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(pairs.size()));
}
BENCHMARK(BM_AlignPhones)->Arg(8)->Arg(32)->Arg(128);

void BM_ScoreCorpus(benchmark::State& state) {
  const auto utts = corpus(200, 4, 14);
  ScoreOptions o;
  o.workers = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_score(utts, fixture::shipped_lexicon(), Annotator{}, o));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(utts.size()));
}
BENCHMARK(BM_ScoreCorpus)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
