#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "power/annotate.hpp"
#include "power/error.hpp"
#include "power/word_align.hpp"

namespace power {

// Error tallies over one alignment. SS holds the span-weighted count.
struct ErrorCounts {
  std::size_t S = 0;
  std::size_t D = 0;
  std::size_t I = 0;
  std::size_t SS = 0;
  std::size_t L = 0;  // reference length in words

  std::size_t errors() const noexcept { return S + D + I + SS; }
  // (S + D + I + SS) / L; +infinity when L == 0.
  double rate() const noexcept;
  ErrorCounts& operator+=(const ErrorCounts& other);
  friend bool operator==(const ErrorCounts&, const ErrorCounts&) = default;
};

// Errors / length, +infinity for an empty reference.
double error_rate(std::size_t errors, std::size_t ref_len) noexcept;

// Word-level tallies. Throws InvariantError if the alignment holds SubSpans.
ErrorCounts score_wer(const WordAlignment& alignment);
// Tallies after span recombination: SS = sum over spans of max(|ref|, |hyp|).
ErrorCounts score_power(const WordAlignment& alignment);

struct SpanStats {
  std::size_t spans = 0;
  std::size_t ref_words = 0;  // reference words inside substitution spans
  std::size_t hyp_words = 0;
  std::size_t multi_ref = 0;  // spans with more than one reference word
  std::size_t multi_hyp = 0;
  std::size_t multi_both = 0;

  SpanStats& operator+=(const SpanStats& other);
};

SpanStats span_stats(const WordAlignment& alignment);

struct UtteranceScore {
  std::string utt_id;
  std::string sys_id;
  std::size_t hyp_len = 0;
  std::size_t hyp_open = 0;
  std::size_t hyp_closed = 0;
  double wer = 0.0;
  double power = 0.0;
  ErrorCounts counts_wer;
  ErrorCounts counts_power;
  TypedCounts typed_wer;
  TypedCounts typed_power;
  SpanStats spans;
};

enum class BasicType : std::size_t { S = 0, D = 1, I = 2, SS = 3 };
inline constexpr std::array<const char*, 4> kBasicTypeNames = {"S", "D", "I", "SS"};

// Share of each basic type among all errors (all zero when there are none).
std::array<double, 4> basic_proportions(const ErrorCounts& counts);
std::array<double, kTypedKeyCount> typed_proportions(const TypedCounts& counts);

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};

// Mean and standard error (sample standard deviation / sqrt(n)); se is 0 for n < 2.
MeanSe mean_se(std::span<const double> values);

struct SystemSummary {
  std::string sys_id;
  std::size_t utterances = 0;
  std::size_t ref_words = 0;
  std::size_t hyp_words = 0;
  std::size_t hyp_open = 0;
  std::size_t hyp_closed = 0;
  ErrorCounts wer;
  ErrorCounts power;
  TypedCounts typed_wer;
  TypedCounts typed_power;
  SpanStats spans;

  std::array<double, 4> wer_basic{};
  std::array<double, 4> power_basic{};
  std::array<double, kTypedKeyCount> wer_typed{};
  std::array<double, kTypedKeyCount> power_typed{};
  // Table order: SS.ref, SS.hyp, ref>1, hyp>1, both>1.
  std::array<double, 5> span_fractions{};
};

struct CorpusSummary {
  std::vector<SystemSummary> systems;  // sorted by sys_id
  std::size_t excluded = 0;  // utterances dropped for an empty reference
  std::array<MeanSe, 4> wer_basic{};
  std::array<MeanSe, 4> power_basic{};
  std::array<MeanSe, kTypedKeyCount> wer_typed{};
  std::array<MeanSe, kTypedKeyCount> power_typed{};
  std::array<MeanSe, 5> span_fractions{};
};

inline constexpr std::array<const char*, 5> kSpanFractionNames = {"SS.ref", "SS.hyp", "SS:ref>1", "SS:hyp>1",
                                                                   "SS:ref>1&hyp>1"};

// Per-system totals and proportions, then mean and standard error across
// systems. Utterances with an empty reference are excluded with a warning.
// Throws ArgumentError when there is nothing to aggregate.
CorpusSummary aggregate(std::span<const UtteranceScore> scores, Diagnostics* warnings = nullptr);

}  // namespace power
