#include "power/scoring.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace power {

double error_rate(std::size_t errors, std::size_t ref_len) noexcept {
  if (ref_len == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(errors) / static_cast<double>(ref_len);
}

double ErrorCounts::rate() const noexcept { return error_rate(errors(), L); }

ErrorCounts& ErrorCounts::operator+=(const ErrorCounts& other) {
  S += other.S;
  D += other.D;
  I += other.I;
  SS += other.SS;
  L += other.L;
  return *this;
}

namespace {

ErrorCounts tally(const WordAlignment& alignment, bool allow_spans) {
  ErrorCounts c;
  c.L = alignment.ref_len;
  for (const auto& b : alignment.blocks) {
    switch (b.label) {
      case AlignLabel::Correct: break;
      case AlignLabel::Sub: ++c.S; break;
      case AlignLabel::Del: ++c.D; break;
      case AlignLabel::Ins: ++c.I; break;
      case AlignLabel::SubSpan:
        if (!allow_spans) throw InvariantError("word-level alignment holds a substitution span");
        c.SS += b.weight();
        break;
    }
  }
  return c;
}

}  // namespace

ErrorCounts score_wer(const WordAlignment& alignment) { return tally(alignment, false); }
ErrorCounts score_power(const WordAlignment& alignment) { return tally(alignment, true); }

SpanStats& SpanStats::operator+=(const SpanStats& other) {
  spans += other.spans;
  ref_words += other.ref_words;
  hyp_words += other.hyp_words;
  multi_ref += other.multi_ref;
  multi_hyp += other.multi_hyp;
  multi_both += other.multi_both;
  return *this;
}

SpanStats span_stats(const WordAlignment& alignment) {
  SpanStats s;
  for (const auto& b : alignment.blocks) {
    if (b.label != AlignLabel::SubSpan) continue;
    ++s.spans;
    s.ref_words += b.ref_len;
    s.hyp_words += b.hyp_len;
    if (b.ref_len > 1) ++s.multi_ref;
    if (b.hyp_len > 1) ++s.multi_hyp;
    if (b.ref_len > 1 && b.hyp_len > 1) ++s.multi_both;
  }
  return s;
}

std::array<double, 4> basic_proportions(const ErrorCounts& counts) {
  std::array<double, 4> out{};
  const std::size_t total = counts.errors();
  if (total == 0) return out;
  const double t = static_cast<double>(total);
  out[0] = static_cast<double>(counts.S) / t;
  out[1] = static_cast<double>(counts.D) / t;
  out[2] = static_cast<double>(counts.I) / t;
  out[3] = static_cast<double>(counts.SS) / t;
  return out;
}

std::array<double, kTypedKeyCount> typed_proportions(const TypedCounts& counts) {
  std::array<double, kTypedKeyCount> out{};
  const std::size_t total = counts.total();
  if (total == 0) return out;
  for (std::size_t k = 0; k < kTypedKeyCount; ++k) {
    out[k] = static_cast<double>(counts.counts[k]) / static_cast<double>(total);
  }
  return out;
}

MeanSe mean_se(std::span<const double> values) {
  MeanSe r;
  if (values.empty()) return r;
  const double n = static_cast<double>(values.size());
  r.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  if (values.size() < 2) return r;
  double ss = 0.0;
  for (double v : values) ss += (v - r.mean) * (v - r.mean);
  r.se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  return r;
}

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

template <std::size_t N, typename Get>
std::array<MeanSe, N> across(const std::vector<SystemSummary>& systems, Get get) {
  std::array<MeanSe, N> out{};
  std::vector<double> column(systems.size());
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t s = 0; s < systems.size(); ++s) column[s] = get(systems[s])[k];
    out[k] = mean_se(column);
  }
  return out;
}

}  // namespace

CorpusSummary aggregate(std::span<const UtteranceScore> scores, Diagnostics* warnings) {
  CorpusSummary summary;
  std::map<std::string, SystemSummary> by_system;
  for (const auto& u : scores) {
    if (u.counts_wer.L == 0) {
      ++summary.excluded;
      if (warnings) {
        warnings->push_back({Severity::Warning, u.utt_id + "/" + u.sys_id, 0,
                             "empty reference; utterance excluded from aggregation"});
      }
      continue;
    }
    auto& s = by_system[u.sys_id];
    s.sys_id = u.sys_id;
    ++s.utterances;
    s.ref_words += u.counts_wer.L;
    s.hyp_words += u.hyp_len;
    s.hyp_open += u.hyp_open;
    s.hyp_closed += u.hyp_closed;
    s.wer += u.counts_wer;
    s.power += u.counts_power;
    s.typed_wer += u.typed_wer;
    s.typed_power += u.typed_power;
    s.spans += u.spans;
  }
  if (by_system.empty()) throw ArgumentError("no scored utterances to aggregate");

  for (auto& [id, s] : by_system) {
    s.wer_basic = basic_proportions(s.wer);
    s.power_basic = basic_proportions(s.power);
    s.wer_typed = typed_proportions(s.typed_wer);
    s.power_typed = typed_proportions(s.typed_power);
    s.span_fractions = {ratio(s.spans.ref_words, s.ref_words), ratio(s.spans.hyp_words, s.hyp_words),
                        ratio(s.spans.multi_ref, s.spans.spans), ratio(s.spans.multi_hyp, s.spans.spans),
                        ratio(s.spans.multi_both, s.spans.spans)};
    summary.systems.push_back(std::move(s));
  }
  summary.wer_basic = across<4>(summary.systems, [](const SystemSummary& s) { return s.wer_basic; });
  summary.power_basic = across<4>(summary.systems, [](const SystemSummary& s) { return s.power_basic; });
  summary.wer_typed = across<kTypedKeyCount>(summary.systems, [](const SystemSummary& s) { return s.wer_typed; });
  summary.power_typed = across<kTypedKeyCount>(summary.systems, [](const SystemSummary& s) { return s.power_typed; });
  summary.span_fractions = across<5>(summary.systems, [](const SystemSummary& s) { return s.span_fractions; });
  return summary;
}

}  // namespace power
