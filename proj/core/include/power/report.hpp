#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "power/annotate.hpp"
#include "power/pipeline.hpp"
#include "power/scoring.hpp"

namespace power {

enum class ReportFormat { Text, Csv };

std::string render_summary(const CorpusSummary& summary, ReportFormat format);
std::string render_utterance_scores(std::span<const UtteranceResult> results, ReportFormat format);
std::string render_confusions(std::span<const ConfusionPair> pairs, ReportFormat format);
// One TSV line per aligned block of both alignments.
std::string render_alignments(std::span<const UtteranceResult> results);

// Per-utterance regression features; every count is divided by ref_len.
struct FeatureRow {
  std::string utt_id;
  std::string sys_id;
  std::size_t ref_len = 0;
  double wer = 0.0;
  double power = 0.0;
  std::array<double, 4> basic{};  // WER.S, WER.D, WER.I, WER.SS
  std::array<double, kTypedKeyCount> typed{};
};

std::vector<std::string> feature_header();
// Sorted by (utt_id, sys_id); empty-reference utterances are dropped with a warning.
std::vector<FeatureRow> feature_rows(std::span<const UtteranceResult> results, Diagnostics* warnings = nullptr);
std::string render_features(std::span<const FeatureRow> rows);
// Throws IoError if the file cannot be written.
void export_features(std::span<const UtteranceResult> results, const std::filesystem::path& out_path,
                     Diagnostics* warnings = nullptr);

// RFC 4180 quoting when the field needs it.
std::string csv_field(std::string_view field);

}  // namespace power
