#include "power/report.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cmath>
#include <tuple>

#include "power/text_io.hpp"

namespace power {

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string number(double v) {
  if (std::isinf(v)) return "inf";
  return fmt::format("{:.6f}", v);
}

std::string join(std::span<const std::string> words, std::size_t begin, std::size_t len) {
  std::string out;
  for (std::size_t k = begin; k < begin + len; ++k) {
    if (k > begin) out += ' ';
    out += words[k];
  }
  return out;
}

std::string pm(const MeanSe& m) { return fmt::format("{:.4f} ± {:.4f}", m.mean, m.se); }

void summary_text(const CorpusSummary& s, std::string& out) {
  out += "Systems\n";
  out += fmt::format("{:<16} {:>6} {:>9} {:>9} {:>8} {:>10} {:>9} {:>9}\n", "sys_id", "utts", "ref_words",
                     "hyp_words", "hyp_open", "hyp_closed", "WER", "POWER");
  for (const auto& sys : s.systems) {
    out += fmt::format("{:<16} {:>6} {:>9} {:>9} {:>8} {:>10} {:>9.4f} {:>9.4f}\n", sys.sys_id, sys.utterances,
                       sys.ref_words, sys.hyp_words, sys.hyp_open, sys.hyp_closed, sys.wer.rate(), sys.power.rate());
  }
  if (s.excluded > 0) out += fmt::format("({} utterances with an empty reference excluded)\n", s.excluded);

  out += "\nError types (mean ± standard error across systems)\n";
  out += fmt::format("{:<26} {:>17} {:>17}\n", "type", "WER", "POWER");
  for (std::size_t k = 0; k < 4; ++k) {
    out += fmt::format("{:<26} {:>17} {:>17}\n", kBasicTypeNames[k], pm(s.wer_basic[k]), pm(s.power_basic[k]));
  }
  out += "\nTyped errors (mean ± standard error across systems)\n";
  out += fmt::format("{:<26} {:>17} {:>17}\n", "type", "WER", "POWER");
  for (auto key : all_typed_keys()) {
    const auto k = static_cast<std::size_t>(key);
    out += fmt::format("{:<26} {:>17} {:>17}\n", key_name(key), pm(s.wer_typed[k]), pm(s.power_typed[k]));
  }
  out += "\nSubstitution spans (mean ± standard error across systems)\n";
  for (std::size_t k = 0; k < kSpanFractionNames.size(); ++k) {
    out += fmt::format("{:<26} {:>17}\n", kSpanFractionNames[k], pm(s.span_fractions[k]));
  }
}

void summary_csv(const CorpusSummary& s, std::string& out) {
  out += "scope,metric,key,value,se\n";
  auto row = [&](std::string_view scope, std::string_view metric, std::string_view key, double value,
                 std::string_view se) {
    out += fmt::format("{},{},{},{},{}\n", csv_field(scope), metric, key, number(value), se);
  };
  for (const auto& sys : s.systems) {
    row(sys.sys_id, "count", "utterances", static_cast<double>(sys.utterances), "");
    row(sys.sys_id, "count", "ref_words", static_cast<double>(sys.ref_words), "");
    row(sys.sys_id, "count", "hyp_words", static_cast<double>(sys.hyp_words), "");
    row(sys.sys_id, "count", "hyp_open", static_cast<double>(sys.hyp_open), "");
    row(sys.sys_id, "count", "hyp_closed", static_cast<double>(sys.hyp_closed), "");
    row(sys.sys_id, "WER", "rate", sys.wer.rate(), "");
    row(sys.sys_id, "POWER", "rate", sys.power.rate(), "");
    for (std::size_t k = 0; k < 4; ++k) {
      row(sys.sys_id, "WER", kBasicTypeNames[k], sys.wer_basic[k], "");
      row(sys.sys_id, "POWER", kBasicTypeNames[k], sys.power_basic[k], "");
    }
    for (auto key : all_typed_keys()) {
      const auto k = static_cast<std::size_t>(key);
      row(sys.sys_id, "WER", key_name(key), sys.wer_typed[k], "");
      row(sys.sys_id, "POWER", key_name(key), sys.power_typed[k], "");
    }
    for (std::size_t k = 0; k < kSpanFractionNames.size(); ++k) {
      row(sys.sys_id, "span", kSpanFractionNames[k], sys.span_fractions[k], "");
    }
  }
  for (std::size_t k = 0; k < 4; ++k) {
    row("ALL", "WER", kBasicTypeNames[k], s.wer_basic[k].mean, number(s.wer_basic[k].se));
    row("ALL", "POWER", kBasicTypeNames[k], s.power_basic[k].mean, number(s.power_basic[k].se));
  }
  for (auto key : all_typed_keys()) {
    const auto k = static_cast<std::size_t>(key);
    row("ALL", "WER", key_name(key), s.wer_typed[k].mean, number(s.wer_typed[k].se));
    row("ALL", "POWER", key_name(key), s.power_typed[k].mean, number(s.power_typed[k].se));
  }
  for (std::size_t k = 0; k < kSpanFractionNames.size(); ++k) {
    row("ALL", "span", kSpanFractionNames[k], s.span_fractions[k].mean, number(s.span_fractions[k].se));
  }
}

}  // namespace

std::string render_summary(const CorpusSummary& summary, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Text) {
    summary_text(summary, out);
  } else {
    summary_csv(summary, out);
  }
  return out;
}

std::string render_utterance_scores(std::span<const UtteranceResult> results, ReportFormat format) {
  std::string out;
  const bool csv = format == ReportFormat::Csv;
  if (csv) {
    out += "utt_id,sys_id,ref_len,hyp_len,wer,power,S,D,I,SS\n";
  } else {
    out += fmt::format("{:<20} {:<16} {:>7} {:>7} {:>9} {:>9} {:>4} {:>4} {:>4} {:>4}\n", "utt_id", "sys_id",
                       "ref_len", "hyp_len", "wer", "power", "S", "D", "I", "SS");
  }
  for (const auto& r : results) {
    const auto& s = r.score;
    const auto& c = s.counts_power;
    if (csv) {
      out += fmt::format("{},{},{},{},{},{},{},{},{},{}\n", csv_field(s.utt_id), csv_field(s.sys_id), c.L, s.hyp_len,
                         number(s.wer), number(s.power), c.S, c.D, c.I, c.SS);
    } else {
      out += fmt::format("{:<20} {:<16} {:>7} {:>7} {:>9} {:>9} {:>4} {:>4} {:>4} {:>4}\n", s.utt_id, s.sys_id, c.L,
                         s.hyp_len, number(s.wer), number(s.power), c.S, c.D, c.I, c.SS);
    }
  }
  return out;
}

std::string render_confusions(std::span<const ConfusionPair> pairs, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Csv) {
    out += "count,ref,hyp\n";
    for (const auto& p : pairs) out += fmt::format("{},{},{}\n", p.count, csv_field(p.ref), csv_field(p.hyp));
  } else {
    for (const auto& p : pairs) out += fmt::format("{:>6}  {} -> {}\n", p.count, p.ref, p.hyp);
  }
  return out;
}

std::string render_alignments(std::span<const UtteranceResult> results) {
  std::string out = "utt_id\tsys_id\tmetric\tlabel\tref\thyp\n";
  for (const auto& r : results) {
    const auto& u = r.utterance;
    for (auto [metric, alignment] : {std::pair{"WER", &r.wer_alignment}, std::pair{"POWER", &r.power_alignment}}) {
      for (const auto& b : alignment->blocks) {
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\n", u.utt_id, u.sys_id, metric, to_string(b.label),
                           join(u.ref, b.ref_begin, b.ref_len), join(u.hyp, b.hyp_begin, b.hyp_len));
      }
    }
  }
  return out;
}

std::vector<std::string> feature_header() {
  std::vector<std::string> h = {"utt_id", "sys_id", "ref_len", "wer", "power", "WER.S", "WER.D", "WER.I", "WER.SS"};
  for (auto key : all_typed_keys()) h.emplace_back(key_name(key));
  return h;
}

std::vector<FeatureRow> feature_rows(std::span<const UtteranceResult> results, Diagnostics* warnings) {
  std::vector<FeatureRow> rows;
  rows.reserve(results.size());
  for (const auto& r : results) {
    const auto& s = r.score;
    const auto& c = s.counts_power;
    if (c.L == 0) {
      if (warnings) {
        warnings->push_back({Severity::Warning, s.utt_id + "/" + s.sys_id, 0, "empty reference; no feature row"});
      }
      continue;
    }
    FeatureRow row;
    row.utt_id = s.utt_id;
    row.sys_id = s.sys_id;
    row.ref_len = c.L;
    row.wer = s.wer;
    row.power = s.power;
    const double L = static_cast<double>(c.L);
    row.basic = {static_cast<double>(c.S) / L, static_cast<double>(c.D) / L, static_cast<double>(c.I) / L,
                 static_cast<double>(c.SS) / L};
    for (std::size_t k = 0; k < kTypedKeyCount; ++k) row.typed[k] = static_cast<double>(s.typed_power.counts[k]) / L;
    rows.push_back(std::move(row));
  }
  std::sort(rows.begin(), rows.end(), [](const FeatureRow& a, const FeatureRow& b) {
    return std::tie(a.utt_id, a.sys_id) < std::tie(b.utt_id, b.sys_id);
  });
  return rows;
}

std::string render_features(std::span<const FeatureRow> rows) {
  std::string out;
  const auto header = feature_header();
  for (std::size_t k = 0; k < header.size(); ++k) {
    if (k > 0) out += ',';
    out += header[k];
  }
  out += '\n';
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{}", csv_field(r.utt_id), csv_field(r.sys_id), r.ref_len, number(r.wer),
                       number(r.power));
    for (double v : r.basic) out += ',' + number(v);
    for (double v : r.typed) out += ',' + number(v);
    out += '\n';
  }
  return out;
}

void export_features(std::span<const UtteranceResult> results, const std::filesystem::path& out_path,
                     Diagnostics* warnings) {
  write_text_file(out_path, render_features(feature_rows(results, warnings)));
}

}  // namespace power
