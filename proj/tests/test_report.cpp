#include <gtest/gtest.h>

#include "power/report.hpp"
#include "power/text_io.hpp"
#include "support/fixtures.hpp"

using namespace power;
using power::fixture::shipped_lexicon;
using power::fixture::words;

namespace {

std::vector<UtteranceResult> score_all(const std::vector<Utterance>& utts) {
  return run_score(utts, shipped_lexicon(), Annotator{}, ScoreOptions{}).utterances;
}

std::vector<Utterance> golden_corpus() {
  return {{"u1", "sysA", words("dr brown in anatomy at stanford"), words("dr brown in and that to me at stanford")},
          {"u2", "sysA", words("all at once"), words("or once")},
          {"u3", "sysA", words("the cyclones came"), words("the soy clones came")},
          {"u4", "sysA", words("a day of crude leaf"), words("today of crudely")},
          {"u5", "sysA", words("the same words"), words("the same words")}};
}

}  // namespace

TEST(Features, HeaderIsFixed) {
  const auto h = feature_header();
  std::string joined;
  for (const auto& c : h) joined += c + ",";
  EXPECT_EQ(joined,
            "utt_id,sys_id,ref_len,wer,power,WER.S,WER.D,WER.I,WER.SS,D.closed,D.open,I.closed,I.open,"
            "S.closed_closed.morph,S.closed_closed.nomorph,S.closed_open.nomorph,S.open_closed.morph,"
            "S.open_closed.nomorph,S.open_open.morph,S.open_open.nomorph,SS.closed_span,SS.open_span,"
            "SS.span_closed,SS.span_open,SS.span_span,");
}

TEST(Features, SingleInsertionOverTenWords) {
  const auto results = score_all({{"u", "s", words("a b c d e f g h i j"), words("a b c d e f g h i j k")}});
  const auto rows = feature_rows(results);
  ASSERT_EQ(rows.size(), 1u);
  const auto csv = render_features(rows);
  EXPECT_NE(csv.find("\nu,s,10,0.100000,0.100000,0.000000,0.000000,0.100000,0.000000,"), std::string::npos);
}

TEST(Features, RowsDecomposeThePowerScore) {
  for (const auto& row : feature_rows(score_all(golden_corpus()))) {
    double basic = 0, typed = 0;
    for (double v : row.basic) basic += v;
    for (double v : row.typed) typed += v;
    EXPECT_NEAR(basic, row.power, 1e-9) << row.utt_id;
    EXPECT_NEAR(typed, row.power, 1e-9) << row.utt_id;
  }
}

TEST(Features, EmptyReferencesAreDropped) {
  const auto results = score_all({{"u0", "s", {}, words("x")}, {"u1", "s", words("a"), words("a")}});
  Diagnostics warnings;
  EXPECT_EQ(feature_rows(results, &warnings).size(), 1u);
  EXPECT_EQ(warnings.size(), 1u);
}

TEST(Features, GoldenFile) {
  const auto csv = render_features(feature_rows(score_all(golden_corpus())));
  EXPECT_EQ(csv, read_text_file(fixture::kDataDir / "golden_features.csv"));
}

TEST(Features, ExportWritesTheFileOrFails) {
  const auto dir = fixture::scratch_dir("export_features");
  const auto results = score_all(golden_corpus());
  export_features(results, dir / "out" / "features.csv");
  EXPECT_EQ(read_text_file(dir / "out" / "features.csv"), render_features(feature_rows(results)));
  EXPECT_THROW(export_features(results, "/proc/power-cannot-write/features.csv"), IoError);
}

TEST(Reports, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(Reports, ConfusionsAndAlignments) {
  const auto run = run_score(golden_corpus(), shipped_lexicon(), Annotator{}, ScoreOptions{});
  const auto text = render_confusions(run.confusions, ReportFormat::Text);
  EXPECT_NE(text.find("anatomy -> and that to me"), std::string::npos);
  const auto csv = render_confusions(run.confusions, ReportFormat::Csv);
  EXPECT_EQ(csv.rfind("count,ref,hyp\n", 0), 0u);
  const auto tsv = render_alignments(run.utterances);
  EXPECT_NE(tsv.find("u1\tsysA\tPOWER\tSS\tanatomy\tand that to me\n"), std::string::npos);
  const auto summary = render_summary(run.summary, ReportFormat::Csv);
  EXPECT_NE(summary.find("sysA,POWER,SS.open_span,"), std::string::npos);
  EXPECT_NE(render_summary(run.summary, ReportFormat::Text).find("SS.span_open"), std::string::npos);
  EXPECT_NE(render_utterance_scores(run.utterances, ReportFormat::Csv).find("u1,sysA,6,9,"), std::string::npos);
}
