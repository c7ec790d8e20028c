#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include "power/text_io.hpp"
#include "support/fixtures.hpp"

using namespace power;
namespace fs = std::filesystem;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(POWER_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return (fixture::kDataDir / name).string(); }
std::string dict() { return "--dict " + fixture::kDictPath.string(); }
std::string corpus() { return data("ref.tsv") + " " + data("sysA.tsv") + " " + data("sysB.tsv"); }

}  // namespace

TEST(Cli, ScoreWritesReports) {
  const auto dir = fixture::scratch_dir("cli_score");
  const auto r = run("score " + dict() + " " + corpus() + " --alignments --format csv --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0);
  for (auto f : {"summary.csv", "utterances.csv", "confusions.csv", "alignments.tsv"}) EXPECT_TRUE(fs::exists(dir / f)) << f;
  EXPECT_NE(read_text_file(dir / "alignments.tsv").find("stanford1\tsysA\tPOWER\tSS\tanatomy\tand that to me"),
            std::string::npos);
}

TEST(Cli, ScoreToStdout) {
  const auto r = run("score " + dict() + " " + corpus());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("sysA"), std::string::npos);
  EXPECT_NE(r.out.find("SS.open_span"), std::string::npos);
}

TEST(Cli, FeaturesCsv) {
  const auto r = run("features " + dict() + " " + corpus());
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.rfind("utt_id,sys_id,ref_len,wer,power,WER.S,WER.D,WER.I,WER.SS,D.closed,", 0), 0u);
  // 5 references with words x 2 systems (sysB has no "empty" line, sysA's is dropped).
  EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 11);
}

TEST(Cli, ConfusionsAndSysIds) {
  const auto r = run("confusions " + dict() + " " + corpus() + " --sys-id fbk --sys-id kit --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_NE(r.out.find("face-to-face,face to face"), std::string::npos);
  EXPECT_NE(r.out.find("centigrade,cents a great"), std::string::npos);
}

TEST(Cli, OracleNormalizeRemovesFormattingConfusions) {
  const auto r = run("confusions " + dict() + " " + corpus() + " --oracle-normalize --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.find("face-to-face"), std::string::npos);
  EXPECT_NE(r.out.find("centigrade"), std::string::npos);
}

TEST(Cli, NormalizeWritesOneFilePerSystem) {
  const auto dir = fixture::scratch_dir("cli_normalize");
  const auto r = run("normalize " + dict() + " " + corpus() + " --oracle-normalize --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0);
  const auto a = read_text_file(dir / "sysA.tsv");
  EXPECT_NE(a.find("conf1\twe met face-to-face\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "sysB.tsv"));
}

TEST(Cli, NoPhoneticMakesPowerEqualWer) {
  const auto r = run("features " + dict() + " " + corpus() + " --no-phonetic");
  ASSERT_EQ(r.exit_code, 0);
  for (auto line : split_lines(r.out)) {
    if (line.empty() || line.starts_with("utt_id")) continue;
    std::vector<std::string> cols;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        cols.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    EXPECT_EQ(cols[3], cols[4]) << line;
    EXPECT_EQ(cols[8], "0.000000") << line;
  }
}

TEST(Cli, FatalInputExitsWithOne) {
  EXPECT_EQ(run("score " + corpus()).exit_code, 1);  // --dict missing
  EXPECT_EQ(run("score --dict /nonexistent.dict " + corpus()).exit_code, 1);
  const auto dir = fixture::scratch_dir("cli_dup");
  write_text_file(dir / "ref.tsv", "u1\ta\nu1\tb\n");
  EXPECT_EQ(run("score " + dict() + " " + (dir / "ref.tsv").string() + " " + data("sysA.tsv")).exit_code, 1);
  EXPECT_EQ(run("bogus").exit_code, 1);
}

TEST(Cli, RecoverableErrorsStillExitZero) {
  const auto dir = fixture::scratch_dir("cli_recoverable");
  write_text_file(dir / "hyp.tsv", "stanford1\tdr brown\nno tab\nzzz\tunknown id\n");
  EXPECT_EQ(run("score " + dict() + " " + data("ref.tsv") + " " + (dir / "hyp.tsv").string()).exit_code, 0);
}
