#include <gtest/gtest.h>

#include "power/corpus.hpp"
#include "power/text_io.hpp"
#include "support/fixtures.hpp"

using namespace power;
namespace fs = std::filesystem;

namespace {

fs::path write(const fs::path& dir, const std::string& name, const std::string& text) {
  write_text_file(dir / name, text);
  return dir / name;
}

std::size_t count(const Diagnostics& d, Severity s) {
  return static_cast<std::size_t>(std::count_if(d.begin(), d.end(), [&](const Diagnostic& x) { return x.severity == s; }));
}

}  // namespace

TEST(ReadTranscript, MissingTabIsARecoverableError) {
  const auto dir = fixture::scratch_dir("read_transcript");
  const auto p = write(dir, "ref.tsv", "u1\thello world\nno tab here\n\nu2\t\n");
  Diagnostics d;
  const auto entries = read_transcript(p, &d);
  ASSERT_EQ(entries.size(), 2u);
  EXPECT_EQ(entries[1].utt_id, "u2");
  EXPECT_EQ(entries[1].text, "");
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d[0].severity, Severity::Error);
  EXPECT_EQ(d[0].line, 2u);
}

TEST(ReadTranscript, DuplicateIdsAreFatal) {
  const auto dir = fixture::scratch_dir("read_transcript_dup");
  const auto p = write(dir, "ref.tsv", "u1\ta\nu1\tb\n");
  EXPECT_THROW(read_transcript(p, nullptr), LoadError);
  EXPECT_THROW(read_transcript(dir / "missing.tsv", nullptr), LoadError);
}

TEST(LoadCorpus, FullOverlap) {
  const auto dir = fixture::scratch_dir("load_corpus");
  const auto ref = write(dir, "ref.tsv", "u1\tThe Colour\nu2\tb\nu3\tc\n");
  const std::vector<fs::path> hyps{write(dir, "alpha.tsv", "u3\tc\nu1\tthe color\nu2\tx\n"),
                                   write(dir, "beta.tsv", "u1\ta\nu2\tb\nu3\tc\n")};
  const auto corpus = load_corpus(ref, hyps, {}, NormRules{});
  ASSERT_EQ(corpus.utterances.size(), 6u);
  EXPECT_TRUE(corpus.diagnostics.empty());
  EXPECT_EQ(corpus.utterances[0].utt_id, "u1");
  EXPECT_EQ(corpus.utterances[0].sys_id, "alpha");
  EXPECT_EQ(corpus.utterances[0].ref, fixture::words("the color"));
  EXPECT_EQ(corpus.utterances[1].sys_id, "beta");
}

TEST(LoadCorpus, UnknownAndMissingIds) {
  const auto dir = fixture::scratch_dir("load_corpus_unknown");
  const auto ref = write(dir, "ref.tsv", "u1\ta\nu2\tb\n");
  const std::vector<fs::path> hyps{write(dir, "sys.tsv", "u1\ta\nu7\tz\n")};
  const auto corpus = load_corpus(ref, hyps, {}, NormRules{});
  EXPECT_EQ(corpus.utterances.size(), 1u);
  EXPECT_EQ(count(corpus.diagnostics, Severity::Error), 1u);
  EXPECT_EQ(count(corpus.diagnostics, Severity::Warning), 1u);
  const auto err = std::find_if(corpus.diagnostics.begin(), corpus.diagnostics.end(),
                                [](const Diagnostic& d) { return d.severity == Severity::Error; });
  EXPECT_NE(err->message.find("u7"), std::string::npos);
}

TEST(LoadCorpus, SystemIdOverrides) {
  const auto dir = fixture::scratch_dir("load_corpus_ids");
  const auto ref = write(dir, "ref.tsv", "u1\ta\n");
  const std::vector<fs::path> hyps{write(dir, "h1.tsv", "u1\ta\n"), write(dir, "h2.tsv", "u1\tb\n")};
  const std::vector<std::string> ids{"fbk", "kit"};
  const auto corpus = load_corpus(ref, hyps, ids, NormRules{});
  ASSERT_EQ(corpus.utterances.size(), 2u);
  EXPECT_EQ(corpus.utterances[0].sys_id, "fbk");
  EXPECT_EQ(corpus.utterances[1].sys_id, "kit");
  const std::vector<std::string> same{"x", "x"};
  EXPECT_THROW(load_corpus(ref, hyps, same, NormRules{}), LoadError);
  const std::vector<std::string> short_list{"x"};
  EXPECT_THROW(load_corpus(ref, hyps, short_list, NormRules{}), ArgumentError);
}
