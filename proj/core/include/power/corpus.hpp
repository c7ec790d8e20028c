#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "power/error.hpp"
#include "power/normalize.hpp"
#include "power/word_align.hpp"

namespace power {

struct Utterance {
  std::string utt_id;
  std::string sys_id;
  Words ref;
  Words hyp;
};

struct TranscriptEntry {
  std::string utt_id;
  std::string text;
  std::size_t line = 0;
};

// "UTTID<TAB>text" lines. Blank lines are skipped; a line without a TAB is
// reported as an error and skipped. A repeated UTTID is a LoadError.
std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path, Diagnostics* diagnostics);

struct Corpus {
  std::vector<Utterance> utterances;
  Diagnostics diagnostics;
};

// Joins every hypothesis file against the reference on UTTID. sys_id is the
// file stem unless `sys_ids` supplies one per hypothesis file. Unknown
// hypothesis IDs are reported as errors, references missing from a system
// as warnings; a repeated (utt_id, sys_id) is a LoadError.
Corpus load_corpus(const std::filesystem::path& ref_path, std::span<const std::filesystem::path> hyp_paths,
                   std::span<const std::string> sys_ids, const NormRules& rules);

}  // namespace power
