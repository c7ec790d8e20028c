#include "power/corpus.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "power/text_io.hpp"

namespace power {

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path, Diagnostics* diagnostics) {
  const std::string text = read_text_file(path);
  const std::string source = path.string();
  std::vector<TranscriptEntry> out;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto tab = line.find('\t');
    const auto id = tab == std::string_view::npos ? std::string_view{} : trim(line.substr(0, tab));
    if (id.empty()) {
      if (diagnostics) {
        diagnostics->push_back({Severity::Error, source, line_no,
                                tab == std::string_view::npos ? "missing TAB after utterance ID" : "empty utterance ID"});
      }
      continue;
    }
    auto [it, fresh] = seen.emplace(std::string(id), line_no);
    if (!fresh) {
      throw LoadError(fmt::format("{}:{}: duplicate utterance ID '{}' (first on line {})", source, line_no, id,
                                  it->second));
    }
    out.push_back({std::string(id), std::string(line.substr(tab + 1)), line_no});
  }
  return out;
}

Corpus load_corpus(const std::filesystem::path& ref_path, std::span<const std::filesystem::path> hyp_paths,
                   std::span<const std::string> sys_ids, const NormRules& rules) {
  if (!sys_ids.empty() && sys_ids.size() != hyp_paths.size()) {
    throw ArgumentError(fmt::format("{} system IDs given for {} hypothesis files", sys_ids.size(), hyp_paths.size()));
  }
  Corpus corpus;
  std::map<std::string, Words> refs;
  for (auto& e : read_transcript(ref_path, &corpus.diagnostics)) refs.emplace(e.utt_id, normalize_tokens(e.text, rules));

  std::set<std::string> systems;
  for (std::size_t k = 0; k < hyp_paths.size(); ++k) {
    const auto& path = hyp_paths[k];
    const std::string sys_id = sys_ids.empty() ? path.stem().string() : sys_ids[k];
    if (!systems.insert(sys_id).second) {
      throw LoadError(fmt::format("system ID '{}' is used by more than one hypothesis file", sys_id));
    }
    std::set<std::string> covered;
    for (auto& e : read_transcript(path, &corpus.diagnostics)) {
      auto ref = refs.find(e.utt_id);
      if (ref == refs.end()) {
        corpus.diagnostics.push_back(
            {Severity::Error, path.string(), e.line, fmt::format("unknown utterance ID '{}'", e.utt_id)});
        continue;
      }
      covered.insert(e.utt_id);
      corpus.utterances.push_back({e.utt_id, sys_id, ref->second, normalize_tokens(e.text, rules)});
    }
    for (const auto& [id, words] : refs) {
      if (!covered.contains(id)) {
        corpus.diagnostics.push_back(
            {Severity::Warning, path.string(), 0, fmt::format("no hypothesis for reference '{}'", id)});
      }
    }
  }
  std::sort(corpus.utterances.begin(), corpus.utterances.end(), [](const Utterance& a, const Utterance& b) {
    return std::tie(a.utt_id, a.sys_id) < std::tie(b.utt_id, b.sys_id);
  });
  return corpus;
}

}  // namespace power
