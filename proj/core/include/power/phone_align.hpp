#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "power/lexicon.hpp"
#include "power/word_align.hpp"

namespace power {

// A pronunciation token placed inside an error span. Word boundaries between
// consecutive words are shared; a word boundary carries the index of the word
// it opens (the closing boundary carries the word count).
struct PhoneToken {
  PronToken payload;
  std::uint32_t word_index = 0;
  bool first_syllable = false;

  bool is_word_boundary() const noexcept { return payload.kind == TokenKind::WordBoundary; }
  bool is_syllable_boundary() const noexcept { return payload.kind == TokenKind::SyllableBoundary; }
  bool is_phone() const noexcept { return payload.kind == TokenKind::Phone; }
};

// Phone tokens for one side of a span plus per-word syllable counts.
struct PhoneSequence {
  std::vector<PhoneToken> tokens;
  std::vector<std::uint32_t> syllables_per_word;
  bool oov = false;

  std::size_t word_count() const noexcept { return syllables_per_word.size(); }
  std::string to_string() const;
};

// Concatenates the words' pronunciations sharing single word boundaries.
// An empty word list gives an empty sequence.
PhoneSequence build_phone_sequence(std::span<const std::string> words, const Lexicon& lexicon);

enum class EditOp : std::uint8_t { Correct, Sub, Del, Ins };

struct PhoneStep {
  std::optional<std::uint32_t> ref;  // token index, absent for Ins
  std::optional<std::uint32_t> hyp;  // token index, absent for Del
  EditOp op = EditOp::Correct;

  friend bool operator==(const PhoneStep&, const PhoneStep&) = default;
};

struct PhoneAlignment {
  std::vector<PhoneStep> steps;
  std::uint32_t cost = 0;
};

// True when the two tokens may be paired by a Correct or Sub step: equal
// tokens, or two phones of the same class. Boundaries are never substituted.
bool can_pair(const PronToken& a, const PronToken& b) noexcept;

// Every step that lies on at least one minimal-cost constrained alignment
// path, derived from a forward and a backward cost matrix.
class MinCostGraph {
 public:
  MinCostGraph(std::span<const PhoneToken> ref, std::span<const PhoneToken> hyp);

  std::uint32_t cost() const noexcept { return cost_; }
  std::size_t ref_size() const noexcept { return ref_.size(); }
  std::size_t hyp_size() const noexcept { return hyp_.size(); }
  std::span<const PhoneToken> ref() const noexcept { return ref_; }
  std::span<const PhoneToken> hyp() const noexcept { return hyp_; }

  // Whether the move leaving cell (i, j) lies on some minimal-cost path.
  bool on_min_path(std::size_t i, std::size_t j, EditOp move) const;
  // Correct or Sub for the diagonal move at (i, j); only valid when pairable.
  EditOp diagonal_op(std::size_t i, std::size_t j) const;

 private:
  std::uint32_t forward(std::size_t i, std::size_t j) const { return fwd_[i * (hyp_.size() + 1) + j]; }
  std::uint32_t backward(std::size_t i, std::size_t j) const { return bwd_[i * (hyp_.size() + 1) + j]; }

  std::span<const PhoneToken> ref_;
  std::span<const PhoneToken> hyp_;
  std::vector<std::uint32_t> fwd_;
  std::vector<std::uint32_t> bwd_;
  std::uint32_t cost_ = 0;
};

// Among all minimal-cost paths, the one with the fewest Del/Ins steps strictly
// between its first and last Correct word-boundary steps; remaining ties go to
// the path that is earliest under diagonal < Del < Ins, read left to right.
// The gap objective is solved with Dijkstra over (cell, phase) states.
PhoneAlignment select_best_path(const MinCostGraph& graph);

// Minimal-cost constrained alignment chosen by select_best_path.
PhoneAlignment align_phones(std::span<const PhoneToken> ref, std::span<const PhoneToken> hyp);

// Del/Ins steps strictly between the first and last Correct word-boundary
// steps of a path.
std::size_t interior_gap_count(const PhoneAlignment& alignment, std::span<const PhoneToken> ref,
                               std::span<const PhoneToken> hyp);

// Throws InvariantError on a boundary substitution, a vowel/consonant
// substitution, a Correct step on unequal tokens, or broken token coverage.
void check_phone_alignment(const PhoneAlignment& alignment, std::span<const PhoneToken> ref,
                           std::span<const PhoneToken> hyp);

// Word-level outcome for one error span; ranges are relative to the span.
struct SpanResult {
  std::vector<AlignedBlock> blocks;
};

// Turns a phone alignment back into word labels: segments between Correct
// word-boundary pairs group the words they cover; leading words with nothing
// scanned on the other side become Del/Ins; an extra trailing monosyllable is
// split out; finally adjacent groups are merged where needed so the span's
// error weight equals max(ref words, hyp words).
SpanResult recombine(const PhoneAlignment& alignment, const PhoneSequence& ref, const PhoneSequence& hyp);

}  // namespace power

namespace power {

// Replaces every error span of a word-level alignment with its phonetic
// recombination. Spans whose words cannot be pronounced keep their word-level
// labels and produce a warning in `warnings`.
WordAlignment realign_error_spans(const WordAlignment& word_alignment, std::span<const std::string> ref,
                                  std::span<const std::string> hyp, const Lexicon& lexicon,
                                  Diagnostics* warnings = nullptr);

}  // namespace power
