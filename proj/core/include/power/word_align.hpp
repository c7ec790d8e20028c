#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace power {

using Words = std::vector<std::string>;

enum class AlignLabel : std::uint8_t { Correct, Sub, Del, Ins, SubSpan };

std::string_view to_string(AlignLabel label);

// A run of reference words aligned to a run of hypothesis words.
// Correct and Sub are 1:1, Del is 1:0, Ins is 0:1; SubSpan is any
// many-to-one, one-to-many or many-to-many grouping.
struct AlignedBlock {
  std::size_t ref_begin = 0;
  std::size_t ref_len = 0;
  std::size_t hyp_begin = 0;
  std::size_t hyp_len = 0;
  AlignLabel label = AlignLabel::Correct;

  std::size_t ref_end() const noexcept { return ref_begin + ref_len; }
  std::size_t hyp_end() const noexcept { return hyp_begin + hyp_len; }
  // Contribution to the error-rate numerator.
  std::size_t weight() const noexcept;

  friend bool operator==(const AlignedBlock&, const AlignedBlock&) = default;
};

// Ordered blocks tiling [0, ref_len) and [0, hyp_len). The plain word-level
// alignment only ever contains unit blocks; SubSpan blocks appear after
// phonetic recombination.
struct WordAlignment {
  std::vector<AlignedBlock> blocks;
  std::size_t ref_len = 0;
  std::size_t hyp_len = 0;

  // Sum of block weights: the Levenshtein distance for a word-level
  // alignment, S + D + I + SS after recombination.
  std::size_t error_count() const;
  friend bool operator==(const WordAlignment&, const WordAlignment&) = default;
};

// Unit-cost Levenshtein alignment. Ties in the backtrace (run from the end)
// prefer the diagonal move, then deletion, then insertion.
WordAlignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp);

// Unit-cost Levenshtein distance, computed without a backtrace.
std::size_t word_distance(std::span<const std::string> ref, std::span<const std::string> hyp);

// A maximal run of non-Correct blocks holding at least one Sub.
struct ErrorSpan {
  std::size_t block_begin = 0;  // [block_begin, block_end) into WordAlignment::blocks
  std::size_t block_end = 0;
  std::size_t ref_begin = 0;
  std::size_t ref_len = 0;
  std::size_t hyp_begin = 0;
  std::size_t hyp_len = 0;

  friend bool operator==(const ErrorSpan&, const ErrorSpan&) = default;
};

std::vector<ErrorSpan> extract_error_spans(const WordAlignment& alignment);

// Throws InvariantError when blocks do not tile both sequences in order or a
// block's shape does not match its label. With words given, Correct blocks
// must also pair equal words.
void check_alignment(const WordAlignment& alignment);
void check_alignment(const WordAlignment& alignment, std::span<const std::string> ref,
                     std::span<const std::string> hyp);

}  // namespace power
