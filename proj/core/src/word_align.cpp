#include "power/word_align.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <numeric>

#include "power/error.hpp"

namespace power {

std::string_view to_string(AlignLabel label) {
  switch (label) {
    case AlignLabel::Correct: return "C";
    case AlignLabel::Sub: return "S";
    case AlignLabel::Del: return "D";
    case AlignLabel::Ins: return "I";
    case AlignLabel::SubSpan: return "SS";
  }
  return "?";
}

std::size_t AlignedBlock::weight() const noexcept {
  if (label == AlignLabel::Correct) return 0;
  return std::max(ref_len, hyp_len);
}

std::size_t WordAlignment::error_count() const {
  return std::accumulate(blocks.begin(), blocks.end(), std::size_t{0},
                         [](std::size_t acc, const AlignedBlock& b) { return acc + b.weight(); });
}

WordAlignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t stride = m + 1;
  std::vector<std::uint32_t> cost((n + 1) * stride);
  auto at = [&](std::size_t i, std::size_t j) -> std::uint32_t& { return cost[i * stride + j]; };

  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<std::uint32_t>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    at(i, 0) = static_cast<std::uint32_t>(i);
    for (std::size_t j = 1; j <= m; ++j) {
      const std::uint32_t diag = at(i - 1, j - 1) + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      at(i, j) = std::min({diag, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  WordAlignment out;
  out.ref_len = n;
  out.hyp_len = m;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        out.blocks.push_back({i - 1, 1, j - 1, 1, same ? AlignLabel::Correct : AlignLabel::Sub});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      out.blocks.push_back({i - 1, 1, j, 0, AlignLabel::Del});
      --i;
    } else {
      out.blocks.push_back({i, 0, j - 1, 1, AlignLabel::Ins});
      --j;
    }
  }
  std::reverse(out.blocks.begin(), out.blocks.end());
  return out;
}

std::size_t word_distance(std::span<const std::string> ref, std::span<const std::string> hyp) {
  std::vector<std::size_t> row(hyp.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= ref.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= hyp.size(); ++j) {
      const std::size_t up = row[j];
      row[j] = std::min({diag + (ref[i - 1] == hyp[j - 1] ? 0 : 1), up + 1, row[j - 1] + 1});
      diag = up;
    }
  }
  return row.back();
}

std::vector<ErrorSpan> extract_error_spans(const WordAlignment& alignment) {
  std::vector<ErrorSpan> spans;
  const auto& blocks = alignment.blocks;
  std::size_t k = 0;
  while (k < blocks.size()) {
    if (blocks[k].label == AlignLabel::Correct) {
      ++k;
      continue;
    }
    const std::size_t begin = k;
    bool has_sub = false;
    while (k < blocks.size() && blocks[k].label != AlignLabel::Correct) {
      has_sub = has_sub || blocks[k].label == AlignLabel::Sub;
      ++k;
    }
    if (!has_sub) continue;
    ErrorSpan span;
    span.block_begin = begin;
    span.block_end = k;
    span.ref_begin = blocks[begin].ref_begin;
    span.hyp_begin = blocks[begin].hyp_begin;
    span.ref_len = blocks[k - 1].ref_end() - span.ref_begin;
    span.hyp_len = blocks[k - 1].hyp_end() - span.hyp_begin;
    spans.push_back(span);
  }
  return spans;
}

void check_alignment(const WordAlignment& alignment) {
  std::size_t r = 0;
  std::size_t h = 0;
  for (std::size_t k = 0; k < alignment.blocks.size(); ++k) {
    const auto& b = alignment.blocks[k];
    if (b.ref_begin != r || b.hyp_begin != h) {
      throw InvariantError(fmt::format("alignment block {} does not continue the previous block", k));
    }
    bool shape_ok = false;
    switch (b.label) {
      case AlignLabel::Correct:
      case AlignLabel::Sub: shape_ok = b.ref_len == 1 && b.hyp_len == 1; break;
      case AlignLabel::Del: shape_ok = b.ref_len == 1 && b.hyp_len == 0; break;
      case AlignLabel::Ins: shape_ok = b.ref_len == 0 && b.hyp_len == 1; break;
      case AlignLabel::SubSpan:
        shape_ok = b.ref_len >= 1 && b.hyp_len >= 1 && std::max(b.ref_len, b.hyp_len) > 1;
        break;
    }
    if (!shape_ok) {
      throw InvariantError(fmt::format("alignment block {} has shape {}:{} inconsistent with label {}", k, b.ref_len,
                                       b.hyp_len, to_string(b.label)));
    }
    r += b.ref_len;
    h += b.hyp_len;
  }
  if (r != alignment.ref_len || h != alignment.hyp_len) {
    throw InvariantError(fmt::format("alignment covers {}:{} words, expected {}:{}", r, h, alignment.ref_len,
                                     alignment.hyp_len));
  }
}

void check_alignment(const WordAlignment& alignment, std::span<const std::string> ref,
                     std::span<const std::string> hyp) {
  if (alignment.ref_len != ref.size() || alignment.hyp_len != hyp.size()) {
    throw InvariantError("alignment lengths do not match the word sequences");
  }
  check_alignment(alignment);
  for (const auto& b : alignment.blocks) {
    if (b.label == AlignLabel::Correct && ref[b.ref_begin] != hyp[b.hyp_begin]) {
      throw InvariantError(fmt::format("Correct block pairs '{}' with '{}'", ref[b.ref_begin], hyp[b.hyp_begin]));
    }
  }
}

}  // namespace power
