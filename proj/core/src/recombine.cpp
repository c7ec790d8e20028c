#include <fmt/core.h>

#include <algorithm>
#include <numeric>
#include <optional>

#include "power/error.hpp"
#include "power/phone_align.hpp"

namespace power {

namespace {

struct Group {
  std::size_t ref_begin = 0;
  std::size_t ref_len = 0;
  std::size_t hyp_begin = 0;
  std::size_t hyp_len = 0;
};

Group join(const Group& a, const Group& b) {
  return {std::min(a.ref_begin, b.ref_begin), a.ref_len + b.ref_len, std::min(a.hyp_begin, b.hyp_begin),
          a.hyp_len + b.hyp_len};
}

bool is_segment_break(const PhoneStep& step, const PhoneSequence& ref) {
  return step.op == EditOp::Correct && step.ref && ref.tokens[*step.ref].is_word_boundary();
}

std::uint32_t syllables(const PhoneSequence& seq, std::size_t begin, std::size_t len) {
  return std::accumulate(seq.syllables_per_word.begin() + static_cast<std::ptrdiff_t>(begin),
                         seq.syllables_per_word.begin() + static_cast<std::ptrdiff_t>(begin + len), 0u);
}

// Word range [first, last] touched by the segment's non-boundary tokens on one side.
struct Cover {
  bool any = false;
  std::size_t first = 0;
  std::size_t last = 0;

  void add(std::size_t w) {
    if (!any) {
      first = last = w;
      any = true;
    } else {
      first = std::min(first, w);
      last = std::max(last, w);
    }
  }
  std::size_t size() const { return any ? last - first + 1 : 0; }
};

void split_segment(std::span<const PhoneStep> seg, const PhoneSequence& ref, const PhoneSequence& hyp,
                   std::vector<Group>& groups) {
  Cover rc;
  Cover hc;
  bool anchored = false;
  for (const auto& s : seg) {
    if (s.ref && !ref.tokens[*s.ref].is_word_boundary()) rc.add(ref.tokens[*s.ref].word_index);
    if (s.hyp && !hyp.tokens[*s.hyp].is_word_boundary()) hc.add(hyp.tokens[*s.hyp].word_index);
    anchored = anchored || s.op == EditOp::Correct;
  }
  if (!rc.any && !hc.any) return;

  std::size_t ref_next = rc.first;
  std::size_t hyp_next = hc.first;
  const std::size_t ref_end = rc.first + rc.size();
  const std::size_t hyp_end = hc.first + hc.size();

  if (!anchored) {
    groups.push_back({ref_next, rc.size(), hyp_next, hc.size()});
    return;
  }

  // A word whose tokens end at a boundary before anything of the other side
  // was scanned is split off on its own.
  bool ref_scanned = false;
  bool hyp_scanned = false;
  for (const auto& s : seg) {
    if (s.ref) {
      const auto& tok = ref.tokens[*s.ref];
      if (!tok.is_word_boundary()) {
        ref_scanned = true;
      } else if (ref_scanned && !hyp_scanned && tok.word_index == ref_next + 1 && ref_next < ref_end) {
        groups.push_back({ref_next, 1, hyp_next, 0});
        ++ref_next;
        ref_scanned = false;
      }
    }
    if (s.hyp) {
      const auto& tok = hyp.tokens[*s.hyp];
      if (!tok.is_word_boundary()) {
        hyp_scanned = true;
      } else if (hyp_scanned && !ref_scanned && tok.word_index == hyp_next + 1 && hyp_next < hyp_end) {
        groups.push_back({ref_next, 0, hyp_next, 1});
        ++hyp_next;
        hyp_scanned = false;
      }
    }
  }

  Group main{ref_next, ref_end - ref_next, hyp_next, hyp_end - hyp_next};
  if (main.ref_len == 0 || main.hyp_len == 0 || (main.ref_len == 1 && main.hyp_len == 1)) {
    groups.push_back(main);
    return;
  }

  const auto rs = syllables(ref, main.ref_begin, main.ref_len);
  const auto hs = syllables(hyp, main.hyp_begin, main.hyp_len);
  const std::size_t ref_last = main.ref_begin + main.ref_len - 1;
  const std::size_t hyp_last = main.hyp_begin + main.hyp_len - 1;
  if (rs == hs + 1 && main.ref_len > 1 && ref.syllables_per_word[ref_last] == 1) {
    --main.ref_len;
    groups.push_back(main);
    groups.push_back({ref_last, 1, main.hyp_begin + main.hyp_len, 0});
  } else if (hs == rs + 1 && main.hyp_len > 1 && hyp.syllables_per_word[hyp_last] == 1) {
    --main.hyp_len;
    groups.push_back(main);
    groups.push_back({main.ref_begin + main.ref_len, 0, hyp_last, 1});
  } else {
    groups.push_back(main);
  }
}

// Merges adjacent groups until every group leans the same way as the whole
// span, which makes the summed weights equal max(R, H).
std::vector<Group> conserve(const std::vector<Group>& groups, std::size_t R, std::size_t H) {
  auto valid = [&](const Group& g) {
    if (R > H) return g.ref_len >= g.hyp_len;
    if (R < H) return g.hyp_len >= g.ref_len;
    return g.ref_len == g.hyp_len;
  };
  std::vector<Group> out;
  std::optional<Group> pending;
  for (const auto& g : groups) {
    pending = pending ? join(*pending, g) : g;
    if (valid(*pending)) {
      out.push_back(*pending);
      pending.reset();
    }
  }
  if (pending) {
    while (!valid(*pending)) {
      if (out.empty()) throw InvariantError("span recombination cannot conserve error weight");
      pending = join(out.back(), *pending);
      out.pop_back();
    }
    out.push_back(*pending);
  }
  return out;
}

void emit(const Group& g, std::vector<AlignedBlock>& blocks) {
  if (g.hyp_len == 0) {
    for (std::size_t k = 0; k < g.ref_len; ++k) blocks.push_back({g.ref_begin + k, 1, g.hyp_begin, 0, AlignLabel::Del});
  } else if (g.ref_len == 0) {
    for (std::size_t k = 0; k < g.hyp_len; ++k) blocks.push_back({g.ref_begin, 0, g.hyp_begin + k, 1, AlignLabel::Ins});
  } else {
    const auto label = g.ref_len == 1 && g.hyp_len == 1 ? AlignLabel::Sub : AlignLabel::SubSpan;
    blocks.push_back({g.ref_begin, g.ref_len, g.hyp_begin, g.hyp_len, label});
  }
}

}  // namespace

SpanResult recombine(const PhoneAlignment& alignment, const PhoneSequence& ref, const PhoneSequence& hyp) {
  const std::size_t R = ref.word_count();
  const std::size_t H = hyp.word_count();
  std::vector<Group> groups;
  if (R == 0 || H == 0) {
    groups.push_back({0, R, 0, H});
  } else {
    std::size_t begin = 0;
    const auto& steps = alignment.steps;
    for (std::size_t k = 0; k <= steps.size(); ++k) {
      if (k == steps.size() || is_segment_break(steps[k], ref)) {
        if (k > begin) split_segment(std::span(steps).subspan(begin, k - begin), ref, hyp, groups);
        begin = k + 1;
      }
    }
  }

  // Segments with nothing on one side know only their lengths; lay groups out in order.
  std::size_t ref_pos = 0;
  std::size_t hyp_pos = 0;
  for (auto& g : groups) {
    g.ref_begin = ref_pos;
    g.hyp_begin = hyp_pos;
    ref_pos += g.ref_len;
    hyp_pos += g.hyp_len;
  }
  if (ref_pos != R || hyp_pos != H) throw InvariantError("span recombination lost or duplicated words");

  SpanResult out;
  for (const auto& g : conserve(groups, R, H)) emit(g, out.blocks);
  return out;
}

WordAlignment realign_error_spans(const WordAlignment& word_alignment, std::span<const std::string> ref,
                                  std::span<const std::string> hyp, const Lexicon& lexicon, Diagnostics* warnings) {
  WordAlignment out;
  out.ref_len = word_alignment.ref_len;
  out.hyp_len = word_alignment.hyp_len;
  const auto& blocks = word_alignment.blocks;
  std::size_t next = 0;
  for (const auto& span : extract_error_spans(word_alignment)) {
    out.blocks.insert(out.blocks.end(), blocks.begin() + static_cast<std::ptrdiff_t>(next),
                      blocks.begin() + static_cast<std::ptrdiff_t>(span.block_begin));
    next = span.block_end;
    try {
      const auto ref_seq = build_phone_sequence(ref.subspan(span.ref_begin, span.ref_len), lexicon);
      const auto hyp_seq = build_phone_sequence(hyp.subspan(span.hyp_begin, span.hyp_len), lexicon);
      const auto phones = align_phones(ref_seq.tokens, hyp_seq.tokens);
      for (auto b : recombine(phones, ref_seq, hyp_seq).blocks) {
        b.ref_begin += span.ref_begin;
        b.hyp_begin += span.hyp_begin;
        out.blocks.push_back(b);
      }
    } catch (const ArgumentError& e) {
      out.blocks.insert(out.blocks.end(), blocks.begin() + static_cast<std::ptrdiff_t>(span.block_begin),
                        blocks.begin() + static_cast<std::ptrdiff_t>(span.block_end));
      if (warnings) {
        warnings->push_back({Severity::Warning, "", 0,
                             fmt::format("span at reference word {} kept word-level labels: {}", span.ref_begin, e.what())});
      }
    }
  }
  out.blocks.insert(out.blocks.end(), blocks.begin() + static_cast<std::ptrdiff_t>(next), blocks.end());
  return out;
}

}  // namespace power
