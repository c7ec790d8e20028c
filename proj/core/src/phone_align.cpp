#include "power/phone_align.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <array>
#include <functional>
#include <limits>
#include <queue>

#include "power/error.hpp"

namespace power {

namespace {

constexpr std::uint32_t kUnreachable = std::numeric_limits<std::uint32_t>::max();

bool is_correct_word_boundary(const PhoneStep& step, std::span<const PhoneToken> ref) {
  return step.op == EditOp::Correct && step.ref && ref[*step.ref].is_word_boundary();
}

}  // namespace

std::string PhoneSequence::to_string() const {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    switch (t.payload.kind) {
      case TokenKind::WordBoundary: out += '|'; break;
      case TokenKind::SyllableBoundary: out += '#'; break;
      case TokenKind::Phone: out += t.payload.phone.symbol(); break;
    }
  }
  return out;
}

PhoneSequence build_phone_sequence(std::span<const std::string> words, const Lexicon& lexicon) {
  PhoneSequence seq;
  if (words.empty()) return seq;
  seq.tokens.push_back({PronToken::word_boundary(), 0, false});
  for (std::uint32_t w = 0; w < words.size(); ++w) {
    const Pronunciation p = lexicon.pronounce(words[w]);
    seq.oov = seq.oov || p.oov;
    std::uint32_t syllables = 0;
    for (std::size_t k = 1; k + 1 < p.tokens.size(); ++k) {
      if (p.tokens[k].kind == TokenKind::SyllableBoundary) ++syllables;
      seq.tokens.push_back({p.tokens[k], w, syllables == 1});
    }
    seq.tokens.push_back({PronToken::word_boundary(), w + 1, false});
    seq.syllables_per_word.push_back(syllables);
  }
  return seq;
}

bool can_pair(const PronToken& a, const PronToken& b) noexcept {
  if (a.kind != TokenKind::Phone || b.kind != TokenKind::Phone) return a == b;
  return a.phone.phone_class() == b.phone.phone_class();
}

// ---------------------------------------------------------------------------
// MinCostGraph

MinCostGraph::MinCostGraph(std::span<const PhoneToken> ref, std::span<const PhoneToken> hyp) : ref_(ref), hyp_(hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  const std::size_t stride = m + 1;
  fwd_.assign((n + 1) * stride, 0);
  bwd_.assign((n + 1) * stride, 0);

  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= m; ++j) {
      if (i == 0 && j == 0) continue;
      std::uint32_t best = kUnreachable;
      if (i > 0) best = std::min(best, fwd_[(i - 1) * stride + j] + 1);
      if (j > 0) best = std::min(best, fwd_[i * stride + j - 1] + 1);
      if (i > 0 && j > 0 && can_pair(ref[i - 1].payload, hyp[j - 1].payload)) {
        const std::uint32_t sub = ref[i - 1].payload == hyp[j - 1].payload ? 0 : 1;
        best = std::min(best, fwd_[(i - 1) * stride + j - 1] + sub);
      }
      fwd_[i * stride + j] = best;
    }
  }
  for (std::size_t i = n + 1; i-- > 0;) {
    for (std::size_t j = m + 1; j-- > 0;) {
      if (i == n && j == m) continue;
      std::uint32_t best = kUnreachable;
      if (i < n) best = std::min(best, bwd_[(i + 1) * stride + j] + 1);
      if (j < m) best = std::min(best, bwd_[i * stride + j + 1] + 1);
      if (i < n && j < m && can_pair(ref[i].payload, hyp[j].payload)) {
        const std::uint32_t sub = ref[i].payload == hyp[j].payload ? 0 : 1;
        best = std::min(best, bwd_[(i + 1) * stride + j + 1] + sub);
      }
      bwd_[i * stride + j] = best;
    }
  }
  cost_ = fwd_[n * stride + m];
}

EditOp MinCostGraph::diagonal_op(std::size_t i, std::size_t j) const {
  return ref_[i].payload == hyp_[j].payload ? EditOp::Correct : EditOp::Sub;
}

bool MinCostGraph::on_min_path(std::size_t i, std::size_t j, EditOp move) const {
  const std::size_t n = ref_.size();
  const std::size_t m = hyp_.size();
  switch (move) {
    case EditOp::Correct:
    case EditOp::Sub: {
      if (i >= n || j >= m || !can_pair(ref_[i].payload, hyp_[j].payload)) return false;
      const EditOp op = diagonal_op(i, j);
      if (op != move) return false;
      const std::uint32_t step = op == EditOp::Correct ? 0 : 1;
      return forward(i, j) + step + backward(i + 1, j + 1) == cost_;
    }
    case EditOp::Del: return i < n && forward(i, j) + 1 + backward(i + 1, j) == cost_;
    case EditOp::Ins: return j < m && forward(i, j) + 1 + backward(i, j + 1) == cost_;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Gap-minimizing path selection
//
// A path's gap count depends on where its first and last Correct word
// boundaries fall, so each cell is split into three phases:
//   0  no Correct word boundary yet       gaps free
//   1  inside first..last boundary        gaps cost 1
//   2  past the last boundary             gaps free, no further boundary
// A Correct word-boundary step moves 0|1 -> 1|2 (the choice of 2 declares it
// the last one). Valid end states are (n, m, 0) and (n, m, 2).

namespace {

enum class Move : std::uint8_t { Diagonal, Del, Ins };
constexpr std::array<Move, 3> kMoveOrder = {Move::Diagonal, Move::Del, Move::Ins};

class PhaseGraph {
 public:
  explicit PhaseGraph(const MinCostGraph& g) : g_(g), n_(g.ref_size()), m_(g.hyp_size()) {}

  std::size_t ref_size() const { return n_; }
  std::size_t hyp_size() const { return m_; }
  std::size_t state_count() const { return (n_ + 1) * (m_ + 1) * 3; }
  std::size_t state(std::size_t i, std::size_t j, unsigned phase) const { return ((i * (m_ + 1)) + j) * 3 + phase; }
  std::size_t cell_i(std::size_t s) const { return (s / 3) / (m_ + 1); }
  std::size_t cell_j(std::size_t s) const { return (s / 3) % (m_ + 1); }
  unsigned phase(std::size_t s) const { return static_cast<unsigned>(s % 3); }
  bool is_sink(std::size_t s) const { return cell_i(s) == n_ && cell_j(s) == m_ && phase(s) != 1; }

  // Calls fn(move, op, next_state, weight) for every min-cost edge out of s.
  template <typename Fn>
  void for_each_edge(std::size_t s, Fn&& fn) const {
    const std::size_t i = cell_i(s);
    const std::size_t j = cell_j(s);
    const unsigned ph = phase(s);
    if (i < n_ && j < m_ && can_pair(g_.ref()[i].payload, g_.hyp()[j].payload)) {
      const EditOp op = g_.diagonal_op(i, j);
      if (g_.on_min_path(i, j, op)) {
        if (op == EditOp::Correct && g_.ref()[i].is_word_boundary()) {
          if (ph != 2) {
            fn(Move::Diagonal, op, state(i + 1, j + 1, 1), 0u);
            fn(Move::Diagonal, op, state(i + 1, j + 1, 2), 0u);
          }
        } else {
          fn(Move::Diagonal, op, state(i + 1, j + 1, ph), 0u);
        }
      }
    }
    const unsigned gap = ph == 1 ? 1u : 0u;
    if (g_.on_min_path(i, j, EditOp::Del)) fn(Move::Del, EditOp::Del, state(i + 1, j, ph), gap);
    if (g_.on_min_path(i, j, EditOp::Ins)) fn(Move::Ins, EditOp::Ins, state(i, j + 1, ph), gap);
  }

  // Calls fn(prev_state, weight) for every min-cost edge into s.
  template <typename Fn>
  void for_each_predecessor(std::size_t s, Fn&& fn) const {
    const std::size_t i = cell_i(s);
    const std::size_t j = cell_j(s);
    auto visit = [&](std::size_t pi, std::size_t pj) {
      for (unsigned ph = 0; ph < 3; ++ph) {
        const std::size_t p = state(pi, pj, ph);
        for_each_edge(p, [&](Move, EditOp, std::size_t next, unsigned w) {
          if (next == s) fn(p, w);
        });
      }
    };
    if (i > 0 && j > 0) visit(i - 1, j - 1);
    if (i > 0) visit(i - 1, j);
    if (j > 0) visit(i, j - 1);
  }

 private:
  const MinCostGraph& g_;
  std::size_t n_;
  std::size_t m_;
};

// Dijkstra on the reversed graph: fewest interior gaps from each state to an end state.
std::vector<std::uint32_t> gaps_to_end(const PhaseGraph& graph) {
  std::vector<std::uint32_t> dist(graph.state_count(), kUnreachable);
  using Item = std::pair<std::uint32_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (unsigned ph : {0u, 2u}) {
    const std::size_t sink = graph.state(graph.ref_size(), graph.hyp_size(), ph);
    dist[sink] = 0;
    queue.emplace(0, sink);
  }
  while (!queue.empty()) {
    auto [d, s] = queue.top();
    queue.pop();
    if (d != dist[s]) continue;
    graph.for_each_predecessor(s, [&](std::size_t p, unsigned w) {
      if (d + w < dist[p]) {
        dist[p] = d + w;
        queue.emplace(dist[p], p);
      }
    });
  }
  return dist;
}

}  // namespace

PhoneAlignment select_best_path(const MinCostGraph& graph) {
  PhaseGraph phases(graph);
  const auto dist = gaps_to_end(phases);
  const std::size_t start = phases.state(0, 0, 0);
  const std::uint32_t best = dist[start];
  if (best == kUnreachable) throw InvariantError("no minimal-cost phone alignment path");

  PhoneAlignment out;
  out.cost = graph.cost();

  // Walk forward, taking the first move (diagonal < Del < Ins) that can still
  // finish with the optimal gap count. Several phases of one cell may be live.
  struct Live {
    std::size_t state;
    std::uint32_t gaps;
  };
  std::vector<Live> front{{start, 0}};
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < graph.ref_size() || j < graph.hyp_size()) {
    bool advanced = false;
    for (Move move : kMoveOrder) {
      std::vector<Live> next;
      EditOp chosen_op = EditOp::Correct;
      for (const auto& live : front) {
        phases.for_each_edge(live.state, [&](Move mv, EditOp op, std::size_t t, unsigned w) {
          if (mv != move || dist[t] == kUnreachable || live.gaps + w + dist[t] != best) return;
          chosen_op = op;
          auto dup = std::find_if(next.begin(), next.end(), [&](const Live& l) { return l.state == t; });
          if (dup == next.end()) next.push_back({t, live.gaps + w});
        });
      }
      if (next.empty()) continue;
      PhoneStep step;
      step.op = chosen_op;
      if (move != Move::Ins) step.ref = static_cast<std::uint32_t>(i);
      if (move != Move::Del) step.hyp = static_cast<std::uint32_t>(j);
      out.steps.push_back(step);
      if (move != Move::Ins) ++i;
      if (move != Move::Del) ++j;
      front = std::move(next);
      advanced = true;
      break;
    }
    if (!advanced) throw InvariantError("phone alignment path selection stalled");
  }
  return out;
}

PhoneAlignment align_phones(std::span<const PhoneToken> ref, std::span<const PhoneToken> hyp) {
  MinCostGraph graph(ref, hyp);
  return select_best_path(graph);
}

std::size_t interior_gap_count(const PhoneAlignment& alignment, std::span<const PhoneToken> ref,
                               std::span<const PhoneToken>) {
  const auto& steps = alignment.steps;
  std::size_t first = steps.size();
  std::size_t last = 0;
  for (std::size_t k = 0; k < steps.size(); ++k) {
    if (is_correct_word_boundary(steps[k], ref)) {
      first = std::min(first, k);
      last = k;
    }
  }
  if (first >= last) return 0;
  return static_cast<std::size_t>(std::count_if(steps.begin() + static_cast<std::ptrdiff_t>(first) + 1,
                                                steps.begin() + static_cast<std::ptrdiff_t>(last), [](const PhoneStep& s) {
                                                  return s.op == EditOp::Del || s.op == EditOp::Ins;
                                                }));
}

void check_phone_alignment(const PhoneAlignment& alignment, std::span<const PhoneToken> ref,
                           std::span<const PhoneToken> hyp) {
  std::uint32_t next_ref = 0;
  std::uint32_t next_hyp = 0;
  std::uint32_t cost = 0;
  for (std::size_t k = 0; k < alignment.steps.size(); ++k) {
    const auto& s = alignment.steps[k];
    const bool want_ref = s.op != EditOp::Ins;
    const bool want_hyp = s.op != EditOp::Del;
    if (want_ref != s.ref.has_value() || want_hyp != s.hyp.has_value()) {
      throw InvariantError(fmt::format("phone step {} has operands inconsistent with its label", k));
    }
    if (s.ref && *s.ref != next_ref++) throw InvariantError(fmt::format("phone step {} skips a reference token", k));
    if (s.hyp && *s.hyp != next_hyp++) throw InvariantError(fmt::format("phone step {} skips a hypothesis token", k));
    if (s.op == EditOp::Correct && !(ref[*s.ref].payload == hyp[*s.hyp].payload)) {
      throw InvariantError(fmt::format("phone step {} is Correct on unequal tokens", k));
    }
    if (s.op == EditOp::Sub) {
      const auto& a = ref[*s.ref].payload;
      const auto& b = hyp[*s.hyp].payload;
      if (a.is_boundary() || b.is_boundary()) throw InvariantError(fmt::format("phone step {} substitutes a boundary", k));
      if (a.phone.phone_class() != b.phone.phone_class()) {
        throw InvariantError(fmt::format("phone step {} substitutes a vowel for a consonant", k));
      }
      if (a == b) throw InvariantError(fmt::format("phone step {} substitutes equal phones", k));
    }
    if (s.op != EditOp::Correct) ++cost;
  }
  if (next_ref != ref.size() || next_hyp != hyp.size()) throw InvariantError("phone alignment does not cover all tokens");
  if (cost != alignment.cost) throw InvariantError("phone alignment cost does not match its steps");
}

}  // namespace power
