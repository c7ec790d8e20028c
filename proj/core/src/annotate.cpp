#include "power/annotate.hpp"

#include <fmt/core.h>

#include <algorithm>

#include "power/builtin_tables.hpp"
#include "power/lexicon.hpp"
#include "power/text_io.hpp"

namespace power {

WordClassifier WordClassifier::parse(std::string_view text) {
  WordClassifier c;
  for (auto line : split_lines(text)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    c.closed_.insert(fold_case(line));
  }
  return c;
}

WordClassifier WordClassifier::load(const std::filesystem::path& path) { return parse(read_text_file(path)); }

const WordClassifier& WordClassifier::builtin() {
  static const WordClassifier table = parse(builtin::closed_class_list());
  return table;
}

WordClass WordClassifier::classify(std::string_view word) const {
  return closed_.contains(fold_case(word)) ? WordClass::Closed : WordClass::Open;
}

// ---------------------------------------------------------------------------
// Lemmatization

namespace {

bool ends_with(std::string_view w, std::string_view suffix) { return w.ends_with(suffix); }

bool is_vowel_letter(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool has_vowel(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return is_vowel_letter(c) || c == 'y'; });
}

bool is_consonant_letter(char c) { return c >= 'a' && c <= 'z' && !is_vowel_letter(c); }

bool ends_doubled(std::string_view s) {
  if (s.size() < 2) return false;
  const char c = s.back();
  return c == s[s.size() - 2] && is_consonant_letter(c) && c != 'l' && c != 's' && c != 'z';
}

// Repairs a stem left after removing -ed or -ing.
std::string fix_stem(std::string_view stem) {
  if (ends_doubled(stem)) return std::string(stem.substr(0, stem.size() - 1));
  if (ends_with(stem, "at") || ends_with(stem, "bl") || ends_with(stem, "iz")) return std::string(stem) + 'e';
  if (stem.size() == 3 && is_consonant_letter(stem[0]) && is_vowel_letter(stem[1]) && is_consonant_letter(stem[2]) &&
      stem[2] != 'w' && stem[2] != 'x' && stem[2] != 'y') {
    return std::string(stem) + 'e';
  }
  return std::string(stem);
}

std::string strip_once(std::string_view w) {
  const std::string word(w);
  if (w.size() <= 3) return word;
  auto drop = [&](std::size_t n) { return word.substr(0, word.size() - n); };

  if (ends_with(w, "ies") && w.size() > 4) return drop(3) + 'y';
  for (std::string_view es : {"sses", "xes", "ches", "shes", "zzes"}) {
    if (ends_with(w, es)) return drop(2);
  }
  if (ends_with(w, "s")) {
    if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is")) return word;
    return drop(1);
  }
  if (ends_with(w, "ied") && w.size() > 4) return drop(3) + 'y';
  if (ends_with(w, "ed")) {
    const auto stem = w.substr(0, w.size() - 2);
    if (stem.size() >= 3 && has_vowel(stem)) return fix_stem(stem);
    return word;
  }
  if (ends_with(w, "ing")) {
    const auto stem = w.substr(0, w.size() - 3);
    if (stem.size() >= 3 && has_vowel(stem)) return fix_stem(stem);
    return word;
  }
  for (std::string_view comparative : {"est", "er"}) {
    if (!ends_with(w, comparative)) continue;
    const auto stem = w.substr(0, w.size() - comparative.size());
    if (stem.size() >= 4 && ends_doubled(stem)) return std::string(stem.substr(0, stem.size() - 1));
  }
  return word;
}

}  // namespace

std::string lemmatize_by_rules(std::string_view word) {
  std::string cur = fold_case(word);
  for (;;) {
    std::string next = strip_once(cur);
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Lemmatizer Lemmatizer::parse(std::string_view text, const std::string& source_name, Diagnostics* warnings) {
  Lemmatizer lem;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = t.find('\t');
    const auto word = tab == std::string_view::npos ? std::string_view{} : trim(t.substr(0, tab));
    const auto lemma = tab == std::string_view::npos ? std::string_view{} : trim(t.substr(tab + 1));
    if (word.empty() || lemma.empty() || lemma.find('\t') != std::string_view::npos) {
      if (warnings) warnings->push_back({Severity::Warning, source_name, line_no, "expected 'word<TAB>lemma'"});
      continue;
    }
    lem.map_[fold_case(word)] = fold_case(lemma);
  }
  // Collapse chains so every target is final.
  for (auto& [word, lemma] : lem.map_) {
    std::size_t hops = 0;
    auto it = lem.map_.find(lemma);
    while (it != lem.map_.end() && it->second != lemma && hops++ < lem.map_.size()) {
      lemma = it->second;
      it = lem.map_.find(lemma);
    }
  }
  for (auto it = lem.map_.begin(); it != lem.map_.end();) {
    if (it->first == it->second) {
      it = lem.map_.erase(it);
    } else {
      ++it;
    }
  }
  for (const auto& [word, lemma] : lem.map_) {
    if (lem.map_.contains(lemma)) {
      if (warnings) {
        warnings->push_back({Severity::Warning, source_name, 0, fmt::format("lemma cycle through '{}' ignored", word)});
      }
    } else {
      lem.lemmas_.insert(lemma);
    }
  }
  std::erase_if(lem.map_, [&](const auto& kv) { return !lem.lemmas_.contains(kv.second); });
  return lem;
}

Lemmatizer Lemmatizer::load(const std::filesystem::path& path, Diagnostics* warnings) {
  return parse(read_text_file(path), path.string(), warnings);
}

std::string Lemmatizer::lemmatize(std::string_view word) const {
  std::string w = fold_case(word);
  if (auto it = map_.find(w); it != map_.end()) return it->second;
  if (lemmas_.contains(w)) return w;
  std::string r = lemmatize_by_rules(w);
  if (auto it = map_.find(r); it != map_.end()) return it->second;
  return r;
}

// ---------------------------------------------------------------------------
// Typed errors

namespace {

constexpr std::array<std::string_view, kTypedKeyCount> kKeyNames = {
    "D.closed",
    "D.open",
    "I.closed",
    "I.open",
    "S.closed_closed.morph",
    "S.closed_closed.nomorph",
    "S.closed_open.nomorph",
    "S.open_closed.morph",
    "S.open_closed.nomorph",
    "S.open_open.morph",
    "S.open_open.nomorph",
    "SS.closed_span",
    "SS.open_span",
    "SS.span_closed",
    "SS.span_open",
    "SS.span_span",
};

std::string join_words(std::span<const std::string> words, std::size_t begin, std::size_t len) {
  std::string out;
  for (std::size_t k = begin; k < begin + len; ++k) {
    if (k > begin) out += ' ';
    out += words[k];
  }
  return out;
}

}  // namespace

std::string_view key_name(TypedKey key) { return kKeyNames[static_cast<std::size_t>(key)]; }

std::array<TypedKey, kTypedKeyCount> all_typed_keys() {
  std::array<TypedKey, kTypedKeyCount> keys{};
  for (std::size_t k = 0; k < kTypedKeyCount; ++k) keys[k] = static_cast<TypedKey>(k);
  return keys;
}

bool is_span_key(TypedKey key) { return key >= TypedKey::SS_closed_span; }

std::size_t TypedCounts::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

TypedCounts& TypedCounts::operator+=(const TypedCounts& other) {
  for (std::size_t k = 0; k < kTypedKeyCount; ++k) counts[k] += other.counts[k];
  return *this;
}

TypedKey classify_error(const AlignedBlock& block, std::span<const std::string> ref, std::span<const std::string> hyp,
                        const Annotator& annotator) {
  auto closed = [&](const std::string& w) { return annotator.classes.classify(w) == WordClass::Closed; };
  switch (block.label) {
    case AlignLabel::Correct: throw ArgumentError("a correct block carries no error type");
    case AlignLabel::Del: return closed(ref[block.ref_begin]) ? TypedKey::D_closed : TypedKey::D_open;
    case AlignLabel::Ins: return closed(hyp[block.hyp_begin]) ? TypedKey::I_closed : TypedKey::I_open;
    case AlignLabel::Sub: {
      const auto& r = ref[block.ref_begin];
      const auto& h = hyp[block.hyp_begin];
      const bool morph = r != h && annotator.lemmas.lemmatize(r) == annotator.lemmas.lemmatize(h);
      const bool rc = closed(r);
      const bool hc = closed(h);
      if (rc && hc) return morph ? TypedKey::S_closed_closed_morph : TypedKey::S_closed_closed_nomorph;
      if (rc) return TypedKey::S_closed_open_nomorph;
      if (hc) return morph ? TypedKey::S_open_closed_morph : TypedKey::S_open_closed_nomorph;
      return morph ? TypedKey::S_open_open_morph : TypedKey::S_open_open_nomorph;
    }
    case AlignLabel::SubSpan: {
      const bool ref_span = block.ref_len > 1;
      const bool hyp_span = block.hyp_len > 1;
      if (ref_span && hyp_span) return TypedKey::SS_span_span;
      if (ref_span) return closed(hyp[block.hyp_begin]) ? TypedKey::SS_span_closed : TypedKey::SS_span_open;
      if (hyp_span) return closed(ref[block.ref_begin]) ? TypedKey::SS_closed_span : TypedKey::SS_open_span;
      throw ArgumentError("substitution span with a single word on each side");
    }
  }
  throw ArgumentError("unknown alignment label");
}

TypedCounts type_errors(const WordAlignment& alignment, std::span<const std::string> ref,
                        std::span<const std::string> hyp, const Annotator& annotator) {
  TypedCounts counts;
  for (const auto& b : alignment.blocks) {
    if (b.label == AlignLabel::Correct) continue;
    counts[classify_error(b, ref, hyp, annotator)] += b.weight();
  }
  return counts;
}

void ConfusionCounter::add(const WordAlignment& alignment, std::span<const std::string> ref,
                           std::span<const std::string> hyp) {
  for (const auto& b : alignment.blocks) {
    if (b.label != AlignLabel::Sub && b.label != AlignLabel::SubSpan) continue;
    ++counts_[join_words(ref, b.ref_begin, b.ref_len) + '\t' + join_words(hyp, b.hyp_begin, b.hyp_len)];
  }
}

std::vector<ConfusionPair> ConfusionCounter::ranked() const {
  std::vector<ConfusionPair> out;
  out.reserve(counts_.size());
  for (const auto& [key, count] : counts_) {
    const auto tab = key.find('\t');
    out.push_back({key.substr(0, tab), key.substr(tab + 1), count});
  }
  std::sort(out.begin(), out.end(), [](const ConfusionPair& a, const ConfusionPair& b) {
    if (a.count != b.count) return a.count > b.count;
    if (a.ref != b.ref) return a.ref < b.ref;
    return a.hyp < b.hyp;
  });
  return out;
}

}  // namespace power
