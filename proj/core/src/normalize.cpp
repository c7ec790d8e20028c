#include "power/normalize.hpp"

#include <fmt/core.h>

#include <algorithm>
#include <cctype>
#include <optional>

#include "power/builtin_tables.hpp"
#include "power/phone_align.hpp"
#include "power/text_io.hpp"

namespace power {

VariantMap VariantMap::parse(std::string_view text, const std::string& source_name, Diagnostics* warnings) {
  VariantMap vm;
  std::size_t line_no = 0;
  for (auto line : split_lines(text)) {
    ++line_no;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto tab = t.find('\t');
    const auto variant = tab == std::string_view::npos ? std::string_view{} : trim(t.substr(0, tab));
    const auto canonical = tab == std::string_view::npos ? std::string_view{} : trim(t.substr(tab + 1));
    if (variant.empty() || canonical.empty() || canonical.find('\t') != std::string_view::npos) {
      if (warnings) warnings->push_back({Severity::Warning, source_name, line_no, "expected 'variant<TAB>canonical'"});
      continue;
    }
    if (variant == canonical) continue;
    vm.map_[fold_case(variant)] = fold_case(canonical);
  }
  for (const auto& [variant, canonical] : vm.map_) {
    if (vm.map_.contains(canonical)) {
      throw LoadError(fmt::format("{}: variant '{}' maps to '{}', which is itself a variant", source_name, variant,
                                  canonical));
    }
  }
  return vm;
}

VariantMap VariantMap::load(const std::filesystem::path& path, Diagnostics* warnings) {
  return parse(read_text_file(path), path.string(), warnings);
}

const VariantMap& VariantMap::builtin() {
  static const VariantMap table = parse(builtin::variant_table(), "<builtin variants>");
  return table;
}

std::string_view VariantMap::apply(std::string_view word) const {
  auto it = map_.find(std::string(word));
  return it == map_.end() ? word : std::string_view(it->second);
}

namespace {

bool is_ascii_punct(char c) { return static_cast<unsigned char>(c) < 0x80 && std::ispunct(static_cast<unsigned char>(c)); }

std::string_view strip_punct(std::string_view token) {
  while (!token.empty() && is_ascii_punct(token.front())) token.remove_prefix(1);
  while (!token.empty() && is_ascii_punct(token.back())) token.remove_suffix(1);
  return token;
}

}  // namespace

Words normalize_tokens(std::string_view text, const NormRules& rules) {
  Words out;
  auto push = [&](std::string_view piece) {
    piece = strip_punct(piece);
    if (piece.empty()) return;
    out.emplace_back(rules.variants.apply(piece));
  };
  for (auto raw : split_whitespace(text)) {
    const std::string token = rules.lowercase ? fold_case(raw) : std::string(raw);
    if (!rules.split_hyphens) {
      push(token);
      continue;
    }
    std::string_view rest = token;
    for (auto dash = rest.find('-'); dash != std::string_view::npos; dash = rest.find('-')) {
      push(rest.substr(0, dash));
      rest.remove_prefix(dash + 1);
    }
    push(rest);
  }
  return out;
}

namespace {

// Boundary-free phones of a word run, or nothing if some word is unpronounceable.
std::optional<PhoneString> run_phones(std::span<const std::string> words, const Lexicon& lexicon) {
  PhoneString out;
  try {
    for (const auto& w : words) {
      const auto p = lexicon.pronounce(w).phones();
      out.insert(out.end(), p.begin(), p.end());
    }
  } catch (const ArgumentError&) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

Words oracle_normalize(std::span<const std::string> ref, std::span<const std::string> hyp,
                       const WordAlignment& recombined, const Lexicon& lexicon, std::size_t* rewrites) {
  Words current(hyp.begin(), hyp.end());
  WordAlignment alignment = recombined;
  std::size_t total = 0;
  for (;;) {
    Words next;
    std::size_t changed = 0;
    for (const auto& b : alignment.blocks) {
      const auto ref_run = ref.subspan(b.ref_begin, b.ref_len);
      const auto hyp_run = std::span<const std::string>(current).subspan(b.hyp_begin, b.hyp_len);
      const bool candidate = b.label == AlignLabel::Sub || b.label == AlignLabel::SubSpan;
      if (candidate && !std::equal(ref_run.begin(), ref_run.end(), hyp_run.begin(), hyp_run.end())) {
        const auto rp = run_phones(ref_run, lexicon);
        const auto hp = run_phones(hyp_run, lexicon);
        if (rp && hp && *rp == *hp) {
          next.insert(next.end(), ref_run.begin(), ref_run.end());
          ++changed;
          continue;
        }
      }
      next.insert(next.end(), hyp_run.begin(), hyp_run.end());
    }
    if (changed == 0) break;
    total += changed;
    current = std::move(next);
    alignment = realign_error_spans(align_words(ref, current), ref, current, lexicon);
  }
  if (rewrites) *rewrites = total;
  return current;
}

}  // namespace power
