#include "rewrite.hpp"

#include <algorithm>
#include <atomic>

#include "errors.hpp"

namespace ncrelax {

namespace {
std::atomic<std::uint64_t> g_rewrite_builds{0};
}

std::uint64_t rewrite_builds() { return g_rewrite_builds.load(); }

RuleSet RuleSet::validate(const std::vector<RewriteRule>& rules, int max_passes) {
  if (max_passes < 1) {
    throw Error(ErrorCode::invalid_argument, "max_passes must be positive");
  }
  RuleSet rs;
  rs.max_passes_ = max_passes;
  for (const RewriteRule& rule : rules) {
    if (rule.lhs.is_identity()) {
      throw Error(ErrorCode::empty_lhs, "substitution with empty left-hand side");
    }
    if (rule.rhs_sign != 1 && rule.rhs_sign != -1) {
      throw Error(ErrorCode::bad_substitution_coefficient,
                  "substitution multiplier must be +1 or -1");
    }
    auto [it, inserted] = rs.by_lhs_.try_emplace(rule.lhs, rule);
    if (!inserted) {
      throw Error(ErrorCode::duplicate_lhs,
                  "two substitutions share the left-hand side " +
                      word_debug_string(rule.lhs));
    }
    rs.max_lhs_degree_ = std::max(rs.max_lhs_degree_, rule.lhs.degree());
  }
  return rs;
}

const RewriteRule* RuleSet::find(LetterSpan lhs) const {
  auto it = by_lhs_.find(lhs);
  return it == by_lhs_.end() ? nullptr : &it->second;
}

std::optional<Monomial> apply_once(const Monomial& m, const RuleSet& rs) {
  if (rs.empty() || m.coeff == 0.0) return std::nullopt;
  const std::vector<Letter>& letters = m.word.letters;
  const int length = static_cast<int>(letters.size());
  for (int pos = 0; pos < length; ++pos) {
    const int longest = std::min(rs.max_lhs_degree(), length - pos);
    for (int len = longest; len >= 1; --len) {
      const RewriteRule* rule = rs.find(LetterSpan(&letters[pos], len));
      if (rule == nullptr) continue;
      std::vector<Letter> out;
      out.reserve(letters.size() - len + rule->rhs.letters.size());
      out.insert(out.end(), letters.begin(), letters.begin() + pos);
      out.insert(out.end(), rule->rhs.letters.begin(), rule->rhs.letters.end());
      out.insert(out.end(), letters.begin() + pos + len, letters.end());
      g_rewrite_builds.fetch_add(1, std::memory_order_relaxed);
      return Monomial(m.coeff * rule->rhs_sign, Word{std::move(out)});
    }
  }
  return std::nullopt;
}

Monomial normalize(const Monomial& m, const RuleSet& rs) {
  std::optional<Monomial> first = apply_once(m, rs);
  if (!first) return m;
  Monomial cur = std::move(*first);
  for (int pass = 1; pass < rs.max_passes(); ++pass) {
    std::optional<Monomial> next = apply_once(cur, rs);
    if (!next) return cur;
    cur = std::move(*next);
  }
  if (!apply_once(cur, rs)) return cur;
  throw Error(ErrorCode::cycle_suspected,
              "substitutions did not reach a fixpoint within " +
                  std::to_string(rs.max_passes()) +
                  " passes; the rule set may be cyclic");
}

std::pair<int, Word> normalize_word(const Word& w, const RuleSet& rs) {
  Monomial m = normalize(Monomial(1.0, w), rs);
  return {m.coeff < 0.0 ? -1 : 1, std::move(m.word)};
}

}  // namespace ncrelax
