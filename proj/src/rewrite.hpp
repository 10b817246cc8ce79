#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "algebra.hpp"

namespace ncrelax {

inline constexpr int kDefaultMaxPasses = 1000;

// A binomial substitution lhs -> rhs_sign * rhs. The lhs is a nonempty word;
// the rhs may be empty (the identity).
struct RewriteRule {
  Word lhs;
  int rhs_sign = 1;
  Word rhs;

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

// Rules indexed by lhs for constant-time substring probes. Immutable after
// validation.
class RuleSet {
 public:
  RuleSet() = default;

  // Rejects empty or duplicate left-hand sides and signs other than +-1.
  static RuleSet validate(const std::vector<RewriteRule>& rules,
                          int max_passes = kDefaultMaxPasses);

  bool empty() const { return by_lhs_.empty(); }
  std::size_t size() const { return by_lhs_.size(); }
  int max_lhs_degree() const { return max_lhs_degree_; }
  int max_passes() const { return max_passes_; }

  const RewriteRule* find(LetterSpan lhs) const;
  const RewriteRule* find(const Word& lhs) const {
    return find(LetterSpan(lhs.letters));
  }

 private:
  std::unordered_map<Word, RewriteRule, WordHash, WordEqual> by_lhs_;
  int max_lhs_degree_ = 0;
  int max_passes_ = kDefaultMaxPasses;
};

// Scans the word left to right and applies, at the first position where any
// lhs matches as a contiguous substring, the longest lhs matching there.
// Returns nullopt when nothing matches; a replacement monomial is built only
// on a match.
std::optional<Monomial> apply_once(const Monomial& m, const RuleSet& rs);

// Repeats apply_once to a fixpoint. Throws cycle_suspected once max_passes
// applications have not reached one.
Monomial normalize(const Monomial& m, const RuleSet& rs);

// Word-level normalize: returns the accumulated sign and the fixpoint word.
std::pair<int, Word> normalize_word(const Word& w, const RuleSet& rs);

// Number of replacement monomials built by apply_once since process start;
// lets tests observe that a non-matching scan allocates nothing.
std::uint64_t rewrite_builds();

}  // namespace ncrelax
