#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "rewrite.hpp"

namespace ncrelax {

// Maps canonical words to SDP variable indices. Indices are 1-based; 0 is
// reserved for the constant moment y_1 = 1. Indices are assigned densely in
// first-occurrence order.
class MonomialDictionary {
 public:
  // Returns the index of w, assigning the next free one if unseen.
  int lookup_or_insert(const Word& w);

  // Returns the index of w, or 0 if absent.
  int lookup(const Word& w) const;

  int size() const { return static_cast<int>(words_.size()); }
  const Word& word(int index) const { return words_.at(index - 1); }
  const std::vector<Word>& words() const { return words_; }

 private:
  std::unordered_map<Word, int, WordHash, WordEqual> index_of_;
  std::vector<Word> words_;
};

// constant + sum of coeff * y_index over 1-based variable indices. No stored
// coefficient is zero.
struct AffineExpr {
  double constant = 0.0;
  std::map<int, double> coeffs;

  void add(int index, double value) {
    if (value == 0.0) return;
    auto [it, inserted] = coeffs.try_emplace(index, value);
    if (!inserted) {
      it->second += value;
      if (it->second == 0.0) coeffs.erase(it);
    }
  }

  bool is_zero() const { return constant == 0.0 && coeffs.empty(); }

  friend bool operator==(const AffineExpr&, const AffineExpr&) = default;
};

enum class BlockKind { moment, localizing };

// A symmetric block of the relaxation; only the upper triangle (i <= j) is
// stored, packed row-major.
struct Block {
  int size = 0;
  BlockKind kind = BlockKind::moment;
  // 1-based declaration index of the constraint a localizing block belongs
  // to; an equality's pair of blocks shares it. 0 for the moment block.
  int constraint_id = 0;
  std::vector<AffineExpr> entries;

  explicit Block(int n = 0, BlockKind k = BlockKind::moment, int id = 0)
      : size(n), kind(k), constraint_id(id),
        entries(static_cast<std::size_t>(n) * (n + 1) / 2) {}

  // 0-based row i and column j with i <= j.
  AffineExpr& at(int i, int j) { return entries[triangle_index(i, j)]; }
  const AffineExpr& at(int i, int j) const { return entries[triangle_index(i, j)]; }

  std::size_t triangle_index(int i, int j) const {
    return static_cast<std::size_t>(i) * size - static_cast<std::size_t>(i) * (i - 1) / 2 +
           static_cast<std::size_t>(j - i);
  }

  friend bool operator==(const Block&, const Block&) = default;
};

struct Relaxation {
  int order = 0;
  int nvars = 0;
  std::map<int, double> objective;  // variable index -> coefficient
  double objective_shift = 0.0;     // constant carried outside the SDP
  std::vector<Block> blocks;        // blocks[0] is the moment block
  MonomialDictionary dictionary;
  std::vector<Word> basis;
  std::vector<std::string> warnings;

  int localizing_block_count() const {
    return static_cast<int>(blocks.size()) - 1;
  }
};

// The canonical moment of a word: of the two normal forms of w and its
// involution, the word_less-minimal one, with the sign its normalization
// accumulated. The identity word stands for the constant moment 1.
struct CanonicalMoment {
  int sign = 1;
  Word word;
};
CanonicalMoment canonical_moment(const Word& w, const RuleSet& rs);

// Builds the moment block over the given basis, assigning dictionary indices
// in row-major upper-triangle first-occurrence order.
std::pair<Block, MonomialDictionary> moment_matrix(const std::vector<Word>& basis,
                                                   const RuleSet& rs);

// Builds one localizing block for the constraint polynomial g over the part
// of the basis with degree <= sub_order. Every canonical word must already
// be in the dictionary; a miss throws unknown_moment.
Block localizing_matrix(const Polynomial& g, int sub_order,
                        const std::vector<Word>& basis,
                        const MonomialDictionary& dict, const RuleSet& rs,
                        int constraint_id);

// Translates the objective into variable coefficients plus a constant shift.
std::pair<std::map<int, double>, double> translate_objective(
    const Polynomial& p, const MonomialDictionary& dict, const RuleSet& rs);

// Assembles the full order-d relaxation: moment block, then one localizing
// block per inequality and a +g/-g pair per equality, in declaration order.
Relaxation get_relaxation(const Polynomial& objective,
                          const std::vector<Polynomial>& inequalities,
                          const std::vector<Polynomial>& equalities,
                          const std::vector<VariableSpec>& vars,
                          const std::vector<RewriteRule>& rules, int order,
                          int max_passes = kDefaultMaxPasses);

}  // namespace ncrelax
