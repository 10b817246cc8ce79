#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ncrelax {

// A declared problem variable. Ids are contiguous 0..n-1 within a problem.
// A hermitian variable equals its own adjoint, so its starred letter is
// identified with the unstarred one.
struct VariableSpec {
  int id = 0;
  std::string name;
  bool hermitian = false;

  friend bool operator==(const VariableSpec&, const VariableSpec&) = default;
};

// One letter of a word: a variable or its adjoint. Letters of hermitian
// variables are normalized to unstarred at construction, so structural
// equality is the algebraic one.
struct Letter {
  std::uint16_t var = 0;
  bool starred = false;
  bool hermitian = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

Letter make_letter(const VariableSpec& v, bool starred);

// Involution of a single letter: toggles the star except on hermitian
// variables.
Letter adjoint(Letter l);

// Letters order by (variable id, starred); unstarred before starred.
bool letter_less(Letter a, Letter b);

// A finite product of letters. The empty word is the multiplicative
// identity 1 with degree 0.
struct Word {
  std::vector<Letter> letters;

  int degree() const { return static_cast<int>(letters.size()); }
  bool is_identity() const { return letters.empty(); }

  friend bool operator==(const Word&, const Word&) = default;
};

// Total order on words: degree-major, then positional letter comparison.
bool word_less(const Word& a, const Word& b);

Word concat(const Word& v, const Word& w);

// Reverses the word and stars every letter; an involution and an
// anti-homomorphism with respect to concat.
Word involve(const Word& w);

// Renders a word with the declared variable names, collapsing repeated
// letters into powers ("x1^2*x2'"). The identity renders as "1".
std::string word_to_string(const Word& w, const std::vector<VariableSpec>& vars);

// Fallback rendering with synthetic names, for diagnostics.
std::string word_debug_string(const Word& w);

using LetterSpan = std::span<const Letter>;

struct WordHash {
  using is_transparent = void;

  std::size_t operator()(LetterSpan s) const noexcept;
  std::size_t operator()(const Word& w) const noexcept {
    return (*this)(LetterSpan(w.letters));
  }
};

struct WordEqual {
  using is_transparent = void;

  bool operator()(LetterSpan a, LetterSpan b) const noexcept;
  bool operator()(const Word& a, const Word& b) const noexcept {
    return a.letters == b.letters;
  }
  bool operator()(const Word& a, LetterSpan b) const noexcept {
    return (*this)(LetterSpan(a.letters), b);
  }
  bool operator()(LetterSpan a, const Word& b) const noexcept {
    return (*this)(a, LetterSpan(b.letters));
  }
};

// A real coefficient times a word. A zero coefficient is the canonical
// zero; its word normalizes to the identity.
struct Monomial {
  double coeff = 0.0;
  Word word;

  Monomial() = default;
  Monomial(double c, Word w) : coeff(c), word(c == 0.0 ? Word{} : std::move(w)) {}

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

// A finite real linear combination of words. No stored coefficient is zero.
class Polynomial {
 public:
  using TermMap = std::unordered_map<Word, double, WordHash, WordEqual>;

  Polynomial() = default;

  static Polynomial constant(double c);
  static Polynomial term(const Word& w, double coeff = 1.0);

  // Merges a term into the map, dropping the entry if it cancels to zero.
  void add_term(const Word& w, double coeff);

  double coeff(const Word& w) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  // Length of the longest stored word; 0 for the zero polynomial.
  int degree() const;

  // Terms in word order; use whenever iteration order must be stable.
  std::vector<std::pair<Word, double>> sorted_terms() const;

  Polynomial adjoint() const;
  bool is_hermitian() const { return *this == adjoint(); }

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(double s);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) {
    lhs += rhs;
    return lhs;
  }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) {
    lhs -= rhs;
    return lhs;
  }
  friend Polynomial operator*(Polynomial lhs, double s) {
    lhs *= s;
    return lhs;
  }
  friend Polynomial operator*(double s, Polynomial rhs) {
    rhs *= s;
    return rhs;
  }
  Polynomial operator-() const { return *this * -1.0; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend bool operator==(const Polynomial& lhs, const Polynomial& rhs) {
    return lhs.terms_ == rhs.terms_;
  }

 private:
  TermMap terms_;
};

class RuleSet;  // rewrite.hpp

// Enumerates all words of degree <= order over the variables' effective
// alphabet (a hermitian variable contributes one letter, others two),
// ordered by degree and then by letter order per position. With rules,
// every word is normalized and duplicates are removed, keeping first
// occurrences. The identity is always first.
std::vector<Word> generate_basis(const std::vector<VariableSpec>& vars, int order);
std::vector<Word> generate_basis(const std::vector<VariableSpec>& vars, int order,
                                 const RuleSet& rules);

}  // namespace ncrelax
