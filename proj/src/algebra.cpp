#include "algebra.hpp"

#include <algorithm>
#include <unordered_set>

#include "errors.hpp"
#include "rewrite.hpp"

namespace ncrelax {

Letter make_letter(const VariableSpec& v, bool starred) {
  Letter l;
  l.var = static_cast<std::uint16_t>(v.id);
  l.hermitian = v.hermitian;
  l.starred = starred && !v.hermitian;
  return l;
}

Letter adjoint(Letter l) {
  if (!l.hermitian) l.starred = !l.starred;
  return l;
}

bool letter_less(Letter a, Letter b) {
  if (a.var != b.var) return a.var < b.var;
  return a.starred < b.starred;
}

bool word_less(const Word& a, const Word& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    const Letter la = a.letters[i];
    const Letter lb = b.letters[i];
    if (!(la == lb)) return letter_less(la, lb);
  }
  return false;
}

Word concat(const Word& v, const Word& w) {
  Word out;
  out.letters.reserve(v.letters.size() + w.letters.size());
  out.letters.insert(out.letters.end(), v.letters.begin(), v.letters.end());
  out.letters.insert(out.letters.end(), w.letters.begin(), w.letters.end());
  return out;
}

Word involve(const Word& w) {
  Word out;
  out.letters.reserve(w.letters.size());
  for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
    out.letters.push_back(adjoint(*it));
  }
  return out;
}

namespace {

void append_letter(std::string& out, const std::string& name, bool starred, int power) {
  out += name;
  if (starred) out += '\'';
  if (power > 1) {
    out += '^';
    out += std::to_string(power);
  }
}

template <typename Namer>
std::string render_word(const Word& w, Namer name_of) {
  if (w.is_identity()) return "1";
  std::string out;
  std::size_t i = 0;
  while (i < w.letters.size()) {
    std::size_t j = i;
    while (j < w.letters.size() && w.letters[j] == w.letters[i]) ++j;
    if (!out.empty()) out += '*';
    append_letter(out, name_of(w.letters[i]), w.letters[i].starred,
                  static_cast<int>(j - i));
    i = j;
  }
  return out;
}

}  // namespace

std::string word_to_string(const Word& w, const std::vector<VariableSpec>& vars) {
  return render_word(w, [&](Letter l) { return vars.at(l.var).name; });
}

std::string word_debug_string(const Word& w) {
  return render_word(w, [](Letter l) { return "v" + std::to_string(l.var); });
}

std::size_t WordHash::operator()(LetterSpan s) const noexcept {
  // FNV-1a over (var, starred) pairs.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t byte) {
    h ^= byte;
    h *= 1099511628211ull;
  };
  for (const Letter& l : s) {
    mix(l.var & 0xffu);
    mix((l.var >> 8) & 0xffu);
    mix(l.starred ? 1u : 0u);
  }
  return static_cast<std::size_t>(h);
}

bool WordEqual::operator()(LetterSpan a, LetterSpan b) const noexcept {
  return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

Polynomial Polynomial::constant(double c) {
  Polynomial p;
  p.add_term(Word{}, c);
  return p;
}

Polynomial Polynomial::term(const Word& w, double coeff) {
  Polynomial p;
  p.add_term(w, coeff);
  return p;
}

void Polynomial::add_term(const Word& w, double coeff) {
  if (coeff == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(w, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0.0) terms_.erase(it);
  }
}

double Polynomial::coeff(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [w, c] : terms_) d = std::max(d, w.degree());
  return d;
}

std::vector<std::pair<Word, double>> Polynomial::sorted_terms() const {
  std::vector<std::pair<Word, double>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return word_less(a.first, b.first); });
  return out;
}

Polynomial Polynomial::adjoint() const {
  Polynomial out;
  for (const auto& [w, c] : terms_) out.add_term(involve(w), c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  for (const auto& [w, c] : rhs.terms_) add_term(w, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  Polynomial out;
  for (const auto& [wa, ca] : lhs.terms_) {
    for (const auto& [wb, cb] : rhs.terms_) {
      out.add_term(concat(wa, wb), ca * cb);
    }
  }
  return out;
}

namespace {

std::vector<Letter> effective_alphabet(const std::vector<VariableSpec>& vars) {
  std::vector<Letter> alphabet;
  alphabet.reserve(2 * vars.size());
  for (const VariableSpec& v : vars) {
    alphabet.push_back(make_letter(v, false));
    if (!v.hermitian) alphabet.push_back(make_letter(v, true));
  }
  return alphabet;
}

}  // namespace

std::vector<Word> generate_basis(const std::vector<VariableSpec>& vars, int order) {
  return generate_basis(vars, order, RuleSet{});
}

std::vector<Word> generate_basis(const std::vector<VariableSpec>& vars, int order,
                                 const RuleSet& rules) {
  if (order < 0) {
    throw Error(ErrorCode::invalid_argument, "basis order must be nonnegative");
  }
  const std::vector<Letter> alphabet = effective_alphabet(vars);

  std::vector<Word> basis;
  std::unordered_set<Word, WordHash, WordEqual> seen;
  auto emit = [&](const Word& raw) {
    Word w = normalize_word(raw, rules).second;
    if (seen.insert(w).second) basis.push_back(std::move(w));
  };

  emit(Word{});
  for (int degree = 1; degree <= order; ++degree) {
    if (alphabet.empty()) break;
    // Odometer over alphabet indices, most significant digit first, so the
    // scan is lexicographic within each degree.
    std::vector<std::size_t> digits(static_cast<std::size_t>(degree), 0);
    for (;;) {
      Word raw;
      raw.letters.reserve(digits.size());
      for (std::size_t d : digits) raw.letters.push_back(alphabet[d]);
      emit(raw);

      std::size_t pos = digits.size();
      while (pos > 0 && ++digits[pos - 1] == alphabet.size()) {
        digits[pos - 1] = 0;
        --pos;
      }
      if (pos == 0) break;
    }
  }
  return basis;
}

}  // namespace ncrelax
