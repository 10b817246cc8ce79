#include "problem.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "errors.hpp"
#include "numformat.hpp"

namespace ncrelax {

namespace {

struct Token {
  enum class Kind { name, number, star, caret, plus, minus, arrow, end };

  Kind kind = Kind::end;
  std::string text;     // identifier (without the prime)
  bool starred = false; // name carried a trailing '
  double value = 0.0;   // number
  int column = 1;
};

class LineLexer {
 public:
  LineLexer(std::string_view line, int line_number)
      : line_(line), line_number_(line_number) {
    advance();
  }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

  [[noreturn]] void fail(const std::string& what, ErrorCode code) const {
    fail_at(current_.column, what, code);
  }
  [[noreturn]] void fail(const std::string& what) const {
    fail(what, ErrorCode::parse_error);
  }
  [[noreturn]] void fail_at(int column, const std::string& what, ErrorCode code) const {
    throw ParseError(line_number_, column, what, code);
  }

 private:
  void advance() {
    while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) {
      ++pos_;
    }
    current_ = Token{};
    current_.column = static_cast<int>(pos_) + 1;
    if (pos_ >= line_.size() || line_[pos_] == '#') {
      current_.kind = Token::Kind::end;
      return;
    }
    const char c = line_[pos_];
    if (c == '*') {
      current_.kind = Token::Kind::star;
      ++pos_;
    } else if (c == '^') {
      current_.kind = Token::Kind::caret;
      ++pos_;
    } else if (c == '+') {
      current_.kind = Token::Kind::plus;
      ++pos_;
    } else if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
      current_.kind = Token::Kind::arrow;
      pos_ += 2;
    } else if (c == '-') {
      current_.kind = Token::Kind::minus;
      ++pos_;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double value = 0.0;
      const char* begin = line_.data() + pos_;
      const char* end = line_.data() + line_.size();
      auto [ptr, ec] = std::from_chars(begin, end, value);
      if (ec != std::errc{} || ptr == begin) fail("malformed number");
      current_.kind = Token::Kind::number;
      current_.value = value;
      pos_ += static_cast<std::size_t>(ptr - begin);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < line_.size() &&
             (std::isalnum(static_cast<unsigned char>(line_[end])) || line_[end] == '_')) {
        ++end;
      }
      current_.kind = Token::Kind::name;
      current_.text = std::string(line_.substr(pos_, end - pos_));
      pos_ = end;
      if (pos_ < line_.size() && line_[pos_] == '\'') {
        current_.starred = true;
        ++pos_;
      }
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
  }

  std::string_view line_;
  int line_number_;
  std::size_t pos_ = 0;
  Token current_;
};

class ProblemParser {
 public:
  ProblemDef parse(std::string_view text) {
    std::size_t start = 0;
    int line_number = 0;
    while (start <= text.size()) {
      std::size_t stop = text.find('\n', start);
      if (stop == std::string_view::npos) stop = text.size();
      ++line_number;
      parse_line(text.substr(start, stop - start), line_number);
      start = stop + 1;
    }
    if (!have_objective_) {
      throw ParseError(line_number, 1, "missing objective");
    }
    if (!have_order_) {
      throw ParseError(line_number, 1, "missing order");
    }
    return std::move(def_);
  }

 private:
  void parse_line(std::string_view line, int line_number) {
    LineLexer lex(line, line_number);
    if (lex.peek().kind == Token::Kind::end) return;
    if (lex.peek().kind != Token::Kind::name) lex.fail("expected a keyword");
    const Token keyword = lex.take();
    if (keyword.text == "vars") {
      parse_vars(lex);
    } else if (keyword.text == "objective") {
      if (have_objective_) {
        lex.fail("a second objective line", ErrorCode::duplicate_section);
      }
      def_.objective = parse_poly(lex);
      have_objective_ = true;
    } else if (keyword.text == "ineq") {
      def_.inequalities.push_back(parse_poly(lex));
    } else if (keyword.text == "eq") {
      def_.equalities.push_back(parse_poly(lex));
    } else if (keyword.text == "sub") {
      parse_sub(lex);
    } else if (keyword.text == "order") {
      if (have_order_) {
        lex.fail("a second order line", ErrorCode::duplicate_section);
      }
      if (lex.peek().kind != Token::Kind::number) lex.fail("expected the order");
      const Token t = lex.take();
      if (t.value < 1.0 || t.value != std::floor(t.value)) {
        lex.fail("order must be a positive integer");
      }
      def_.order = static_cast<int>(t.value);
      have_order_ = true;
      expect_end(lex);
    } else {
      lex.fail("unknown keyword '" + keyword.text + "'");
    }
  }

  void parse_vars(LineLexer& lex) {
    std::vector<std::string> names;
    while (lex.peek().kind == Token::Kind::name) {
      Token t = lex.take();
      if (t.starred) lex.fail("variable declarations cannot be starred");
      names.push_back(std::move(t.text));
    }
    expect_end(lex);
    if (names.empty()) lex.fail("expected variable names");
    bool hermitian = false;
    if (names.back() == "hermitian") {
      hermitian = true;
      names.pop_back();
      if (names.empty()) lex.fail("expected variable names before 'hermitian'");
    }
    for (std::string& name : names) {
      if (by_name_.contains(name)) lex.fail("duplicate variable '" + name + "'");
      VariableSpec v;
      v.id = static_cast<int>(def_.variables.size());
      v.name = name;
      v.hermitian = hermitian;
      by_name_.emplace(std::move(name), v.id);
      def_.variables.push_back(std::move(v));
    }
  }

  void parse_sub(LineLexer& lex) {
    const Monomial lhs = parse_term(lex, 1);
    if (lhs.coeff != 1.0) {
      lex.fail("substitution left-hand side cannot carry a coefficient",
               ErrorCode::bad_substitution_coefficient);
    }
    if (lex.peek().kind != Token::Kind::arrow) lex.fail("expected '->'");
    lex.take();
    int sign = 1;
    if (lex.peek().kind == Token::Kind::minus) {
      sign = -1;
      lex.take();
    }
    const Monomial rhs = parse_term(lex, sign);
    expect_end(lex);
    if (std::fabs(rhs.coeff) != 1.0) {
      lex.fail("substitution right-hand side multiplier must be +1 or -1",
               ErrorCode::bad_substitution_coefficient);
    }
    def_.substitutions.push_back(
        RewriteRule{lhs.word, rhs.coeff < 0.0 ? -1 : 1, rhs.word});
  }

  Polynomial parse_poly(LineLexer& lex) {
    Polynomial poly;
    int sign = 1;
    if (lex.peek().kind == Token::Kind::plus || lex.peek().kind == Token::Kind::minus) {
      sign = lex.take().kind == Token::Kind::minus ? -1 : 1;
    }
    for (;;) {
      const Monomial term = parse_term(lex, sign);
      poly.add_term(term.word, term.coeff);
      if (lex.peek().kind == Token::Kind::end) break;
      if (lex.peek().kind == Token::Kind::plus) {
        sign = 1;
      } else if (lex.peek().kind == Token::Kind::minus) {
        sign = -1;
      } else {
        lex.fail("expected '+', '-' or end of line");
      }
      lex.take();
    }
    return poly;
  }

  // One product of literals and (powers of) letters.
  Monomial parse_term(LineLexer& lex, int sign) {
    double coeff = sign;
    Word word;
    for (;;) {
      const Token::Kind kind = lex.peek().kind;
      if (kind == Token::Kind::number) {
        coeff *= lex.take().value;
      } else if (kind == Token::Kind::name) {
        const Token t = lex.take();
        auto found = by_name_.find(t.text);
        if (found == by_name_.end()) {
          lex.fail_at(t.column, "undeclared variable '" + t.text + "'",
                      ErrorCode::undeclared_variable);
        }
        const Letter letter = make_letter(def_.variables[found->second], t.starred);
        int power = 1;
        if (lex.peek().kind == Token::Kind::caret) {
          lex.take();
          if (lex.peek().kind != Token::Kind::number) lex.fail("expected an exponent");
          const Token e = lex.take();
          if (e.value < 0.0 || e.value != std::floor(e.value) || e.value > 1e4) {
            lex.fail("exponent must be a small nonnegative integer");
          }
          power = static_cast<int>(e.value);
        }
        word.letters.insert(word.letters.end(), static_cast<std::size_t>(power), letter);
      } else {
        lex.fail("expected a factor");
      }
      if (lex.peek().kind != Token::Kind::star) break;
      lex.take();
    }
    return Monomial(coeff, std::move(word));
  }

  void expect_end(LineLexer& lex) {
    if (lex.peek().kind != Token::Kind::end) lex.fail("trailing input");
  }

  ProblemDef def_;
  std::unordered_map<std::string, int> by_name_;
  bool have_objective_ = false;
  bool have_order_ = false;
};

}  // namespace

ProblemDef parse_problem(std::string_view text) {
  return ProblemParser{}.parse(text);
}

ProblemDef parse_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_problem(buffer.str());
}

namespace {

std::string term_to_string(const Word& w, double magnitude,
                           const std::vector<VariableSpec>& vars) {
  if (w.is_identity()) return format_double(magnitude);
  if (magnitude == 1.0) return word_to_string(w, vars);
  return format_double(magnitude) + "*" + word_to_string(w, vars);
}

}  // namespace

std::string polynomial_to_string(const Polynomial& p,
                                 const std::vector<VariableSpec>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : p.sorted_terms()) {
    if (out.empty()) {
      if (c < 0.0) out += '-';
    } else {
      out += c < 0.0 ? " - " : " + ";
    }
    out += term_to_string(w, std::fabs(c), vars);
  }
  return out;
}

std::string format_problem(const ProblemDef& def) {
  std::string out;
  std::size_t i = 0;
  while (i < def.variables.size()) {
    std::size_t j = i;
    while (j < def.variables.size() &&
           def.variables[j].hermitian == def.variables[i].hermitian) {
      ++j;
    }
    out += "vars";
    for (std::size_t k = i; k < j; ++k) out += " " + def.variables[k].name;
    if (def.variables[i].hermitian) out += " hermitian";
    out += '\n';
    i = j;
  }
  out += "objective " + polynomial_to_string(def.objective, def.variables) + '\n';
  for (const Polynomial& g : def.inequalities) {
    out += "ineq " + polynomial_to_string(g, def.variables) + '\n';
  }
  for (const Polynomial& h : def.equalities) {
    out += "eq " + polynomial_to_string(h, def.variables) + '\n';
  }
  for (const RewriteRule& rule : def.substitutions) {
    out += "sub " + word_to_string(rule.lhs, def.variables) + " -> ";
    if (rule.rhs_sign < 0) out += '-';
    out += word_to_string(rule.rhs, def.variables) + '\n';
  }
  out += "order " + std::to_string(def.order) + '\n';
  return out;
}

Relaxation relax(const ProblemDef& def, int max_passes) {
  return get_relaxation(def.objective, def.inequalities, def.equalities,
                        def.variables, def.substitutions, def.order, max_passes);
}

ProblemDef benchmark_problem(int nvars, BenchMode mode, int order, bool all_subs) {
  if (nvars < 2) {
    throw Error(ErrorCode::invalid_argument, "the benchmark needs at least 2 variables");
  }
  ProblemDef def;
  def.order = order;
  for (int i = 0; i < nvars; ++i) {
    def.variables.push_back({i, "x" + std::to_string(i + 1), true});
  }
  auto letter = [&def](int i) { return make_letter(def.variables[static_cast<std::size_t>(i)], false); };
  auto word1 = [&](int i) { return Word{{letter(i)}}; };
  auto word2 = [&](int i, int j) { return Word{{letter(i), letter(j)}}; };

  for (int i = 0; i < nvars; ++i) {
    for (int j = 0; j < nvars; ++j) def.objective.add_term(word2(i, j), 1.0);
  }

  // x_i^2 = 1 for every variable.
  std::vector<Polynomial> squares;
  for (int i = 0; i < nvars; ++i) {
    squares.push_back(Polynomial::term(word2(i, i)) - Polynomial::constant(1.0));
  }

  if (mode == BenchMode::substitutions) {
    for (int i = 0; i < nvars; ++i) {
      for (int j = i + 1; j < nvars; ++j) {
        def.substitutions.push_back(RewriteRule{word2(j, i), 1, word2(i, j)});
      }
    }
    if (all_subs) {
      for (int i = 0; i < nvars; ++i) {
        def.substitutions.push_back(RewriteRule{word2(i, i), 1, Word{}});
      }
    } else {
      def.equalities = squares;
    }
  } else {
    def.equalities = squares;
    for (int i = 0; i < nvars; ++i) {
      for (int j = i + 1; j < nvars; ++j) {
        def.equalities.push_back(Polynomial::term(word2(i, j)) -
                                 Polynomial::term(word2(j, i)));
      }
    }
  }
  return def;
}

}  // namespace ncrelax
