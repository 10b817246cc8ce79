#include "sdpa.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "errors.hpp"
#include "numformat.hpp"

namespace ncrelax {

bool entry_less(const SparseEntry& a, const SparseEntry& b) {
  return std::tie(a.var, a.block, a.row, a.col) <
         std::tie(b.var, b.block, b.row, b.col);
}

void SDPProblem::validate() const {
  if (nvars < 0) {
    throw Error(ErrorCode::invariant_violation, "negative variable count");
  }
  if (static_cast<int>(objective.size()) != nvars) {
    throw Error(ErrorCode::invariant_violation,
                "objective length does not match the variable count");
  }
  for (int s : block_sizes) {
    if (s == 0) throw Error(ErrorCode::invariant_violation, "zero block size");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) {
      throw Error(ErrorCode::invariant_violation, "non-finite objective value");
    }
  }
  std::vector<SparseEntry> sorted = entries;
  std::sort(sorted.begin(), sorted.end(), entry_less);
  const SparseEntry* prev = nullptr;
  for (const SparseEntry& e : sorted) {
    auto fail = [&e](const std::string& what) {
      throw Error(ErrorCode::invariant_violation,
                  "entry (" + std::to_string(e.var) + " " + std::to_string(e.block) +
                      " " + std::to_string(e.row) + " " + std::to_string(e.col) + " " +
                      format_double(e.value) + "): " + what);
    };
    if (e.var < 0 || e.var > nvars) fail("variable index out of range");
    if (e.block < 1 || e.block > block_count()) fail("block index out of range");
    if (e.row < 1 || e.col < e.row) fail("not an upper-triangular position");
    if (e.col > block_dim(e.block)) fail("position exceeds the block size");
    if (block_diagonal(e.block) && e.row != e.col) {
      fail("off-diagonal entry in a diagonal block");
    }
    if (e.value == 0.0) fail("zero-valued entry");
    if (!std::isfinite(e.value)) fail("non-finite value");
    if (prev != nullptr && std::tie(prev->var, prev->block, prev->row, prev->col) ==
                               std::tie(e.var, e.block, e.row, e.col)) {
      fail("duplicate position");
    }
    prev = &e;
  }
}

bool operator==(const SDPProblem& a, const SDPProblem& b) {
  if (a.nvars != b.nvars || a.block_sizes != b.block_sizes ||
      a.objective != b.objective) {
    return false;
  }
  std::vector<SparseEntry> ea = a.entries;
  std::vector<SparseEntry> eb = b.entries;
  std::sort(ea.begin(), ea.end(), entry_less);
  std::sort(eb.begin(), eb.end(), entry_less);
  return ea == eb;
}

SDPProblem to_sdp(const Relaxation& rel) {
  SDPProblem p;
  p.nvars = rel.nvars;
  p.objective.assign(static_cast<std::size_t>(rel.nvars), 0.0);
  for (const auto& [index, coeff] : rel.objective) {
    p.objective.at(static_cast<std::size_t>(index - 1)) = coeff;
  }
  int block_index = 0;
  for (const Block& block : rel.blocks) {
    ++block_index;
    p.block_sizes.push_back(block.size);
    for (int i = 0; i < block.size; ++i) {
      for (int j = i; j < block.size; ++j) {
        const AffineExpr& entry = block.at(i, j);
        for (const auto& [var, coeff] : entry.coeffs) {
          p.entries.push_back({var, block_index, i + 1, j + 1, coeff});
        }
        if (entry.constant != 0.0) {
          p.entries.push_back({0, block_index, i + 1, j + 1, -entry.constant});
        }
      }
    }
  }
  std::sort(p.entries.begin(), p.entries.end(), entry_less);
  return p;
}

void write_sdpa(const SDPProblem& p, std::ostream& sink) {
  p.validate();
  sink << p.nvars << '\n';
  sink << p.block_count() << '\n';
  for (int b = 0; b < p.block_count(); ++b) {
    if (b > 0) sink << ' ';
    sink << p.block_sizes[b];
  }
  sink << '\n';
  for (std::size_t l = 0; l < p.objective.size(); ++l) {
    if (l > 0) sink << ' ';
    sink << format_double(p.objective[l]);
  }
  sink << '\n';
  std::vector<SparseEntry> sorted = p.entries;
  std::sort(sorted.begin(), sorted.end(), entry_less);
  for (const SparseEntry& e : sorted) {
    sink << e.var << ' ' << e.block << ' ' << e.row << ' ' << e.col << ' '
         << format_double(e.value) << '\n';
  }
  if (!sink) throw Error(ErrorCode::io_error, "write failed");
}

std::string write_sdpa_string(const SDPProblem& p) {
  std::ostringstream out;
  write_sdpa(p, out);
  return out.str();
}

void write_sdpa_file(const SDPProblem& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io_error, "cannot open " + path + " for writing");
  write_sdpa(p, out);
  out.flush();
  if (!out) throw Error(ErrorCode::io_error, "write to " + path + " failed");
}

namespace {

struct Token {
  std::string text;
  int line = 0;
};

// Comments are only recognized before the header; SDPA punctuation inside
// the block-size and objective rows reads as whitespace.
std::vector<Token> tokenize_sdpa(std::istream& source) {
  std::vector<Token> tokens;
  std::string line;
  int line_number = 0;
  bool header_seen = false;
  while (std::getline(source, line)) {
    ++line_number;
    std::string cleaned;
    cleaned.reserve(line.size());
    for (char c : line) {
      cleaned += (c == '{' || c == '}' || c == '(' || c == ')' || c == ',' ||
                  c == ';' || c == '\t' || c == '\r')
                     ? ' '
                     : c;
    }
    std::istringstream words(cleaned);
    std::string word;
    bool first_in_line = true;
    while (words >> word) {
      if (first_in_line && !header_seen && (word[0] == '"' || word[0] == '*')) {
        break;  // comment line
      }
      first_in_line = false;
      header_seen = true;
      tokens.push_back({std::move(word), line_number});
      word.clear();
    }
  }
  return tokens;
}

class TokenReader {
 public:
  explicit TokenReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  bool done() const { return next_ >= tokens_.size(); }
  int last_line() const {
    return tokens_.empty() ? 1 : tokens_.back().line;
  }

  const Token& take(const char* what) {
    if (done()) {
      throw ParseError(last_line(), 1,
                       std::string("unexpected end of input, expected ") + what);
    }
    return tokens_[next_++];
  }

  int take_int(const char* what) {
    const Token& t = take(what);
    int value = 0;
    if (!parse_int(t.text, value)) {
      throw ParseError(t.line, 1, "expected " + std::string(what) + ", got '" +
                                      t.text + "'");
    }
    return value;
  }

  double take_double(const char* what) {
    const Token& t = take(what);
    double value = 0.0;
    if (!parse_double(t.text, value)) {
      throw ParseError(t.line, 1, "expected " + std::string(what) + ", got '" +
                                      t.text + "'");
    }
    return value;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t next_ = 0;
};

}  // namespace

SDPProblem read_sdpa(std::istream& source) {
  TokenReader reader(tokenize_sdpa(source));

  SDPProblem p;
  p.nvars = reader.take_int("the variable count");
  const int nblocks = reader.take_int("the block count");
  if (p.nvars < 0 || nblocks < 0) {
    throw Error(ErrorCode::invariant_violation, "negative header count");
  }
  for (int b = 0; b < nblocks; ++b) {
    p.block_sizes.push_back(reader.take_int("a block size"));
  }
  for (int l = 0; l < p.nvars; ++l) {
    p.objective.push_back(reader.take_double("an objective value"));
  }
  while (!reader.done()) {
    SparseEntry e;
    e.var = reader.take_int("an entry variable index");
    e.block = reader.take_int("an entry block index");
    e.row = reader.take_int("an entry row");
    e.col = reader.take_int("an entry column");
    e.value = reader.take_double("an entry value");
    if (e.value == 0.0) continue;
    p.entries.push_back(e);
  }
  p.validate();
  return p;
}

SDPProblem read_sdpa_string(const std::string& text) {
  std::istringstream in(text);
  return read_sdpa(in);
}

SDPProblem read_sdpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return read_sdpa(in);
}

}  // namespace ncrelax
