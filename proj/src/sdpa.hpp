#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "relaxation.hpp"

namespace ncrelax {

// One nonzero upper-triangular entry of a constraint matrix: F_var has value
// at (row, col) of the given block. var 0 addresses F_0; row, col and block
// are 1-based.
struct SparseEntry {
  int var = 0;
  int block = 0;
  int row = 0;
  int col = 0;
  double value = 0.0;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

bool entry_less(const SparseEntry& a, const SparseEntry& b);

// The standard-form SDP  min c.x  s.t.  sum_l F_l x_l - F_0 >= 0  with
// block-diagonal constraint matrices. A negative block size means a diagonal
// block of that magnitude.
struct SDPProblem {
  int nvars = 0;
  std::vector<int> block_sizes;
  std::vector<double> objective;  // c, length nvars
  std::vector<SparseEntry> entries;

  int block_count() const { return static_cast<int>(block_sizes.size()); }
  int block_dim(int block_1based) const {
    int s = block_sizes.at(block_1based - 1);
    return s < 0 ? -s : s;
  }
  bool block_diagonal(int block_1based) const {
    return block_sizes.at(block_1based - 1) < 0;
  }

  // Throws invariant_violation if any entry is out of range, duplicated,
  // below the diagonal, zero-valued or non-finite.
  void validate() const;

  // Structural equality; entry order does not matter.
  friend bool operator==(const SDPProblem& a, const SDPProblem& b);
};

// Flattens a relaxation into sparse SDP data. Each affine entry k + sum a_l y_l
// becomes one entry per a_l plus (0, b, i, j, -k), so that
// sum F_l x_l - F_0 reproduces the affine value. Entries come out sorted by
// (var, block, row, col). The objective shift is not representable in this
// form and stays with the relaxation.
SDPProblem to_sdp(const Relaxation& rel);

// Sparse SDPA (.dat-s) writer: the variable count, the block count, the block
// sizes, the objective row, then one "l b i j v" line per entry sorted by
// (l, b, i, j). No comment lines are emitted.
void write_sdpa(const SDPProblem& p, std::ostream& sink);
std::string write_sdpa_string(const SDPProblem& p);
void write_sdpa_file(const SDPProblem& p, const std::string& path);

// Sparse SDPA reader. Comment lines starting with '"' or '*' are allowed
// before the header, and {} () , ; punctuation is treated as whitespace.
// Zero-valued entries are dropped. Malformed input throws parse_error;
// out-of-range entries throw invariant_violation.
SDPProblem read_sdpa(std::istream& source);
SDPProblem read_sdpa_string(const std::string& text);
SDPProblem read_sdpa_file(const std::string& path);

}  // namespace ncrelax
