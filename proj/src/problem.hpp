#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "algebra.hpp"
#include "relaxation.hpp"
#include "rewrite.hpp"

namespace ncrelax {

// A polynomial optimization problem over noncommuting variables, as read
// from the line-oriented text format:
//
//   vars <name>... [hermitian]
//   objective <poly>
//   ineq <poly>         # poly >= 0, repeatable
//   eq <poly>           # poly = 0, repeatable
//   sub <mono> -> [-]<mono|1>
//   order <d>
//
// Polynomial terms join with + and -, factors with *, powers with ^;
// <name>' is the adjoint letter and # starts a comment.
struct ProblemDef {
  std::vector<VariableSpec> variables;
  Polynomial objective;
  std::vector<Polynomial> inequalities;
  std::vector<Polynomial> equalities;
  std::vector<RewriteRule> substitutions;
  int order = 0;

  friend bool operator==(const ProblemDef&, const ProblemDef&) = default;
};

ProblemDef parse_problem(std::string_view text);
ProblemDef parse_problem_file(const std::string& path);

// Canonical text form; parse_problem(format_problem(def)) reproduces def.
std::string format_problem(const ProblemDef& def);

std::string polynomial_to_string(const Polynomial& p,
                                 const std::vector<VariableSpec>& vars);

Relaxation relax(const ProblemDef& def, int max_passes = kDefaultMaxPasses);

enum class BenchMode { substitutions, equalities };

// The scaling benchmark: minimize sum_{i,j} x_i x_j over n hermitian
// variables subject to x_i^2 = 1 and x_i x_j = x_j x_i. In substitution mode
// the commutation goes into rewrite rules and the squares stay equalities;
// all_subs turns the squares into rules too. In equality mode everything is
// declared as equalities.
ProblemDef benchmark_problem(int nvars, BenchMode mode, int order = 1,
                             bool all_subs = false);

}  // namespace ncrelax
