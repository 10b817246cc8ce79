#pragma once

#include <span>
#include <vector>

#include "sdpa.hpp"

namespace ncrelax {

struct SolverOptions {
  double tol_gap = 1e-8;      // relative duality-gap tolerance
  int max_iter = 200;
  double initial_scale = 1.0; // multiplier on the starting identity iterates
};

enum class SolveStatus { optimal, max_iter, infeasible_suspected };

const char* solve_status_name(SolveStatus status);

struct IterationStat {
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  double primal_err = 0.0;
  double dual_err = 0.0;
  double mu = 0.0;
};

struct SDPSolution {
  double primal_obj = 0.0;
  double dual_obj = 0.0;
  std::vector<double> x;
  SolveStatus status = SolveStatus::max_iter;
  int iterations = 0;
  std::vector<IterationStat> trace;
};

// Dense primal-dual interior-point method (predictor-corrector, HKM
// direction) for  min c.x  s.t.  sum_l F_l x_l - F_0 >= 0.  Infeasible
// start from scaled identity iterates; deterministic. Sized for desk-scale
// problems (total block dimension up to a few hundred). Throws
// numerical_failure on factorization breakdown.
SDPSolution solve(const SDPProblem& p, const SolverOptions& opts = {});

// Assembles each block of sum F_l x_l - F_0 at the given point and returns
// its minimum eigenvalue, one value per block.
std::vector<double> check_feasibility(const SDPProblem& p, std::span<const double> x);

// True when every block's minimum eigenvalue is >= -tol.
bool is_feasible(const SDPProblem& p, std::span<const double> x, double tol);

}  // namespace ncrelax
