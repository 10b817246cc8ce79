#include "solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace ncrelax {

const char* solve_status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iter: return "max_iter";
    case SolveStatus::infeasible_suspected: return "infeasible_suspected";
  }
  return "unknown";
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct Coeff {
  int row = 0;  // 0-based
  int col = 0;  // 0-based, row <= col
  double value = 0.0;
};

// One block's data: the entries of every F_l restricted to it.
struct BlockData {
  int dim = 0;
  std::vector<std::vector<Coeff>> by_var;  // by_var[l], l = 0..m (0 is F_0)
  std::vector<int> support;                // variables l >= 1 with entries here
};

std::vector<BlockData> split_blocks(const SDPProblem& p) {
  std::vector<BlockData> blocks(p.block_sizes.size());
  for (int b = 0; b < p.block_count(); ++b) {
    blocks[b].dim = p.block_dim(b + 1);
    blocks[b].by_var.resize(static_cast<std::size_t>(p.nvars) + 1);
  }
  for (const SparseEntry& e : p.entries) {
    blocks[e.block - 1].by_var[e.var].push_back({e.row - 1, e.col - 1, e.value});
  }
  for (BlockData& blk : blocks) {
    for (int l = 1; l <= p.nvars; ++l) {
      if (!blk.by_var[l].empty()) blk.support.push_back(l);
    }
  }
  return blocks;
}

MatrixXd dense_matrix(const BlockData& blk, int var) {
  MatrixXd f = MatrixXd::Zero(blk.dim, blk.dim);
  for (const Coeff& c : blk.by_var[var]) {
    f(c.row, c.col) = c.value;
    f(c.col, c.row) = c.value;
  }
  return f;
}

// trace(F G) for the symmetric sparse F given by upper-triangle coeffs.
double sparse_dot(const std::vector<Coeff>& coeffs, const MatrixXd& g) {
  double acc = 0.0;
  for (const Coeff& c : coeffs) {
    acc += c.row == c.col ? c.value * g(c.row, c.col)
                          : c.value * (g(c.row, c.col) + g(c.col, c.row));
  }
  return acc;
}

// S_b(x) = sum_l x_l F_l - F_0 on block b.
MatrixXd assemble_slack(const BlockData& blk, std::span<const double> x) {
  MatrixXd s = -dense_matrix(blk, 0);
  for (int l : blk.support) {
    const double xl = x[static_cast<std::size_t>(l) - 1];
    if (xl == 0.0) continue;
    for (const Coeff& c : blk.by_var[l]) {
      s(c.row, c.col) += xl * c.value;
      if (c.row != c.col) s(c.col, c.row) += xl * c.value;
    }
  }
  return s;
}

double min_eigenvalue(const MatrixXd& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

// Largest alpha in (0, 1] with m + alpha * dm psd, damped by tau.
double step_length(const MatrixXd& m, const MatrixXd& dm, double tau) {
  if (m.rows() == 0) return 1.0;
  Eigen::LLT<MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::numerical_failure, "iterate lost positive definiteness");
  }
  const MatrixXd l = llt.matrixL();
  MatrixXd w = l.triangularView<Eigen::Lower>().solve(dm);
  w = l.triangularView<Eigen::Lower>().solve(w.transpose()).eval();
  const double lambda = min_eigenvalue(0.5 * (w + w.transpose()));
  if (lambda >= 0.0) return 1.0;
  return std::min(1.0, -tau / lambda);
}

struct Iterate {
  VectorXd x;
  std::vector<MatrixXd> big_x;  // primal slack matrix per block
  std::vector<MatrixXd> big_y;  // dual matrix per block
};

class InteriorPoint {
 public:
  InteriorPoint(const SDPProblem& p, const SolverOptions& opts)
      : p_(p), opts_(opts), blocks_(split_blocks(p)), m_(p.nvars) {
    for (const BlockData& blk : blocks_) total_dim_ += blk.dim;
    double magnitude = 1.0;
    for (const SparseEntry& e : p.entries) magnitude = std::max(magnitude, std::fabs(e.value));
    for (double c : p.objective) magnitude = std::max(magnitude, std::fabs(c));
    rho_ = opts.initial_scale * 10.0 * magnitude;
    c_norm_ = 0.0;
    for (double c : p.objective) c_norm_ = std::max(c_norm_, std::fabs(c));
    f0_norm_ = 0.0;
    for (const SparseEntry& e : p.entries) {
      if (e.var == 0) f0_norm_ = std::max(f0_norm_, std::fabs(e.value));
    }
  }

  SDPSolution run();

 private:
  struct Residuals {
    std::vector<MatrixXd> primal;  // P_b = S_b(x) - X_b
    VectorXd dual;                 // d_l = c_l - <F_l, Y>
    double primal_err = 0.0;
    double dual_err = 0.0;
  };

  Residuals residuals(const Iterate& it) const;
  double mu(const Iterate& it) const;
  double primal_objective(const Iterate& it) const;
  double dual_objective(const Iterate& it) const;

  struct Direction {
    VectorXd dx;
    std::vector<MatrixXd> dbig_x;
    std::vector<MatrixXd> dbig_y;
  };

  // Solves the Newton system for the HKM direction with centering sigma*mu
  // and an optional Mehrotra corrector term dxp*dyp.
  Direction direction(const Iterate& it, const Residuals& res, double sigma_mu,
                      const Direction* corrector) const;

  const SDPProblem& p_;
  const SolverOptions& opts_;
  std::vector<BlockData> blocks_;
  int m_ = 0;
  int total_dim_ = 0;
  double rho_ = 1.0;
  double c_norm_ = 0.0;
  double f0_norm_ = 0.0;
};

InteriorPoint::Residuals InteriorPoint::residuals(const Iterate& it) const {
  Residuals res;
  res.dual = VectorXd::Zero(m_);
  for (int l = 0; l < m_; ++l) res.dual(l) = p_.objective[static_cast<std::size_t>(l)];
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    MatrixXd p_b = assemble_slack(blocks_[b], std::span<const double>(it.x.data(),
                                                                      it.x.size()));
    p_b -= it.big_x[b];
    res.primal_err = std::max(res.primal_err, p_b.size() == 0 ? 0.0 : p_b.cwiseAbs().maxCoeff());
    res.primal.push_back(std::move(p_b));
    for (int l : blocks_[b].support) {
      res.dual(l - 1) -= sparse_dot(blocks_[b].by_var[l], it.big_y[b]);
    }
  }
  res.primal_err /= 1.0 + f0_norm_;
  res.dual_err = m_ == 0 ? 0.0 : res.dual.cwiseAbs().maxCoeff() / (1.0 + c_norm_);
  return res;
}

double InteriorPoint::mu(const Iterate& it) const {
  if (total_dim_ == 0) return 0.0;
  double acc = 0.0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    acc += (it.big_x[b].array() * it.big_y[b].array()).sum();
  }
  return acc / total_dim_;
}

double InteriorPoint::primal_objective(const Iterate& it) const {
  double acc = 0.0;
  for (int l = 0; l < m_; ++l) acc += p_.objective[static_cast<std::size_t>(l)] * it.x(l);
  return acc;
}

double InteriorPoint::dual_objective(const Iterate& it) const {
  double acc = 0.0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    acc += sparse_dot(blocks_[b].by_var[0], it.big_y[b]);
  }
  return acc;
}

InteriorPoint::Direction InteriorPoint::direction(const Iterate& it,
                                                  const Residuals& res,
                                                  double sigma_mu,
                                                  const Direction* corrector) const {
  // Schur complement B_{lk} = <F_l, X^-1 F_k Y> and right-hand side
  // r_l = <F_l, X^-1 (Rc - P Y)> - d_l with Rc = sigma_mu I - X Y [- dXp dYp].
  MatrixXd schur = MatrixXd::Zero(m_, m_);
  VectorXd rhs = -res.dual;

  std::vector<MatrixXd> xinv(blocks_.size());
  std::vector<MatrixXd> rc(blocks_.size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int dim = blocks_[b].dim;
    Eigen::LLT<MatrixXd> llt(it.big_x[b]);
    if (llt.info() != Eigen::Success) {
      throw Error(ErrorCode::numerical_failure,
                  "Cholesky factorization of the primal iterate failed");
    }
    xinv[b] = llt.solve(MatrixXd::Identity(dim, dim));
    rc[b] = sigma_mu * MatrixXd::Identity(dim, dim) - it.big_x[b] * it.big_y[b];
    if (corrector != nullptr) rc[b] -= corrector->dbig_x[b] * corrector->dbig_y[b];

    const MatrixXd t = xinv[b] * (rc[b] - res.primal[b] * it.big_y[b]);
    for (int l : blocks_[b].support) {
      rhs(l - 1) += sparse_dot(blocks_[b].by_var[l], t);
    }
    for (int k : blocks_[b].support) {
      const MatrixXd g = xinv[b] * dense_matrix(blocks_[b], k) * it.big_y[b];
      for (int l : blocks_[b].support) {
        schur(l - 1, k - 1) += sparse_dot(blocks_[b].by_var[l], g);
      }
    }
  }
  schur = 0.5 * (schur + schur.transpose()).eval();

  Direction dir;
  if (m_ > 0) {
    Eigen::LDLT<MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      throw Error(ErrorCode::numerical_failure, "Schur complement factorization failed");
    }
    dir.dx = ldlt.solve(rhs);
    if (!dir.dx.allFinite()) {
      throw Error(ErrorCode::numerical_failure, "search direction is not finite");
    }
  } else {
    dir.dx = VectorXd::Zero(0);
  }

  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    MatrixXd dx_b = res.primal[b];
    for (int l : blocks_[b].support) {
      const double step = dir.dx(l - 1);
      if (step == 0.0) continue;
      for (const Coeff& c : blocks_[b].by_var[l]) {
        dx_b(c.row, c.col) += step * c.value;
        if (c.row != c.col) dx_b(c.col, c.row) += step * c.value;
      }
    }
    MatrixXd dy_b = xinv[b] * (rc[b] - dx_b * it.big_y[b]);
    dy_b = 0.5 * (dy_b + dy_b.transpose()).eval();
    dir.dbig_x.push_back(std::move(dx_b));
    dir.dbig_y.push_back(std::move(dy_b));
  }
  return dir;
}

SDPSolution InteriorPoint::run() {
  SDPSolution sol;
  sol.x.assign(static_cast<std::size_t>(m_), 0.0);

  if (m_ == 0 || blocks_.empty()) {
    sol.status = SolveStatus::optimal;
    return sol;
  }

  Iterate it;
  it.x = VectorXd::Zero(m_);
  for (const BlockData& blk : blocks_) {
    it.big_x.push_back(rho_ * MatrixXd::Identity(blk.dim, blk.dim));
    it.big_y.push_back(rho_ * MatrixXd::Identity(blk.dim, blk.dim));
  }

  const double feas_tol = 0.1 * opts_.tol_gap;
  const double diverged = 1e8 * std::max(1.0, rho_);

  for (int iter = 0; iter <= opts_.max_iter; ++iter) {
    const Residuals res = residuals(it);
    const double mu_now = mu(it);
    const double pobj = primal_objective(it);
    const double dobj = dual_objective(it);
    sol.trace.push_back({pobj, dobj, res.primal_err, res.dual_err, mu_now});
    sol.iterations = iter;
    sol.primal_obj = pobj;
    sol.dual_obj = dobj;
    for (int l = 0; l < m_; ++l) sol.x[static_cast<std::size_t>(l)] = it.x(l);

    const bool gap_ok = std::fabs(pobj - dobj) <= opts_.tol_gap * (1.0 + std::fabs(pobj));
    if (gap_ok && res.primal_err <= feas_tol && res.dual_err <= feas_tol) {
      sol.status = SolveStatus::optimal;
      return sol;
    }
    // A near-feasible iterate whose objective runs away is a divergence
    // certificate: an unbounded dual improving ray means the primal is
    // infeasible, and vice versa.
    if ((dobj > diverged && res.dual_err <= 1e-4) ||
        (pobj < -diverged && res.primal_err <= 1e-4) ||
        it.x.cwiseAbs().maxCoeff() > 1e12 || mu_now > 1e16) {
      sol.status = SolveStatus::infeasible_suspected;
      return sol;
    }
    if (iter == opts_.max_iter) break;

    const double tau =
        (res.primal_err < 1e-6 && res.dual_err < 1e-6) ? 0.98 : 0.9;

    // Predictor (affine scaling).
    Direction aff = direction(it, res, 0.0, nullptr);
    double alpha_p = 1.0;
    double alpha_d = 1.0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      alpha_p = std::min(alpha_p, step_length(it.big_x[b], aff.dbig_x[b], tau));
      alpha_d = std::min(alpha_d, step_length(it.big_y[b], aff.dbig_y[b], tau));
    }
    double mu_aff = 0.0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      mu_aff += ((it.big_x[b] + alpha_p * aff.dbig_x[b]).array() *
                 (it.big_y[b] + alpha_d * aff.dbig_y[b]).array())
                    .sum();
    }
    mu_aff = std::max(mu_aff / total_dim_, 0.0);
    double sigma = mu_now > 0.0 ? std::pow(mu_aff / mu_now, 3.0) : 0.0;
    sigma = std::clamp(sigma, 1e-8, 1.0);

    // Corrector.
    Direction dir = direction(it, res, sigma * mu_now, &aff);
    alpha_p = 1.0;
    alpha_d = 1.0;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      alpha_p = std::min(alpha_p, step_length(it.big_x[b], dir.dbig_x[b], tau));
      alpha_d = std::min(alpha_d, step_length(it.big_y[b], dir.dbig_y[b], tau));
    }

    it.x += alpha_p * dir.dx;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      it.big_x[b] += alpha_p * dir.dbig_x[b];
      it.big_y[b] += alpha_d * dir.dbig_y[b];
    }
  }

  sol.status = SolveStatus::max_iter;
  return sol;
}

// Blocks without variable entries either certify constant infeasibility or
// impose nothing; variables absent from every block make the objective
// unbounded unless their cost is zero. Both would leave the Newton system
// without an interior, so they are split off before iterating.
struct PrunedProblem {
  SDPProblem reduced;
  std::vector<int> var_map;  // reduced index (1-based) per original variable
  bool infeasible = false;
  bool unbounded = false;
};

PrunedProblem prune(const SDPProblem& p) {
  PrunedProblem out;
  std::vector<char> block_has_var(static_cast<std::size_t>(p.block_count()), 0);
  std::vector<char> var_used(static_cast<std::size_t>(p.nvars) + 1, 0);
  for (const SparseEntry& e : p.entries) {
    if (e.var > 0) {
      block_has_var[static_cast<std::size_t>(e.block) - 1] = 1;
      var_used[static_cast<std::size_t>(e.var)] = 1;
    }
  }

  double f0_norm = 0.0;
  for (const SparseEntry& e : p.entries) {
    if (e.var == 0) f0_norm = std::max(f0_norm, std::fabs(e.value));
  }
  std::vector<BlockData> blocks = split_blocks(p);
  for (int b = 0; b < p.block_count(); ++b) {
    if (block_has_var[static_cast<std::size_t>(b)]) continue;
    if (min_eigenvalue(-dense_matrix(blocks[static_cast<std::size_t>(b)], 0)) <
        -1e-9 * (1.0 + f0_norm)) {
      out.infeasible = true;
    }
  }

  out.var_map.assign(static_cast<std::size_t>(p.nvars) + 1, 0);
  for (int l = 1; l <= p.nvars; ++l) {
    if (var_used[static_cast<std::size_t>(l)]) {
      out.var_map[static_cast<std::size_t>(l)] = ++out.reduced.nvars;
      out.reduced.objective.push_back(p.objective[static_cast<std::size_t>(l) - 1]);
    } else if (p.objective[static_cast<std::size_t>(l) - 1] != 0.0) {
      out.unbounded = true;
    }
  }

  std::vector<int> block_map(static_cast<std::size_t>(p.block_count()) + 1, 0);
  for (int b = 1; b <= p.block_count(); ++b) {
    if (!block_has_var[static_cast<std::size_t>(b) - 1]) continue;
    out.reduced.block_sizes.push_back(p.block_sizes[static_cast<std::size_t>(b) - 1]);
    block_map[static_cast<std::size_t>(b)] =
        static_cast<int>(out.reduced.block_sizes.size());
  }
  for (const SparseEntry& e : p.entries) {
    const int nb = block_map[static_cast<std::size_t>(e.block)];
    if (nb == 0) continue;
    out.reduced.entries.push_back(
        {e.var == 0 ? 0 : out.var_map[static_cast<std::size_t>(e.var)], nb, e.row,
         e.col, e.value});
  }
  return out;
}

}  // namespace

SDPSolution solve(const SDPProblem& p, const SolverOptions& opts) {
  p.validate();
  if (opts.tol_gap <= 0.0 || opts.max_iter < 1 || opts.initial_scale <= 0.0) {
    throw Error(ErrorCode::invalid_argument, "invalid solver options");
  }

  PrunedProblem pruned = prune(p);
  if (pruned.infeasible || pruned.unbounded) {
    SDPSolution sol;
    sol.x.assign(static_cast<std::size_t>(p.nvars), 0.0);
    sol.status = SolveStatus::infeasible_suspected;
    return sol;
  }

  InteriorPoint ipm(pruned.reduced, opts);
  SDPSolution sol = ipm.run();

  // Scatter the reduced point back onto the original variable indices.
  std::vector<double> x(static_cast<std::size_t>(p.nvars), 0.0);
  for (int l = 1; l <= p.nvars; ++l) {
    const int rl = pruned.var_map[static_cast<std::size_t>(l)];
    if (rl > 0) x[static_cast<std::size_t>(l) - 1] = sol.x[static_cast<std::size_t>(rl) - 1];
  }
  sol.x = std::move(x);
  return sol;
}

std::vector<double> check_feasibility(const SDPProblem& p, std::span<const double> x) {
  if (static_cast<int>(x.size()) != p.nvars) {
    throw Error(ErrorCode::invalid_argument,
                "point length does not match the variable count");
  }
  std::vector<BlockData> blocks = split_blocks(p);
  std::vector<double> eigs;
  eigs.reserve(blocks.size());
  for (const BlockData& blk : blocks) {
    eigs.push_back(min_eigenvalue(assemble_slack(blk, x)));
  }
  return eigs;
}

bool is_feasible(const SDPProblem& p, std::span<const double> x, double tol) {
  for (double e : check_feasibility(p, x)) {
    if (e < -tol) return false;
  }
  return true;
}

}  // namespace ncrelax
