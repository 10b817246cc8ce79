/*
 * ncrelax C API: SDP relaxations for polynomial optimization problems of
 * noncommuting variables.
 *
 * All objects are opaque handles created and destroyed by this library.
 * Functions that can fail return an ncrelax_status; on failure the output
 * handle is untouched and ncrelax_last_error() describes what went wrong
 * (per thread, valid until the next failing call on that thread).
 */

#ifndef NCRELAX_H
#define NCRELAX_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncrelax_status {
  NCRELAX_OK = 0,
  NCRELAX_ERR_PARSE,
  NCRELAX_ERR_UNDECLARED_VARIABLE,
  NCRELAX_ERR_DUPLICATE_SECTION,
  NCRELAX_ERR_BAD_SUBSTITUTION,
  NCRELAX_ERR_DUPLICATE_LHS,
  NCRELAX_ERR_EMPTY_LHS,
  NCRELAX_ERR_CYCLE_SUSPECTED,
  NCRELAX_ERR_UNKNOWN_MOMENT,
  NCRELAX_ERR_ORDER_TOO_LOW,
  NCRELAX_ERR_INVARIANT,
  NCRELAX_ERR_NUMERICAL,
  NCRELAX_ERR_IO,
  NCRELAX_ERR_INVALID_ARGUMENT,
  NCRELAX_ERR_INTERNAL
} ncrelax_status;

typedef struct ncrelax_problem ncrelax_problem;
typedef struct ncrelax_relaxation ncrelax_relaxation;
typedef struct ncrelax_sdp ncrelax_sdp;
typedef struct ncrelax_solution ncrelax_solution;

const char* ncrelax_version(void);
const char* ncrelax_status_name(ncrelax_status status);
const char* ncrelax_last_error(void);

/* Frees a string returned by this library. */
void ncrelax_string_free(char* s);

/* ---- problem definitions ---------------------------------------------- */

ncrelax_status ncrelax_problem_parse(const char* text, ncrelax_problem** out);
ncrelax_status ncrelax_problem_parse_file(const char* path, ncrelax_problem** out);

/* mode 0: commutation as substitutions, squares as equalities;
 * mode 1: everything as equalities. all_subs additionally turns the squares
 * into substitutions (mode 0 only). */
ncrelax_status ncrelax_problem_benchmark(int nvars, int mode, int order,
                                         int all_subs, ncrelax_problem** out);

/* Canonical text form of the problem. */
ncrelax_status ncrelax_problem_format(const ncrelax_problem* p, char** out_text);

int ncrelax_problem_variable_count(const ncrelax_problem* p);
int ncrelax_problem_order(const ncrelax_problem* p);
void ncrelax_problem_free(ncrelax_problem* p);

/* ---- relaxations ------------------------------------------------------- */

/* Builds the moment-matrix relaxation at the problem's declared order.
 * max_passes bounds the substitution fixpoint loop; pass 0 for the
 * default (1000). */
ncrelax_status ncrelax_relax(const ncrelax_problem* p, int max_passes,
                             ncrelax_relaxation** out);

int ncrelax_relaxation_variable_count(const ncrelax_relaxation* r);
int ncrelax_relaxation_basis_size(const ncrelax_relaxation* r);
int ncrelax_relaxation_block_count(const ncrelax_relaxation* r);
/* Size of 1-based block b; block 1 is the moment block. */
int ncrelax_relaxation_block_size(const ncrelax_relaxation* r, int b);
double ncrelax_relaxation_objective_shift(const ncrelax_relaxation* r);
int ncrelax_relaxation_warning_count(const ncrelax_relaxation* r);
/* Borrowed pointer, valid while the relaxation lives. */
const char* ncrelax_relaxation_warning(const ncrelax_relaxation* r, int i);
void ncrelax_relaxation_free(ncrelax_relaxation* r);

/* ---- sparse SDPA data -------------------------------------------------- */

ncrelax_status ncrelax_sdp_from_relaxation(const ncrelax_relaxation* r,
                                           ncrelax_sdp** out);
ncrelax_status ncrelax_sdp_read_file(const char* path, ncrelax_sdp** out);
ncrelax_status ncrelax_sdp_write_file(const ncrelax_sdp* s, const char* path);
ncrelax_status ncrelax_sdp_write_string(const ncrelax_sdp* s, char** out_text);

int ncrelax_sdp_variable_count(const ncrelax_sdp* s);
int ncrelax_sdp_block_count(const ncrelax_sdp* s);
/* Signed size of 1-based block b; negative means a diagonal block. */
int ncrelax_sdp_block_size(const ncrelax_sdp* s, int b);
void ncrelax_sdp_free(ncrelax_sdp* s);

/* ---- solving ----------------------------------------------------------- */

typedef struct ncrelax_solver_options {
  double tol_gap;       /* relative duality-gap tolerance, default 1e-8 */
  int max_iter;         /* default 200 */
  double initial_scale; /* starting identity multiple, default 1.0 */
} ncrelax_solver_options;

void ncrelax_solver_options_init(ncrelax_solver_options* opts);

#define NCRELAX_SOLVE_OPTIMAL 0
#define NCRELAX_SOLVE_MAX_ITER 1
#define NCRELAX_SOLVE_INFEASIBLE_SUSPECTED 2

/* opts may be NULL for defaults. */
ncrelax_status ncrelax_solve(const ncrelax_sdp* s,
                             const ncrelax_solver_options* opts,
                             ncrelax_solution** out);

double ncrelax_solution_primal(const ncrelax_solution* s);
double ncrelax_solution_dual(const ncrelax_solution* s);
int ncrelax_solution_status(const ncrelax_solution* s);
int ncrelax_solution_iterations(const ncrelax_solution* s);
/* Copies min(len, nvars) variable values into buf; returns the count. */
int ncrelax_solution_variables(const ncrelax_solution* s, double* buf, int len);
void ncrelax_solution_free(ncrelax_solution* s);

/* Writes each block's minimum eigenvalue of sum F_l x_l - F_0 at x into
 * eigs (one per block). x must have the problem's variable count. */
ncrelax_status ncrelax_check_feasibility(const ncrelax_sdp* s, const double* x,
                                         int x_len, double* eigs, int eigs_len);

#ifdef __cplusplus
}
#endif

#endif /* NCRELAX_H */
