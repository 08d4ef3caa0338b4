#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pcity/model.hpp"

namespace pcity::lp {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit, Error };

const char* to_string(LpStatus status);

enum class VarStatus : std::int8_t { Basic, AtLower, AtUpper, Free };

/// Warm-start information: one status per column followed by one per row.
struct Basis {
  std::vector<VarStatus> status;
  bool empty() const { return status.empty(); }
};

struct SimplexOptions {
  double primal_tolerance = 1e-9;
  double dual_tolerance = 1e-9;
  double pivot_tolerance = 1e-9;
  int refactor_interval = 80;
  std::int64_t iteration_limit = 1'000'000;  // per solve() call
  /// Consecutive non-improving pivots before switching to smallest-index
  /// (Bland) selection.
  int bland_after = 200;
  /// Relative size of the deterministic cost perturbation; 0 disables it.
  double cost_perturbation = 1e-7;
  /// Bound used to box variables with infinite bounds. An optimum resting on
  /// this artificial box is reported as Unbounded.
  double artificial_bound = 1e9;
};

/// Bounded dual simplex over  min c'x  s.t.  row_lower <= A x <= row_upper,
/// col_lower <= x <= col_upper.
///
/// Each row gets a logical variable s = a_i x so the working matrix is
/// [A | -I]. The basis inverse is kept dense and updated in product form;
/// it is rebuilt from an LU factorization every `refactor_interval` pivots.
/// Every starting basis is made dual feasible by placing nonbasic columns at
/// the bound matching the sign of their reduced cost, so no phase one is
/// needed.
class DualSimplex {
 public:
  DualSimplex(int num_cols, std::vector<double> cost, std::vector<double> col_lower,
              std::vector<double> col_upper, SimplexOptions options = {});

  /// Appends a row; returns its index. The new logical starts basic.
  int add_row(const std::vector<int>& index, const std::vector<double>& coef, double lower, double upper);

  void set_col_bounds(int col, double lower, double upper);
  double col_lower(int col) const { return lower_[static_cast<std::size_t>(col)]; }
  double col_upper(int col) const { return upper_[static_cast<std::size_t>(col)]; }

  int num_cols() const { return num_cols_; }
  int num_rows() const { return num_rows_; }

  LpStatus solve();
  /// Same with a pivot budget for this call only.
  LpStatus solve(std::int64_t iteration_limit);

  /// Values of the structural columns after solve().
  std::vector<double> primal() const;
  /// Row activities a_i x.
  std::vector<double> row_activity() const;
  /// Objective with the unperturbed costs.
  double objective() const;
  std::int64_t iterations() const { return total_iterations_; }
  const std::string& message() const { return message_; }

  Basis basis() const;
  /// Restores a basis; rows beyond the stored size get basic logicals.
  void set_basis(const Basis& basis);

 private:
  struct Column {
    std::vector<int> index;
    std::vector<double> value;
  };

  // index j < num_cols_ : structural; j >= num_cols_ : logical of row j - num_cols_.
  int total() const { return num_cols_ + num_rows_; }
  bool refactor();
  void compute_primal();
  void compute_duals();
  void place_nonbasic_dual_feasible(bool allow_flip);
  double column_dot(const std::vector<double>& dense, int j) const;
  void column_ftran(int j, std::vector<double>& out) const;
  LpStatus iterate(bool perturbed);
  bool on_artificial_bound() const;
  // Replaces basic_[r] using the ftran'd entering column; updates B^-1 and the
  // steepest-edge weights.
  void pivot_inverse(int r, const std::vector<double>& alpha_col);
  bool pivot_to(const std::vector<VarStatus>& target);

  int num_cols_ = 0;
  int num_rows_ = 0;
  SimplexOptions options_;
  std::vector<Column> columns_;

  std::vector<double> cost_;       // original costs (structurals, logicals 0)
  std::vector<double> work_cost_;  // possibly perturbed
  std::vector<double> lower_, upper_;        // working bounds (artificially boxed)
  std::vector<double> original_lower_, original_upper_;  // construction-time column bounds
  std::vector<bool> artificial_lower_, artificial_upper_;
  std::vector<VarStatus> status_;
  std::vector<int> basic_;        // row position -> variable
  std::vector<int> position_;     // variable -> row position or -1
  std::vector<double> x_;         // values of all variables
  std::vector<double> d_;         // reduced costs
  std::vector<double> binv_;      // dense row-major basis inverse
  std::vector<double> dse_;       // squared row norms of binv_
  bool factor_valid_ = false;
  int since_refactor_ = 0;
  std::int64_t total_iterations_ = 0;
  std::int64_t iteration_cap_ = 0;
  std::string message_;
};

/// Builds a DualSimplex from a model's constraints and bounds (integrality is
/// ignored). Fixed columns are removed; `column_map[j]` is the LP column of
/// model variable j or -1 when fixed at `fixed_value[j]`.
struct LpInstance {
  DualSimplex simplex;
  std::vector<int> column_map;
  std::vector<int> model_var;  // LP column -> model variable
  std::vector<double> fixed_value;
  double constant = 0.0;  // objective contribution of fixed columns + offset

  std::vector<double> model_values() const;
};

LpInstance make_lp(const MilpModel& model, const SimplexOptions& options = {});

/// Appends a model-space row to an LpInstance, folding fixed columns into the bounds.
int add_model_row(LpInstance& lp, const Constraint& row);

}  // namespace pcity::lp
