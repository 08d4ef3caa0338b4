#include "pcity/simplex.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>

namespace pcity::lp {

namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Deterministic value in [0.5, 1) derived from an index.
double jitter(std::uint64_t j) {
  std::uint64_t z = j + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return 0.5 + 0.5 * static_cast<double>(z >> 11) / static_cast<double>(1ULL << 53);
}

}  // namespace

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
    case LpStatus::IterationLimit: return "IterationLimit";
    case LpStatus::Error: return "Error";
  }
  return "?";
}

DualSimplex::DualSimplex(int num_cols, std::vector<double> cost, std::vector<double> col_lower,
                         std::vector<double> col_upper, SimplexOptions options)
    : num_cols_(num_cols), options_(options), columns_(static_cast<std::size_t>(num_cols)) {
  cost_ = std::move(cost);
  lower_ = std::move(col_lower);
  upper_ = std::move(col_upper);
  artificial_lower_.assign(static_cast<std::size_t>(num_cols), false);
  artificial_upper_.assign(static_cast<std::size_t>(num_cols), false);
  original_lower_ = lower_;
  original_upper_ = upper_;
  for (int j = 0; j < num_cols; ++j) {
    if (!std::isfinite(lower_[j])) {
      lower_[j] = -options_.artificial_bound;
      artificial_lower_[j] = true;
    }
    if (!std::isfinite(upper_[j])) {
      upper_[j] = options_.artificial_bound;
      artificial_upper_[j] = true;
    }
  }
  work_cost_ = cost_;
  status_.assign(static_cast<std::size_t>(num_cols), VarStatus::AtLower);
  position_.assign(static_cast<std::size_t>(num_cols), -1);
  x_.assign(static_cast<std::size_t>(num_cols), 0.0);
  d_.assign(static_cast<std::size_t>(num_cols), 0.0);
  for (int j = 0; j < num_cols; ++j) {
    x_[j] = cost_[j] >= 0 ? lower_[j] : upper_[j];
    status_[j] = cost_[j] >= 0 ? VarStatus::AtLower : VarStatus::AtUpper;
  }
}

int DualSimplex::add_row(const std::vector<int>& index, const std::vector<double>& coef, double lower,
                         double upper) {
  const int row = num_rows_;
  double min_act = 0;
  double max_act = 0;
  for (std::size_t k = 0; k < index.size(); ++k) {
    const int j = index[k];
    const double v = coef[k];
    if (v == 0.0) continue;
    columns_[static_cast<std::size_t>(j)].index.push_back(row);
    columns_[static_cast<std::size_t>(j)].value.push_back(v);
    const double lo = original_lower_[j];
    const double up = original_upper_[j];
    min_act += v > 0 ? v * lo : v * up;
    max_act += v > 0 ? v * up : v * lo;
  }
  // Logical bounds are the row bounds, tightened to the attainable activity.
  double lo = std::max(lower, std::isfinite(min_act) ? min_act : -kInfinity);
  double up = std::min(upper, std::isfinite(max_act) ? max_act : kInfinity);
  bool art_lo = false;
  bool art_up = false;
  if (!std::isfinite(lo)) {
    lo = -options_.artificial_bound;
    art_lo = true;
  }
  if (!std::isfinite(up)) {
    up = options_.artificial_bound;
    art_up = true;
  }
  ++num_rows_;
  lower_.push_back(lo);
  upper_.push_back(up);
  artificial_lower_.push_back(art_lo);
  artificial_upper_.push_back(art_up);
  cost_.push_back(0.0);
  work_cost_.push_back(0.0);
  status_.push_back(VarStatus::Basic);
  position_.push_back(static_cast<int>(basic_.size()));
  basic_.push_back(num_cols_ + row);
  x_.push_back(0.0);
  d_.push_back(0.0);
  if (factor_valid_) {
    // B' = [[B, 0], [a_B, -1]]  =>  B'^-1 = [[B^-1, 0], [a_B B^-1, -1]].
    const int m = num_rows_ - 1;
    std::vector<double> grown(static_cast<std::size_t>(num_rows_) * num_rows_, 0.0);
    for (int i = 0; i < m; ++i) {
      std::copy_n(&binv_[static_cast<std::size_t>(i) * m], m, &grown[static_cast<std::size_t>(i) * num_rows_]);
    }
    double* last = &grown[static_cast<std::size_t>(m) * num_rows_];
    for (std::size_t k = 0; k < index.size(); ++k) {
      const int j = index[k];
      const int pos = position_[static_cast<std::size_t>(j)];
      if (pos < 0 || coef[k] == 0.0) continue;
      const double* brow = &binv_[static_cast<std::size_t>(pos) * m];
      for (int c = 0; c < m; ++c) last[c] += coef[k] * brow[c];
    }
    last[m] = -1.0;
    double w = 0;
    for (int c = 0; c <= m; ++c) w += last[c] * last[c];
    binv_ = std::move(grown);
    dse_.push_back(w);
  }
  return row;
}

void DualSimplex::set_col_bounds(int col, double lower, double upper) {
  lower_[col] = lower;
  upper_[col] = upper;
  artificial_lower_[col] = false;
  artificial_upper_[col] = false;
  if (status_[col] == VarStatus::AtLower) x_[col] = lower;
  if (status_[col] == VarStatus::AtUpper) x_[col] = upper;
}

Basis DualSimplex::basis() const { return Basis{status_}; }

void DualSimplex::set_basis(const Basis& basis) {
  if (basis.status == status_) return;
  const int stored = static_cast<int>(basis.status.size());
  std::vector<VarStatus> target(static_cast<std::size_t>(total()));
  int basic_count = 0;
  for (int j = 0; j < total(); ++j) {
    VarStatus s = j < stored ? basis.status[j] : (j >= num_cols_ ? VarStatus::Basic : VarStatus::AtLower);
    target[j] = s;
    if (s == VarStatus::Basic) ++basic_count;
  }
  if (basic_count != num_rows_) {
    // Incompatible basis: fall back to the slack basis.
    for (int j = 0; j < total(); ++j) {
      if (j >= num_cols_) target[j] = VarStatus::Basic;
      else if (target[j] == VarStatus::Basic) target[j] = VarStatus::AtLower;
    }
  }
  if (factor_valid_ && pivot_to(target)) return;

  status_ = std::move(target);
  basic_.clear();
  std::fill(position_.begin(), position_.end(), -1);
  for (int j = 0; j < total(); ++j) {
    if (status_[j] == VarStatus::Basic) {
      position_[j] = static_cast<int>(basic_.size());
      basic_.push_back(j);
    } else {
      x_[j] = status_[j] == VarStatus::AtUpper ? upper_[j] : lower_[j];
    }
  }
  factor_valid_ = false;
}

// Reaches a nearby basis by exchanging columns one at a time, which is much
// cheaper than a fresh inverse when only a few columns differ.
bool DualSimplex::pivot_to(const std::vector<VarStatus>& target) {
  const int m = num_rows_;
  std::vector<int> entering;
  for (int j = 0; j < total(); ++j) {
    if (target[j] == VarStatus::Basic && status_[j] != VarStatus::Basic) entering.push_back(j);
  }
  if (static_cast<int>(entering.size()) > std::max(8, m / 8)) return false;
  if (since_refactor_ + static_cast<int>(entering.size()) > options_.refactor_interval) return false;
  std::vector<double> col;
  for (int j : entering) {
    column_ftran(j, col);
    int r = -1;
    double best = 1e-7;
    for (int i = 0; i < m; ++i) {
      if (target[basic_[i]] == VarStatus::Basic) continue;
      if (std::abs(col[i]) > best) {
        best = std::abs(col[i]);
        r = i;
      }
    }
    if (r < 0) return false;
    const int leaving = basic_[r];
    pivot_inverse(r, col);
    status_[leaving] = target[leaving];
    status_[j] = VarStatus::Basic;
    position_[leaving] = -1;
    position_[j] = r;
    basic_[r] = j;
    ++since_refactor_;
  }
  for (int j = 0; j < total(); ++j) {
    if (target[j] == VarStatus::Basic) continue;
    status_[j] = target[j];
    x_[j] = status_[j] == VarStatus::AtUpper ? upper_[j] : lower_[j];
  }
  return true;
}

void DualSimplex::pivot_inverse(int r, const std::vector<double>& alpha_col) {
  const int m = num_rows_;
  double* prow = &binv_[static_cast<std::size_t>(r) * m];
  const double pivot = alpha_col[r];
  const double wr = dse_[r];
  for (int i = 0; i < m; ++i) {
    if (i == r || alpha_col[i] == 0.0) continue;
    const double* row = &binv_[static_cast<std::size_t>(i) * m];
    double tau = 0;
    for (int k = 0; k < m; ++k) tau += row[k] * prow[k];
    const double f = alpha_col[i] / pivot;
    dse_[i] = std::max(dse_[i] - 2.0 * f * tau + f * f * wr, 1e-12);
  }
  dse_[r] = std::max(wr / (pivot * pivot), 1e-12);

  const double inv_pivot = 1.0 / pivot;
  for (int k = 0; k < m; ++k) prow[k] *= inv_pivot;
  for (int i = 0; i < m; ++i) {
    if (i == r) continue;
    const double f = alpha_col[i];
    if (f == 0.0) continue;
    double* row = &binv_[static_cast<std::size_t>(i) * m];
    for (int k = 0; k < m; ++k) row[k] -= f * prow[k];
  }
}

double DualSimplex::column_dot(const std::vector<double>& dense, int j) const {
  if (j >= num_cols_) return -dense[static_cast<std::size_t>(j - num_cols_)];
  const Column& c = columns_[static_cast<std::size_t>(j)];
  double sum = 0;
  for (std::size_t k = 0; k < c.index.size(); ++k) sum += dense[static_cast<std::size_t>(c.index[k])] * c.value[k];
  return sum;
}

void DualSimplex::column_ftran(int j, std::vector<double>& out) const {
  const int m = num_rows_;
  out.assign(static_cast<std::size_t>(m), 0.0);
  if (j >= num_cols_) {
    const int k = j - num_cols_;
    for (int i = 0; i < m; ++i) out[i] = -binv_[static_cast<std::size_t>(i) * m + k];
    return;
  }
  const Column& c = columns_[static_cast<std::size_t>(j)];
  for (int i = 0; i < m; ++i) {
    const double* row = &binv_[static_cast<std::size_t>(i) * m];
    double sum = 0;
    for (std::size_t k = 0; k < c.index.size(); ++k) sum += row[c.index[k]] * c.value[k];
    out[i] = sum;
  }
}

bool DualSimplex::refactor() {
  const int m = num_rows_;
  since_refactor_ = 0;
  if (m == 0) {
    binv_.clear();
    dse_.clear();
    factor_valid_ = true;
    return true;
  }
  RowMatrix B = RowMatrix::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const int j = basic_[i];
    if (j >= num_cols_) {
      B(j - num_cols_, i) = -1.0;
    } else {
      const Column& c = columns_[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < c.index.size(); ++k) B(c.index[k], i) = c.value[k];
    }
  }
  Eigen::PartialPivLU<RowMatrix> lu(B);
  const auto diag = lu.matrixLU().diagonal().cwiseAbs();
  const double max_pivot = diag.maxCoeff();
  const double min_pivot = diag.minCoeff();
  bool ok = std::isfinite(min_pivot) && min_pivot > 1e-11 * std::max(1.0, max_pivot);
  if (ok) {
    RowMatrix inv = lu.inverse();
    binv_.assign(inv.data(), inv.data() + static_cast<std::size_t>(m) * m);
  } else {
    // Singular basis: restart from the slack basis.
    Basis slack;
    slack.status.assign(static_cast<std::size_t>(total()), VarStatus::AtLower);
    for (int j = 0; j < total(); ++j) {
      if (j >= num_cols_) slack.status[j] = VarStatus::Basic;
      else slack.status[j] = status_[j] == VarStatus::AtUpper ? VarStatus::AtUpper : VarStatus::AtLower;
    }
    factor_valid_ = false;  // force set_basis to rebuild
    status_.assign(static_cast<std::size_t>(total()), VarStatus::Free);
    set_basis(slack);
    binv_.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) binv_[static_cast<std::size_t>(i) * m + (basic_[i] - num_cols_)] = -1.0;
  }
  dse_.assign(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = &binv_[static_cast<std::size_t>(i) * m];
    double w = 0;
    for (int k = 0; k < m; ++k) w += row[k] * row[k];
    dse_[i] = w;
  }
  factor_valid_ = true;
  return ok;
}

void DualSimplex::compute_primal() {
  const int m = num_rows_;
  std::vector<double> rhs(static_cast<std::size_t>(m), 0.0);
  for (int j = 0; j < total(); ++j) {
    if (status_[j] == VarStatus::Basic) continue;
    const double v = x_[j];
    if (v == 0.0) continue;
    if (j >= num_cols_) {
      rhs[j - num_cols_] -= v;
    } else {
      const Column& c = columns_[static_cast<std::size_t>(j)];
      for (std::size_t k = 0; k < c.index.size(); ++k) rhs[c.index[k]] += c.value[k] * v;
    }
  }
  for (int i = 0; i < m; ++i) {
    const double* row = &binv_[static_cast<std::size_t>(i) * m];
    double sum = 0;
    for (int k = 0; k < m; ++k) sum += row[k] * rhs[k];
    x_[basic_[i]] = -sum;
  }
}

void DualSimplex::compute_duals() {
  const int m = num_rows_;
  std::vector<double> y(static_cast<std::size_t>(m), 0.0);
  for (int i = 0; i < m; ++i) {
    const double cb = work_cost_[basic_[i]];
    if (cb == 0.0) continue;
    const double* row = &binv_[static_cast<std::size_t>(i) * m];
    for (int k = 0; k < m; ++k) y[k] += cb * row[k];
  }
  for (int j = 0; j < total(); ++j) {
    d_[j] = status_[j] == VarStatus::Basic ? 0.0 : work_cost_[j] - column_dot(y, j);
  }
}

void DualSimplex::place_nonbasic_dual_feasible(bool allow_flip) {
  const double tol = options_.dual_tolerance;
  for (int j = 0; j < total(); ++j) {
    if (status_[j] == VarStatus::Basic) continue;
    if (lower_[j] == upper_[j]) {
      status_[j] = VarStatus::AtLower;
      x_[j] = lower_[j];
      continue;
    }
    if (!allow_flip) continue;
    if (status_[j] == VarStatus::AtLower && d_[j] < -tol) {
      status_[j] = VarStatus::AtUpper;
      x_[j] = upper_[j];
    } else if (status_[j] == VarStatus::AtUpper && d_[j] > tol) {
      status_[j] = VarStatus::AtLower;
      x_[j] = lower_[j];
    } else {
      x_[j] = status_[j] == VarStatus::AtUpper ? upper_[j] : lower_[j];
    }
  }
}

bool DualSimplex::on_artificial_bound() const {
  for (int j = 0; j < total(); ++j) {
    const double tol = 1e-6 * options_.artificial_bound;
    if (artificial_lower_[j] && x_[j] <= lower_[j] + tol) return true;
    if (artificial_upper_[j] && x_[j] >= upper_[j] - tol) return true;
  }
  return false;
}

LpStatus DualSimplex::solve() { return solve(options_.iteration_limit); }

LpStatus DualSimplex::solve(std::int64_t iteration_limit) {
  message_.clear();
  iteration_cap_ = total_iterations_ + iteration_limit;
  if (num_rows_ == 0) {
    for (int j = 0; j < num_cols_; ++j) {
      status_[j] = cost_[j] >= 0 ? VarStatus::AtLower : VarStatus::AtUpper;
      x_[j] = status_[j] == VarStatus::AtLower ? lower_[j] : upper_[j];
    }
    return on_artificial_bound() ? LpStatus::Unbounded : LpStatus::Optimal;
  }
  for (int j = 0; j < total(); ++j) {
    if (lower_[j] > upper_[j] + options_.primal_tolerance) return LpStatus::Infeasible;
  }
  if (!factor_valid_) refactor();

  const bool perturb = options_.cost_perturbation > 0;
  if (perturb) {
    for (int j = 0; j < num_cols_; ++j) {
      const double eps = options_.cost_perturbation * (1.0 + std::abs(cost_[j])) * jitter(static_cast<std::uint64_t>(j));
      work_cost_[j] = cost_[j] + (status_[j] == VarStatus::AtUpper ? -eps : eps);
    }
  }
  compute_duals();
  place_nonbasic_dual_feasible(true);
  compute_primal();
  LpStatus status = iterate(perturb);
  if (perturb && status == LpStatus::Optimal) {
    work_cost_ = cost_;
    compute_duals();
    place_nonbasic_dual_feasible(true);
    compute_primal();
    status = iterate(false);
  }
  work_cost_ = cost_;
  if (status == LpStatus::Optimal && on_artificial_bound()) status = LpStatus::Unbounded;
  return status;
}

LpStatus DualSimplex::iterate(bool perturbed) {
  (void)perturbed;
  const int m = num_rows_;
  const double ptol = options_.primal_tolerance;
  const double dtol = options_.dual_tolerance;
  const double pivtol = options_.pivot_tolerance;
  std::vector<double> alpha_row(static_cast<std::size_t>(total()), 0.0);
  std::vector<double> alpha_col;
  std::vector<double> rho(static_cast<std::size_t>(m));
  int stalled = 0;
  bool bland = false;
  bool retried = false;

  for (;;) {
    if (total_iterations_ >= iteration_cap_) {
      message_ = "iteration limit";
      return LpStatus::IterationLimit;
    }
    if (since_refactor_ >= options_.refactor_interval) {
      refactor();
      compute_duals();
      place_nonbasic_dual_feasible(true);
      compute_primal();
    }

    // Leaving row: dual steepest edge on exact row norms of B^-1.
    int r = -1;
    double best = 0;
    double delta = 0;
    for (int i = 0; i < m; ++i) {
      const int j = basic_[i];
      const double v = x_[j];
      double infeas = 0;
      if (v < lower_[j] - ptol) infeas = v - lower_[j];
      else if (v > upper_[j] + ptol) infeas = v - upper_[j];
      else continue;
      if (bland) {
        if (r < 0 || j < basic_[r]) {
          r = i;
          delta = infeas;
        }
        continue;
      }
      const double score = infeas * infeas / dse_[i];
      if (score > best) {
        best = score;
        r = i;
        delta = infeas;
      }
    }
    if (r < 0) return LpStatus::Optimal;

    std::copy_n(&binv_[static_cast<std::size_t>(r) * m], m, rho.begin());
    const double sign = delta > 0 ? 1.0 : -1.0;

    // Harris two-pass ratio test over eligible nonbasic columns.
    double theta_max = kInfinity;
    for (int j = 0; j < total(); ++j) {
      if (status_[j] == VarStatus::Basic || lower_[j] == upper_[j]) {
        alpha_row[j] = 0;
        continue;
      }
      const double a = column_dot(rho, j);
      alpha_row[j] = a;
      const double at = sign * a;
      if (status_[j] == VarStatus::AtLower && at > pivtol) {
        theta_max = std::min(theta_max, (std::max(d_[j], 0.0) + dtol) / at);
      } else if (status_[j] == VarStatus::AtUpper && at < -pivtol) {
        theta_max = std::min(theta_max, (std::max(-d_[j], 0.0) + dtol) / -at);
      }
    }
    if (!std::isfinite(theta_max)) {
      if (!retried) {
        retried = true;
        refactor();
        compute_duals();
        place_nonbasic_dual_feasible(true);
        compute_primal();
        continue;
      }
      return LpStatus::Infeasible;
    }
    retried = false;

    int q = -1;
    double q_alpha = 0;
    double q_ratio = kInfinity;
    for (int j = 0; j < total(); ++j) {
      if (status_[j] == VarStatus::Basic || lower_[j] == upper_[j]) continue;
      const double at = sign * alpha_row[j];
      double ratio;
      if (status_[j] == VarStatus::AtLower && at > pivtol) ratio = std::max(d_[j], 0.0) / at;
      else if (status_[j] == VarStatus::AtUpper && at < -pivtol) ratio = std::max(-d_[j], 0.0) / -at;
      else continue;
      if (ratio > theta_max) continue;
      if (bland) {
        if (q < 0 || ratio < q_ratio - 1e-12 || (ratio <= q_ratio + 1e-12 && j < q)) {
          q = j;
          q_ratio = ratio;
          q_alpha = at;
        }
      } else if (std::abs(at) > std::abs(q_alpha)) {
        q = j;
        q_alpha = at;
        q_ratio = ratio;
      }
    }
    if (q < 0) return LpStatus::Error;

    column_ftran(q, alpha_col);
    const double pivot = alpha_col[r];
    if (std::abs(pivot - alpha_row[q]) > 1e-7 * (1.0 + std::abs(pivot)) || std::abs(pivot) < pivtol) {
      if (since_refactor_ == 0) {
        message_ = "numerical breakdown: unstable pivot";
        return LpStatus::Error;
      }
      refactor();
      compute_duals();
      place_nonbasic_dual_feasible(true);
      compute_primal();
      continue;
    }

    // Dual update: d_j -= t alpha_j, t chosen so d_q becomes zero.
    const double step = q_ratio;  // >= 0
    const double t = sign * step;
    if (step != 0.0) {
      for (int j = 0; j < total(); ++j) {
        if (status_[j] != VarStatus::Basic) d_[j] -= t * alpha_row[j];
      }
    }
    const int leaving = basic_[r];
    d_[leaving] = -t;
    d_[q] = 0.0;

    // Primal update.
    const double target = delta < 0 ? lower_[leaving] : upper_[leaving];
    const double theta = (x_[leaving] - target) / pivot;
    for (int i = 0; i < m; ++i) {
      if (alpha_col[i] != 0.0) x_[basic_[i]] -= theta * alpha_col[i];
    }
    x_[q] += theta;
    x_[leaving] = target;
    status_[leaving] = delta < 0 ? VarStatus::AtLower : VarStatus::AtUpper;
    status_[q] = VarStatus::Basic;
    position_[leaving] = -1;
    position_[q] = r;
    basic_[r] = q;

    pivot_inverse(r, alpha_col);

    ++since_refactor_;
    ++total_iterations_;
    if (step * std::abs(delta) <= 1e-12) {
      if (++stalled > options_.bland_after) bland = true;
    } else {
      stalled = 0;
      bland = false;
    }
  }
}

std::vector<double> DualSimplex::primal() const {
  return std::vector<double>(x_.begin(), x_.begin() + num_cols_);
}

std::vector<double> DualSimplex::row_activity() const {
  return std::vector<double>(x_.begin() + num_cols_, x_.end());
}

double DualSimplex::objective() const {
  double sum = 0;
  for (int j = 0; j < num_cols_; ++j) sum += cost_[j] * x_[j];
  return sum;
}

std::vector<double> LpInstance::model_values() const {
  std::vector<double> out = fixed_value;
  const auto x = simplex.primal();
  for (std::size_t k = 0; k < model_var.size(); ++k) out[static_cast<std::size_t>(model_var[k])] = x[k];
  return out;
}

LpInstance make_lp(const MilpModel& model, const SimplexOptions& options) {
  const int nv = static_cast<int>(model.variables.size());
  std::vector<int> column_map(static_cast<std::size_t>(nv), -1);
  std::vector<int> model_var;
  std::vector<double> fixed(static_cast<std::size_t>(nv), 0.0);
  std::vector<double> cost, lower, upper;
  double constant = model.objective_offset;
  for (int j = 0; j < nv; ++j) {
    const auto& v = model.variables[j];
    if (v.lower == v.upper) {
      fixed[j] = v.lower;
      constant += v.cost * v.lower;
      continue;
    }
    column_map[j] = static_cast<int>(model_var.size());
    model_var.push_back(j);
    cost.push_back(v.cost);
    lower.push_back(v.lower);
    upper.push_back(v.upper);
  }
  LpInstance lp{DualSimplex(static_cast<int>(model_var.size()), std::move(cost), std::move(lower), std::move(upper), options),
                std::move(column_map), std::move(model_var), std::move(fixed), constant};
  for (const auto& row : model.constraints) {
    // Rows over fixed columns only are dropped; an unsatisfiable one is kept
    // so solve() reports infeasibility.
    const bool empty = std::all_of(row.index.begin(), row.index.end(),
                                   [&](int j) { return lp.column_map[static_cast<std::size_t>(j)] < 0; });
    if (empty) {
      const double act = row.activity(lp.fixed_value);
      const double tol = 1e-9 * std::max(1.0, std::abs(act));
      if (act >= row.lower - tol && act <= row.upper + tol) continue;
    }
    add_model_row(lp, row);
  }
  return lp;
}

int add_model_row(LpInstance& lp, const Constraint& row) {
  std::vector<int> index;
  std::vector<double> coef;
  double shift = 0;
  for (std::size_t k = 0; k < row.index.size(); ++k) {
    const int j = row.index[k];
    const int col = lp.column_map[static_cast<std::size_t>(j)];
    if (col < 0) {
      shift += row.coef[k] * lp.fixed_value[static_cast<std::size_t>(j)];
    } else {
      index.push_back(col);
      coef.push_back(row.coef[k]);
    }
  }
  return lp.simplex.add_row(index, coef, row.lower - shift, row.upper - shift);
}

}  // namespace pcity::lp
