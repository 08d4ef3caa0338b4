#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "pcity/analysis.hpp"
#include "pcity/city.hpp"

namespace pcity {

/// (alpha, gamma) grid over [lo, hi] with the given step; beta = 1 - alpha -
/// gamma is derived. Points with beta <= max(min_beta, 1e-9) are skipped, so
/// the default keeps every point strictly inside the simplex (741 points at
/// step 0.025, 55 at step 0.1).
struct SweepSpec {
  CityParams base;
  double step = 0.1;
  double lo = 0.025;
  double hi = 0.95;
  double min_beta = 0.0;
  MilpOptions options;
  int jobs = 1;
  /// Keep the solved InstanceResult in each row.
  bool keep_solutions = false;
};

struct GridPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
};

/// Alpha outer, gamma inner, both ascending. Values are rounded to 1e-12 so
/// that they print exactly (0.125, not 0.12500000000000003).
std::vector<GridPoint> sweep_grid(const SweepSpec& spec);

/// Row count of the fine grid (step 0.025 over [0.025, 0.95]).
inline constexpr int kFineGridRows = 741;

struct SweepRow {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double opt_alpp = 0.0;
  double opt_alpps = 0.0;
  double gamma_abs = 0.0;
  double gamma_rel = 0.0;
  /// "symmetric", "asymmetric", "infeasible" or "error".
  std::string classification;
  double bound_cn_ag = 0.0;
  double ms_alpp = 0.0;
  double ms_alpps = 0.0;
  std::string error;
  std::optional<InstanceResult> result;
};

/// Solves one grid point; solver failures are caught into row.error.
SweepRow sweep_row(const CityParams& params, const MilpOptions& options, bool keep_solution = false);

struct SweepSummary {
  int rows = 0;
  int asymmetric = 0;
  int infeasible = 0;
  int errors = 0;
  double asymmetric_share = 0.0;  // percent of feasible rows
  double max_gamma_rel = 0.0;     // percent
  double total_ms = 0.0;
};

SweepSummary summarize(const std::vector<SweepRow>& rows);

/// Called from worker threads after each finished row (serialized).
using SweepProgress = std::function<void(std::size_t done, std::size_t total, const SweepRow& row)>;

/// Rows in grid order regardless of which worker finished first.
std::vector<SweepRow> run_sweep(const SweepSpec& spec, const SweepProgress& progress = {});

inline constexpr const char* kSweepCsvHeader =
    "alpha,beta,gamma,opt_alpp,opt_alpps,gamma_abs,gamma_rel,classification,bound_cn_ag,ms_alpp,ms_alpps";

/// CSV with the fixed header, then `#`-prefixed summary lines (and one line
/// per row error). Identical specs give identical output apart from the two
/// timing columns and the total time.
void write_sweep_csv(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out);
/// {"rows": [...], "summary": {...}} with the CSV column names as keys.
void write_sweep_json(const std::vector<SweepRow>& rows, const SweepSpec& spec, std::ostream& out);

/// Operator/user weight from hourly costs, mu = c0 / (c0 + pv). Both costs are
/// per hour and must be positive.
double fielbaum_mu(double c0, double pv);

}  // namespace pcity
