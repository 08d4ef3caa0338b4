#pragma once

#include <string>

#include "pcity/city.hpp"
#include "pcity/model.hpp"

namespace pcity {

/// lambda(alpha, gamma): OptVal(UMCFP) = T * Y * lambda.
double lambda_value(const CityParams& params);
/// Sandwich on lambda that does not depend on n or the demand shares.
double lambda_lower(const CityParams& params);
double lambda_upper(const CityParams& params);

/// Sum over OD pairs of demand times the length of a shortest path under the
/// UMCFP arc costs (Dijkstra from every origin).
double shortest_path_oracle(const CityInstance& city, const UmcfpInstance& umcfp);
double shortest_path_oracle(const CityInstance& city);

struct BoundSet {
  double umcfp_opt = 0.0;
  double lambda_val = 0.0;
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double abs_gap_bound = 0.0;  // 2 mu T (1 + r_n)(n - 1)
  double op_cost_floor = 0.0;  // mu T (2ng + 2 + (n - 1) r_n)
  double C_n_ag = 0.0;         // bound on Gamma using lambda(alpha, gamma)
  double C_n = 0.0;            // same with the lambda lower bound
  double g_const = 0.0;        // (1 + sqrt 2) / g
  double kappa = 0.0;          // 1 + g_const
};

BoundSet gap_bounds(const CityParams& params);

std::string format_bounds_text(const BoundSet& b);
std::string format_bounds_json(const BoundSet& b);

}  // namespace pcity
