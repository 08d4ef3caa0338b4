#include <algorithm>
#include <chrono>
#include <cmath>
#include <queue>

#include "pcity/solver.hpp"

namespace pcity {

namespace {

struct BoundChange {
  int col;
  double lower;
  double upper;
};

struct SearchNode {
  std::int64_t id = 0;
  double bound = -kInfinity;  // parent LP value
  int depth = 0;
  std::vector<BoundChange> changes;
  lp::Basis basis;
  // How this node was created: integer_cols_ index, direction (0 down, 1 up)
  // and the distance the variable was pushed. -1 at the root.
  int branch = -1;
  int dir = 0;
  double frac = 0.0;
};

struct NodeOrder {
  bool operator()(const SearchNode& a, const SearchNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class BranchAndBound {
 public:
  BranchAndBound(const MilpModel& model, const MilpOptions& options)
      : model_(model), options_(options), lp_(lp::make_lp(model, options.simplex)) {
    for (std::size_t j = 0; j < model.variables.size(); ++j) {
      if (!model.variables[j].integer) continue;
      const int col = lp_.column_map[j];
      if (col >= 0) integer_cols_.push_back({static_cast<int>(j), col});
    }
    for (const auto& [var, col] : integer_cols_) {
      root_bounds_.push_back({col, model.variables[static_cast<std::size_t>(var)].lower,
                              model.variables[static_cast<std::size_t>(var)].upper});
    }
    cut_added_.assign(model.cut_pool.size(), false);
    for (int d = 0; d < 2; ++d) {
      pc_sum_[d].assign(integer_cols_.size(), 0.0);
      pc_count_[d].assign(integer_cols_.size(), 0);
    }
  }

  Solution run() {
    const auto start = std::chrono::steady_clock::now();
    Solution out;
    auto elapsed_s = [&] {
      return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (options_.initial_incumbent) offer(*options_.initial_incumbent);

    std::priority_queue<SearchNode, std::vector<SearchNode>, NodeOrder> open;
    open.push(SearchNode{next_id_++, -kInfinity, 0, {}, {}, -1, 0, 0.0});
    double pruned_bound = kInfinity;  // lowest LP value among nodes pruned by the gap rule
    bool limit_hit = false;

    while (!open.empty()) {
      if (stats_.nodes >= options_.node_limit || elapsed_s() > options_.time_limit_s) {
        limit_hit = true;
        break;
      }
      const double cutoff = cutoff_value();
      if (open.top().bound >= cutoff) {
        pruned_bound = std::min(pruned_bound, open.top().bound);
        break;  // every open node is within tolerance of the incumbent
      }
      SearchNode node = open.top();
      open.pop();
      ++stats_.nodes;

      NodeResult result = process(node);
      if (result.error) {
        out.status = SolveStatus::Error;
        out.message = result.message;
        finish(out, elapsed_s());
        return out;
      }
      if (result.pruned_by_bound) pruned_bound = std::min(pruned_bound, result.value);
      for (auto& child : result.children) open.push(std::move(child));

      if (options_.record_trace) {
        double global = open.empty() ? std::min(incumbent_, pruned_bound) : open.top().bound;
        global = std::min(global, incumbent_);
        stats_.bound_trace.push_back(std::max(global, last_global_));
        last_global_ = stats_.bound_trace.back();
        stats_.incumbent_trace.push_back(incumbent_);
      }
    }

    double bound;
    if (open.empty()) {
      bound = std::min(incumbent_, pruned_bound);
    } else {
      bound = std::min(open.top().bound, incumbent_);
      bound = std::min(bound, pruned_bound);
    }

    if (!std::isfinite(incumbent_)) {
      if (limit_hit) {
        out.status = SolveStatus::Error;
        out.message = "resource limit reached without an incumbent";
      } else if (unbounded_) {
        out.status = SolveStatus::Unbounded;
      } else {
        out.status = SolveStatus::Infeasible;
      }
      finish(out, elapsed_s());
      return out;
    }

    out.objective = incumbent_;
    out.values = incumbent_values_;
    out.bound = std::isfinite(bound) ? bound : incumbent_;
    out.gap = gap_of(incumbent_, out.bound);
    out.status = (!limit_hit || out.gap <= options_.gap_tol) ? SolveStatus::Optimal : SolveStatus::GapLimit;
    if (out.status == SolveStatus::Optimal && out.gap > options_.gap_tol) out.gap = options_.gap_tol;
    finish(out, elapsed_s());
    return out;
  }

 private:
  struct NodeResult {
    bool error = false;
    std::string message;
    bool pruned_by_bound = false;
    double value = kInfinity;
    std::vector<SearchNode> children;
  };

  static double gap_of(double incumbent, double bound) {
    return std::max(0.0, (incumbent - bound) / std::max(std::abs(incumbent), 1e-12));
  }

  double cutoff_value() const {
    if (!std::isfinite(incumbent_)) return kInfinity;
    const double tol = std::max(options_.gap_tol * std::abs(incumbent_), 1e-9 * std::max(1.0, std::abs(incumbent_)));
    return incumbent_ - tol;
  }

  void finish(Solution& out, double seconds) {
    stats_.wall_ms = seconds * 1000.0;
    stats_.lp_iterations = lp_.simplex.iterations();
    out.stats = stats_;
  }

  void apply_bounds(const SearchNode& node) {
    for (const auto& b : root_bounds_) lp_.simplex.set_col_bounds(b.col, b.lower, b.upper);
    for (const auto& b : node.changes) lp_.simplex.set_col_bounds(b.col, b.lower, b.upper);
  }

  // Accepts a candidate if it is feasible, integral and improving.
  bool offer(std::vector<double> values) {
    if (values.size() != model_.variables.size()) return false;
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (model_.variables[j].integer) values[j] = std::round(values[j]);
    }
    if (max_violation(model_, values, true) > options_.feasibility_tol) return false;
    const double obj = model_.objective(values);
    if (obj < incumbent_ - 1e-12 * std::max(1.0, std::abs(obj))) {
      incumbent_ = obj;
      incumbent_values_ = std::move(values);
      return true;
    }
    return false;
  }

  int separate(const std::vector<double>& values) {
    int added = 0;
    for (std::size_t k = 0; k < model_.cut_pool.size(); ++k) {
      if (cut_added_[k]) continue;
      const auto& cut = model_.cut_pool[k];
      const double act = cut.activity(values);
      const double viol = std::max(cut.lower - act, act - cut.upper);
      if (viol > 1e-6 * std::max(1.0, std::abs(cut.lower))) {
        lp::add_model_row(lp_, cut);
        cut_added_[k] = true;
        ++added;
      }
    }
    stats_.cuts_added += added;
    return added;
  }

  NodeResult process(const SearchNode& node) {
    NodeResult result;
    apply_bounds(node);
    if (!node.basis.empty()) lp_.simplex.set_basis(node.basis);

    std::vector<double> values;
    double value = 0;
    for (int round = 0;; ++round) {
      const lp::LpStatus status = lp_.simplex.solve();
      if (status == lp::LpStatus::Infeasible) return result;
      if (status == lp::LpStatus::Unbounded) {
        unbounded_ = true;
        return result;
      }
      if (status != lp::LpStatus::Optimal) {
        result.error = true;
        result.message = std::string("LP failure: ") + lp::to_string(status) + " " + lp_.simplex.message();
        return result;
      }
      value = lp_.simplex.objective() + lp_.constant;
      values = lp_.model_values();
      if (value >= cutoff_value()) {
        result.pruned_by_bound = true;
        result.value = value;
        return result;
      }
      if (!options_.use_cut_pool || round >= options_.max_cut_rounds || separate(values) == 0) break;
    }

    if (node.branch >= 0 && std::isfinite(node.bound)) {
      record_gain(node.branch, node.dir, std::max(0.0, value - node.bound) / node.frac);
    }

    std::vector<Candidate> candidates;
    for (std::size_t k = 0; k < integer_cols_.size(); ++k) {
      const double v = values[static_cast<std::size_t>(integer_cols_[k].first)];
      if (std::abs(v - std::round(v)) > options_.integrality_tol) {
        candidates.push_back({static_cast<int>(k), v, v - std::floor(v), std::ceil(v) - v});
      }
    }

    if (candidates.empty()) {
      offer(values);
      return result;
    }
    if (options_.heuristic && (stats_.nodes == 1 || stats_.nodes % options_.heuristic_frequency == 0)) {
      if (auto candidate = options_.heuristic(values)) offer(std::move(*candidate));
      if (value >= cutoff_value()) {
        result.pruned_by_bound = true;
        result.value = value;
        return result;
      }
    }

    lp::Basis basis = lp_.simplex.basis();
    const Choice choice = options_.branching == BranchingRule::MostFractional
                              ? most_fractional(candidates)
                              : reliability(candidates, value, basis);
    if (choice.infeasible) return result;

    const Candidate& c = candidates[static_cast<std::size_t>(choice.index)];
    const int col = integer_cols_[static_cast<std::size_t>(c.idx)].second;
    const double lo = lp_.simplex.col_lower(col);
    const double up = lp_.simplex.col_upper(col);

    if (choice.down != kInfinity) {
      SearchNode down{next_id_++, std::max(value, choice.down), node.depth + 1, node.changes, basis, c.idx, 0, c.down};
      down.changes.push_back({col, lo, std::floor(c.v)});
      result.children.push_back(std::move(down));
    }
    if (choice.up != kInfinity) {
      SearchNode up_node{next_id_++, std::max(value, choice.up), node.depth + 1, node.changes, std::move(basis), c.idx, 1,
                         c.up};
      up_node.changes.push_back({col, std::ceil(c.v), up});
      result.children.push_back(std::move(up_node));
    }
    return result;
  }

  struct Candidate {
    int idx;      // into integer_cols_
    double v;     // LP value
    double down;  // v - floor(v)
    double up;    // ceil(v) - v
  };

  // Child LP values known from strong branching (-inf: unknown, +inf:
  // infeasible) and the chosen candidate.
  struct Choice {
    int index = 0;
    double down = -kInfinity;
    double up = -kInfinity;
    bool infeasible = false;
  };

  void record_gain(int idx, int dir, double per_unit) {
    pc_sum_[dir][static_cast<std::size_t>(idx)] += per_unit;
    ++pc_count_[dir][static_cast<std::size_t>(idx)];
    pc_total_sum_[dir] += per_unit;
    ++pc_total_count_[dir];
  }

  double pseudocost(int idx, int dir) const {
    const int count = pc_count_[dir][static_cast<std::size_t>(idx)];
    if (count > 0) return pc_sum_[dir][static_cast<std::size_t>(idx)] / count;
    return pc_total_count_[dir] > 0 ? pc_total_sum_[dir] / pc_total_count_[dir] : 1.0;
  }

  static double score(double down_gain, double up_gain) {
    return std::max(down_gain, 1e-6) * std::max(up_gain, 1e-6);
  }

  // Ties go to the lowest variable index.
  Choice most_fractional(const std::vector<Candidate>& candidates) const {
    Choice choice;
    double best = -1;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const double frac = std::min(candidates[k].down, candidates[k].up);
      if (frac > best + 1e-12) {
        best = frac;
        choice.index = static_cast<int>(k);
      }
    }
    return choice;
  }

  // Pseudocost product score; candidates whose pseudocosts rest on fewer than
  // `reliability` observations are strong-branched first (most fractional
  // first, limited count and pivots).
  Choice reliability(const std::vector<Candidate>& candidates, double value, const lp::Basis& basis) {
    std::vector<int> order(candidates.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return std::min(candidates[a].down, candidates[a].up) > std::min(candidates[b].down, candidates[b].up) + 1e-12;
    });

    std::vector<double> sb_down(candidates.size(), -kInfinity), sb_up(candidates.size(), -kInfinity);
    int probed = 0;
    for (int k : order) {
      if (probed >= options_.strong_branching_candidates) break;
      const Candidate& c = candidates[static_cast<std::size_t>(k)];
      if (std::min(pc_count_[0][static_cast<std::size_t>(c.idx)], pc_count_[1][static_cast<std::size_t>(c.idx)]) >=
          options_.reliability) {
        continue;
      }
      ++probed;
      const int col = integer_cols_[static_cast<std::size_t>(c.idx)].second;
      const double lo = lp_.simplex.col_lower(col);
      const double up = lp_.simplex.col_upper(col);
      for (int dir = 0; dir < 2; ++dir) {
        if (dir == 0) lp_.simplex.set_col_bounds(col, lo, std::floor(c.v));
        else lp_.simplex.set_col_bounds(col, std::ceil(c.v), up);
        const lp::LpStatus st = lp_.simplex.solve(options_.strong_branching_iterations);
        double child = -kInfinity;
        if (st == lp::LpStatus::Infeasible) {
          child = kInfinity;
        } else if (st == lp::LpStatus::Optimal) {
          child = lp_.simplex.objective() + lp_.constant;
          record_gain(c.idx, dir, std::max(0.0, child - value) / (dir == 0 ? c.down : c.up));
        }
        (dir == 0 ? sb_down : sb_up)[static_cast<std::size_t>(k)] = child;
        lp_.simplex.set_col_bounds(col, lo, up);
        lp_.simplex.set_basis(basis);
      }
      ++stats_.strong_branches;
      const double d = sb_down[static_cast<std::size_t>(k)], u = sb_up[static_cast<std::size_t>(k)];
      if (d == kInfinity && u == kInfinity) {
        Choice none;
        none.infeasible = true;
        return none;
      }
      if (d == kInfinity || u == kInfinity) {
        // Only one child survives; branching here is free.
        return Choice{k, d, u, false};
      }
    }

    Choice choice;
    double best = -1;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const Candidate& c = candidates[k];
      const double dg = sb_down[k] > -kInfinity ? std::max(0.0, sb_down[k] - value) : c.down * pseudocost(c.idx, 0);
      const double ug = sb_up[k] > -kInfinity ? std::max(0.0, sb_up[k] - value) : c.up * pseudocost(c.idx, 1);
      const double sc = score(dg, ug);
      if (sc > best * (1 + 1e-9) + 1e-15) {
        best = sc;
        choice = Choice{static_cast<int>(k), sb_down[k], sb_up[k], false};
      }
    }
    return choice;
  }

  const MilpModel& model_;
  MilpOptions options_;
  lp::LpInstance lp_;
  std::vector<std::pair<int, int>> integer_cols_;  // (model var, lp col)
  std::vector<BoundChange> root_bounds_;
  std::vector<bool> cut_added_;
  double incumbent_ = kInfinity;
  std::vector<double> incumbent_values_;
  std::int64_t next_id_ = 0;
  bool unbounded_ = false;
  double last_global_ = -kInfinity;
  SolveStats stats_;
  std::vector<double> pc_sum_[2];
  std::vector<int> pc_count_[2];
  double pc_total_sum_[2] = {0.0, 0.0};
  int pc_total_count_[2] = {0, 0};
};

}  // namespace

Solution solve_milp(const MilpModel& model, const MilpOptions& options) {
  if (model.structurally_infeasible) {
    Solution out;
    out.status = SolveStatus::Infeasible;
    out.message = model.infeasibility_reason;
    return out;
  }
  BranchAndBound search(model, options);
  return search.run();
}

}  // namespace pcity
