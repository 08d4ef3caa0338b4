#include "pcity/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace pcity {

namespace {

std::string arc_label(const CityInstance& city, int arc) {
  return to_string(city.arc(arc).tail) + "_" + to_string(city.arc(arc).head);
}

double ceil_tol(double x) { return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))); }

// Commodities, flow variables and per-commodity conservation rows shared by
// both line-planning models.
void add_routing(const CityInstance& city, MilpModel& m) {
  const int n = city.n();
  const double mu = city.params().mu;
  const auto& d = city.demand();
  m.n = n;
  m.arc_count = city.arc_count();
  m.vehicle_capacity = city.params().K;

  for (int i = 0; i < n; ++i) m.commodity_origin.push_back(city.node_id(Node::p(i)));
  for (int i = 0; i < n; ++i) m.commodity_origin.push_back(city.node_id(Node::sc(i)));

  m.flow_var.assign(static_cast<std::size_t>(m.commodity_count()) * m.arc_count, -1);
  for (int c = 0; c < m.commodity_count(); ++c) {
    const int origin = m.commodity_origin[c];
    const double supply = d.supply(origin);
    const std::string prefix = "x_" + to_string(city.node(origin)) + "_";
    for (int a = 0; a < m.arc_count; ++a) {
      const Node& head = city.arc(a).head;
      const Node& tail = city.arc(a).tail;
      // Entering a periphery, leaving a foreign periphery, or re-entering the
      // origin closes a cycle.
      const bool useless = head.kind == NodeKind::P || city.head_id(a) == origin ||
                           (tail.kind == NodeKind::P && city.tail_id(a) != origin);
      Variable v;
      v.name = prefix + arc_label(city, a);
      v.lower = 0.0;
      v.upper = useless ? 0.0 : supply;
      v.cost = (1.0 - mu) * city.arc(a).length;
      m.flow_var[static_cast<std::size_t>(c) * m.arc_count + a] = static_cast<int>(m.variables.size());
      m.variables.push_back(std::move(v));
    }
  }

  for (int c = 0; c < m.commodity_count(); ++c) {
    const int origin = m.commodity_origin[c];
    for (int v = 0; v < city.node_count(); ++v) {
      Constraint row;
      row.name = "flow_" + to_string(city.node(origin)) + "_" + to_string(city.node(v));
      for (int a : city.out_arcs(v)) row.add(m.flow(c, a), 1.0);
      for (int a : city.in_arcs(v)) row.add(m.flow(c, a), -1.0);
      const double rhs = v == origin ? d.supply(origin) : -d(origin, v);
      row.lower = row.upper = rhs;
      m.constraints.push_back(std::move(row));
    }
  }
}

}  // namespace

int MilpModel::integer_count() const {
  return static_cast<int>(std::count_if(variables.begin(), variables.end(), [](const Variable& v) { return v.integer; }));
}

int MilpModel::find_variable(const std::string& name) const {
  for (std::size_t j = 0; j < variables.size(); ++j) {
    if (variables[j].name == name) return static_cast<int>(j);
  }
  return -1;
}

double MilpModel::objective(const std::vector<double>& x) const {
  double sum = objective_offset;
  for (std::size_t j = 0; j < variables.size(); ++j) sum += variables[j].cost * x[j];
  return sum;
}

int commodity_of_origin(int n, int origin_node_id) {
  if (origin_node_id >= 1 + n && origin_node_id < 1 + 2 * n) return origin_node_id - 1 - n;
  if (origin_node_id >= 1 && origin_node_id < 1 + n) return n + origin_node_id - 1;
  return -1;
}

int rotate_commodity(int n, int commodity, int z) {
  const int base = commodity < n ? 0 : n;
  return base + (((commodity - base + z) % n) + n) % n;
}

int symmetric_group(const CityInstance& city, int arc) {
  switch (city.arc_block(arc)) {
    case ArcBlock::CentralOut:
    case ArcBlock::CentralIn: return 0;
    case ArcBlock::RingCcw: return 1;
    case ArcBlock::RingCw: return 2;
    default: return -1;
  }
}

MilpModel build_alpp(const CityInstance& city) {
  MilpModel m;
  m.kind = ModelKind::Alpp;
  const double mu = city.params().mu;
  const double lambda = city.params().effective_lambda();

  for (int a = 0; a < city.arc_count(); ++a) {
    Variable v;
    v.name = "F_" + arc_label(city, a);
    v.lower = 0.0;
    v.upper = std::floor(lambda + 1e-9);
    v.cost = mu * city.arc(a).length;
    v.integer = true;
    m.frequency_vars.push_back(static_cast<int>(m.variables.size()));
    m.variables.push_back(std::move(v));
  }
  add_routing(city, m);

  const double K = city.params().K;
  for (int a = 0; a < city.arc_count(); ++a) {
    Constraint row;
    row.name = "cap_" + arc_label(city, a);
    for (int c = 0; c < m.commodity_count(); ++c) row.add(m.flow(c, a), 1.0);
    row.add(m.frequency_vars[a], -K);
    row.upper = 0.0;
    m.constraints.push_back(std::move(row));
  }
  for (int v = 0; v < city.node_count(); ++v) {
    Constraint row;
    row.name = "circ_" + to_string(city.node(v));
    for (int a : city.out_arcs(v)) row.add(m.frequency_vars[a], 1.0);
    for (int a : city.in_arcs(v)) row.add(m.frequency_vars[a], -1.0);
    row.lower = row.upper = 0.0;
    m.constraints.push_back(std::move(row));
  }

  m.cut_pool = cut_set_inequalities(city, m.frequency_vars);
  auto breaking = symmetry_breaking_rows(city, m.frequency_vars);
  m.cut_pool.insert(m.cut_pool.end(), breaking.begin(), breaking.end());
  if (static_cast<double>(city.params().peripheral_frequency()) > lambda) {
    m.structurally_infeasible = true;
    m.infeasibility_reason = "F_P = ceil(Ya/(nK)) exceeds Lambda";
  }
  return m;
}

MilpModel build_alpp_sym(const CityInstance& city) {
  MilpModel m;
  m.kind = ModelKind::AlppSym;
  const auto& p = city.params();
  const int n = city.n();
  const double mu = p.mu;
  const double lambda = p.effective_lambda();
  const double kappa_c = 2.0 * n * p.T;
  const double kappa_s = n * city.geometry().r_n * p.T;
  const double kappa_p = 2.0 * n * p.T * p.g;

  const char* names[] = {"F_C", "F_Splus", "F_Sminus"};
  const double costs[] = {kappa_c, kappa_s, kappa_s};
  for (int k = 0; k < 3; ++k) {
    Variable v;
    v.name = names[k];
    v.lower = 0.0;
    v.upper = std::floor(lambda + 1e-9);
    v.cost = mu * costs[k];
    v.integer = true;
    m.frequency_vars.push_back(static_cast<int>(m.variables.size()));
    m.variables.push_back(std::move(v));
  }
  m.fixed_peripheral_frequency = p.peripheral_frequency();
  m.objective_offset = mu * kappa_p * static_cast<double>(m.fixed_peripheral_frequency);
  add_routing(city, m);

  const double K = p.K;
  for (int a = 0; a < city.arc_count(); ++a) {
    Constraint row;
    row.name = "cap_" + arc_label(city, a);
    for (int c = 0; c < m.commodity_count(); ++c) row.add(m.flow(c, a), 1.0);
    const int group = symmetric_group(city, a);
    if (group >= 0) {
      row.add(m.frequency_vars[group], -K);
      row.upper = 0.0;
    } else {
      row.upper = K * static_cast<double>(m.fixed_peripheral_frequency);
    }
    m.constraints.push_back(std::move(row));
  }

  if (static_cast<double>(m.fixed_peripheral_frequency) > lambda) {
    m.structurally_infeasible = true;
    m.infeasibility_reason = "F_P = ceil(Ya/(nK)) exceeds Lambda";
  }
  return m;
}

MilpModel build_lp_relaxation(const MilpModel& model) {
  MilpModel out = model;
  out.relaxed = true;
  for (auto& v : out.variables) v.integer = false;
  return out;
}

UmcfpInstance build_umcfp(const CityInstance& city) {
  const auto& p = city.params();
  const double mu = p.mu;
  const double K = p.K;
  const double T = p.T;
  const double r = city.geometry().r_n;
  UmcfpInstance out;
  out.cost.resize(static_cast<std::size_t>(city.arc_count()));
  for (int a = 0; a < city.arc_count(); ++a) {
    double c = 0;
    switch (city.arc_block(a)) {
      case ArcBlock::FromPeriphery: c = (2 * mu / K + (1 - mu)) * T * p.g; break;
      case ArcBlock::ToPeriphery: c = (1 - mu) * T * p.g; break;
      case ArcBlock::RingCcw:
      case ArcBlock::RingCw: c = (mu / K + (1 - mu)) * T * r; break;
      case ArcBlock::CentralIn: c = (2 * mu / K + (1 - mu)) * T; break;
      case ArcBlock::CentralOut: c = (1 - mu) * T; break;
    }
    out.cost[a] = c;
  }
  out.demand = city.demand();
  return out;
}

std::vector<Constraint> cut_set_inequalities(const CityInstance& city, const std::vector<int>& frequency_vars) {
  const int n = city.n();
  const double K = city.params().K;
  const auto& d = city.demand();
  const int cd = 0;

  std::set<std::vector<bool>> seen;
  std::vector<std::vector<bool>> sets;
  auto push = [&](std::vector<bool> s) {
    if (seen.insert(s).second) sets.push_back(std::move(s));
  };
  for (int len = 1; len <= n; ++len) {
    for (int start = 0; start < (len == n ? 1 : n); ++start) {
      for (int with_cd = 0; with_cd < 2; ++with_cd) {
        if (len == n && with_cd) continue;  // whole vertex set
        std::vector<bool> s(static_cast<std::size_t>(city.node_count()), false);
        s[cd] = with_cd != 0;
        for (int k = 0; k < len; ++k) {
          const int i = (start + k) % n;
          s[city.node_id(Node::sc(i))] = true;
          s[city.node_id(Node::p(i))] = true;
        }
        push(std::move(s));
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<bool> s(static_cast<std::size_t>(city.node_count()), false);
    s[city.node_id(Node::sc(i))] = true;
    push(s);
    std::vector<bool> t(static_cast<std::size_t>(city.node_count()), false);
    t[city.node_id(Node::p(i))] = true;
    push(t);
  }
  {
    std::vector<bool> s(static_cast<std::size_t>(city.node_count()), false);
    s[cd] = true;
    push(s);
  }

  std::vector<Constraint> cuts;
  for (const auto& s : sets) {
    double out_demand = 0;
    double in_demand = 0;
    for (const auto& [o, t] : d.pairs()) {
      if (s[o] && !s[t]) out_demand += d(o, t);
      if (!s[o] && s[t]) in_demand += d(o, t);
    }
    const double rhs = ceil_tol(std::max(out_demand, in_demand) / K);
    if (rhs <= 0) continue;
    Constraint row;
    row.name = "cutset";
    for (int a = 0; a < city.arc_count(); ++a) {
      if (s[city.tail_id(a)] && !s[city.head_id(a)]) row.add(frequency_vars[a], 1.0);
    }
    row.lower = rhs;
    cuts.push_back(std::move(row));
  }
  for (std::size_t k = 0; k < cuts.size(); ++k) cuts[k].name = "cutset_" + std::to_string(k);
  return cuts;
}

std::vector<Constraint> symmetry_breaking_rows(const CityInstance& city, const std::vector<int>& frequency_vars) {
  const int n = city.n();
  auto central_in = [&](int i) {
    return frequency_vars[static_cast<std::size_t>(*city.find_arc(Node::sc(i), Node::cd()))];
  };
  std::vector<Constraint> rows;
  auto push = [&](int hi, int lo, std::string name) {
    Constraint row;
    row.name = std::move(name);
    row.add(central_in(hi), 1.0);
    row.add(central_in(lo), -1.0);
    row.lower = 0.0;
    rows.push_back(std::move(row));
  };
  // Rotate a busiest central arc to zone 0, then mirror about zone 0 if needed.
  for (int i = 1; i < n; ++i) push(0, i, "rotation_" + std::to_string(i));
  push(1, n - 1, "reflection");
  return rows;
}

}  // namespace pcity
