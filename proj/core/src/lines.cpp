#include "pcity/lines.hpp"

#include <algorithm>
#include <map>

#include <json.hpp>

#include "pcity/analysis.hpp"
#include "pcity/model.hpp"

namespace pcity {

std::vector<int> line_arcs(const Line& line, const CityInstance& city) {
  const std::size_t k = line.nodes.size();
  if (k < 2) throw ValidationError("a line needs at least two nodes");
  std::vector<int> ids;
  for (const Node& v : line.nodes) ids.push_back(city.node_id(v));
  auto sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("line is not a simple cycle");
  }
  std::vector<int> arcs;
  for (std::size_t i = 0; i < k; ++i) {
    const auto arc = city.find_arc(ids[i], ids[(i + 1) % k]);
    if (!arc) {
      throw ValidationError("line uses a missing arc " + to_string(line.nodes[i]) + "->" +
                            to_string(line.nodes[(i + 1) % k]));
    }
    arcs.push_back(*arc);
  }
  return arcs;
}

double line_length(const Line& line, const CityInstance& city) {
  double sum = 0;
  for (int a : line_arcs(line, city)) sum += city.arc(a).length;
  return sum;
}

Line canonical(const Line& line) {
  if (line.nodes.empty()) return line;
  const auto first = std::min_element(line.nodes.begin(), line.nodes.end());
  Line out;
  out.nodes.insert(out.nodes.end(), first, line.nodes.end());
  out.nodes.insert(out.nodes.end(), line.nodes.begin(), first);
  return out;
}

Line rotate(const Line& line, int z, int n) {
  Line out;
  for (const Node& v : line.nodes) out.nodes.push_back(pcity::rotate(v, z, n));
  return out;
}

FrequencyPlan aggregate(const LinePlan& plan, const CityInstance& city) {
  FrequencyPlan F;
  F.F.assign(static_cast<std::size_t>(city.arc_count()), 0);
  for (const auto& e : plan.entries) {
    for (int a : line_arcs(e.line, city)) F[a] += e.frequency;
  }
  return F;
}

double line_cost(const LinePlan& plan, const CityInstance& city) {
  double sum = 0;
  for (const auto& e : plan.entries) sum += line_length(e.line, city) * static_cast<double>(e.frequency);
  return sum;
}

namespace {

void add_arc(LengthProfile& p, const CityInstance& city, int arc, std::int64_t times) {
  switch (city.arc_block(arc)) {
    case ArcBlock::CentralOut:
    case ArcBlock::CentralIn: p.central += times; break;
    case ArcBlock::ToPeriphery:
    case ArcBlock::FromPeriphery: p.peripheral += times; break;
    case ArcBlock::RingCcw:
    case ArcBlock::RingCw: p.ring += times; break;
  }
}

}  // namespace

LengthProfile length_profile(const LinePlan& plan, const CityInstance& city) {
  LengthProfile p;
  for (const auto& e : plan.entries) {
    for (int a : line_arcs(e.line, city)) add_arc(p, city, a, e.frequency);
  }
  return p;
}

LengthProfile length_profile(const FrequencyPlan& plan, const CityInstance& city) {
  LengthProfile p;
  for (int a = 0; a < city.arc_count(); ++a) add_arc(p, city, a, plan[a]);
  return p;
}

LinePlan decompose_circulation(const FrequencyPlan& F, const CityInstance& city) {
  if (static_cast<int>(F.F.size()) != city.arc_count()) throw ValidationError("plan has the wrong number of arcs");
  for (auto f : F.F) {
    if (f < 0) throw ValidationError("negative frequency");
  }
  if (!is_circulation(F, city)) throw ValidationError("frequencies violate flow conservation");

  std::vector<std::int64_t> residual = F.F;
  LinePlan plan;
  int scan = 0;
  std::vector<int> seen_at(static_cast<std::size_t>(city.node_count()), -1);
  while (true) {
    while (scan < city.arc_count() && residual[static_cast<std::size_t>(scan)] == 0) ++scan;
    if (scan == city.arc_count()) break;

    std::vector<int> path_nodes{city.tail_id(scan)};
    std::vector<int> path_arcs;
    std::fill(seen_at.begin(), seen_at.end(), -1);
    seen_at[static_cast<std::size_t>(path_nodes[0])] = 0;
    int arc = scan;
    while (true) {
      path_arcs.push_back(arc);
      const int head = city.head_id(arc);
      if (seen_at[static_cast<std::size_t>(head)] >= 0) {
        const int start = seen_at[static_cast<std::size_t>(head)];
        Line line;
        std::int64_t f = residual[static_cast<std::size_t>(path_arcs[static_cast<std::size_t>(start)])];
        for (std::size_t i = static_cast<std::size_t>(start); i < path_arcs.size(); ++i) {
          line.nodes.push_back(city.node(path_nodes[i]));
          f = std::min(f, residual[static_cast<std::size_t>(path_arcs[i])]);
        }
        for (std::size_t i = static_cast<std::size_t>(start); i < path_arcs.size(); ++i) {
          residual[static_cast<std::size_t>(path_arcs[i])] -= f;
        }
        plan.entries.push_back({std::move(line), f});
        break;
      }
      seen_at[static_cast<std::size_t>(head)] = static_cast<int>(path_nodes.size());
      path_nodes.push_back(head);
      // Conservation guarantees a residual outgoing arc.
      arc = -1;
      for (int a : city.out_arcs(head)) {
        if (residual[static_cast<std::size_t>(a)] > 0) {
          arc = a;
          break;
        }
      }
      if (arc < 0) throw ValidationError("frequencies violate flow conservation");
    }
  }
  return plan;
}

LinePlan canonical_symmetric_lineplan(const SymmetricFrequencies& sf, const CityInstance& city) {
  const int n = city.n();
  LinePlan plan;
  if (sf.F_P > 0) {
    for (int i = 0; i < n; ++i) plan.entries.push_back({Line{{Node::p(i), Node::sc(i)}}, sf.F_P});
  }
  if (sf.F_C > 0) {
    for (int i = 0; i < n; ++i) plan.entries.push_back({Line{{Node::sc(i), Node::cd()}}, sf.F_C});
  }
  if (sf.F_Splus > 0) {
    Line ring;
    for (int i = 0; i < n; ++i) ring.nodes.push_back(Node::sc(i));
    plan.entries.push_back({std::move(ring), sf.F_Splus});
  }
  if (sf.F_Sminus > 0) {
    Line ring;
    for (int i = 0; i < n; ++i) ring.nodes.push_back(Node::sc((n - i) % n));
    plan.entries.push_back({std::move(ring), sf.F_Sminus});
  }
  return plan;
}

bool same_lineplan(const LinePlan& a, const LinePlan& b) {
  auto tally = [](const LinePlan& p) {
    std::map<Line, std::int64_t> m;
    for (const auto& e : p.entries) m[canonical(e.line)] += e.frequency;
    return m;
  };
  return tally(a) == tally(b);
}

std::string to_json(const LinePlan& plan, const CityInstance& city, int indent) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& e : plan.entries) {
    nlohmann::ordered_json j;
    j["nodes"] = nlohmann::ordered_json::array();
    for (const Node& v : e.line.nodes) j["nodes"].push_back(to_string(v));
    j["frequency"] = e.frequency;
    j["length"] = line_length(e.line, city);
    out.push_back(std::move(j));
  }
  return out.dump(indent);
}

LpaResult lpa(const CityParams& params, const MilpOptions& options) {
  const CityInstance city = build_city(params);
  LpaResult out;
  out.solution = solve_alpp_sym(city, options);
  out.status = out.solution.status;
  out.message = out.solution.message;
  if (out.status != SolveStatus::Optimal && out.status != SolveStatus::GapLimit) return out;
  const MilpModel model = build_alpp_sym(city);
  const FrequencyPlan F = extract_frequency_plan(out.solution, model, city);
  out.frequencies = *symmetric_frequencies(F, city);
  out.plan = canonical_symmetric_lineplan(out.frequencies, city);
  out.flow = extract_routing_flow(out.solution, model);
  out.cost = out.solution.objective;
  return out;
}

}  // namespace pcity
