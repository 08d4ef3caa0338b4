#include "pcity/city.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

namespace pcity {

namespace {

void require(bool condition, const char* what) {
  if (!condition) throw ValidationError(what);
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

// ceil() that ignores representation noise just above an integer.
double guarded_ceil(double x) { return std::ceil(x - 1e-9 * std::max(1.0, std::abs(x))); }
}  // namespace

std::int64_t CityParams::peripheral_frequency() const {
  return static_cast<std::int64_t>(guarded_ceil(Y * a / (n * K)));
}

double CityParams::effective_lambda() const {
  if (Lambda) return *Lambda;
  const double fp = guarded_ceil(Y * a / (n * K));
  const double total = guarded_ceil(Y / K);
  return 4.0 * std::max(fp, total);
}

void CityParams::validate() const {
  require(n >= 4, "n >= 4 violated");
  require(std::isfinite(T) && T > 0, "T > 0 violated");
  require(std::isfinite(g) && g > 0, "g > 0 violated");
  require(std::isfinite(Y) && Y > 0, "Y > 0 violated");
  require(std::isfinite(K) && K > 0, "K > 0 violated");
  require(!Lambda || (std::isfinite(*Lambda) && *Lambda >= 1), "Lambda >= 1 violated");
  require(a > 0 && a < 1, "0 < a < 1 violated");
  require(alpha > 0 && alpha < 1, "0 < alpha < 1 violated");
  require(beta > 0 && beta < 1, "0 < beta < 1 violated");
  require(gamma > 0 && gamma < 1, "0 < gamma < 1 violated");
  require(std::abs(alpha + beta + gamma - 1.0) <= 1e-12, "alpha + beta + gamma = 1 violated");
  require(mu >= 0 && mu <= 1, "0 <= mu <= 1 violated");
}

CityParams CityParams::with_shares(double alpha_, double gamma_) const {
  CityParams copy = *this;
  copy.alpha = alpha_;
  copy.gamma = gamma_;
  copy.beta = 1.0 - alpha_ - gamma_;
  return copy;
}

std::string to_string(const Node& node) {
  switch (node.kind) {
    case NodeKind::CD: return "CD";
    case NodeKind::SC: return "SC" + std::to_string(node.index);
    case NodeKind::P: return "P" + std::to_string(node.index);
  }
  return "?";
}

Node parse_node(const std::string& label) {
  if (label == "CD") return Node::cd();
  auto parse_index = [&](std::size_t offset) {
    if (label.size() <= offset) throw ValidationError("malformed node label: " + label);
    int value = 0;
    for (std::size_t i = offset; i < label.size(); ++i) {
      if (label[i] < '0' || label[i] > '9') throw ValidationError("malformed node label: " + label);
      value = value * 10 + (label[i] - '0');
    }
    return value;
  };
  if (label.rfind("SC", 0) == 0) return Node::sc(parse_index(2));
  if (label.rfind("P", 0) == 0) return Node::p(parse_index(1));
  throw ValidationError("malformed node label: " + label);
}

GeometryConstants geometry_constants(int n) {
  require(n >= 4, "n >= 4 violated");
  GeometryConstants out;
  out.r_n = 2.0 * std::sin(std::numbers::pi / n);
  out.k_n = static_cast<int>(std::floor(2.0 / out.r_n + 1e-12));
  return out;
}

Node rotate(const Node& node, int z, int n) {
  if (node.kind == NodeKind::CD) return node;
  return {node.kind, wrap(node.index + z, n)};
}

std::vector<Node> rotate(std::span<const Node> nodes, int z, int n) {
  std::vector<Node> out;
  out.reserve(nodes.size());
  for (const auto& v : nodes) out.push_back(rotate(v, z, n));
  return out;
}

DemandMatrix::DemandMatrix(int node_count, std::vector<double> values)
    : node_count_(node_count), values_(std::move(values)) {
  for (int s = 0; s < node_count_; ++s) {
    for (int t = 0; t < node_count_; ++t) {
      if ((*this)(s, t) > 0) pairs_.emplace_back(s, t);
    }
  }
}

double DemandMatrix::supply(int origin) const {
  double sum = 0;
  for (int t = 0; t < node_count_; ++t) sum += (*this)(origin, t);
  return sum;
}

double DemandMatrix::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

DemandMatrix build_demand(const CityParams& p) {
  p.validate();
  const int n = p.n;
  const int count = 2 * n + 1;
  std::vector<double> d(static_cast<std::size_t>(count) * count, 0.0);
  auto at = [&](int s, int t) -> double& { return d[static_cast<std::size_t>(s) * count + t]; };
  const int cd = 0;
  auto sc = [](int i) { return 1 + i; };
  auto per = [n](int i) { return 1 + n + i; };

  const double from_p = p.a * p.Y;
  const double from_sc = (1.0 - p.a) * p.Y;
  for (int i = 0; i < n; ++i) {
    at(per(i), sc(i)) = from_p * p.beta / n;
    at(per(i), cd) = from_p * p.alpha / n;
    at(sc(i), cd) = from_sc * p.tilde_alpha() / n;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      at(per(i), sc(j)) = from_p * p.gamma / (n * (n - 1.0));
      at(sc(i), sc(j)) = from_sc * p.tilde_gamma() / (n * (n - 1.0));
    }
  }
  return DemandMatrix(count, std::move(d));
}

CityInstance::CityInstance(CityParams params) : params_(params) {
  params_.validate();
  const int n = params_.n;
  geometry_ = geometry_constants(n);

  nodes_.push_back(Node::cd());
  for (int i = 0; i < n; ++i) nodes_.push_back(Node::sc(i));
  for (int i = 0; i < n; ++i) nodes_.push_back(Node::p(i));

  const double T = params_.T;
  const double ring = geometry_.r_n * T;
  const double spoke = params_.g * T;
  arcs_.resize(static_cast<std::size_t>(6 * n));
  for (int i = 0; i < n; ++i) {
    arcs_[arc_id(ArcBlock::CentralOut, i)] = {Node::cd(), Node::sc(i), T};
    arcs_[arc_id(ArcBlock::RingCcw, i)] = {Node::sc(i), Node::sc(wrap(i + 1, n)), ring};
    arcs_[arc_id(ArcBlock::RingCw, i)] = {Node::sc(i), Node::sc(wrap(i - 1, n)), ring};
    arcs_[arc_id(ArcBlock::ToPeriphery, i)] = {Node::sc(i), Node::p(i), spoke};
    arcs_[arc_id(ArcBlock::FromPeriphery, i)] = {Node::p(i), Node::sc(i), spoke};
    arcs_[arc_id(ArcBlock::CentralIn, i)] = {Node::sc(i), Node::cd(), T};
  }

  out_.resize(nodes_.size());
  in_.resize(nodes_.size());
  for (int a = 0; a < arc_count(); ++a) {
    const int t = node_id(arcs_[a].tail);
    const int h = node_id(arcs_[a].head);
    tail_ids_.push_back(t);
    head_ids_.push_back(h);
    out_[t].push_back(a);
    in_[h].push_back(a);
  }
  demand_ = build_demand(params_);
}

int CityInstance::node_id(const Node& node) const {
  switch (node.kind) {
    case NodeKind::CD: return 0;
    case NodeKind::SC: return 1 + wrap(node.index, n());
    case NodeKind::P: return 1 + n() + wrap(node.index, n());
  }
  return -1;
}

std::optional<int> CityInstance::find_arc(int tail, int head) const {
  for (int a : out_[static_cast<std::size_t>(tail)]) {
    if (head_ids_[a] == head) return a;
  }
  return std::nullopt;
}

std::optional<int> CityInstance::find_arc(const Node& tail, const Node& head) const {
  if (tail.index < 0 || tail.index >= n() || head.index < 0 || head.index >= n()) return std::nullopt;
  return find_arc(node_id(tail), node_id(head));
}

int CityInstance::rotate_node(int id, int z) const {
  return node_id(rotate(nodes_[static_cast<std::size_t>(id)], z, n()));
}

int CityInstance::rotate_arc(int id, int z) const {
  const int block = id / n();
  return block * n() + wrap(id % n() + z, n());
}

std::pair<double, double> CityInstance::coordinates(const Node& node) const {
  if (node.kind == NodeKind::CD) return {0.0, 0.0};
  const double radius = node.kind == NodeKind::SC ? params_.T : params_.T * (1.0 + params_.g);
  const double angle = node.index * 2.0 * std::numbers::pi / n();
  return {radius * std::sin(angle), radius * std::cos(angle)};
}

CityInstance build_city(const CityParams& params) { return CityInstance(params); }

}  // namespace pcity
