#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "pcity/city.hpp"
#include "pcity/config.hpp"

using namespace pcity;

TEST(Geometry, SpacingAndHopCount) {
  EXPECT_NEAR(geometry_constants(4).r_n, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(geometry_constants(4).k_n, 1);
  // r_6 = 1 exactly, so 2/r_6 = 2 sits on the floor boundary.
  EXPECT_NEAR(geometry_constants(6).r_n, 1.0, 1e-15);
  EXPECT_EQ(geometry_constants(6).k_n, 2);
  EXPECT_NEAR(geometry_constants(8).r_n, 2 * std::sin(std::numbers::pi / 8), 1e-15);
  EXPECT_EQ(geometry_constants(8).k_n, 2);
  EXPECT_EQ(geometry_constants(100).k_n, 31);
  EXPECT_THROW(geometry_constants(3), ValidationError);
}

TEST(Params, ValidationNamesTheField) {
  CityParams p;
  p.alpha = 0;
  p.beta = 0.75;
  try {
    p.validate();
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("alpha"), std::string::npos) << e.what();
  }
  CityParams q;
  q.n = 3;
  EXPECT_THROW(q.validate(), ValidationError);
  CityParams s;
  s.beta = 0.4;  // shares no longer sum to 1
  EXPECT_THROW(s.validate(), ValidationError);
}

TEST(Params, DerivedQuantities) {
  CityParams p;  // Y = 24000, a = 0.8, n = 8, K = 100
  EXPECT_EQ(p.peripheral_frequency(), 24);
  EXPECT_DOUBLE_EQ(p.effective_lambda(), 4 * 240.0);
  p.Lambda = 30;
  EXPECT_DOUBLE_EQ(p.effective_lambda(), 30.0);
  const auto q = p.with_shares(0.1, 0.3);
  EXPECT_NEAR(q.beta, 0.6, 1e-15);
}

TEST(Nodes, LabelsRoundTrip) {
  for (Node v : {Node::cd(), Node::sc(0), Node::sc(11), Node::p(7)}) EXPECT_EQ(parse_node(to_string(v)), v);
  EXPECT_EQ(to_string(Node::sc(3)), "SC3");
  EXPECT_THROW(parse_node("XX1"), ValidationError);
  EXPECT_THROW(parse_node("SC"), ValidationError);
}

TEST(Graph, HelmStructure) {
  const CityInstance city = build_city(CityParams{});
  EXPECT_EQ(city.node_count(), 17);
  EXPECT_EQ(city.arc_count(), 48);
  EXPECT_EQ(city.node_id(Node::cd()), 0);
  EXPECT_EQ(city.node_id(Node::sc(2)), 3);
  EXPECT_EQ(city.node_id(Node::p(2)), 11);
  const double T = 30, g = 1.0 / 3, r = geometry_constants(8).r_n;
  for (int a = 0; a < city.arc_count(); ++a) {
    const Arc& arc = city.arc(a);
    switch (city.arc_block(a)) {
      case ArcBlock::CentralOut:
      case ArcBlock::CentralIn: EXPECT_NEAR(arc.length, T, 1e-12); break;
      case ArcBlock::ToPeriphery:
      case ArcBlock::FromPeriphery: EXPECT_NEAR(arc.length, g * T, 1e-12); break;
      default: EXPECT_NEAR(arc.length, r * T, 1e-12);
    }
    // Antiparallel partner exists.
    EXPECT_TRUE(city.find_arc(city.head_id(a), city.tail_id(a)).has_value());
  }
  EXPECT_EQ(city.arc(*city.find_arc(Node::sc(0), Node::sc(1))).head, Node::sc(1));
  EXPECT_EQ(city.arc_block(*city.find_arc(Node::sc(0), Node::sc(1))), ArcBlock::RingCcw);
  EXPECT_EQ(city.arc_block(*city.find_arc(Node::sc(0), Node::sc(7))), ArcBlock::RingCw);
  EXPECT_FALSE(city.find_arc(Node::p(0), Node::cd()).has_value());
  EXPECT_EQ(city.out_arcs(0).size(), 8u);
  EXPECT_EQ(city.out_arcs(city.node_id(Node::sc(4))).size(), 4u);
}

TEST(Graph, RotationIsAnAutomorphism) {
  const CityInstance city = build_city(CityParams{});
  for (int z = 0; z < 8; ++z) {
    for (int a = 0; a < city.arc_count(); ++a) {
      const int b = city.rotate_arc(a, z);
      EXPECT_EQ(city.arc(b).tail, rotate(city.arc(a).tail, z, 8));
      EXPECT_EQ(city.arc(b).head, rotate(city.arc(a).head, z, 8));
      EXPECT_DOUBLE_EQ(city.arc(b).length, city.arc(a).length);
    }
  }
  EXPECT_EQ(rotate(Node::sc(6), 3, 8), Node::sc(1));
  EXPECT_EQ(rotate(Node::cd(), 3, 8), Node::cd());
}

TEST(Demand, TableEntriesAndTotals) {
  CityParams p;
  p.alpha = 0.2;
  p.gamma = 0.3;
  p.beta = 0.5;
  const CityInstance city = build_city(p);
  const auto& d = city.demand();
  const double Y = p.Y, a = p.a, n = 8;
  const int P0 = city.node_id(Node::p(0)), SC0 = city.node_id(Node::sc(0)), SC3 = city.node_id(Node::sc(3));
  EXPECT_NEAR(d(P0, SC0), a * Y / n * 0.5, 1e-9);
  EXPECT_NEAR(d(P0, SC3), a * Y / (n * (n - 1)) * 0.3, 1e-9);
  EXPECT_NEAR(d(P0, 0), a * Y / n * 0.2, 1e-9);
  EXPECT_NEAR(d(SC0, 0), (1 - a) * Y / n * 0.4, 1e-9);
  EXPECT_NEAR(d(SC0, SC3), (1 - a) * Y / (n * (n - 1)) * 0.6, 1e-9);
  EXPECT_EQ(d(SC0, SC0), 0.0);
  EXPECT_EQ(d(0, SC0), 0.0);
  EXPECT_EQ(d(SC0, P0), 0.0);
  EXPECT_NEAR(d.total(), Y, 1e-8);
  EXPECT_NEAR(d.supply(P0), a * Y / n, 1e-9);
  EXPECT_EQ(d.supply(0), 0.0);
  // Rotation invariance.
  for (auto [s, t] : d.pairs()) EXPECT_NEAR(d(s, t), d(city.rotate_node(s, 3), city.rotate_node(t, 3)), 1e-12);
}

TEST(Config, RoundTripAndErrors) {
  CityParams p;
  p.n = 5;
  p.g = 1.0 / 3.0;
  p.Lambda = 17;
  p.mu = 0.87799;
  const CityParams q = parse_config_text(format_config(p));
  EXPECT_EQ(format_config(q), format_config(p));
  EXPECT_EQ(q.g, p.g);
  EXPECT_EQ(*q.Lambda, 17.0);

  const std::string good = "n=8\nT=30\ng=1/3\nY=24000\na=0.8\nalpha=0.25\nbeta=0.5\ngamma=0.25\nK=100\n";
  EXPECT_DOUBLE_EQ(parse_config_text(good).g, 1.0 / 3.0);
  EXPECT_EQ(parse_config_text(good).mu, 1.0);
  auto message = [](const std::string& text) -> std::string {
    try {
      parse_config_text(text);
    } catch (const ValidationError& e) {
      return e.what();
    }
    return "";
  };
  EXPECT_NE(message("n=8\nT=30\n").find("g"), std::string::npos);
  EXPECT_NE(message(good + "colour=blue\n").find("colour"), std::string::npos);
  EXPECT_NE(message(good + "K=3\n").find("K"), std::string::npos);
  EXPECT_NE(message("n=8\nT=abc\n").find("T"), std::string::npos);
}
