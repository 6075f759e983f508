#include "semnet/layout.hpp"

#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace semnet;

namespace {

double distance(const Vec2& a, const Vec2& b) { return std::hypot(a.x - b.x, a.y - b.y); }

WeightedGraph two_nodes(bool with_edge) {
  WeightedGraph g;
  g.nodes = {{0, "a", with_edge ? 1 : 0}, {1, "b", with_edge ? 1 : 0}};
  if (with_edge) g.edges = {{0, 1, 1.0, true}};
  return g;
}

}  // namespace

TEST_CASE("init_positions is seed-deterministic and bounded") {
  WeightedGraph g = testutil::random_graph(16, 5);
  Layout a = init_positions(g, 9);
  Layout b = init_positions(g, 9);
  REQUIRE(a.positions.size() == 16);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(a.positions[i].x == b.positions[i].x);
    CHECK(a.positions[i].y == b.positions[i].y);
    CHECK(std::abs(a.positions[i].x) <= 4.0);
    CHECK(std::abs(a.positions[i].y) <= 4.0);
  }

  Layout c = init_positions(g, 10);
  bool any_different = false;
  for (std::size_t i = 0; i < 16; ++i)
    any_different |= (a.positions[i].x != c.positions[i].x);
  CHECK(any_different);

  WeightedGraph empty;
  CHECK(init_positions(empty, 1).positions.empty());
}

TEST_CASE("a single node without gravity converges immediately") {
  WeightedGraph g;
  g.nodes = {{0, "solo", 0}};
  LayoutConfig config;
  config.k_g = 0.0;
  Layout layout = layout_graph(g, config);
  CHECK(layout.converged);
  CHECK(layout.iterations_run == 1);
  Layout initial = init_positions(g, config.seed);
  CHECK(layout.positions[0].x == initial.positions[0].x);
  CHECK(layout.positions[0].y == initial.positions[0].y);
}

TEST_CASE("coincident nodes separate after one step") {
  WeightedGraph g = two_nodes(false);
  Layout layout;
  layout.positions = {{1.0, 1.0}, {1.0, 1.0}};
  Fa2State state;
  LayoutConfig config;
  config.k_g = 0.0;
  fa2_step(g, layout, state, config);
  CHECK(distance(layout.positions[0], layout.positions[1]) > 0.0);
}

TEST_CASE("a lone gravitating node moves toward the origin") {
  WeightedGraph g;
  g.nodes = {{0, "solo", 0}};
  Layout layout;
  layout.positions = {{10.0, 0.0}};
  Fa2State state;
  LayoutConfig config;
  fa2_step(g, layout, state, config);
  CHECK(std::hypot(layout.positions[0].x, layout.positions[0].y) < 10.0);
  CHECK(layout.positions[0].y == 0.0);
}

TEST_CASE("force laws match the hand-evaluated two-node case") {
  // distance 1, one edge w=1, delta=1, k_r=2, k_g=0, degree 1 each:
  // repulsion 2*(2*2)/1 = 8 outward, attraction 1*1 = 1 inward, net 7 outward
  WeightedGraph g = two_nodes(true);
  Layout layout;
  layout.positions = {{0.0, 0.0}, {1.0, 0.0}};
  Fa2State state;
  LayoutConfig config;
  config.k_r = 2.0;
  config.k_g = 0.0;
  config.delta = 1.0;
  fa2_step(g, layout, state, config);
  REQUIRE(state.forces.size() == 2);
  CHECK(state.forces[0].x == doctest::Approx(-7.0).epsilon(1e-12));
  CHECK(state.forces[0].y == doctest::Approx(0.0));
  CHECK(state.forces[1].x == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(state.forces[1].y == doctest::Approx(0.0));
}

TEST_CASE("pure repulsion strictly grows the two-node distance") {
  WeightedGraph g = two_nodes(false);
  LayoutConfig config;
  config.k_g = 0.0;
  config.convergence_eps = 0.0;
  Layout layout = init_positions(g, 3);
  Fa2State state;
  double previous = distance(layout.positions[0], layout.positions[1]);
  for (int it = 0; it < 60; ++it) {
    fa2_step(g, layout, state, config);
    double current = distance(layout.positions[0], layout.positions[1]);
    CAPTURE(it);
    CHECK(current > previous);
    previous = current;
  }
}

TEST_CASE("a gravitating node approaches the origin monotonically") {
  WeightedGraph g;
  g.nodes = {{0, "solo", 0}};
  LayoutConfig config;
  config.k_g = 1.0;
  config.k_s = 0.5;
  config.convergence_eps = 0.05;
  const double threshold = 10.0 * config.convergence_eps;

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    config.seed = seed;
    Layout layout = init_positions(g, seed);
    Fa2State state;
    double previous = std::hypot(layout.positions[0].x, layout.positions[0].y);
    if (previous < threshold) continue;  // spawned at the origin already
    for (int it = 0; it < 100 && previous >= threshold; ++it) {
      fa2_step(g, layout, state, config);
      double current = std::hypot(layout.positions[0].x, layout.positions[0].y);
      CAPTURE(seed);
      CAPTURE(it);
      CHECK(current < previous);
      previous = current;
    }
    CHECK(previous < threshold);
  }
}

TEST_CASE("repeated layouts are bit-identical") {
  WeightedGraph g = testutil::random_graph(20, 17);
  LayoutConfig config;
  config.iterations = 120;
  Layout a = layout_graph(g, config);
  Layout b = layout_graph(g, config);
  CHECK(a.iterations_run == b.iterations_run);
  CHECK(a.converged == b.converged);
  for (std::size_t i = 0; i < a.positions.size(); ++i) {
    CHECK(a.positions[i].x == b.positions[i].x);
    CHECK(a.positions[i].y == b.positions[i].y);
  }
}

TEST_CASE("coordinates stay finite on random graphs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    WeightedGraph g = testutil::random_graph(1 + seed * 5 % 60, seed);
    LayoutConfig config;
    config.seed = seed;
    config.iterations = 200;
    Layout layout = layout_graph(g, config);
    for (const Vec2& p : layout.positions) {
      CHECK(std::isfinite(p.x));
      CHECK(std::isfinite(p.y));
    }
  }
}

TEST_CASE("per-step displacement respects the speed cap") {
  WeightedGraph g = testutil::random_graph(24, 23);
  LayoutConfig config;
  config.convergence_eps = 0.0;
  Layout layout = init_positions(g, config.seed);
  Fa2State state;
  for (int it = 0; it < 80; ++it) {
    std::vector<Vec2> before = layout.positions;
    fa2_step(g, layout, state, config);
    for (std::size_t i = 0; i < layout.positions.size(); ++i) {
      double moved = distance(before[i], layout.positions[i]);
      CHECK(moved <= config.k_smax * state.global_speed + config.epsilon_d + 1e-12);
    }
  }
}

TEST_CASE("layout does not touch the graph") {
  WeightedGraph g = testutil::random_graph(12, 31);
  WeightedGraph copy = g;
  LayoutConfig config;
  config.iterations = 50;
  layout_graph(g, config);
  REQUIRE(g.nodes.size() == copy.nodes.size());
  REQUIRE(g.edges.size() == copy.edges.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    CHECK(g.edges[i].source == copy.edges[i].source);
    CHECK(g.edges[i].target == copy.edges[i].target);
    CHECK(g.edges[i].weight == copy.edges[i].weight);
  }
}

TEST_CASE("iteration budget zero runs nothing") {
  WeightedGraph g = testutil::random_graph(5, 2);
  LayoutConfig config;
  config.iterations = 0;
  Layout layout = layout_graph(g, config);
  CHECK(layout.iterations_run == 0);
  CHECK_FALSE(layout.converged);
}
