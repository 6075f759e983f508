#include "semnet/layout.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "semnet/util.hpp"

namespace semnet {

namespace {

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  SplitMix64 rng(a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2)));
  return rng.next();
}

// Deterministic unit vector for the coincident-pair nudge.
Vec2 jitter_direction(std::uint64_t seed, int iteration, int i, int j) {
  std::uint64_t h = mix64(seed, static_cast<std::uint64_t>(iteration));
  h = mix64(h, static_cast<std::uint64_t>(i));
  h = mix64(h, static_cast<std::uint64_t>(j));
  double angle = 2.0 * std::numbers::pi * (static_cast<double>(h >> 11) * 0x1.0p-53);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Layout init_positions(const WeightedGraph& graph, std::uint64_t seed) {
  Layout layout;
  const std::size_t n = graph.nodes.size();
  layout.positions.resize(n);
  const double half = std::sqrt(static_cast<double>(n));
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    layout.positions[i].x = (2.0 * rng.next_unit() - 1.0) * half;
    layout.positions[i].y = (2.0 * rng.next_unit() - 1.0) * half;
  }
  return layout;
}

double fa2_step(const WeightedGraph& graph, Layout& layout, Fa2State& state,
                const LayoutConfig& config) {
  const std::size_t n = graph.nodes.size();
  const double eps = config.epsilon_d;

  // separate coincident pairs so no force direction is undefined
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double dx = layout.positions[j].x - layout.positions[i].x;
      double dy = layout.positions[j].y - layout.positions[i].y;
      if (std::hypot(dx, dy) < eps) {
        Vec2 dir = jitter_direction(config.seed, state.iteration, static_cast<int>(i),
                                    static_cast<int>(j));
        layout.positions[j].x += eps * dir.x;
        layout.positions[j].y += eps * dir.y;
      }
    }
  }

  std::vector<Vec2> forces(n);

  // repulsion: k_r * (deg_i+1)(deg_j+1) / d, pushing the pair apart
  for (std::size_t i = 0; i < n; ++i) {
    const double mass_i = static_cast<double>(graph.nodes[i].degree) + 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double mass_j = static_cast<double>(graph.nodes[j].degree) + 1.0;
      double dx = layout.positions[i].x - layout.positions[j].x;
      double dy = layout.positions[i].y - layout.positions[j].y;
      double d = std::hypot(dx, dy);
      if (d < eps) d = eps;
      double magnitude = config.k_r * mass_i * mass_j / d;
      double fx = magnitude * dx / d;
      double fy = magnitude * dy / d;
      forces[i].x += fx;
      forces[i].y += fy;
      forces[j].x -= fx;
      forces[j].y -= fy;
    }
  }

  // attraction along each edge: w^delta * d toward the neighbour
  for (const GraphEdge& edge : graph.edges) {
    const std::size_t a = static_cast<std::size_t>(edge.source);
    const std::size_t b = static_cast<std::size_t>(edge.target);
    double strength = std::pow(edge.weight, config.delta);
    double fx = strength * (layout.positions[b].x - layout.positions[a].x);
    double fy = strength * (layout.positions[b].y - layout.positions[a].y);
    forces[a].x += fx;
    forces[a].y += fy;
    forces[b].x -= fx;
    forces[b].y -= fy;
  }

  // constant gravity toward the origin
  if (config.k_g > 0.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = std::hypot(layout.positions[i].x, layout.positions[i].y);
      if (d < eps) continue;
      const double mass = static_cast<double>(graph.nodes[i].degree) + 1.0;
      double magnitude = config.k_g * mass;
      forces[i].x -= magnitude * layout.positions[i].x / d;
      forces[i].y -= magnitude * layout.positions[i].y / d;
    }
  }

  // swinging-adaptive global speed; first step sees zero previous force
  std::vector<double> swinging(n, 0.0);
  double swing_sum = 0.0;
  double traction_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Vec2 prev = state.forces.size() == n ? state.forces[i] : Vec2{};
    const double mass = static_cast<double>(graph.nodes[i].degree) + 1.0;
    swinging[i] = std::hypot(forces[i].x - prev.x, forces[i].y - prev.y);
    double traction = 0.5 * std::hypot(forces[i].x + prev.x, forces[i].y + prev.y);
    swing_sum += mass * swinging[i];
    traction_sum += mass * traction;
  }
  double speed = config.tolerance * traction_sum / std::max(eps, swing_sum);
  if (state.started) speed = std::min(speed, 1.5 * state.global_speed);

  double max_displacement = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double node_speed = config.k_s * speed / (1.0 + speed * std::sqrt(swinging[i]));
    double force_magnitude = std::hypot(forces[i].x, forces[i].y);
    if (force_magnitude > 0.0)
      node_speed = std::min(node_speed, config.k_smax * speed / force_magnitude);
    layout.positions[i].x += node_speed * forces[i].x;
    layout.positions[i].y += node_speed * forces[i].y;
    max_displacement = std::max(max_displacement, node_speed * force_magnitude);
  }

  state.forces = std::move(forces);
  state.global_speed = speed;
  state.started = true;
  ++state.iteration;
  return max_displacement;
}

Layout layout_graph(const WeightedGraph& graph, const LayoutConfig& config) {
  Layout layout = init_positions(graph, config.seed);
  Fa2State state;
  for (int it = 0; it < config.iterations; ++it) {
    double max_displacement = fa2_step(graph, layout, state, config);
    layout.iterations_run = it + 1;
    if (config.convergence_eps > 0.0 && max_displacement < config.convergence_eps) {
      layout.converged = true;
      break;
    }
  }
  return layout;
}

}  // namespace semnet
