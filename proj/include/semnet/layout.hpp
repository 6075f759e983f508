// layout.hpp : ForceAtlas2 force-directed 2D layout
#pragma once

#include <cstdint>
#include <vector>

#include "semnet/network.hpp"

namespace semnet {

struct LayoutConfig {
  int iterations = 600;
  std::uint64_t seed = 42;
  double k_r = 2.0;             // repulsion scaling
  double k_g = 1.0;             // gravity scaling
  double delta = 1.0;           // edge-weight influence exponent
  double tolerance = 1.0;       // jitter tolerance tau
  double k_s = 0.1;             // speed constant
  double k_smax = 10.0;         // max speed constant
  double epsilon_d = 1e-9;      // minimum distance
  double convergence_eps = 1e-4;  // max-displacement early stop, 0 disables
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

struct Layout {
  std::vector<Vec2> positions;  // indexed by node id
  int iterations_run = 0;
  bool converged = false;
};

// Forces and adaptive speed carried between steps.
struct Fa2State {
  std::vector<Vec2> forces;   // from the previous step; empty before the first
  double global_speed = 0.0;  // previous global speed; meaningless until started
  bool started = false;
  int iteration = 0;          // steps taken so far, drives the jitter stream
};

// Positions drawn uniformly from [-sqrt(N), sqrt(N)]^2; same seed, same layout.
Layout init_positions(const WeightedGraph& graph, std::uint64_t seed);

// One synchronous update: degree-scaled pairwise repulsion, per-edge linear
// attraction weighted by w^delta, constant gravity toward the origin, and
// swinging-adaptive per-node speeds. Near-coincident pairs are nudged apart by
// a deterministic seed-derived jitter of length epsilon_d before evaluation.
// Returns the largest node displacement of the step.
double fa2_step(const WeightedGraph& graph, Layout& layout, Fa2State& state,
                const LayoutConfig& config);

// init_positions then up to config.iterations steps, stopping early once the
// maximum displacement falls below convergence_eps.
Layout layout_graph(const WeightedGraph& graph, const LayoutConfig& config);

}  // namespace semnet
