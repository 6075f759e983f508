// render.hpp : graph serialization to JSON, GraphML, DOT and SVG
#pragma once

#include <optional>
#include <string>

#include "semnet/layout.hpp"
#include "semnet/network.hpp"

namespace semnet {

struct SvgStyle {
  double margin_fraction = 0.05;
  double node_radius_base = 4.0;
  double node_radius_scale = 2.0;
  double edge_width_base = 0.5;
  double edge_width_scale = 2.5;
  double mst_opacity = 0.9;
  double non_mst_opacity = 0.5;
  double font_size = 10.0;
  double canvas_width = 1200.0;
};

// Shared graph document; with a layout, nodes gain "x"/"y" and meta gains a
// "layout" block. Keys are emitted in a fixed order and round-trip losslessly.
std::string to_json(const WeightedGraph& graph, const Layout* layout = nullptr);

struct ParsedGraph {
  WeightedGraph graph;
  std::optional<Layout> layout;
};

ParsedGraph graph_from_json(const std::string& text, const std::string& source_name = "graph");

std::string to_graphml(const WeightedGraph& graph, const Layout* layout = nullptr);

std::string to_dot(const WeightedGraph& graph);

// Self-contained picture: edges under nodes, stroke width from weight, node
// radius from sqrt(degree), labels centered. The y axis is flipped into
// screen coordinates.
std::string to_svg(const WeightedGraph& graph, const Layout& layout,
                   const SvgStyle& style = {});

}  // namespace semnet
