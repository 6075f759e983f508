#include "semnet/render.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "semnet/util.hpp"

namespace semnet {

namespace {

std::string xml_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void check_layout_matches(const WeightedGraph& graph, const Layout* layout) {
  if (layout != nullptr && layout->positions.size() != graph.nodes.size())
    throw std::invalid_argument("layout does not cover the graph's nodes");
}

// run parameters as a comment line so every format records its provenance
std::string meta_comment(const GraphMeta& meta) {
  std::ostringstream os;
  os << "kb=" << meta.kb_name << " n_terms=" << meta.n_terms
     << " multiplier=" << format_double(meta.multiplier) << " seed=" << meta.seed
     << " version=" << kVersion;
  std::string text = os.str();
  // "--" may not appear inside an XML comment
  std::size_t pos = 0;
  while ((pos = text.find("--", pos)) != std::string::npos) text.replace(pos, 2, "__");
  return text;
}

nlohmann::ordered_json meta_to_json(const GraphMeta& meta, const Layout* layout) {
  nlohmann::ordered_json m;
  m["kb"] = meta.kb_name;
  m["n_terms"] = meta.n_terms;
  m["multiplier"] = meta.multiplier;
  m["seed"] = meta.seed;
  m["version"] = kVersion;
  if (layout != nullptr) {
    nlohmann::ordered_json l;
    l["iterations_run"] = layout->iterations_run;
    l["converged"] = layout->converged;
    l["seed"] = meta.seed;
    m["layout"] = std::move(l);
  }
  return m;
}

}  // namespace

std::string to_json(const WeightedGraph& graph, const Layout* layout) {
  check_layout_matches(graph, layout);
  nlohmann::ordered_json doc;
  doc["directed"] = false;
  doc["meta"] = meta_to_json(graph.meta, layout);
  nlohmann::ordered_json nodes = nlohmann::ordered_json::array();
  for (const GraphNode& node : graph.nodes) {
    nlohmann::ordered_json n;
    n["id"] = node.id;
    n["label"] = node.label;
    n["degree"] = node.degree;
    if (layout != nullptr) {
      n["x"] = layout->positions[static_cast<std::size_t>(node.id)].x;
      n["y"] = layout->positions[static_cast<std::size_t>(node.id)].y;
    }
    nodes.push_back(std::move(n));
  }
  doc["nodes"] = std::move(nodes);
  nlohmann::ordered_json edges = nlohmann::ordered_json::array();
  for (const GraphEdge& edge : graph.edges) {
    nlohmann::ordered_json e;
    e["source"] = edge.source;
    e["target"] = edge.target;
    e["weight"] = edge.weight;
    e["mst"] = edge.mst;
    edges.push_back(std::move(e));
  }
  doc["edges"] = std::move(edges);
  return doc.dump(2) + "\n";
}

ParsedGraph graph_from_json(const std::string& text, const std::string& source_name) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source_name, 0, std::string("invalid JSON: ") + e.what());
  }
  try {
    ParsedGraph out;
    const auto& meta = doc.at("meta");
    out.graph.meta.kb_name = meta.at("kb").get<std::string>();
    out.graph.meta.n_terms = meta.at("n_terms").get<std::size_t>();
    out.graph.meta.multiplier = meta.at("multiplier").get<double>();
    out.graph.meta.seed = meta.at("seed").get<std::uint64_t>();

    bool has_positions = false;
    for (const auto& n : doc.at("nodes")) {
      GraphNode node;
      node.id = n.at("id").get<int>();
      node.label = n.at("label").get<std::string>();
      node.degree = n.at("degree").get<int>();
      if (node.id != static_cast<int>(out.graph.nodes.size()))
        throw ParseError(source_name, 0, "node ids must be 0-based and sequential");
      out.graph.nodes.push_back(std::move(node));
      if (n.contains("x")) has_positions = true;
    }
    const int node_count = static_cast<int>(out.graph.nodes.size());
    std::vector<char> seen(out.graph.nodes.size() * out.graph.nodes.size(), 0);
    for (const auto& e : doc.at("edges")) {
      GraphEdge edge;
      edge.source = e.at("source").get<int>();
      edge.target = e.at("target").get<int>();
      edge.weight = e.at("weight").get<double>();
      edge.mst = e.at("mst").get<bool>();
      if (edge.source < 0 || edge.target < 0 || edge.source >= node_count ||
          edge.target >= node_count)
        throw ParseError(source_name, 0, "edge references an unknown node id");
      if (edge.source == edge.target)
        throw ParseError(source_name, 0, "self-loop edge");
      if (edge.source > edge.target) std::swap(edge.source, edge.target);
      char& mark = seen[static_cast<std::size_t>(edge.source) *
                            static_cast<std::size_t>(node_count) +
                        static_cast<std::size_t>(edge.target)];
      if (mark != 0) throw ParseError(source_name, 0, "duplicate edge");
      mark = 1;
      out.graph.edges.push_back(edge);
    }

    if (has_positions) {
      Layout layout;
      layout.positions.resize(out.graph.nodes.size());
      for (const auto& n : doc.at("nodes")) {
        std::size_t id = n.at("id").get<std::size_t>();
        layout.positions.at(id) = {n.at("x").get<double>(), n.at("y").get<double>()};
      }
      if (meta.contains("layout")) {
        layout.iterations_run = meta.at("layout").at("iterations_run").get<int>();
        layout.converged = meta.at("layout").at("converged").get<bool>();
      }
      out.layout = std::move(layout);
    }
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(source_name, 0, std::string("bad graph document: ") + e.what());
  }
}

std::string to_graphml(const WeightedGraph& graph, const Layout* layout) {
  check_layout_matches(graph, layout);
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- " << meta_comment(graph.meta) << " -->\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      << "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
      << "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
      << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"double\"/>\n"
      << "  <key id=\"mst\" for=\"edge\" attr.name=\"mst\" attr.type=\"boolean\"/>\n"
      << "  <graph id=\"" << xml_escape(graph.meta.kb_name) << "\" edgedefault=\"undirected\">\n";
  for (const GraphNode& node : graph.nodes) {
    out << "    <node id=\"n" << node.id << "\">"
        << "<data key=\"label\">" << xml_escape(node.label) << "</data>";
    if (layout != nullptr) {
      const Vec2& p = layout->positions[static_cast<std::size_t>(node.id)];
      out << "<data key=\"x\">" << format_double(p.x) << "</data>"
          << "<data key=\"y\">" << format_double(p.y) << "</data>";
    }
    out << "</node>\n";
  }
  for (const GraphEdge& edge : graph.edges) {
    out << "    <edge source=\"n" << edge.source << "\" target=\"n" << edge.target << "\">"
        << "<data key=\"weight\">" << format_double(edge.weight) << "</data>"
        << "<data key=\"mst\">" << (edge.mst ? "true" : "false") << "</data>"
        << "</edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

std::string to_dot(const WeightedGraph& graph) {
  std::ostringstream out;
  out << "// " << meta_comment(graph.meta) << "\n";
  out << "graph semnet {\n";
  for (const GraphNode& node : graph.nodes)
    out << "  " << node.id << " [label=\"" << dot_escape(node.label) << "\"];\n";
  for (const GraphEdge& edge : graph.edges)
    out << "  " << edge.source << " -- " << edge.target
        << " [weight=" << format_double(edge.weight) << "];\n";
  out << "}\n";
  return out.str();
}

std::string to_svg(const WeightedGraph& graph, const Layout& layout, const SvgStyle& style) {
  if (graph.nodes.empty()) throw std::invalid_argument("cannot render an empty graph");
  check_layout_matches(graph, &layout);

  double min_x = layout.positions[0].x, max_x = layout.positions[0].x;
  double min_y = layout.positions[0].y, max_y = layout.positions[0].y;
  for (const Vec2& p : layout.positions) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }
  // degenerate boxes (single node, collinear identical coords) get a unit extent
  if (max_x - min_x < 1e-12) {
    min_x -= 0.5;
    max_x += 0.5;
  }
  if (max_y - min_y < 1e-12) {
    min_y -= 0.5;
    max_y += 0.5;
  }
  const double margin_x = style.margin_fraction * (max_x - min_x);
  const double margin_y = style.margin_fraction * (max_y - min_y);
  min_x -= margin_x;
  max_x += margin_x;
  min_y -= margin_y;
  max_y += margin_y;

  const double scale = style.canvas_width / (max_x - min_x);
  const double width = style.canvas_width;
  const double height = (max_y - min_y) * scale;
  auto sx = [&](double x) { return (x - min_x) * scale; };
  auto sy = [&](double y) { return (max_y - y) * scale; };  // y flipped for screen space

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- " << meta_comment(graph.meta) << " -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << format_double(width)
      << " " << format_double(height) << "\" width=\"" << format_double(width)
      << "\" height=\"" << format_double(height) << "\">\n";

  for (const GraphEdge& edge : graph.edges) {
    const Vec2& a = layout.positions[static_cast<std::size_t>(edge.source)];
    const Vec2& b = layout.positions[static_cast<std::size_t>(edge.target)];
    double stroke = style.edge_width_base + style.edge_width_scale * edge.weight;
    double opacity = edge.mst ? style.mst_opacity : style.non_mst_opacity;
    out << "  <line x1=\"" << format_double(sx(a.x)) << "\" y1=\"" << format_double(sy(a.y))
        << "\" x2=\"" << format_double(sx(b.x)) << "\" y2=\"" << format_double(sy(b.y))
        << "\" stroke=\"#607080\" stroke-width=\"" << format_double(stroke)
        << "\" stroke-opacity=\"" << format_double(opacity) << "\"/>\n";
  }
  for (const GraphNode& node : graph.nodes) {
    const Vec2& p = layout.positions[static_cast<std::size_t>(node.id)];
    double radius = style.node_radius_base +
                    style.node_radius_scale * std::sqrt(static_cast<double>(node.degree));
    out << "  <circle cx=\"" << format_double(sx(p.x)) << "\" cy=\"" << format_double(sy(p.y))
        << "\" r=\"" << format_double(radius) << "\" fill=\"#3b6ea5\"/>\n";
    out << "  <text x=\"" << format_double(sx(p.x)) << "\" y=\""
        << format_double(sy(p.y) - radius - 2.0) << "\" font-size=\""
        << format_double(style.font_size)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\">" << xml_escape(node.label)
        << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace semnet
