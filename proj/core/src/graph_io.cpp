#include "treediam/graph_io.hpp"

#include <ostream>
#include <string>

namespace treediam {

namespace {

template <class Graph>
void edges_impl(std::ostream& out, const Graph& g) {
  for (auto [u, v] : g.edges()) out << to_string(g.label(u)) << ' ' << to_string(g.label(v)) << '\n';
}

template <class Graph, class LabelFn>
void dot_impl(std::ostream& out, const Graph& g, std::string_view name, LabelFn node_label) {
  out << "graph " << name << " {\n";
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    out << "  \"" << to_string(g.label(v)) << "\" [label=\"" << node_label(g.label(v)) << "\"];\n";
  }
  for (auto [u, v] : g.edges()) {
    out << "  \"" << to_string(g.label(u)) << "\" -- \"" << to_string(g.label(v)) << "\";\n";
  }
  out << "}\n";
}

}  // namespace

void write_edge_list(std::ostream& out, const DiamondGraph& g) { edges_impl(out, g); }
void write_edge_list(std::ostream& out, const TreeGraph& g) { edges_impl(out, g); }

void write_dot(std::ostream& out, const DiamondGraph& g) {
  const std::string name = "D_" + std::to_string(g.params().level) + "_" + std::to_string(g.params().branching.value());
  dot_impl(out, g, name, [&](const DiamondAddress& a) {
    auto gen = generation_number(a, g.params());
    return gen ? std::to_string(*gen) : std::string();
  });
}

void write_dot(std::ostream& out, const TreeGraph& g) {
  const std::string name = "T_" + std::to_string(g.params().depth);
  dot_impl(out, g, name, [](const TreeVertex& v) { return to_string(v); });
}

}  // namespace treediam
