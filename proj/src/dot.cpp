#include "dcomp/dot.hpp"

#include <map>
#include <sstream>

namespace dcomp {

namespace {

std::string node(CellId c) { return "c" + std::to_string(c.dim) + "_" + std::to_string(c.index); }

std::string dot_string(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

const char* const kPalette[] = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                                "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd", "#ccebc5", "#ffed6f"};

std::string render(const PrecubicalSet& k, const ComponentSystem* s) {
  std::map<CellId, std::size_t> comp;
  if (s)
    for (std::size_t i = 0; i < s->components.size(); ++i)
      for (CellId c : s->components[i]) comp[c] = i;
  std::ostringstream o;
  o << "digraph complex {\n  node [shape=box, style=filled, fillcolor=white];\n";
  for (std::size_t f = 0; f < k.num_cells(); ++f) {
    CellId c = k.cell(f);
    std::string label = k.has_labels() ? k.label(c) : std::to_string(c.dim) + ":" + std::to_string(c.index);
    o << "  " << node(c) << " [label=" << dot_string(label);
    if (auto it = comp.find(c); it != comp.end())
      o << ", fillcolor=\"" << kPalette[it->second % std::size(kPalette)] << "\", group=" << it->second;
    o << "];\n";
  }
  for (std::size_t f = 0; f < k.num_cells(); ++f) {
    CellId c = k.cell(f);
    for (unsigned i = 1; i <= c.dim; ++i)
      for (int e = 0; e < 2; ++e)
        o << "  " << node(c) << " -> " << node(k.face(c, i, e)) << " [label=\"" << i << "," << e << "\"];\n";
  }
  o << "}\n";
  return o.str();
}

}  // namespace

std::string complex_to_dot(const PrecubicalSet& k) { return render(k, nullptr); }

std::string system_to_dot(const PrecubicalSet& k, const ComponentSystem& s) { return render(k, &s); }

}  // namespace dcomp
