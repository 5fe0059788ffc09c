#include "coxkl/dot.hpp"

#include <algorithm>

namespace coxkl {

void write_dot(std::ostream& os, const BruhatGraph& graph, const std::vector<std::size_t>& highlighted,
               const std::string& name)
{
  const Interval& iv = graph.interval();
  os << "digraph " << name << " {\n";
  os << "  rankdir=BT;\n";
  for (std::size_t v = 0; v < iv.size(); ++v)
    os << "  n" << v << " [label=\"" << format_word(iv.element(v).word()) << "\"];\n";
  for (std::size_t id = 0; id < graph.edge_count(); ++id) {
    const auto& e = graph.edge(id);
    os << "  n" << e.from << " -> n" << e.to << " [label=\"β=" << e.label.to_string() << ", len=" << e.length
       << "\"";
    if (std::find(highlighted.begin(), highlighted.end(), id) != highlighted.end())
      os << ", color=red, penwidth=2";
    os << "];\n";
  }
  os << "}\n";
}

} // namespace coxkl
