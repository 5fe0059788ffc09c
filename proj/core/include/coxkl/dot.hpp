#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "coxkl/bruhat_graph.hpp"

namespace coxkl {

/// Graphviz export: one node per element labelled by its canonical word,
/// nodes in ShortLex order, edges labelled "β=<coords>, len=<l(x,y)>".
/// Highlighted edge ids are drawn red.
void write_dot(std::ostream& os, const BruhatGraph& graph, const std::vector<std::size_t>& highlighted = {},
               const std::string& name = "bruhat");

} // namespace coxkl
