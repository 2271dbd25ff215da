#pragma once

#include <iosfwd>
#include <string>

#include "streamsim/graph.hpp"
#include "streamsim/service.hpp"
#include "streamsim/topology.hpp"

namespace streamsim {

// Line-oriented scenario snapshots: one service / node / edge / task per
// line, doubles printed exactly, so frozen scenarios replay bit-identically.
void write_graph(std::ostream& os, const ResourceGraph& graph, const ServiceCatalog& catalog);
void write_workload(std::ostream& os, const Workload& workload);

struct GraphFile {
  ResourceGraph graph;
  ServiceCatalog catalog;
};
GraphFile read_graph(std::istream& is);
Workload read_workload(std::istream& is);

}  // namespace streamsim
