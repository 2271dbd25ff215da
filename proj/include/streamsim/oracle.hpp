#pragma once

#include <optional>
#include <vector>

#include "streamsim/graph.hpp"
#include "streamsim/mapping.hpp"

namespace streamsim {

// A frozen problem instance for the reference solvers.
struct Instance {
  const ResourceGraph* graph = nullptr;
  MappingTask task;
};

struct ExactResult {
  bool feasible = false;
  CostMicro best_cost = 0;
  std::vector<MapPath> maps;  // every feasible map, discovery order
};

// Centralized exhaustive search over component placements and hop walks.
// Guarded to small instances; mirrors the distributed semantics exactly
// (walks may revisit nodes, budgets bound forwarding steps per hop).
ExactResult enumerate_exact(const Instance& instance);

// Bandwidth-relaxed lower bound: minimum-cost path through a multi-stage
// graph whose transition costs are cheapest hop-budgeted dedicated walks
// (zero for permitted public jumps), subject to node capacities only.
// Empty result means the relaxed instance, hence the original, is infeasible.
std::optional<CostMicro> lower_bound(const Instance& instance);

}  // namespace streamsim
