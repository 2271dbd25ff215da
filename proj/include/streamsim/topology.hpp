#pragma once

#include <vector>

#include "streamsim/graph.hpp"
#include "streamsim/rng.hpp"
#include "streamsim/service.hpp"
#include "streamsim/task.hpp"

namespace streamsim {

struct CatalogParams {
  int services = 25;
  double cpu_factor_min = 0.5, cpu_factor_max = 2.0;
  double shrink_min = 0.8, shrink_max = 1.25;
};

struct CapacityParams {
  int k_instances = 2;              // concurrent instances per hosted service
  double mean_rate = 1e6;           // bits/s used to size CPU capacity
  double link_bw_min = 1e6, link_bw_max = 10e6;
  double link_delay_min = 1e-3, link_delay_max = 10e-3;
  double uplink_min = 1e6, uplink_max = 2e6;
  double public_delay_min = 10e-3, public_delay_max = 100e-3;
  double edge_cost = 1.0;           // per-hop cost unless cost_from_delay
  bool cost_from_delay = false;     // cost = delay in ms instead of a constant
  bool clamp_hosted_to_catalog = false;
};

struct WorkloadParams {
  int components = 10;
  double rate_min = 0.5e6, rate_max = 1.5e6;   // bits/s, mean 1 Mbps
  double volume_min = 50e6, volume_max = 150e6;  // bytes, mean 100 MB
  double window = 10.0;                          // seconds
  double price_per_byte = 10.0;
};

struct BenchParams {
  int components = 10;
  int attach_edges = 2;          // edges added per node in the growth model
  double bw_min = 10e6, bw_max = 1e9, bw_exponent = 2.0;
  double cap_min = 1.0, cap_max = 100.0, cap_shape = 1.5;  // truncated Pareto
  double req_fraction = 0.5;     // requirement mean as a fraction of average capacity
  double req_sigma_frac = 0.5;   // sigma as a fraction of the mean
  int services = 25;
  int max_null = 2;
};

struct Workload {
  std::vector<TaskSpec> tasks;  // arrival-time ordered
};

struct BenchInstance {
  ResourceGraph graph;
  ServiceCatalog catalog;
  TaskSpec task;
  TaskRequirements reqs;  // sampled directly, not derived from the catalog
  int max_null = 2;
};

ServiceCatalog generate_catalog(const CatalogParams& params, RngStream& rng);

// Preferential-attachment growth with one edge per arriving node, then extra
// edges by degree-preferential endpoint sampling. Fewer links than nodes-1
// leaves the latest nodes isolated (they keep their public connectivity).
ResourceGraph generate_dedicated_topology(int nodes, int links, RngStream& rng);

// Hosted services (1 + degree of each), CPU capacity sized for k instances of
// each hosted service at the mean rate, and link/last-mile parameter draws.
void assign_capacities(ResourceGraph& graph, const ServiceCatalog& catalog,
                       const CapacityParams& params, RngStream& rng);

Workload generate_workload(int count, double arrivals_per_hour, const ServiceCatalog& catalog,
                           const ResourceGraph& graph, const WorkloadParams& params,
                           RngStream& rng);

// One heuristic-benchmark instance: heavy-tailed topology and capacities with
// a single task whose requirements are sampled around half the average
// capacity. Uni-modal: last-mile uplinks are zero.
BenchInstance generate_benchmark_scenario(int nodes, const BenchParams& params, RngStream& rng);

}  // namespace streamsim
