#include "streamsim/topology.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace streamsim {

ServiceCatalog generate_catalog(const CatalogParams& params, RngStream& rng) {
  if (params.services <= 0) throw ConfigError("catalog size must be positive");
  std::vector<ServiceType> services;
  services.reserve(static_cast<std::size_t>(params.services));
  for (int i = 0; i < params.services; ++i) {
    ServiceType s;
    s.id = i;
    s.cpu_usage_factor = rng.uniform(params.cpu_factor_min, params.cpu_factor_max);
    s.bandwidth_shrinkage_factor = rng.uniform(params.shrink_min, params.shrink_max);
    services.push_back(s);
  }
  return ServiceCatalog(std::move(services));
}

ResourceGraph generate_dedicated_topology(int nodes, int links, RngStream& rng) {
  if (nodes < 2) throw ConfigError("topology needs at least 2 nodes");
  const long max_links = static_cast<long>(nodes) * (nodes - 1) / 2;
  if (links < 1 || links > max_links) throw ConfigError("infeasible dedicated link count");

  ResourceGraph graph;
  for (int i = 0; i < nodes; ++i) graph.add_node({});

  // Growth phase: each arriving node attaches to an existing node picked with
  // probability proportional to its degree (repeated-endpoint list).
  std::vector<NodeId> endpoint_pool;
  auto add_link = [&](NodeId a, NodeId b) {
    graph.add_edge(a, b, 0.0, 0.0, 0.0);
    endpoint_pool.push_back(a);
    endpoint_pool.push_back(b);
  };

  int produced = 0;
  for (NodeId i = 1; i < nodes && produced < links; ++i) {
    NodeId target = 0;
    if (!endpoint_pool.empty()) {
      target = endpoint_pool[static_cast<std::size_t>(
          rng.uniform_int(0, static_cast<std::int64_t>(endpoint_pool.size()) - 1))];
    }
    add_link(i, target);
    ++produced;
  }

  // Densification: extra edges with degree-preferential endpoints.
  int rejects = 0;
  while (produced < links) {
    NodeId a = endpoint_pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(endpoint_pool.size()) - 1))];
    NodeId b = endpoint_pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(endpoint_pool.size()) - 1))];
    if (a == b || graph.edge_between(a, b) != kNoEdge) {
      if (++rejects > 64 * links + 4096) {
        // Dense regime: fall back to a uniform pick among the remaining
        // non-edges to guarantee termination.
        std::vector<std::pair<NodeId, NodeId>> free_pairs;
        for (NodeId u = 0; u < nodes; ++u)
          for (NodeId v = u + 1; v < nodes; ++v)
            if (graph.edge_between(u, v) == kNoEdge) free_pairs.emplace_back(u, v);
        while (produced < links) {
          std::size_t pick = static_cast<std::size_t>(
              rng.uniform_int(0, static_cast<std::int64_t>(free_pairs.size()) - 1));
          add_link(free_pairs[pick].first, free_pairs[pick].second);
          free_pairs.erase(free_pairs.begin() + static_cast<std::ptrdiff_t>(pick));
          ++produced;
        }
        break;
      }
      continue;
    }
    add_link(a, b);
    ++produced;
  }
  return graph;
}

namespace {

std::vector<ServiceId> sample_hosted(int want, int catalog_size, bool clamp, RngStream& rng) {
  if (want > catalog_size) {
    if (!clamp)
      throw ConfigError("catalog too small: node wants " + std::to_string(want) +
                        " services, catalog has " + std::to_string(catalog_size));
    want = catalog_size;
  }
  // Partial Fisher-Yates over the id range.
  std::vector<ServiceId> ids(static_cast<std::size_t>(catalog_size));
  std::iota(ids.begin(), ids.end(), 0);
  for (int i = 0; i < want; ++i) {
    std::size_t j = static_cast<std::size_t>(rng.uniform_int(i, catalog_size - 1));
    std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
  }
  ids.resize(static_cast<std::size_t>(want));
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

void assign_capacities(ResourceGraph& graph, const ServiceCatalog& catalog,
                       const CapacityParams& params, RngStream& rng) {
  for (NodeId i = 0; i < graph.node_count(); ++i) {
    ServerNode& node = graph.node(i);
    node.hosted = sample_hosted(1 + graph.degree(i), catalog.size(),
                                params.clamp_hosted_to_catalog, rng);
    double demand = 0.0;
    for (ServiceId s : node.hosted) demand += catalog.at(s).cpu_usage_factor * params.mean_rate;
    node.cpu_capacity = params.k_instances * demand;
    node.uplink_bw = rng.uniform(params.uplink_min, params.uplink_max);
    node.downlink_bw = rng.uniform(params.uplink_min, params.uplink_max);
    node.public_delay_half = rng.uniform(params.public_delay_min / 2, params.public_delay_max / 2);
  }
  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    DedicatedLink& link = graph.edge(e);
    link.bandwidth = rng.uniform(params.link_bw_min, params.link_bw_max);
    link.delay = rng.uniform(params.link_delay_min, params.link_delay_max);
    link.cost = params.cost_from_delay ? link.delay * 1e3 : params.edge_cost;
  }
  graph.rebuild_directory(catalog.size());
}

Workload generate_workload(int count, double arrivals_per_hour, const ServiceCatalog& catalog,
                           const ResourceGraph& graph, const WorkloadParams& params,
                           RngStream& rng) {
  if (count <= 0) throw ConfigError("workload task count must be positive");
  if (arrivals_per_hour <= 0) throw ConfigError("arrival rate must be positive");

  Workload wl;
  wl.tasks.reserve(static_cast<std::size_t>(count));
  const double mean_gap = 3600.0 / arrivals_per_hour;
  double clock = 0.0;
  for (int i = 0; i < count; ++i) {
    clock += rng.exponential(mean_gap);
    TaskSpec task;
    task.id = i;
    task.arrival_time = clock;
    task.source = static_cast<NodeId>(rng.uniform_int(0, graph.node_count() - 1));
    task.delivery = static_cast<NodeId>(rng.uniform_int(0, graph.node_count() - 1));
    task.services.reserve(static_cast<std::size_t>(params.components));
    for (int c = 0; c < params.components; ++c)
      task.services.push_back(static_cast<ServiceId>(rng.uniform_int(0, catalog.size() - 1)));
    task.delivery_rate = rng.uniform(params.rate_min, params.rate_max);
    task.volume = rng.uniform(params.volume_min, params.volume_max);
    task.window = params.window;
    task.price_per_byte = params.price_per_byte;
    wl.tasks.push_back(std::move(task));
  }
  return wl;
}

BenchInstance generate_benchmark_scenario(int nodes, const BenchParams& params, RngStream& rng) {
  if (nodes < params.attach_edges + 1) throw ConfigError("benchmark graph too small");

  BenchInstance inst;
  inst.max_null = params.max_null;
  inst.catalog = generate_catalog({.services = params.services}, rng);

  // Growth model with several preferential attachments per arriving node.
  ResourceGraph& graph = inst.graph;
  for (int i = 0; i < nodes; ++i) graph.add_node({});
  std::vector<NodeId> pool;
  for (NodeId i = 1; i < nodes; ++i) {
    int want = std::min<int>(params.attach_edges, i);
    std::set<NodeId> picked;
    while (static_cast<int>(picked.size()) < want) {
      NodeId t;
      if (pool.empty()) {
        t = static_cast<NodeId>(rng.uniform_int(0, i - 1));
      } else {
        t = pool[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<std::int64_t>(pool.size()) - 1))];
      }
      if (t != i) picked.insert(t);
    }
    for (NodeId t : picked) {
      graph.add_edge(i, t, 0.0, 0.0, 0.0);
      pool.push_back(i);
      pool.push_back(t);
    }
  }

  for (EdgeId e = 0; e < graph.edge_count(); ++e) {
    DedicatedLink& link = graph.edge(e);
    link.bandwidth = rng.power_law(params.bw_min, params.bw_max, params.bw_exponent);
    link.delay = rng.uniform(1e-3, 10e-3);
    link.cost = 1.0;
  }
  for (NodeId i = 0; i < nodes; ++i) {
    ServerNode& node = graph.node(i);
    // Truncated Pareto: pdf ~ x^-(shape+1) on [cap_min, cap_max].
    node.cpu_capacity = rng.power_law(params.cap_min, params.cap_max, params.cap_shape + 1.0);
    node.hosted = sample_hosted(1 + graph.degree(i), inst.catalog.size(), true, rng);
    node.uplink_bw = 0.0;
    node.downlink_bw = 0.0;
    node.public_delay_half = 0.0;
  }
  graph.rebuild_directory(inst.catalog.size());

  double avg_bw = 0.0;
  for (const DedicatedLink& e : graph.edges()) avg_bw += e.bandwidth;
  avg_bw /= graph.edge_count();
  double avg_cap = 0.0;
  for (const ServerNode& n : graph.nodes()) avg_cap += n.cpu_capacity;
  avg_cap /= graph.node_count();

  TaskSpec& task = inst.task;
  task.id = 0;
  task.source = static_cast<NodeId>(rng.uniform_int(0, nodes - 1));
  task.delivery = static_cast<NodeId>(rng.uniform_int(0, nodes - 1));
  for (int c = 0; c < params.components; ++c)
    task.services.push_back(static_cast<ServiceId>(rng.uniform_int(0, inst.catalog.size() - 1)));
  task.delivery_rate = params.req_fraction * avg_bw;
  task.window = 10.0;
  task.volume = 100e6;
  task.price_per_byte = 10.0;

  const int m = params.components;
  inst.reqs.input_rate.assign(static_cast<std::size_t>(m) + 1, 0.0);
  inst.reqs.cpu_req.assign(static_cast<std::size_t>(m) + 1, 0.0);
  inst.reqs.hop_bw.assign(static_cast<std::size_t>(m) + 1, 0.0);
  const double cap_mean = params.req_fraction * avg_cap;
  const double bw_mean = params.req_fraction * avg_bw;
  for (int i = 1; i <= m; ++i) {
    inst.reqs.cpu_req[static_cast<std::size_t>(i)] =
        rng.normal_positive(cap_mean, params.req_sigma_frac * cap_mean);
  }
  for (int h = 0; h <= m; ++h) {
    inst.reqs.hop_bw[static_cast<std::size_t>(h)] =
        rng.normal_positive(bw_mean, params.req_sigma_frac * bw_mean);
  }
  for (int i = 1; i <= m; ++i)
    inst.reqs.input_rate[static_cast<std::size_t>(i)] = inst.reqs.hop_bw[static_cast<std::size_t>(i - 1)];
  return inst;
}

}  // namespace streamsim
