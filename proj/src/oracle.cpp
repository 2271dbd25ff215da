#include "streamsim/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace streamsim {

namespace {

// Depth-first enumeration over component placements and hop walks. Mirrors
// the message-level semantics: a segment may start with one public jump to a
// host of the next component, dedicated forwarding steps are budgeted per
// hop, the first dedicated step of a post-assignment segment is free, and
// walks may revisit nodes and edges.
struct ExactSearch {
  const ResourceGraph& graph;
  const MappingTask& task;
  int m;
  std::vector<CpuMicro> usage;
  MapPath path;
  ExactResult result;

  explicit ExactSearch(const Instance& inst)
      : graph(*inst.graph), task(inst.task), m(inst.task.components()) {
    usage.assign(static_cast<std::size_t>(graph.node_count()), 0);
  }

  void run() {
    path = initial_map(task.source);
    walk(0, task.source, /*seg_steps=*/0, /*trailing=*/0, /*assigner_start=*/false,
         /*seg_public=*/false);
  }

  void record() {
    result.maps.push_back(path);
  }

  void walk(int hop, NodeId at, int seg_steps, int trailing, bool assigner_start,
            bool seg_public) {
    // Settle the segment here: assign the next component, or emit a complete
    // map at the delivery node.
    if (hop == m) {
      if (at == task.delivery) record();
    } else {
      const int comp = hop + 1;
      const CpuMicro need = task.demand.cpu[static_cast<std::size_t>(comp)];
      const ServerNode& node = graph.node(at);
      if (node.hosts(task.service_of(comp)) &&
          usage[static_cast<std::size_t>(at)] + need <= to_cpu(node.cpu_capacity)) {
        usage[static_cast<std::size_t>(at)] += need;
        path.comps_at.back() += 1;
        path.prefix += 1;
        walk(hop + 1, at, 0, 0, /*assigner_start=*/true, false);
        path.prefix -= 1;
        path.comps_at.back() -= 1;
        usage[static_cast<std::size_t>(at)] -= need;
      }
    }

    const BwBits need_bw = task.demand.hop_bw[static_cast<std::size_t>(hop)];
    const int budget = task.max_null[static_cast<std::size_t>(hop)];

    // Dedicated forwarding step.
    const bool bypass = assigner_start && seg_steps == 0;
    if (bypass || trailing <= budget - 1) {
      for (EdgeId e : graph.incident(at)) {
        const DedicatedLink& link = graph.edge(e);
        if (to_bw(link.bandwidth) < need_bw) continue;
        const NodeId next = link.other(at);
        path.route.push_back(next);
        path.comps_at.push_back(0);
        path.step_public.push_back(0);
        const CostMicro step_cost = to_cost(link.cost);
        path.cost += step_cost;
        walk(hop, next, seg_steps + 1, bypass ? 0 : trailing + 1, assigner_start, seg_public);
        path.cost -= step_cost;
        path.step_public.pop_back();
        path.comps_at.pop_back();
        path.route.pop_back();
      }
    }

    // Public jump: first step of a segment only, never chained.
    const bool initial_at_source = (hop == 0 && path.steps() == 0);
    if (seg_steps == 0 && !seg_public && (assigner_start || initial_at_source) &&
        to_bw(graph.node(at).uplink_bw) >= need_bw) {
      std::vector<NodeId> delivery_only;
      const std::vector<NodeId>* targets;
      if (hop == m) {
        delivery_only.push_back(task.delivery);
        targets = &delivery_only;
      } else {
        targets = &graph.hosts_of(task.service_of(hop + 1));
      }
      for (NodeId k : *targets) {
        if (k == at) continue;
        path.route.push_back(k);
        path.comps_at.push_back(0);
        path.step_public.push_back(1);
        walk(hop, k, seg_steps + 1, 0, assigner_start, true);
        path.step_public.pop_back();
        path.comps_at.pop_back();
        path.route.pop_back();
      }
    }
  }
};

}  // namespace

ExactResult enumerate_exact(const Instance& instance) {
  const MappingTask& task = instance.task;
  if (instance.graph->node_count() > 8 || task.components() > 5)
    throw ConfigError("exact enumeration is guarded to <= 8 nodes and <= 5 components");
  for (int b : task.max_null)
    if (b > 2) throw ConfigError("exact enumeration is guarded to max_null <= 2");

  ExactSearch search(instance);
  search.run();

  ExactResult out = std::move(search.result);
  out.feasible = !out.maps.empty();
  if (out.feasible) {
    out.best_cost = out.maps.front().cost;
    for (const MapPath& p : out.maps) out.best_cost = std::min(out.best_cost, p.cost);
  }
  return out;
}

namespace {

// Cheapest walk costs with at most `limit` edges, bandwidth ignored.
std::vector<std::vector<CostMicro>> budgeted_walk_costs(const ResourceGraph& graph, int limit) {
  const int n = graph.node_count();
  std::vector<std::vector<CostMicro>> dist(
      static_cast<std::size_t>(n), std::vector<CostMicro>(static_cast<std::size_t>(n), kInfCost));
  for (int s = 0; s < n; ++s) {
    std::vector<CostMicro>& row = dist[static_cast<std::size_t>(s)];
    row[static_cast<std::size_t>(s)] = 0;
    std::vector<CostMicro> cur = row;
    for (int step = 0; step < limit; ++step) {
      std::vector<CostMicro> next = cur;
      for (const DedicatedLink& e : graph.edges()) {
        const CostMicro c = to_cost(e.cost);
        const CostMicro via_a = cur[static_cast<std::size_t>(e.a)];
        const CostMicro via_b = cur[static_cast<std::size_t>(e.b)];
        if (via_a < kInfCost)
          next[static_cast<std::size_t>(e.b)] = std::min(next[static_cast<std::size_t>(e.b)], via_a + c);
        if (via_b < kInfCost)
          next[static_cast<std::size_t>(e.a)] = std::min(next[static_cast<std::size_t>(e.a)], via_b + c);
      }
      cur.swap(next);
    }
    for (int v = 0; v < n; ++v)
      row[static_cast<std::size_t>(v)] = std::min(row[static_cast<std::size_t>(v)],
                                                  cur[static_cast<std::size_t>(v)]);
  }
  return dist;
}

struct Label {
  CostMicro cost;
  // Sparse per-node usage, sorted by node; only entries that can still bind.
  std::vector<std::pair<NodeId, CpuMicro>> profile;
};

bool dominates(const Label& a, const Label& b) {
  if (a.cost > b.cost) return false;
  // Every entry of a must be covered by b with at least the same usage.
  std::size_t j = 0;
  for (const auto& [node, used] : a.profile) {
    while (j < b.profile.size() && b.profile[j].first < node) ++j;
    if (j == b.profile.size() || b.profile[j].first != node || b.profile[j].second < used)
      return false;
  }
  return true;
}

}  // namespace

std::optional<CostMicro> lower_bound(const Instance& instance) {
  const ResourceGraph& graph = *instance.graph;
  const MappingTask& task = instance.task;
  const int n = graph.node_count();
  const int m = task.components();

  // Per-hop edge limits: the first dedicated step after an assignment is
  // free; the source's own forwarding steps are not.
  std::vector<int> limits(static_cast<std::size_t>(m) + 1);
  for (int h = 0; h <= m; ++h)
    limits[static_cast<std::size_t>(h)] =
        task.max_null[static_cast<std::size_t>(h)] + (h >= 1 ? 1 : 0);

  std::map<int, std::vector<std::vector<CostMicro>>> walk_costs;
  for (int h = 0; h <= m; ++h)
    if (!walk_costs.count(limits[static_cast<std::size_t>(h)]))
      walk_costs.emplace(limits[static_cast<std::size_t>(h)],
                         budgeted_walk_costs(graph, limits[static_cast<std::size_t>(h)]));

  // Stage membership: stage h in 1..m lists hosts of component h that can fit
  // it at all; stage m+1 is the delivery node.
  std::vector<std::vector<NodeId>> stage(static_cast<std::size_t>(m) + 2);
  stage[0] = {task.source};
  for (int h = 1; h <= m; ++h) {
    for (NodeId v = 0; v < n; ++v) {
      const ServerNode& node = graph.node(v);
      if (node.hosts(task.service_of(h)) &&
          task.demand.cpu[static_cast<std::size_t>(h)] <= to_cpu(node.cpu_capacity))
        stage[static_cast<std::size_t>(h)].push_back(v);
    }
    if (stage[static_cast<std::size_t>(h)].empty()) return std::nullopt;
  }
  stage[static_cast<std::size_t>(m) + 1] = {task.delivery};

  auto trans = [&](int h, NodeId u, NodeId v) -> CostMicro {
    CostMicro ded =
        walk_costs.at(limits[static_cast<std::size_t>(h)])[static_cast<std::size_t>(u)]
                  [static_cast<std::size_t>(v)];
    if (u != v && graph.node(u).uplink_bw > 0) return std::min<CostMicro>(ded, 0);
    return ded;
  };

  // Backward capacity-free costs-to-go, for pruning.
  std::vector<std::vector<CostMicro>> to_go(static_cast<std::size_t>(m) + 2);
  to_go[static_cast<std::size_t>(m) + 1] = {0};
  for (int h = m; h >= 0; --h) {
    const auto& here = stage[static_cast<std::size_t>(h)];
    const auto& there = stage[static_cast<std::size_t>(h) + 1];
    to_go[static_cast<std::size_t>(h)].assign(here.size(), kInfCost);
    for (std::size_t i = 0; i < here.size(); ++i) {
      for (std::size_t k = 0; k < there.size(); ++k) {
        CostMicro t = trans(h, here[i], there[k]);
        if (t >= kInfCost || to_go[static_cast<std::size_t>(h) + 1][k] >= kInfCost) continue;
        to_go[static_cast<std::size_t>(h)][i] =
            std::min(to_go[static_cast<std::size_t>(h)][i],
                     t + to_go[static_cast<std::size_t>(h) + 1][k]);
      }
    }
  }
  if (to_go[0][0] >= kInfCost) return std::nullopt;

  // Nodes that can still matter for capacity at stages > h.
  std::vector<CpuMicro> cpu_suffix(static_cast<std::size_t>(m) + 2, 0);
  for (int h = m; h >= 1; --h)
    cpu_suffix[static_cast<std::size_t>(h)] =
        cpu_suffix[static_cast<std::size_t>(h) + 1] + task.demand.cpu[static_cast<std::size_t>(h)];
  std::vector<std::vector<bool>> relevant(static_cast<std::size_t>(m) + 2,
                                          std::vector<bool>(static_cast<std::size_t>(n), false));
  for (int h = m; h >= 0; --h) {
    relevant[static_cast<std::size_t>(h)] = relevant[static_cast<std::size_t>(h) + 1];
    if (h + 1 <= m)
      for (NodeId v : stage[static_cast<std::size_t>(h) + 1])
        relevant[static_cast<std::size_t>(h)][static_cast<std::size_t>(v)] = true;
  }

  auto shrink_profile = [&](std::vector<std::pair<NodeId, CpuMicro>>& profile, int h) {
    // Keep only entries that could still overflow a future placement.
    std::erase_if(profile, [&](const auto& entry) {
      if (!relevant[static_cast<std::size_t>(h)][static_cast<std::size_t>(entry.first)]) return true;
      CpuMicro cap = to_cpu(graph.node(entry.first).cpu_capacity);
      return entry.second + cpu_suffix[static_cast<std::size_t>(h) + 1] <= cap;
    });
  };

  CostMicro incumbent = kInfCost;
  std::vector<std::vector<Label>> labels(stage[0].size());
  labels[0].push_back({0, {}});

  std::vector<std::vector<Label>> next_labels;
  for (int h = 0; h <= m; ++h) {
    const auto& here = stage[static_cast<std::size_t>(h)];
    const auto& there = stage[static_cast<std::size_t>(h) + 1];
    next_labels.assign(there.size(), {});
    for (std::size_t i = 0; i < here.size(); ++i) {
      for (const Label& lab : labels[i]) {
        for (std::size_t k = 0; k < there.size(); ++k) {
          const NodeId w = there[k];
          const CostMicro t = trans(h, here[i], w);
          if (t >= kInfCost) continue;
          CostMicro cost = lab.cost + t;
          if (cost >= incumbent) continue;
          Label cand{cost, lab.profile};
          if (h + 1 <= m) {
            const CpuMicro need = task.demand.cpu[static_cast<std::size_t>(h) + 1];
            auto it = std::lower_bound(cand.profile.begin(), cand.profile.end(),
                                       std::pair<NodeId, CpuMicro>{w, 0},
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            CpuMicro used = need;
            if (it != cand.profile.end() && it->first == w) {
              used = it->second + need;
              it->second = used;
            } else {
              cand.profile.insert(it, {w, need});
            }
            if (used > to_cpu(graph.node(w).cpu_capacity)) continue;
            shrink_profile(cand.profile, h + 1);
            if (cost + to_go[static_cast<std::size_t>(h) + 1][k] >= incumbent) continue;
          } else {
            incumbent = std::min(incumbent, cost);
            continue;
          }
          auto& bucket = next_labels[k];
          bool dominated = false;
          for (const Label& other : bucket) {
            if (dominates(other, cand)) {
              dominated = true;
              break;
            }
          }
          if (dominated) continue;
          std::erase_if(bucket, [&](const Label& other) { return dominates(cand, other); });
          bucket.push_back(std::move(cand));
        }
      }
    }
    if (h < m) labels = std::move(next_labels);
  }

  if (incumbent >= kInfCost) return std::nullopt;
  return incumbent;
}

}  // namespace streamsim
