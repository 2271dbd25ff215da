#include "streamsim/mapping.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <tuple>

namespace streamsim {

CpuMicro MapPath::claimed_cpu(NodeId node, const std::vector<CpuMicro>& comp_cpu) const {
  CpuMicro sum = 0;
  int comp = 0;
  for (std::size_t i = 0; i < route.size(); ++i) {
    for (int k = 0; k < comps_at[i]; ++k) {
      ++comp;
      if (route[i] == node) sum += comp_cpu[static_cast<std::size_t>(comp)];
    }
  }
  return sum;
}

std::vector<NodeId> MapPath::assignment() const {
  std::vector<NodeId> nodes(1, kNoNode);
  for (std::size_t i = 0; i < route.size(); ++i)
    for (int k = 0; k < comps_at[i]; ++k) nodes.push_back(route[i]);
  return nodes;
}

std::vector<std::int32_t> MapPath::canonical_key() const {
  std::vector<std::int32_t> key;
  key.reserve(route.size() * 3 + 2);
  key.push_back(prefix);
  for (std::size_t i = 0; i < route.size(); ++i) {
    key.push_back(route[i]);
    key.push_back(comps_at[i]);
    if (i + 1 < route.size()) key.push_back(step_public[i]);
  }
  return key;
}

MapPath initial_map(NodeId source) {
  MapPath m;
  m.route.push_back(source);
  m.comps_at.push_back(0);
  return m;
}

MappingTask make_mapping_task(const TaskSpec& spec, const TaskRequirements& reqs, int max_null) {
  MappingTask t;
  t.id = spec.id;
  t.source = spec.source;
  t.delivery = spec.delivery;
  t.services = spec.services;
  t.demand = quantize_demand(reqs);
  t.max_null.assign(t.demand.hop_bw.size(), max_null);
  return t;
}

MappingSession::MappingSession(const ResourceGraph& graph, MappingTask task,
                               StrategyParams strategy, MappingWorld& world)
    : graph_(graph), task_(std::move(task)), strategy_(strategy), world_(world) {
  int widest = 0;
  for (int b : task_.max_null) widest = std::max(widest, b);
  route_cap_ = (task_.components() + 1) * (widest + 1);
}

OutgoingMsg MappingSession::start(double now) {
  OutgoingMsg out;
  out.to = task_.source;
  out.is_ack = false;
  out.delay = graph_.public_delay(task_.delivery, task_.source);
  out.map.task = task_.id;
  out.map.attempt = task_.attempt;
  out.map.sender = kPortal;
  out.map.spec_attached = true;
  out.map.via_public = true;
  out.map.map = initial_map(task_.source);
  ++map_messages_;
  if (trace_) trace_->map_sent(now, kPortal, task_.source, 0, 0);
  return out;
}

DiffusionState& MappingSession::state_at(NodeId node) {
  auto it = states_.find(node);
  sim_check(it != states_.end(), "missing diffusion state");
  return it->second;
}

bool MappingSession::strategy_pass(DiffusionState& st, NodeId at, const MapPath& cand) {
  if (cand.prefix == 0) return true;  // the cost table starts at prefix 1
  switch (strategy_.strategy) {
    case Strategy::Exhaustive:
    case Strategy::RandomNeighbor:
      return true;
    case Strategy::LeastCostMap: {
      CostMicro& cell = st.least_cost[static_cast<std::size_t>(cand.prefix)];
      if (cand.cost < cell) {
        cell = cand.cost;
        return true;
      }
      return false;
    }
    case Strategy::AnnealedLeastCostMap: {
      CostMicro& cell = st.least_cost[static_cast<std::size_t>(cand.prefix)];
      if (cand.cost < cell) {
        cell = cand.cost;
        return true;
      }
      double p = strategy_.anneal_p0 * std::exp(-strategy_.anneal_lambda * cand.prefix);
      return world_.node_rng(at).bernoulli(p);
    }
  }
  return true;
}

void MappingSession::send_map(NodeId from, NodeId to, bool via_public, EdgeId via_edge,
                              const MapPath& map, DiffusionState& st, double now,
                              std::vector<OutgoingMsg>& out) {
  OutgoingMsg msg;
  msg.to = to;
  msg.is_ack = false;
  msg.delay = via_public ? graph_.public_delay(from, to)
                         : graph_.edge(via_edge).delay;
  msg.map.task = task_.id;
  msg.map.attempt = task_.attempt;
  msg.map.sender = from;
  msg.map.via_public = via_public;
  msg.map.via_edge = via_edge;
  msg.map.map = map;
  auto [it, inserted] = st.knows.try_emplace(to, false);
  if (!it->second) {
    it->second = true;
    msg.map.spec_attached = true;
  }
  st.count += 1;
  ++map_messages_;
  if (trace_) trace_->map_sent(now, from, to, map.prefix, map.cost);
  out.push_back(std::move(msg));
}

void MappingSession::send_ack(NodeId from, NodeId to, bool final_ack, bool via_public,
                              EdgeId via_edge, double now, std::vector<OutgoingMsg>& out) {
  OutgoingMsg msg;
  msg.to = to;
  msg.is_ack = true;
  if (to == kPortal) {
    msg.delay = graph_.public_delay(from, task_.delivery);
  } else {
    msg.delay = via_public ? graph_.public_delay(from, to) : graph_.edge(via_edge).delay;
  }
  msg.ack.task = task_.id;
  msg.ack.attempt = task_.attempt;
  msg.ack.sender = from;
  msg.ack.final_ = final_ack;
  msg.ack.via_public = via_public;
  msg.ack.via_edge = via_edge;
  ++ack_messages_;
  if (trace_) trace_->ack_sent(now, from, to, final_ack);
  out.push_back(std::move(msg));
}

void MappingSession::handle_map(NodeId v, const MapMsg& msg, double now,
                                std::vector<OutgoingMsg>& out) {
  const int m = task_.components();
  auto it = states_.find(v);
  bool engaged_now = false;
  if (it == states_.end()) {
    DiffusionState st;
    st.pred = msg.sender;
    st.count = 0;
    st.least_cost.assign(static_cast<std::size_t>(m) + 1, kInfCost);
    it = states_.emplace(v, std::move(st)).first;
    engaged_now = true;
  } else {
    send_ack(v, msg.sender, false, msg.via_public, msg.via_edge, now, out);
  }
  DiffusionState& st = it->second;
  if (engaged_now) {
    st.pred_via_public = msg.via_public;
    st.pred_via_edge = msg.via_edge;
  }

  const int j = msg.map.prefix;
  const CpuMicro residual = world_.cpu_residual(v);
  const CpuMicro claimed = msg.map.claimed_cpu(v, task_.demand.cpu);
  const bool initial_at_source = (j == 0 && msg.map.steps() == 0);

  MapPath ext = msg.map;
  CpuMicro new_need = 0;
  for (int x = 0; j + x <= m; ++x) {
    if (x > 0) {
      const int comp = j + x;
      if (!graph_.node(v).hosts(task_.service_of(comp))) break;
      new_need += task_.demand.cpu[static_cast<std::size_t>(comp)];
      if (residual < new_need + claimed) break;
      ext.comps_at.back() += 1;
      ext.prefix += 1;
      ext.trailing_empty = 0;
    }

    if (v == task_.delivery && ext.prefix == m) {
      feasibles_.push_back({ext, next_seq_++});
    }

    if (!strategy_pass(st, v, ext)) continue;

    const int hop = ext.prefix;
    const BwBits need_bw = task_.demand.hop_bw[static_cast<std::size_t>(hop)];
    const int budget = task_.max_null[static_cast<std::size_t>(hop)];
    const bool may_forward = (x > 0) || (ext.trailing_empty <= budget - 1);
    const bool room = ext.steps() + 1 <= route_cap_;

    if (may_forward && room) {
      const std::vector<EdgeId>* edges = &graph_.incident(v);
      std::vector<EdgeId> subset;
      if (strategy_.strategy == Strategy::RandomNeighbor &&
          static_cast<int>(edges->size()) > strategy_.random_neighbors) {
        subset = *edges;
        RngStream& rng = world_.node_rng(v);
        for (int i = 0; i < strategy_.random_neighbors; ++i) {
          std::size_t pick = static_cast<std::size_t>(
              rng.uniform_int(i, static_cast<std::int64_t>(subset.size()) - 1));
          std::swap(subset[static_cast<std::size_t>(i)], subset[pick]);
        }
        subset.resize(static_cast<std::size_t>(strategy_.random_neighbors));
        std::sort(subset.begin(), subset.end());
        edges = &subset;
      }
      for (EdgeId e : *edges) {
        const DedicatedLink& link = graph_.edge(e);
        if (world_.bw_residual(e) < need_bw) continue;
        MapPath next = ext;
        next.route.push_back(link.other(v));
        next.comps_at.push_back(0);
        next.step_public.push_back(0);
        next.cost += to_cost(link.cost);
        next.trailing_empty = (x > 0) ? 0 : ext.trailing_empty + 1;
        send_map(v, link.other(v), false, e, next, st, now, out);
      }
    }

    // Opportunistic jump straight to hosts of the next component (or to the
    // delivery node once the chain is complete). Only from the start of a
    // segment: right after an assignment, or the untouched initial map.
    if ((x > 0 || initial_at_source) && room) {
      const std::vector<NodeId>* targets = nullptr;
      std::vector<NodeId> delivery_only;
      if (ext.prefix < m) {
        targets = &graph_.hosts_of(task_.service_of(ext.prefix + 1));
      } else {
        delivery_only.push_back(task_.delivery);
        targets = &delivery_only;
      }
      for (NodeId k : *targets) {
        if (k == v) continue;
        if (world_.uplink_residual(v, task_.id) < need_bw) continue;
        MapPath next = ext;
        next.route.push_back(k);
        next.comps_at.push_back(0);
        next.step_public.push_back(1);
        next.trailing_empty = 0;
        send_map(v, k, true, kNoEdge, next, st, now, out);
        world_.note_tentative_uplink(v, task_.id, need_bw);
      }
    }
  }

  if (engaged_now && st.count == 0) {
    NodeId pred = st.pred;
    bool via_pub = st.pred_via_public;
    EdgeId via_edge = st.pred_via_edge;
    states_.erase(it);
    send_ack(v, pred, true, via_pub, via_edge, now, out);
  }
}

void MappingSession::handle_ack(NodeId v, const AckMsg& msg, double now,
                                std::vector<OutgoingMsg>& out) {
  auto it = states_.find(v);
  if (it == states_.end()) {
    ++stray_acks_;
    return;
  }
  DiffusionState& st = it->second;
  sim_check(st.count > 0, "ack counter underflow");
  st.count -= 1;
  if (msg.final_) st.knows[msg.sender] = false;
  if (st.count == 0 && st.pred != kNoNode) {
    NodeId pred = st.pred;
    bool via_pub = st.pred_via_public;
    EdgeId via_edge = st.pred_via_edge;
    states_.erase(it);
    send_ack(v, pred, true, via_pub, via_edge, now, out);
  }
}

MapScore score_map(const MapPath& path, const MappingTask& task, const ResourceGraph& graph,
                   const std::vector<CpuMicro>& cpu_used) {
  MapScore score;
  score.dedicated_hops = path.dedicated_steps();
  score.public_hops = path.public_steps();

  // Per-node demand of this map, over the nodes hosting its components.
  std::vector<std::pair<NodeId, CpuMicro>> demand;
  int comp = 0;
  for (std::size_t i = 0; i < path.route.size(); ++i) {
    for (int k = 0; k < path.comps_at[i]; ++k) {
      ++comp;
      NodeId n = path.route[i];
      auto found = std::find_if(demand.begin(), demand.end(),
                                [n](const auto& p) { return p.first == n; });
      if (found == demand.end()) {
        demand.emplace_back(n, task.demand.cpu[static_cast<std::size_t>(comp)]);
      } else {
        found->second += task.demand.cpu[static_cast<std::size_t>(comp)];
      }
    }
  }
  if (demand.empty()) return score;
  double sum = 0.0;
  for (const auto& [node, need] : demand) {
    double cap = graph.node(node).cpu_capacity;
    double used = from_cpu(cpu_used.empty() ? 0 : cpu_used[static_cast<std::size_t>(node)]) +
                  from_cpu(need);
    sum += cap > 0 ? std::clamp(used / cap, 0.0, 1.0) : 1.0;
  }
  score.load_balance = sum / static_cast<double>(demand.size());
  return score;
}

std::vector<std::size_t> score_and_select(const std::vector<FeasibleMap>& feasibles,
                                          const MappingTask& task, const ResourceGraph& graph,
                                          const std::vector<CpuMicro>& cpu_used) {
  struct Ranked {
    std::size_t index;
    int band;
    MapScore score;
    std::uint32_t seq;
  };
  std::vector<Ranked> ranked;
  ranked.reserve(feasibles.size());
  for (std::size_t i = 0; i < feasibles.size(); ++i) {
    MapScore s = score_map(feasibles[i].path, task, graph, cpu_used);
    // Load-balance values within the same 0.1-wide band are treated as ties.
    int band = static_cast<int>(s.load_balance * 10.0);
    ranked.push_back({i, band, s, feasibles[i].seq});
  }
  std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
    return std::tuple(a.band, -a.score.dedicated_hops, a.score.public_hops, a.seq) <
           std::tuple(b.band, -b.score.dedicated_hops, b.score.public_hops, b.seq);
  });
  std::vector<std::size_t> order;
  order.reserve(ranked.size());
  for (const Ranked& r : ranked) order.push_back(r.index);
  return order;
}

namespace {

// Idle platform: full capacities, per-node lazily created RNG streams.
class FreeWorld : public MappingWorld {
 public:
  FreeWorld(const ResourceGraph& graph, std::uint64_t seed) : graph_(graph), seed_(seed) {}

  CpuMicro cpu_residual(NodeId node) const override {
    return to_cpu(graph_.node(node).cpu_capacity);
  }
  BwBits bw_residual(EdgeId edge) const override {
    return to_bw(graph_.edge(edge).bandwidth);
  }
  BwBits uplink_residual(NodeId node, TaskId) const override {
    return to_bw(graph_.node(node).uplink_bw);
  }
  RngStream& node_rng(NodeId node) override {
    auto it = rngs_.find(node);
    if (it == rngs_.end())
      it = rngs_.emplace(node, RngStream(seed_, "mapping", static_cast<std::uint64_t>(node))).first;
    return it->second;
  }

 private:
  const ResourceGraph& graph_;
  std::uint64_t seed_;
  std::map<NodeId, RngStream> rngs_;
};

}  // namespace

DiffusionResult run_diffusion(const ResourceGraph& graph, const MappingTask& task,
                              const StrategyParams& strategy, std::uint64_t seed,
                              MapTraceSink* trace) {
  FreeWorld world(graph, seed);
  MappingSession session(graph, task, strategy, world);
  session.set_trace(trace);

  struct Pending {
    double time;
    std::uint64_t seq;
    OutgoingMsg msg;
  };
  auto later = [](const Pending& a, const Pending& b) {
    return std::tie(a.time, a.seq) > std::tie(b.time, b.seq);
  };
  std::priority_queue<Pending, std::vector<Pending>, decltype(later)> queue(later);
  std::uint64_t seq = 0;

  OutgoingMsg first = session.start(0.0);
  queue.push({first.delay, seq++, std::move(first)});

  std::vector<OutgoingMsg> out;
  while (!queue.empty()) {
    Pending p = queue.top();
    queue.pop();
    double now = p.time;
    if (p.msg.to == kPortal) {
      sim_check(p.msg.is_ack && p.msg.ack.final_, "portal expects a final ack");
      session.finish();
      continue;
    }
    out.clear();
    if (p.msg.is_ack) {
      session.handle_ack(p.msg.to, p.msg.ack, now, out);
    } else {
      session.handle_map(p.msg.to, p.msg.map, now, out);
    }
    for (OutgoingMsg& o : out) queue.push({now + o.delay, seq++, std::move(o)});
  }

  DiffusionResult result;
  result.feasibles = session.feasibles();
  result.map_messages = session.map_messages();
  result.ack_messages = session.ack_messages();
  result.clean_termination = session.terminated() && session.states_empty();
  for (const FeasibleMap& f : result.feasibles) {
    if (!result.best_cost || f.path.cost < *result.best_cost) result.best_cost = f.path.cost;
  }
  return result;
}

}  // namespace streamsim
