#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "streamsim/graph.hpp"
#include "streamsim/rng.hpp"
#include "streamsim/task.hpp"

namespace streamsim {

// Sentinel sender/receiver for the session that initiates a diffusion.
inline constexpr NodeId kPortal = -2;

enum class Strategy { Exhaustive, LeastCostMap, AnnealedLeastCostMap, RandomNeighbor };

struct StrategyParams {
  Strategy strategy = Strategy::LeastCostMap;
  double anneal_p0 = 0.5;
  double anneal_lambda = 0.5;
  int random_neighbors = 1;
};

// A partial task-to-resource mapping under construction. route holds every
// node visited in order; comps_at[i] components are assigned at route[i]
// (consecutive components on one node share the entry). step i connects
// route[i] to route[i+1] and is either a dedicated edge or a public jump.
struct MapPath {
  std::vector<NodeId> route;
  std::vector<std::uint8_t> comps_at;
  std::vector<std::uint8_t> step_public;
  int prefix = 0;          // components assigned so far
  int trailing_empty = 0;  // consecutive forwarding-only sends since the last assignment
  CostMicro cost = 0;      // accumulated dedicated-link cost

  int steps() const { return static_cast<int>(step_public.size()); }
  NodeId at() const { return route.back(); }

  int dedicated_steps() const {
    int n = 0;
    for (std::uint8_t p : step_public) n += p ? 0 : 1;
    return n;
  }
  int public_steps() const {
    int n = 0;
    for (std::uint8_t p : step_public) n += p ? 1 : 0;
    return n;
  }

  // CPU already claimed on `node` by components of this map.
  CpuMicro claimed_cpu(NodeId node, const std::vector<CpuMicro>& comp_cpu) const;

  // node of each assigned component, 1-based; [0] unused.
  std::vector<NodeId> assignment() const;

  // Canonical identity: assignment vector plus per-hop path node lists.
  std::vector<std::int32_t> canonical_key() const;
};

MapPath initial_map(NodeId source);

struct FeasibleMap {
  MapPath path;
  std::uint32_t seq = 0;  // discovery order at the delivery node
};

struct MapScore {
  double load_balance = 0.0;
  int dedicated_hops = 0;
  int public_hops = 0;
};

// Shared per-diffusion context: the task chain and its resource demands.
struct MappingTask {
  TaskId id = 0;
  int attempt = 0;
  NodeId source = kNoNode;
  NodeId delivery = kNoNode;
  std::vector<ServiceId> services;  // [m], 0-based component list
  ResourceDemand demand;            // cpu [1..m], hop_bw [0..m]
  std::vector<int> max_null;        // per hop [0..m]

  int components() const { return static_cast<int>(services.size()); }
  ServiceId service_of(int comp) const { return services[static_cast<std::size_t>(comp - 1)]; }
};

// Per-(node, task) diffusing-computation state.
struct DiffusionState {
  NodeId pred = kNoNode;  // kPortal for the root
  bool pred_via_public = false;
  EdgeId pred_via_edge = kNoEdge;
  int count = 0;          // outstanding acks
  std::map<NodeId, bool> knows;
  std::vector<CostMicro> least_cost;  // [m+1], prefix-indexed; [0] unused
};

struct MapMsg {
  TaskId task = 0;
  int attempt = 0;
  NodeId sender = kNoNode;
  bool spec_attached = false;
  bool via_public = false;
  EdgeId via_edge = kNoEdge;
  MapPath map;
};

struct AckMsg {
  TaskId task = 0;
  int attempt = 0;
  NodeId sender = kNoNode;
  bool final_ = false;
  bool via_public = false;
  EdgeId via_edge = kNoEdge;
};

struct OutgoingMsg {
  NodeId to = kNoNode;
  bool is_ack = false;
  double delay = 0.0;
  MapMsg map;
  AckMsg ack;
};

// Residual-resource and RNG view the protocol runs against. The benchmark
// driver exposes a free platform; the simulation engine nets out committed
// and tentatively held resources.
class MappingWorld {
 public:
  virtual ~MappingWorld() = default;
  virtual CpuMicro cpu_residual(NodeId node) const = 0;
  virtual BwBits bw_residual(EdgeId edge) const = 0;
  virtual BwBits uplink_residual(NodeId node, TaskId task) const = 0;
  virtual void note_tentative_uplink(NodeId, TaskId, BwBits) {}
  virtual RngStream& node_rng(NodeId node) = 0;
};

class MapTraceSink {
 public:
  virtual ~MapTraceSink() = default;
  virtual void map_sent(double t, NodeId from, NodeId to, int prefix, CostMicro cost) = 0;
  virtual void ack_sent(double t, NodeId from, NodeId to, bool final_ack) = 0;
};

// Protocol state for one diffusion across all nodes, plus the feasible list
// accumulating at the delivery node. The transport (benchmark driver or the
// event engine) delivers OutgoingMsg entries it gets back from the handlers.
class MappingSession {
 public:
  MappingSession(const ResourceGraph& graph, MappingTask task, StrategyParams strategy,
                 MappingWorld& world);

  // Kick off: the session (acting for the delivery node) sends the initial
  // map to the source.
  OutgoingMsg start(double now);

  void handle_map(NodeId at, const MapMsg& msg, double now, std::vector<OutgoingMsg>& out);
  void handle_ack(NodeId at, const AckMsg& msg, double now, std::vector<OutgoingMsg>& out);

  // An ack addressed to kPortal ends the diffusion.
  void finish() { terminated_ = true; }
  bool terminated() const { return terminated_; }

  const MappingTask& task() const { return task_; }
  const std::vector<FeasibleMap>& feasibles() const { return feasibles_; }
  std::int64_t map_messages() const { return map_messages_; }
  std::int64_t ack_messages() const { return ack_messages_; }
  std::int64_t stray_acks() const { return stray_acks_; }
  bool states_empty() const { return states_.empty(); }
  void set_trace(MapTraceSink* sink) { trace_ = sink; }

 private:
  DiffusionState& state_at(NodeId node);
  void send_map(NodeId from, NodeId to, bool via_public, EdgeId via_edge, const MapPath& map,
                DiffusionState& st, double now, std::vector<OutgoingMsg>& out);
  void send_ack(NodeId from, NodeId to, bool final_ack, bool via_public, EdgeId via_edge,
                double now, std::vector<OutgoingMsg>& out);
  bool strategy_pass(DiffusionState& st, NodeId at, const MapPath& candidate);

  const ResourceGraph& graph_;
  MappingTask task_;
  StrategyParams strategy_;
  MappingWorld& world_;
  MapTraceSink* trace_ = nullptr;
  std::map<NodeId, DiffusionState> states_;
  std::vector<FeasibleMap> feasibles_;
  std::uint32_t next_seq_ = 0;
  std::int64_t map_messages_ = 0;
  std::int64_t ack_messages_ = 0;
  std::int64_t stray_acks_ = 0;
  int route_cap_ = 0;
  bool terminated_ = false;
};

// Ranks feasible maps: quantized load-balance band first, then more dedicated
// hops, then fewer public hops, then discovery order.
MapScore score_map(const MapPath& path, const MappingTask& task, const ResourceGraph& graph,
                   const std::vector<CpuMicro>& cpu_used);
std::vector<std::size_t> score_and_select(const std::vector<FeasibleMap>& feasibles,
                                          const MappingTask& task, const ResourceGraph& graph,
                                          const std::vector<CpuMicro>& cpu_used);

// Deterministic single-diffusion run over an otherwise idle platform; used by
// the heuristic benchmark, the oracle cross-checks, and unit tests.
struct DiffusionResult {
  std::vector<FeasibleMap> feasibles;
  std::int64_t map_messages = 0;
  std::int64_t ack_messages = 0;
  std::optional<CostMicro> best_cost;
  bool clean_termination = false;
};

DiffusionResult run_diffusion(const ResourceGraph& graph, const MappingTask& task,
                              const StrategyParams& strategy, std::uint64_t seed,
                              MapTraceSink* trace = nullptr);

MappingTask make_mapping_task(const TaskSpec& spec, const TaskRequirements& reqs, int max_null);

}  // namespace streamsim
