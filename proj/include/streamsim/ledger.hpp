#pragma once

#include <map>
#include <utility>
#include <vector>

#include "streamsim/graph.hpp"

namespace streamsim {

// Slot key for link commitments: one main slot per task hop, plus a staging
// slot used by in-flight multi-hop probes so a failed probe can be rolled
// back without touching the hop's live assignment.
enum class HopSlot : int { Main = 0, Staging = 1 };

// Integer resource ledgers with try-lock semantics. Commit and release use
// the same integer amounts, so a full release restores residuals exactly.
class ResourceLedger {
 public:
  explicit ResourceLedger(const ResourceGraph& graph);

  CpuMicro cpu_capacity(NodeId n) const { return cpu_cap_[static_cast<std::size_t>(n)]; }
  BwBits bw_capacity(EdgeId e) const { return bw_cap_[static_cast<std::size_t>(e)]; }
  BwBits uplink_capacity(NodeId n) const { return up_cap_[static_cast<std::size_t>(n)]; }

  CpuMicro cpu_residual(NodeId n) const {
    return cpu_cap_[static_cast<std::size_t>(n)] - cpu_used_[static_cast<std::size_t>(n)];
  }
  BwBits bw_residual(EdgeId e) const {
    return bw_cap_[static_cast<std::size_t>(e)] - bw_used_[static_cast<std::size_t>(e)];
  }
  BwBits uplink_residual(NodeId n) const {
    return up_cap_[static_cast<std::size_t>(n)] - up_used_[static_cast<std::size_t>(n)];
  }
  // Residual seen by a mapping diffusion: other tasks' tentative holds count
  // as taken, the asking task's own do not.
  BwBits uplink_residual_for_mapping(NodeId n, TaskId task) const;

  bool try_commit_cpu(TaskId task, NodeId n, CpuMicro amount);
  bool try_commit_bw(TaskId task, int hop, HopSlot slot, EdgeId e, BwBits amount);
  bool try_commit_uplink(TaskId task, int hop, HopSlot slot, NodeId n, BwBits amount);
  void note_downlink(TaskId task, int hop, HopSlot slot, NodeId n, BwBits amount);

  void release_hop(TaskId task, int hop, HopSlot slot);
  // Moves a confirmed probe's staging commitments into the main slot.
  void promote_staging(TaskId task, int hop);
  void release_task(TaskId task);

  void hold_tentative_uplink(NodeId n, TaskId task, BwBits amount);  // keeps the max per node
  void release_tentative(TaskId task);

  CpuMicro total_cpu_used() const { return cpu_used_total_; }
  CpuMicro total_cpu_capacity() const { return cpu_cap_total_; }
  BwBits total_bw_capacity() const { return bw_cap_total_; }

  // True when nothing is committed or held anywhere.
  bool all_free() const;

 private:
  struct HopCommit {
    std::vector<std::pair<EdgeId, BwBits>> edges;
    std::vector<std::pair<NodeId, BwBits>> uplinks;
    std::vector<std::pair<NodeId, BwBits>> downlinks;
  };
  using HopKey = std::tuple<TaskId, int, int>;

  std::vector<CpuMicro> cpu_cap_, cpu_used_;
  std::vector<BwBits> bw_cap_, bw_used_;
  std::vector<BwBits> up_cap_, up_used_;
  std::vector<BwBits> down_noted_;
  std::vector<BwBits> up_tentative_;
  CpuMicro cpu_cap_total_ = 0, cpu_used_total_ = 0;
  BwBits bw_cap_total_ = 0;

  std::map<TaskId, std::vector<std::pair<NodeId, CpuMicro>>> task_cpu_;
  std::map<HopKey, HopCommit> hop_commits_;
  std::map<TaskId, std::vector<std::pair<NodeId, BwBits>>> tentative_;
};

}  // namespace streamsim
