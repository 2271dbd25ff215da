#pragma once

#include <vector>

#include "streamsim/service.hpp"
#include "streamsim/units.hpp"

namespace streamsim {

// A stream processing request: ordered service chain from a source node to a
// delivery node, with the contracted delivery rate and pricing.
struct TaskSpec {
  TaskId id = 0;
  NodeId source = kNoNode;
  NodeId delivery = kNoNode;
  std::vector<ServiceId> services;  // ordered chain, non-empty
  double delivery_rate = 0.0;       // bits/s, contracted at the delivery node
  double window = 0.0;              // seconds, SLA monitoring window
  double price_per_byte = 0.0;      // currency per byte delivered
  double volume = 0.0;              // total bytes to deliver
  double arrival_time = 0.0;        // simulated seconds

  int component_count() const { return static_cast<int>(services.size()); }
};

// Per-component rates and CPU demands implied by a task spec. Components are
// indexed 1..m to match the chain position; hop h carries the output of
// component h (hop 0 carries raw source data, hop m feeds the delivery node).
struct TaskRequirements {
  std::vector<double> input_rate;  // [m+1], entry 0 unused
  std::vector<double> cpu_req;     // [m+1], entry 0 unused
  std::vector<double> hop_bw;      // [m+1], hop 0..m

  int components() const { return static_cast<int>(cpu_req.size()) - 1; }
  int hops() const { return static_cast<int>(hop_bw.size()); }
};

// Integer view of the requirements used by the protocol and the ledgers.
struct ResourceDemand {
  std::vector<CpuMicro> cpu;  // [m+1], entry 0 unused
  std::vector<BwBits> hop_bw; // [m+1]
};

// Revenue apportioned over the service components, plus the per-hop budget of
// forwarding hops it affords.
struct RevenueSplit {
  std::vector<MoneyMicro> per_component_revenue;  // [m+1] currency/byte, entry 0 unused
  MoneyMicro forwarding_price = 0;                // currency/byte for pure forwarding
  std::vector<int> max_null;                      // [m+1] per hop 0..m
};

// Backward rate propagation from the contracted delivery rate.
TaskRequirements derive_requirements(const TaskSpec& task, const ServiceCatalog& catalog);

ResourceDemand quantize_demand(const TaskRequirements& reqs);

// Splits the delivered price per byte across components in proportion to
// their CPU work (exact integer conservation), and derives each hop's empty
// forwarding-hop budget from the upstream component's share.
RevenueSplit apportion_revenue(const TaskSpec& task, const TaskRequirements& reqs,
                               double forwarding_price);

}  // namespace streamsim
