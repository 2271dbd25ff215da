#include "streamsim/task.hpp"

#include <algorithm>
#include <numeric>

namespace streamsim {

TaskRequirements derive_requirements(const TaskSpec& task, const ServiceCatalog& catalog) {
  const int m = task.component_count();
  if (m == 0) throw ConfigError("task " + std::to_string(task.id) + " has no services");
  if (task.delivery_rate <= 0) throw ConfigError("delivery_rate must be positive");

  TaskRequirements reqs;
  reqs.input_rate.assign(static_cast<std::size_t>(m) + 1, 0.0);
  reqs.cpu_req.assign(static_cast<std::size_t>(m) + 1, 0.0);
  reqs.hop_bw.assign(static_cast<std::size_t>(m) + 1, 0.0);

  // input_rate(m) = B / shrink(m); input_rate(i) = input_rate(i+1) / shrink(i)
  double rate = task.delivery_rate;
  for (int i = m; i >= 1; --i) {
    const ServiceType& svc = catalog.at(task.services[static_cast<std::size_t>(i - 1)]);
    rate /= svc.bandwidth_shrinkage_factor;
    reqs.input_rate[static_cast<std::size_t>(i)] = rate;
    reqs.cpu_req[static_cast<std::size_t>(i)] = svc.cpu_usage_factor * rate;
  }
  // hop h carries component (h+1)'s input for h < m, the delivery rate for h = m
  for (int h = 0; h < m; ++h) reqs.hop_bw[static_cast<std::size_t>(h)] = reqs.input_rate[static_cast<std::size_t>(h + 1)];
  reqs.hop_bw[static_cast<std::size_t>(m)] = task.delivery_rate;
  return reqs;
}

ResourceDemand quantize_demand(const TaskRequirements& reqs) {
  ResourceDemand d;
  d.cpu.reserve(reqs.cpu_req.size());
  d.hop_bw.reserve(reqs.hop_bw.size());
  for (double c : reqs.cpu_req) d.cpu.push_back(to_cpu(c));
  for (double b : reqs.hop_bw) d.hop_bw.push_back(to_bw(b));
  return d;
}

RevenueSplit apportion_revenue(const TaskSpec& task, const TaskRequirements& reqs,
                               double forwarding_price) {
  if (forwarding_price <= 0) throw ConfigError("forwarding_price must be positive");
  const int m = reqs.components();

  const MoneyMicro price = to_money(task.price_per_byte);
  const double cpu_total =
      std::accumulate(reqs.cpu_req.begin() + 1, reqs.cpu_req.end(), 0.0);

  RevenueSplit split;
  split.forwarding_price = to_money(forwarding_price);
  split.per_component_revenue.assign(static_cast<std::size_t>(m) + 1, 0);

  // Proportional shares, rounded down; the remainder goes to the largest
  // fractional parts so the shares sum to the price exactly.
  std::vector<double> exact(static_cast<std::size_t>(m) + 1, 0.0);
  MoneyMicro assigned = 0;
  for (int i = 1; i <= m; ++i) {
    exact[static_cast<std::size_t>(i)] =
        static_cast<double>(price) * (reqs.cpu_req[static_cast<std::size_t>(i)] / cpu_total);
    MoneyMicro fl = static_cast<MoneyMicro>(std::floor(exact[static_cast<std::size_t>(i)]));
    split.per_component_revenue[static_cast<std::size_t>(i)] = fl;
    assigned += fl;
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    double fa = exact[static_cast<std::size_t>(a)] - std::floor(exact[static_cast<std::size_t>(a)]);
    double fb = exact[static_cast<std::size_t>(b)] - std::floor(exact[static_cast<std::size_t>(b)]);
    return fa > fb;
  });
  const MoneyMicro remainder = price - assigned;
  for (MoneyMicro i = 0; i < remainder; ++i) {
    split.per_component_revenue[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] += 1;
  }

  // Hop h is paid out of the component producing its data; hop 0 carries raw
  // source data and draws on the first component's share.
  split.max_null.assign(static_cast<std::size_t>(m) + 1, 0);
  for (int h = 0; h <= m; ++h) {
    int comp = std::max(1, h);
    MoneyMicro budget = split.per_component_revenue[static_cast<std::size_t>(comp)];
    split.max_null[static_cast<std::size_t>(h)] =
        static_cast<int>(std::max<MoneyMicro>(0, budget / split.forwarding_price));
  }
  return split;
}

}  // namespace streamsim
