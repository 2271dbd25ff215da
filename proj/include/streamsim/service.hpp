#pragma once

#include <vector>

#include "streamsim/units.hpp"

namespace streamsim {

// A processing step type offered by servers. Output rate and CPU demand are
// both proportional to the input rate.
struct ServiceType {
  ServiceId id = 0;
  double cpu_usage_factor = 1.0;          // CPU units per unit input rate
  double bandwidth_shrinkage_factor = 1.0;  // output rate / input rate, > 0
};

class ServiceCatalog {
 public:
  ServiceCatalog() = default;
  explicit ServiceCatalog(std::vector<ServiceType> services) : services_(std::move(services)) {
    for (std::size_t i = 0; i < services_.size(); ++i) {
      sim_check(services_[i].id == static_cast<ServiceId>(i), "catalog ids must be dense 0..n-1");
      sim_check(services_[i].cpu_usage_factor > 0, "cpu_usage_factor must be positive");
      sim_check(services_[i].bandwidth_shrinkage_factor > 0, "shrinkage factor must be positive");
    }
  }

  int size() const { return static_cast<int>(services_.size()); }
  bool contains(ServiceId s) const { return s >= 0 && s < size(); }
  const ServiceType& at(ServiceId s) const {
    if (!contains(s)) throw ConfigError("unknown service id " + std::to_string(s));
    return services_[static_cast<std::size_t>(s)];
  }
  const std::vector<ServiceType>& all() const { return services_; }

 private:
  std::vector<ServiceType> services_;
};

}  // namespace streamsim
