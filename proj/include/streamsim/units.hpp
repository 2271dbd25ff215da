#pragma once

#include <cstdint>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace streamsim {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;
using ServiceId = std::int32_t;
using TaskId = std::int64_t;

inline constexpr NodeId kNoNode = -1;
inline constexpr EdgeId kNoEdge = -1;

// Ledger quantities are integers so that commit/release round-trips are
// exact: bandwidth in bits/s, CPU in micro-units, money in micro-currency,
// path cost in micro-cost.
using BwBits = std::int64_t;
using CpuMicro = std::int64_t;
using MoneyMicro = std::int64_t;
using CostMicro = std::int64_t;

inline constexpr double kMega = 1e6;
inline constexpr CostMicro kCostScale = 1'000'000;
inline constexpr double kCpuScale = 1e6;
inline constexpr double kMoneyScale = 1e6;

inline BwBits to_bw(double bits_per_s) { return static_cast<BwBits>(std::llround(bits_per_s)); }
inline CpuMicro to_cpu(double units) { return static_cast<CpuMicro>(std::llround(units * kCpuScale)); }
inline MoneyMicro to_money(double currency) { return static_cast<MoneyMicro>(std::llround(currency * kMoneyScale)); }
inline CostMicro to_cost(double cost) { return static_cast<CostMicro>(std::llround(cost * kCostScale)); }
inline double from_cpu(CpuMicro c) { return static_cast<double>(c) / kCpuScale; }
inline double from_money(MoneyMicro m) { return static_cast<double>(m) / kMoneyScale; }
inline double from_cost(CostMicro c) { return static_cast<double>(c) / kCostScale; }

inline constexpr CostMicro kInfCost = std::numeric_limits<CostMicro>::max() / 4;

// Configuration problems (bad keys, out-of-range values, inconsistent
// scenario parameters). The CLI maps these to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant. Always checked, also in release builds;
// the CLI maps these to exit code 3.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void sim_check(bool cond, const char* msg) {
  if (!cond) throw InvariantError(msg);
}

}  // namespace streamsim
