#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace qoradapt {

// Tier indices. Tier 1 is the low-quality/low-energy tier, Tier 2 the
// high-quality one; QoR measures the Tier-2 fraction.
inline constexpr int kTier1 = 0;
inline constexpr int kTier2 = 1;
inline constexpr int kNumTiers = 2;

struct TimeGrid {
  double delta_hours = 1.0;       // interval length in hours
  int num_intervals = 0;          // I
  std::int64_t start_epoch_hour = 0;  // UTC hour index of interval 0
};

struct QualityTierPair {
  std::string tier1_name = "tier1";
  std::string tier2_name = "tier2";
};

struct MachineType {
  std::string name;
  std::array<double, kNumTiers> power_watts{};            // p_{m,q}
  std::array<double, kNumTiers> capacity_per_interval{};  // k_{m,q}, requests/interval
  double embodied_g_per_interval = 0.0;                   // C_m^emb
  // Optional per-interval power override; empty means the constant applies.
  std::array<std::vector<double>, kNumTiers> power_watts_series{};

  double power_at(int tier, int interval) const {
    const auto& series = power_watts_series[tier];
    if (interval >= 0 && interval < static_cast<int>(series.size())) return series[interval];
    return power_watts[tier];
  }
};

struct RequestTrace {
  std::string user_group;
  std::vector<double> values;  // r^i_u, requests per interval
};

struct CarbonTrace {
  std::vector<double> values;  // C^i, gCO2/kWh
};

struct QoRPolicy {
  double target = 0.5;   // QoR_target in [0,1]
  int validity_len = 1;  // gamma, in intervals
};

struct SolverBudgets {
  int tau = 24;                      // long-term period, intervals
  double long_time_limit_s = 30.0;
  double short_time_limit_s = 10.0;
  double gap_target = 0.001;         // stop once relative gap is below this
  // Deterministic mode replaces wall-clock limits with node counts.
  bool deterministic = false;
  std::int64_t long_node_limit = 256;
  std::int64_t short_node_limit = 64;
};

// Per-interval request-to-tier assignment, a^i_{u,q} >= 0.
struct Allocation {
  std::vector<std::vector<std::array<double, kNumTiers>>> values;  // [i][u][q]

  static Allocation zeros(int num_intervals, int num_users) {
    Allocation a;
    a.values.assign(num_intervals,
                    std::vector<std::array<double, kNumTiers>>(num_users, {0.0, 0.0}));
    return a;
  }
  int num_intervals() const { return static_cast<int>(values.size()); }
  int num_users() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }
  double tier_total(int i, int tier) const {
    double s = 0.0;
    for (const auto& row : values[i]) s += row[tier];
    return s;
  }
};

// Per-interval machine counts, d^i_{m,q} in Z>=0.
struct Deployment {
  std::vector<std::vector<std::array<std::int64_t, kNumTiers>>> values;  // [i][m][q]

  static Deployment zeros(int num_intervals, int num_machines) {
    Deployment d;
    d.values.assign(num_intervals,
                    std::vector<std::array<std::int64_t, kNumTiers>>(num_machines, {0, 0}));
    return d;
  }
  int num_intervals() const { return static_cast<int>(values.size()); }
};

struct Scenario {
  TimeGrid grid;
  QualityTierPair tiers;
  std::vector<MachineType> machines;
  std::vector<RequestTrace> requests;
  CarbonTrace carbon;
  QoRPolicy policy;
  SolverBudgets budgets;

  int num_users() const { return static_cast<int>(requests.size()); }
  int num_machines() const { return static_cast<int>(machines.size()); }
  double total_requests(int i) const {
    double s = 0.0;
    for (const auto& t : requests) s += t.values[i];
    return s;
  }
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Cost in gCO2 of running one machine of type m at tier q for one interval:
// delta * p(kW) * C + C_emb. This is the per-machine term of the emission
// model and the coefficient minimal deployments minimize.
inline double machine_interval_cost(const MachineType& m, int tier, double carbon_now,
                                    double delta_hours, int interval = -1) {
  return delta_hours * m.power_at(tier, interval) / 1000.0 * carbon_now +
         m.embodied_g_per_interval;
}

struct Violation {
  std::string location;
  std::string message;
};

inline std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;
  auto add = [&out](std::string loc, std::string msg) {
    out.push_back({std::move(loc), std::move(msg)});
  };

  if (!(s.grid.delta_hours > 0.0)) add("grid.delta_hours", "must be > 0");
  if (s.grid.num_intervals < 1) add("grid.num_intervals", "must be >= 1");

  if (s.tiers.tier1_name == s.tiers.tier2_name)
    add("tiers", "tier names must be distinct");

  if (s.machines.empty()) add("machines", "at least one machine type required");
  for (std::size_t m = 0; m < s.machines.size(); ++m) {
    const auto& mt = s.machines[m];
    const std::string loc = "machines[" + std::to_string(m) + "]";
    for (int q = 0; q < kNumTiers; ++q) {
      if (!(mt.capacity_per_interval[q] > 0.0))
        add(loc + ".capacity_per_interval", "must be > 0 for both tiers");
      if (!(mt.power_watts[q] > 0.0)) add(loc + ".power_watts", "must be > 0 for both tiers");
      if (!mt.power_watts_series[q].empty() &&
          static_cast<int>(mt.power_watts_series[q].size()) != s.grid.num_intervals)
        add(loc + ".power_watts_series", "override length must equal num_intervals");
    }
    if (mt.embodied_g_per_interval < 0.0) add(loc + ".embodied_g_per_interval", "must be >= 0");
  }

  if (s.requests.empty()) add("requests", "at least one user group required");
  for (std::size_t u = 0; u < s.requests.size(); ++u) {
    const auto& t = s.requests[u];
    const std::string loc = "requests[" + std::to_string(u) + "]";
    if (static_cast<int>(t.values.size()) != s.grid.num_intervals)
      add(loc, "length mismatch: trace has " + std::to_string(t.values.size()) +
                   " values, grid has " + std::to_string(s.grid.num_intervals));
    for (double v : t.values)
      if (!(v >= 0.0) || !std::isfinite(v)) {
        add(loc, "values must be finite and >= 0");
        break;
      }
  }

  if (static_cast<int>(s.carbon.values.size()) != s.grid.num_intervals)
    add("carbon", "length mismatch: trace has " + std::to_string(s.carbon.values.size()) +
                      " values, grid has " + std::to_string(s.grid.num_intervals));
  for (double v : s.carbon.values)
    if (!(v >= 0.0) || !std::isfinite(v)) {
      add("carbon", "values must be finite and >= 0");
      break;
    }

  if (!(s.policy.target >= 0.0 && s.policy.target <= 1.0))
    add("policy.target", "target out of [0,1]");
  if (s.policy.validity_len < 1) add("policy.validity_len", "must be >= 1");
  if (s.policy.validity_len > s.grid.num_intervals)
    add("policy.validity_len", "must be <= num_intervals");

  if (s.budgets.tau < 1) add("budgets.tau", "must be >= 1");
  if (!(s.budgets.long_time_limit_s > 0.0)) add("budgets.long_time_limit_s", "must be > 0");
  if (!(s.budgets.short_time_limit_s > 0.0)) add("budgets.short_time_limit_s", "must be > 0");
  if (!(s.budgets.gap_target >= 0.0 && s.budgets.gap_target < 1.0))
    add("budgets.gap_target", "must be in [0,1)");

  return out;
}

namespace detail {

// Exact minimal-cost integer cover of one tier's demand. Cost of machine m is
// cost[m] per unit, capacity cap[m]; returns counts. Exhaustive for <= 3
// machine types, greedy with one repair pass otherwise.
inline std::vector<std::int64_t> cover_tier(double total, const std::vector<double>& cap,
                                            const std::vector<double>& cost) {
  const int n = static_cast<int>(cap.size());
  std::vector<std::int64_t> best(n, 0);
  if (total <= 0.0) return best;
  if (n == 0) throw InfeasibleError("positive demand but no machine types");
  if (n == 1) {
    best[0] = static_cast<std::int64_t>(std::ceil(total / cap[0] - 1e-12));
    return best;
  }

  if (n <= 3) {
    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::int64_t> cur(n, 0);
    // Enumerate all but the last type; the last is forced to cover the rest.
    auto rec = [&](auto&& self, int idx, double remaining, double cur_cost) -> void {
      if (cur_cost >= best_cost) return;
      if (idx == n - 1) {
        std::int64_t need =
            remaining <= 0.0
                ? 0
                : static_cast<std::int64_t>(std::ceil(remaining / cap[idx] - 1e-12));
        double c = cur_cost + static_cast<double>(need) * cost[idx];
        if (c < best_cost) {
          best_cost = c;
          cur[idx] = need;
          best = cur;
        }
        return;
      }
      std::int64_t max_d =
          static_cast<std::int64_t>(std::ceil(std::max(remaining, 0.0) / cap[idx] - 1e-12));
      for (std::int64_t d = 0; d <= max_d; ++d) {
        cur[idx] = d;
        self(self, idx + 1, remaining - static_cast<double>(d) * cap[idx],
             cur_cost + static_cast<double>(d) * cost[idx]);
      }
      cur[idx] = 0;
    };
    rec(rec, 0, total, 0.0);
    return best;
  }

  // Greedy: fill with the best cost-per-request type, cover the remainder
  // with whichever single type does it cheapest, then try trading one bulk
  // machine away.
  int bulk = 0;
  for (int m = 1; m < n; ++m)
    if (cost[m] / cap[m] < cost[bulk] / cap[bulk]) bulk = m;
  auto finish = [&](std::int64_t nb) {
    std::vector<std::int64_t> d(n, 0);
    d[bulk] = nb;
    double rem = total - static_cast<double>(nb) * cap[bulk];
    if (rem > 0.0) {
      int pick = -1;
      double pick_cost = std::numeric_limits<double>::infinity();
      for (int m = 0; m < n; ++m) {
        double c = std::ceil(rem / cap[m] - 1e-12) * cost[m];
        if (c < pick_cost) {
          pick_cost = c;
          pick = m;
        }
      }
      d[pick] += static_cast<std::int64_t>(std::ceil(rem / cap[pick] - 1e-12));
    }
    return d;
  };
  auto total_cost = [&](const std::vector<std::int64_t>& d) {
    double c = 0.0;
    for (int m = 0; m < n; ++m) c += static_cast<double>(d[m]) * cost[m];
    return c;
  };
  std::int64_t nb = static_cast<std::int64_t>(std::floor(total / cap[bulk] + 1e-12));
  std::vector<std::int64_t> cand = finish(nb);
  for (std::int64_t alt = std::max<std::int64_t>(0, nb - 1); alt <= nb + 1; ++alt) {
    auto c = finish(alt);
    if (total_cost(c) < total_cost(cand)) cand = c;
  }
  return cand;
}

}  // namespace detail

// Least-emission integer deployment row covering per-tier totals at the given
// carbon intensity. With a single machine type this is the per-tier ceiling.
inline std::vector<std::array<std::int64_t, kNumTiers>> minimal_deployment(
    const std::array<double, kNumTiers>& tier_totals, const std::vector<MachineType>& machines,
    double carbon_now, double delta_hours, int interval = -1) {
  for (int q = 0; q < kNumTiers; ++q)
    if (tier_totals[q] < 0.0) throw std::invalid_argument("minimal_deployment: negative demand");
  if (machines.empty()) {
    if (tier_totals[kTier1] > 0.0 || tier_totals[kTier2] > 0.0)
      throw InfeasibleError("minimal_deployment: positive demand but no machine types");
    return {};
  }

  std::vector<std::array<std::int64_t, kNumTiers>> out(machines.size(), {0, 0});
  for (int q = 0; q < kNumTiers; ++q) {
    std::vector<double> cap, cost;
    cap.reserve(machines.size());
    cost.reserve(machines.size());
    for (const auto& m : machines) {
      cap.push_back(m.capacity_per_interval[q]);
      cost.push_back(machine_interval_cost(m, q, carbon_now, delta_hours, interval));
    }
    auto d = detail::cover_tier(tier_totals[q], cap, cost);
    for (std::size_t m = 0; m < machines.size(); ++m) out[m][q] = d[m];
  }
  return out;
}

struct BaselineResult {
  Deployment deployment;
  Allocation allocation;
  double total_g = 0.0;
};

// Non-carbon-aware reference: every interval serves exactly the target
// fraction at Tier 2 and deploys minimally for that split.
inline BaselineResult baseline_run(const Scenario& s) {
  const int I = s.grid.num_intervals;
  const int U = s.num_users();
  BaselineResult res;
  res.allocation = Allocation::zeros(I, U);
  res.deployment = Deployment::zeros(I, s.num_machines());

  for (int i = 0; i < I; ++i) {
    std::array<double, kNumTiers> totals = {0.0, 0.0};
    for (int u = 0; u < U; ++u) {
      double r = s.requests[u].values[i];
      double a2 = s.policy.target * r;
      res.allocation.values[i][u][kTier2] = a2;
      res.allocation.values[i][u][kTier1] = r - a2;
      totals[kTier1] += r - a2;
      totals[kTier2] += a2;
    }
    auto row = minimal_deployment(totals, s.machines, s.carbon.values[i], s.grid.delta_hours, i);
    res.deployment.values[i] = row;
    for (std::size_t m = 0; m < s.machines.size(); ++m)
      for (int q = 0; q < kNumTiers; ++q)
        res.total_g += static_cast<double>(row[m][q]) *
                       machine_interval_cost(s.machines[m], q, s.carbon.values[i],
                                             s.grid.delta_hours, i);
  }
  return res;
}

}  // namespace qoradapt
