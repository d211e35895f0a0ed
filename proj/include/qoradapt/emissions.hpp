#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qoradapt/scenario.hpp"

namespace qoradapt {

struct EmissionRecord {
  double operational_g = 0.0;
  double embodied_g = 0.0;
  double total_g() const { return operational_g + embodied_g; }
};

// E^i = sum_m sum_q d^i_{m,q} * (delta * p_{m,q}(kW) * C^i + C_m^emb).
inline EmissionRecord interval_emissions(
    const std::vector<std::array<std::int64_t, kNumTiers>>& deploy_row,
    const std::vector<MachineType>& machines, double carbon_now, double delta_hours,
    int interval = -1) {
  if (carbon_now < 0.0) throw std::invalid_argument("interval_emissions: negative carbon");
  if (deploy_row.size() != machines.size())
    throw std::out_of_range("interval_emissions: machine count mismatch");
  EmissionRecord rec;
  for (std::size_t m = 0; m < machines.size(); ++m) {
    for (int q = 0; q < kNumTiers; ++q) {
      std::int64_t d = deploy_row[m][q];
      if (d < 0) throw std::invalid_argument("interval_emissions: negative deployment");
      double n = static_cast<double>(d);
      rec.operational_g +=
          n * delta_hours * machines[m].power_at(q, interval) / 1000.0 * carbon_now;
      rec.embodied_g += n * machines[m].embodied_g_per_interval;
    }
  }
  return rec;
}

inline std::pair<double, std::vector<EmissionRecord>> total_emissions(const Deployment& deploy,
                                                                      const Scenario& s) {
  if (deploy.num_intervals() != s.grid.num_intervals)
    throw std::out_of_range("total_emissions: deployment length != num_intervals");
  std::vector<EmissionRecord> records;
  records.reserve(deploy.values.size());
  double total = 0.0;
  for (int i = 0; i < deploy.num_intervals(); ++i) {
    records.push_back(interval_emissions(deploy.values[i], s.machines, s.carbon.values[i],
                                         s.grid.delta_hours, i));
    total += records.back().total_g();
  }
  return {total, std::move(records)};
}

// Relative saving of a candidate against a baseline, in percent.
inline double savings_pct(double candidate_g, double baseline_g) {
  if (!(baseline_g > 0.0)) throw std::domain_error("savings_pct: baseline must be > 0");
  return 100.0 * (baseline_g - candidate_g) / baseline_g;
}

}  // namespace qoradapt
