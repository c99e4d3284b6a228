#pragma once

#include <cstdint>
#include <vector>

#include "dynamics.hpp"

namespace qlink {

struct DisorderSpec {
  double delta_eps = 15.0;  // full width, MHz
  int n_realizations = 1000;
  std::uint64_t base_seed = 1;
};

struct DisorderResult {
  std::vector<double> t;
  std::vector<double> J_over_V;
  std::vector<double> mean_M;
  std::vector<double> std_M;
  int n = 0;
};

// Uniform on [-delta/2, delta/2] per link, from a stream seeded with `seed`.
std::vector<double> sample_detunings(int n_links, double delta, std::uint64_t seed);

// Realization k uses seed base_seed + k; the protocol's own detunings are replaced.
DisorderResult run_disorder_sweep(const SweepSpec& protocol, const DisorderSpec& disorder);

}  // namespace qlink
