#include "ensemble.hpp"

#include <cmath>
#include <random>

#include "parallel.hpp"

namespace qlink {

std::vector<double> sample_detunings(int n_links, double delta, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.5 * delta, 0.5 * delta);
  std::vector<double> d(n_links);
  for (auto& x : d) x = delta > 0.0 ? u(rng) : 0.0;
  return d;
}

DisorderResult run_disorder_sweep(const SweepSpec& protocol, const DisorderSpec& disorder) {
  if (disorder.delta_eps < 0.0) fail(ErrorCode::invalid_argument, "disorder width must be >= 0");
  if (disorder.n_realizations < 1) fail(ErrorCode::invalid_argument, "need at least one realization");
  const int n = disorder.n_realizations;
  const int links = protocol.basis->lattice->n_links();
  std::vector<std::vector<double>> M(n);
  std::vector<double> t, jv;

  // the clean run fixes the grid
  {
    SweepSpec s = protocol;
    s.deps.clear();
    auto r = adiabatic_sweep(s);
    t = r.t;
    jv = r.J_over_V;
  }
  parallel_for(n, [&](int k) {
    SweepSpec s = protocol;
    s.deps = sample_detunings(links, disorder.delta_eps, disorder.base_seed + static_cast<std::uint64_t>(k));
    s.step.richardson = false;
    M[k] = adiabatic_sweep(s).M;
  });

  DisorderResult out;
  out.t = t;
  out.J_over_V = jv;
  out.n = n;
  for (std::size_t i = 0; i < t.size(); ++i) {
    double mean = 0.0;
    for (int k = 0; k < n; ++k) mean += M[k][i];
    mean /= n;
    double var = 0.0;
    for (int k = 0; k < n; ++k) var += (M[k][i] - mean) * (M[k][i] - mean);
    out.mean_M.push_back(mean);
    out.std_M.push_back(n > 1 ? std::sqrt(var / (n - 1)) : 0.0);
  }
  return out;
}

}  // namespace qlink
