#include "circuit.hpp"

#include <cmath>
#include <numbers>

namespace qlink {

TransmonResult derive_transmon(const TransmonSpec& spec) {
  if (!(spec.E_J > 0.0) || !(spec.E_C > 0.0))
    fail(ErrorCode::invalid_argument, "transmon energies must be positive");
  TransmonResult r;
  r.U = spec.E_C;
  r.epsilon = std::sqrt(8.0 * spec.E_C * spec.E_J) - r.U;
  r.transmon_regime = spec.E_J / spec.E_C >= 20.0;
  return r;
}

CouplingResult derive_coupling(double epsilon, double U, const CouplerSpec& c) {
  if (c.C_ratio < 0.0 || c.C_ratio >= 1.0) fail(ErrorCode::invalid_argument, "C_ratio outside [0, 1)");
  if (c.E_JQ_ratio < 0.0) fail(ErrorCode::invalid_argument, "negative coupler junction energy");
  double eff = c.E_JQ_ratio * std::cos(std::numbers::pi * c.flux);
  CouplingResult r;
  r.omega_like = 2.0 * U * eff;
  r.mu = 0.5 * epsilon * (eff - c.C_ratio) - r.omega_like;
  return r;
}

ModelParams derive_effective(ModelParams mp) {
  if (!(mp.Omega > 0.0)) fail(ErrorCode::invalid_argument, "effective couplings need Omega > 0");
  mp.J = 4.0 * mp.mu_sq * mp.mu_sq / mp.Omega;
  mp.V = mp.Vprime - mp.J;
  mp.perturbative = std::abs(mp.mu_sq / mp.Omega) <= 0.5;
  return mp;
}

ModelParams compile_circuit(const CircuitSet& set, double flux) {
  CouplerSpec v = set.vertex;
  v.kind = CouplerKind::vertex;
  v.flux = 0.0;
  CouplerSpec p = set.plaquette;
  p.kind = CouplerKind::plaquette;
  p.flux = flux;
  auto cv = derive_coupling(set.epsilon, set.U, v);
  auto cp = derive_coupling(set.epsilon, set.U, p);
  ModelParams mp;
  mp.epsilon = set.epsilon;
  mp.U = set.U;
  mp.Omega = cv.omega_like;
  mp.mu_plus = cv.mu;
  mp.Omega_prime = cp.omega_like;
  mp.mu_sq = cp.mu;
  mp.Vprime = mp.Omega - mp.Omega_prime;
  return derive_effective(mp);
}

std::vector<TuningRow> tuning_curve(const CircuitSet& set, const std::vector<double>& flux_grid) {
  std::vector<TuningRow> out;
  out.reserve(flux_grid.size());
  for (double f : flux_grid) {
    if (f < 0.0 || f > 0.5) fail(ErrorCode::invalid_argument, "flux grid must lie in [0, 0.5]");
    auto mp = compile_circuit(set, f);
    TuningRow r;
    r.flux = f;
    r.Omega = mp.Omega;
    r.mu_plus = mp.mu_plus;
    r.J = mp.J;
    r.V = mp.V;
    r.mu_over_Omega = mp.mu_sq / mp.Omega;
    r.J_over_Omega = mp.J / mp.Omega;
    r.V_over_Omega = mp.V / mp.Omega;
    r.J_over_V = mp.V != 0.0 ? mp.J / mp.V : std::copysign(INFINITY, mp.J);
    out.push_back(r);
  }
  return out;
}

std::optional<double> v_zero_crossing(const CircuitSet& set, double lo, double hi) {
  const int n = 2000;
  auto V = [&](double f) { return compile_circuit(set, f).V; };
  // values at rounding level count as zero, not as a sign
  const double tol = 1e-9 * set.epsilon;
  auto sign = [&](double v) { return v > tol ? 1 : (v < -tol ? -1 : 0); };
  double a = lo;
  int sa = sign(V(lo));
  for (int i = 1; i <= n; ++i) {
    double b = lo + (hi - lo) * i / n;
    int sb = sign(V(b));
    if (sa == 0) {
      a = b;
      sa = sb;
      continue;
    }
    if (sb != 0 && sb != sa) {
      for (int k = 0; k < 100; ++k) {
        double m = 0.5 * (a + b);
        if ((V(m) > 0.0) == (sa > 0)) a = m; else b = m;
      }
      return 0.5 * (a + b);
    }
    if (sb != 0) a = b;
  }
  return std::nullopt;
}

RKCouplings derive_rk_couplings(double epsilon, double U, double E_Jsq_ratio, double flux, double alpha,
                                double omega, double mu, double Omega) {
  if (!(alpha > 0.0 && alpha <= 1.0)) fail(ErrorCode::invalid_argument, "alpha must lie in (0, 1]");
  if (omega == Omega) fail(ErrorCode::numerical, "resonator degenerate with Omega");
  if (omega == 0.0) fail(ErrorCode::numerical, "resonator frequency must be nonzero");
  double s = std::sin(std::numbers::pi * flux);
  double bp = 2.0 * U * E_Jsq_ratio * s;
  double eta = 0.5 * epsilon * E_Jsq_ratio * s - bp;
  RKCouplings r;
  r.resonator = {omega, alpha * bp, alpha * eta, alpha};
  double beta = r.resonator.beta_prime;
  r.J = -4.0 * mu * mu / Omega - 4.0 * r.resonator.eta * r.resonator.eta / (Omega - omega);
  r.V = -2.0 * beta * beta / omega;
  return r;
}

}  // namespace qlink
